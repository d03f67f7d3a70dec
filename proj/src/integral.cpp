#include "qmanin/integral.hpp"

#include <algorithm>
#include <mutex>

namespace qmanin {

namespace {

using Uni = std::map<int, QScalar>;  // Laurent polynomial in one K_i

// [K; m] with q_i = v^e, as a Laurent polynomial in K.
const Uni& kbin_uni(int e, int m) {
  static std::map<std::pair<int, int>, Uni> memo;
  auto key = std::make_pair(e, m);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Uni p{{0, QScalar(1)}};
  for (int s = 0; s < m; ++s) {
    QScalar den = QScalar::vpow(e * (s + 1)) - QScalar::vpow(-e * (s + 1));
    QScalar a = QScalar::vpow(-e * s) / den, b = -QScalar::vpow(e * s) / den;
    Uni next;
    for (const auto& [x, c] : p) {
      lc_add(next, x + 1, a * c);
      lc_add(next, x - 1, b * c);
    }
    p.swap(next);
  }
  return memo[key] = p;
}

// K^c = sum over (eps, n) of coeff * K^eps [K; n]. Only K [K; D-1] reaches exponent D
// and only [K; D-1] reaches 1-D, so peeling the extremes is triangular.
const std::map<std::pair<int, int>, QScalar>& uni_coords(int e, int c) {
  static std::map<std::pair<int, int>, std::map<std::pair<int, int>, QScalar>> memo;
  auto key = std::make_pair(e, c);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::map<std::pair<int, int>, QScalar> out;
  Uni p{{c, QScalar(1)}};
  while (!p.empty()) {
    int top = p.rbegin()->first, bot = p.begin()->first;
    int D = std::max(top, 1 - bot);
    const Uni& b = kbin_uni(e, D - 1);
    int eps = top == D ? 1 : 0;
    int target = eps ? D : 1 - D;
    QScalar lead = b.at(target - eps);
    QScalar a = p.at(target) / lead;
    lc_add(out, std::make_pair(eps, D - 1), a);
    for (const auto& [x, cb] : b) lc_add(p, x + eps, -(a * cb));
  }
  return memo[key] = out;
}

QScalar fact_weight(const QGroup& g, const Exps& m) {
  QScalar s(1);
  for (int k = 0; k < g.N(); ++k)
    if (m[k] > 1) s *= QScalar(qfact_v(m[k], g.d() * g.rd().beta_d[k]));
  return s;
}

QScalar dcp_weight(const QGroup& g, const Mono& m) {
  QScalar s(1);
  for (int k = 0; k < g.N(); ++k) {
    int p = m.f[k] + m.e[k];
    if (p) s *= (g.qbeta(k) - g.qbeta(k).inverse()).pow(p);
  }
  return s;
}

void cadd(SpecTorus& m, const std::pair<Weight, NVec>& k, const CycloScalar& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = m.try_emplace(k, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) m.erase(it);
  }
}

// Lusztig-type coordinates of sum c F^f K_k E^e (or Y^y Z_z X^x), summed before any
// evaluation so that cancelling poles cancel.
template <class It, class Get>
LusztigCoords lusztig_like(const QGroup& g, It first, It last, Get get) {
  LusztigCoords out;
  for (; first != last; ++first) {
    auto [f, k, e, c] = get(*first);
    QScalar s = c * fact_weight(g, f) * fact_weight(g, e);
    for (const auto& [key, t] : torus_coordinates(g, k)) lc_add(out, LusztigMono{f, key.first, key.second, e}, s * t);
  }
  return out;
}

ClassElem at_one(const LusztigCoords& lc) {
  ClassElem out;
  for (const auto& [m, c] : lc) {
    if (!in_local_ring(c, 1)) throw NotInForm("coordinate " + c.str() + " has a pole at q = 1");
    CycloScalar v = eval_at_root(c, 1);
    if (!v.is_zero()) out.add(ClassMono{m.f, m.n, m.e}, v.rational());
  }
  return out;
}

}  // namespace

void ClassElem::add(const ClassMono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

const TorusCoords& torus_coordinates(const QGroup& g, const Weight& lam) {
  static std::map<std::pair<std::string, Weight>, TorusCoords> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const RootDatum& rd = g.rd();
  auto key = std::make_pair(rd.label, lam);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int k = rd.class_mod_Q(lam);
  Weight r{};
  if (k > 0) r[k - 1] = 1;
  auto c = rd.to_root_coords(lam - r);
  TorusCoords acc{{{r, NVec{}}, QScalar(1)}};
  for (int i = 0; i < rd.rank; ++i) {
    TorusCoords next;
    for (const auto& [pe, coef] : uni_coords(g.ei(i), c[i])) {
      for (const auto& [key0, a] : acc) {
        Weight l0 = key0.first;
        NVec n = key0.second;
        if (pe.first) l0 = l0 + rd.alpha(i);
        n[i] = static_cast<uint8_t>(pe.second);
        lc_add(next, std::make_pair(l0, n), a * coef);
      }
    }
    acc.swap(next);
  }
  return memo[key] = acc;
}

UElem k_binomial(const QGroup& g, int i, int m) {
  UElem out(&g);
  for (const auto& [x, c] : kbin_uni(g.ei(i), m)) out.add(Mono{{}, x * g.rd().alpha(i), {}}, c);
  return out;
}

UElem lusztig_element(const QGroup& g, const LusztigMono& m) {
  UElem torus = g.K(m.lam0);
  for (int i = 0; i < g.rank(); ++i)
    if (m.n[i]) torus = g.mul(torus, k_binomial(g, i, m.n[i]));
  QScalar s = (fact_weight(g, m.f) * fact_weight(g, m.e)).inverse();
  UElem out(&g);
  for (const auto& [mk, c] : torus.t) out.add(Mono{m.f, mk.k, m.e}, s * c);
  return out;
}

UElem dcp_element(const QGroup& g, const Mono& m) { return g.mono(m, dcp_weight(g, m)); }

LusztigCoords lusztig_coordinates(const QGroup& g, const UElem& u) {
  return lusztig_like(g, u.t.begin(), u.t.end(), [](const auto& kv) {
    return std::make_tuple(kv.first.f, kv.first.k, kv.first.e, kv.second);
  });
}

DCPCoords dcp_coordinates(const QGroup& g, const UElem& u) {
  DCPCoords out;
  for (const auto& [m, c] : u.t) out.emplace(m, c / dcp_weight(g, m));
  return out;
}

SpecU specialize_U(const QGroup& g, const UElem& u, int ell) {
  SpecU out;
  out.ell = ell;
  for (const auto& [m, c] : dcp_coordinates(g, u)) {
    if (!in_local_ring(c, ell))
      throw NotInForm("DCP coordinate " + c.str() + " of " + g.mono_str(m) + " is not in A_z");
    CycloScalar v = eval_at_root(c, ell);
    if (!v.is_zero()) out.t.emplace(m, v);
  }
  return out;
}

ClassElem ulbar1(const QGroup& g, const UElem& u) { return at_one(lusztig_coordinates(g, u)); }

UElem classical_lift(const QGroup& g, const ClassMono& m) {
  return lusztig_element(g, LusztigMono{m.f, Weight{}, m.c, m.e});
}

ClassElem classical_mul(const QGroup& g, const ClassElem& a, const ClassElem& b) {
  UElem acc(&g);
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t)
      acc += QScalar(ca * cb) * g.mul(classical_lift(g, ma), classical_lift(g, mb));
  return ulbar1(g, acc);
}

UbarZeta ulbar_zeta(const QGroup& g, const UElem& u, int ell) {
  UbarZeta out;
  out.ell = ell;
  for (const auto& [lm, c] : lusztig_coordinates(g, u)) {
    if (!in_local_ring(c, ell)) throw NotInForm("Lusztig coordinate " + c.str() + " is not in A_z");
    cadd(out.t[{lm.f, lm.e}], {lm.lam0, lm.n}, eval_at_root(c, ell));
  }
  return out;
}

CycloScalar chi_value(const QGroup& g, const SpecTorus& t, const Weight& lam, int ell) {
  const RootDatum& rd = g.rd();
  CycloScalar acc(ell, 0);
  for (const auto& [key, c] : t) {
    Laurent p = Laurent::monomial(rd.bil_d(lam, key.first));
    for (int i = 0; i < rd.rank; ++i)
      if (key.second[i]) p = p * qbinom_v(lam[i], key.second[i], g.ei(i));
    acc += c * CycloScalar::from_laurent(ell, p);
  }
  return acc;
}

bool torus_in_ideal(const QGroup& g, const SpecTorus& t, int ell) {
  int deg = 0;
  for (const auto& [key, c] : t)
    for (int i = 0; i < g.rank(); ++i) deg = std::max(deg, key.second[i] / ell);
  int side = ell * (deg + 1);
  int n = g.rank();
  long count = 1;
  for (int i = 0; i < n; ++i) count *= side;
  for (long idx = 0; idx < count; ++idx) {
    Weight lam{};
    long r = idx;
    for (int i = 0; i < n; ++i) {
      lam[i] = static_cast<int>(r % side);
      r /= side;
    }
    if (!chi_value(g, t, lam, ell).is_zero()) return false;
  }
  return true;
}

bool ubar_equal(const QGroup& g, const UbarZeta& a, const UbarZeta& b) {
  std::map<std::pair<Exps, Exps>, SpecTorus> diff = a.t;
  for (const auto& [fe, tor] : b.t)
    for (const auto& [key, c] : tor) cadd(diff[fe], key, -c);
  for (const auto& [fe, tor] : diff)
    if (!torus_in_ideal(g, tor, a.ell)) return false;
  return true;
}

LusztigCoords vlusztig_coordinates(const QGroup& g, const VElem& v) {
  return lusztig_like(g, v.t.begin(), v.t.end(), [](const auto& kv) {
    return std::make_tuple(kv.first.y, kv.first.z, kv.first.x, kv.second);
  });
}

ClassElem vbar1(const QGroup& g, const VElem& v) { return at_one(vlusztig_coordinates(g, v)); }

VElem vclassical_lift(const QGroup& g, const ClassMono& m) {
  UElem torus = g.one();
  for (int i = 0; i < g.rank(); ++i)
    if (m.c[i]) torus = g.mul(torus, k_binomial(g, i, m.c[i]));
  QScalar s = (fact_weight(g, m.f) * fact_weight(g, m.e)).inverse();
  VElem out(&g);
  for (const auto& [mk, c] : torus.t) out.add(VMono{m.f, mk.k, m.e}, s * c);
  return out;
}

ClassElem vclassical_mul(const QGroup& g, const ClassElem& a, const ClassElem& b) {
  VElem acc(&g);
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t)
      acc += QScalar(ca * cb) * g.vmul(vclassical_lift(g, ma), vclassical_lift(g, mb));
  return vbar1(g, acc);
}

}  // namespace qmanin
