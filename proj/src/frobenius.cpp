#include "qmanin/frobenius.hpp"

#include "qmanin/pairing.hpp"

namespace qmanin {

namespace {

// Divides every exponent by ell; false when some exponent is not a multiple.
bool frobenius_shrink(const LusztigMono& m, int ell, ClassMono& out) {
  for (int k = 0; k < kMaxRoots; ++k) {
    if (m.f[k] % ell || m.e[k] % ell) return false;
    out.f[k] = static_cast<uint8_t>(m.f[k] / ell);
    out.e[k] = static_cast<uint8_t>(m.e[k] / ell);
  }
  for (int i = 0; i < kMaxRank; ++i) {
    if (m.n[i] % ell) return false;
    out.c[i] = static_cast<uint8_t>(m.n[i] / ell);
  }
  return true;
}

XiElem apply_frobenius(const LusztigCoords& lc, int ell) {
  XiElem out;
  out.ell = ell;
  for (const auto& [m, c] : lc) {
    if (!in_local_ring(c, ell)) throw NotInForm("Lusztig coordinate " + c.str() + " has a pole at zeta");
    ClassMono cm;
    // K_{l0} goes to 1
    if (frobenius_shrink(m, ell, cm)) out.add(cm, eval_at_root(c, ell));
  }
  return out;
}

}  // namespace

void XiElem::add(const ClassMono& m, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

XiElem to_xi(const ClassElem& c, int ell) {
  XiElem out;
  out.ell = ell;
  for (const auto& [m, r] : c.t) out.add(m, CycloScalar(ell, r));
  return out;
}

XiElem frobenius_xi(const QGroup& g, const UElem& u, int ell) {
  return apply_frobenius(lusztig_coordinates(g, u), ell);
}

XiElem eta(const QGroup& g, const VElem& v, int ell) {
  return apply_frobenius(vlusztig_coordinates(g, v), ell);
}

XiElem xi_mul(const QGroup& g, const XiElem& a, const XiElem& b) {
  XiElem out;
  out.ell = std::max(a.ell, b.ell);
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      ClassElem one_a, one_b;
      one_a.add(ma, 1);
      one_b.add(mb, 1);
      for (const auto& [m, r] : classical_mul(g, one_a, one_b).t) out.add(m, ca * cb * CycloScalar(out.ell, r));
    }
  return out;
}

Rat classical_pair(const CoordAlgebra& C, const CElem& p, const ClassMono& m) {
  QScalar s = C.pair(p, classical_lift(C.group(), m));
  return eval_at_root(s, 1).rational();
}

CycloScalar classical_pair(const CoordAlgebra& C, const CElem& p, const XiElem& x) {
  CycloScalar acc(x.ell, 0);
  for (const auto& [m, c] : x.t) acc += c * CycloScalar(x.ell, classical_pair(C, p, m));
  return acc;
}

CElem txi_t(const CoordAlgebra& C, int a, int b, int ell) {
  const TensorPower& M = C.module(ell);
  return C.coeff(ell, M.encode(std::vector<int>(ell, a)), SVec{{M.encode(std::vector<int>(ell, b)), QScalar(1)}});
}

CElem txi(const CoordAlgebra& C, const std::vector<std::pair<int, int>>& word, int ell) {
  CElem out = C.one();
  for (const auto& [a, b] : word) out = C.mul(out, txi_t(C, a, b, ell));
  return out;
}

std::vector<CycloScalar> classical_left_vector(const CoordAlgebra& C, const XiElem& x, int b) {
  std::vector<CycloScalar> out;
  for (int c = 0; c < C.n1(); ++c) out.push_back(classical_pair(C, C.t(c, b), x));
  return out;
}

UElem teta_mono(const QGroup& g, const Mono& m, int ell) {
  Mono big;
  for (int k = 0; k < kMaxRoots; ++k) {
    big.f[k] = static_cast<uint8_t>(ell * m.f[k]);
    big.e[k] = static_cast<uint8_t>(ell * m.e[k]);
  }
  big.k = ell * m.k;
  return dcp_element(g, big);
}

UElem teta(const QGroup& g, const UElem& u1, int ell) {
  UElem out(&g);
  for (const auto& [m, c] : specialize_U(g, u1, 1).t) out += QScalar(c.rational()) * teta_mono(g, m, ell);
  return out;
}

Rat upsilon_pair(const QGroup& g, const UElem& u, const ClassMono& v) {
  Pairing p(g);
  QScalar s = p.sigma(u, vclassical_lift(g, v));
  if (!in_local_ring(s, 1)) throw NotInForm("sigma value " + s.str() + " has a pole at q = 1");
  return eval_at_root(s, 1).rational();
}

bool centrality_check(const QGroup& g, const UElem& x, int ell) {
  specialize_U(g, x, ell);
  std::vector<UElem> gens;
  for (int i = 0; i < g.rank(); ++i) {
    gens.push_back(g.E(i));
    gens.push_back(g.F(i));
    gens.push_back(g.K(g.rd().fundamental(i)));
  }
  for (const auto& y : gens)
    if (!specialize_U(g, g.commutator(x, y), ell).is_zero()) return false;
  return true;
}

bool centrality_check(const CoordAlgebra& C, const DElem& x, int ell) {
  const QGroup& g = C.group();
  specialize_table(C.dtable(x), ell);
  std::vector<DElem> gens;
  for (int i = 0; i < g.rank(); ++i) {
    gens.push_back(C.du(g.E(i)));
    gens.push_back(C.du(g.F(i)));
    gens.push_back(C.du(g.K(g.rd().fundamental(i))));
  }
  for (int a = 0; a < C.n1(); ++a)
    for (int b = 0; b < C.n1(); ++b) gens.push_back(C.dc(C.t(a, b)));
  for (const auto& y : gens)
    if (!specialize_table(C.dtable(C.dcommutator(x, y)), ell).empty()) return false;
  return true;
}

}  // namespace qmanin
