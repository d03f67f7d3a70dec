#include "qmanin/heisenberg.hpp"

#include <functional>

namespace qmanin {

namespace {

void sadd(SVec& v, uint32_t k, const QScalar& c) { lc_add(v, k, c); }

QScalar dot(const SVec& r, const SVec& v) {
  const SVec& small = r.size() < v.size() ? r : v;
  const SVec& big = r.size() < v.size() ? v : r;
  QScalar s(0);
  for (const auto& [k, c] : small) {
    auto it = big.find(k);
    if (it != big.end()) s += c * it->second;
  }
  return s;
}

QScalar div_fact(const QGroup& g, const Exps& m) {
  QScalar s(1);
  for (int k = 0; k < g.N(); ++k)
    if (m[k] > 1) s *= QScalar(qfact_v(m[k], g.d() * g.rd().beta_d[k]));
  return s.inverse();
}

}  // namespace

TensorPower::TensorPower(const QGroup& g, int k) : g_(g), k_(k), base_(g.rank() + 1) {
  if (g.rd().label[0] != 'A') throw ConfigError("type", "vector representation fixtures exist for type A only");
  int n = g.rank();
  for (int j = 0; j <= n; ++j) {
    Weight w{};
    if (j < n) w[j] += 1;
    if (j >= 1) w[j - 1] -= 1;
    vw_.push_back(w);
  }
  dim_ = 1;
  for (int s = 0; s < k; ++s) dim_ *= base_;
  wt_.resize(dim_);
  for (uint32_t idx = 0; idx < dim_; ++idx) {
    Weight w{};
    for (int s = 0; s < k; ++s) w = w + vw_[digit(idx, s)];
    wt_[idx] = w;
  }
}

int TensorPower::digit(uint32_t idx, int slot) const {
  for (int s = k_ - 1; s > slot; --s) idx /= base_;
  return static_cast<int>(idx % base_);
}

uint32_t TensorPower::encode(const std::vector<int>& d) const {
  uint32_t x = 0;
  for (int v : d) x = x * base_ + v;
  return x;
}

SVec TensorPower::simple_on_basis(bool is_e, bool right, int i, uint32_t idx) const {
  // left E_i: e_{i+1} -> e_i in slot j, weight factor from slots before j
  // left F_i: e_i -> e_{i+1} in slot j, factor q^{-(alpha_i, weights after j)}
  // right actions are the transposes: the same moves run backwards
  const RootDatum& rd = g_.rd();
  Weight a = rd.alpha(i);
  std::vector<int> d(k_);
  for (int s = 0; s < k_; ++s) d[s] = digit(idx, s);
  int from = (is_e != right) ? i + 1 : i;
  int to = (is_e != right) ? i : i + 1;
  SVec out;
  for (int j = 0; j < k_; ++j) {
    if (d[j] != from) continue;
    Weight side{};
    if (is_e)
      for (int s = 0; s < j; ++s) side = side + vw_[d[s]];
    else
      for (int s = j + 1; s < k_; ++s) side = side - vw_[d[s]];
    auto nd = d;
    nd[j] = to;
    sadd(out, encode(nd), QScalar::vpow(rd.bil_d(a, side)));
  }
  return out;
}

SVec TensorPower::act_simple(bool is_e, int i, const SVec& v) const {
  SVec out;
  for (const auto& [idx, c] : v)
    for (const auto& [j, x] : simple_on_basis(is_e, false, i, idx)) sadd(out, j, c * x);
  return out;
}

SVec TensorPower::ract_simple(bool is_e, int i, const SVec& r) const {
  SVec out;
  for (const auto& [idx, c] : r)
    for (const auto& [j, x] : simple_on_basis(is_e, true, i, idx)) sadd(out, j, c * x);
  return out;
}

const SVec& TensorPower::root_on_basis(bool is_e, bool right, int k, uint32_t idx) const {
  auto key = std::make_tuple(is_e, right, k, idx);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const WordPoly& wp = is_e ? g_.plus().root_word(k) : g_.minus().root_word(k);
  SVec out;
  for (const auto& [w, c] : wp) {
    SVec v{{idx, QScalar(1)}};
    if (right)
      for (size_t p = 0; p < w.size() && !v.empty(); ++p) v = ract_simple(is_e, w[p], v);
    else
      for (size_t p = w.size(); p-- > 0 && !v.empty();) v = act_simple(is_e, w[p], v);
    for (const auto& [j, x] : v) sadd(out, j, c * x);
  }
  return memo_[key] = out;
}

SVec TensorPower::act_root(bool is_e, int k, const SVec& v) const {
  SVec out;
  for (const auto& [idx, c] : v)
    for (const auto& [j, x] : root_on_basis(is_e, false, k, idx)) sadd(out, j, c * x);
  return out;
}

SVec TensorPower::ract_root(bool is_e, int k, const SVec& r) const {
  SVec out;
  for (const auto& [idx, c] : r)
    for (const auto& [j, x] : root_on_basis(is_e, true, k, idx)) sadd(out, j, c * x);
  return out;
}

SVec TensorPower::act_k(const Weight& mu, const SVec& v) const {
  SVec out;
  for (const auto& [idx, c] : v) out.emplace(idx, c * QScalar::vpow(g_.rd().bil_d(mu, wt_[idx])));
  return out;
}

SVec TensorPower::act(const UElem& u, const SVec& v) const {
  SVec out;
  int N = g_.N();
  for (const auto& [m, c] : u.t) {
    SVec x = v;
    for (int k = 0; k < N && !x.empty(); ++k)
      for (int r = 0; r < m.e[k] && !x.empty(); ++r) x = act_root(true, k, x);
    x = act_k(m.k, x);
    for (int k = 0; k < N && !x.empty(); ++k)
      for (int r = 0; r < m.f[k] && !x.empty(); ++r) x = act_root(false, k, x);
    for (const auto& [j, y] : x) sadd(out, j, c * y);
  }
  return out;
}

SVec TensorPower::ract(const UElem& u, const SVec& r) const {
  SVec out;
  int N = g_.N();
  for (const auto& [m, c] : u.t) {
    SVec x = r;
    for (int k = N; k-- > 0 && !x.empty();)
      for (int s = 0; s < m.f[k] && !x.empty(); ++s) x = ract_root(false, k, x);
    x = act_k(m.k, x);
    for (int k = N; k-- > 0 && !x.empty();)
      for (int s = 0; s < m.e[k] && !x.empty(); ++s) x = ract_root(true, k, x);
    for (const auto& [j, y] : x) sadd(out, j, c * y);
  }
  return out;
}

// ------------------------------------------------------------------ C and D

CoordAlgebra::CoordAlgebra(const QGroup& g) : g_(g) { module(1); }

const TensorPower& CoordAlgebra::module(int deg) const {
  auto it = mods_.find(deg);
  if (it != mods_.end()) return *it->second;
  return *(mods_[deg] = std::make_unique<TensorPower>(g_, deg));
}

CElem CoordAlgebra::t(int a, int b) const {
  return CElem(&g_, CKey{1, static_cast<uint32_t>(a), static_cast<uint32_t>(b)});
}

CElem CoordAlgebra::coeff(int deg, uint32_t a, const SVec& v) const {
  CElem out(&g_);
  for (const auto& [b, c] : v) out.add(CKey{static_cast<uint8_t>(deg), a, b}, c);
  return out;
}

CElem CoordAlgebra::mul(const CElem& x, const CElem& y) const {
  CElem out(x.join(y));
  for (const auto& [kx, cx] : x.t)
    for (const auto& [ky, cy] : y.t) {
      uint32_t shift = module(ky.deg).dim();
      out.add(CKey{static_cast<uint8_t>(kx.deg + ky.deg), kx.a * shift + ky.a, kx.b * shift + ky.b}, cx * cy);
    }
  return out;
}

CElem CoordAlgebra::left(const UElem& u, const CElem& c) const {
  CElem out(&g_);
  for (const auto& [k, x] : c.t) {
    SVec v = module(k.deg).act(u, SVec{{k.b, QScalar(1)}});
    for (const auto& [b, y] : v) out.add(CKey{k.deg, k.a, b}, x * y);
  }
  return out;
}

CElem CoordAlgebra::right(const CElem& c, const UElem& u) const {
  CElem out(&g_);
  for (const auto& [k, x] : c.t) {
    SVec r = module(k.deg).ract(u, SVec{{k.a, QScalar(1)}});
    for (const auto& [a, y] : r) out.add(CKey{k.deg, a, k.b}, x * y);
  }
  return out;
}

QScalar CoordAlgebra::pair(const CElem& c, const UElem& u) const {
  QScalar s(0);
  for (const auto& [k, x] : c.t) {
    SVec v = module(k.deg).act(u, SVec{{k.b, QScalar(1)}});
    auto it = v.find(k.a);
    if (it != v.end()) s += x * it->second;
  }
  return s;
}

QScalar CoordAlgebra::counit(const CElem& c) const {
  QScalar s(0);
  for (const auto& [k, x] : c.t)
    if (k.a == k.b) s += x;
  return s;
}

void CoordAlgebra::table_into(int deg, uint32_t a, const SVec& w, const QScalar& scale, CTable& out) const {
  const TensorPower& M = module(deg);
  int N = g_.N();
  // functionals e_a^* . F^n; F^n = F_{b_N}^{n_N}...F_{b_1}^{n_1} acts leftmost-first from the right
  std::vector<std::tuple<Exps, Weight, SVec>> rows;
  std::function<void(const Exps&, const SVec&, int)> fdfs = [&](const Exps& n, const SVec& r, int last) {
    rows.emplace_back(n, M.weight(a) + g_.eweight(n), r);
    for (int k = last; k >= 0; --k) {
      SVec nr = M.ract_root(false, k, r);
      if (nr.empty()) continue;
      Exps n2 = n;
      ++n2[k];
      fdfs(n2, nr, k);
    }
  };
  fdfs(Exps{}, SVec{{a, QScalar(1)}}, N - 1);
  std::map<Weight, SVec> parts;
  for (const auto& [b, c] : w) lc_add(parts[M.weight(b)], b, c);
  std::map<Weight, std::vector<std::pair<Exps, SVec>>> cols;  // by weight of E^m w_nu
  std::map<Weight, Weight> nu_of;
  for (const auto& [nu, wn] : parts) {
    std::function<void(const Exps&, const SVec&, int)> edfs = [&](const Exps& m, const SVec& v, int last) {
      cols[nu + g_.eweight(m)].emplace_back(m, v);
      for (int k = last; k < N; ++k) {
        SVec nv = M.act_root(true, k, v);
        if (nv.empty()) continue;
        Exps m2 = m;
        ++m2[k];
        edfs(m2, nv, k);
      }
    };
    edfs(Exps{}, wn, 0);
  }
  for (const auto& [n, wr, r] : rows) {
    auto it = cols.find(wr);
    if (it == cols.end()) continue;
    QScalar fn = scale * div_fact(g_, n);
    for (const auto& [m, v] : it->second) {
      QScalar s = dot(r, v);
      if (s.is_zero()) continue;
      lc_add(out, CTabKey{n, m, wr}, fn * div_fact(g_, m) * s);
    }
  }
}

CTable CoordAlgebra::table(const CElem& c) const {
  std::map<std::pair<int, uint32_t>, SVec> rows;
  for (const auto& [k, x] : c.t) lc_add(rows[{k.deg, k.a}], k.b, x);
  CTable out;
  for (const auto& [key, w] : rows)
    if (!w.empty()) table_into(key.first, key.second, w, QScalar(1), out);
  return out;
}

DElem CoordAlgebra::d(const CElem& c, const UElem& u) const {
  DElem out(c.join(CElem(u.g)));
  for (const auto& [ck, x] : c.t)
    for (const auto& [m, y] : u.t) out.add(DKey{ck, m}, x * y);
  return out;
}

DElem CoordAlgebra::dmul(const DElem& x, const DElem& y) const {
  DElem out(x.join(y));
  for (const auto& [kx, cx] : x.t) {
    UTensor delta = g_.coproduct(g_.mono(kx.second));
    for (const auto& [ky, cy] : y.t) {
      const CKey& c2 = ky.first;
      const TensorPower& M = module(c2.deg);
      uint32_t shift = M.dim();
      for (const auto& [pr, cd] : delta.t) {
        SVec v = M.act(g_.mono(pr.first), SVec{{c2.b, QScalar(1)}});
        if (v.empty()) continue;
        UElem u = g_.mono_mul(pr.second, ky.second);
        for (const auto& [b, vb] : v) {
          CKey ck{static_cast<uint8_t>(kx.first.deg + c2.deg), kx.first.a * shift + c2.a, kx.first.b * shift + b};
          QScalar s = cx * cy * cd * vb;
          for (const auto& [m, cm] : u.t) out.add(DKey{ck, m}, s * cm);
        }
      }
    }
  }
  return out;
}

DTable CoordAlgebra::dtable(const DElem& x) const {
  std::map<Mono, std::map<std::pair<int, uint32_t>, SVec>> parts;
  for (const auto& [k, c] : x.t) lc_add(parts[k.second][{k.first.deg, k.first.a}], k.first.b, c);
  DTable out;
  for (const auto& [m, rows] : parts) {
    QScalar scale = dcp_coordinates(g_, g_.mono(m)).at(m);
    for (const auto& [key, w] : rows) {
      if (w.empty()) continue;
      CTable t;
      table_into(key.first, key.second, w, scale, t);
      for (const auto& [tk, v] : t) lc_add(out, std::make_pair(m, tk), v);
    }
  }
  return out;
}

SpecTable specialize_table(const DTable& t, int ell, const QScalar& scale) {
  SpecTable out;
  for (const auto& [k, v] : t) {
    QScalar s = v * scale;
    if (!in_local_ring(s, ell)) throw NotInForm("D coefficient " + s.str() + " is not in A_z");
    CycloScalar c = eval_at_root(s, ell);
    if (!c.is_zero()) out.emplace(k, c);
  }
  return out;
}

}  // namespace qmanin
