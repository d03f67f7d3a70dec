#include "qmanin/poisson_classical.hpp"

#include <map>

#include "qmanin/heisenberg.hpp"

namespace qmanin::classical {

namespace {

Mat<Rat> unit(int n, int i, int j) {
  Mat<Rat> m(n);
  m(i, j) = 1;
  return m;
}

std::vector<std::vector<Rat>> flatten_all(const ManinTriple& tr, const std::vector<Vec>& xs) {
  std::vector<std::vector<Rat>> out;
  for (const auto& x : xs) out.push_back(tr.flatten(x));
  return out;
}

// Dual basis: out_r = sum_t C_rt b_t with rho(out_r, c_s) = delta_rs.
std::vector<Vec> dual_basis(const ManinTriple& tr, const std::vector<Vec>& b, const std::vector<Vec>& c) {
  int k = static_cast<int>(b.size());
  Mat<Rat> G(k);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) G(r, s) = tr.rho(b[r], c[s]);
  Mat<Rat> Ci = inverse(G);
  std::vector<Vec> out;
  for (int r = 0; r < k; ++r) {
    Vec v{Mat<Rat>(tr.n()), Mat<Rat>(tr.n())};
    for (int t = 0; t < k; ++t)
      if (Ci(r, t) != 0) v = v + Ci(r, t) * b[t];
    out.push_back(v);
  }
  return out;
}

Vec combine(const std::vector<Vec>& basis, const std::vector<Rat>& c, int n) {
  Vec v{Mat<Rat>(n), Mat<Rat>(n)};
  for (size_t i = 0; i < basis.size(); ++i)
    if (c[i] != 0) v = v + c[i] * basis[i];
  return v;
}

template <class T>
T sts_value(const ManinTriple& tr, const Pair<T>& g, const Pair<T>& a, const Pair<T>& b) {
  Pair<T> gi = inverse(g);
  return tr.rho(a, Ad(g, tr.pi_l(Ad(gi, b))) - tr.pi_m(b));
}

Mat<J> perturb_right(const Mat<J>& g, const Mat<Rat>& x, int level) {
  return g * (Mat<J>::identity(g.n) + eps(level) * lift<J>(x));
}
Mat<J> perturb_left(const Mat<J>& g, const Mat<Rat>& x, int level) {
  return (Mat<J>::identity(g.n) - eps(level) * lift<J>(x)) * g;
}

J L_deriv(const MLFun& f, const MLPoint<J>& p, const Vec& X, int level) {
  MLPoint<J> q = p;
  q.g = perturb_right(p.g, X.a, level);
  return eps_coeff(f(q), level);
}
J R_deriv(const MLFun& f, const MLPoint<J>& p, const Vec& Y, int level) {
  MLPoint<J> q = p;
  q.k1 = perturb_left(p.k1, Y.a, level);
  q.k2 = perturb_left(p.k2, Y.b, level);
  return eps_coeff(f(q), level);
}
J R_deriv(const AFun& f, const Pair<J>& p, const Vec& a, int level) {
  return eps_coeff(f(Pair<J>{perturb_left(p.a, a.a, level), perturb_left(p.b, a.b, level)}), level);
}

MLPoint<J> lift_point(const MLPoint<Rat>& p) { return {lift<J>(p.g), lift<J>(p.k1), lift<J>(p.k2)}; }

// Coefficient vectors (in abasis) of the rho-annihilator of vs.
std::vector<std::vector<Rat>> annihilator(const ManinTriple& tr, const std::vector<Vec>& vs) {
  std::vector<std::vector<Rat>> rows;
  for (const auto& v : vs) {
    std::vector<Rat> row;
    for (const auto& a : tr.abasis()) row.push_back(tr.rho(v, a));
    rows.push_back(row);
  }
  return kernel_basis(rows, 2 * tr.dim());
}

std::vector<Vec> acting_algebra(const ManinTriple& tr, Variant v) {
  int n = tr.n();
  std::vector<Vec> f;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) f.push_back({unit(n, i, j), unit(n, i, j)});
  if (v == Variant::BminusOnYt)
    for (int i = 0; i + 1 < n; ++i) f.push_back({tr.h(i), tr.h(i)});
  return f;
}

// Entries (i, j) of g1 g2^-1 held fixed on the subvariety.
std::vector<std::pair<int, int>> constrained_entries(int n, Variant v) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + (v == Variant::BminusOnYt ? 0 : 1); j < n; ++j) out.emplace_back(i, j);
  return out;
}

Rat binom_general(const Rat& top, int c) {
  Rat r = 1;
  for (int j = 0; j < c; ++j) r = r * (top - j) / (j + 1);
  return r;
}

// Truncated power series in the y-part variables s_k and x-part variables r_k.
struct Series {
  std::vector<int> cap;
  std::map<std::vector<int>, Rat> t;
  explicit Series(std::vector<int> c) : cap(std::move(c)) {}
  static Series constant(const std::vector<int>& c, const Rat& x) {
    Series s(c);
    if (x != 0) s.t[std::vector<int>(c.size(), 0)] = x;
    return s;
  }
  Series operator*(const Series& o) const {
    Series out(cap);
    for (const auto& [ka, ca] : t)
      for (const auto& [kb, cb] : o.t) {
        std::vector<int> k(ka.size());
        bool ok = true;
        for (size_t i = 0; i < k.size() && ok; ++i) ok = (k[i] = ka[i] + kb[i]) <= cap[i];
        if (!ok) continue;
        Rat& slot = out.t[k];
        slot += ca * cb;
        if (slot == 0) out.t.erase(k);
      }
    return out;
  }
  Series& operator+=(const Series& o) {
    for (const auto& [k, c] : o.t) {
      Rat& slot = t[k];
      slot += c;
      if (slot == 0) t.erase(k);
    }
    return *this;
  }
};

using SMat = std::vector<std::vector<Series>>;

SMat smat_identity(int n, const std::vector<int>& cap) {
  SMat m(n, std::vector<Series>(n, Series(cap)));
  for (int i = 0; i < n; ++i) m[i][i] = Series::constant(cap, 1);
  return m;
}
SMat smat_mul(const SMat& a, const SMat& b) {
  int n = static_cast<int>(a.size());
  SMat c(n, std::vector<Series>(n, Series(a[0][0].cap)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (!a[i][k].t.empty() && !b[k][j].t.empty()) c[i][j] += a[i][k] * b[k][j];
  return c;
}
// exp(var * x) for nilpotent x.
SMat smat_exp(const Mat<Rat>& x, int var, const std::vector<int>& cap) {
  int n = x.n;
  SMat out = smat_identity(n, cap);
  Mat<Rat> pw = Mat<Rat>::identity(n);
  Rat fact = 1;
  for (int m = 1; m < n; ++m) {
    pw = pw * x;
    fact *= m;
    if (m > cap[var]) break;
    std::vector<int> key(cap.size(), 0);
    key[var] = m;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pw(i, j) != 0) out[i][j] += [&] {
            Series s(cap);
            s.t[key] = pw(i, j) / fact;
            return s;
          }();
  }
  return out;
}

Mat<Rat> root_matrix(const QGroup& g, int k, bool is_e) {
  TensorPower V(g, 1);
  int n = static_cast<int>(V.dim());
  Mat<Rat> m(n);
  UElem r = is_e ? g.Eroot(k) : g.Froot(k);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : V.act(r, SVec{{static_cast<uint32_t>(j), QScalar(1)}}))
      m(static_cast<int>(i), j) = eval_at_root(c, 1).rational();
  return m;
}

}  // namespace

Rat det(const Mat<Rat>& m0) {
  Mat<Rat> m = m0;
  int n = m.n;
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      Rat f = m(i, c) / m(c, c);
      if (f == 0) continue;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

Rat trailing_minor(const Mat<Rat>& m, int k) {
  Mat<Rat> s(k);
  int off = m.n - k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s(i, j) = m(off + i, off + j);
  return det(s);
}

bool in_big_cell(const Mat<Rat>& x) {
  for (int k = 1; k <= x.n; ++k)
    if (trailing_minor(x, k) == 0) return false;
  return true;
}

ManinTriple::ManinTriple(int n) : n_(n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) gb_.push_back(unit(n, i, j));
  for (int i = 0; i + 1 < n; ++i) gb_.push_back(h(i));
  Mat<Rat> z(n);
  for (const auto& x : gb_) ab_.push_back({x, z});
  for (const auto& x : gb_) ab_.push_back({z, x});
  for (const auto& x : gb_) mb_.push_back({x, x});
  for (int i = 0; i + 1 < n; ++i) lb_.push_back({h(i), Rat(-1) * h(i)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j) lb_.push_back({unit(n, i, j), z});
      if (i > j) lb_.push_back({z, unit(n, i, j)});
    }
  md_ = dual_basis(*this, mb_, lb_);
  ad_ = dual_basis(*this, ab_, ab_);
}

Mat<Rat> ManinTriple::e(int i) const { return unit(n_, i, i + 1); }
Mat<Rat> ManinTriple::f(int i) const { return unit(n_, i + 1, i); }
Mat<Rat> ManinTriple::h(int i) const { return unit(n_, i, i) - unit(n_, i + 1, i + 1); }

Mat<Rat> ManinTriple::H(const Weight& lam) const {
  // kappa(H, h_j) = lam_j with H traceless diagonal
  Mat<Rat> G(n_ - 1);
  for (int i = 0; i + 1 < n_; ++i)
    for (int j = 0; j + 1 < n_; ++j) G(i, j) = kappa(h(i), h(j));
  Mat<Rat> Gi = inverse(G);
  Mat<Rat> out(n_);
  for (int i = 0; i + 1 < n_; ++i) {
    Rat c = 0;
    for (int j = 0; j + 1 < n_; ++j) c += Gi(i, j) * lam[j];
    out = out + c * h(i);
  }
  return out;
}

std::vector<Rat> ManinTriple::flatten(const Vec& x) const {
  std::vector<Rat> out(x.a.v);
  out.insert(out.end(), x.b.v.begin(), x.b.v.end());
  return out;
}

Vec ManinTriple::unflatten(const std::vector<Rat>& c) const { return combine(ab_, c, n_); }

bool ManinTriple::axioms_hold() const {
  int D = dim();
  Mat<Rat> G(2 * D);
  for (int i = 0; i < 2 * D; ++i)
    for (int j = 0; j < 2 * D; ++j) G(i, j) = rho(ab_[i], ab_[j]);
  if (det(G) == 0) return false;
  for (const auto& x : ab_)
    for (const auto& y : ab_) {
      Vec xy = bracket(x, y);
      for (const auto& z : ab_)
        if (rho(xy, z) != rho(x, bracket(y, z))) return false;
    }
  for (const auto* sub : {&mb_, &lb_}) {
    Echelon<Rat> span(2 * n_ * n_);
    for (const auto& x : *sub) span.add(flatten(x));
    for (const auto& x : *sub)
      for (const auto& y : *sub) {
        if (rho(x, y) != 0) return false;
        if (span.add(flatten(bracket(x, y)))) return false;
      }
  }
  auto all = flatten_all(*this, mb_);
  for (const auto& x : lb_) all.push_back(flatten(x));
  return matrix_rank(all, 2 * n_ * n_) == 2 * D;
}

Rat delta_STS(const ManinTriple& tr, const Vec& g, const Vec& a, const Vec& b) { return sts_value(tr, g, a, b); }

Rat delta_STS_omega(const ManinTriple& tr, const Vec& g, const Vec& xi, const Vec& eta) {
  return Rat(1, 2) * (tr.omega(Ad(g, xi), Ad(g, eta)) + tr.omega(xi, eta));
}

Rat delta_ML(const ManinTriple& tr, const MLPoint<Rat>& p, const Covector& x, const Covector& y) {
  Vec m = p.m(), l = p.l();
  // M covectors to L*, L covectors to R*: R*_xi = L*_{-pi_l Ad(m^-1) xi} on M and
  // L*_xi = R*_{-pi_m Ad(l) xi} on L.
  auto normal = [&](const Covector& c) -> Vec {
    if (c.factor == Factor::M) return c.triv == Triv::Lstar ? c.v : Rat(-1) * tr.pi_l(Ad(inverse(m), c.v));
    return c.triv == Triv::Rstar ? c.v : Rat(-1) * tr.pi_m(Ad(l, c.v));
  };
  Vec u = normal(x), w = normal(y);
  if (x.factor == Factor::M && y.factor == Factor::M) return delta_M(tr, m, u, w);
  if (x.factor == Factor::L && y.factor == Factor::L) return delta_L_R(tr, l, u, w);
  if (x.factor == Factor::M) return tr.rho(u, w);
  return -tr.rho(w, u);
}

std::vector<std::vector<Rat>> delta_matrix(const ManinTriple& tr, const MLPoint<Rat>& p) {
  std::vector<Covector> cov;
  for (const auto& y : tr.lbasis()) cov.push_back({Factor::M, Triv::Lstar, y});
  for (const auto& x : tr.mdual()) cov.push_back({Factor::L, Triv::Rstar, x});
  std::vector<std::vector<Rat>> out;
  for (const auto& a : cov) {
    std::vector<Rat> row;
    for (const auto& b : cov) row.push_back(delta_ML(tr, p, a, b));
    out.push_back(row);
  }
  return out;
}

MLFun ml_bracket(const ManinTriple& tr, MLFun f1, MLFun f2, int level) {
  return [&tr, f1 = std::move(f1), f2 = std::move(f2), level](const MLPoint<J>& p) {
    const auto& X = tr.mdual();
    const auto& Y = tr.lbasis();
    int D = tr.dim();
    std::vector<J> L1(D), L2(D), R1(D), R2(D);
    for (int r = 0; r < D; ++r) {
      L1[r] = L_deriv(f1, p, X[r], level);
      L2[r] = L_deriv(f2, p, X[r], level);
      R1[r] = R_deriv(f1, p, Y[r], level);
      R2[r] = R_deriv(f2, p, Y[r], level);
    }
    Pair<J> m = p.m(), l = p.l();
    J out(0);
    const J zero(0);
    for (int r = 0; r < D; ++r) {
      out += L1[r] * R2[r] - R1[r] * L2[r];
      for (int s = 0; s < D; ++s) {
        if (!(L1[r] == zero) && !(L2[s] == zero))
          out += L1[r] * L2[s] * delta_M(tr, m, lift<J>(Y[r]), lift<J>(Y[s]));
        if (!(R1[r] == zero) && !(R2[s] == zero))
          out += R1[r] * R2[s] * delta_L_R(tr, l, lift<J>(X[r]), lift<J>(X[s]));
      }
    }
    return out;
  };
}

std::vector<Rat> L_gradient(const ManinTriple& tr, const MLFun& h, const MLPoint<Rat>& p) {
  MLPoint<J> q = lift_point(p);
  std::vector<Rat> out;
  for (const auto& X : tr.mdual()) out.push_back(real(L_deriv(h, q, X, 1)));
  return out;
}

std::vector<Rat> R_gradient(const ManinTriple& tr, const MLFun& phi, const MLPoint<Rat>& p) {
  MLPoint<J> q = lift_point(p);
  std::vector<Rat> out;
  for (const auto& Y : tr.lbasis()) out.push_back(real(R_deriv(phi, q, Y, 1)));
  return out;
}

Rat bracket_functions(const ManinTriple& tr, const MLFun& h, const MLFun& phi, const MLPoint<Rat>& p) {
  MLPoint<J> q = lift_point(p);
  J out(0);
  for (int r = 0; r < tr.dim(); ++r) out += L_deriv(h, q, tr.mdual()[r], 1) * R_deriv(phi, q, tr.lbasis()[r], 1);
  return real(out);
}

AFun sts_bracket(const ManinTriple& tr, AFun f1, AFun f2, int level) {
  return [&tr, f1 = std::move(f1), f2 = std::move(f2), level](const Pair<J>& p) {
    int n = 2 * tr.dim();
    std::vector<J> d1(n), d2(n);
    for (int i = 0; i < n; ++i) {
      d1[i] = R_deriv(f1, p, tr.abasis()[i], level);
      d2[i] = R_deriv(f2, p, tr.abasis()[i], level);
    }
    J out(0);
    for (int i = 0; i < n; ++i) {
      if (d1[i] == J(0)) continue;
      for (int j = 0; j < n; ++j)
        if (!(d2[j] == J(0))) out += d1[i] * d2[j] * sts_value(tr, p, lift<J>(tr.adual()[i]), lift<J>(tr.adual()[j]));
    }
    return out;
  };
}

Rat eval(const MLFun& f, const MLPoint<Rat>& p) { return real(f(lift_point(p))); }
Rat eval(const AFun& f, const Vec& p) { return real(f(lift<J>(p))); }

MLFun coord_t(int a, int b) {
  return [a, b](const MLPoint<J>& p) { return p.g(a, b); };
}
MLFun coord_a(int i) {
  return [i](const MLPoint<J>& p) { return -(p.k2(i + 1, i) * p.k1(i, i)); };
}
MLFun coord_b(int i) {
  return [i](const MLPoint<J>& p) { return p.k1(i, i + 1) * inverse(p.k1(i + 1, i + 1)); };
}
MLFun coord_chi(const Weight& lam) {
  return [lam](const MLPoint<J>& p) {
    J out(1), prefix(1);
    for (int j = 0; j + 1 < p.k1.n; ++j) {
      prefix = prefix * p.k1(j, j);
      J base = lam[j] >= 0 ? prefix : inverse(prefix);
      for (int e = 0; e < std::abs(lam[j]); ++e) out = out * base;
    }
    return out;
  };
}
MLFun fun_mul(MLFun f, MLFun g) {
  return [f = std::move(f), g = std::move(g)](const MLPoint<J>& p) { return f(p) * g(p); };
}
MLFun fun_scale(const Rat& c, MLFun f) {
  return [c, f = std::move(f)](const MLPoint<J>& p) { return from_rat<J>(c) * f(p); };
}

int radical_dim(const ManinTriple& tr, const MLPoint<Rat>& p) {
  Vec ml{p.g * p.k1, p.g * p.k2};
  auto rows = flatten_all(tr, tr.lbasis());
  for (const auto& x : tr.mbasis()) rows.push_back(tr.flatten(Ad(ml, x)));
  return 2 * tr.dim() - matrix_rank(rows, 2 * tr.n() * tr.n());
}

int delta_kernel_dim(const ManinTriple& tr, const MLPoint<Rat>& p) {
  return 2 * tr.dim() - matrix_rank(delta_matrix(tr, p), 2 * tr.dim());
}

bool nondegeneracy_test(const Mat<Rat>& g, const Mat<Rat>& k1, const Mat<Rat>& k2) {
  return in_big_cell(g * k1 * inverse(k2) * inverse(g));
}

void check_membership(const Vec& p, Variant) {
  int n = p.a.n;
  if (det(p.a) != 1 || det(p.b) != 1) throw MembershipError("point is not in SL_n x SL_n");
  Mat<Rat> P = p.a * inverse(p.b);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (P(i, j) != 0) throw MembershipError("g1 g2^-1 is not lower triangular");
  if (!in_big_cell(inverse(p.a) * p.b)) throw MembershipError("g1^-1 g2 is not in N+ H N-");
}

HamiltonianReport hamiltonian_report(const ManinTriple& tr, const Vec& p, Variant v) {
  check_membership(p, v);
  int D2 = 2 * tr.dim(), n = tr.n();
  const auto& ab = tr.abasis();
  auto f = acting_algebra(tr, v);
  auto fperp = annihilator(tr, f);

  // restricted tensor on f^perp and its radical, in abasis coordinates
  std::vector<Vec> fp;
  for (const auto& c : fperp) fp.push_back(combine(ab, c, n));
  std::vector<std::vector<Rat>> M;
  for (const auto& x : fp) {
    std::vector<Rat> row;
    for (const auto& y : fp) row.push_back(delta_STS(tr, p, x, y));
    M.push_back(row);
  }
  std::vector<std::vector<Rat>> rad;
  for (const auto& k : kernel_basis(M, static_cast<int>(fp.size()))) {
    std::vector<Rat> c(D2);
    for (size_t i = 0; i < fp.size(); ++i)
      for (int j = 0; j < D2; ++j) c[j] += k[i] * fperp[i][j];
    rad.push_back(c);
  }

  // tangent space: R_a with d(g1 g2^-1) = -a1 P + P a2 vanishing on the constrained entries
  Mat<Rat> P = p.a * inverse(p.b);
  auto cons = constrained_entries(n, v);
  std::vector<std::vector<Rat>> rows(cons.size(), std::vector<Rat>(D2));
  for (int j = 0; j < D2; ++j) {
    Mat<Rat> d = P * ab[j].b - ab[j].a * P;
    for (size_t r = 0; r < cons.size(); ++r) rows[r][j] = d(cons[r].first, cons[r].second);
  }
  std::vector<Vec> tangent;
  for (const auto& k : kernel_basis(rows, D2)) tangent.push_back(combine(ab, k, n));
  auto conormal = annihilator(tr, tangent);

  HamiltonianReport rep;
  rep.dim_fperp = static_cast<int>(fp.size());
  rep.dim_radical = static_cast<int>(rad.size());
  rep.dim_conormal = static_cast<int>(conormal.size());
  rep.rank = rep.dim_fperp - rep.dim_radical;
  rep.reduced_dim = static_cast<int>(tangent.size()) - static_cast<int>(f.size());
  auto both = rad;
  both.insert(both.end(), conormal.begin(), conormal.end());
  rep.radical_equals_conormal =
      rep.dim_radical == rep.dim_conormal && matrix_rank(both, D2) == rep.dim_radical;
  return rep;
}

bool hamiltonian_radical_check(const ManinTriple& tr, const Vec& p, Variant v) {
  return hamiltonian_report(tr, p, v).radical_equals_conormal;
}

std::vector<AFun> constraint_functions(const Vec& p, Variant v) {
  Mat<Rat> P = p.a * inverse(p.b);
  std::vector<AFun> out;
  for (auto [i, j] : constrained_entries(p.a.n, v)) {
    Rat target = P(i, j);
    out.push_back([i, j, target](const Pair<J>& q) {
      return (q.a * inverse(q.b))(i, j) - from_rat<J>(target);
    });
  }
  return out;
}

Rat reduced_bracket(const ManinTriple& tr, const AFun& phi, const AFun& psi, const Vec& p, Variant v) {
  check_membership(p, v);
  Pair<J> q = lift<J>(p);
  for (const auto& y : acting_algebra(tr, v))
    for (const auto* fn : {&phi, &psi})
      if (real(R_deriv(*fn, q, y, 1)) != 0) throw DomainError("extension is not invariant along the group orbit");
  return eval(sts_bracket(tr, phi, psi), p);
}

FInvariance f_invariance_check(const ManinTriple& tr, const std::vector<Vec>& f) {
  int n = tr.n(), D = tr.dim();
  const auto& lb = tr.lbasis();
  std::vector<std::vector<Rat>> rows;
  for (const auto& x : f) {
    std::vector<Rat> row;
    for (const auto& y : lb) row.push_back(tr.rho(x, y));
    rows.push_back(row);
  }
  std::vector<Vec> fl;
  for (const auto& k : kernel_basis(rows, D)) fl.push_back(combine(lb, k, n));
  Echelon<Rat> span(2 * n * n);
  for (const auto& x : fl) span.add(tr.flatten(x));
  FInvariance out;
  out.hypothesis = true;
  for (const auto& x : fl)
    for (const auto& y : fl)
      if (span.add(tr.flatten(bracket(x, y)))) out.hypothesis = false;
  if (!out.hypothesis) return out;
  std::vector<Vec> fp;
  for (const auto& c : annihilator(tr, f)) fp.push_back(combine(tr.abasis(), c, n));
  out.identity = true;
  for (const auto& a : f)
    for (const auto& c : fp)
      for (const auto& c2 : fp)
        if (tr.rho(bracket(a, c), tr.pi_m(c2)) + tr.rho(c, tr.pi_m(bracket(a, c2))) != 0) out.identity = false;
  return out;
}

Mat<Rat> random_unipotent(int n, bool upper, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-2, 2);
  Mat<Rat> m = Mat<Rat>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (upper ? i < j : i > j) m(i, j) = c(rng);
  return m;
}

Mat<Rat> random_torus(int n, std::mt19937& rng) {
  static const Rat vals[] = {Rat(1), Rat(2), Rat(1, 2), Rat(3), Rat(-1), Rat(2, 3), Rat(-3, 2)};
  Mat<Rat> m(n);
  Rat prod = 1;
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i) = vals[rng() % 7];
    prod *= m(i, i);
  }
  m(n - 1, n - 1) = 1 / prod;
  return m;
}

Mat<Rat> random_sl(int n, std::mt19937& rng) {
  Mat<Rat> g = random_unipotent(n, true, rng) * random_torus(n, rng) * random_unipotent(n, false, rng);
  bool upper = rng() % 2;
  return random_unipotent(n, upper, rng) * g;
}

MLPoint<Rat> random_ml_point(int n, std::mt19937& rng) {
  Mat<Rat> t = random_torus(n, rng);
  return {random_sl(n, rng), t * random_unipotent(n, true, rng), inverse(t) * random_unipotent(n, false, rng)};
}

Vec random_ytilde_point(int n, std::mt19937& rng) {
  for (;;) {
    Mat<Rat> g1 = random_sl(n, rng);
    Mat<Rat> b = random_torus(n, rng) * random_unipotent(n, false, rng);
    Mat<Rat> g2 = inverse(b) * g1;
    if (in_big_cell(inverse(g1) * g2)) return {g1, g2};
  }
}

Vec random_yt_point(int n, std::mt19937& rng) { return random_ytilde_point(n, rng); }

Rat k_pair(const QGroup& g, const KFun& f, const ClassMono& m) {
  int n = g.rank() + 1, N = g.N();
  std::vector<int> cap(2 * N);
  for (int k = 0; k < N; ++k) {
    cap[k] = m.f[k];
    cap[N + k] = m.e[k];
  }
  // y-part and x-part in descending root order
  SMat Y = smat_identity(n, cap), X = smat_identity(n, cap);
  for (int k = N - 1; k >= 0; --k) {
    Y = smat_mul(Y, smat_exp(root_matrix(g, k, false), k, cap));
    X = smat_mul(X, smat_exp(root_matrix(g, k, true), N + k, cap));
  }
  std::vector<int> target(cap);
  Rat out = 0;
  for (const auto& [km, c] : f) {
    Weight chi = km.chi;
    Series s = Series::constant(cap, c);
    for (int i = 0; i < g.rank(); ++i) {
      for (int e = 0; e < (i < static_cast<int>(km.a.size()) ? km.a[i] : 0); ++e)
        s = s * (Series::constant(cap, -1) * Y[i + 1][i]);
      for (int e = 0; e < (i < static_cast<int>(km.b.size()) ? km.b[i] : 0); ++e) {
        s = s * X[i][i + 1];
        chi = chi + g.rd().alpha(i);
      }
    }
    auto it = s.t.find(target);
    if (it == s.t.end()) continue;
    Rat v = it->second;
    for (int i = 0; i < g.rank(); ++i) v *= binom_general(chi[i], m.c[i]);
    out += v;
  }
  return out;
}

KFun upsilon_image(const QGroup& g, const Mono& dcp) {
  KMono km;
  km.chi = dcp.k;
  km.a.assign(g.rank(), 0);
  km.b.assign(g.rank(), 0);
  for (int k = 0; k < g.N(); ++k) {
    if (!dcp.f[k] && !dcp.e[k]) continue;
    int i = -1;
    for (int s = 0; s < g.rank(); ++s)
      if (g.rd().simple_position(s) == k) i = s;
    if (i < 0) throw DomainError("Upsilon image only tabulated on simple-root monomials");
    km.a[i] = dcp.e[k];
    km.b[i] = dcp.f[k];
    km.chi = qmanin::operator-(km.chi, qmanin::operator*(static_cast<int>(dcp.f[k]), g.rd().alpha(i)));
  }
  return {{km, Rat(1)}};
}

MLFun kfun_to_ml(const QGroup& g, const KFun& f) {
  int r = g.rank();
  return [f, r](const MLPoint<J>& p) {
    J out(0);
    for (const auto& [km, c] : f) {
      J term = from_rat<J>(c) * coord_chi(km.chi)(p);
      for (int i = 0; i < r; ++i) {
        for (int e = 0; e < km.a[i]; ++e) term = term * coord_a(i)(p);
        for (int e = 0; e < km.b[i]; ++e) term = term * coord_b(i)(p);
      }
      out += term;
    }
    return out;
  };
}

}  // namespace qmanin::classical
