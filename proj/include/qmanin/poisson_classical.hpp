#pragma once
#include <functional>
#include <random>
#include <vector>

#include "qmanin/errors.hpp"
#include "qmanin/integral.hpp"
#include "qmanin/linalg.hpp"

namespace qmanin::classical {

inline bool invertible(const Rat& x) { return x != 0; }
inline Rat inverse(const Rat& x) { return 1 / x; }

// a + b eps with eps^2 = 0.
template <class T>
struct Dual {
  T re{}, du{};
  Dual() = default;
  Dual(const T& r) : re(r) {}
  Dual(int r) : re(T(r)) {}
  Dual(const T& r, const T& d) : re(r), du(d) {}
  Dual& operator+=(const Dual& o) { re += o.re; du += o.du; return *this; }
  Dual& operator-=(const Dual& o) { re -= o.re; du -= o.du; return *this; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator-(const Dual& a) { return Dual(-a.re, -a.du); }
  friend Dual operator*(const Dual& a, const Dual& b) { return Dual(a.re * b.re, a.re * b.du + a.du * b.re); }
  friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.du == b.du; }
};
template <class T>
bool invertible(const Dual<T>& x) { return invertible(x.re); }
template <class T>
Dual<T> inverse(const Dual<T>& x) {
  T r = inverse(x.re);
  return Dual<T>(r, -(x.du * r * r));
}

template <class T>
struct FromRat {
  static T make(const Rat& r) { return T(r); }
};
template <class T>
struct FromRat<Dual<T>> {
  static Dual<T> make(const Rat& r) { return Dual<T>(FromRat<T>::make(r)); }
};
template <class T>
T from_rat(const Rat& r) { return FromRat<T>::make(r); }

// Two independent infinitesimals: the outer eps (level 1) sits in du, the inner (level 2) in re.du.
using D1 = Dual<Rat>;
using J = Dual<D1>;
inline J eps(int level) { return level == 1 ? J(D1(0), D1(1)) : J(D1(0, 1), D1(0)); }
// Coefficient of eps_level, keeping the other infinitesimal.
inline J eps_coeff(const J& x, int level) {
  return level == 1 ? J(D1(x.du.re, x.du.du), D1(0)) : J(D1(x.re.du, 0), D1(x.du.du, 0));
}
inline Rat real(const J& x) { return x.re.re; }

template <class T>
struct Mat {
  int n = 0;
  std::vector<T> v;
  Mat() = default;
  explicit Mat(int size) : n(size), v(size * size) {}
  static Mat identity(int size) {
    Mat m(size);
    for (int i = 0; i < size; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(int i, int j) { return v[i * n + j]; }
  const T& operator()(int i, int j) const { return v[i * n + j]; }
  friend Mat operator+(Mat a, const Mat& b) {
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
    return a;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend Mat operator*(const T& s, Mat a) {
    for (auto& x : a.v) x = s * x;
    return a;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.n);
    for (int i = 0; i < a.n; ++i)
      for (int k = 0; k < a.n; ++k) {
        const T& x = a(i, k);
        for (int j = 0; j < a.n; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.v == b.v; }
  T trace() const {
    T s{};
    for (int i = 0; i < n; ++i) s += (*this)(i, i);
    return s;
  }
};

template <class T>
Mat<T> inverse(Mat<T> a) {
  int n = a.n;
  Mat<T> b = Mat<T>::identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && !invertible(a(p, c))) ++p;
    if (p == n) throw DomainError("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(p, j), a(c, j));
      std::swap(b(p, j), b(c, j));
    }
    T inv = inverse(a(c, c));
    for (int j = 0; j < n; ++j) {
      a(c, j) = inv * a(c, j);
      b(c, j) = inv * b(c, j);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      T f = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        b(i, j) -= f * b(c, j);
      }
    }
  }
  return b;
}

template <class T>
Mat<T> lift(const Mat<Rat>& m) {
  Mat<T> out(m.n);
  for (size_t i = 0; i < m.v.size(); ++i) out.v[i] = from_rat<T>(m.v[i]);
  return out;
}
Rat det(const Mat<Rat>& m);
// Principal minor on the trailing k x k block.
Rat trailing_minor(const Mat<Rat>& m, int k);
// x in N+ H N- (x = u h w with u upper, w lower unipotent): every trailing minor is nonzero.
bool in_big_cell(const Mat<Rat>& x);

// Vector of a = g (+) g, or a point of A = G x G.
template <class T>
struct Pair {
  Mat<T> a, b;
  friend Pair operator+(const Pair& x, const Pair& y) { return {x.a + y.a, x.b + y.b}; }
  friend Pair operator-(const Pair& x, const Pair& y) { return {x.a - y.a, x.b - y.b}; }
  friend Pair operator*(const T& s, const Pair& x) { return {s * x.a, s * x.b}; }
  friend bool operator==(const Pair& x, const Pair& y) { return x.a == y.a && x.b == y.b; }
};
using Vec = Pair<Rat>;

template <class T>
Pair<T> lift(const Vec& x) { return {lift<T>(x.a), lift<T>(x.b)}; }
template <class T>
Pair<T> bracket(const Pair<T>& x, const Pair<T>& y) {
  return {x.a * y.a - y.a * x.a, x.b * y.b - y.b * x.b};
}
// Ad(g) x for g a point of G x G.
template <class T>
Pair<T> Ad(const Pair<T>& g, const Pair<T>& x) {
  return {g.a * x.a * inverse(g.a), g.b * x.b * inverse(g.b)};
}
template <class T>
Pair<T> inverse(const Pair<T>& g) { return {inverse(g.a), inverse(g.b)}; }
template <class T>
Pair<T> operator*(const Pair<T>& g, const Pair<T>& h) { return {g.a * h.a, g.b * h.b}; }

// ((g, g), (k1, k2)) in Delta G x K.
template <class T>
struct MLPoint {
  Mat<T> g, k1, k2;
  Pair<T> m() const { return {g, g}; }
  Pair<T> l() const { return {k1, k2}; }
};

// (g (+) g, Delta g, k) for sl_n with rho((a, b), (a', b')) = tr(a a') - tr(b b').
// k = {(h + x, -h + y)}: h diagonal, x strictly upper, y strictly lower.
class ManinTriple {
 public:
  explicit ManinTriple(int n);
  int n() const { return n_; }
  int dim() const { return n_ * n_ - 1; }  // dim g; dim a = 2 dim()
  const std::vector<Mat<Rat>>& gbasis() const { return gb_; }
  const std::vector<Vec>& abasis() const { return ab_; }
  const std::vector<Vec>& mbasis() const { return mb_; }
  const std::vector<Vec>& lbasis() const { return lb_; }
  // X_r in m with rho(X_r, lbasis[s]) = delta_rs.
  const std::vector<Vec>& mdual() const { return md_; }
  // c_r with rho(c_r, abasis[s]) = delta_rs.
  const std::vector<Vec>& adual() const { return ad_; }
  Mat<Rat> e(int i) const;  // E_{i,i+1}
  Mat<Rat> f(int i) const;  // E_{i+1,i}
  Mat<Rat> h(int i) const;  // coroot E_ii - E_{i+1,i+1}
  // H_lam with kappa(H_lam, H) = lam(H); lam in fundamental-weight coordinates.
  Mat<Rat> H(const Weight& lam) const;

  template <class T>
  T kappa(const Mat<T>& x, const Mat<T>& y) const { return (x * y).trace(); }
  template <class T>
  T rho(const Pair<T>& x, const Pair<T>& y) const { return kappa(x.a, y.a) - kappa(x.b, y.b); }
  template <class T>
  Pair<T> pi_l(const Pair<T>& x) const {
    // a - b = 2h + x - y fixes the k component (h + x, -h + y)
    Mat<T> d = x.a - x.b, hp(n_), xp(n_), yp(n_);
    T half = from_rat<T>(Rat(1, 2));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) hp(i, i) = half * d(i, i);
        else if (i < j) xp(i, j) = d(i, j);
        else yp(i, j) = -d(i, j);
      }
    return {hp + xp, yp - hp};
  }
  template <class T>
  Pair<T> pi_m(const Pair<T>& x) const { return x - pi_l(x); }
  template <class T>
  T omega(const Pair<T>& x, const Pair<T>& y) const {
    return rho(pi_m(x), pi_l(y)) - rho(pi_l(x), pi_m(y));
  }

  std::vector<Rat> flatten(const Vec& x) const;
  Vec unflatten(const std::vector<Rat>& c) const;
  // Manin-triple axioms: rho non-degenerate and invariant, m and l isotropic
  // subalgebras, a = m (+) l.
  bool axioms_hold() const;

 private:
  int n_;
  std::vector<Mat<Rat>> gb_;
  std::vector<Vec> ab_, mb_, lb_, md_, ad_;
};

// delta^M_m(L*_xi, L*_eta) = rho(pi_m(Ad(m) xi), Ad(m) eta) for xi, eta in l; the
// R* version is -rho(pi_m(Ad(m^-1) xi), Ad(m^-1) eta).
template <class T>
T delta_M(const ManinTriple& tr, const Pair<T>& m, const Pair<T>& xi, const Pair<T>& eta) {
  return tr.rho(tr.pi_m(Ad(m, xi)), Ad(m, eta));
}
template <class T>
T delta_M_R(const ManinTriple& tr, const Pair<T>& m, const Pair<T>& xi, const Pair<T>& eta) {
  Pair<T> mi = inverse(m);
  return -tr.rho(tr.pi_m(Ad(mi, xi)), Ad(mi, eta));
}
// The same on L with the roles of m and l swapped; xi, eta in m.
template <class T>
T delta_L(const ManinTriple& tr, const Pair<T>& l, const Pair<T>& xi, const Pair<T>& eta) {
  return tr.rho(tr.pi_l(Ad(l, xi)), Ad(l, eta));
}
template <class T>
T delta_L_R(const ManinTriple& tr, const Pair<T>& l, const Pair<T>& xi, const Pair<T>& eta) {
  Pair<T> li = inverse(l);
  return -tr.rho(tr.pi_l(Ad(li, xi)), Ad(li, eta));
}

// Semenov-Tyan-Shansky tensor on A: rho(a, (-pi_m + Ad(g) pi_l Ad(g^-1))(b)) on R* covectors.
Rat delta_STS(const ManinTriple& tr, const Vec& g, const Vec& a, const Vec& b);
// (1/2)(omega(Ad(g) xi, Ad(g) eta) + omega(xi, eta)) on L* covectors, a* = a through rho.
Rat delta_STS_omega(const ManinTriple& tr, const Vec& g, const Vec& xi, const Vec& eta);

enum class Factor { M, L };
enum class Triv { Lstar, Rstar };
struct Covector {
  Factor factor;
  Triv triv;
  Vec v;  // in l for factor M, in m for factor L
};
// delta on M x L: delta^M on M, delta^L on L, and delta(L*_a, R*_xi) = rho(a, xi) across.
Rat delta_ML(const ManinTriple& tr, const MLPoint<Rat>& p, const Covector& x, const Covector& y);
// Matrix of delta on {L*_{Y_r} at M} u {R*_{X_r} at L}.
std::vector<std::vector<Rat>> delta_matrix(const ManinTriple& tr, const MLPoint<Rat>& p);

// Functions on Delta G x K (g, k1, k2) and on A = G x G, evaluated on jets.
using MLFun = std::function<J(const MLPoint<J>&)>;
using AFun = std::function<J(const Pair<J>&)>;

// {f1, f2} = sum L_X f1 L_X' f2 delta^M + sum R_Y f1 R_Y' f2 delta^L
//          + sum_r (L_{X_r} f1 R_{Y_r} f2 - R_{Y_r} f1 L_{X_r} f2),
// derivatives taken with the infinitesimal of the given level.
MLFun ml_bracket(const ManinTriple& tr, MLFun f1, MLFun f2, int level = 1);
// {h, phi}' = sum_r L_{X_r} h R_{Y_r} phi with h on G and phi on K.
Rat bracket_functions(const ManinTriple& tr, const MLFun& h, const MLFun& phi, const MLPoint<Rat>& p);
// The two factors of that sum: (L_{X_r} h)_r and (R_{Y_r} phi)_r.
std::vector<Rat> L_gradient(const ManinTriple& tr, const MLFun& h, const MLPoint<Rat>& p);
std::vector<Rat> R_gradient(const ManinTriple& tr, const MLFun& phi, const MLPoint<Rat>& p);
// STS bracket on A.
AFun sts_bracket(const ManinTriple& tr, AFun f1, AFun f2, int level = 1);
Rat eval(const MLFun& f, const MLPoint<Rat>& p);
Rat eval(const AFun& f, const Vec& p);

// Coordinates: t_ab(g) = g_ab; on K = {(t x, t^-1 y)}, b_i = (t x t^-1)_{i,i+1},
// a_i = -(t^-1 y t)_{i+1,i}, chi_lam = lam(t).
MLFun coord_t(int a, int b);
MLFun coord_a(int i);
MLFun coord_b(int i);
MLFun coord_chi(const Weight& lam);
MLFun fun_mul(MLFun f, MLFun g);
MLFun fun_scale(const Rat& c, MLFun f);

// dim(l cap Ad(ml)(m)).
int radical_dim(const ManinTriple& tr, const MLPoint<Rat>& p);
int delta_kernel_dim(const ManinTriple& tr, const MLPoint<Rat>& p);
// g k1 k2^-1 g^-1 in N+ H N-.
bool nondegeneracy_test(const Mat<Rat>& g, const Mat<Rat>& k1, const Mat<Rat>& k2);

// Subvarieties of A: Ytilde = {g1 g2^-1 in B-, g1^-1 g2 in N+HN-} with N- acting
// diagonally on the left, or the image of Y_t = {g1 g2^-1 in t N-, ...} with B- acting.
enum class Variant { NminusOnYtilde, BminusOnYt };
struct HamiltonianReport {
  int dim_fperp = 0, dim_radical = 0, dim_conormal = 0, rank = 0, reduced_dim = 0;
  bool radical_equals_conormal = false;
};
// Throws MembershipError off the subvariety. For BminusOnYt, t is read off the point.
void check_membership(const Vec& p, Variant v);
HamiltonianReport hamiltonian_report(const ManinTriple& tr, const Vec& p, Variant v);
bool hamiltonian_radical_check(const ManinTriple& tr, const Vec& p, Variant v);
// Functions vanishing on the subvariety through p (constraint entries of g1 g2^-1).
std::vector<AFun> constraint_functions(const Vec& p, Variant v);
// {phi^, psi^} at p; throws DomainError if an extension is not infinitesimally invariant at p.
Rat reduced_bracket(const ManinTriple& tr, const AFun& phi, const AFun& psi, const Vec& p, Variant v);

struct FInvariance {
  bool hypothesis = false;  // f^perp cap l closed under the bracket
  bool identity = false;    // rho([a,c], pi_m c') + rho(c, pi_m [a,c']) = 0, only checked under the hypothesis
};
FInvariance f_invariance_check(const ManinTriple& tr, const std::vector<Vec>& f);

// Seeded points built from integer one-parameter subgroups.
Mat<Rat> random_sl(int n, std::mt19937& rng);
Mat<Rat> random_torus(int n, std::mt19937& rng);
Mat<Rat> random_unipotent(int n, bool upper, std::mt19937& rng);
MLPoint<Rat> random_ml_point(int n, std::mt19937& rng);
Vec random_ytilde_point(int n, std::mt19937& rng);
Vec random_yt_point(int n, std::mt19937& rng);

// Pairing of a function on K, written in the coordinates a_i, b_i, chi_lam, with a PBW
// monomial y^(f) binom(t, c) x^(e) of U(k): Taylor coefficients of
// f(exp(y-part) exp(torus) exp(x-part)). Root vectors come from the defining representation.
struct KMono {
  Weight chi{};
  std::vector<int> a, b;  // exponents of a_i, b_i
};
using KFun = std::vector<std::pair<KMono, Rat>>;
Rat k_pair(const QGroup& g, const KFun& f, const ClassMono& m);
// chi_lam, a_i, b_i chi_{-alpha_i}: the images of K_lam, A_i, B_i under Upsilon.
KFun upsilon_image(const QGroup& g, const Mono& dcp);
MLFun kfun_to_ml(const QGroup& g, const KFun& f);

}  // namespace qmanin::classical
