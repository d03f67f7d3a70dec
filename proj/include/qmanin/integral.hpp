#pragma once
#include <array>
#include <map>
#include <utility>

#include "qmanin/qalgebra.hpp"

namespace qmanin {

// Binomial exponents n_i of prod_i [K_i; n_i].
using NVec = std::array<uint8_t, kMaxRank>;

// F^(f) K_{lam0} prod_i [K_i; n_i] E^(e), lam0 in Lambda_0.
struct LusztigMono {
  Exps f{};
  Weight lam0{};
  NVec n{};
  Exps e{};
  auto operator<=>(const LusztigMono&) const = default;
};
using LusztigCoords = std::map<LusztigMono, QScalar>;
using TorusCoords = std::map<std::pair<Weight, NVec>, QScalar>;

// DCP coordinates reuse Mono: B^f K_k A^e with A_b = (q_b - q_b^-1) E_b.
using DCPCoords = std::map<Mono, QScalar>;

// Specialized element of U_z in the DCP basis.
struct SpecU {
  int ell = 1;
  std::map<Mono, CycloScalar> t;
  bool is_zero() const { return t.empty(); }
  bool operator==(const SpecU& o) const { return ell == o.ell && t == o.t; }
};

// Element of U(g) = Ubar^L_1 (or U(k) = Vbar_1): f^(n) prod binom(h_i, c_i) e^(m).
struct ClassMono {
  Exps f{};
  NVec c{};
  Exps e{};
  auto operator<=>(const ClassMono&) const = default;
};
struct ClassElem {
  std::map<ClassMono, Rat> t;
  bool is_zero() const { return t.empty(); }
  void add(const ClassMono& m, const Rat& c);
  bool operator==(const ClassElem& o) const { return t == o.t; }
};

// [K_i; m] as an element of U.
UElem k_binomial(const QGroup& g, int i, int m);
UElem lusztig_element(const QGroup& g, const LusztigMono& m);
UElem dcp_element(const QGroup& g, const Mono& m);

// Coordinates of K_lam in the basis K_{l0} prod [K_i; n_i].
const TorusCoords& torus_coordinates(const QGroup& g, const Weight& lam);
LusztigCoords lusztig_coordinates(const QGroup& g, const UElem& u);
DCPCoords dcp_coordinates(const QGroup& g, const UElem& u);

// A = Q[v, v^-1]; A_z for z = 1 (ell = 1) or z = zeta_ell.
template <class M>
bool coords_in_A(const M& coords) {
  for (const auto& [k, c] : coords)
    if (!c.is_laurent()) return false;
  return true;
}
template <class M>
bool coords_in_Az(const M& coords, int ell) {
  for (const auto& [k, c] : coords)
    if (!in_local_ring(c, ell)) return false;
  return true;
}

// Image in U_z; throws NotInForm when a DCP coordinate has a pole at z.
SpecU specialize_U(const QGroup& g, const UElem& u, int ell);

// Ubar^L_1 = U(g): K_{l0} -> 1, [K_i; n] -> binom(h_i, n). Throws NotInForm off U^L_{A_1}.
ClassElem ulbar1(const QGroup& g, const UElem& u);
UElem classical_lift(const QGroup& g, const ClassMono& m);
// Product in U(g), computed through lifts to U^L_A.
ClassElem classical_mul(const QGroup& g, const ClassElem& a, const ClassElem& b);

// Ubar^L_zeta: F^(f) (torus part) E^(e) with the torus part specialized at zeta. Two
// torus parts agree modulo I_zeta^0 iff every chi_lam agrees; since chi_lam of
// K_{l0} prod [K_i; n_i] at zeta is ell-periodic in lam times a polynomial of degree
// floor(n_i / ell) in each lam_i / ell, a finite window of lam decides this.
using SpecTorus = std::map<std::pair<Weight, NVec>, CycloScalar>;
struct UbarZeta {
  int ell = 1;
  std::map<std::pair<Exps, Exps>, SpecTorus> t;
};
UbarZeta ulbar_zeta(const QGroup& g, const UElem& u, int ell);
CycloScalar chi_value(const QGroup& g, const SpecTorus& t, const Weight& lam, int ell);
bool torus_in_ideal(const QGroup& g, const SpecTorus& t, int ell);
bool ubar_equal(const QGroup& g, const UbarZeta& a, const UbarZeta& b);

// Vbar_1 = U(k): same shape with Y, Z, X in place of F, K, E.
ClassElem vbar1(const QGroup& g, const VElem& v);
// Y^(y) Z_{l0} prod [Z_i; n_i] X^(x) coordinates, stored in LusztigMono (f = y, e = x).
LusztigCoords vlusztig_coordinates(const QGroup& g, const VElem& v);
VElem vclassical_lift(const QGroup& g, const ClassMono& m);
ClassElem vclassical_mul(const QGroup& g, const ClassElem& a, const ClassElem& b);

}  // namespace qmanin
