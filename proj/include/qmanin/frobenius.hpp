#pragma once
#include <map>
#include <utility>
#include <vector>

#include "qmanin/heisenberg.hpp"
#include "qmanin/integral.hpp"

namespace qmanin {

// Element of U(g) (or U(k)) with coefficients in Q(zeta): the codomain of xi and eta.
struct XiElem {
  int ell = 1;
  std::map<ClassMono, CycloScalar> t;
  bool is_zero() const { return t.empty(); }
  void add(const ClassMono& m, const CycloScalar& c);
  bool operator==(const XiElem& o) const { return t == o.t; }
};
XiElem to_xi(const ClassElem& c, int ell);

// Lusztig's Frobenius on U^L_{A_zeta}: F^(f) K_{l0} prod [K_i; n_i] E^(e) goes to
// f^(f/ell) prod binom(h_i, n_i/ell) e^(e/ell) when ell divides every exponent, else 0.
// Throws NotInForm when a Lusztig coordinate has a pole at zeta.
XiElem frobenius_xi(const QGroup& g, const UElem& u, int ell);
// The same on V^{>=0} and V^{<=0} transported through the j-maps.
XiElem eta(const QGroup& g, const VElem& v, int ell);
XiElem xi_mul(const QGroup& g, const XiElem& a, const XiElem& b);

// Classical pairing <p, x> of a q-lift p in C_A (evaluated at q = 1) with x in U(g).
CycloScalar classical_pair(const CoordAlgebra& C, const CElem& p, const XiElem& x);
Rat classical_pair(const CoordAlgebra& C, const CElem& p, const ClassMono& m);

// ^t xi on vector-rep coefficients: t_ab goes to c_{(e_a^*)^{(x)ell}, e_b^{(x)ell}}, the
// coefficient of the Frobenius pullback of V sitting inside V^{(x)ell}.
CElem txi_t(const CoordAlgebra& C, int a, int b, int ell);
// Product of txi_t over a word of (a, b) pairs; the empty word gives 1.
CElem txi(const CoordAlgebra& C, const std::vector<std::pair<int, int>>& word, int ell);
// x.t_ab = sum_c <t_cb, x> t_ac for x in U(g); entry c is <t_cb, x>, independent of a.
std::vector<CycloScalar> classical_left_vector(const CoordAlgebra& C, const XiElem& x, int b);

// ^t eta extended multiplicatively from A_b -> A_b^ell, B_b -> B_b^ell, K_lam -> K_{ell lam}.
// The argument is a lift of an element of U_1; throws NotInForm outside U_{A_1}.
UElem teta(const QGroup& g, const UElem& u1, int ell);
UElem teta_mono(const QGroup& g, const Mono& dcp, int ell);

// sigma_1(u, v) for u in U_{A_1} and a PBW monomial of U(k) = Vbar_1.
Rat upsilon_pair(const QGroup& g, const UElem& u, const ClassMono& v);

// x commutes with E_i, F_i, K_{w_i} in U_zeta. Throws NotInForm if x is not in U_{A_zeta}.
bool centrality_check(const QGroup& g, const UElem& x, int ell);
// x commutes with 1 (x) E_i, 1 (x) F_i, 1 (x) K_{w_i} and t_ab (x) 1 in D_zeta.
bool centrality_check(const CoordAlgebra& C, const DElem& x, int ell);

}  // namespace qmanin
