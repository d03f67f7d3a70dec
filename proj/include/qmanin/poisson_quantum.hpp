#pragma once
#include "qmanin/frobenius.hpp"

namespace qmanin {

// Any preimage in A of a value in Q(zeta): sum c_j zeta^j lifts to sum c_j v^j.
QScalar lift_cyclo(const CycloScalar& c);
// Lift of a specialized U_zeta element through its DCP coordinates.
UElem lift_spec(const QGroup& g, const SpecU& x);
SpecU spec_mul(const QGroup& g, const SpecU& x, const SpecU& y);
SpecU spec_add(const SpecU& x, const SpecU& y, const CycloScalar& s = CycloScalar(1, 1));

// {x, y} = ((xy - yx) / hbar) at zeta with hbar = ell (q^ell - q^-ell). A coefficient
// outside A_zeta after the division raises NonCentralityError.
SpecU qc_bracket(const QGroup& g, const UElem& x, const UElem& y, int ell);
SpecTable qc_bracket(const CoordAlgebra& C, const DElem& x, const DElem& y, int ell);
SpecTable specialize_d(const CoordAlgebra& C, const DElem& x, int ell);

// {t_ab^ell, Phi} through the decomposition
//   Phi (x) 1 - sum Phi_(1) (x) iota(Phi_(0)) = hbar sum Psi_r (x) X_r + I (x) J
// giving sum_r ^t xi(xi(X_r) . t_ab) (x) Psi_r. For Phi in the torus the residual
// -K_mu (x) (iota(K_mu) - 1) is evaluated on the weight of t_ab^ell instead.
// Throws NotInForm when a term is neither divisible by hbar nor in I (x) J.
SpecTable bracket_via_decomposition(const CoordAlgebra& C, int a, int b, const UElem& Phi, int ell);

}  // namespace qmanin
