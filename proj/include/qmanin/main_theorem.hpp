#pragma once
#include <string>
#include <vector>

#include "qmanin/poisson_classical.hpp"
#include "qmanin/poisson_quantum.hpp"

namespace qmanin {

// Central generators of U_zeta: K_{ell w_i}, (q_i - q_i^-1)^ell E_i^ell K_i^-ell and
// (q_i - q_i^-1)^ell F_i^ell.
struct GeneratorFamily {
  std::string name;
  int index;
  UElem Phi;
};
std::vector<GeneratorFamily> central_generators(const QGroup& g, int ell);

// Phi = scale * ^t eta(u) in U_zeta for a DCP monomial u of U_1.
struct FrobeniusPreimage {
  CycloScalar scale;
  Mono u;
};
FrobeniusPreimage frobenius_preimage(const QGroup& g, const UElem& Phi, int ell);

// ^t xi (x) ^t eta of the classical bracket {t_ab, Upsilon(u)}'. The bracket is sampled at
// seeded points of Delta G x K and fitted exactly: first linearly in the entries of g,
// then over {chi_mu, a_j chi_mu, b_j chi_mu}, mu in [-2,2]^rank, on K. Throws DomainError
// if no fit exists.
SpecTable classical_side(const CoordAlgebra& C, const classical::ManinTriple& tr, int a, int b, const Mono& u,
                         int ell, uint32_t seed);

struct MainTheoremCheck {
  int a, b;
  std::string family;
  int index;
  bool equal;
  size_t entries;  // nonzero entries of the specialized D-table
  std::string detail;
};
std::vector<MainTheoremCheck> main_theorem_checks(const CoordAlgebra& C, int ell, uint32_t seed);

}  // namespace qmanin
