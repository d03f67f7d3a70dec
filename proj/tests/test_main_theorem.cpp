#include "doctest.h"
#include "qmanin/main_theorem.hpp"

using namespace qmanin;

TEST_CASE("central generators are Frobenius images of U_1 generators") {
  QGroup g(RootDatum::make("A1"));
  auto fams = central_generators(g, 3);
  REQUIRE(fams.size() == 3);
  FrobeniusPreimage k = frobenius_preimage(g, fams[0].Phi, 3);
  CHECK(k.u.k[0] == 1);
  CHECK(k.scale == CycloScalar(3, 1));
  FrobeniusPreimage e = frobenius_preimage(g, fams[1].Phi, 3);
  CHECK(e.u.e[0] == 1);
  CHECK(e.u.k[0] == -2);
  FrobeniusPreimage f = frobenius_preimage(g, fams[2].Phi, 3);
  CHECK(f.u.f[0] == 1);
}

TEST_CASE("quasi-classical bracket matches the Manin-triple bracket (A1, ell = 3)") {
  QGroup g(RootDatum::make("A1"));
  CoordAlgebra C(g);
  auto checks = main_theorem_checks(C, 3, 1);
  CHECK(checks.size() == 12);
  int nonzero = 0;
  for (const auto& c : checks) {
    INFO(c.family, c.index, " a=", c.a, " b=", c.b, " ", c.detail);
    CHECK(c.equal);
    nonzero += c.entries > 0;
  }
  // every generator brackets nontrivially with some t_ab
  CHECK(nonzero >= 6);
}
