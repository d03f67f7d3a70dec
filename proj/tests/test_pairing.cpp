#include "doctest.h"
#include "qmanin/pairing.hpp"

using namespace qmanin;

TEST_CASE("pairing base values") {
  QGroup g(RootDatum::make("A2"));
  Pairing p(g);
  QScalar q = g.qi(0);
  QScalar base = (q.inverse() - q).inverse();
  CHECK(p.tau_closed(g.E(0), g.F(0)) == base);
  CHECK(p.tau_closed(g.E(0), g.F(1)).is_zero());
  CHECK(p.tau_recursive(g.E(1), g.F(1)) == base);
  Weight l = g.rd().fundamental(0), m = g.rd().fundamental(1);
  CHECK(p.tau_closed(g.K(l), g.K(m)) == g.qpow(-g.rd().bilinear(l, m)));
  CHECK(p.tau_recursive(g.K(l), g.F(0)).is_zero());
  CHECK(p.tau_recursive(g.mul(g.E(0), g.E(1)), g.F(0)).is_zero());
  // m = n = 2: (-1)^2 [2]! q / (q - q^-1)^2
  QScalar want = (q + q.inverse()) * q / (q - q.inverse()).pow(2);
  CHECK(p.tau_closed(g.pow(g.E(0), 2), g.pow(g.F(0), 2)) == want);
  CHECK(p.tau_recursive(g.pow(g.E(0), 2), g.pow(g.F(0), 2)) == want);
  CHECK_THROWS_AS(p.tau_closed(g.F(0), g.F(0)), DomainError);
}

TEST_CASE("closed form agrees with the recursion on mixed elements (A2)") {
  QGroup g(RootDatum::make("A2"));
  Pairing p(g);
  UElem x = g.mul({g.K(g.rd().fundamental(1)), g.Eroot(1), g.E(0)}) + g.mul(g.E(1), g.E(0));
  UElem y = g.mul({g.F(0), g.F(1), g.Ki(0)}) + g.mul(g.Froot(1), g.Ki(1, -1));
  CHECK(p.tau_closed(x, y) == p.tau_recursive(x, y));
}

TEST_CASE("sigma examples and multiplicativity") {
  QGroup g(RootDatum::make("A2"));
  Pairing p(g);
  QScalar q = g.qi(0);
  Weight l = g.rd().fundamental(0), m = g.rd().fundamental(1);
  CHECK(p.sigma(g.K(l), g.Z(m)) == g.qpow(g.rd().bilinear(l, m)));
  CHECK(p.sigma(g.E(0), g.Y(0)) == (q.inverse() - q).inverse());
  CHECK(p.sigma(g.E(0), g.Y(1)).is_zero());
  CHECK(p.sigma(g.one(), g.vone()) == QScalar(1));
  std::vector<UElem> us = {g.E(0), g.F(1), g.mul(g.E(0), g.F(0)), g.mul(g.F(0), g.Ki(1)), g.mul(g.E(1), g.E(0)),
                           g.mul(g.F(1), g.F(0)), g.Eroot(1), g.mul(g.Froot(1), g.E(1))};
  std::vector<VElem> vs = {g.X(0), g.X(1), g.Y(0), g.Y(1), g.Z(l), g.Z(-m)};
  for (const auto& u : us) {
    UTensor du = g.coproduct(u);
    for (const auto& v : vs)
      for (const auto& w : vs) {
        QScalar lhs = p.sigma(u, g.vmul(v, w));
        QScalar rhs = 0;
        for (const auto& [pr, c] : du.t) rhs += c * p.sigma(g.mono(pr.first), v) * p.sigma(g.mono(pr.second), w);
        CHECK(lhs == rhs);
      }
  }
}
