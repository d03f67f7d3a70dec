#include "doctest.h"
#include "qmanin/qscalar.hpp"
#include "qmanin/rootdata.hpp"

using namespace qmanin;

TEST_CASE("q-integers and factorials") {
  CHECK(q_integer(3, 1).str() == "(v^2+1+v^-2)/1");
  CHECK(q_integer(0, 1).is_zero());
  CHECK(q_integer(-2, 1) == -q_integer(2, 1));
  CHECK(q_factorial(3, 1) == q_integer(2, 1) * q_integer(3, 1));
  // [4 choose 2] = [4][3]/[2]
  CHECK(q_binomial(4, 2, 1) == q_integer(4, 1) * q_integer(3, 1) / q_integer(2, 1));
  CHECK(q_binomial(-1, 3, 1) == QScalar(-1));
  CHECK_THROWS_AS(q_integer(2, Rat(1, 2), 1), MalformedExponent);
  CHECK(q_integer(2, Rat(1, 3), 3).str() == "(v+v^-1)/1");
}

TEST_CASE("QScalar field operations and parsing") {
  QScalar v = QScalar::vpow(1);
  QScalar x = (v + 1) / (v - 1);
  CHECK(x * (v - 1) == v + 1);
  CHECK(x.inverse() * x == QScalar(1));
  CHECK(QScalar::parse(x.str()) == x);
  CHECK(x.eval(2) == 3);
  CHECK_THROWS_AS(x.eval(1), DomainError);
}

TEST_CASE("specialization at roots of unity") {
  QScalar v = QScalar::vpow(1);
  CHECK(eval_at_root(v + v.inverse(), 3) == CycloScalar(3, -1));
  CHECK(eval_at_root(q_integer(3, 1), 3).is_zero());
  CHECK(in_local_ring(q_integer(2, 1).inverse(), 3));
  CHECK_FALSE(in_local_ring(q_integer(3, 1).inverse(), 3));
  CHECK_THROWS_AS(eval_at_root(q_integer(3, 1).inverse(), 3), NotInLocalRing);
  QScalar q5 = QScalar::vpow(5);
  CHECK(eval_at_root(divide_by_hbar(q5 - q5.inverse(), 5, 1), 5) == CycloScalar(5, Rat(1, 5)));
  CHECK(eval_at_root(divide_by_hbar(QScalar(1) - QScalar::vpow(10), 5, 1), 5) == CycloScalar(5, Rat(-1, 5)));
  // (q^{2l^2} - 1)/hbar -> 1
  CHECK(eval_at_root(divide_by_hbar(QScalar::vpow(18) - 1, 3, 1), 3) == CycloScalar(3, 1));
  // (q - q^-1)^l [l]! / hbar -> (a,a)/2 = 1 at l = 3
  QScalar v1 = QScalar::vpow(1);
  QScalar w = (v1 - v1.inverse()).pow(3) * q_factorial(3, 1);
  CHECK(eval_at_root(divide_by_hbar(w, 3, 1), 3) == CycloScalar(3, 1));
  CHECK(divide_by_hbar(hbar(7, 1), 7, 1) == QScalar(1));
  for (int r = 1; r < 5; ++r) CHECK(eval_at_root(q_binomial(5, r, 1), 5).is_zero());
  CHECK_THROWS_AS(validate_ell(4, 1), ConfigError);
  CHECK_THROWS_AS(validate_ell(3, 3), ConfigError);
  CHECK_NOTHROW(validate_ell(5, 3));
}

TEST_CASE("cyclotomic arithmetic") {
  CycloScalar z = CycloScalar::zeta_pow(5, 1);
  CycloScalar s(5, 0);
  for (int k = 0; k < 5; ++k) s += CycloScalar::zeta_pow(5, k);
  CHECK(s.is_zero());
  CHECK(z.inverse() * z == CycloScalar(5, 1));
  CHECK(CycloScalar::zeta_pow(3, 3) == CycloScalar(3, 1));
}

TEST_CASE("root data") {
  auto a2 = RootDatum::make("A2");
  REQUIRE(a2.N() == 3);
  CHECK(a2.beta_q[0] == std::vector<int>{1, 0});
  CHECK(a2.beta_q[1] == std::vector<int>{1, 1});
  CHECK(a2.beta_q[2] == std::vector<int>{0, 1});
  CHECK(a2.bilinear(a2.alpha(0), a2.alpha(1)) == -1);
  CHECK(a2.bilinear(a2.fundamental(0), a2.fundamental(0)) == Rat(2, 3));
  CHECK(a2.lambda0.size() == 12);  // |Lambda/2Q| = 2^2 * 3
  auto a3 = RootDatum::make("A3");
  CHECK(a3.N() == 6);
  CHECK(kostant_partition(a3, {1, 1, 1}) == 4);
  CHECK(kostant_partition(a2, {2, 2}) == 3);
  CHECK_THROWS_AS(RootDatum::make("B2"), ConfigError);
  CHECK_THROWS_AS(RootDatum::make("A2", std::vector<int>{1, 1, 2}), ValidationError);
  auto alt = RootDatum::make("A2", std::vector<int>{2, 1, 2});
  CHECK(alt.beta_q[0] == std::vector<int>{0, 1});
}
