#include <random>

#include "doctest.h"
#include "qmanin/frobenius.hpp"
#include "qmanin/pairing.hpp"

using namespace qmanin;

namespace {

XiElem xi_mono(const ClassMono& m, int ell) {
  XiElem x;
  x.ell = ell;
  x.add(m, CycloScalar(ell, 1));
  return x;
}

UElem dcp_gen(const QGroup& g, char kind, int i) {
  int k = g.rd().simple_position(i);
  if (kind == 'A') return dcp_element(g, Mono{{}, {}, unit_exps(k)});
  if (kind == 'B') return dcp_element(g, Mono{unit_exps(k), {}, {}});
  return g.K(g.rd().fundamental(i));
}

}  // namespace

TEST_CASE("xi on divided powers and the torus") {
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A1", 5}, std::pair{"A2", 5}}) {
    QGroup g(RootDatum::make(type));
    for (int i = 0; i < g.rank(); ++i) {
      int k = g.rd().simple_position(i);
      CHECK(frobenius_xi(g, g.Eroot_div(k, ell), ell) == xi_mono(ClassMono{{}, {}, unit_exps(k)}, ell));
      CHECK(frobenius_xi(g, g.Froot_div(k, ell), ell) == xi_mono(ClassMono{unit_exps(k), {}, {}}, ell));
      CHECK(frobenius_xi(g, g.E(i), ell).is_zero());
      CHECK(frobenius_xi(g, g.Eroot_div(k, ell + 1), ell).is_zero());
      CHECK(frobenius_xi(g, k_binomial(g, i, 1), ell).is_zero());
      NVec c{};
      c[i] = 1;
      CHECK(frobenius_xi(g, k_binomial(g, i, ell), ell) == xi_mono(ClassMono{{}, c, {}}, ell));
    }
    // K_lam goes to 1 for every lam: the torus coordinates conspire through q-Lucas
    XiElem one = xi_mono(ClassMono{}, ell);
    for (int a = -2 * ell; a <= 2 * ell; a += 3)
      for (int b = (g.rank() > 1 ? -4 : 0); b <= (g.rank() > 1 ? 4 : 0); b += 4)
        CHECK(frobenius_xi(g, g.K(Weight{a, b, 0, 0}), ell) == one);
  }
}

TEST_CASE("xi kills the torus ideal") {
  QGroup g(RootDatum::make("A1"));
  int ell = 3;
  Weight w = g.rd().fundamental(0);
  // both elements vanish under every chi_mu at zeta
  UElem u = g.K(ell * w) - g.one();
  auto uz = ulbar_zeta(g, u, ell);
  CHECK(ubar_equal(g, uz, ulbar_zeta(g, g.scalar(0), ell)));
  CHECK(frobenius_xi(g, u, ell).is_zero());
  UElem v = g.mul(g.K(ell * g.rd().alpha(0)) - g.one(), k_binomial(g, 0, ell));
  CHECK(ubar_equal(g, ulbar_zeta(g, v, ell), ulbar_zeta(g, g.scalar(0), ell)));
  CHECK(frobenius_xi(g, v, ell).is_zero());
}

TEST_CASE("xi is multiplicative on divided powers") {
  std::mt19937 rng(31);
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A1", 5}, std::pair{"A2", 5}}) {
    QGroup g(RootDatum::make(type));
    std::vector<int> choices{0, 1, ell, ell + 1};
    for (int t = 0; t < 6; ++t) {
      auto rnd = [&] {
        LusztigMono m;
        for (int i = 0; i < g.rank(); ++i) {
          int k = g.rd().simple_position(i);
          m.e[k] = static_cast<uint8_t>(rng() % 2 ? choices[rng() % 4] : 0);
          m.f[k] = static_cast<uint8_t>(rng() % 3 ? 0 : choices[rng() % 4]);
          m.n[i] = static_cast<uint8_t>(rng() % 3 ? 0 : choices[rng() % 4]);
        }
        return lusztig_element(g, m);
      };
      UElem x = rnd(), y = rnd();
      CHECK(frobenius_xi(g, g.mul(x, y), ell) == xi_mul(g, frobenius_xi(g, x, ell), frobenius_xi(g, y, ell)));
    }
  }
  // E_1^(ell) E_2^(ell) involves the non-simple divided power E_b^(ell), b = a1 + a2
  int ell = 5;
  QGroup g(RootDatum::make("A2"));
  UElem e1 = g.pow(g.E(0), ell), e2 = g.pow(g.E(1), ell);
  QScalar f = QScalar(qfact_v(ell, g.ei(0))).inverse();
  UElem x = f * e1, y = f * e2;
  XiElem lhs = frobenius_xi(g, g.mul(x, y), ell);
  ClassElem ce1 = ulbar1(g, g.E(0)), ce2 = ulbar1(g, g.E(1));
  CHECK(lhs == to_xi(classical_mul(g, ce1, ce2), ell));
  int kb = -1;
  for (int k = 0; k < g.N(); ++k)
    if (g.rd().height(g.rd().beta[k]) == 2) kb = k;
  REQUIRE(kb >= 0);
  CHECK(frobenius_xi(g, g.Eroot_div(kb, ell), ell) == to_xi(ulbar1(g, g.Eroot(kb)), ell));
  CHECK(frobenius_xi(g, g.Froot_div(kb, ell), ell) == to_xi(ulbar1(g, g.Froot(kb)), ell));
  CHECK(lhs.t.size() == 2);
}

TEST_CASE("eta on V") {
  QGroup g(RootDatum::make("A2"));
  int ell = 5;
  for (int i = 0; i < 2; ++i) {
    int k = g.rd().simple_position(i);
    VElem xl = QScalar(qfact_v(ell, g.ei(i))).inverse() * g.vpow_elem(g.X(i), ell);
    CHECK(eta(g, xl, ell) == xi_mono(ClassMono{{}, {}, unit_exps(k)}, ell));
    VElem yl = QScalar(qfact_v(ell, g.ei(i))).inverse() * g.vpow_elem(g.Y(i), ell);
    CHECK(eta(g, yl, ell) == xi_mono(ClassMono{unit_exps(k), {}, {}}, ell));
    CHECK(eta(g, g.X(i), ell).is_zero());
    CHECK(eta(g, g.Z(g.rd().fundamental(i)), ell) == xi_mono(ClassMono{}, ell));
  }
}

TEST_CASE("transpose of xi on vector-rep coefficients") {
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A2", 5}}) {
    QGroup g(RootDatum::make(type));
    CoordAlgebra C(g);
    CHECK(C.equal(txi(C, {}, ell), C.one()));
    int n1 = C.n1();
    for (int i = 0; i < g.rank(); ++i) {
      int k = g.rd().simple_position(i);
      for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
          CElem h = txi_t(C, a, b, ell);
          CHECK(C.pair(h, g.E(i)).is_zero());
          QScalar s = C.pair(h, g.Eroot_div(k, ell));
          REQUIRE(in_local_ring(s, ell));
          CHECK(eval_at_root(s, ell) == CycloScalar(ell, classical_pair(C, C.t(a, b), ClassMono{{}, {}, unit_exps(k)})));
        }
    }
    // dual route: <t^ell, u>(zeta) = <t, xi(u)> on a window of the Lusztig basis
    std::mt19937 rng(77);
    std::vector<int> choices{0, 1, ell, ell + 1};
    for (int t = 0; t < 20; ++t) {
      LusztigMono m;
      m.lam0 = g.rd().lambda0[rng() % g.rd().lambda0.size()];
      for (int k = 0; k < g.N(); ++k) {
        m.e[k] = static_cast<uint8_t>(rng() % 2 ? choices[rng() % 4] : 0);
        m.f[k] = static_cast<uint8_t>(rng() % 2 ? choices[rng() % 4] : 0);
      }
      for (int i = 0; i < g.rank(); ++i) m.n[i] = static_cast<uint8_t>(rng() % 2 ? choices[rng() % 4] : 0);
      UElem u = lusztig_element(g, m);
      XiElem xu = frobenius_xi(g, u, ell);
      int a = static_cast<int>(rng() % n1), b = static_cast<int>(rng() % n1);
      QScalar s = C.pair(txi_t(C, a, b, ell), u);
      REQUIRE(in_local_ring(s, ell));
      CHECK(eval_at_root(s, ell) == classical_pair(C, C.t(a, b), xu));
    }
  }
  // products of coefficients (A1)
  QGroup g(RootDatum::make("A1"));
  CoordAlgebra C(g);
  int ell = 3;
  std::mt19937 rng(5);
  for (int t = 0; t < 8; ++t) {
    LusztigMono m;
    m.e[0] = static_cast<uint8_t>(ell * (rng() % 3));
    m.f[0] = static_cast<uint8_t>(ell * (rng() % 2));
    m.n[0] = static_cast<uint8_t>(ell * (rng() % 2));
    m.lam0 = g.rd().lambda0[rng() % g.rd().lambda0.size()];
    UElem u = lusztig_element(g, m);
    std::vector<std::pair<int, int>> word{{int(rng() % 2), int(rng() % 2)}, {int(rng() % 2), int(rng() % 2)}};
    QScalar s = C.pair(txi(C, word, ell), u);
    CElem p = C.mul(C.t(word[0].first, word[0].second), C.t(word[1].first, word[1].second));
    CHECK(eval_at_root(s, ell) == classical_pair(C, p, frobenius_xi(g, u, ell)));
  }
}

TEST_CASE("Upsilon pairs the DCP generators with U(k)") {
  QGroup g(RootDatum::make("A2"));
  for (int i = 0; i < 2; ++i) {
    int k = g.rd().simple_position(i);
    CHECK(upsilon_pair(g, dcp_gen(g, 'A', i), ClassMono{unit_exps(k), {}, {}}) == -1);
    CHECK(upsilon_pair(g, dcp_gen(g, 'B', i), ClassMono{{}, {}, unit_exps(k)}) == 1);
    CHECK(upsilon_pair(g, dcp_gen(g, 'A', i), ClassMono{{}, {}, unit_exps(k)}) == 0);
    for (int j = 0; j < 2; ++j) {
      NVec c{};
      c[j] = 1;
      // chi_lam differentiated along t_j gives lam(h_j)
      CHECK(upsilon_pair(g, g.K(g.rd().fundamental(i)), ClassMono{{}, c, {}}) == (i == j ? 1 : 0));
    }
    CHECK(upsilon_pair(g, g.K(g.rd().fundamental(i)), ClassMono{}) == 1);
  }
}

TEST_CASE("transpose of eta: images are central, act by the counit, and are dual to eta") {
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A1", 5}}) {
    QGroup g(RootDatum::make(type));
    Pairing P(g);
    auto zero = ulbar_zeta(g, g.scalar(0), ell), one = ulbar_zeta(g, g.one(), ell);
    for (char kind : {'A', 'B', 'K'}) {
      UElem y = dcp_gen(g, kind, 0);
      UElem ty = teta(g, y, ell);
      CHECK(centrality_check(g, ty, ell));
      CHECK(ubar_equal(g, ulbar_zeta(g, ty, ell), kind == 'K' ? one : zero));
      // sigma_zeta(teta(y), v) = sigma_1(y, eta(v)) on a window of V
      for (int a = 0; a <= ell + 1; a += (a == 1 ? ell - 1 : 1))
        for (int b = 0; b <= ell + 1; b += (b == 1 ? ell - 1 : 1))
          for (int c = 0; c <= ell; c += ell) {
            VElem v = vclassical_lift(g, ClassMono{unit_exps(0, a), NVec{static_cast<uint8_t>(c)}, unit_exps(0, b)});
            QScalar s = P.sigma(ty, v);
            REQUIRE(in_local_ring(s, ell));
            CycloScalar rhs(ell, 0);
            for (const auto& [m, cm] : eta(g, v, ell).t) rhs += cm * CycloScalar(ell, upsilon_pair(g, y, m));
            CHECK(eval_at_root(s, ell) == rhs);
          }
    }
  }
}

TEST_CASE("centrality in U_zeta") {
  QGroup g(RootDatum::make("A1"));
  int ell = 3;
  CHECK(centrality_check(g, teta_mono(g, Mono{{}, {}, unit_exps(0)}, ell), ell));
  CHECK(centrality_check(g, g.K(ell * g.rd().fundamental(0)), ell));
  CHECK_FALSE(centrality_check(g, g.E(0), ell));
  CHECK_FALSE(centrality_check(g, g.K(g.rd().fundamental(0)), ell));
  CHECK_FALSE(centrality_check(g, teta_mono(g, Mono{{}, {}, unit_exps(0)}, 2), ell));
}

TEST_CASE("centrality in D_zeta (A1, ell = 3)") {
  QGroup g(RootDatum::make("A1"));
  CoordAlgebra C(g);
  int ell = 3;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(centrality_check(C, C.dc(txi_t(C, a, b, ell)), ell));
      CHECK_FALSE(centrality_check(C, C.dc(C.t(a, b)), ell));
    }
  for (char kind : {'A', 'B', 'K'}) CHECK(centrality_check(C, C.du(teta(g, dcp_gen(g, kind, 0), ell)), ell));
}
