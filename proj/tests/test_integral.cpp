#include <random>

#include "doctest.h"
#include "qmanin/integral.hpp"
#include "qmanin/pairing.hpp"

using namespace qmanin;

namespace {

Mono random_mono(const QGroup& g, std::mt19937& rng, int maxe) {
  std::uniform_int_distribution<int> ex(0, maxe), kw(-2, 2);
  Mono m;
  for (int k = 0; k < g.N(); ++k) {
    m.f[k] = static_cast<uint8_t>(ex(rng) % 2 ? 0 : ex(rng));
    m.e[k] = static_cast<uint8_t>(ex(rng) % 2 ? 0 : ex(rng));
  }
  for (int i = 0; i < g.rank(); ++i) m.k[i] = kw(rng);
  return m;
}

UElem from_lusztig(const QGroup& g, const LusztigCoords& c) {
  UElem out(&g);
  for (const auto& [m, s] : c) out += s * lusztig_element(g, m);
  return out;
}

}  // namespace

TEST_CASE("torus coordinates reconstruct K_lam and are integral") {
  for (const char* type : {"A1", "A2"}) {
    QGroup g(RootDatum::make(type));
    int r = g.rank();
    for (int a = -4; a <= 4; ++a)
      for (int b = (r > 1 ? -3 : 0); b <= (r > 1 ? 3 : 0); ++b) {
        Weight lam{a, b, 0, 0};
        const auto& tc = torus_coordinates(g, lam);
        CHECK(coords_in_A(tc));
        UElem back(&g);
        for (const auto& [key, c] : tc) back += c * lusztig_element(g, LusztigMono{{}, key.first, key.second, {}});
        CHECK(back == g.K(lam));
      }
    for (const auto& l0 : g.rd().lambda0) {
      auto lc = lusztig_coordinates(g, g.K(l0));
      REQUIRE(lc.size() == 1);
      CHECK(lc.begin()->first.lam0 == l0);
      CHECK(lc.begin()->second == QScalar(1));
    }
  }
}

TEST_CASE("Lusztig coordinates of basic elements") {
  QGroup g(RootDatum::make("A2"));
  QScalar q = g.qi(0);
  for (int ell : {3, 5}) {
    auto lc = lusztig_coordinates(g, g.pow(g.E(0), ell));
    REQUIRE(lc.size() == 1);
    CHECK(lc.begin()->first.e == unit_exps(g.rd().simple_position(0), ell));
    CHECK(lc.begin()->second == QScalar(qfact_v(ell, g.ei(0))));
  }
  auto lc = lusztig_coordinates(g, (q - q.inverse()) * g.E(1));
  REQUIRE(lc.size() == 1);
  CHECK(lc.begin()->second == q - q.inverse());
  CHECK(coords_in_A(lc));
  CHECK_FALSE(coords_in_A(lusztig_coordinates(g, (q - q.inverse()).inverse() * g.E(1))));
}

TEST_CASE("U^L_A is closed under products") {
  std::mt19937 rng(11);
  for (const char* type : {"A1", "A2"}) {
    QGroup g(RootDatum::make(type));
    std::vector<LusztigMono> basis;
    for (int t = 0; t < 8; ++t) {
      Mono m = random_mono(g, rng, 2);
      LusztigMono lm{m.f, g.rd().lambda0[rng() % g.rd().lambda0.size()], {}, m.e};
      for (int i = 0; i < g.rank(); ++i) lm.n[i] = static_cast<uint8_t>(rng() % 3);
      basis.push_back(lm);
    }
    for (size_t a = 0; a + 1 < basis.size(); a += 2) {
      UElem x = lusztig_element(g, basis[a]), y = lusztig_element(g, basis[a + 1]);
      auto lc = lusztig_coordinates(g, g.mul(x, y));
      CHECK(coords_in_A(lc));
      CHECK(from_lusztig(g, lc) == g.mul(x, y));
    }
  }
}

TEST_CASE("DCP coordinates and specialization") {
  QGroup g(RootDatum::make("A1"));
  QScalar q = g.qi(0);
  UElem A = (q - q.inverse()) * g.E(0);
  auto dc = dcp_coordinates(g, A);
  REQUIRE(dc.size() == 1);
  CHECK(dc.begin()->second == QScalar(1));
  CHECK(dcp_coordinates(g, g.E(0)).begin()->second == (q - q.inverse()).inverse());
  CHECK_FALSE(coords_in_A(dcp_coordinates(g, g.E(0))));
  CHECK(coords_in_A(dcp_coordinates(g, g.K(g.rd().fundamental(0)))));

  SpecU sa = specialize_U(g, A, 3);
  REQUIRE(sa.t.size() == 1);
  CHECK(sa.t.begin()->second == CycloScalar(3, 1));
  SpecU sk = specialize_U(g, g.K(g.rd().fundamental(0)), 3);
  CHECK(sk.t.begin()->first.k == g.rd().fundamental(0));

  // [E, F] = (K - K^-1)/(q - q^-1): the coefficient has a pole at q = 1 only
  UElem c = g.commutator(g.E(0), g.F(0));
  SpecU sc = specialize_U(g, c, 3);
  CHECK(sc.t.size() == 2);
  CycloScalar qz = eval_at_root(q, 3);
  CHECK(sc.t.at(Mono{{}, g.rd().alpha(0), {}}) == (qz - qz.inverse()).inverse());
  CHECK_THROWS_AS(specialize_U(g, c, 1), NotInForm);
}

TEST_CASE("DCP products stay integral") {
  std::mt19937 rng(5);
  for (const char* type : {"A1", "A2"}) {
    QGroup g(RootDatum::make(type));
    for (int t = 0; t < 6; ++t) {
      UElem x = dcp_element(g, random_mono(g, rng, 2)), y = dcp_element(g, random_mono(g, rng, 2));
      CHECK(coords_in_A(dcp_coordinates(g, g.mul(x, y))));
    }
  }
}

TEST_CASE("Ubar^L_1 is U(g)") {
  QGroup g(RootDatum::make("A1"));
  int k0 = g.rd().simple_position(0);
  ClassElem e = ulbar1(g, g.E(0));
  CHECK(e.t.size() == 1);
  CHECK(e.t.begin()->first == ClassMono{{}, {}, unit_exps(k0)});
  ClassElem h = ulbar1(g, k_binomial(g, 0, 1));
  REQUIRE(h.t.size() == 1);
  CHECK(h.t.begin()->first.c[0] == 1);
  CHECK(h.t.begin()->second == 1);
  // K_lam goes to 1
  ClassElem k = ulbar1(g, g.K(g.rd().fundamental(0)) - g.one());
  CHECK(k.is_zero());
  // [e, f] = h in U(sl2)
  ClassElem f = ulbar1(g, g.F(0));
  ClassElem ef = classical_mul(g, e, f), fe = classical_mul(g, f, e);
  for (const auto& [m, c] : fe.t) ef.add(m, -c);
  CHECK(ef == h);
  // binom(h,1)^2 = 2 binom(h,2) + binom(h,1)
  ClassElem h2 = classical_mul(g, h, h);
  ClassElem want = h;
  want.add(ClassMono{{}, {2}, {}}, 2);
  CHECK(h2 == want);
}

TEST_CASE("iota_1 kills positive-degree DCP monomials") {
  std::mt19937 rng(20);
  for (const char* type : {"A1", "A2"}) {
    QGroup g(RootDatum::make(type));
    int tested = 0;
    while (tested < 20) {
      Mono m = random_mono(g, rng, 2);
      if (total(m.e) + total(m.f) == 0) continue;
      ++tested;
      CHECK(ulbar1(g, dcp_element(g, m)).is_zero());
    }
    ClassElem one = ulbar1(g, dcp_element(g, Mono{{}, g.rd().fundamental(0), {}}));
    CHECK(one.t.size() == 1);
    CHECK(one.t.begin()->first == ClassMono{});
  }
}

TEST_CASE("Vbar_1 is U(k)") {
  QGroup g(RootDatum::make("A2"));
  ClassElem x = vbar1(g, g.X(1));
  CHECK(x.t.size() == 1);
  CHECK(x.t.begin()->first == ClassMono{{}, {}, unit_exps(g.rd().simple_position(1))});
  for (int m = 1; m <= 3; ++m) {
    VElem zb(&g);
    for (const auto& [mk, c] : k_binomial(g, 0, m).t) zb.add(VMono{{}, mk.k, {}}, c);
    ClassElem b = vbar1(g, zb);
    REQUIRE(b.t.size() == 1);
    CHECK(b.t.begin()->first.c[0] == m);
  }
  CHECK(vbar1(g, g.Z(g.rd().fundamental(1)) - g.vone()).is_zero());
  // U(k) is commutative on its torus part and [x_i, t_j] is a scalar multiple of x_i
  ClassElem t0 = vbar1(g, [&] {
    VElem zb(&g);
    for (const auto& [mk, c] : k_binomial(g, 0, 1).t) zb.add(VMono{{}, mk.k, {}}, c);
    return zb;
  }());
  ClassElem xt = vclassical_mul(g, x, t0), tx = vclassical_mul(g, t0, x);
  ClassElem d = xt;
  for (const auto& [m, c] : tx.t) d.add(m, -c);
  CHECK(d.t.size() <= 1);
}

TEST_CASE("torus ideal at a root of unity") {
  QGroup g(RootDatum::make("A1"));
  int ell = 3;
  Weight w = g.rd().fundamental(0);
  UbarZeta a = ulbar_zeta(g, g.K(ell * w), ell), one = ulbar_zeta(g, g.one(), ell);
  CHECK(ubar_equal(g, a, one));
  CHECK_FALSE(ubar_equal(g, ulbar_zeta(g, g.K(w), ell), one));
  CHECK_FALSE(ubar_equal(g, ulbar_zeta(g, k_binomial(g, 0, ell), ell), ulbar_zeta(g, g.scalar(0), ell)));
}

TEST_CASE("Gram matrix of sigma is nondegenerate at z = 1 and z = zeta_3 (A1)") {
  QGroup g(RootDatum::make("A1"));
  Pairing p(g);
  int k0 = g.rd().simple_position(0);
  Weight w = g.rd().fundamental(0);
  std::vector<UElem> us;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int j = -1; j <= 1; ++j) us.push_back(dcp_element(g, Mono{unit_exps(k0, a), j * w, unit_exps(k0, b)}));
  for (int ell : {1, 3}) {
    std::vector<VElem> vs;
    std::vector<Weight> l0s = ell == 1 ? std::vector<Weight>{Weight{}} : g.rd().lambda0;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b)
        for (int c = 0; c <= 2; ++c)
          for (const auto& l0 : l0s) {
            VElem v = vclassical_lift(g, ClassMono{unit_exps(k0, a), NVec{static_cast<uint8_t>(c)}, unit_exps(k0, b)});
            vs.push_back(g.vmul(g.Z(l0), v));
          }
    std::vector<std::vector<CycloScalar>> rows;
    for (const auto& u : us) {
      std::vector<CycloScalar> row;
      for (const auto& v : vs) {
        QScalar s = p.sigma(u, v);
        REQUIRE(in_local_ring(s, ell));
        row.push_back(eval_at_root(s, ell));
      }
      rows.push_back(row);
    }
    CHECK(matrix_rank(rows, static_cast<int>(vs.size())) == static_cast<int>(us.size()));
  }
}

TEST_CASE("DCP generators commute at z = 1") {
  QGroup g(RootDatum::make("A2"));
  std::vector<UElem> gens;
  for (int i = 0; i < 2; ++i) {
    int k = g.rd().simple_position(i);
    gens.push_back(dcp_element(g, Mono{{}, {}, unit_exps(k)}));
    gens.push_back(dcp_element(g, Mono{unit_exps(k), {}, {}}));
    gens.push_back(g.K(g.rd().fundamental(i)));
  }
  for (const auto& a : gens)
    for (const auto& b : gens) CHECK(specialize_U(g, g.commutator(a, b), 1).is_zero());
}
