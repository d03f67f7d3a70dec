#include <random>

#include "doctest.h"
#include "qmanin/poisson_quantum.hpp"

using namespace qmanin;

namespace {

// A_b^ell, B_b^ell for every positive root and K_{ell w_i}
std::vector<UElem> central_generators(const QGroup& g, int ell) {
  std::vector<UElem> out;
  for (int k = 0; k < g.N(); ++k) {
    out.push_back(teta_mono(g, Mono{{}, {}, unit_exps(k)}, ell));
    out.push_back(teta_mono(g, Mono{unit_exps(k), {}, {}}, ell));
  }
  for (int i = 0; i < g.rank(); ++i) out.push_back(g.K(ell * g.rd().fundamental(i)));
  return out;
}

SpecU neg(const SpecU& x) { return spec_add(SpecU{x.ell, {}}, x, CycloScalar(x.ell, -1)); }

}  // namespace

TEST_CASE("bracket of K_{ell lam} with A_i^ell") {
  QGroup g(RootDatum::make("A1"));
  for (int ell : {3, 5}) {
    Weight lam = g.rd().fundamental(0);
    UElem K = g.K(ell * lam), A = teta_mono(g, Mono{{}, {}, unit_exps(0)}, ell);
    SpecU br = qc_bracket(g, K, A, ell);
    SpecU want = specialize_U(g, g.mul(A, K), ell);
    for (auto& [m, c] : want.t) c = c * CycloScalar(ell, Rat(1, 2));  // (lam, alpha)/2 = 1/2
    CHECK(br == want);
    CHECK(qc_bracket(g, A, A, ell).is_zero());
  }
}

TEST_CASE("non-central arguments are rejected") {
  QGroup g(RootDatum::make("A1"));
  CHECK_THROWS_AS(qc_bracket(g, g.E(0), g.F(0), 3), NonCentralityError);
}

TEST_CASE("Poisson axioms on central generators") {
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A1", 5}, std::pair{"A2", 5}}) {
    QGroup g(RootDatum::make(type));
    auto gens = central_generators(g, ell);
    size_t n = gens.size();
    std::map<std::pair<size_t, size_t>, SpecU> br;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) br[{i, j}] = qc_bracket(g, gens[i], gens[j], ell);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) CHECK(br[{i, j}] == neg(br[{j, i}]));
    std::vector<SpecU> sp;
    for (const auto& x : gens) sp.push_back(specialize_U(g, x, ell));
    // Leibniz {x, yz} = {x, y} z + y {x, z} and Jacobi on triples
    std::mt19937 rng(3);
    int trials = g.rank() == 1 ? 12 : 6;
    for (int t = 0; t < trials; ++t) {
      size_t i = rng() % n, j = rng() % n, k = rng() % n;
      SpecU lhs = qc_bracket(g, gens[i], g.mul(gens[j], gens[k]), ell);
      SpecU rhs = spec_add(spec_mul(g, br[{i, j}], sp[k]), spec_mul(g, sp[j], br[{i, k}]));
      CHECK(lhs == rhs);
      SpecU jac = qc_bracket(g, gens[i], lift_spec(g, br[{j, k}]), ell);
      jac = spec_add(jac, qc_bracket(g, gens[j], lift_spec(g, br[{k, i}]), ell));
      jac = spec_add(jac, qc_bracket(g, gens[k], lift_spec(g, br[{i, j}]), ell));
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("brackets do not depend on the lifts") {
  std::mt19937 rng(8);
  for (auto [type, ell] : {std::pair{"A1", 3}, std::pair{"A2", 5}}) {
    QGroup g(RootDatum::make(type));
    auto gens = central_generators(g, ell);
    QScalar h = hbar(ell, g.d());
    for (int t = 0; t < 4; ++t) {
      size_t i = rng() % gens.size(), j = rng() % gens.size();
      Mono m;
      for (int k = 0; k < g.N(); ++k) m.e[k] = static_cast<uint8_t>(rng() % 2);
      m.k[0] = static_cast<int>(rng() % 3) - 1;
      UElem x2 = gens[i] + h * dcp_element(g, m);
      CHECK(qc_bracket(g, x2, gens[j], ell) == qc_bracket(g, gens[i], gens[j], ell));
    }
  }
}

TEST_CASE("Heisenberg brackets: qc_bracket against the coproduct decomposition (A1, ell = 3)") {
  QGroup g(RootDatum::make("A1"));
  CoordAlgebra C(g);
  int ell = 3;
  QScalar q = g.qi(0), s = (q - q.inverse()).pow(ell);
  Weight lam = g.rd().fundamental(0);
  std::vector<UElem> phis{g.K(ell * lam), s * g.mul(g.pow(g.E(0), ell), g.Ki(0, -ell)), s * g.pow(g.F(0), ell)};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      DElem H = C.dc(txi_t(C, a, b, ell));
      for (const auto& phi : phis) {
        SpecTable lhs = qc_bracket(C, H, C.du(phi), ell);
        CHECK(lhs == bracket_via_decomposition(C, a, b, phi, ell));
      }
      // {t_ab^ell, K_{ell lam}} = -(1/2)(lam, eps_b) t_ab^ell (x) K_{ell lam}
      Rat c = -g.rd().bilinear(lam, C.module(1).weight(b)) / 2;
      SpecTable want = specialize_d(C, QScalar(c) * C.d(txi_t(C, a, b, ell), g.K(ell * lam)), ell);
      CHECK(qc_bracket(C, H, C.du(phis[0]), ell) == want);
    }
  CHECK(bracket_via_decomposition(C, 0, 1, g.one(), ell).empty());
}
