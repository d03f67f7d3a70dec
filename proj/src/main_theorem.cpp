#include "qmanin/main_theorem.hpp"

#include <random>

namespace qmanin {

using namespace classical;

std::vector<GeneratorFamily> central_generators(const QGroup& g, int ell) {
  std::vector<GeneratorFamily> out;
  for (int i = 0; i < g.rank(); ++i) {
    QScalar s = QScalar(1);
    QScalar d = g.qi(i) - g.qi(i).inverse();
    for (int j = 0; j < ell; ++j) s *= d;
    out.push_back({"K", i, g.K(ell * g.rd().fundamental(i))});
    out.push_back({"E", i, s * g.mul(g.pow(g.E(i), ell), g.Ki(i, -ell))});
    out.push_back({"F", i, s * g.pow(g.F(i), ell)});
  }
  return out;
}

FrobeniusPreimage frobenius_preimage(const QGroup& g, const UElem& Phi, int ell) {
  SpecU sp = specialize_U(g, Phi, ell);
  if (sp.t.size() != 1) throw DomainError("expected a single DCP monomial at zeta");
  const auto& [m, c] = *sp.t.begin();
  FrobeniusPreimage out{c, Mono{}};
  for (int k = 0; k < kMaxRoots; ++k) {
    if (m.f[k] % ell || m.e[k] % ell) throw DomainError("DCP exponent not divisible by ell");
    out.u.f[k] = static_cast<uint8_t>(m.f[k] / ell);
    out.u.e[k] = static_cast<uint8_t>(m.e[k] / ell);
  }
  for (int i = 0; i < kMaxRank; ++i) {
    if (m.k[i] % ell) throw DomainError("torus weight not divisible by ell");
    out.u.k[i] = m.k[i] / ell;
  }
  return out;
}

namespace {

struct KBasis {
  std::vector<Mono> u;  // Upsilon^-1 of each basis function, as a DCP monomial
  std::vector<MLFun> f;
};

KBasis fitting_basis(const QGroup& g) {
  KBasis out;
  int r = g.rank();
  int total = 1;
  for (int i = 0; i < r; ++i) total *= 5;
  for (int code = 0; code < total; ++code) {
    Weight mu{};
    int c = code;
    for (int i = 0; i < r; ++i) mu[i] = c % 5 - 2, c /= 5;
    std::vector<Mono> monos{Mono{{}, mu, {}}};
    for (int j = 0; j < r; ++j) {
      int k = g.rd().simple_position(j);
      monos.push_back(Mono{{}, mu, unit_exps(k)});
      monos.push_back(Mono{unit_exps(k), mu + g.rd().alpha(j), {}});
    }
    for (const auto& m : monos) {
      out.u.push_back(m);
      out.f.push_back(kfun_to_ml(g, upsilon_image(g, m)));
    }
  }
  return out;
}

}  // namespace

SpecTable classical_side(const CoordAlgebra& C, const ManinTriple& tr, int a, int b, const Mono& u, int ell,
                         uint32_t seed) {
  const QGroup& g = C.group();
  int n = tr.n(), r = g.rank(), dim = tr.dim();
  std::mt19937 rng(seed);
  MLFun h = coord_t(a, b), phi = kfun_to_ml(g, upsilon_image(g, u));
  KBasis basis = fitting_basis(g);
  int per_mu = 1 + 2 * r;

  // The bracket is sum_r (L_{X_r} t_ab)(g) (R_{Y_r} phi)(k). t_ab only sees g, so the first factor
  // is linear in the entries of g; fit that once.
  int ng = n * n + 3;
  std::vector<std::vector<Rat>> gcols(n * n, std::vector<Rat>(ng));
  std::vector<std::vector<Rat>> grads(dim, std::vector<Rat>(ng));
  MLPoint<Rat> base{Mat<Rat>::identity(n), Mat<Rat>::identity(n), Mat<Rat>::identity(n)};
  for (int s = 0; s < ng; ++s) {
    MLPoint<Rat> p = base;
    p.g = random_sl(n, rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gcols[i * n + j][s] = p.g(i, j);
    auto lg = L_gradient(tr, h, p);
    for (int k = 0; k < dim; ++k) grads[k][s] = lg[k];
  }
  // coef[k][c]: coefficient of t_ac in L_{X_k} t_ab
  std::vector<std::vector<Rat>> coef(dim, std::vector<Rat>(n));
  for (int k = 0; k < dim; ++k) {
    auto sol = solve_columns(gcols, grads[k]);
    if (!sol) throw DomainError("bracket is not linear in the G-coordinates");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != a && (*sol)[i * n + j] != 0) throw DomainError("bracket involves t_ic with i != a");
    for (int c = 0; c < n; ++c) coef[k][c] = (*sol)[a * n + c];
  }

  // K is sampled as (X t, Y t^-1) with X, Y unipotent. Then a_j, b_j depend on (X, Y) only and
  // chi_mu on t only, so the fit splits: characters over a torus grid, then {1, a_j, b_j}.
  static const Rat grid[] = {Rat(1), Rat(2), Rat(3), Rat(1, 2), Rat(1, 3), Rat(5)};
  const int gsz = 6;
  int ntorus = 1;
  for (int i = 0; i < r; ++i) ntorus *= gsz;
  int nmu = static_cast<int>(basis.f.size()) / per_mu;
  auto mu_of = [&](int m) {
    Weight mu{};
    for (int i = 0; i < r; ++i) mu[i] = m % 5 - 2, m /= 5;
    return mu;
  };
  // torus points: prefix products t_1...t_j run over the grid
  std::vector<Mat<Rat>> tors;
  std::vector<std::vector<Rat>> chars(nmu, std::vector<Rat>(ntorus));
  for (int code = 0; code < ntorus; ++code) {
    std::vector<Rat> pref(r);
    int c = code;
    for (int i = 0; i < r; ++i) pref[i] = grid[c % gsz], c /= gsz;
    Mat<Rat> t = Mat<Rat>::identity(n);
    Rat prev(1);
    for (int i = 0; i < r; ++i) t(i, i) = pref[i] / prev, prev = pref[i];
    t(n - 1, n - 1) = 1 / prev;
    tors.push_back(t);
    for (int m = 0; m < nmu; ++m) {
      Weight mu = mu_of(m);
      Rat v(1);
      for (int i = 0; i < r; ++i)
        for (int e = 0; e < std::abs(mu[i]); ++e) v = mu[i] > 0 ? Rat(v * pref[i]) : Rat(v / pref[i]);
      chars[m][code] = v;
    }
  }

  int zero_mu = 0;
  for (int i = 0, p5 = 1; i < r; ++i, p5 *= 5) zero_mu += 2 * p5;
  int nuni = per_mu + 3;
  // cmu[c][m][s]: coefficient of chi_mu in psi_c at unipotent sample s; ab[s][j]: value of
  // the j-th function of {1, a_j, b_j}
  std::vector<std::vector<std::vector<Rat>>> cmu(n, std::vector<std::vector<Rat>>(nmu, std::vector<Rat>(nuni)));
  std::vector<std::vector<Rat>> ab(per_mu, std::vector<Rat>(nuni));
  for (int s = 0; s < nuni; ++s) {
    Mat<Rat> X = random_unipotent(n, true, rng), Y = random_unipotent(n, false, rng);
    MLPoint<Rat> at_one{base.g, X, Y};
    for (int j = 0; j < per_mu; ++j) ab[j][s] = eval(basis.f[zero_mu * per_mu + j], at_one);
    std::vector<std::vector<Rat>> psi(n, std::vector<Rat>(ntorus));
    for (int tp = 0; tp < ntorus; ++tp) {
      MLPoint<Rat> p{base.g, X * tors[tp], Y * inverse(tors[tp])};
      auto rg = R_gradient(tr, phi, p);
      for (int c = 0; c < n; ++c) {
        Rat v(0);
        for (int k = 0; k < dim; ++k)
          if (rg[k] != 0 && coef[k][c] != 0) v += coef[k][c] * rg[k];
        psi[c][tp] = v;
      }
    }
    for (int c = 0; c < n; ++c) {
      auto sol = solve_columns(chars, psi[c]);
      if (!sol) throw DomainError("torus dependence of the bracket lies outside the character box");
      for (int m = 0; m < nmu; ++m) cmu[c][m][s] = (*sol)[m];
    }
  }
  {
    std::vector<std::vector<Rat>> rows(ab);
    if (matrix_rank(rows, nuni) != per_mu) throw DomainError("fitting basis is degenerate on the sample");
  }

  DElem out(&g);
  for (int c = 0; c < n; ++c) {
    UElem ue(&g);
    for (int m = 0; m < nmu; ++m) {
      bool zero = true;
      for (const auto& v : cmu[c][m]) zero = zero && v == 0;
      if (zero) continue;
      auto sol = solve_columns(ab, cmu[c][m]);
      if (!sol) throw DomainError("K-part of the bracket lies outside the fitting basis");
      for (int j = 0; j < per_mu; ++j)
        if ((*sol)[j] != 0) ue += QScalar((*sol)[j]) * teta_mono(g, basis.u[m * per_mu + j], ell);
    }
    if (!ue.is_zero()) out += C.d(txi_t(C, a, c, ell), ue);
  }
  return specialize_table(C.dtable(out), ell);
}

std::vector<MainTheoremCheck> main_theorem_checks(const CoordAlgebra& C, int ell, uint32_t seed) {
  const QGroup& g = C.group();
  ManinTriple tr(C.n1());
  std::vector<MainTheoremCheck> out;
  for (const auto& fam : central_generators(g, ell)) {
    FrobeniusPreimage pre = frobenius_preimage(g, fam.Phi, ell);
    for (int a = 0; a < C.n1(); ++a)
      for (int b = 0; b < C.n1(); ++b) {
        SpecTable lhs = qc_bracket(C, C.dc(txi_t(C, a, b, ell)), C.du(fam.Phi), ell);
        SpecTable rhs;
        for (const auto& [k, v] : classical_side(C, tr, a, b, pre.u, ell, seed + 97 * a + 13 * b)) {
          CycloScalar s = v * pre.scale;
          if (!s.is_zero()) rhs.emplace(k, s);
        }
        MainTheoremCheck chk{a, b, fam.name, fam.index, lhs == rhs, lhs.size(), ""};
        chk.detail = std::to_string(lhs.size()) + " table entries, scale " + pre.scale.str();
        out.push_back(chk);
      }
  }
  return out;
}

}  // namespace qmanin
