#include "qmanin/poisson_quantum.hpp"

namespace qmanin {

QScalar lift_cyclo(const CycloScalar& c) {
  Laurent p;
  p.c = c.coeffs();
  p.trim();
  return QScalar(p);
}

UElem lift_spec(const QGroup& g, const SpecU& x) {
  UElem out(&g);
  for (const auto& [m, c] : x.t) out += lift_cyclo(c) * dcp_element(g, m);
  return out;
}

SpecU spec_mul(const QGroup& g, const SpecU& x, const SpecU& y) {
  return specialize_U(g, g.mul(lift_spec(g, x), lift_spec(g, y)), std::max(x.ell, y.ell));
}

SpecU spec_add(const SpecU& x, const SpecU& y, const CycloScalar& s) {
  SpecU out = x;
  out.ell = std::max(x.ell, y.ell);
  for (const auto& [m, c] : y.t) {
    auto [it, fresh] = out.t.try_emplace(m, s * c);
    if (!fresh) {
      it->second += s * c;
      if (it->second.is_zero()) out.t.erase(it);
    }
  }
  return out;
}

SpecU qc_bracket(const QGroup& g, const UElem& x, const UElem& y, int ell) {
  specialize_U(g, x, ell);
  specialize_U(g, y, ell);
  SpecU out;
  out.ell = ell;
  QScalar h = hbar(ell, g.d());
  for (const auto& [m, c] : dcp_coordinates(g, g.commutator(x, y))) {
    QScalar s = c / h;
    if (!in_local_ring(s, ell))
      throw NonCentralityError("commutator coefficient " + c.str() + " of " + g.mono_str(m) +
                               " is not divisible by hbar; the arguments are not central at zeta");
    CycloScalar v = eval_at_root(s, ell);
    if (!v.is_zero()) out.t.emplace(m, v);
  }
  return out;
}

SpecTable specialize_d(const CoordAlgebra& C, const DElem& x, int ell) {
  return specialize_table(C.dtable(x), ell);
}

SpecTable qc_bracket(const CoordAlgebra& C, const DElem& x, const DElem& y, int ell) {
  specialize_d(C, x, ell);
  specialize_d(C, y, ell);
  try {
    return specialize_table(C.dtable(C.dcommutator(x, y)), ell, hbar(ell, C.group().d()).inverse());
  } catch (const NotInForm& e) {
    throw NonCentralityError(std::string("commutator is not divisible by hbar: ") + e.what());
  }
}

SpecTable bracket_via_decomposition(const CoordAlgebra& C, int a, int b, const UElem& Phi, int ell) {
  const QGroup& g = C.group();
  QScalar h = hbar(ell, g.d());
  CElem H = txi_t(C, a, b, ell);
  DElem R(&g);

  bool torus = true;
  for (const auto& [m, c] : Phi.t)
    if (total(m.e) + total(m.f)) torus = false;
  if (torus) {
    // (iota(K_mu) - 1) acts on t_ab^ell through its weight ell eps_b
    Weight nu = ell * C.module(1).weight(b);
    for (const auto& [m, c] : Phi.t) {
      QScalar s = -(g.qpow(g.rd().bilinear(m.k, nu)) - QScalar(1)) / h;
      R += (c * s) * C.d(H, g.mono(Mono{{}, m.k, {}}));
    }
    return specialize_d(C, R, ell);
  }

  // T = Phi (x) 1 - sum Phi_(1) (x) Phi_(0): first leg PBW monomial, second leg in Lusztig coordinates
  std::map<std::pair<Mono, LusztigMono>, QScalar> T;
  for (const auto& [m, c] : Phi.t)
    for (const auto& [lm, lc] : lusztig_coordinates(g, g.one())) lc_add(T, std::make_pair(m, lm), c * lc);
  for (const auto& [pr, c] : g.coproduct(Phi).t)
    for (const auto& [lm, lc] : lusztig_coordinates(g, g.mono(pr.first))) lc_add(T, std::make_pair(pr.second, lm), -(c * lc));

  for (const auto& [key, c] : T) {
    const auto& [m, lm] = key;
    QScalar psi = c / h;
    if (!in_local_ring(psi * dcp_coordinates(g, g.mono(m)).at(m), ell))
      throw NotInForm("term " + g.mono_str(m) + " (x) Lusztig monomial with coefficient " + c.str() +
                      " is neither in hbar U (x) U^L nor in I (x) J");
    XiElem x = frobenius_xi(g, lusztig_element(g, lm), ell);
    if (x.is_zero()) continue;
    std::vector<CycloScalar> left = classical_left_vector(C, x, b);
    for (int cc = 0; cc < C.n1(); ++cc)
      if (!left[cc].is_zero()) R += (lift_cyclo(left[cc]) * psi) * C.d(txi_t(C, a, cc, ell), g.mono(m));
  }
  return specialize_d(C, R, ell);
}

}  // namespace qmanin
