#include "qmanin/suites.hpp"

#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "qmanin/main_theorem.hpp"
#include "qmanin/pairing.hpp"

namespace qmanin {

namespace cl = classical;
using json = nlohmann::json;

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json SuiteReport::to_json() const {
  json out{{"suite", suite}, {"parameters", parameters}, {"status", pass() ? "pass" : "fail"}};
  out["checks"] = json::array();
  for (const auto& c : checks)
    out["checks"].push_back(
        {{"name", c.name}, {"criterion", c.criterion}, {"status", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
  return out;
}

std::string SuiteReport::to_markdown() const {
  std::ostringstream os;
  os << "# qmanin verify " << suite << "\n\n";
  os << "parameters: `" << parameters.dump() << "`\n\n";
  os << "overall: **" << (pass() ? "PASS" : "FAIL") << "**\n\n";
  os << "| criterion | check | status |\n|---|---|---|\n";
  for (const auto& c : checks) os << "| " << c.criterion << " | " << c.name << " | " << (c.pass ? "pass" : "FAIL") << " |\n";
  bool any = false;
  for (const auto& c : checks)
    if (!c.pass) {
      if (!any) os << "\n## Failure witnesses\n\n";
      any = true;
      os << "- " << c.name << ": `" << c.witness.dump() << "`\n";
    }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"pbw",          "pairing",   "hopf",       "center",
                                              "frobenius",    "main-theorem", "classical", "hamiltonian"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> m{
      {"pbw", {1}},        {"pairing", {2}},          {"hopf", {3}},         {"frobenius", {4, 10}},
      {"center", {5, 6}},  {"main-theorem", {7}},     {"classical", {8, 9}}, {"hamiltonian", {9}}};
  auto it = m.find(suite);
  if (it == m.end()) throw ConfigError("suite", "unknown suite '" + suite + "'");
  return it->second;
}

int default_ell(const std::string& type) {
  RootDatum rd = RootDatum::make(type);
  for (int ell = 3;; ell += 2)
    if (std::gcd(ell, rd.lattice_index) == 1) return ell;
}

namespace {

std::string mat_str(const cl::Mat<Rat>& m) {
  std::string s = "[";
  for (int i = 0; i < m.n; ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < m.n; ++j) s += (j ? " " : "") + m(i, j).get_str();
  }
  return s + "]";
}

json point_json(const cl::MLPoint<Rat>& p) { return {{"g", mat_str(p.g)}, {"k1", mat_str(p.k1)}, {"k2", mat_str(p.k2)}}; }
json pair_json(const cl::Vec& p) { return {{"g1", mat_str(p.a)}, {"g2", mat_str(p.b)}}; }

std::string exps_str(const Exps& e, int N) {
  std::string s = "(";
  for (int k = 0; k < N; ++k) s += (k ? "," : "") + std::to_string(e[k]);
  return s + ")";
}

std::string gamma_str(const std::vector<int>& g) {
  std::string s = "(";
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

CheckResult make(std::string name, int criterion, bool pass, json witness = json::object()) {
  return {std::move(name), criterion, pass, std::move(witness)};
}

// PBW monomials against the Serre quotient and the Kostant partition function.
std::vector<CheckResult> crit_pbw(const QGroup& g) {
  std::vector<CheckResult> out;
  const RootDatum& rd = g.rd();
  for (int h = 1; h <= 6; ++h) {
    json rows = json::array();
    bool ok = true;
    for (const auto& gamma : root_lattice_of_height(rd.rank, h)) {
      const auto& sp = g.serre().space(gamma);
      long dim = static_cast<long>(sp.words.size()) - sp.ech->rank();
      long kp = kostant_partition(rd, gamma);
      long np = static_cast<long>(PBWHalf::monomials_of(rd, gamma).size());
      bool eq = dim == kp && kp == np;
      ok = ok && eq;
      if (!eq || h <= 2) rows.push_back({{"gamma", gamma_str(gamma)}, {"dim", dim}, {"kostant", kp}, {"pbw", np}});
    }
    out.push_back(make(rd.label + " dim U+_gamma = Kostant count, height " + std::to_string(h), 1, ok,
                       {{"entries", rows}}));
  }
  return out;
}

// tau_closed against tau_recursive on PBW pairs.
std::vector<CheckResult> crit_pairing(const QGroup& g, uint32_t seed) {
  std::vector<CheckResult> out;
  const RootDatum& rd = g.rd();
  Pairing p(g);
  std::mt19937 rng(seed);
  for (int h = 1; h <= 4; ++h) {
    std::vector<Exps> ms;
    for (const auto& gamma : root_lattice_of_height(rd.rank, h))
      for (const auto& m : PBWHalf::monomials_of(rd, gamma)) ms.push_back(m);
    bool ok = true;
    int pairs = 0, nonzero = 0;
    json bad = json::array();
    for (const auto& e : ms)
      for (const auto& f : ms) {
        // a torus factor on each side exercises the K-part of the closed form
        Weight l{}, m{};
        l[rng() % rd.rank] = static_cast<int>(rng() % 3) - 1;
        m[rng() % rd.rank] = static_cast<int>(rng() % 3) - 1;
        UElem x = g.mono(Mono{{}, l, e}), y = g.mono(Mono{f, m, {}});
        QScalar a = p.tau_closed(x, y), b = p.tau_recursive(x, y);
        ++pairs;
        nonzero += !a.is_zero();
        if (a != b) {
          ok = false;
          if (bad.size() < 5)
            bad.push_back({{"E", exps_str(e, rd.N())}, {"F", exps_str(f, rd.N())}, {"closed", a.str()}, {"recursive", b.str()}});
        }
      }
    out.push_back(make(rd.label + " tau_closed = tau_recursive, height " + std::to_string(h), 2, ok,
                       {{"pairs", pairs}, {"nonzero", nonzero}, {"mismatches", bad}}));
  }
  return out;
}

using Mono3 = std::tuple<Mono, Mono, Mono>;
using UTensor3 = std::map<Mono3, QScalar>;

UTensor3 coassoc_left(const QGroup& g, const UElem& x) {
  UTensor3 out;
  for (const auto& [p, c] : g.coproduct(x).t)
    for (const auto& [q, d] : g.coproduct(g.mono(p.first)).t) lc_add(out, Mono3{q.first, q.second, p.second}, c * d);
  return out;
}

UTensor3 coassoc_right(const QGroup& g, const UElem& x) {
  UTensor3 out;
  for (const auto& [p, c] : g.coproduct(x).t)
    for (const auto& [q, d] : g.coproduct(g.mono(p.second)).t) lc_add(out, Mono3{p.first, q.first, q.second}, c * d);
  return out;
}

UElem serre_expr(const QGroup& g, const UElem& xi, const UElem& xj, int i, int j) {
  int a = g.rd().cartan[i][j];
  int m = 1 - a;
  UElem out(&g);
  for (int k = 0; k <= m; ++k) {
    QScalar c = q_binomial(m, k, Rat(g.rd().dsym[i]), g.d());
    if (k % 2) c = -c;
    out += c * g.mul({g.pow(xi, m - k), xj, g.pow(xi, k)});
  }
  return out;
}

// Coassociativity, antipode, braid relations and Serre vanishing.
std::vector<CheckResult> crit_hopf(const QGroup& g, uint32_t seed) {
  std::vector<CheckResult> out;
  int r = g.rank();
  std::vector<UElem> gens;
  std::vector<std::string> gnames;
  for (int i = 0; i < r; ++i) {
    gens.push_back(g.E(i)), gnames.push_back("E" + std::to_string(i + 1));
    gens.push_back(g.F(i)), gnames.push_back("F" + std::to_string(i + 1));
    gens.push_back(g.K(g.rd().fundamental(i))), gnames.push_back("K_w" + std::to_string(i + 1));
  }
  std::vector<UElem> pool = gens;
  for (int k = 0; k < g.N(); ++k) pool.push_back(g.Eroot(k)), pool.push_back(g.Froot(k));
  for (int i = 0; i < r; ++i) pool.push_back(g.Ki(i, -1));
  std::mt19937 rng(seed);
  std::vector<UElem> els = gens;
  std::vector<std::string> names = gnames;
  for (int t = 0; t < 50; ++t) {
    UElem x(&g);
    std::string desc;
    int terms = 1 + static_cast<int>(rng() % 2);
    for (int s = 0; s < terms; ++s) {
      int len = 1 + static_cast<int>(rng() % 3);
      UElem m = g.one();
      long c = static_cast<long>(rng() % 5) - 2;
      if (c == 0) c = 1;
      desc += (s ? " + " : "") + std::to_string(c);
      for (int l = 0; l < len; ++l) {
        size_t idx = rng() % pool.size();
        m = g.mul(m, pool[idx]);
        desc += "*p" + std::to_string(idx);
      }
      x += QScalar(c) * m;
    }
    els.push_back(x);
    names.push_back(desc);
  }

  json coassoc_bad = json::array(), anti_bad = json::array(), braid_bad = json::array(), hom_bad = json::array();
  for (size_t t = 0; t < els.size(); ++t) {
    const UElem& x = els[t];
    if (coassoc_left(g, x) != coassoc_right(g, x)) coassoc_bad.push_back(names[t]);
    UElem left(&g), right(&g);
    for (const auto& [p, c] : g.coproduct(x).t) {
      left += c * g.mul(g.antipode(g.mono(p.first)), g.mono(p.second));
      right += c * g.mul(g.mono(p.first), g.antipode(g.mono(p.second)));
    }
    UElem eps = g.scalar(g.counit(x));
    if (left != eps || right != eps || g.antipode_inv(g.antipode(x)) != x) anti_bad.push_back(names[t]);
    for (int i = 0; i < r; ++i) {
      bool ok = g.braid_T(i, g.braid_T_inverse(i, x)) == x;
      for (int j = i + 1; j < r && ok; ++j) {
        int a = g.rd().cartan[i][j] * g.rd().cartan[j][i];
        if (a == 0) {
          ok = g.braid_T(i, g.braid_T(j, x)) == g.braid_T(j, g.braid_T(i, x));
        } else if (a == 1) {
          ok = g.braid_T(i, g.braid_T(j, g.braid_T(i, x))) == g.braid_T(j, g.braid_T(i, g.braid_T(j, x)));
        }
      }
      if (!ok) {
        braid_bad.push_back(names[t]);
        break;
      }
    }
    if (t + 1 < els.size()) {
      const UElem& y = els[t + 1];
      if (g.coproduct(g.mul(x, y)) != g.tmul(g.coproduct(x), g.coproduct(y))) hom_bad.push_back(names[t]);
    }
  }
  json pool_names = json::array();
  for (size_t i = 0; i < pool.size(); ++i) pool_names.push_back("p" + std::to_string(i) + " = " + g.str(pool[i]));
  std::string lbl = g.rd().label;
  int n = static_cast<int>(els.size());
  out.push_back(make(lbl + " coassociativity", 3, coassoc_bad.empty(), {{"elements", n}, {"failures", coassoc_bad}}));
  out.push_back(make(lbl + " antipode axiom", 3, anti_bad.empty(), {{"elements", n}, {"failures", anti_bad}}));
  out.push_back(make(lbl + " coproduct is multiplicative", 3, hom_bad.empty(), {{"pairs", n - 1}, {"failures", hom_bad}}));
  out.push_back(make(lbl + " braid relations", 3, braid_bad.empty(),
                     {{"elements", n}, {"failures", braid_bad}, {"pool", pool_names}}));

  // Serre relations vanish in U, under Delta, and on the T_k-images of the generators
  json serre_bad = json::array();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      for (bool is_e : {true, false}) {
        UElem xi = is_e ? g.E(i) : g.F(i), xj = is_e ? g.E(j) : g.F(j);
        std::string tag = std::string(is_e ? "E" : "F") + std::to_string(i + 1) + std::to_string(j + 1);
        if (!serre_expr(g, xi, xj, i, j).is_zero()) serre_bad.push_back(tag);
        for (int k = 0; k < r; ++k)
          if (!serre_expr(g, g.braid_T(k, xi), g.braid_T(k, xj), i, j).is_zero()) serre_bad.push_back("T" + std::to_string(k + 1) + " " + tag);
        // Delta is an algebra map, so the relation evaluated on Delta of the generators vanishes
        UTensor dxi = g.coproduct(xi), dxj = g.coproduct(xj);
        int m = 1 - g.rd().cartan[i][j];
        UTensor acc(&g);
        for (int k = 0; k <= m; ++k) {
          QScalar c = q_binomial(m, k, Rat(g.rd().dsym[i]), g.d());
          if (k % 2) c = -c;
          UTensor term = g.tensor(g.one(), g.one());
          for (int s = 0; s < m - k; ++s) term = g.tmul(term, dxi);
          term = g.tmul(term, dxj);
          for (int s = 0; s < k; ++s) term = g.tmul(term, dxi);
          acc += c * term;
        }
        if (!acc.is_zero()) serre_bad.push_back("Delta " + tag);
      }
    }
  out.push_back(make(lbl + " Serre relations vanish (plain, T_k-images, coproducts)", 3, serre_bad.empty(),
                     {{"failures", serre_bad}}));
  return out;
}

std::vector<CheckResult> crit_scalars(const QGroup& g, int ell) {
  std::vector<CheckResult> out;
  const RootDatum& rd = g.rd();
  std::string tag = rd.label + " ell=" + std::to_string(ell);
  json bad = json::array();
  for (int i = 0; i < rd.rank; ++i)
    for (int r = 1; r < ell; ++r)
      if (!eval_at_root(q_binomial(ell, r, Rat(rd.dsym[i]), g.d()), ell).is_zero())
        bad.push_back({{"i", i + 1}, {"r", r}});
  out.push_back(make(tag + " q-binomials [ell r]_{q_i} vanish at zeta", 4, bad.empty(), {{"failures", bad}}));

  json rows = json::array();
  bool ok = true;
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j) {
      for (const auto& [lam, nu] : {std::pair{rd.fundamental(i), rd.fundamental(j)}, std::pair{rd.alpha(i), rd.fundamental(j)}}) {
        Rat b = rd.bilinear(lam, nu);
        QScalar s = g.qpow(Rat(ell * ell) * b) - QScalar(1);
        CycloScalar got = eval_at_root(divide_by_hbar(s, ell, g.d()), ell);
        CycloScalar want(ell, b / 2);
        ok = ok && got == want;
        rows.push_back({{"lambda", weight_str(lam, rd.rank)}, {"nu", weight_str(nu, rd.rank)}, {"value", got.str()}, {"expected", want.str()}});
      }
    }
  out.push_back(make(tag + " (q^{ell^2 (lam,nu)} - 1)/hbar -> (lam,nu)/2", 4, ok, {{"values", rows}}));

  rows = json::array();
  ok = true;
  for (int i = 0; i < rd.rank; ++i) {
    QScalar qi = g.qi(i);
    QScalar s = (qi - qi.inverse()).pow(ell) * q_factorial(ell, Rat(rd.dsym[i]), g.d());
    CycloScalar got = eval_at_root(divide_by_hbar(s, ell, g.d()), ell);
    CycloScalar want(ell, Rat(rd.dsym[i]));  // (alpha_i, alpha_i)/2
    ok = ok && got == want;
    rows.push_back({{"i", i + 1}, {"value", got.str()}, {"expected", want.str()}});
  }
  out.push_back(make(tag + " (q_i - q_i^-1)^ell [ell]!_{q_i}/hbar -> (alpha_i,alpha_i)/2", 4, ok, {{"values", rows}}));

  // the Frobenius map sends E_i^(ell) to e_i and kills E_i^(r) for 0 < r < ell
  bad = json::array();
  for (int i = 0; i < rd.rank; ++i) {
    int k = rd.simple_position(i);
    XiElem want;
    want.ell = ell;
    want.add(ClassMono{{}, {}, unit_exps(k)}, CycloScalar(ell, 1));
    if (!(frobenius_xi(g, g.Eroot_div(k, ell), ell) == want)) bad.push_back("E" + std::to_string(i + 1) + "^(ell)");
    for (int r = 1; r < ell; ++r)
      if (!frobenius_xi(g, g.Froot_div(k, r), ell).is_zero()) bad.push_back("F" + std::to_string(i + 1) + "^(" + std::to_string(r) + ")");
  }
  out.push_back(make(tag + " Frobenius on simple divided powers", 4, bad.empty(), {{"failures", bad}}));
  return out;
}

UElem dcp_gen(const QGroup& g, char kind, int i, int power = 1) {
  int k = g.rd().simple_position(i);
  if (kind == 'A') return dcp_element(g, Mono{{}, {}, unit_exps(k, power)});
  if (kind == 'B') return dcp_element(g, Mono{unit_exps(k, power), {}, {}});
  return g.K(power * g.rd().fundamental(i));
}

std::vector<CheckResult> crit_center_u(const QGroup& g, int ell) {
  std::vector<CheckResult> out;
  std::string tag = g.rd().label + " ell=" + std::to_string(ell);
  for (int k = 0; k < g.N(); ++k) {
    std::string beta = weight_str(g.rd().beta[k], g.rank());
    out.push_back(make(tag + " A_beta^ell central, beta=" + beta, 5,
                       centrality_check(g, dcp_element(g, Mono{{}, {}, unit_exps(k, ell)}), ell)));
    out.push_back(make(tag + " B_beta^ell central, beta=" + beta, 5,
                       centrality_check(g, dcp_element(g, Mono{unit_exps(k, ell), {}, {}}), ell)));
  }
  for (int i = 0; i < g.rank(); ++i)
    out.push_back(make(tag + " K_{ell w" + std::to_string(i + 1) + "} central", 5,
                       centrality_check(g, g.K(ell * g.rd().fundamental(i)), ell)));
  // control: the test must be able to fail
  bool control = !centrality_check(g, g.E(0), ell) && !centrality_check(g, g.K(g.rd().fundamental(0)), ell);
  out.push_back(make(tag + " control: E_1 and K_w1 are not central", 5, control));
  return out;
}

std::vector<CheckResult> crit_center_d(const QGroup& g, int ell) {
  std::vector<CheckResult> out;
  CoordAlgebra C(g);
  std::string tag = g.rd().label + " ell=" + std::to_string(ell);
  json bad = json::array();
  for (int a = 0; a < C.n1(); ++a)
    for (int b = 0; b < C.n1(); ++b)
      if (!centrality_check(C, C.dc(txi_t(C, a, b, ell)), ell)) bad.push_back("t" + std::to_string(a + 1) + std::to_string(b + 1));
  out.push_back(make(tag + " txi(t_ab) (x) 1 central in D_zeta", 6, bad.empty(), {{"failures", bad}}));
  for (char kind : {'K', 'A', 'B'}) {
    bad = json::array();
    for (int i = 0; i < g.rank(); ++i)
      if (!centrality_check(C, C.du(teta(g, dcp_gen(g, kind, i), ell)), ell)) bad.push_back(i + 1);
    std::string fam = kind == 'K' ? "K_w" : std::string(1, kind) + "_";
    out.push_back(make(tag + " 1 (x) teta(" + fam + "i) central in D_zeta", 6, bad.empty(), {{"failures", bad}}));
  }
  bool control = !centrality_check(C, C.dc(C.t(0, 0)), ell);
  out.push_back(make(tag + " control: t_11 (x) 1 is not central", 6, control));
  return out;
}

std::vector<CheckResult> crit_main(const QGroup& g, int ell, uint32_t seed) {
  CoordAlgebra C(g);
  auto checks = main_theorem_checks(C, ell, seed);
  std::map<std::string, std::pair<bool, json>> fam;
  for (const auto& c : checks) {
    auto& [ok, w] = fam.try_emplace(c.family, true, json::array()).first->second;
    ok = ok && c.equal;
    w.push_back({{"i", c.index + 1}, {"a", c.a + 1}, {"b", c.b + 1}, {"equal", c.equal}, {"entries", c.entries}, {"detail", c.detail}});
  }
  static const std::map<std::string, std::string> label{
      {"K", "K_{ell w_i}"}, {"E", "(q_i-q_i^-1)^ell E_i^ell K_i^-ell"}, {"F", "(q_i-q_i^-1)^ell F_i^ell"}};
  std::vector<CheckResult> out;
  for (const char* f : {"K", "E", "F"}) {
    auto it = fam.find(f);
    if (it == fam.end()) continue;
    out.push_back(make(g.rd().label + " ell=" + std::to_string(ell) + " {txi(t_ab), " + label.at(f) + "} quantum = classical",
                       7, it->second.first, {{"cases", it->second.second}}));
  }
  return out;
}

std::vector<cl::MLFun> coordinate_functions(int n) {
  std::vector<cl::MLFun> fs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) fs.push_back(cl::coord_t(a, b));
  for (int i = 0; i + 1 < n; ++i) {
    fs.push_back(cl::coord_a(i));
    fs.push_back(cl::coord_b(i));
    Weight w{};
    w[i] = 1;
    fs.push_back(cl::coord_chi(w));
  }
  return fs;
}

std::vector<CheckResult> crit_classical(const QGroup& g, uint32_t seed) {
  std::vector<CheckResult> out;
  int n = g.rank() + 1;
  std::string tag = g.rd().label;
  cl::ManinTriple tr(n);
  out.push_back(make(tag + " Manin triple axioms", 8, tr.axioms_hold()));
  auto fs = coordinate_functions(n);
  std::mt19937 rng(seed);
  json jac = json::array(), rad = json::array();
  bool jok = true, rok = true, nok = true;
  int degenerate = 0, nontrivial = 0;
  for (int t = 0; t < 20; ++t) {
    cl::MLPoint<Rat> p = cl::random_ml_point(n, rng);
    size_t i1 = rng() % fs.size(), i2 = rng() % fs.size(), i3 = rng() % fs.size();
    const auto &f1 = fs[i1], &f2 = fs[i2], &f3 = fs[i3];
    Rat t1 = cl::eval(cl::ml_bracket(tr, f1, cl::ml_bracket(tr, f2, f3, 2), 1), p);
    Rat j = t1 + cl::eval(cl::ml_bracket(tr, f2, cl::ml_bracket(tr, f3, f1, 2), 1), p) +
            cl::eval(cl::ml_bracket(tr, f3, cl::ml_bracket(tr, f1, f2, 2), 1), p);
    jok = jok && j == 0;
    nontrivial += t1 != 0;
    jac.push_back({{"point", point_json(p)}, {"functions", {i1, i2, i3}}, {"first_term", t1.get_str()}, {"jacobiator", j.get_str()}});
    int r = cl::radical_dim(tr, p), k = cl::delta_kernel_dim(tr, p);
    bool nd = cl::nondegeneracy_test(p.g, p.k1, p.k2);
    rok = rok && r == k;
    nok = nok && nd == (r == 0);
    degenerate += r > 0;
    rad.push_back({{"point", point_json(p)}, {"radical_dim", r}, {"kernel_dim", k}, {"nondegenerate", nd}});
  }
  out.push_back(make(tag + " Jacobi identity at 20 points", 8, jok, {{"nonzero_first_terms", nontrivial}, {"samples", jac}}));
  out.push_back(make(tag + " radical_dim = delta kernel dimension at 20 points", 8, rok, {{"samples", rad}}));
  out.push_back(make(tag + " nondegeneracy_test agrees with radical_dim = 0 at 20 points", 8, nok, {{"degenerate_points", degenerate}}));
  return out;
}

std::vector<CheckResult> crit_hamiltonian(const QGroup& g, uint32_t seed) {
  std::vector<CheckResult> out;
  int n = g.rank() + 1;
  std::string tag = g.rd().label;
  cl::ManinTriple tr(n);
  std::mt19937 rng(seed + 1000);
  for (cl::Variant v : {cl::Variant::NminusOnYtilde, cl::Variant::BminusOnYt}) {
    std::string vname = v == cl::Variant::NminusOnYtilde ? "Ytilde/N-" : "Y_t/B-";
    json rows = json::array(), ext = json::array();
    bool rok = true, fok = true, eok = true;
    for (int t = 0; t < 10; ++t) {
      cl::Vec p = v == cl::Variant::NminusOnYtilde ? cl::random_ytilde_point(n, rng) : cl::random_yt_point(n, rng);
      cl::HamiltonianReport rep = cl::hamiltonian_report(tr, p, v);
      rok = rok && rep.radical_equals_conormal;
      fok = fok && rep.rank == rep.reduced_dim;
      rows.push_back({{"point", pair_json(p)},
                      {"dim_fperp", rep.dim_fperp},
                      {"dim_radical", rep.dim_radical},
                      {"dim_conormal", rep.dim_conormal},
                      {"rank", rep.rank},
                      {"reduced_dim", rep.reduced_dim}});
      // invariant functions: entries of g1^-1 g2, and top-row ratios; extensions differ by
      // multiples of the constraint functions
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n), c = 1 + static_cast<int>(rng() % (n - 1));
      cl::AFun phi = [i, j](const cl::Pair<cl::J>& q) { return (cl::inverse(q.a) * q.b)(i, j); };
      // top rows are N- invariant and B- rescales them, so top-row ratios are invariant for both
      int d = 0;
      while (p.a(0, d) == 0) ++d;
      cl::AFun psi = [c, d](const cl::Pair<cl::J>& q) { return q.b(0, c) * cl::inverse(q.a(0, d)); };
      auto cons = cl::constraint_functions(p, v);
      cl::AFun phi2 = [phi, k = cons.front()](const cl::Pair<cl::J>& q) { return phi(q) + k(q) * q.a(1, 0); };
      cl::AFun psi2 = [psi, k = cons.back()](const cl::Pair<cl::J>& q) { return psi(q) - cl::J(3) * k(q) * q.b(0, 1); };
      Rat r1 = cl::reduced_bracket(tr, phi, psi, p, v), r2 = cl::reduced_bracket(tr, phi2, psi2, p, v);
      eok = eok && r1 == r2;
      ext.push_back({{"phi", "(g1^-1 g2)_" + std::to_string(i + 1) + std::to_string(j + 1)},
                     {"psi", "g2_1" + std::to_string(c + 1) + "/g1_1" + std::to_string(d + 1)},
                     {"bracket", r1.get_str()},
                     {"other_extension", r2.get_str()}});
    }
    out.push_back(make(tag + " " + vname + " radical = conormal at 10 points", 9, rok, {{"samples", rows}}));
    out.push_back(make(tag + " " + vname + " reduced form has full rank at 10 points", 9, fok));
    out.push_back(make(tag + " " + vname + " reduced bracket independent of extension", 9, eok, {{"samples", ext}}));
  }
  return out;
}

std::vector<CheckResult> crit_d1(const QGroup& g) {
  CoordAlgebra C(g);
  std::vector<DElem> gens;
  std::vector<std::string> names;
  for (int i = 0; i < g.rank(); ++i) {
    std::string s = std::to_string(i + 1);
    for (char kind : {'A', 'B', 'K'}) {
      gens.push_back(C.du(dcp_gen(g, kind, i)));
      names.push_back(kind == 'K' ? "K_w" + s : std::string(1, kind) + s);
    }
  }
  for (int a = 0; a < C.n1(); ++a)
    for (int b = 0; b < C.n1(); ++b) {
      gens.push_back(C.dc(C.t(a, b)));
      names.push_back("t" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  json bad = json::array();
  int pairs = 0;
  for (size_t x = 0; x < gens.size(); ++x)
    for (size_t y = x + 1; y < gens.size(); ++y) {
      ++pairs;
      if (!specialize_table(C.dtable(C.dcommutator(gens[x], gens[y])), 1).empty()) bad.push_back({names[x], names[y]});
    }
  return {make(g.rd().label + " generators of D_1 commute", 10, bad.empty(), {{"pairs", pairs}, {"failures", bad}})};
}

bool needs_ell(int criterion) { return criterion == 4 || criterion == 5 || criterion == 6 || criterion == 7; }

}  // namespace

std::vector<CheckResult> criterion_checks(int criterion, const SuiteConfig& cfg) {
  RootDatum rd = RootDatum::make(cfg.type);
  int ell = cfg.ell;
  if (ell != 0) validate_ell(ell, rd.lattice_index);
  if (needs_ell(criterion) && ell == 0) ell = default_ell(cfg.type);
  QGroup g(rd);
  switch (criterion) {
    case 1: return crit_pbw(g);
    case 2: return crit_pairing(g, cfg.seed);
    case 3: return crit_hopf(g, cfg.seed);
    case 4: return crit_scalars(g, ell);
    case 5: return crit_center_u(g, ell);
    case 6: return crit_center_d(g, ell);
    case 7: return crit_main(g, ell, cfg.seed);
    case 8: return crit_classical(g, cfg.seed);
    case 9: return crit_hamiltonian(g, cfg.seed);
    case 10: return crit_d1(g);
    default: throw ConfigError("criterion", "no criterion " + std::to_string(criterion));
  }
}

SuiteReport run_suite(const std::string& suite, const SuiteConfig& cfg) {
  std::vector<int> crits = suite_criteria(suite);
  RootDatum rd = RootDatum::make(cfg.type);
  if (cfg.ell != 0) validate_ell(cfg.ell, rd.lattice_index);
  SuiteReport rep;
  rep.suite = suite;
  bool uses_ell = false;
  for (int c : crits) uses_ell = uses_ell || needs_ell(c);
  rep.parameters = {{"type", cfg.type}, {"seed", cfg.seed}};
  if (uses_ell || cfg.ell != 0) rep.parameters["ell"] = cfg.ell ? cfg.ell : default_ell(cfg.type);
  for (int c : crits)
    for (auto& r : criterion_checks(c, cfg)) rep.checks.push_back(std::move(r));
  return rep;
}

}  // namespace qmanin
