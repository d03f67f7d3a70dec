#include "qmanin/qalgebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qmanin {

Exps unit_exps(int k, int n) {
  Exps e{};
  e[k] = static_cast<uint8_t>(n);
  return e;
}

int top_letter(const Exps& m) {
  for (int k = kMaxRoots - 1; k >= 0; --k)
    if (m[k]) return k;
  return -1;
}

namespace {

// Letters of a PBW monomial in left-to-right order (descending root index).
std::vector<int> letters(const Exps& m) {
  std::vector<int> out;
  for (int k = kMaxRoots - 1; k >= 0; --k)
    for (int r = 0; r < m[k]; ++r) out.push_back(k);
  return out;
}

Exps from_letters(const std::vector<int>& l, size_t lo, size_t hi) {
  Exps e{};
  for (size_t t = lo; t < hi; ++t) ++e[l[t]];
  return e;
}

QScalar inv_fact(long m, int e) { return QScalar(qfact_v(m, e)).inverse(); }

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

WordPoly wp_mul(const WordPoly& a, const WordPoly& b) {
  WordPoly r;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) lc_add(r, concat(wa, wb), ca * cb);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Serre ideal

SerreIdeal::SerreIdeal(const RootDatum* rd) : rd_(rd) {
  for (int i = 0; i < rd->rank; ++i)
    for (int j = 0; j < rd->rank; ++j) {
      if (i == j) continue;
      int n = 1 - rd->cartan[i][j];
      int e = rd->d() * rd->dsym[i];
      WordPoly rel;
      for (int s = 0; s <= n; ++s) {
        Word w(n - s, static_cast<uint8_t>(i));
        w.push_back(static_cast<uint8_t>(j));
        w.insert(w.end(), s, static_cast<uint8_t>(i));
        QScalar c = inv_fact(n - s, e) * inv_fact(s, e);
        lc_add(rel, w, (s % 2) ? -c : c);
      }
      rel_[{i, j}] = rel;
    }
}

const WordPoly& SerreIdeal::relation(int i, int j) const { return rel_.at({i, j}); }

std::vector<Word> SerreIdeal::words_of(const std::vector<int>& gamma) {
  Word w;
  for (size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] < 0) return {};
    w.insert(w.end(), gamma[i], static_cast<uint8_t>(i));
  }
  std::vector<Word> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::vector<QScalar> SerreIdeal::dense(const Space& s, const WordPoly& p) const {
  std::vector<QScalar> v(s.words.size());
  for (const auto& [w, c] : p) v[s.col.at(w)] += c;
  return v;
}

const SerreIdeal::Space& SerreIdeal::space(const std::vector<int>& gamma) const {
  auto it = cache_.find(gamma);
  if (it != cache_.end()) return *it->second;
  auto sp = std::make_unique<Space>();
  sp->words = words_of(gamma);
  for (size_t c = 0; c < sp->words.size(); ++c) sp->col[sp->words[c]] = static_cast<int>(c);
  sp->ech = std::make_unique<Echelon<QScalar>>(static_cast<int>(sp->words.size()));
  for (const auto& [ij, rel] : rel_) {
    auto [i, j] = ij;
    std::vector<int> rest = gamma;
    rest[i] -= 1 - rd_->cartan[i][j];
    rest[j] -= 1;
    if (std::any_of(rest.begin(), rest.end(), [](int x) { return x < 0; })) continue;
    for (const auto& x : words_of(rest))
      for (size_t p = 0; p <= x.size(); ++p) {
        Word u(x.begin(), x.begin() + p), w(x.begin() + p, x.end());
        WordPoly row;
        for (const auto& [r, c] : rel) lc_add(row, concat(concat(u, r), w), c);
        sp->ech->add(dense(*sp, row));
        sp->rows.push_back(std::move(row));
      }
  }
  return *cache_.emplace(gamma, std::move(sp)).first->second;
}

// ---------------------------------------------------------------- PBW halves

PBWHalf::PBWHalf(const RootDatum* rd, const SerreIdeal* serre, std::vector<WordPoly> roots)
    : rd_(rd), serre_(serre), roots_(std::move(roots)) {}

std::vector<int> PBWHalf::coords(const Exps& m) const {
  std::vector<int> c(rd_->rank, 0);
  for (int k = 0; k < N(); ++k)
    for (int i = 0; i < rd_->rank; ++i) c[i] += m[k] * rd_->beta_q[k][i];
  return c;
}

std::vector<Exps> PBWHalf::monomials_of(const RootDatum& rd, const std::vector<int>& gamma) {
  std::vector<Exps> out;
  Exps cur{};
  int n = rd.N();
  std::vector<int> rest = gamma;
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) out.push_back(cur);
      return;
    }
    int m = 0;
    while (true) {
      cur[k] = static_cast<uint8_t>(m);
      rec(k + 1);
      bool ok = true;
      for (int i = 0; i < rd.rank; ++i) {
        rest[i] -= rd.beta_q[k][i];
        if (rest[i] < 0) ok = false;
      }
      ++m;
      if (!ok) {
        for (int i = 0; i < rd.rank; ++i) rest[i] += m * rd.beta_q[k][i];
        break;
      }
    }
    cur[k] = 0;
  };
  rec(0);
  return out;
}

const WordPoly& PBWHalf::expand(const Exps& m) const {
  auto it = expand_.find(m);
  if (it != expand_.end()) return it->second;
  WordPoly r{{Word{}, QScalar(1)}};
  for (int k : letters(m)) r = wp_mul(r, roots_[k]);
  return expand_.emplace(m, std::move(r)).first->second;
}

const ExpPoly& PBWHalf::ls(int a, int b) const {
  auto key = std::make_pair(a, b);
  auto it = ls_.find(key);
  if (it != ls_.end()) return it->second;
  std::vector<int> gamma(rd_->rank);
  for (int i = 0; i < rd_->rank; ++i) gamma[i] = rd_->beta_q[a][i] + rd_->beta_q[b][i];
  const auto& sp = serre_->space(gamma);
  auto mons = monomials_of(*rd_, gamma);
  std::vector<std::vector<QScalar>> cols;
  for (const auto& m : mons) cols.push_back(sp.ech->reduce(serre_->dense(sp, expand(m))));
  if (matrix_rank(cols, static_cast<int>(sp.words.size())) != static_cast<int>(mons.size()))
    throw StructuralError("PBW monomials are dependent modulo the Serre ideal");
  auto target = sp.ech->reduce(serre_->dense(sp, wp_mul(roots_[a], roots_[b])));
  auto x = solve_columns(cols, target);
  if (!x) throw StructuralError("root-vector product outside the PBW span");
  ExpPoly r;
  for (size_t c = 0; c < mons.size(); ++c) lc_add(r, mons[c], (*x)[c]);
  return ls_.emplace(key, std::move(r)).first->second;
}

const ExpPoly& PBWHalf::leftmul(int a, const Exps& m) const {
  auto key = std::make_pair(a, m);
  auto it = left_.find(key);
  if (it != left_.end()) return it->second;
  int b = top_letter(m);
  ExpPoly r;
  if (b < 0 || a >= b) {
    Exps mm = m;
    ++mm[a];
    r[mm] = 1;
  } else {
    if (++depth_ > 400) throw StructuralError("PBW straightening does not terminate");
    Exps rest = m;
    --rest[b];
    for (const auto& [p, c] : ls(a, b))
      for (const auto& [q, d] : mul(p, rest)) lc_add(r, q, c * d);
    --depth_;
  }
  return left_.emplace(key, std::move(r)).first->second;
}

ExpPoly PBWHalf::mul(const Exps& a, const Exps& b) const {
  ExpPoly r{{b, QScalar(1)}};
  auto l = letters(a);
  for (size_t t = l.size(); t-- > 0;) {
    ExpPoly next;
    for (const auto& [m, c] : r)
      for (const auto& [q, d] : leftmul(l[t], m)) lc_add(next, q, c * d);
    r = std::move(next);
  }
  return r;
}

ExpPoly PBWHalf::mul(const ExpPoly& a, const ExpPoly& b) const {
  ExpPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b)
      for (const auto& [q, d] : mul(ma, mb)) lc_add(r, q, ca * cb * d);
  return r;
}

ExpPoly PBWHalf::from_word(const Word& w) const {
  auto it = word_.find(w);
  if (it != word_.end()) return it->second;
  ExpPoly r{{Exps{}, QScalar(1)}};
  for (size_t t = w.size(); t-- > 0;) {
    int k = rd_->simple_position(w[t]);
    ExpPoly next;
    for (const auto& [m, c] : r)
      for (const auto& [q, d] : leftmul(k, m)) lc_add(next, q, c * d);
    r = std::move(next);
  }
  return word_.emplace(w, r).first->second;
}

ExpPoly PBWHalf::from_wordpoly(const WordPoly& p) const {
  ExpPoly r;
  for (const auto& [w, c] : p)
    for (const auto& [m, d] : from_word(w)) lc_add(r, m, c * d);
  return r;
}

// ---------------------------------------------------------------- QGroup

QGroup::QGroup(RootDatum rd) : rd_(std::move(rd)) {
  serre_ = std::make_unique<SerreIdeal>(&rd_);
  std::vector<WordPoly> eroots, froots;
  for (int k = 0; k < rd_.N(); ++k) {
    uint8_t ik = static_cast<uint8_t>(rd_.w0[k]);
    WElem xe{{WMono{{}, {}, {ik}}, QScalar(1)}};
    WElem xf{{WMono{{ik}, {}, {}}, QScalar(1)}};
    // images stay in the relevant half modulo the Serre ideal, which is triangular,
    // so projecting after each step loses nothing
    for (int j = k - 1; j >= 0; --j) {
      WElem ye, yf;
      for (const auto& [m, c] : wT(rd_.w0[j], xe, false))
        if (m.f.empty() && is_zero(m.k)) ye[m] = c;
      for (const auto& [m, c] : wT(rd_.w0[j], xf, false))
        if (m.e.empty() && is_zero(m.k)) yf[m] = c;
      xe = std::move(ye);
      xf = std::move(yf);
    }
    WordPoly pe, pf;
    for (const auto& [m, c] : xe) lc_add(pe, m.e, c);
    for (const auto& [m, c] : xf) lc_add(pf, m.f, c);
    eroots.push_back(pe);
    froots.push_back(pf);
  }
  plus_ = std::make_unique<PBWHalf>(&rd_, serre_.get(), eroots);
  minus_ = std::make_unique<PBWHalf>(&rd_, serre_.get(), froots);
  int n = rd_.N();
  comm_.assign(n, std::vector<UElem>(n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      WElem eb, fc;
      for (const auto& [w, x] : eroots[b]) eb[WMono{{}, {}, w}] = x;
      for (const auto& [w, x] : froots[c]) fc[WMono{w, {}, {}}] = x;
      WElem prod = wmul(eb, fc);
      for (const auto& [m1, x1] : fc)
        for (const auto& [m2, x2] : eb) lc_add(prod, WMono{m1.f, {}, m2.e}, -x1 * x2);
      comm_[b][c] = from_words(prod);
    }
}

QScalar QGroup::qpow(const Rat& x) const {
  Rat e = x * d();
  e.canonicalize();
  if (e.get_den() != 1) throw MalformedExponent("q-power outside (1/d)Z");
  return vpow(static_cast<int>(e.get_num().get_si()));
}

QScalar QGroup::inv_qdiff(int i) const {
  return QScalar(Laurent::monomial(ei(i)) - Laurent::monomial(-ei(i))).inverse();
}

Weight QGroup::word_weight(const Word& w) const {
  Weight r{};
  for (auto l : w) r = r + rd_.alpha(l);
  return r;
}

Weight QGroup::weight(const Mono& m) const { return rd_.weight_of(m.e) - rd_.weight_of(m.f); }

bool QGroup::is_weight_homogeneous(const UElem& a, Weight* w) const {
  bool first = true;
  Weight w0{};
  for (const auto& [m, c] : a.t) {
    Weight x = weight(m);
    if (first) {
      w0 = x;
      first = false;
    } else if (x != w0) {
      return false;
    }
  }
  if (w) *w = w0;
  return true;
}

UElem QGroup::E(int i) const { return mono(Mono{{}, {}, unit_exps(rd_.simple_position(i))}); }
UElem QGroup::F(int i) const { return mono(Mono{unit_exps(rd_.simple_position(i)), {}, {}}); }
UElem QGroup::K(const Weight& w) const { return mono(Mono{{}, w, {}}); }
UElem QGroup::Eroot(int k, int n) const { return mono(Mono{{}, {}, unit_exps(k, n)}); }
UElem QGroup::Froot(int k, int n) const { return mono(Mono{unit_exps(k, n), {}, {}}); }
UElem QGroup::Eroot_div(int k, int n) const {
  return inv_fact(n, d() * rd_.beta_d[k]) * Eroot(k, n);
}
UElem QGroup::Froot_div(int k, int n) const {
  return inv_fact(n, d() * rd_.beta_d[k]) * Froot(k, n);
}

std::pair<UElem, UElem> QGroup::root_vector(int k) const {
  if (k < 1 || k > N()) throw DomainError("root index out of range");
  return {Eroot(k - 1), Froot(k - 1)};
}

// ---------------------------------------------------------------- free-algebra layer

const WElem& QGroup::wef(const Word& e, const Word& f) const {
  auto key = std::make_pair(e, f);
  auto it = wef_.find(key);
  if (it != wef_.end()) return it->second;
  WElem r;
  if (e.empty() || f.empty()) {
    r[WMono{f, {}, e}] = 1;
    return wef_.emplace(key, std::move(r)).first->second;
  }
  int i = e.back();
  Word ep(e.begin(), e.end() - 1);
  // E_i f = f E_i + sum over positions p with f_p = i of the commutator term
  std::vector<std::pair<WMono, QScalar>> x;
  x.push_back({WMono{f, {}, {static_cast<uint8_t>(i)}}, QScalar(1)});
  Weight ai = rd_.alpha(i);
  QScalar c = inv_qdiff(i);
  for (size_t p = 0; p < f.size(); ++p) {
    if (f[p] != i) continue;
    Weight wp = word_weight(Word(f.begin() + p + 1, f.end()));
    Word fm = f;
    fm.erase(fm.begin() + p);
    int s = rd_.bil_d(ai, wp);
    x.push_back({WMono{fm, ai, {}}, c * vpow(-s)});
    x.push_back({WMono{fm, -ai, {}}, -c * vpow(s)});
  }
  for (const auto& [m2, c2] : x)
    for (const auto& [m3, c3] : wef(ep, m2.f)) {
      int s = -rd_.bil_d(m2.k, word_weight(m3.e));
      lc_add(r, WMono{m3.f, m3.k + m2.k, concat(m3.e, m2.e)}, c2 * c3 * vpow(s));
    }
  return wef_.emplace(key, std::move(r)).first->second;
}

WElem QGroup::wmono_mul(const WMono& a, const WMono& b) const {
  WElem r;
  for (const auto& [m, c] : wef(a.e, b.f)) {
    int s = -rd_.bil_d(a.k, word_weight(m.f)) - rd_.bil_d(b.k, word_weight(m.e));
    lc_add(r, WMono{concat(a.f, m.f), a.k + m.k + b.k, concat(m.e, b.e)}, c * vpow(s));
  }
  return r;
}

WElem QGroup::wmul(const WElem& a, const WElem& b) const {
  WElem r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b)
      for (const auto& [m, c] : wmono_mul(ma, mb)) lc_add(r, m, ca * cb * c);
  return r;
}

// kind 0: image of E_j, kind 1: image of F_j.
const WElem& QGroup::wgen(int i, bool inverse, int kind, int j) const {
  auto key = std::make_tuple(i, inverse, kind, j);
  auto it = wgen_.find(key);
  if (it != wgen_.end()) return it->second;
  WElem r;
  uint8_t li = static_cast<uint8_t>(i), lj = static_cast<uint8_t>(j);
  int e = ei(i);
  Weight ai = rd_.alpha(i);
  int aii = rd_.bil_d(ai, ai);
  if (i == j) {
    if (kind == 0) {
      if (!inverse) r[WMono{{li}, ai, {}}] = -1;          // -F_i K_i
      else r[WMono{{li}, -ai, {}}] = -vpow(aii);          // -K_i^-1 F_i
    } else {
      if (!inverse) r[WMono{{}, -ai, {li}}] = -1;         // -K_i^-1 E_i
      else r[WMono{{}, ai, {li}}] = -vpow(-aii);          // -E_i K_i
    }
  } else {
    int n = -rd_.cartan[i][j];
    for (int k = 0; k <= n; ++k) {
      // E side: (-1)^k q_i^-k E_i^(n-k) E_j E_i^(k); F side: (-1)^k q_i^k F_i^(k) F_j F_i^(n-k).
      // The inverse swaps the two divided powers.
      int left = kind == 0 ? n - k : k, right = n - left;
      if (inverse) std::swap(left, right);
      Word w(left, li);
      w.push_back(lj);
      w.insert(w.end(), right, li);
      QScalar c = vpow(kind == 0 ? -k * e : k * e) * inv_fact(n - k, e) * inv_fact(k, e);
      if (k % 2) c = -c;
      if (kind == 0) lc_add(r, WMono{{}, {}, w}, c);
      else lc_add(r, WMono{w, {}, {}}, c);
    }
  }
  return wgen_.emplace(key, std::move(r)).first->second;
}

WElem QGroup::wT(int i, const WElem& x, bool inverse) const {
  WElem r;
  for (const auto& [m, c] : x) {
    WElem p{{WMono{}, c}};
    for (auto l : m.f) p = wmul(p, wgen(i, inverse, 1, l));
    p = wmul(p, WElem{{WMono{{}, rd_.reflect(i, m.k), {}}, QScalar(1)}});
    for (auto l : m.e) p = wmul(p, wgen(i, inverse, 0, l));
    for (const auto& [q, d] : p) lc_add(r, q, d);
  }
  return r;
}

UElem QGroup::from_words(const WElem& x) const {
  UElem r(this);
  for (const auto& [m, c] : x) {
    const ExpPoly& fp = minus_->from_word(m.f);
    const ExpPoly& ep = plus_->from_word(m.e);
    for (const auto& [fm, cf] : fp)
      for (const auto& [em, ce] : ep) r.add(Mono{fm, m.k, em}, c * cf * ce);
  }
  return r;
}

// ---------------------------------------------------------------- products in U

const UElem& QGroup::ef_elem(const Exps& e, const Exps& f) const {
  auto key = std::make_pair(e, f);
  auto it = ef_.find(key);
  if (it != ef_.end()) return it->second;
  UElem r(this);
  int g = top_letter(f);
  if (top_letter(e) < 0 || g < 0) {
    r.add(Mono{f, {}, e}, 1);
    return ef_.emplace(key, std::move(r)).first->second;
  }
  Exps fr = f;
  --fr[g];
  // E^e F_g = F_g E^e + sum_t E^{<t} [E_{a_t}, F_g] E^{>t}
  auto l = letters(e);
  UElem x = mono(Mono{unit_exps(g), {}, e});
  for (size_t t = 0; t < l.size(); ++t) {
    UElem pre = mono(Mono{{}, {}, from_letters(l, 0, t)});
    UElem suf = mono(Mono{{}, {}, from_letters(l, t + 1, l.size())});
    x += mul(mul(pre, comm_[l[t]][g]), suf);
  }
  r = mul(x, mono(Mono{fr, {}, {}}));
  return ef_.emplace(key, std::move(r)).first->second;
}

UElem QGroup::mono_mul(const Mono& a, const Mono& b) const {
  UElem r(this);
  const UElem& x = ef_elem(a.e, b.f);
  bool fa = top_letter(a.f) >= 0, eb = top_letter(b.e) >= 0;
  for (const auto& [m, c] : x.t) {
    int s = -rd_.bil_d(a.k, rd_.weight_of(m.f)) - rd_.bil_d(b.k, rd_.weight_of(m.e));
    QScalar cc = c * vpow(s);
    Weight k = a.k + m.k + b.k;
    ExpPoly fp = fa ? minus_->mul(a.f, m.f) : ExpPoly{{m.f, QScalar(1)}};
    ExpPoly ep = eb ? plus_->mul(m.e, b.e) : ExpPoly{{m.e, QScalar(1)}};
    for (const auto& [fm, cf] : fp)
      for (const auto& [em, ce] : ep) r.add(Mono{fm, k, em}, cc * cf * ce);
  }
  return r;
}

UElem QGroup::mul(const UElem& a, const UElem& b) const {
  UElem r(a.join(b));
  if (r.g && r.g != this) throw StructuralError("element belongs to a different root datum");
  r.g = this;
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      QScalar c = ca * cb;
      for (const auto& [m, x] : mono_mul(ma, mb).t) r.add(m, c * x);
    }
  return r;
}

UElem QGroup::mul(std::initializer_list<UElem> xs) const {
  UElem r = one();
  for (const auto& x : xs) r = mul(r, x);
  return r;
}

UElem QGroup::pow(const UElem& a, int n) const {
  UElem r = one();
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

UElem QGroup::commutator(const UElem& a, const UElem& b) const { return mul(a, b) - mul(b, a); }

// ---------------------------------------------------------------- Hopf structure

UTensor QGroup::tensor(const UElem& a, const UElem& b) const {
  UTensor r(this);
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) r.add({ma, mb}, ca * cb);
  return r;
}

UTensor QGroup::tmul(const UTensor& a, const UTensor& b) const {
  UTensor r(this);
  for (const auto& [pa, ca] : a.t)
    for (const auto& [pb, cb] : b.t) {
      UElem x = mono_mul(pa.first, pb.first);
      UElem y = mono_mul(pa.second, pb.second);
      QScalar c = ca * cb;
      for (const auto& [mx, cx] : x.t)
        for (const auto& [my, cy] : y.t) r.add({mx, my}, c * cx * cy);
    }
  return r;
}

const UTensor& QGroup::delta_root(int k, bool is_e) const {
  auto key = std::make_pair(k, is_e);
  auto it = delta_root_.find(key);
  if (it != delta_root_.end()) return it->second;
  const WordPoly& wp = is_e ? plus_->root_word(k) : minus_->root_word(k);
  UTensor r(this);
  for (const auto& [w, c] : wp) {
    UTensor p = tensor(one(), scalar(c));
    for (auto l : w) {
      UTensor g(this);
      if (is_e) {
        g = tensor(E(l), one()) + tensor(Ki(l), E(l));
      } else {
        g = tensor(F(l), Ki(l, -1)) + tensor(one(), F(l));
      }
      p = tmul(p, g);
    }
    r += p;
  }
  return delta_root_.emplace(key, std::move(r)).first->second;
}

UTensor QGroup::coproduct(const UElem& a) const {
  UTensor r(this);
  for (const auto& [m, c] : a.t) {
    auto it = delta_.find(m);
    if (it == delta_.end()) {
      UTensor p = tensor(one(), one());
      for (int k : letters(m.f)) p = tmul(p, delta_root(k, false));
      p = tmul(p, tensor(K(m.k), K(m.k)));
      for (int k : letters(m.e)) p = tmul(p, delta_root(k, true));
      it = delta_.emplace(m, std::move(p)).first;
    }
    r += c * it->second;
  }
  return r;
}

QScalar QGroup::counit(const UElem& a) const {
  QScalar s = 0;
  for (const auto& [m, c] : a.t)
    if (top_letter(m.f) < 0 && top_letter(m.e) < 0) s += c;
  return s;
}

UElem QGroup::multiply_out(const UTensor& t) const {
  UElem r(this);
  for (const auto& [p, c] : t.t) r += c * mono_mul(p.first, p.second);
  return r;
}

UElem QGroup::S_root(int k, bool is_e, bool inverse) const {
  auto key = std::make_tuple(k, is_e, inverse);
  auto it = sroot_.find(key);
  if (it != sroot_.end()) return it->second;
  const WordPoly& wp = is_e ? plus_->root_word(k) : minus_->root_word(k);
  UElem r(this);
  for (const auto& [w, c] : wp) {
    UElem p = scalar(c);
    for (size_t t = w.size(); t-- > 0;) {
      int l = w[t];
      Weight al = rd_.alpha(l);
      int aii = rd_.bil_d(al, al);
      UElem g(this);
      if (is_e) {
        // S(E) = -K^-1 E, S^-1(E) = -E K^-1
        g = mono(Mono{{}, -al, unit_exps(rd_.simple_position(l))}, inverse ? -vpow(aii) : QScalar(-1));
      } else {
        // S(F) = -F K, S^-1(F) = -K F
        g = mono(Mono{unit_exps(rd_.simple_position(l)), al, {}}, inverse ? -vpow(-aii) : QScalar(-1));
      }
      p = mul(p, g);
    }
    r += p;
  }
  return sroot_.emplace(key, std::move(r)).first->second;
}

UElem QGroup::antipode_impl(const UElem& a, bool inverse) const {
  UElem r(this);
  for (const auto& [m, c] : a.t) {
    UElem p = scalar(c);
    auto le = letters(m.e);
    for (size_t t = le.size(); t-- > 0;) p = mul(p, S_root(le[t], true, inverse));
    p = mul(p, K(-m.k));
    auto lf = letters(m.f);
    for (size_t t = lf.size(); t-- > 0;) p = mul(p, S_root(lf[t], false, inverse));
    r += p;
  }
  return r;
}

UElem QGroup::antipode(const UElem& a) const { return antipode_impl(a, false); }
UElem QGroup::antipode_inv(const UElem& a) const { return antipode_impl(a, true); }

// ---------------------------------------------------------------- braid automorphisms

UElem QGroup::root_image(int i, bool inverse, int k, bool is_e) const {
  auto key = std::make_tuple(i, inverse, k, is_e);
  auto it = troot_.find(key);
  if (it != troot_.end()) return it->second;
  WElem x;
  const WordPoly& wp = is_e ? plus_->root_word(k) : minus_->root_word(k);
  for (const auto& [w, c] : wp) x[is_e ? WMono{{}, {}, w} : WMono{w, {}, {}}] = c;
  UElem r = from_words(wT(i, x, inverse));
  return troot_.emplace(key, std::move(r)).first->second;
}

UElem QGroup::braid_impl(int i, const UElem& a, bool inverse) const {
  if (i < 0 || i >= rank()) throw DomainError("braid index out of range");
  UElem r(this);
  for (const auto& [m, c] : a.t) {
    UElem p = scalar(c);
    for (int k : letters(m.f)) p = mul(p, root_image(i, inverse, k, false));
    p = mul(p, K(rd_.reflect(i, m.k)));
    for (int k : letters(m.e)) p = mul(p, root_image(i, inverse, k, true));
    r += p;
  }
  return r;
}

UElem QGroup::braid_T(int i, const UElem& a) const { return braid_impl(i, a, false); }
UElem QGroup::braid_T_inverse(int i, const UElem& a) const { return braid_impl(i, a, true); }

// ---------------------------------------------------------------- E·K·F basis

UElem QGroup::ekf_mono(const Mono& m) const {
  return mul(mul(mono(Mono{{}, {}, m.e}), K(m.k)), mono(Mono{m.f, {}, {}}));
}

UElem QGroup::to_ekf(const UElem& a) const {
  UElem r(this);
  for (const auto& [m, c] : a.t) {
    auto it = ekf_.find(m);
    if (it == ekf_.end()) {
      // E^e K F^f = q^{-(k, wt f)} F^f K E^e + terms of lower total height
      UElem p = ekf_mono(m);
      QScalar lead = p.coeff(m);
      UElem x = mono(m);
      for (const auto& [m2, c2] : p.t)
        if (m2 != m) x -= c2 * to_ekf(mono(m2));
      it = ekf_.emplace(m, lead.inverse() * x).first;
    }
    r += c * it->second;
  }
  return r;
}

UElem QGroup::from_ekf(const UElem& a) const {
  UElem r(this);
  for (const auto& [m, c] : a.t) r += c * ekf_mono(m);
  return r;
}

// ---------------------------------------------------------------- V

VElem QGroup::X(int i) const { return vmono(VMono{{}, {}, unit_exps(rd_.simple_position(i))}); }
VElem QGroup::Y(int i) const { return vmono(VMono{unit_exps(rd_.simple_position(i)), {}, {}}); }
VElem QGroup::Z(const Weight& w) const { return vmono(VMono{{}, w, {}}); }
VElem QGroup::Xroot(int k, int n) const { return vmono(VMono{{}, {}, unit_exps(k, n)}); }
VElem QGroup::Yroot(int k, int n) const { return vmono(VMono{unit_exps(k, n), {}, {}}); }

VElem QGroup::vmul(const VElem& a, const VElem& b) const {
  VElem r(a.join(b));
  if (r.g && r.g != this) throw StructuralError("element belongs to a different root datum");
  r.g = this;
  // (Y1 Z_l X1)(Y2 Z_m X2) = q^{(l, wt Y2) - (m, wt X1)} Y1Y2 Z_{l+m} X1X2
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      int s = rd_.bil_d(ma.z, rd_.weight_of(mb.y)) - rd_.bil_d(mb.z, rd_.weight_of(ma.x));
      QScalar c = ca * cb * vpow(s);
      ExpPoly ys = minus_->mul(ma.y, mb.y);
      ExpPoly xs = plus_->mul(ma.x, mb.x);
      for (const auto& [ym, cy] : ys)
        for (const auto& [xm, cx] : xs) r.add(VMono{ym, ma.z + mb.z, xm}, c * cy * cx);
    }
  return r;
}

VElem QGroup::vmul(std::initializer_list<VElem> xs) const {
  VElem r = vone();
  for (const auto& x : xs) r = vmul(r, x);
  return r;
}

VElem QGroup::vpow_elem(const VElem& a, int n) const {
  VElem r = vone();
  for (int i = 0; i < n; ++i) r = vmul(r, a);
  return r;
}

UElem QGroup::jmath_geq0(const VElem& v) const {
  UElem r(this);
  for (const auto& [m, c] : v.t) {
    if (top_letter(m.y) >= 0) throw DomainError("element is not in V^{>=0}");
    r.add(Mono{{}, m.z, m.x}, c);
  }
  return r;
}

UElem QGroup::jmath_leq0(const VElem& v) const {
  UElem r(this);
  for (const auto& [m, c] : v.t) {
    if (top_letter(m.x) >= 0) throw DomainError("element is not in V^{<=0}");
    r.add(Mono{m.y, -m.z, {}}, c);
  }
  return r;
}

// ---------------------------------------------------------------- printing

namespace {
std::string exps_str(const Exps& e, int n) {
  std::string s = "(";
  for (int k = n - 1; k >= 0; --k) {
    s += std::to_string(e[k]);
    if (k) s += ",";
  }
  return s + ")";
}
}  // namespace

std::string QGroup::mono_str(const Mono& m) const {
  std::string s;
  if (top_letter(m.f) >= 0) s += "F" + exps_str(m.f, N());
  if (!is_zero(m.k)) s += "K" + weight_str(m.k, rank());
  if (top_letter(m.e) >= 0) s += "E" + exps_str(m.e, N());
  return s.empty() ? "1" : s;
}

std::string QGroup::str(const UElem& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << mono_str(m);
  }
  return os.str();
}

std::string QGroup::str(const VElem& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.t) {
    if (!first) os << " + ";
    first = false;
    std::string s;
    if (top_letter(m.y) >= 0) s += "Y" + exps_str(m.y, N());
    if (!is_zero(m.z)) s += "Z" + weight_str(m.z, rank());
    if (top_letter(m.x) >= 0) s += "X" + exps_str(m.x, N());
    os << "(" << c.str() << ")*" << (s.empty() ? "1" : s);
  }
  return os.str();
}

std::string QGroup::str(const UTensor& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : a.t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << mono_str(p.first) << "@" << mono_str(p.second);
  }
  return os.str();
}

}  // namespace qmanin
