#pragma once
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qmanin/linalg.hpp"
#include "qmanin/qscalar.hpp"
#include "qmanin/rootdata.hpp"

namespace qmanin {

class QGroup;

using Word = std::vector<uint8_t>;  // letters are 0-based simple indices
using WordPoly = std::map<Word, QScalar>;
using ExpPoly = std::map<Exps, QScalar>;

template <class K>
void lc_add(std::map<K, QScalar>& m, const K& k, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

// PBW monomial F^f K_k E^e in U (F·K·E order); E^m = E_{b_N}^{m_N}...E_{b_1}^{m_1}.
struct Mono {
  Exps f{};
  Weight k{};
  Exps e{};
  auto operator<=>(const Mono&) const = default;
};

// Monomial Y^y Z_z X^x in V.
struct VMono {
  Exps y{};
  Weight z{};
  Exps x{};
  auto operator<=>(const VMono&) const = default;
};

using Mono2 = std::pair<Mono, Mono>;

// Finite linear combination tied to one QGroup; owner null means "any".
template <class Key>
struct Lin {
  const QGroup* g = nullptr;
  std::map<Key, QScalar> t;

  Lin() = default;
  explicit Lin(const QGroup* owner) : g(owner) {}
  Lin(const QGroup* owner, const Key& k, const QScalar& c = 1) : g(owner) { lc_add(t, k, c); }

  bool is_zero() const { return t.empty(); }
  Lin& add(const Key& k, const QScalar& c) {
    lc_add(t, k, c);
    return *this;
  }
  const QGroup* join(const Lin& o) const {
    if (g && o.g && g != o.g) throw StructuralError("elements belong to different root data");
    return g ? g : o.g;
  }
  Lin& operator+=(const Lin& o) {
    g = join(o);
    for (const auto& [k, c] : o.t) lc_add(t, k, c);
    return *this;
  }
  Lin& operator-=(const Lin& o) {
    g = join(o);
    for (const auto& [k, c] : o.t) lc_add(t, k, -c);
    return *this;
  }
  friend Lin operator+(Lin a, const Lin& b) { return a += b; }
  friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
  Lin operator-() const {
    Lin r(g);
    for (const auto& [k, c] : t) r.t.emplace(k, -c);
    return r;
  }
  friend Lin operator*(const QScalar& s, const Lin& a) {
    Lin r(a.g);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a.t) r.t.emplace(k, s * c);
    return r;
  }
  QScalar coeff(const Key& k) const {
    auto it = t.find(k);
    return it == t.end() ? QScalar(0) : it->second;
  }
  bool operator==(const Lin& o) const { return t == o.t; }
  bool operator!=(const Lin& o) const { return t != o.t; }
};

using UElem = Lin<Mono>;
using VElem = Lin<VMono>;
using UTensor = Lin<Mono2>;

// Free algebra with K's and the [E,F] relation only (no Serre relations).
struct WMono {
  Word f;
  Weight k{};
  Word e;
  auto operator<=>(const WMono&) const = default;
};
using WElem = std::map<WMono, QScalar>;

// Spans of the Serre ideal in each graded piece of the free algebra on one kind of letter.
class SerreIdeal {
 public:
  explicit SerreIdeal(const RootDatum* rd);
  struct Space {
    std::vector<Word> words;
    std::map<Word, int> col;
    std::vector<WordPoly> rows;
    std::unique_ptr<Echelon<QScalar>> ech;
  };
  // Graded piece at gamma (simple-root coordinates); built once.
  const Space& space(const std::vector<int>& gamma) const;
  const WordPoly& relation(int i, int j) const;  // sum_n (-1)^n X_i^(1-a-n) X_j X_i^(n)
  std::vector<QScalar> dense(const Space& s, const WordPoly& p) const;
  static std::vector<Word> words_of(const std::vector<int>& gamma);

 private:
  const RootDatum* rd_;
  std::map<std::pair<int, int>, WordPoly> rel_;
  mutable std::map<std::vector<int>, std::unique_ptr<Space>> cache_;
};

// One half of U (E side or F side) in its PBW basis, descending root order.
class PBWHalf {
 public:
  PBWHalf(const RootDatum* rd, const SerreIdeal* serre, std::vector<WordPoly> roots);
  int N() const { return static_cast<int>(roots_.size()); }
  const WordPoly& root_word(int k) const { return roots_[k]; }
  const WordPoly& expand(const Exps& m) const;
  const ExpPoly& leftmul(int a, const Exps& m) const;
  ExpPoly mul(const Exps& a, const Exps& b) const;
  ExpPoly mul(const ExpPoly& a, const ExpPoly& b) const;
  ExpPoly from_word(const Word& w) const;
  ExpPoly from_wordpoly(const WordPoly& w) const;
  // E_a E_b for a < b, expressed in PBW monomials.
  const ExpPoly& ls(int a, int b) const;
  std::vector<int> coords(const Exps& m) const;
  static std::vector<Exps> monomials_of(const RootDatum& rd, const std::vector<int>& gamma);

 private:
  const RootDatum* rd_;
  const SerreIdeal* serre_;
  std::vector<WordPoly> roots_;
  mutable std::map<Exps, WordPoly> expand_;
  mutable std::map<std::pair<int, Exps>, ExpPoly> left_;
  mutable std::map<Word, ExpPoly> word_;
  mutable std::map<std::pair<int, int>, ExpPoly> ls_;
  mutable int depth_ = 0;
};

Exps unit_exps(int k, int n = 1);
int top_letter(const Exps& m);  // -1 for the empty monomial

class QGroup {
 public:
  explicit QGroup(RootDatum rd);
  QGroup(const QGroup&) = delete;
  QGroup& operator=(const QGroup&) = delete;

  const RootDatum& rd() const { return rd_; }
  int d() const { return rd_.d(); }
  int rank() const { return rd_.rank; }
  int N() const { return rd_.N(); }
  // q^x for x in (1/d)Z, and v^e.
  QScalar qpow(const Rat& x) const;
  QScalar vpow(int e) const { return QScalar::vpow(e); }
  // q_i = q^{d_i}, q_beta = q^{(beta,beta)/2}
  QScalar qi(int i) const { return vpow(d() * rd_.dsym[i]); }
  QScalar qbeta(int k) const { return vpow(d() * rd_.beta_d[k]); }
  int ei(int i) const { return d() * rd_.dsym[i]; }  // v-exponent of q_i

  // Elements of U.
  UElem one() const { return UElem(this, Mono{}); }
  UElem scalar(const QScalar& c) const { return UElem(this, Mono{}, c); }
  UElem mono(const Mono& m, const QScalar& c = 1) const { return UElem(this, m, c); }
  UElem E(int i) const;
  UElem F(int i) const;
  UElem K(const Weight& w) const;
  UElem Ki(int i, int power = 1) const { return K(power * rd_.alpha(i)); }
  // Root vector E_{beta_k}, F_{beta_k} (0-based k) as PBW elements.
  UElem Eroot(int k, int n = 1) const;
  UElem Froot(int k, int n = 1) const;
  // Divided powers E_{beta_k}^{(n)}.
  UElem Eroot_div(int k, int n) const;
  UElem Froot_div(int k, int n) const;
  // 1-based k, returns (E_beta_k, F_beta_k)
  std::pair<UElem, UElem> root_vector(int k) const;

  UElem mul(const UElem& a, const UElem& b) const;
  UElem mul(std::initializer_list<UElem> xs) const;
  UElem pow(const UElem& a, int n) const;
  UElem commutator(const UElem& a, const UElem& b) const;
  const UElem& ef_elem(const Exps& e, const Exps& f) const;  // E^e F^f in normal form
  UElem mono_mul(const Mono& a, const Mono& b) const;

  UTensor coproduct(const UElem& a) const;
  UTensor tmul(const UTensor& a, const UTensor& b) const;
  UTensor tensor(const UElem& a, const UElem& b) const;
  QScalar counit(const UElem& a) const;
  UElem antipode(const UElem& a) const;
  UElem antipode_inv(const UElem& a) const;
  // m o (f (x) g) applied to a tensor
  UElem multiply_out(const UTensor& t) const;

  UElem braid_T(int i, const UElem& a) const;
  UElem braid_T_inverse(int i, const UElem& a) const;

  // Coefficients in the E·K·F basis: keys read as E^e K_k F^f.
  UElem to_ekf(const UElem& a) const;
  UElem from_ekf(const UElem& a) const;
  UElem ekf_mono(const Mono& m) const;  // E^e K_k F^f expanded in F·K·E

  Weight weight(const Mono& m) const;  // total weight, K part ignored
  Weight eweight(const Exps& e) const { return rd_.weight_of(e); }
  bool is_weight_homogeneous(const UElem& a, Weight* w = nullptr) const;

  // Elements of V.
  VElem vone() const { return VElem(this, VMono{}); }
  VElem X(int i) const;
  VElem Y(int i) const;
  VElem Z(const Weight& w) const;
  VElem vmono(const VMono& m, const QScalar& c = 1) const { return VElem(this, m, c); }
  VElem Xroot(int k, int n = 1) const;
  VElem Yroot(int k, int n = 1) const;
  VElem vmul(const VElem& a, const VElem& b) const;
  VElem vmul(std::initializer_list<VElem> xs) const;
  VElem vpow_elem(const VElem& a, int n) const;
  UElem jmath_geq0(const VElem& v) const;
  UElem jmath_leq0(const VElem& v) const;

  const PBWHalf& plus() const { return *plus_; }
  const PBWHalf& minus() const { return *minus_; }
  const SerreIdeal& serre() const { return *serre_; }

  // Free-algebra layer.
  WElem wmul(const WElem& a, const WElem& b) const;
  WElem wmono_mul(const WMono& a, const WMono& b) const;
  const WElem& wef(const Word& e, const Word& f) const;
  WElem wT(int i, const WElem& x, bool inverse) const;
  UElem from_words(const WElem& x) const;
  Weight word_weight(const Word& w) const;

  std::string str(const UElem& a) const;
  std::string str(const VElem& a) const;
  std::string str(const UTensor& a) const;
  std::string mono_str(const Mono& m) const;

 private:
  RootDatum rd_;
  std::unique_ptr<SerreIdeal> serre_;
  std::unique_ptr<PBWHalf> plus_, minus_;
  std::vector<std::vector<UElem>> comm_;  // [E_b, F_c] in normal form
  mutable std::map<std::pair<Exps, Exps>, UElem> ef_;
  mutable std::map<std::pair<Word, Word>, WElem> wef_;
  mutable std::map<std::tuple<int, bool, int, int>, WElem> wgen_;
  mutable std::map<Mono, UTensor> delta_;
  mutable std::map<std::tuple<int, bool, bool>, UElem> sroot_;  // S or S^-1 of root vectors
  mutable std::map<std::tuple<int, bool, int, bool>, UElem> troot_;
  mutable std::map<Mono, UElem> ekf_;
  mutable std::map<std::pair<int, bool>, UTensor> delta_root_;
  mutable std::map<Word, ExpPoly> from_word_plus_, from_word_minus_;

  const WElem& wgen(int i, bool inverse, int kind, int j) const;
  const UTensor& delta_root(int k, bool is_e) const;
  QScalar inv_qdiff(int i) const;
  UElem root_image(int i, bool inverse, int k, bool is_e) const;
  UElem S_root(int k, bool is_e, bool inverse) const;
  UElem antipode_impl(const UElem& a, bool inverse) const;
  UElem braid_impl(int i, const UElem& a, bool inverse) const;
};

// Scalar q-exponent helpers: v-exponent of q^{(a,b)}.
inline int qexp(const RootDatum& rd, const Weight& a, const Weight& b) { return rd.bil_d(a, b); }

}  // namespace qmanin
