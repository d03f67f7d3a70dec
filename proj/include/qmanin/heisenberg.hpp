#pragma once
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "qmanin/integral.hpp"
#include "qmanin/qalgebra.hpp"

namespace qmanin {

// Sparse vector (or functional) on a tensor power of the vector representation;
// keys encode basis tuples in base n+1, slot 0 most significant.
using SVec = std::map<uint32_t, QScalar>;

// V^{(x)k} for the vector representation V of sl_{n+1}: basis e_0..e_n, E_i e_{i+1} = e_i,
// F_i e_i = e_{i+1}, K_mu e_j = q^{(mu, eps_j)} e_j. The action on tensors uses
// Delta(E) = E (x) 1 + K (x) E and Delta(F) = F (x) K^-1 + 1 (x) F.
class TensorPower {
 public:
  TensorPower(const QGroup& g, int k);
  int degree() const { return k_; }
  uint32_t dim() const { return dim_; }
  int base() const { return base_; }
  Weight weight(uint32_t idx) const { return wt_[idx]; }
  int digit(uint32_t idx, int slot) const;
  uint32_t encode(const std::vector<int>& digits) const;

  // Left action on vectors; right action (r.u)(x) = r(u x) on functionals.
  SVec act_simple(bool is_e, int i, const SVec& v) const;
  SVec ract_simple(bool is_e, int i, const SVec& r) const;
  SVec act_root(bool is_e, int k, const SVec& v) const;
  SVec ract_root(bool is_e, int k, const SVec& r) const;
  SVec act_k(const Weight& mu, const SVec& v) const;
  SVec act(const UElem& u, const SVec& v) const;
  SVec ract(const UElem& u, const SVec& r) const;

 private:
  const QGroup& g_;
  int k_;
  int base_;
  uint32_t dim_;
  std::vector<Weight> wt_;
  std::vector<Weight> vw_;  // weights of e_0..e_n
  mutable std::map<std::tuple<bool, bool, int, uint32_t>, SVec> memo_;
  const SVec& root_on_basis(bool is_e, bool right, int k, uint32_t idx) const;
  SVec simple_on_basis(bool is_e, bool right, int i, uint32_t idx) const;
};

// Matrix coefficient c_{e_A^*, e_B} of V^{(x)deg}; deg 0 is the counit.
struct CKey {
  uint8_t deg = 0;
  uint32_t a = 0;
  uint32_t b = 0;
  auto operator<=>(const CKey&) const = default;
};
using CElem = Lin<CKey>;
using DKey = std::pair<CKey, Mono>;
using DElem = Lin<DKey>;

// Table of pairings f(F^(n) proj_mu E^(m) v): a functional on U^L is zero iff its
// table is, because the chi_mu are independent on U^{L,0}.
using CTabKey = std::tuple<Exps, Exps, Weight>;
using CTable = std::map<CTabKey, QScalar>;
// D-table: DCP monomial of the U factor, then the C table of its coefficient.
using DTable = std::map<std::pair<Mono, CTabKey>, QScalar>;
using SpecTable = std::map<std::pair<Mono, CTabKey>, CycloScalar>;

class CoordAlgebra {
 public:
  explicit CoordAlgebra(const QGroup& g);
  const QGroup& group() const { return g_; }
  const TensorPower& module(int deg) const;
  int n1() const { return g_.rank() + 1; }

  CElem one() const { return CElem(&g_, CKey{}); }
  // c_{e_a^*, e_b} on V (0-based a, b)
  CElem t(int a, int b) const;
  CElem coeff(int deg, uint32_t a, const SVec& v) const;
  CElem mul(const CElem& x, const CElem& y) const;
  CElem left(const UElem& u, const CElem& c) const;   // <u.phi, x> = <phi, x u>
  CElem right(const CElem& c, const UElem& u) const;  // <phi.u, x> = <phi, u x>
  CElem bimodule(const UElem& u1, const CElem& c, const UElem& u2) const { return right(left(u1, c), u2); }
  QScalar pair(const CElem& c, const UElem& u) const;
  QScalar counit(const CElem& c) const;

  CTable table(const CElem& c) const;
  bool equal(const CElem& x, const CElem& y) const { return table(x - y).empty(); }

  DElem d(const CElem& c, const UElem& u) const;
  DElem dc(const CElem& c) const { return d(c, g_.one()); }
  DElem du(const UElem& u) const { return d(one(), u); }
  DElem dmul(const DElem& x, const DElem& y) const;
  DElem dcommutator(const DElem& x, const DElem& y) const { return dmul(x, y) - dmul(y, x); }
  DTable dtable(const DElem& x) const;
  bool dequal(const DElem& x, const DElem& y) const { return dtable(x - y).empty(); }

 private:
  const QGroup& g_;
  mutable std::map<int, std::unique_ptr<TensorPower>> mods_;
  void table_into(int deg, uint32_t a, const SVec& w, const QScalar& scale, CTable& out) const;
};

// Scale every entry, then check A_z-integrality and evaluate; zero entries are dropped.
SpecTable specialize_table(const DTable& t, int ell, const QScalar& scale = QScalar(1));

}  // namespace qmanin
