#pragma once
#include <map>
#include <tuple>

#include "qmanin/qalgebra.hpp"

namespace qmanin {

// tau on words: tau(E_{e_1}...E_{e_k}, F_{f_1}...F_{f_m}) by peeling F_{f_1} off with
// tau(x, y1 y2) = (tau x tau)(Delta x, y1 (x) y2). Only the coproduct terms with exactly
// one E in the first leg survive against a single F. S is the scalar type and vp(e)
// returns v^e in it.
template <class S, class VPow>
class WordTau {
 public:
  WordTau(const RootDatum& rd, VPow vp) : rd_(rd), vp_(vp) {
    for (int i = 0; i < rd.rank; ++i) {
      int e = rd.d() * rd.dsym[i];
      inv_.push_back(S(1) / (vp_(-e) - vp_(e)));  // tau(E_i, F_i) = 1/(q_i^-1 - q_i)
    }
  }

  S operator()(const Word& e, const Word& f) {
    if (e.size() != f.size()) return S(0);
    if (f.empty()) return S(1);
    auto key = std::make_pair(e, f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int j = f[0];
    Word ft(f.begin() + 1, f.end());
    S total(0);
    Weight before{};
    for (size_t p = 0; p < e.size(); ++p) {
      if (e[p] == j) {
        Word er = e;
        er.erase(er.begin() + p);
        S sub = (*this)(er, ft);
        if (!is_zero_s(sub)) total += vp_(rd_.bil_d(before, rd_.alpha(j))) * inv_[j] * sub;
      }
      before = before + rd_.alpha(e[p]);
    }
    return memo_[key] = total;
  }

 private:
  static bool is_zero_s(const S& s) { return fzero(s); }
  const RootDatum& rd_;
  VPow vp_;
  std::vector<S> inv_;
  std::map<std::pair<Word, Word>, S> memo_;
};

class Pairing {
 public:
  explicit Pairing(const QGroup& g);
  // Closed PBW formula. x must lie in U^{>=0}, y in U^{<=0}.
  QScalar tau_closed(const UElem& x, const UElem& y) const;
  // Recursion on word length using only the pairing axioms.
  QScalar tau_recursive(const UElem& x, const UElem& y) const;
  // sigma(u+ u0 S(u-), v- v+ v0) = tau(u+, j(v-)) tau(u0, j(v0)) tau(j(v+), u-)
  QScalar sigma(const UElem& u, const VElem& v) const;
  // tau on a single pair of PBW monomials, closed form.
  QScalar tau_mono(const Mono& x, const Mono& y) const;

 private:
  const QGroup& g_;
  struct QVPow {
    QScalar operator()(int e) const { return QScalar::vpow(e); }
  };
  mutable WordTau<QScalar, QVPow> words_;
  mutable std::map<Mono, std::tuple<QScalar, Weight, Exps, UElem>> split_;
  mutable std::map<std::pair<Mono, VMono>, QScalar> sigma_;
  const std::tuple<QScalar, Weight, Exps, UElem>& split(const Mono& ekf) const;
  QScalar sigma_mono(const Mono& ekf, const VMono& v) const;
};

}  // namespace qmanin
