#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmanin/qscalar.hpp"

namespace qmanin {

constexpr int kMaxRank = 4;
constexpr int kMaxRoots = 8;

// Fundamental-weight coordinates; unused slots stay zero.
using Weight = std::array<int, kMaxRank>;
// Exponent vector indexed by positive-root position k = 0..N-1.
using Exps = std::array<uint8_t, kMaxRoots>;

inline Weight operator+(Weight a, const Weight& b) {
  for (int i = 0; i < kMaxRank; ++i) a[i] += b[i];
  return a;
}
inline Weight operator-(Weight a, const Weight& b) {
  for (int i = 0; i < kMaxRank; ++i) a[i] -= b[i];
  return a;
}
inline Weight operator-(Weight a) {
  for (auto& x : a) x = -x;
  return a;
}
inline Weight operator*(int s, Weight a) {
  for (auto& x : a) x *= s;
  return a;
}
inline bool is_zero(const Weight& w) {
  for (int x : w)
    if (x) return false;
  return true;
}
inline int total(const Exps& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

struct RootDatum {
  std::string label;
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // a_ij = 2(a_i,a_j)/(a_i,a_i)
  std::vector<int> dsym;                 // d_i = (a_i,a_i)/2
  int lattice_index = 1;                 // |Lambda/Q|, the d of v = q^(1/d)
  std::vector<std::vector<Rat>> form;    // (w_j, w_k) on fundamental weights
  std::vector<std::vector<int>> form_d;  // lattice_index * (w_j, w_k)
  std::vector<int> w0;                   // 0-based letters of the reduced word
  std::vector<Weight> beta;              // beta_k in fundamental-weight coordinates
  std::vector<std::vector<int>> beta_q;  // beta_k in simple-root coordinates
  std::vector<int> beta_d;               // (beta,beta)/2
  std::vector<Weight> lambda0;           // representatives of Lambda/2Q
  std::vector<std::vector<Rat>> cartan_inv;

  // Type label A1, A2, A3; word letters are 1-based when supplied.
  static RootDatum make(const std::string& label, std::optional<std::vector<int>> w0 = std::nullopt);

  int N() const { return static_cast<int>(beta.size()); }
  int d() const { return lattice_index; }
  Weight alpha(int i) const;
  Weight fundamental(int i) const;
  Rat bilinear(const Weight& a, const Weight& b) const;
  // lattice_index * (a, b), always an integer.
  int bil_d(const Weight& a, const Weight& b) const;
  // (a, alpha_i^vee) for the i-th simple coroot.
  int coroot(const Weight& a, int i) const { return a[i]; }
  Weight reflect(int i, const Weight& a) const;
  // Weight of an exponent vector: sum m_k beta_k.
  Weight weight_of(const Exps& e) const;
  // Simple-root coordinates of a weight in Q (throws if not in Q).
  std::vector<int> to_root_coords(const Weight& a) const;
  Weight from_root_coords(const std::vector<int>& c) const;
  int height(const Weight& a) const;
  // Index k with beta_k = alpha_i.
  int simple_position(int i) const;
  // Class key of Lambda/2Q.
  std::vector<int> class_mod_2Q(const Weight& a) const;
  Weight lambda0_rep(const Weight& a) const;
  // k in 0..n with a - w_k in Q (w_0 = 0).
  int class_mod_Q(const Weight& a) const;
  bool operator==(const RootDatum& o) const { return label == o.label && w0 == o.w0; }
};

// All positive roots by brute-force closure, simple-root coordinates.
std::vector<std::vector<int>> enumerate_positive_roots(const RootDatum& rd);
std::vector<Weight> positive_roots_from_w0(const RootDatum& rd);
// Number of ways to write gamma (simple-root coordinates) as a sum of positive roots.
long kostant_partition(const RootDatum& rd, const std::vector<int>& gamma);
// All gamma in Q+ of height exactly h.
std::vector<std::vector<int>> root_lattice_of_height(int rank, int h);

std::string weight_str(const Weight& w, int rank);

}  // namespace qmanin
