#pragma once
#include <optional>
#include <vector>

#include "qmanin/qscalar.hpp"

namespace qmanin {

inline bool fzero(const QScalar& x) { return x.is_zero(); }
inline bool fzero(const CycloScalar& x) { return x.is_zero(); }
inline bool fzero(const Rat& x) { return x == 0; }
inline QScalar finv(const QScalar& x) { return x.inverse(); }
inline CycloScalar finv(const CycloScalar& x) { return x.inverse(); }
inline Rat finv(const Rat& x) { return 1 / x; }

// Row space kept in reduced echelon form; each row has a unit pivot and
// zeros in every other row's pivot column.
template <class T>
class Echelon {
 public:
  explicit Echelon(int ncols, T zero = T()) : ncols_(ncols), zero_(zero) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  const std::vector<int>& pivots() const { return piv_; }
  const std::vector<std::vector<T>>& rows() const { return rows_; }

  std::vector<T> reduce(std::vector<T> v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const T& f0 = v[piv_[r]];
      if (fzero(f0)) continue;
      T f = f0;
      const auto& row = rows_[r];
      for (int j = 0; j < ncols_; ++j)
        if (!fzero(row[j])) v[j] -= f * row[j];
    }
    return v;
  }

  bool add(std::vector<T> v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < ncols_; ++j)
      if (!fzero(v[j])) {
        p = j;
        break;
      }
    if (p < 0) return false;
    T inv = finv(v[p]);
    for (int j = 0; j < ncols_; ++j)
      if (!fzero(v[j])) v[j] *= inv;
    for (auto& row : rows_) {
      if (fzero(row[p])) continue;
      T f = row[p];
      for (int j = 0; j < ncols_; ++j)
        if (!fzero(v[j])) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

 private:
  int ncols_;
  T zero_;
  std::vector<std::vector<T>> rows_;
  std::vector<int> piv_;
};

template <class T>
int matrix_rank(const std::vector<std::vector<T>>& rows, int ncols) {
  Echelon<T> e(ncols);
  for (const auto& r : rows) e.add(r);
  return e.rank();
}

// Find x with sum_j x_j cols[j] = b; nullopt when inconsistent. Free variables are 0.
template <class T>
std::optional<std::vector<T>> solve_columns(const std::vector<std::vector<T>>& cols, const std::vector<T>& b) {
  int m = static_cast<int>(b.size());
  int n = static_cast<int>(cols.size());
  std::vector<std::vector<T>> a(m, std::vector<T>(n + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = cols[j][i];
    a[i][n] = b[i];
  }
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (!fzero(a[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    T inv = finv(a[r][c]);
    for (int j = c; j <= n; ++j)
      if (!fzero(a[r][j])) a[r][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || fzero(a[i][c])) continue;
      T f = a[i][c];
      for (int j = c; j <= n; ++j)
        if (!fzero(a[r][j])) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (!fzero(a[i][n])) return std::nullopt;
  std::vector<T> x(n);
  for (int i = 0; i < r; ++i) x[pivcol[i]] = a[i][n];
  return x;
}

// Kernel basis of the matrix whose rows are given.
template <class T>
std::vector<std::vector<T>> kernel_basis(const std::vector<std::vector<T>>& rows, int ncols) {
  Echelon<T> e(ncols);
  for (const auto& r : rows) e.add(r);
  std::vector<bool> is_piv(ncols, false);
  for (int p : e.pivots()) is_piv[p] = true;
  std::vector<std::vector<T>> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(ncols);
    v[f] = T(1);
    for (size_t r = 0; r < e.rows().size(); ++r) v[e.pivots()[r]] = -e.rows()[r][f];
    out.push_back(v);
  }
  return out;
}

}  // namespace qmanin
