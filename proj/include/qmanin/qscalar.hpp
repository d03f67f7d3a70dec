#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "qmanin/errors.hpp"

namespace qmanin {

using Rat = mpq_class;

// Sum of c[k] v^(low+k). Trimmed: c is empty (zero) or has nonzero ends.
struct Laurent {
  int low = 0;
  std::vector<Rat> c;

  Laurent() = default;
  explicit Laurent(const Rat& a);
  static Laurent monomial(int e, const Rat& a = 1);

  bool is_zero() const { return c.empty(); }
  int high() const { return low + static_cast<int>(c.size()) - 1; }
  Rat coeff(int e) const;
  void trim();

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent scaled(const Rat& a) const;
  Laurent shifted(int e) const;
  // Substitute v -> v^k (k may be negative).
  Laurent dilated(int k) const;
  Rat eval(const Rat& v) const;
  bool operator==(const Laurent& o) const { return low == o.low && c == o.c; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }
  std::string str() const;
};

// Element of F = Q(v), v = q^(1/d). num/den with den a monic polynomial
// in v with nonzero constant term and gcd(num, den) = 1.
class QScalar {
 public:
  QScalar() = default;
  QScalar(long a) : num_(Rat(a)), den_(Rat(1)) {}  // NOLINT
  QScalar(const Rat& a) : num_(a), den_(Rat(1)) {}  // NOLINT
  explicit QScalar(const Laurent& p) : num_(p), den_(Rat(1)) {}
  static QScalar fraction(const Laurent& num, const Laurent& den);
  static QScalar vpow(int e);

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_laurent() const { return den_.c.size() == 1; }

  QScalar operator-() const;
  QScalar inverse() const;
  friend QScalar operator+(const QScalar& a, const QScalar& b);
  friend QScalar operator-(const QScalar& a, const QScalar& b);
  friend QScalar operator*(const QScalar& a, const QScalar& b);
  friend QScalar operator/(const QScalar& a, const QScalar& b);
  QScalar& operator+=(const QScalar& b) { return *this = *this + b; }
  QScalar& operator-=(const QScalar& b) { return *this = *this - b; }
  QScalar& operator*=(const QScalar& b) { return *this = *this * b; }
  QScalar& operator/=(const QScalar& b) { return *this = *this / b; }
  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }
  QScalar pow(int e) const;
  // Value at a rational v; throws DomainError on a pole.
  Rat eval(const Rat& v) const;

  std::string str() const;
  static QScalar parse(const std::string& s);

 private:
  Laurent num_;
  Laurent den_ = Laurent(Rat(1));
};

// Q(zeta_ell) as polynomials modulo the ell-th cyclotomic polynomial.
// ell = 1 is the evaluation at 1, i.e. the field Q.
class CycloScalar {
 public:
  CycloScalar() = default;
  CycloScalar(int ell, const Rat& a);
  static CycloScalar zeta_pow(int ell, long e);
  static const std::vector<Rat>& cyclotomic(int ell);

  int ell() const { return ell_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Rational value when the element lies in Q.
  bool is_rational() const { return c_.size() <= 1; }
  Rat rational() const;

  CycloScalar operator-() const;
  CycloScalar inverse() const;
  friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b);
  CycloScalar& operator+=(const CycloScalar& b) { return *this = *this + b; }
  CycloScalar& operator-=(const CycloScalar& b) { return *this = *this - b; }
  CycloScalar& operator*=(const CycloScalar& b) { return *this = *this * b; }
  // Zero and rational constants compare equal across ell.
  bool operator==(const CycloScalar& o) const {
    if (c_.size() <= 1 && o.c_.size() <= 1) return c_ == o.c_;
    return ell_ == o.ell_ && c_ == o.c_;
  }
  bool operator!=(const CycloScalar& o) const { return !(*this == o); }
  std::string str() const;

  // Reduce a Laurent polynomial in zeta.
  static CycloScalar from_laurent(int ell, const Laurent& p);

 private:
  int ell_ = 1;
  std::vector<Rat> c_;
  void reduce();
};

// [n]_t with t = q^weight = v^(weight*d).
QScalar q_integer(long n, const Rat& weight, int d = 1);
QScalar q_factorial(long m, const Rat& weight, int d = 1);
QScalar q_binomial(long n, long m, const Rat& weight, int d = 1);
// Same quantities for t = v^e directly, as Laurent polynomials.
Laurent qint_v(long n, int e);
Laurent qfact_v(long m, int e);
Laurent qbinom_v(long n, long m, int e);

bool in_local_ring(const QScalar& s, int ell);
CycloScalar eval_at_root(const QScalar& s, int ell);
// hbar = ell (q^ell - q^-ell), q = v^d.
QScalar hbar(int ell, int d);
QScalar divide_by_hbar(const QScalar& s, int ell, int d);

// Standing hypotheses on ell: (a) odd, (b) prime to 3 for G2, (c) prime to |Lambda/Q|.
void validate_ell(int ell, int lattice_index, bool is_g2 = false);

}  // namespace qmanin
