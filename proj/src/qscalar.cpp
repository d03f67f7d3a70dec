#include "qmanin/qscalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qmanin {

namespace {

using Poly = std::vector<Rat>;  // dense, index = exponent

void ptrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int pdeg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ptrim(r);
  return r;
}

Poly psub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ptrim(r);
  return r;
}

// a = q*b + r with deg r < deg b; b nonzero.
void pdivmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  ptrim(r);
  int db = pdeg(b);
  if (pdeg(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, Rat(0));
  Rat inv = 1 / b.back();
  for (int k = pdeg(r); k >= db; --k) {
    if (r[k] == 0) continue;
    Rat f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
  }
  r.resize(db);
  ptrim(r);
  ptrim(q);
}

void pmonic(Poly& p) {
  if (p.empty() || p.back() == 1) return;
  Rat inv = 1 / p.back();
  for (auto& x : p) x *= inv;
}

Poly pgcd(Poly a, Poly b) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly q, r;
    pdivmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    pmonic(b);
  }
  pmonic(a);
  return a;
}

Poly to_poly(const Laurent& l) { return l.c; }  // exponent offset dropped by caller

Laurent from_poly(Poly p, int low) {
  Laurent r;
  r.low = low;
  r.c = std::move(p);
  r.trim();
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Laurent

Laurent::Laurent(const Rat& a) {
  if (a != 0) c.push_back(a);
}

Laurent Laurent::monomial(int e, const Rat& a) {
  Laurent r(a);
  if (!r.is_zero()) r.low = e;
  return r;
}

Rat Laurent::coeff(int e) const {
  int k = e - low;
  if (k < 0 || k >= static_cast<int>(c.size())) return 0;
  return c[k];
}

void Laurent::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
  size_t z = 0;
  while (z < c.size() && c[z] == 0) ++z;
  if (z > 0) {
    c.erase(c.begin(), c.begin() + static_cast<long>(z));
    low += static_cast<int>(z);
  }
  if (c.empty()) low = 0;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int lo = std::min(a.low, b.low);
  int hi = std::max(a.high(), b.high());
  Laurent r;
  r.low = lo;
  r.c.assign(hi - lo + 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[a.low - lo + i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[b.low - lo + i] += b.c[i];
  r.trim();
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return from_poly(pmul(a.c, b.c), a.low + b.low);
}

Laurent Laurent::scaled(const Rat& a) const {
  if (a == 0) return {};
  Laurent r = *this;
  for (auto& x : r.c) x *= a;
  return r;
}

Laurent Laurent::shifted(int e) const {
  Laurent r = *this;
  if (!r.is_zero()) r.low += e;
  return r;
}

Laurent Laurent::dilated(int k) const {
  if (is_zero()) return {};
  if (k == 0) {
    Rat s = 0;
    for (auto& x : c) s += x;
    return Laurent(s);
  }
  Laurent r;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) r = r + monomial((low + static_cast<int>(i)) * k, c[i]);
  return r;
}

Rat Laurent::eval(const Rat& v) const {
  if (is_zero()) return 0;
  Rat acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
  Rat p = 1;
  Rat base = low >= 0 ? v : Rat(1 / v);
  for (int k = 0; k < std::abs(low); ++k) p *= base;
  return acc * p;
}

std::string Laurent::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    const Rat& a = c[i];
    if (a == 0) continue;
    int e = low + static_cast<int>(i);
    std::string t;
    if (e == 0) {
      t = a.get_str();
    } else {
      std::string vp = e == 1 ? "v" : "v^" + std::to_string(e);
      if (a == 1)
        t = vp;
      else if (a == -1)
        t = "-" + vp;
      else
        t = a.get_str() + "*" + vp;
    }
    if (!out.empty() && t[0] != '-') out += "+";
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------- QScalar

QScalar QScalar::vpow(int e) { return QScalar(Laurent::monomial(e)); }

QScalar QScalar::fraction(const Laurent& num, const Laurent& den) {
  if (den.is_zero()) throw DomainError("division by zero in F");
  QScalar r;
  if (num.is_zero()) return r;
  Laurent n = num.shifted(-den.low);
  Poly d = den.c;
  if (d.back() != 1) {
    Rat inv = 1 / d.back();
    for (auto& x : d) x *= inv;
    n = n.scaled(inv);
  }
  if (d.size() > 1) {
    Poly g = pgcd(to_poly(n), d);
    if (g.size() > 1) {
      Poly q, rem;
      pdivmod(n.c, g, q, rem);
      n = from_poly(q, n.low);
      pdivmod(d, g, q, rem);
      d = q;
    }
  }
  r.num_ = n;
  r.den_ = from_poly(d, 0);
  return r;
}

bool QScalar::is_one() const {
  return is_laurent() && num_.low == 0 && num_.c.size() == 1 && num_.c[0] == 1;
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar QScalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in F");
  return fraction(den_, num_);
}

QScalar operator+(const QScalar& a, const QScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_laurent() && b.is_laurent()) return QScalar(a.num_ + b.num_);
  if (a.den_ == b.den_) return QScalar::fraction(a.num_ + b.num_, a.den_);
  // gcd(a*d + c, d) = gcd(c, d) = 1, so no reduction is needed
  if (a.is_laurent()) {
    QScalar r;
    r.num_ = a.num_ * b.den_ + b.num_;
    r.den_ = b.den_;
    if (r.num_.is_zero()) return QScalar();
    return r;
  }
  if (b.is_laurent()) return b + a;
  return QScalar::fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }

QScalar operator*(const QScalar& a, const QScalar& b) {
  if (a.is_zero() || b.is_zero()) return QScalar();
  if (a.is_laurent() && b.is_laurent()) return QScalar(a.num_ * b.num_);
  if (a.is_laurent() && a.num_.c.size() == 1) {
    QScalar r = b;
    r.num_ = b.num_ * a.num_;
    return r;
  }
  if (b.is_laurent() && b.num_.c.size() == 1) return b * a;
  return QScalar::fraction(a.num_ * b.num_, a.den_ * b.den_);
}

QScalar operator/(const QScalar& a, const QScalar& b) { return a * b.inverse(); }

QScalar QScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  QScalar r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

Rat QScalar::eval(const Rat& v) const {
  Rat d = den_.eval(v);
  if (d == 0) throw DomainError("pole at evaluation point");
  return num_.eval(v) / d;
}

std::string QScalar::str() const {
  std::string s = "(" + num_.str() + ")/";
  if (is_laurent())
    s += "1";
  else
    s += "(" + den_.str() + ")";
  return s;
}

namespace {

Laurent parse_laurent(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ValidationError("empty Laurent polynomial");
  // split into signed terms; a '-' right after '^' belongs to the exponent
  std::vector<std::string> terms;
  std::string cur;
  for (size_t i = 0; i < t.size(); ++i) {
    char ch = t[i];
    if ((ch == '+' || ch == '-') && i > 0 && t[i - 1] != '^') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  terms.push_back(cur);
  Laurent out;
  for (auto term : terms) {
    if (term.empty()) throw ValidationError("malformed term");
    int sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') sign = -1;
      term = term.substr(1);
    }
    size_t vpos = term.find('v');
    Rat coef = 1;
    int e = 0;
    std::string cs = vpos == std::string::npos ? term : term.substr(0, vpos);
    if (!cs.empty() && cs.back() == '*') cs.pop_back();
    if (!cs.empty()) {
      try {
        coef = Rat(cs);
        coef.canonicalize();
      } catch (...) {
        throw ValidationError("bad coefficient '" + cs + "'");
      }
    }
    if (vpos != std::string::npos) {
      std::string rest = term.substr(vpos + 1);
      if (rest.empty()) {
        e = 1;
      } else {
        if (rest[0] != '^') throw ValidationError("bad exponent in '" + term + "'");
        try {
          size_t used = 0;
          e = std::stoi(rest.substr(1), &used);
          if (used != rest.size() - 1) throw 0;
        } catch (...) {
          throw ValidationError("bad exponent in '" + term + "'");
        }
      }
    }
    out = out + Laurent::monomial(e, coef * sign);
  }
  return out;
}

std::string strip_parens(const std::string& s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

QScalar QScalar::parse(const std::string& s) {
  // top-level '/' is the one following the closing parenthesis of the numerator
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty() || t[0] != '(') return QScalar(parse_laurent(t));
  int depth = 0;
  size_t close = std::string::npos;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')' && --depth == 0) {
      close = i;
      break;
    }
  }
  if (close == std::string::npos) throw ValidationError("unbalanced parentheses");
  Laurent num = parse_laurent(t.substr(1, close - 1));
  std::string rest = t.substr(close + 1);
  if (rest.empty()) return QScalar(num);
  if (rest[0] != '/') throw ValidationError("expected '/'");
  Laurent den = parse_laurent(strip_parens(rest.substr(1)));
  return fraction(num, den);
}

// ---------------------------------------------------------------- CycloScalar

static const Poly& cyclo_rec(int n, std::map<int, Poly>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly p(n + 1, Rat(0));
  p[0] = -1;
  p[n] = 1;
  for (int dd = 1; dd < n; ++dd) {
    if (n % dd) continue;
    const Poly& f = cyclo_rec(dd, cache);
    Poly q, r;
    pdivmod(p, f, q, r);
    p = q;
  }
  return cache[n] = p;
}

const std::vector<Rat>& CycloScalar::cyclotomic(int ell) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  if (ell < 1) throw DomainError("cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(mu);
  return cyclo_rec(ell, cache);
}

CycloScalar::CycloScalar(int ell, const Rat& a) : ell_(ell) {
  if (a != 0) c_.push_back(a);
}

void CycloScalar::reduce() {
  const Poly& phi = cyclotomic(ell_);
  int dp = pdeg(phi);
  ptrim(c_);
  for (int k = pdeg(c_); k >= dp; --k) {
    if (c_[k] == 0) continue;
    Rat f = c_[k];
    for (int j = 0; j <= dp; ++j) c_[k - dp + j] -= f * phi[j];
  }
  if (static_cast<int>(c_.size()) > dp) c_.resize(dp);
  ptrim(c_);
}

CycloScalar CycloScalar::from_laurent(int ell, const Laurent& p) {
  CycloScalar r;
  r.ell_ = ell;
  if (p.is_zero()) return r;
  if (ell == 1) return CycloScalar(1, p.eval(1));
  r.c_.assign(ell, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) {
    long e = p.low + static_cast<long>(i);
    long m = ((e % ell) + ell) % ell;
    r.c_[m] += p.c[i];
  }
  r.reduce();
  return r;
}

CycloScalar CycloScalar::zeta_pow(int ell, long e) {
  return from_laurent(ell, Laurent::monomial(static_cast<int>(((e % ell) + ell) % ell)));
}

Rat CycloScalar::rational() const {
  if (!is_rational()) throw DomainError("cyclotomic element is not rational");
  return c_.empty() ? Rat(0) : c_[0];
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

static void same_ell(const CycloScalar& a, const CycloScalar& b) {
  if (a.ell() != b.ell()) throw StructuralError("cyclotomic fields differ");
}

// Rational constants built with the default ell = 1 embed into every Q(zeta).
static CycloScalar promote(const CycloScalar& a, const CycloScalar& b) {
  if (a.ell() != b.ell() && a.ell() == 1 && a.is_rational()) return CycloScalar(b.ell(), a.rational());
  return a;
}

CycloScalar operator+(const CycloScalar& a0, const CycloScalar& b0) {
  if (a0.is_zero()) return b0;
  if (b0.is_zero()) return a0;
  CycloScalar a = promote(a0, b0), b = promote(b0, a0);
  same_ell(a, b);
  CycloScalar r = a;
  if (r.c_.size() < b.c_.size()) r.c_.resize(b.c_.size(), Rat(0));
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  ptrim(r.c_);
  return r;
}

CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) { return a + (-b); }

CycloScalar operator*(const CycloScalar& a0, const CycloScalar& b0) {
  if (a0.is_zero() || b0.is_zero()) return CycloScalar(std::max(a0.ell_, b0.ell_), 0);
  CycloScalar a = promote(a0, b0), b = promote(b0, a0);
  same_ell(a, b);
  CycloScalar r;
  r.ell_ = a.ell_;
  r.c_ = pmul(a.c_, b.c_);
  r.reduce();
  return r;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(zeta)");
  // extended Euclid: s*a + t*phi = 1
  Poly r0 = cyclotomic(ell_), r1 = c_;
  Poly s0, s1{Rat(1)};
  while (!r1.empty()) {
    Poly q, r;
    pdivmod(r0, r1, q, r);
    Poly s = psub(s0, pmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since phi is irreducible
  CycloScalar out;
  out.ell_ = ell_;
  Rat inv = 1 / r0[0];
  for (auto& x : s0) x *= inv;
  out.c_ = s0;
  out.reduce();
  return out;
}

CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) { return a * b.inverse(); }

std::string CycloScalar::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    std::string t;
    if (i == 0)
      t = c_[i].get_str();
    else {
      std::string zp = i == 1 ? "z" : "z^" + std::to_string(i);
      if (c_[i] == 1)
        t = zp;
      else if (c_[i] == -1)
        t = "-" + zp;
      else
        t = c_[i].get_str() + "*" + zp;
    }
    if (!out.empty() && t[0] != '-') out += "+";
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------- q-combinatorics

Laurent qint_v(long n, int e) {
  if (e == 0) return Laurent(Rat(n));
  long m = std::labs(n);
  Laurent r;
  for (long k = 0; k < m; ++k) r = r + Laurent::monomial(static_cast<int>((m - 1 - 2 * k) * e));
  return n < 0 ? -r : r;
}

Laurent qfact_v(long m, int e) {
  if (m < 0) throw DomainError("q-factorial of a negative integer");
  Laurent r(Rat(1));
  for (long k = 2; k <= m; ++k) r = r * qint_v(k, e);
  return r;
}

Laurent qbinom_v(long n, long m, int e) {
  if (m < 0) throw DomainError("q-binomial with negative lower index");
  if (n < 0) {
    Laurent r = qbinom_v(-n + m - 1, m, e);
    return (m % 2) ? -r : r;
  }
  if (m > n) return {};
  // [n,m] = t^m [n-1,m] + t^-(n-m) [n-1,m-1]
  std::vector<Laurent> row{Laurent(Rat(1))};
  for (long k = 1; k <= n; ++k) {
    std::vector<Laurent> next(k + 1);
    for (long j = 0; j <= k; ++j) {
      Laurent a = j < k ? row[j].shifted(static_cast<int>(j * e)) : Laurent();
      Laurent b = j > 0 ? row[j - 1].shifted(static_cast<int>(-(k - j) * e)) : Laurent();
      next[j] = a + b;
    }
    row.swap(next);
  }
  return row[m];
}

static int scaled_exponent(const Rat& weight, int d) {
  Rat x = weight * d;
  x.canonicalize();
  if (x.get_den() != 1) throw MalformedExponent("q^" + weight.get_str() + " is not a power of q^(1/" + std::to_string(d) + ")");
  if (!x.get_num().fits_sint_p()) throw MalformedExponent("exponent overflow");
  return static_cast<int>(x.get_num().get_si());
}

QScalar q_integer(long n, const Rat& weight, int d) { return QScalar(qint_v(n, scaled_exponent(weight, d))); }

QScalar q_factorial(long m, const Rat& weight, int d) { return QScalar(qfact_v(m, scaled_exponent(weight, d))); }

QScalar q_binomial(long n, long m, const Rat& weight, int d) {
  return QScalar(qbinom_v(n, m, scaled_exponent(weight, d)));
}

// ---------------------------------------------------------------- specialization

bool in_local_ring(const QScalar& s, int ell) {
  return !CycloScalar::from_laurent(ell, s.den()).is_zero();
}

CycloScalar eval_at_root(const QScalar& s, int ell) {
  CycloScalar den = CycloScalar::from_laurent(ell, s.den());
  if (den.is_zero()) throw NotInLocalRing("denominator " + s.den().str() + " vanishes at the root of unity");
  CycloScalar num = CycloScalar::from_laurent(ell, s.num());
  if (num.is_zero()) return CycloScalar(ell, 0);
  if (s.is_laurent()) return num;
  return num * den.inverse();
}

QScalar hbar(int ell, int d) {
  Laurent h = Laurent::monomial(d * ell, ell) - Laurent::monomial(-d * ell, ell);
  return QScalar(h);
}

QScalar divide_by_hbar(const QScalar& s, int ell, int d) { return s / hbar(ell, d); }

void validate_ell(int ell, int lattice_index, bool is_g2) {
  if (ell <= 1) throw ConfigError("(a)", "ell must be an odd integer greater than 1 (condition (a))");
  if (ell % 2 == 0) throw ConfigError("(a)", "ell = " + std::to_string(ell) + " is even; condition (a) requires ell odd");
  if (is_g2 && ell % 3 == 0)
    throw ConfigError("(b)", "ell = " + std::to_string(ell) + " is divisible by 3; condition (b) for G2");
  if (std::gcd(ell, lattice_index) != 1)
    throw ConfigError("(c)", "ell = " + std::to_string(ell) + " is not prime to |Lambda/Q| = " +
                                 std::to_string(lattice_index) + "; condition (c)");
}

}  // namespace qmanin
