// Exact arithmetic in the field Q(q) of rational functions of the
// deformation parameter, plus the q-special scalars built on top of it.
//
// A QScalar is stored as num/den with both parts integer Laurent
// polynomials in q. The canonical form is: gcd(num, den) = 1 in Z[q]
// (content included), den has lowest exponent 0 and a positive leading
// coefficient. Two QScalars are equal iff their canonical forms are equal.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qconf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by the zero scalar") {}
};
struct NegativeArgument : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleAtOne : std::domain_error {
  PoleAtOne() : std::domain_error("rational function has a pole at q = 1") {}
};

namespace detail {

// Dense polynomial helpers over Z, coefficients in ascending degree.
using Dense = std::vector<BigInt>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigInt content(const Dense& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    if (c != 0) g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

inline Dense primitive(const Dense& p) {
  BigInt c = content(p);
  if (c == 0 || c == 1) return p;
  Dense r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] / c;
  return r;
}

// Pseudo-remainder of a by b (deg a >= deg b), both nonzero.
inline Dense pseudo_rem(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const BigInt la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

// gcd in Z[q] via the primitive remainder sequence.
inline Dense gcd(const Dense& a0, const Dense& b0) {
  if (a0.empty()) return b0;
  if (b0.empty()) return a0;
  BigInt c = boost::multiprecision::gcd(content(a0), content(b0));
  Dense a = primitive(a0), b = primitive(b0);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = Dense{1};
      break;
    }
    Dense r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  a = primitive(a);
  if (a.back() < 0)
    for (auto& x : a) x = -x;
  for (auto& x : a) x *= c;
  return a;
}

// Exact division a / b in Z[q]; the caller guarantees divisibility.
inline Dense div_exact(Dense a, const Dense& b) {
  if (a.empty()) return {};
  const std::size_t db = b.size() - 1;
  Dense q(a.size() - db);
  for (std::size_t k = a.size(); k-- > db;) {
    if (a[k] == 0) continue;
    BigInt f = a[k] / b.back();
    q[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= f * b[i];
  }
  trim(q);
  return q;
}

}  // namespace detail

/// Integer Laurent polynomial in q, stored sparsely in ascending exponent.
class LaurentPoly {
 public:
  using Term = std::pair<int, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(long long c) {  // NOLINT: implicit from integer constants
    if (c != 0) terms_.emplace_back(0, BigInt(c));
  }
  explicit LaurentPoly(BigInt c) {
    if (c != 0) terms_.emplace_back(0, std::move(c));
  }

  static LaurentPoly monomial(int e, BigInt c = 1) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int low() const { return terms_.front().first; }
  int high() const { return terms_.back().first; }
  const BigInt& leading() const { return terms_.back().second; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }

  BigInt coeff(int e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, int x) { return t.first < x; });
    return (it != terms_.end() && it->first == e) ? it->second : BigInt(0);
  }

  LaurentPoly shifted(int k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  /// q -> q^{-1}
  LaurentPoly inverted() const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;
  }

  BigInt at_one() const {
    BigInt s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.scaled_monomial(a.terms_[0].first, a.terms_[0].second);
    if (b.terms_.size() == 1) return a.scaled_monomial(b.terms_[0].first, b.terms_[0].second);
    const int lo = a.low() + b.low();
    detail::Dense acc(static_cast<std::size_t>(a.high() + b.high() - lo + 1));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    return from_dense(acc, lo);
  }

  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Dense coefficients from the lowest exponent upward.
  detail::Dense to_dense() const {
    if (terms_.empty()) return {};
    detail::Dense d(static_cast<std::size_t>(high() - low() + 1));
    for (const auto& [e, c] : terms_) d[static_cast<std::size_t>(e - low())] = c;
    return d;
  }

  static LaurentPoly from_dense(const detail::Dense& d, int lo) {
    LaurentPoly p;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) p.terms_.emplace_back(lo + static_cast<int>(i), d[i]);
    return p;
  }

  /// Descending exponent order, e.g. "q^2 - 2 + q^-2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
      } else {
        if (mag != 1) os << mag << "*";
        os << "q";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  std::vector<Term> terms_;

  LaurentPoly scaled_monomial(int e, const BigInt& c) const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first + e, t.second * c);
    return r;
  }

  static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool sub) {
    LaurentPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, sub ? BigInt(-j->second) : j->second);
        ++j;
      } else {
        BigInt c = sub ? BigInt(i->second - j->second) : BigInt(i->second + j->second);
        if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }
};

/// An element of Q(q) in canonical form.
class QScalar {
 public:
  QScalar() : num_(), den_(1) {}
  QScalar(long long c) : num_(c), den_(1) {}  // NOLINT: implicit from integer constants
  QScalar(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  QScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
  }

  static QScalar q_pow(int k) { return QScalar(LaurentPoly::monomial(k)); }
  static QScalar q() { return q_pow(1); }
  /// lambda = q - q^{-1}
  static QScalar lambda() { return QScalar(LaurentPoly::monomial(1) - LaurentPoly::monomial(-1)); }
  static QScalar rational(long long n, long long d) { return QScalar(LaurentPoly(n), LaurentPoly(d)); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  /// q -> q^{-1} (the coefficient part of the anti-linear conjugation).
  QScalar inverted() const {
    if (den_.is_one()) return QScalar(num_.inverted());
    return QScalar(num_.inverted(), den_.inverted());
  }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.den_.is_one()) return QScalar(a.num_ + b.num_);
      return QScalar(a.num_ + b.num_, a.den_);
    }
    return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }

  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return QScalar(a.num_ * b.num_);
    // Cross-cancel so the product is canonical without a full gcd.
    auto [an, bd] = cancel(a.num_, b.den_);
    auto [bn, ad] = cancel(b.num_, a.den_);
    QScalar r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.normalize_den();
    return r;
  }

  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.reciprocal();
  }

  QScalar reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    QScalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_den();
    return r;
  }

  QScalar pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    QScalar r(1), base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  QScalar& operator+=(const QScalar& b) { return *this = *this + b; }
  QScalar& operator-=(const QScalar& b) { return *this = *this - b; }
  QScalar& operator*=(const QScalar& b) { return *this = *this * b; }
  QScalar& operator/=(const QScalar& b) { return *this = *this / b; }

  friend bool operator==(const QScalar& a, const QScalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Canonical text form: "num" or "(num)/(den)", descending q-exponents.
  std::string str() const {
    if (den_.is_one()) return num_.str();
    auto wrap = [](const LaurentPoly& p) {
      std::string s = p.str();
      return p.terms().size() > 1 ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const QScalar& s) { return os << s.str(); }

  /// Recomputes the canonical form; idempotent.
  void canonicalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    auto [n, d] = cancel(num_, den_);
    num_ = std::move(n);
    den_ = std::move(d);
    normalize_den();
  }

 private:
  LaurentPoly num_;
  LaurentPoly den_;

  // Divides a and b by their gcd in Z[q, q^-1] (content included).
  static std::pair<LaurentPoly, LaurentPoly> cancel(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return {a, LaurentPoly(1)};
    if (b.is_constant() || a.is_constant()) {
      // Only content can be shared.
      BigInt ca = detail::content(a.to_dense());
      BigInt cb = detail::content(b.to_dense());
      BigInt g = boost::multiprecision::gcd(ca, cb);
      if (g == 1) return {a, b};
      return {div_scalar(a, g), div_scalar(b, g)};
    }
    if (b.terms().size() == 1 || a.terms().size() == 1) {
      BigInt g = boost::multiprecision::gcd(detail::content(a.to_dense()), detail::content(b.to_dense()));
      if (g == 1) return {a, b};
      return {div_scalar(a, g), div_scalar(b, g)};
    }
    detail::Dense da = a.to_dense(), db = b.to_dense();
    detail::Dense g = detail::gcd(da, db);
    if (g.size() == 1 && (g[0] == 1 || g[0] == -1)) return {a, b};
    return {LaurentPoly::from_dense(detail::div_exact(da, g), a.low()),
            LaurentPoly::from_dense(detail::div_exact(db, g), b.low())};
  }

  static LaurentPoly div_scalar(const LaurentPoly& p, const BigInt& g) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) r += LaurentPoly::monomial(e, c / g);
    return r;
  }

  // Moves the lowest q-power of den into num and fixes the sign.
  void normalize_den() {
    if (den_.is_zero()) throw DivisionByZero();
    int lo = den_.low();
    if (lo != 0) {
      den_ = den_.shifted(-lo);
      num_ = num_.shifted(-lo);
    }
    if (den_.leading() < 0) {
      den_ = -den_;
      num_ = -num_;
    }
  }
};

/// [n]_q = (q^n - q^{-n}) / (q - q^{-1}); [-n]_q = -[n]_q.
inline QScalar qint(int n) {
  if (n == 0) return {};
  const int a = n < 0 ? -n : n;
  LaurentPoly p;
  for (int e = -(a - 1); e <= a - 1; e += 2) p += LaurentPoly::monomial(e);
  return QScalar(n < 0 ? -p : p);
}

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, [0]_q! = 1.
inline QScalar qfact(int n) {
  if (n < 0) throw NegativeArgument("qfact: negative argument " + std::to_string(n));
  QScalar r(1);
  for (int k = 2; k <= n; ++k) r *= qint(k);
  return r;
}

/// 1/Gamma_q(p): 1/[p-1]_q! for p >= 1, and 0 for p <= 0.
inline QScalar qgamma_recip(int p) {
  if (p <= 0) return {};
  return qfact(p - 1).reciprocal();
}

enum class Basis { hat, tilde };

inline const char* to_string(Basis b) { return b == Basis::hat ? "hat" : "tilde"; }

/// beta^s (hat) or beta-tilde^s (tilde), the plane-wave normalizers.
inline QScalar qbeta(int s, Basis basis) {
  if (s < 0) throw NegativeArgument("qbeta: negative argument " + std::to_string(s));
  QScalar inv;
  for (int p = 0; p <= s; ++p) {
    const int e = basis == Basis::hat ? (s - p) * (p - 1) + p : (p - s) * (p - 1) + p;
    inv += QScalar::q_pow(e) / (qfact(p) * qfact(s - p));
  }
  return inv.reciprocal();
}

/// d_s = beta^s / beta^{s+1} in the requested basis.
inline QScalar qd(int s, Basis basis) { return qbeta(s, basis) / qbeta(s + 1, basis); }

/// Value at q = 1. Canonical form leaves no common (q-1) factor, so a zero
/// denominator at q = 1 is a genuine pole.
inline Rational limit_q1(const QScalar& a) {
  BigInt d = a.den().at_one();
  if (d == 0) throw PoleAtOne();
  return Rational(a.num().at_one(), d);
}

}  // namespace qconf
