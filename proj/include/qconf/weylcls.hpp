// Classical (q = 1) index-form tensors for linear conformal gravity and
// Maxwell theory, and their translation to helicity polynomials in z, zbar.
//
// Conventions: eta = diag(+1,-1,-1,-1), eps_{0123} = +1,
// x± = x0 ± x3, v = x1 - i x2, vbar = x1 + i x2.

#pragma once

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qconf/coeff.hpp"
#include "qconf/eqlib.hpp"
#include "qconf/fieldspace.hpp"

namespace qconf {

// ---------------------------------------------------------------------------
// Gaussian rationals

struct GRat {
  Rational re{0}, im{0};

  GRat() = default;
  GRat(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  GRat(int r) : re(r) {}

  static GRat i() { return GRat(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GRat conj() const { return GRat(re, -im); }

  friend GRat operator+(const GRat& a, const GRat& b) { return GRat(a.re + b.re, a.im + b.im); }
  friend GRat operator-(const GRat& a, const GRat& b) { return GRat(a.re - b.re, a.im - b.im); }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GRat operator/(const GRat& a, const GRat& b) {
    const Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw DivisionByZero();
    return a * b.conj() * GRat(Rational(1) / n);
  }
  GRat operator-() const { return GRat(-re, -im); }
  GRat& operator+=(const GRat& b) { return *this = *this + b; }
  friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }

  std::string str() const {
    auto r = [](const Rational& x) {
      std::ostringstream o;
      o << x;
      return o.str();
    };
    if (im == 0) return r(re);
    if (re == 0) return r(im) + "i";
    return "(" + r(re) + (im > 0 ? "+" : "") + r(im) + "i)";
  }
};

// ---------------------------------------------------------------------------
// Sparse commutative polynomials

template <int N>
class SparsePoly {
 public:
  using Mono = std::array<int, N>;
  using Terms = std::map<Mono, GRat>;

  SparsePoly() = default;
  SparsePoly(const GRat& c) {  // NOLINT: constants convert implicitly
    if (!c.is_zero()) terms_[Mono{}] = c;
  }

  static SparsePoly var(int i) {
    SparsePoly p;
    Mono m{};
    m[static_cast<std::size_t>(i)] = 1;
    p.terms_[m] = GRat(1);
    return p;
  }
  static SparsePoly monomial(const Mono& m, const GRat& c) {
    SparsePoly p;
    p.add(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Mono& m, const GRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  SparsePoly operator-() const { return SparsePoly() - *this; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m;
        for (int i = 0; i < N; ++i) m[i] = ma[i] + mb[i];
        r.add(m, ca * cb);
      }
    return r;
  }
  friend SparsePoly operator*(const GRat& s, const SparsePoly& a) { return SparsePoly(s) * a; }
  SparsePoly& operator+=(const SparsePoly& b) { return *this = *this + b; }
  SparsePoly& operator-=(const SparsePoly& b) { return *this = *this - b; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  SparsePoly pow(int e) const {
    SparsePoly r(GRat(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  SparsePoly diff(int i) const {
    SparsePoly r;
    for (const auto& [m, c] : terms_) {
      const int e = m[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      Mono nm = m;
      --nm[static_cast<std::size_t>(i)];
      r.add(nm, c * GRat(e));
    }
    return r;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  /// Coefficient of a monomial.
  GRat coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GRat() : it->second;
  }

  std::string str(const std::array<const char*, N>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += c.str();
      for (int i = 0; i < N; ++i)
        if (m[i] > 0) out += std::string("*") + names[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Polynomial in the Minkowski coordinates x0..x3.
using XPoly = SparsePoly<4>;
/// Polynomial in (z, zbar, v, x-, x+, vbar); the exponent vector is a Key.
using LPoly = SparsePoly<6>;

inline const std::array<const char*, 4>& xnames() {
  static const std::array<const char*, 4> n{"x0", "x1", "x2", "x3"};
  return n;
}
inline const std::array<const char*, 6>& lnames() {
  static const std::array<const char*, 6> n{"z", "zb", "v", "x-", "x+", "vb"};
  return n;
}

inline const std::array<int, 4>& eta() {
  static const std::array<int, 4> e{1, -1, -1, -1};
  return e;
}

/// eps with eps_{0123} = +1.
inline int levi_civita(int a, int b, int c, int d) {
  std::array<int, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) sign = -sign;
  return sign;
}

// ---------------------------------------------------------------------------
// Polynomial strings: "3/2*x0^2*x1 - i*(x3 + 1)"

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline XPoly parse_xpoly(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw ParseError("polynomial '" + text + "': " + what + " at offset " + std::to_string(pos));
  };
  std::function<XPoly()> expr;
  auto read_int = [&]() -> BigInt {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return BigInt(text.substr(start, pos - start));
  };
  auto primary = [&]() -> XPoly {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      XPoly p = expr();
      skip();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt n = read_int();
      Rational r(n);
      skip();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        skip();
        BigInt d = read_int();
        if (d == 0) fail("zero denominator");
        r = Rational(n, d);
      }
      return XPoly(GRat(r));
    }
    if (c == 'i') {
      ++pos;
      return XPoly(GRat::i());
    }
    if (c == 'x') {
      ++pos;
      if (pos >= text.size() || text[pos] < '0' || text[pos] > '3') fail("expected x0..x3");
      return XPoly::var(text[pos++] - '0');
    }
    fail(std::string("unexpected '") + c + "'");
    return {};
  };
  auto power = [&]() -> XPoly {
    XPoly b = primary();
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      BigInt e = read_int();
      if (e > 64) fail("exponent too large");
      return b.pow(static_cast<int>(e));
    }
    return b;
  };
  auto unary = [&]() -> XPoly {
    skip();
    bool neg = false;
    while (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      if (text[pos] == '-') neg = !neg;
      ++pos;
      skip();
    }
    XPoly p = power();
    return neg ? -p : p;
  };
  auto term = [&]() -> XPoly {
    XPoly p = unary();
    for (;;) {
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        p = p * unary();
      } else {
        return p;
      }
    }
  };
  expr = [&]() -> XPoly {
    XPoly p = term();
    for (;;) {
      skip();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        p = p + term();
      } else if (pos < text.size() && text[pos] == '-') {
        ++pos;
        p = p - term();
      } else {
        return p;
      }
    }
  };
  XPoly p = expr();
  skip();
  if (pos != text.size()) fail("trailing input");
  return p;
}

// ---------------------------------------------------------------------------
// Coordinate map

/// Substitute x0 = (x+ + x-)/2, x3 = (x+ - x-)/2, x1 = (v + vbar)/2,
/// x2 = i(v - vbar)/2.
inline LPoly coord_map(const XPoly& p) {
  const GRat half(Rational(1, 2));
  const LPoly v = LPoly::var(static_cast<int>(Var::v)), xm = LPoly::var(static_cast<int>(Var::minus)),
              xp = LPoly::var(static_cast<int>(Var::plus)), vb = LPoly::var(static_cast<int>(Var::vbar));
  const std::array<LPoly, 4> img{half * (xp + xm), half * (v + vb), half * GRat::i() * (v - vb), half * (xp - xm)};
  LPoly out;
  for (const auto& [m, c] : p.terms()) {
    LPoly t(c);
    for (int i = 0; i < 4; ++i) t = t * img[static_cast<std::size_t>(i)].pow(m[static_cast<std::size_t>(i)]);
    out += t;
  }
  return out;
}

/// Inverse substitution; fails if p depends on z or zbar.
inline XPoly coord_unmap(const LPoly& p) {
  const XPoly x0 = XPoly::var(0), x1 = XPoly::var(1), x2 = XPoly::var(2), x3 = XPoly::var(3);
  const GRat i = GRat::i();
  // v, x-, x+, vbar
  const std::array<XPoly, 4> img{x1 - i * x2, x0 - x3, x0 + x3, x1 + i * x2};
  XPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (m[0] != 0 || m[1] != 0) throw std::invalid_argument("coord_unmap: helicity variables present");
    XPoly t(c);
    for (int k = 0; k < 4; ++k) t = t * img[static_cast<std::size_t>(k)].pow(m[static_cast<std::size_t>(k + 2)]);
    out += t;
  }
  return out;
}

/// Box = d0^2 - d1^2 - d2^2 - d3^2.
inline XPoly box(const XPoly& p) {
  return p.diff(0).diff(0) - p.diff(1).diff(1) - p.diff(2).diff(2) - p.diff(3).diff(3);
}

/// Apply an operator at q = 1 to a polynomial in (z, zbar, v, x-, x+, vbar).
inline LPoly apply_classical(const OpExpr& op, const LPoly& p) {
  LPoly out;
  for (const auto& [k, c] : p.terms())
    for (const auto& [nk, r] : limit_q1_image(op, k)) out.add(nk, c * GRat(r));
  return out;
}

/// Coefficient of z^a zbar^b, as a polynomial in the coordinates.
inline LPoly helicity_coeff(const LPoly& p, int a, int b) {
  LPoly out;
  for (const auto& [m, c] : p.terms())
    if (m[0] == a && m[1] == b) {
      Key k = m;
      k[0] = k[1] = 0;
      out.add(k, c);
    }
  return out;
}

inline LPoly zmono(int a, int b) { return LPoly::monomial(Key{a, b, 0, 0, 0, 0}, GRat(1)); }

// ---------------------------------------------------------------------------
// Tensors

struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAntisymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SymmetryViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SymTensor2 {
  std::array<std::array<XPoly, 4>, 4> c{};

  XPoly& operator()(int m, int n) { return c[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; }
  const XPoly& operator()(int m, int n) const { return c[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; }

  bool is_symmetric() const {
    for (int m = 0; m < 4; ++m)
      for (int n = m + 1; n < 4; ++n)
        if (!((*this)(m, n) == (*this)(n, m))) return false;
    return true;
  }
  bool is_antisymmetric() const {
    for (int m = 0; m < 4; ++m)
      for (int n = m; n < 4; ++n)
        if (!((*this)(m, n) == -(*this)(n, m))) return false;
    return true;
  }
  XPoly trace() const {
    XPoly t;
    for (int m = 0; m < 4; ++m) t += GRat(eta()[static_cast<std::size_t>(m)]) * (*this)(m, m);
    return t;
  }
  bool is_zero() const {
    for (const auto& row : c)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
  int degree() const {
    int d = 0;
    for (const auto& row : c)
      for (const auto& e : row) d = std::max(d, e.degree());
    return d;
  }
  friend bool operator==(const SymTensor2& a, const SymTensor2& b) { return a.c == b.c; }
};

/// Rank-4 tensor with lower indices.
struct Riemann4 {
  std::array<XPoly, 256> c{};

  static std::size_t idx(int a, int b, int s, int t) {
    return static_cast<std::size_t>(((a * 4 + b) * 4 + s) * 4 + t);
  }
  XPoly& operator()(int a, int b, int s, int t) { return c[idx(a, b, s, t)]; }
  const XPoly& operator()(int a, int b, int s, int t) const { return c[idx(a, b, s, t)]; }

  bool antisymmetric() const {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t) {
            const XPoly& x = (*this)(a, b, s, t);
            if (!(x == -(*this)(b, a, s, t)) || !(x == -(*this)(a, b, t, s))) return false;
          }
    return true;
  }
  bool pair_symmetric() const {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t)
            if (!((*this)(a, b, s, t) == (*this)(s, t, a, b))) return false;
    return true;
  }
  bool bianchi() const {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t)
            if (!((*this)(a, b, s, t) + (*this)(a, s, t, b) + (*this)(a, t, b, s)).is_zero()) return false;
    return true;
  }
  /// eta^{as} C_{abst} = 0 for all b, t.
  bool traceless() const {
    for (int b = 0; b < 4; ++b)
      for (int t = 0; t < 4; ++t) {
        XPoly tr;
        for (int a = 0; a < 4; ++a) tr += GRat(eta()[static_cast<std::size_t>(a)]) * (*this)(a, b, a, t);
        if (!tr.is_zero()) return false;
      }
    return true;
  }
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
};

/// Linearized Riemann tensor of g = eta + h.
inline Riemann4 linearized_riemann(const SymTensor2& h) {
  if (!h.is_symmetric()) throw NotSymmetric("linearized_riemann: h is not symmetric");
  Riemann4 r;
  const GRat half(Rational(1, 2));
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          r(m, n, s, t) = half * (h(n, s).diff(m).diff(t) + h(m, t).diff(n).diff(s) - h(n, t).diff(m).diff(s) -
                                  h(m, s).diff(n).diff(t));
  return r;
}

/// Weyl tensor of g = eta + h at linear order.
inline Riemann4 linearized_weyl(const SymTensor2& h) {
  const Riemann4 r = linearized_riemann(h);
  SymTensor2 ric;
  for (int n = 0; n < 4; ++n)
    for (int t = 0; t < 4; ++t)
      for (int m = 0; m < 4; ++m) ric(n, t) += GRat(eta()[static_cast<std::size_t>(m)]) * r(m, n, m, t);
  XPoly scal;
  for (int n = 0; n < 4; ++n) scal += GRat(eta()[static_cast<std::size_t>(n)]) * ric(n, n);
  auto g = [](int a, int b) { return a == b ? GRat(eta()[static_cast<std::size_t>(a)]) : GRat(0); };
  const GRat half(Rational(1, 2)), sixth(Rational(1, 6));
  Riemann4 c;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          c(m, n, s, t) = r(m, n, s, t) -
                          half * (g(m, s) * ric(n, t) + g(n, t) * ric(m, s) - g(m, t) * ric(n, s) -
                                  g(n, s) * ric(m, t)) +
                          sixth * (g(m, s) * g(n, t) - g(m, t) * g(n, s)) * scal;
  return c;
}

/// d^nu d^tau C_{mu nu sigma tau}.
inline SymTensor2 weyl_double_divergence(const Riemann4& c) {
  SymTensor2 out;
  for (int m = 0; m < 4; ++m)
    for (int s = 0; s < 4; ++s)
      for (int n = 0; n < 4; ++n)
        for (int t = 0; t < 4; ++t) {
          const int sg = eta()[static_cast<std::size_t>(n)] * eta()[static_cast<std::size_t>(t)];
          out(m, s) += GRat(sg) * c(m, n, s, t).diff(n).diff(t);
        }
  return out;
}

inline SymTensor2 weyl_equations_index(const SymTensor2& h) { return weyl_double_divergence(linearized_weyl(h)); }

// ---------------------------------------------------------------------------
// Dictionaries

struct WeylComponents {
  std::array<XPoly, 10> C{};
  std::array<XPoly, 5> Cplus{}, Cminus{};
  std::array<std::array<XPoly, 3>, 3> Tprime{};
};

/// The nine primed components of a symmetric tensor, indexed by the powers
/// (a, b) of z, zbar.
inline std::array<std::array<XPoly, 3>, 3> prime_dictionary(const SymTensor2& t) {
  const GRat i = GRat::i();
  std::array<std::array<XPoly, 3>, 3> p{};
  p[2][2] = t(0, 0) + GRat(2) * t(0, 3) + t(3, 3);
  p[1][1] = t(0, 0) - t(3, 3);
  p[0][0] = t(0, 0) - GRat(2) * t(0, 3) + t(3, 3);
  p[2][1] = t(0, 1) + i * t(0, 2) + t(1, 3) + i * t(2, 3);
  p[1][2] = t(0, 1) - i * t(0, 2) + t(1, 3) - i * t(2, 3);
  p[1][0] = t(0, 1) + i * t(0, 2) - t(1, 3) - i * t(2, 3);
  p[0][1] = t(0, 1) - i * t(0, 2) - t(1, 3) + i * t(2, 3);
  p[2][0] = t(1, 1) + GRat(2) * i * t(1, 2) - t(2, 2);
  p[0][2] = t(1, 1) - GRat(2) * i * t(1, 2) - t(2, 2);
  return p;
}

/// Printed reading transcribes the component dictionary verbatim. Repaired flips the sign of
/// the C3 term in C±_0 and C±_4, which the calibration against the indexless
/// route requires. The C+_3 factor 8 is kept in both readings.
inline WeylComponents dictionaries(const Riemann4& c, const SymTensor2& t, Reading reading = Reading::printed) {
  if (!c.antisymmetric() || !c.pair_symmetric()) throw SymmetryViolation("dictionaries: tensor lacks Weyl symmetries");
  WeylComponents w;
  auto& C = w.C;
  C[0] = c(0, 1, 2, 3);
  C[1] = c(2, 1, 2, 1);
  C[2] = c(0, 2, 0, 2);
  C[3] = c(3, 0, 1, 2);
  C[4] = c(2, 0, 2, 1);
  C[5] = c(1, 0, 1, 2);
  C[6] = c(2, 0, 2, 3);
  C[7] = c(3, 1, 3, 2);
  C[8] = c(2, 1, 2, 3);
  C[9] = c(1, 2, 1, 3);
  const GRat i = GRat::i(), half(Rational(1, 2));
  const GRat h3 = reading == Reading::printed ? half : -half;
  w.Cplus[0] = C[2] - half * C[1] - C[6] + i * (C[0] + h3 * C[3] + C[7]);
  w.Cplus[1] = GRat(2) * (C[4] - C[8] + i * (C[9] - C[5]));
  w.Cplus[2] = GRat(3) * (C[1] - i * C[3]);
  w.Cplus[3] = GRat(8) * (C[4] + C[8] + i * (C[9] + C[5]));
  w.Cplus[4] = C[2] - half * C[1] + C[6] + i * (C[0] + h3 * C[3] - C[7]);
  w.Cminus[0] = C[2] - half * C[1] - C[6] - i * (C[0] + h3 * C[3] + C[7]);
  w.Cminus[1] = GRat(2) * (C[4] - C[8] - i * (C[9] - C[5]));
  w.Cminus[2] = GRat(3) * (C[1] + i * C[3]);
  w.Cminus[3] = GRat(2) * (C[4] + C[8] - i * (C[9] + C[5]));
  w.Cminus[4] = C[2] - half * C[1] + C[6] - i * (C[0] + h3 * C[3] - C[7]);
  w.Tprime = prime_dictionary(t);
  return w;
}

/// C+(z) = sum_k z^k C+_k, in light-cone coordinates.
inline LPoly cplus_poly(const WeylComponents& w) {
  LPoly out;
  for (int k = 0; k < 5; ++k) out += zmono(k, 0) * coord_map(w.Cplus[static_cast<std::size_t>(k)]);
  return out;
}
inline LPoly cminus_poly(const WeylComponents& w) {
  LPoly out;
  for (int k = 0; k < 5; ++k) out += zmono(0, k) * coord_map(w.Cminus[static_cast<std::size_t>(k)]);
  return out;
}
/// G(z, zbar) = sum z^a zbar^b G'_{ab} for a symmetric tensor G (T or h).
/// Repaired reading weights G'_{ab} by binom(2,a) binom(2,b), which makes the
/// polynomial equal to G_{mu nu} n^mu n^nu for the null vector
/// n = z zbar (1,0,0,1) + z (0,1,i,0) + zbar (0,1,-i,0) + (1,0,0,-1).
inline LPoly helicity_poly(const SymTensor2& t, Reading reading = Reading::printed) {
  const auto p = prime_dictionary(t);
  static constexpr std::array<int, 3> binom{1, 2, 1};
  LPoly out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const int w = reading == Reading::printed ? 1 : binom[static_cast<std::size_t>(a)] * binom[static_cast<std::size_t>(b)];
      out += GRat(w) * zmono(a, b) * coord_map(p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
  return out;
}

struct MaxwellHelicity {
  LPoly Fplus, Fminus, J0;
};

/// Helicity constituents of an antisymmetric field strength and a current.
inline MaxwellHelicity maxwell_dictionary(const SymTensor2& F, const std::array<XPoly, 4>& J) {
  if (!F.is_antisymmetric()) throw NotAntisymmetric("maxwell_dictionary: F is not antisymmetric");
  const GRat i = GRat::i(), half(Rational(1, 2));
  std::array<XPoly, 4> fp{}, fm{};
  for (int k = 1; k <= 3; ++k) {
    XPoly dual;
    for (int l = 1; l <= 3; ++l)
      for (int m = 1; m <= 3; ++m) {
        const int e = levi_civita(0, k, l, m);
        if (e != 0) dual += GRat(e) * F(l, m);
      }
    fp[static_cast<std::size_t>(k)] = F(k, 0) + half * i * dual;
    fm[static_cast<std::size_t>(k)] = F(k, 0) - half * i * dual;
  }
  MaxwellHelicity out;
  out.Fplus = zmono(2, 0) * coord_map(fp[1] + i * fp[2]) - GRat(2) * zmono(1, 0) * coord_map(fp[3]) -
              coord_map(fp[1] - i * fp[2]);
  out.Fminus = zmono(0, 2) * coord_map(fm[1] - i * fm[2]) - GRat(2) * zmono(0, 1) * coord_map(fm[3]) -
               coord_map(fm[1] + i * fm[2]);
  out.J0 = zmono(1, 1) * coord_map(J[0] + J[3]) + zmono(1, 0) * coord_map(J[1] + i * J[2]) +
           zmono(0, 1) * coord_map(J[1] - i * J[2]) + coord_map(J[0] - J[3]);
  return out;
}

/// J_nu = d^mu F_{mu nu}.
inline std::array<XPoly, 4> maxwell_divergence(const SymTensor2& F) {
  std::array<XPoly, 4> J{};
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) J[static_cast<std::size_t>(n)] += GRat(eta()[static_cast<std::size_t>(m)]) * F(m, n).diff(m);
  return J;
}

/// F_{mu nu} = d_mu A_nu - d_nu A_mu.
inline SymTensor2 field_strength(const std::array<XPoly, 4>& A) {
  SymTensor2 F;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) F(m, n) = A[static_cast<std::size_t>(n)].diff(m) - A[static_cast<std::size_t>(m)].diff(n);
  return F;
}

// ---------------------------------------------------------------------------
// Seeds

/// Random symmetric eta-traceless seed with integer coefficients in [-3, 3]
/// and total degree <= max_degree.
inline SymTensor2 random_traceless_seed(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::array<int, 4>> monos;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c)
        for (int d = 0; a + b + c + d <= max_degree; ++d) monos.push_back({a, b, c, d});
  auto rnd = [&] {
    XPoly p;
    for (const auto& m : monos) p.add(m, GRat(coef(rng)));
    return p;
  };
  SymTensor2 h;
  for (int m = 0; m < 4; ++m)
    for (int n = m; n < 4; ++n) {
      if (m == 0 && n == 0) continue;
      h(m, n) = rnd();
      h(n, m) = h(m, n);
    }
  h(0, 0) = h(1, 1) + h(2, 2) + h(3, 3);
  return h;
}

/// {"h": {"mu,nu": "polynomial"}}; missing entries are 0, the symmetric
/// partner is filled in, and conflicting partners are rejected.
inline SymTensor2 parse_seed(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("h") || !j["h"].is_object()) throw ParseError("seed: expected {\"h\": {...}}");
  SymTensor2 h;
  std::array<std::array<bool, 4>, 4> set{};
  for (const auto& [key, val] : j["h"].items()) {
    int m = -1, n = -1;
    char comma = 0;
    std::istringstream in(key);
    if (!(in >> m >> comma >> n) || comma != ',' || m < 0 || m > 3 || n < 0 || n > 3)
      throw ParseError("seed: bad index pair '" + key + "'");
    if (!val.is_string()) throw ParseError("seed: entry '" + key + "' is not a string");
    XPoly p = parse_xpoly(val.get<std::string>());
    auto put = [&](int a, int b) {
      if (set[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] && !(h(a, b) == p))
        throw NotSymmetric("seed: entries " + key + " and its transpose differ");
      h(a, b) = p;
      set[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    };
    put(m, n);
    put(n, m);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Index versus indexless calibration

namespace detail {

/// Fold a proportionality constant for target = c * source into `slot`.
inline bool fold_ratio(const LPoly& target, const LPoly& source, std::optional<GRat>& slot) {
  if (source.is_zero()) return target.is_zero();
  if (!slot) {
    const auto& [m, c] = *source.terms().begin();
    slot = target.coeff(m) / c;
  }
  return target == LPoly(*slot) * source;
}

inline bool only_z(const LPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (m[1] != 0) return false;
  return true;
}
inline bool only_zbar(const LPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (m[0] != 0) return false;
  return true;
}

inline std::string opt_str(const std::optional<GRat>& g) { return g ? g->str() : "undetermined"; }

}  // namespace detail

/// Per-component constants c_k with C±_k = c_k * (coefficient k of the
/// indexless image of h).
struct CalibrationReport {
  Reading reading = Reading::printed;
  int n = 2;
  /// Which indexless operator's image is matched with C+ (and with C-).
  std::string plus_route, minus_route;
  std::array<std::optional<GRat>, 5> plus_constants{}, minus_constants{};
  bool plus_consistent = true, minus_consistent = true;
  /// Per component: one ratio fits every seed.
  std::array<bool, 5> plus_fits{true, true, true, true, true}, minus_fits{true, true, true, true, true};
  /// The paired image carries the wrong variable (z for C-, zbar for C+).
  bool plus_leak = false, minus_leak = false;
  int seeds = 0;

  bool consistent() const { return plus_consistent && minus_consistent && !plus_leak && !minus_leak; }

  /// The per-k ratio between the minus and plus constants; a uniform set
  /// would give 1 everywhere.
  std::array<std::optional<GRat>, 5> asymmetry() const {
    std::array<std::optional<GRat>, 5> out{};
    for (std::size_t k = 0; k < 5; ++k)
      if (plus_fits[k] && minus_fits[k] && plus_constants[k] && minus_constants[k] && !plus_constants[k]->is_zero())
        out[k] = *minus_constants[k] / *plus_constants[k];
    return out;
  }

  std::string constant_str(bool plus, std::size_t k) const {
    if (!(plus ? plus_fits : minus_fits)[k]) return "inconsistent";
    return detail::opt_str((plus ? plus_constants : minus_constants)[k]);
  }

  std::string summary() const {
    std::ostringstream o;
    o << "C+ <- " << plus_route << " [";
    for (std::size_t k = 0; k < 5; ++k) o << (k ? ", " : "") << constant_str(true, k);
    o << "]" << (plus_consistent && !plus_leak ? "" : " inconsistent") << "; C- <- " << minus_route << " [";
    for (std::size_t k = 0; k < 5; ++k) o << (k ? ", " : "") << constant_str(false, k);
    o << "]" << (minus_consistent && !minus_leak ? "" : " inconsistent");
    return o.str();
  }
};

/// Route A: linearized Weyl tensor through the component dictionary to C±_k. Route B: the
/// indexless operators of parameter n applied to h(z, zbar). The operator
/// whose image depends on z alone is paired with C+, the one whose image
/// depends on zbar alone with C-; the pairing is fixed on the first seed with
/// a nonzero image.
inline CalibrationReport index_vs_indexless(const std::vector<SymTensor2>& seeds, int n = 2,
                                            Reading reading = Reading::printed) {
  CalibrationReport rep;
  rep.reading = reading;
  rep.n = n;
  const OpExpr ip = eq::weyl(Sign::plus, n, false), im = eq::weyl(Sign::minus, n, false);
  std::optional<bool> plus_via_plus;
  for (const auto& h : seeds) {
    ++rep.seeds;
    const WeylComponents w = dictionaries(linearized_weyl(h), SymTensor2{}, reading);
    const LPoly hz = helicity_poly(h, reading);
    const LPoly a = apply_classical(ip, hz), b = apply_classical(im, hz);
    if (!plus_via_plus && !(a.is_zero() && b.is_zero()))
      plus_via_plus = a.is_zero() ? !detail::only_z(b) : detail::only_z(a);
    const bool pvp = plus_via_plus.value_or(true);
    const LPoly& for_plus = pvp ? a : b;
    const LPoly& for_minus = pvp ? b : a;
    if (!detail::only_z(for_plus)) rep.plus_leak = true;
    if (!detail::only_zbar(for_minus)) rep.minus_leak = true;
    for (std::size_t k = 0; k < 5; ++k) {
      const int kk = static_cast<int>(k);
      if (!detail::fold_ratio(coord_map(w.Cplus[k]), helicity_coeff(for_plus, kk, 0), rep.plus_constants[k]))
        rep.plus_consistent = rep.plus_fits[k] = false;
      if (!detail::fold_ratio(coord_map(w.Cminus[k]), helicity_coeff(for_minus, 0, kk), rep.minus_constants[k]))
        rep.minus_consistent = rep.minus_fits[k] = false;
    }
    const std::string sn = std::to_string(n);
    rep.plus_route = pvp ? "I+(" + sn + ")" : "I-(" + sn + ")";
    rep.minus_route = pvp ? "I-(" + sn + ")" : "I+(" + sn + ")";
  }
  return rep;
}

/// Constants c_ab with c_ab * T'_ab = coefficient of z^a zbar^b in
/// I±(4) C±, for T the double divergence of the linearized Weyl tensor.
struct EquationCalibration {
  Reading reading = Reading::printed;
  Rational cplus3_scale{1};
  std::array<std::array<std::optional<GRat>, 3>, 3> plus{}, minus{};
  bool plus_consistent = true, minus_consistent = true;
  int seeds = 0;

  bool consistent() const { return plus_consistent && minus_consistent; }
  /// A single constant shared by every slot of both equations, if any.
  std::optional<GRat> uniform() const {
    std::optional<GRat> u;
    for (const auto* tbl : {&plus, &minus})
      for (const auto& row : *tbl)
        for (const auto& c : row) {
          if (!c) continue;
          if (u && !(*u == *c)) return std::nullopt;
          u = c;
        }
    return consistent() ? u : std::nullopt;
  }
};

/// Seeds should have degree 4 so that T is nonzero. cplus3_scale multiplies
/// C+_3 before the operator is applied (1 keeps the printed factor 8).
inline EquationCalibration weyl_equation_calibration(const std::vector<SymTensor2>& seeds,
                                                     Reading reading = Reading::printed,
                                                     const Rational& cplus3_scale = Rational(1)) {
  EquationCalibration rep;
  rep.reading = reading;
  rep.cplus3_scale = cplus3_scale;
  const OpExpr ip = eq::weyl(Sign::plus, 4, false), im = eq::weyl(Sign::minus, 4, false);
  for (const auto& h : seeds) {
    ++rep.seeds;
    const Riemann4 c = linearized_weyl(h);
    const SymTensor2 t = weyl_double_divergence(c);
    WeylComponents w = dictionaries(c, t, reading);
    w.Cplus[3] = GRat(cplus3_scale) * w.Cplus[3];
    const LPoly a = apply_classical(ip, cplus_poly(w)), b = apply_classical(im, cminus_poly(w));
    const LPoly tz = helicity_poly(t, reading);
    for (const auto& [m, x] : a.terms())
      if (m[0] > 2 || m[1] > 2) rep.plus_consistent = false;
    for (const auto& [m, x] : b.terms())
      if (m[0] > 2 || m[1] > 2) rep.minus_consistent = false;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const LPoly tij = helicity_coeff(tz, static_cast<int>(i), static_cast<int>(j));
        if (!detail::fold_ratio(helicity_coeff(a, static_cast<int>(i), static_cast<int>(j)), tij, rep.plus[i][j]))
          rep.plus_consistent = false;
        if (!detail::fold_ratio(helicity_coeff(b, static_cast<int>(i), static_cast<int>(j)), tij, rep.minus[i][j]))
          rep.minus_consistent = false;
      }
  }
  return rep;
}

}  // namespace qconf

namespace qconf {

/// Uniform constant c with I±(0) F± = c J0 on every z, zbar slot, for both
/// signs at q = 1; nullopt if none exists.
inline std::optional<GRat> maxwell_calibration(const SymTensor2& F, const std::array<XPoly, 4>& J, Basis basis) {
  const MaxwellHelicity mh = maxwell_dictionary(F, J);
  const LPoly p = apply_classical(eq::qmaxwell(Sign::plus, 0, basis), mh.Fplus);
  const LPoly m = apply_classical(eq::qmaxwell(Sign::minus, 0, basis), mh.Fminus);
  std::optional<GRat> c;
  for (const LPoly* img : {&p, &m}) {
    for (const auto& [k, x] : img->terms())
      if (k[0] > 1 || k[1] > 1) return std::nullopt;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (!detail::fold_ratio(helicity_coeff(*img, a, b), helicity_coeff(mh.J0, a, b), c)) return std::nullopt;
  }
  return c ? c : std::optional<GRat>(GRat(0));
}

/// d^mu J_mu in light-cone coordinates.
inline LPoly current_divergence(const std::array<XPoly, 4>& J) {
  XPoly d;
  for (int m = 0; m < 4; ++m) d += GRat(eta()[static_cast<std::size_t>(m)]) * J[static_cast<std::size_t>(m)].diff(m);
  return coord_map(d);
}

}  // namespace qconf
