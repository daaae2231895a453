// Fields in the commuting-variable representation and the q-difference
// operator calculus acting on them.
//
// A FieldState is a finite sum of monomials z^a zbar^b v^j x-^n x+^l vbar^m,
// each carrying a momentum NCPoly coefficient. Operators act on the
// exponents only; momentum coefficients pass through untouched.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qconf/coeff.hpp"
#include "qconf/ncalg.hpp"

namespace qconf {

enum class Var : std::uint8_t { z = 0, zbar = 1, v = 2, minus = 3, plus = 4, vbar = 5 };
inline constexpr int kNumVars = 6;

inline const char* to_string(Var x) {
  static const char* names[kNumVars] = {"z", "zbar", "v", "minus", "plus", "vbar"};
  return names[static_cast<int>(x)];
}

/// Exponents (alpha, beta, j, n, l, m) of z, zbar, v, x-, x+, vbar.
using Key = std::array<int, kNumVars>;

struct NegativeExponent : std::domain_error {
  NegativeExponent() : std::domain_error("negative exponent in field monomial") {}
};

inline Exps coord_exps(const Key& k) { return {k[2], k[3], k[4], k[5]}; }

class FieldState {
 public:
  using Terms = std::map<Key, NCPoly>;

  explicit FieldState(Basis basis = Basis::hat) : basis_(basis) {}

  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  NCPoly coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? NCPoly(Kind::momentum, basis_) : it->second;
  }

  void add_term(const Key& k, const NCPoly& c) {
    for (int e : k)
      if (e < 0) throw NegativeExponent();
    if (c.is_zero()) return;
    if (c.tag() != basis_ || c.kind() != Kind::momentum) throw TagMismatch();
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FieldState& operator+=(const FieldState& b) {
    if (b.basis_ != basis_) throw TagMismatch();
    for (const auto& [k, c] : b.terms_) add_term(k, c);
    return *this;
  }
  FieldState& operator-=(const FieldState& b) {
    if (b.basis_ != basis_) throw TagMismatch();
    for (const auto& [k, c] : b.terms_) add_term(k, -c);
    return *this;
  }
  FieldState& operator*=(const QScalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend FieldState operator+(FieldState a, const FieldState& b) { return a += b; }
  friend FieldState operator-(FieldState a, const FieldState& b) { return a -= b; }
  friend FieldState operator*(FieldState a, const QScalar& s) { return a *= s; }
  friend FieldState operator*(const QScalar& s, FieldState a) { return a *= s; }

  /// Product of fields: exponents add (the variables commute), momentum
  /// coefficients multiply in order a * b.
  friend FieldState operator*(const FieldState& a, const FieldState& b) {
    if (a.basis_ != b.basis_) throw TagMismatch();
    FieldState r(a.basis_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k;
        for (int i = 0; i < kNumVars; ++i) k[i] = ka[i] + kb[i];
        r.add_term(k, ncmul(ca, cb));
      }
    return r;
  }

  friend bool operator==(const FieldState& a, const FieldState& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

  /// Applies f to every momentum coefficient (e.g. cone_reduce).
  FieldState map_coeffs(const std::function<NCPoly(const NCPoly&)>& f) const {
    FieldState r(basis_);
    for (const auto& [k, c] : terms_) r.add_term(k, f(c));
    return r;
  }

  FieldState cone_reduced() const { return map_coeffs([](const NCPoly& c) { return cone_reduce(c); }); }

  static std::string render_key(const Key& k, Basis basis) {
    std::string s = "z^" + std::to_string(k[0]) + " zb^" + std::to_string(k[1]) + " | ";
    const Exps e = coord_exps(k);
    // Same text layout for both bases; the coordinate order follows the tag.
    if (basis == Basis::hat)
      s += "v^" + std::to_string(e[0]) + " x-^" + std::to_string(e[1]) + " x+^" + std::to_string(e[2]) +
           " vb^" + std::to_string(e[3]);
    else
      s += "vb^" + std::to_string(e[3]) + " x+^" + std::to_string(e[2]) + " x-^" + std::to_string(e[1]) +
           " v^" + std::to_string(e[0]);
    return s;
  }

  /// One rendered string per term: "z^a zb^b | v^j x-^n x+^l vb^m | <poly>".
  std::vector<std::string> render() const {
    std::vector<std::string> out;
    for (const auto& [k, c] : terms_) out.push_back(render_key(k, basis_) + " | " + c.str());
    return out;
  }

 private:
  Basis basis_;
  Terms terms_;
};

/// Single-term state z^a zbar^b v^j x-^n x+^l vbar^m * coeff.
inline FieldState monomial(const Key& k, const NCPoly& coeff, Basis basis) {
  FieldState s(basis);
  s.add_term(k, coeff);
  return s;
}

inline FieldState monomial(const Key& k, Basis basis) {
  return monomial(k, NCPoly::unit(Kind::momentum, basis), basis);
}

/// A z, zbar polynomial with momentum coefficients (no coordinates), e.g.
/// (k_v - q^{s+3} z k_-). Built from generators and combined with ncmul.
inline FieldState momentum_gen(Gen g, Basis basis) {
  return monomial(Key{}, NCPoly::generator(Kind::momentum, basis, g), basis);
}
inline FieldState zpow(int a, int b, Basis basis) { return monomial(Key{a, b, 0, 0, 0, 0}, basis); }
inline FieldState scalar_state(const QScalar& c, Basis basis) {
  return monomial(Key{}, NCPoly::scalar(Kind::momentum, basis, c), basis);
}

// ---------------------------------------------------------------------------
// Operators

enum class OpKind : std::uint8_t { Mhat, Minv, T, Tinv, D, Partial };

class OpExpr {
 public:
  struct Gen {
    OpKind kind;
    Var var;
  };
  /// [c0 + sum_v coeffs[v] * N_v]_q
  struct QBracket {
    int c0;
    std::array<int, kNumVars> coeffs;
  };
  struct Scalar {
    QScalar value;
  };
  struct Sum {
    std::vector<OpExpr> terms;
  };
  /// Listed left to right; the rightmost factor acts first.
  struct Product {
    std::vector<OpExpr> factors;
  };
  using Node = std::variant<Gen, QBracket, Scalar, Sum, Product>;

  OpExpr() : node_(std::make_shared<const Node>(Scalar{QScalar(1)})) {}
  explicit OpExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  const Node& node() const { return *node_; }

  friend OpExpr operator*(const OpExpr& a, const OpExpr& b) {
    std::vector<OpExpr> f;
    auto append = [&f](const OpExpr& x) {
      if (const auto* p = std::get_if<Product>(&x.node()))
        f.insert(f.end(), p->factors.begin(), p->factors.end());
      else
        f.push_back(x);
    };
    append(a);
    append(b);
    return OpExpr(Product{std::move(f)});
  }
  friend OpExpr operator+(const OpExpr& a, const OpExpr& b) {
    std::vector<OpExpr> t;
    auto append = [&t](const OpExpr& x) {
      if (const auto* s = std::get_if<Sum>(&x.node()))
        t.insert(t.end(), s->terms.begin(), s->terms.end());
      else
        t.push_back(x);
    };
    append(a);
    append(b);
    return OpExpr(Sum{std::move(t)});
  }
  friend OpExpr operator*(const QScalar& c, const OpExpr& a) { return OpExpr(Scalar{c}) * a; }
  friend OpExpr operator-(const OpExpr& a, const OpExpr& b) { return a + QScalar(-1) * b; }
  OpExpr operator-() const { return QScalar(-1) * *this; }

  std::string str() const;

 private:
  std::shared_ptr<const Node> node_;
};

namespace ops {

inline OpExpr gen(OpKind k, Var v) { return OpExpr(OpExpr::Gen{k, v}); }
inline OpExpr M(Var v) { return gen(OpKind::Mhat, v); }
inline OpExpr Minv(Var v) { return gen(OpKind::Minv, v); }
inline OpExpr T(Var v) { return gen(OpKind::T, v); }
inline OpExpr Tinv(Var v) { return gen(OpKind::Tinv, v); }
inline OpExpr D(Var v) { return gen(OpKind::D, v); }
/// Classical partial derivative (the q = 1 value of D).
inline OpExpr P(Var v) { return gen(OpKind::Partial, v); }
inline OpExpr scalar(const QScalar& c) { return OpExpr(OpExpr::Scalar{c}); }
inline OpExpr qpow(int k) { return scalar(QScalar::q_pow(k)); }
inline OpExpr identity() { return scalar(QScalar(1)); }
/// [c0 + sum c_v N_v]_q
inline OpExpr bracket(int c0, std::initializer_list<std::pair<Var, int>> coeffs) {
  OpExpr::QBracket b{c0, {}};
  for (auto [v, c] : coeffs) b.coeffs[static_cast<int>(v)] += c;
  return OpExpr(b);
}
inline OpExpr sum(std::vector<OpExpr> terms) { return OpExpr(OpExpr::Sum{std::move(terms)}); }

}  // namespace ops

inline std::string OpExpr::str() const {
  static const char* kind_names[] = {"M", "Minv", "T", "Tinv", "D", "d"};
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Gen>) {
          return std::string(kind_names[static_cast<int>(n.kind)]) + "_" + to_string(n.var);
        } else if constexpr (std::is_same_v<N, QBracket>) {
          std::string s = "[" + std::to_string(n.c0);
          for (int i = 0; i < kNumVars; ++i)
            if (n.coeffs[i]) s += (n.coeffs[i] > 0 ? "+" : "") + std::to_string(n.coeffs[i]) + "N_" + to_string(Var(i));
          return s + "]_q";
        } else if constexpr (std::is_same_v<N, Scalar>) {
          return "(" + n.value.str() + ")";
        } else if constexpr (std::is_same_v<N, Sum>) {
          std::string s = "(";
          for (std::size_t i = 0; i < n.terms.size(); ++i) s += (i ? " + " : "") + n.terms[i].str();
          return s + ")";
        } else {
          std::string s;
          for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? " " : "") + n.factors[i].str();
          return s;
        }
      },
      node());
}

using KeyImage = std::map<Key, QScalar>;

namespace detail {

inline void accumulate(KeyImage& out, const Key& k, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = out.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

inline KeyImage apply_gen(const OpExpr::Gen& g, const Key& k) {
  const int i = static_cast<int>(g.var);
  const int e = k[i];
  Key nk = k;
  switch (g.kind) {
    case OpKind::Mhat:
      ++nk[i];
      return {{nk, QScalar(1)}};
    case OpKind::Minv:
      if (e == 0) throw NegativeExponent();
      --nk[i];
      return {{nk, QScalar(1)}};
    case OpKind::T:
      return {{k, QScalar::q_pow(e)}};
    case OpKind::Tinv:
      return {{k, QScalar::q_pow(-e)}};
    case OpKind::D:
      // Factor first: the q-number vanishes at e = 0 before any lowering.
      if (e == 0) return {};
      --nk[i];
      return {{nk, qint(e)}};
    case OpKind::Partial:
      if (e == 0) return {};
      --nk[i];
      return {{nk, QScalar(e)}};
  }
  return {};
}

}  // namespace detail

/// Image of a single unit monomial under op, as exponent key -> scalar.
inline KeyImage apply_to_key(const OpExpr& op, const Key& k) {
  return std::visit(
      [&k](const auto& n) -> KeyImage {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, OpExpr::Gen>) {
          return detail::apply_gen(n, k);
        } else if constexpr (std::is_same_v<N, OpExpr::QBracket>) {
          int arg = n.c0;
          for (int i = 0; i < kNumVars; ++i) arg += n.coeffs[i] * k[i];
          QScalar c = qint(arg);
          if (c.is_zero()) return {};
          return {{k, c}};
        } else if constexpr (std::is_same_v<N, OpExpr::Scalar>) {
          if (n.value.is_zero()) return {};
          return {{k, n.value}};
        } else if constexpr (std::is_same_v<N, OpExpr::Sum>) {
          KeyImage out;
          for (const auto& t : n.terms)
            for (const auto& [nk, c] : apply_to_key(t, k)) detail::accumulate(out, nk, c);
          return out;
        } else {
          KeyImage cur{{k, QScalar(1)}};
          for (auto it = n.factors.rbegin(); it != n.factors.rend() && !cur.empty(); ++it) {
            KeyImage next;
            for (const auto& [ck, cc] : cur)
              for (const auto& [nk, c] : apply_to_key(*it, ck)) detail::accumulate(next, nk, cc * c);
            cur = std::move(next);
          }
          return cur;
        }
      },
      op.node());
}

/// Linear action of op on a state.
inline FieldState apply(const OpExpr& op, const FieldState& s) {
  FieldState out(s.basis());
  for (const auto& [k, coeff] : s.terms())
    for (const auto& [nk, c] : apply_to_key(op, k)) out.add_term(nk, coeff * c);
  return out;
}

// ---------------------------------------------------------------------------
// Classical specialization

/// q = 1 image of a state; momenta commute there, so coefficients are keyed by
/// (coordinate key, momentum exponents).
using ClassicalState = std::map<std::pair<Key, Exps>, Rational>;

inline ClassicalState limit_q1_state(const FieldState& s) {
  ClassicalState out;
  for (const auto& [k, poly] : s.terms())
    for (const auto& [e, c] : poly.terms()) {
      Rational r = limit_q1(c);
      if (r == 0) continue;
      auto [it, inserted] = out.try_emplace({k, e}, r);
      if (!inserted) {
        it->second += r;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

/// q = 1 image of op applied to a unit monomial.
inline std::map<Key, Rational> limit_q1_image(const OpExpr& op, const Key& k) {
  std::map<Key, Rational> out;
  for (const auto& [nk, c] : apply_to_key(op, k)) {
    Rational r = limit_q1(c);
    if (r != 0) out[nk] += r;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Every key with all six exponents in [0, hi[i]].
inline std::vector<Key> key_box(const Key& hi) {
  std::vector<Key> out;
  Key k{};
  std::function<void(int)> rec = [&](int i) {
    if (i == kNumVars) {
      out.push_back(k);
      return;
    }
    for (int e = 0; e <= hi[i]; ++e) {
      k[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace qconf
