// The q-Minkowski coordinate algebra and its momentum copy.
//
// Generators v, x-, x+, vbar obey
//   x± v = q^{±1} v x±,   x± vbar = q^{±1} vbar x±,
//   x+ x- - x- x+ = lambda v vbar,   vbar v = v vbar,
// and the momenta k_v, k_-, k_+, k_vbar obey the same relations. Elements
// are kept in one of two PBW orders: hat (v, x-, x+, vbar) or tilde
// (vbar, x+, x-, v). Monomials are keyed by exponents indexed by generator
// name, so the same key means v^j x-^n x+^l vbar^m in both orders.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qconf/coeff.hpp"

namespace qconf {

enum class Kind : std::uint8_t { coordinate, momentum };
enum class Gen : std::uint8_t { v = 0, minus = 1, plus = 2, vbar = 3 };

struct Letter {
  Kind kind;
  Gen gen;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;
/// Exponents (j, n, l, m) of v, x-, x+, vbar.
using Exps = std::array<int, 4>;

struct MixedKinds : std::invalid_argument {
  MixedKinds() : std::invalid_argument("word mixes coordinate and momentum letters") {}
};
struct TagMismatch : std::invalid_argument {
  TagMismatch() : std::invalid_argument("operands carry different order tags or kinds") {}
};
struct InternalNontermination : std::runtime_error {
  InternalNontermination() : std::runtime_error("normal ordering exceeded the rewrite step cap") {}
};

inline constexpr long kRewriteStepCap = 1'000'000;

inline Basis opposite(Basis b) { return b == Basis::hat ? Basis::tilde : Basis::hat; }

/// Position of a generator in the PBW order of the tag.
inline int rank(Gen g, Basis tag) {
  const int i = static_cast<int>(g);
  return tag == Basis::hat ? i : 3 - i;
}

inline Gen gen_at_rank(int r, Basis tag) { return static_cast<Gen>(tag == Basis::hat ? r : 3 - r); }

/// Result of a single adjacent transposition a b -> factor * b a + extra.
struct SwapRule {
  QScalar factor;
  QScalar extra;  // coefficient of the inserted v vbar pair (0 if none)
};

inline SwapRule swap_rule(Gen a, Gen b) {
  using G = Gen;
  auto sr = [](int e) { return SwapRule{QScalar::q_pow(e), QScalar()}; };
  if (a == b) return sr(0);
  if (a == G::plus && (b == G::v || b == G::vbar)) return sr(1);
  if (b == G::plus && (a == G::v || a == G::vbar)) return sr(-1);
  if (a == G::minus && (b == G::v || b == G::vbar)) return sr(-1);
  if (b == G::minus && (a == G::v || a == G::vbar)) return sr(1);
  if ((a == G::v && b == G::vbar) || (a == G::vbar && b == G::v)) return sr(0);
  if (a == G::plus && b == G::minus) return {QScalar(1), QScalar::lambda()};
  return {QScalar(1), -QScalar::lambda()};  // x- x+ = x+ x- - lambda v vbar
}

class NCPoly {
 public:
  using Terms = std::map<Exps, QScalar>;

  NCPoly(Kind kind = Kind::momentum, Basis tag = Basis::hat) : kind_(kind), tag_(tag) {}

  static NCPoly unit(Kind kind, Basis tag) { return monomial(kind, tag, {0, 0, 0, 0}); }
  static NCPoly monomial(Kind kind, Basis tag, Exps e, QScalar c = QScalar(1)) {
    NCPoly p(kind, tag);
    p.add_term(e, std::move(c));
    return p;
  }
  static NCPoly scalar(Kind kind, Basis tag, QScalar c) { return monomial(kind, tag, {0, 0, 0, 0}, std::move(c)); }
  static NCPoly generator(Kind kind, Basis tag, Gen g) {
    Exps e{0, 0, 0, 0};
    e[static_cast<int>(g)] = 1;
    return monomial(kind, tag, e);
  }

  Kind kind() const { return kind_; }
  Basis tag() const { return tag_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  QScalar coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? QScalar() : it->second;
  }

  void add_term(const Exps& e, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& b) {
    check_compatible(b);
    for (const auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& b) {
    check_compatible(b);
    for (const auto& [e, c] : b.terms_) add_term(e, -c);
    return *this;
  }
  NCPoly& operator*=(const QScalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (c.is_one()) return *this;
    for (auto& [e, x] : terms_) x *= c;
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const QScalar& c) { return a *= c; }
  friend NCPoly operator*(const QScalar& c, NCPoly a) { return a *= c; }
  NCPoly operator-() const { return *this * QScalar(-1); }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.kind_ == b.kind_ && a.tag_ == b.tag_ && a.terms_ == b.terms_;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
  }

  /// The letters of an ordered monomial, written in the tag's order.
  static Word word_of(Kind kind, Basis tag, const Exps& e) {
    Word w;
    for (int r = 0; r < 4; ++r) {
      Gen g = gen_at_rank(r, tag);
      for (int i = 0; i < e[static_cast<int>(g)]; ++i) w.push_back({kind, g});
    }
    return w;
  }

  /// e.g. "v^2 x-^1 x+^3 vbar^0" (coordinates) or "kv^1 k-^0 k+^0 kvb^2".
  static std::string render_monomial(Kind kind, Basis tag, const Exps& e) {
    static const char* coord[4] = {"v", "x-", "x+", "vbar"};
    static const char* mom[4] = {"kv", "k-", "k+", "kvb"};
    std::string s;
    for (int r = 0; r < 4; ++r) {
      int g = static_cast<int>(gen_at_rank(r, tag));
      if (r) s += ' ';
      s += (kind == Kind::coordinate ? coord : mom)[g];
      s += '^' + std::to_string(e[g]);
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")*[" + render_monomial(kind_, tag_, e) + "]";
    }
    return s;
  }

 private:
  Kind kind_;
  Basis tag_;
  Terms terms_;

  void check_compatible(const NCPoly& b) const {
    if (b.kind_ != kind_ || b.tag_ != tag_) throw TagMismatch();
  }
};

/// Descent-picking strategy for the rewriter. Leftmost is the production
/// strategy; random strategies exist to test confluence.
struct RewriteStrategy {
  std::mt19937_64* rng = nullptr;  // null = deterministic leftmost
};

namespace detail {

inline Exps exps_of_ordered(const Word& w) {
  Exps e{0, 0, 0, 0};
  for (const auto& l : w) ++e[static_cast<int>(l.gen)];
  return e;
}

}  // namespace detail

/// Expands c * w in the ordered basis of `tag` by adjacent-transposition
/// rewriting.
inline NCPoly normal_order(const Word& w, const QScalar& c, Basis tag, RewriteStrategy strategy = {},
                           Kind empty_kind = Kind::momentum) {
  if (w.empty()) return NCPoly::scalar(empty_kind, tag, c);
  const Kind kind = w.front().kind;
  for (const auto& l : w)
    if (l.kind != kind) throw MixedKinds();

  NCPoly out(kind, tag);
  std::map<Word, QScalar> pending;
  pending.emplace(w, c);
  long steps = 0;
  std::vector<std::size_t> descents;
  while (!pending.empty()) {
    if (++steps > kRewriteStepCap) throw InternalNontermination();
    auto it = pending.begin();
    if (strategy.rng && pending.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
      std::advance(it, static_cast<long>(pick(*strategy.rng)));
    }
    Word word = it->first;
    QScalar coeff = it->second;
    pending.erase(it);
    if (coeff.is_zero()) continue;

    descents.clear();
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (rank(word[i].gen, tag) > rank(word[i + 1].gen, tag)) {
        descents.push_back(i);
        if (!strategy.rng) break;
      }
    if (descents.empty()) {
      out.add_term(detail::exps_of_ordered(word), coeff);
      continue;
    }
    std::size_t pos = descents.front();
    if (strategy.rng) {
      std::uniform_int_distribution<std::size_t> pick(0, descents.size() - 1);
      pos = descents[pick(*strategy.rng)];
    }
    const SwapRule rule = swap_rule(word[pos].gen, word[pos + 1].gen);
    auto push = [&pending](Word nw, const QScalar& nc) {
      if (nc.is_zero()) return;
      auto [pit, inserted] = pending.try_emplace(std::move(nw), nc);
      if (!inserted) pit->second += nc;
    };
    if (!rule.extra.is_zero()) {
      Word nw;
      nw.reserve(word.size());
      nw.insert(nw.end(), word.begin(), word.begin() + static_cast<long>(pos));
      Letter lo{kind, gen_at_rank(0, tag)}, hi{kind, gen_at_rank(3, tag)};
      nw.push_back(lo);
      nw.push_back(hi);
      nw.insert(nw.end(), word.begin() + static_cast<long>(pos) + 2, word.end());
      push(std::move(nw), coeff * rule.extra);
    }
    std::swap(word[pos], word[pos + 1]);
    push(std::move(word), coeff * rule.factor);
  }
  return out;
}

/// Product a * b, re-normal-ordered.
inline NCPoly ncmul(const NCPoly& a, const NCPoly& b) {
  if (a.kind() != b.kind() || a.tag() != b.tag()) throw TagMismatch();
  NCPoly out(a.kind(), a.tag());
  for (const auto& [eb, cb] : b.terms()) {
    const Word wb = NCPoly::word_of(b.kind(), b.tag(), eb);
    for (const auto& [ea, ca] : a.terms()) {
      Word w = NCPoly::word_of(a.kind(), a.tag(), ea);
      w.insert(w.end(), wb.begin(), wb.end());
      out += normal_order(w, ca * cb, a.tag(), {}, a.kind());
    }
  }
  return out;
}

/// Anti-linear anti-involution: reverses words, swaps v <-> vbar, fixes
/// x±, sends q -> q^{-1} in coefficients. The result carries the opposite tag.
inline NCPoly omega_conjugate(const NCPoly& a) {
  const Basis to = opposite(a.tag());
  NCPoly out(a.kind(), to);
  for (const auto& [e, c] : a.terms()) {
    Word w = NCPoly::word_of(a.kind(), a.tag(), e);
    std::reverse(w.begin(), w.end());
    for (auto& l : w) {
      if (l.gen == Gen::v)
        l.gen = Gen::vbar;
      else if (l.gen == Gen::vbar)
        l.gen = Gen::v;
    }
    out += normal_order(w, c.inverted(), to, {}, a.kind());
  }
  return out;
}

/// Reduces a momentum polynomial modulo the two-sided ideal of the central
/// cone element k- k+ - q^{-1} k_v k_vbar ( = k+ k- - q k_v k_vbar ). In the
/// result no monomial carries both k- and k+.
inline NCPoly cone_reduce(const NCPoly& a) {
  const Basis tag = a.tag();
  const Kind kind = a.kind();
  NCPoly out(kind, tag);
  std::map<Exps, QScalar> pending(a.terms().begin(), a.terms().end());
  const int minus = static_cast<int>(Gen::minus), plus = static_cast<int>(Gen::plus);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Exps e = node.key();
    const QScalar c = node.mapped();
    if (e[minus] == 0 || e[plus] == 0) {
      out.add_term(e, c);
      continue;
    }
    // Replace the adjacent k-k+ (hat) or k+k- (tilde) pair.
    Word w;
    const Letter kv{kind, Gen::v}, kvb{kind, Gen::vbar};
    QScalar f;
    Exps rest = e;
    --rest[minus];
    --rest[plus];
    const Word full = NCPoly::word_of(kind, tag, rest);
    // Insertion point: after the block preceding the (x-, x+) middle pair.
    const Gen first_mid = gen_at_rank(1, tag);
    std::size_t cut = 0;
    while (cut < full.size() && rank(full[cut].gen, tag) < rank(first_mid, tag)) ++cut;
    const std::size_t mid_end = cut + static_cast<std::size_t>(rest[static_cast<int>(first_mid)]);
    w.insert(w.end(), full.begin(), full.begin() + static_cast<long>(mid_end));
    w.push_back(kv);
    w.push_back(kvb);
    w.insert(w.end(), full.begin() + static_cast<long>(mid_end), full.end());
    f = tag == Basis::hat ? QScalar::q_pow(-1) : QScalar::q();
    NCPoly r = normal_order(w, c * f, tag);
    for (const auto& [re, rc] : r.terms()) {
      auto [pit, inserted] = pending.try_emplace(re, rc);
      if (!inserted) {
        pit->second += rc;
        if (pit->second.is_zero()) pending.erase(pit);
      }
    }
  }
  return out;
}

/// The cone element L = k- k+ - q^{-1} k_v k_vbar in the given order.
inline NCPoly cone_element(Basis tag) {
  NCPoly km = NCPoly::generator(Kind::momentum, tag, Gen::minus);
  NCPoly kp = NCPoly::generator(Kind::momentum, tag, Gen::plus);
  NCPoly kv = NCPoly::generator(Kind::momentum, tag, Gen::v);
  NCPoly kvb = NCPoly::generator(Kind::momentum, tag, Gen::vbar);
  return ncmul(km, kp) - ncmul(kv, kvb) * QScalar::q_pow(-1);
}

}  // namespace qconf
