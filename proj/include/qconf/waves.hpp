// q-plane-wave components and the q-Maxwell solution families built on them.

#pragma once

#include <array>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qconf/coeff.hpp"
#include "qconf/eqlib.hpp"
#include "qconf/fieldspace.hpp"
#include "qconf/ncalg.hpp"

namespace qconf {

/// Bivariate integer polynomial sum c_{ij} a^i b^j, only ever evaluated at
/// integer points.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::map<std::pair<int, int>, long long> coeffs) : coeffs_(std::move(coeffs)) {
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
  }

  /// "c00,c10,c01,c20,c11,c02" (fewer entries allowed; missing ones are 0).
  static ExpPoly parse(const std::string& text) {
    static const std::pair<int, int> slots[6] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    std::map<std::pair<int, int>, long long> c;
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= 6) throw std::invalid_argument("ExpPoly: at most six coefficients");
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument("ExpPoly: bad coefficient '" + item + "'");
      c[slots[i++]] = v;
    }
    return ExpPoly(std::move(c));
  }

  long long operator()(long long a, long long b) const {
    long long r = 0;
    for (const auto& [ij, c] : coeffs_) {
      long long t = c;
      for (int k = 0; k < ij.first; ++k) t *= a;
      for (int k = 0; k < ij.second; ++k) t *= b;
      r += t;
    }
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<std::pair<int, int>, long long>& coeffs() const { return coeffs_; }

 private:
  std::map<std::pair<int, int>, long long> coeffs_;
};

/// Component h_s of the q-plane wave in the requested basis. P_s (hat) or
/// Q_s (tilde) enters as q^{poly(a,b)}; the summation range is cut out by the
/// zeros of 1/Gamma_q.
inline FieldState plane_component(int s, Basis basis, const ExpPoly& poly = {}) {
  if (s < 0) throw NegativeArgument("plane_component: negative index");
  FieldState out(basis);
  const QScalar beta = qbeta(s, basis);
  for (int n = 0; n <= s; ++n)
    for (int a = 0; a <= 2 * s; ++a)
      for (int b = 0; b <= 2 * s; ++b) {
        QScalar g = qgamma_recip(a - n + 1) * qgamma_recip(b - n + 1) * qgamma_recip(s - a - b + n + 1);
        if (g.is_zero()) continue;
        const int e = basis == Basis::hat
                          ? n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1)
                          : n * (2 * a + 2 * b - 2 * n - s) + a * (a - s - 1) + b * (s - a - b + 1);
        QScalar c = beta * g / qfact(n) * QScalar::q_pow(e + static_cast<int>(poly(a, b)));
        if ((s - a - b) % 2 != 0) c = -c;
        const Exps mom{s - a - b + n, b - n, a - n, n};
        const Key key{0, 0, n, a - n, b - n, s - a - b + n};
        out.add_term(key, NCPoly::monomial(Kind::momentum, basis, mom, c));
      }
  return out;
}

/// f_s: the hat component with P_s = 0.
inline FieldState f_component(int s) { return plane_component(s, Basis::hat); }

struct WeightedComponent {
  int s;
  QScalar weight;
  FieldState component;
};

/// Components of the q-exponential with weights 1/[s]_q!, s = 0..s_max.
inline std::vector<WeightedComponent> assemble_exp(int s_max, Basis basis,
                                                   const std::vector<ExpPoly>& polys = {}) {
  if (s_max < 0) throw NegativeArgument("assemble_exp: negative s_max");
  std::vector<WeightedComponent> out;
  for (int s = 0; s <= s_max; ++s) {
    const ExpPoly p = s < static_cast<int>(polys.size()) ? polys[static_cast<std::size_t>(s)] : ExpPoly{};
    out.push_back({s, qfact(s).reciprocal(), plane_component(s, basis, p)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solution constants

enum class ConstRole { p_hat, r_hat, p_tilde, r_tilde, gamma_hat, gamma_tilde };

/// Sparse table of independent solution constants; missing entries are 0.
/// p/r entries are indexed (m, s, a, i, j) with j = 0 for a = 2; gamma
/// entries are indexed (s, kappa, 0, 0, 0) with kappa a Gen value.
struct SolutionConstants {
  ConstRole role;
  std::map<std::array<int, 5>, QScalar> values;

  QScalar get(const std::array<int, 5>& idx) const {
    auto it = values.find(idx);
    return it == values.end() ? QScalar() : it->second;
  }
  QScalar gamma(int s, Gen kappa) const { return get({s, static_cast<int>(kappa), 0, 0, 0}); }

  static SolutionConstants one_hot(ConstRole role, std::array<int, 5> idx, QScalar value = QScalar(1)) {
    SolutionConstants c{role, {}};
    c.values[idx] = std::move(value);
    return c;
  }
};

inline ConstRole homogeneous_role(Sign sign, Basis basis) {
  if (basis == Basis::hat) return sign == Sign::plus ? ConstRole::p_hat : ConstRole::r_hat;
  return sign == Sign::plus ? ConstRole::p_tilde : ConstRole::r_tilde;
}
inline ConstRole gamma_role(Basis basis) { return basis == Basis::hat ? ConstRole::gamma_hat : ConstRole::gamma_tilde; }

/// Every (m, s, a, i, j) slot of the homogeneous solution at fixed m, s.
inline std::vector<std::array<int, 5>> homogeneous_slots(int m, int s) {
  std::vector<std::array<int, 5>> out;
  for (int a = 1; a <= 3; ++a)
    for (int i = 0; i <= m; ++i) {
      if (a == 2) {
        out.push_back({m, s, a, i, 0});
        continue;
      }
      for (int j = 0; j <= m - i; ++j) out.push_back({m, s, a, i, j});
    }
  return out;
}

namespace detail {

struct Mom {
  Basis basis;
  FieldState k(Gen g) const { return momentum_gen(g, basis); }
  FieldState pw(Gen g, int e) const {
    FieldState r = scalar_state(QScalar(1), basis);
    for (int i = 0; i < e; ++i) r = r * k(g);
    return r;
  }
  FieldState c(const QScalar& x) const { return scalar_state(x, basis); }
  FieldState z(int e = 1) const { return zpow(e, 0, basis); }
  FieldState zb(int e = 1) const { return zpow(0, e, basis); }
  /// (k_a - q^e * zvar * k_b)
  FieldState lin(Gen a, int e, const FieldState& zvar, Gen b) const {
    return k(a) - c(QScalar::q_pow(e)) * zvar * k(b);
  }
};

}  // namespace detail

/// Momentum/helicity coefficient F^{h±}_{ms}(k) of the homogeneous solution.
inline FieldState homogeneous_coefficient(Sign sign, Basis basis, int m, int s, const SolutionConstants& cs,
                                          Reading reading = Reading::printed) {
  if (cs.role != homogeneous_role(sign, basis)) throw std::invalid_argument("constant table has the wrong role");
  // tilde-minus: the first z-bar factor carries q^{s+1} as printed, q^{s+5} repaired
  const int tm = reading == Reading::printed ? s + 1 : s + 5;
  using G = Gen;
  const detail::Mom K{basis};
  FieldState out(basis);
  const FieldState z = K.z(), zb = K.zb();
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m - i; ++j) {
      const QScalar c1 = cs.get({m, s, 1, i, j});
      const QScalar c3 = cs.get({m, s, 3, i, j});
      if (!c1.is_zero()) {
        FieldState pre, tail;
        if (basis == Basis::hat && sign == Sign::plus) {
          pre = K.pw(G::v, i) * K.pw(G::minus, m - i - j) * K.pw(G::vbar, j);
          tail = K.lin(G::v, s + 6, z, G::minus) * K.lin(G::v, s + 3, z, G::minus);
        } else if (basis == Basis::hat) {
          pre = K.pw(G::v, i) * K.pw(G::minus, m - i - j) * K.pw(G::vbar, j);
          tail = K.lin(G::vbar, -1, zb, G::minus) * K.lin(G::vbar, 0, zb, G::minus);
        } else if (sign == Sign::plus) {
          pre = K.pw(G::vbar, i) * K.pw(G::minus, m - i - j) * K.pw(G::v, j);
          tail = K.lin(G::v, 0, z, G::minus) * K.lin(G::v, 1, z, G::minus);
        } else {
          pre = K.pw(G::vbar, i) * K.pw(G::minus, m - i - j) * K.pw(G::v, j);
          tail = K.lin(G::vbar, tm, zb, G::minus) * K.lin(G::vbar, s + 2, zb, G::minus);
        }
        out += K.c(c1) * pre * tail;
      }
      if (!c3.is_zero()) {
        FieldState pre, tail;
        if (basis == Basis::hat && sign == Sign::plus) {
          pre = K.pw(G::v, i) * K.pw(G::plus, m - i - j) * K.pw(G::vbar, j);
          tail = K.lin(G::plus, s + 6, z, G::vbar) * K.lin(G::plus, s + 3, z, G::vbar);
        } else if (basis == Basis::hat) {
          pre = K.pw(G::v, i) * K.pw(G::plus, m - i - j) * K.pw(G::vbar, j);
          tail = K.lin(G::plus, -1, zb, G::v) * K.lin(G::plus, 0, zb, G::v);
        } else if (sign == Sign::plus) {
          pre = K.pw(G::vbar, i) * K.pw(G::plus, m - i - j) * K.pw(G::v, j);
          tail = K.lin(G::plus, 0, z, G::vbar) * K.lin(G::plus, 1, z, G::vbar);
        } else {
          pre = K.pw(G::v, i) * K.pw(G::plus, m - i - j) * K.pw(G::vbar, j);
          tail = K.lin(G::plus, tm, zb, G::v) * K.lin(G::plus, s + 2, zb, G::v);
        }
        out += K.c(c3) * pre * tail;
      }
    }
    const QScalar c2 = cs.get({m, s, 2, i, 0});
    if (c2.is_zero()) continue;
    FieldState pre, tail;
    if (basis == Basis::hat && sign == Sign::plus) {
      pre = K.pw(G::v, i) * K.pw(G::vbar, m - i);
      tail = K.lin(G::v, s + 6, z, G::minus) * K.lin(G::plus, s + 3, z, G::vbar);
    } else if (basis == Basis::hat) {
      pre = K.pw(G::v, i) * K.pw(G::vbar, m - i);
      tail = K.lin(G::plus, -1, zb, G::v) * K.lin(G::vbar, 0, zb, G::minus);
    } else if (sign == Sign::plus) {
      pre = K.pw(G::vbar, i) * K.pw(G::v, m - i);
      tail = K.lin(G::plus, 0, z, G::vbar) * K.lin(G::v, 1, z, G::minus);
    } else {
      pre = K.pw(G::v, i) * K.pw(G::vbar, m - i);
      tail = K.lin(G::vbar, tm, zb, G::minus) * K.lin(G::plus, s + 2, zb, G::v);
    }
    out += K.c(c2) * pre * tail;
  }
  return out;
}

/// The plane component paired with the Maxwell solutions: f_s (hat) or the
/// tilde component with Q_s = 0.
inline FieldState maxwell_plane(int s, Basis basis) { return plane_component(s, basis); }

/// F^{h±}_{ms}(k) times the plane component of index s.
inline FieldState maxwell_homogeneous(Sign sign, Basis basis, int m, int s, const SolutionConstants& cs,
                                      Reading reading = Reading::printed) {
  return homogeneous_coefficient(sign, basis, m, s, cs, reading) * maxwell_plane(s, basis);
}

/// K^s_m(k) = sum_kappa gamma^s_kappa k_kappa^{m+1}.
inline FieldState current_kernel(Basis basis, int m, int s, const SolutionConstants& gammas) {
  const detail::Mom K{basis};
  FieldState out(basis);
  for (Gen g : {Gen::v, Gen::minus, Gen::plus, Gen::vbar}) {
    const QScalar c = gammas.gamma(s, g);
    if (!c.is_zero()) out += K.c(c) * K.pw(g, m + 1);
  }
  return out;
}

/// The four current components J^{ms}_kappa(k), indexed by Gen.
inline std::array<FieldState, 4> current_components(Basis basis, int m, int s, const SolutionConstants& gammas) {
  const detail::Mom K{basis};
  const FieldState kern = current_kernel(basis, m, s, gammas);
  std::array<FieldState, 4> j{FieldState(basis), FieldState(basis), FieldState(basis), FieldState(basis)};
  auto at = [&j](Gen g) -> FieldState& { return j[static_cast<std::size_t>(g)]; };
  if (basis == Basis::hat) {
    at(Gen::plus) = K.c(-1) * kern * K.k(Gen::minus);
    at(Gen::minus) = K.c(-QScalar::q_pow(-s - 2)) * kern * K.k(Gen::plus);
    at(Gen::v) = kern * K.k(Gen::vbar);
    at(Gen::vbar) = K.c(QScalar::q_pow(-s - 2)) * kern * K.k(Gen::v);
  } else {
    at(Gen::plus) = K.c(-QScalar::q_pow(s + 1)) * kern * K.k(Gen::minus);
    at(Gen::minus) = K.c(-QScalar::q_pow(-1)) * kern * K.k(Gen::plus);
    at(Gen::v) = kern * K.k(Gen::vbar);
    at(Gen::vbar) = K.c(QScalar::q_pow(s)) * kern * K.k(Gen::v);
  }
  return j;
}

/// Helicity assembly J0 = zbar z J+ + z Jv + zbar Jvbar + J- of the momentum parts.
inline FieldState current_coefficient(Basis basis, int m, int s, const SolutionConstants& gammas) {
  const auto j = current_components(basis, m, s, gammas);
  const detail::Mom K{basis};
  return K.z() * K.zb() * j[static_cast<int>(Gen::plus)] + K.z() * j[static_cast<int>(Gen::v)] +
         K.zb() * j[static_cast<int>(Gen::vbar)] + j[static_cast<int>(Gen::minus)];
}

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Momentum/helicity coefficient F^{±}_{ms}(k) of the inhomogeneous solution.
/// d_s as printed, or beta^{s-1}/beta^s in the repaired reading.
inline QScalar inhomogeneous_norm(int s, Basis basis, Reading reading) {
  if (reading == Reading::printed) return qd(s, basis);
  if (s < 1) throw IndexError("inhomogeneous_norm: repaired normalisation needs s >= 1");
  return qbeta(s - 1, basis) / qbeta(s, basis);
}

inline FieldState inhomogeneous_coefficient(Sign sign, Basis basis, int m, int s, const SolutionConstants& g,
                                            Reading reading = Reading::printed) {
  if (g.role != gamma_role(basis)) throw std::invalid_argument("constant table has the wrong role");
  using G = Gen;
  const detail::Mom K{basis};
  const FieldState z = K.z(), zb = K.zb();
  auto gk = [&](Gen kappa) { return K.c(g.gamma(s, kappa)) * K.pw(kappa, m); };
  auto qp = [](int e) { return QScalar::q_pow(e); };
  const QScalar d = inhomogeneous_norm(s, basis, reading);
  if (basis == Basis::hat && sign == Sign::plus) {
    FieldState a = K.c(qp(-s - 5)) * gk(G::minus) + z * gk(G::v);
    FieldState b = K.c(qp(-s - 5)) * gk(G::vbar) + z * gk(G::plus);
    return K.c(QScalar(2) * d * qp(-s)) *
           (a * K.lin(G::v, s + 3, z, G::minus) + b * K.lin(G::plus, s + 3, z, G::vbar));
  }
  if (basis == Basis::hat) {
    FieldState a = gk(G::minus) + K.c(qp(-2)) * zb * gk(G::vbar);
    FieldState b = gk(G::v) + K.c(qp(-2)) * zb * gk(G::plus);
    return K.c(QScalar(2) * d * qp(-2 * s - 2)) *
           (a * K.lin(G::vbar, 0, zb, G::minus) + b * K.lin(G::plus, 0, zb, G::v));
  }
  if (sign == Sign::plus) {
    FieldState a = gk(G::minus) + K.c(qp(-1)) * z * gk(G::v);
    FieldState b = gk(G::vbar) + K.c(qp(-1)) * z * gk(G::plus);
    return K.c(QScalar(2) * d * qp(s - 2)) *
           (a * K.lin(G::v, 1, z, G::minus) + b * K.lin(G::plus, 1, z, G::vbar));
  }
  FieldState a = K.c(qp(-s - 3)) * gk(G::minus) + K.c(qp(1)) * zb * gk(G::vbar);
  FieldState b = K.c(qp(-s - 3)) * gk(G::v) + K.c(qp(1)) * zb * gk(G::plus);
  return K.c(QScalar(2) * d) * (a * K.lin(G::vbar, s + 2, zb, G::minus) + b * K.lin(G::plus, s + 2, zb, G::v));
}

struct InhomogeneousSolution {
  FieldState field;    // paired with the plane component of index s
  FieldState current;  // paired with the plane component of index s - 1
};

inline InhomogeneousSolution maxwell_inhomogeneous(Sign sign, Basis basis, int m, int s,
                                                   const SolutionConstants& gammas,
                                                   Reading reading = Reading::printed) {
  if (s < 1) throw IndexError("maxwell_inhomogeneous: the current needs s >= 1");
  return {inhomogeneous_coefficient(sign, basis, m, s, gammas, reading) * maxwell_plane(s, basis),
          current_coefficient(basis, m, s, gammas) * maxwell_plane(s - 1, basis)};
}

/// twist * I(field) - current, cone-reduced. Zero when the identity holds.
inline FieldState inhomogeneous_residual(Sign sign, Basis basis, int m, int s, const SolutionConstants& gammas,
                                         Reading reading = Reading::printed) {
  const auto sol = maxwell_inhomogeneous(sign, basis, m, s, gammas, reading);
  const OpExpr op = eq::maxwell_output_twist(sign, basis, reading) * eq::qmaxwell(sign, 0, basis);
  return (apply(op, sol.field) - sol.current).cone_reduced();
}

/// I(F^{h±}_{ms} h_s), cone-reduced.
inline FieldState homogeneous_residual(Sign sign, Basis basis, int m, int s, const SolutionConstants& cs,
                                       Reading reading = Reading::printed) {
  return apply(eq::qmaxwell(sign, 0, basis), maxwell_homogeneous(sign, basis, m, s, cs, reading)).cone_reduced();
}

/// Residuals of the current-conservation contraction and its eight
/// splittings, cone-reduced; all must vanish.
struct CurrentIdentity {
  std::string name;
  FieldState residual;
};

inline std::vector<CurrentIdentity> current_identity_suite(Basis basis, int m, int s,
                                                           const SolutionConstants& gammas, bool on_cone = true) {
  if (s < 1) throw IndexError("current_identity_suite: needs s >= 1");
  using G = Gen;
  const auto j = current_components(basis, m, s, gammas);
  const detail::Mom K{basis};
  auto J = [&](G g) { return j[static_cast<std::size_t>(g)]; };
  auto t = [&](const QScalar& c, G a, G b) { return K.c(c) * J(a) * K.k(b); };
  auto qp = [](int e) { return QScalar::q_pow(e); };
  std::vector<CurrentIdentity> out;
  auto add = [&out, on_cone](std::string name, const FieldState& f) {
    out.push_back({std::move(name), on_cone ? f.cone_reduced() : f});
  };
  if (basis == Basis::hat) {
    add("master", t(qp(1), G::plus, G::plus) + t(1, G::v, G::v) + t(qp(s + 2), G::vbar, G::vbar) +
                      t(qp(s + 1), G::minus, G::minus));
    add("qJ+k+ + Jvkv", t(qp(1), G::plus, G::plus) + t(1, G::v, G::v));
    add("qJvbkvb + J-k-", t(qp(1), G::vbar, G::vbar) + t(1, G::minus, G::minus));
    add("J+k+ + q^{s+1}Jvbkvb", t(1, G::plus, G::plus) + t(qp(s + 1), G::vbar, G::vbar));
    add("Jvkv + q^{s+1}J-k-", t(1, G::v, G::v) + t(qp(s + 1), G::minus, G::minus));
    add("qJ+kvb + Jvk-", t(qp(1), G::plus, G::vbar) + t(1, G::v, G::minus));
    add("qJvbk+ + J-kv", t(qp(1), G::vbar, G::plus) + t(1, G::minus, G::v));
    add("J+kv + q^{s+1}Jvbk-", t(1, G::plus, G::v) + t(qp(s + 1), G::vbar, G::minus));
    add("Jvk+ + q^{s+1}J-kvb", t(1, G::v, G::plus) + t(qp(s + 1), G::minus, G::vbar));
  } else {
    add("master", t(1, G::plus, G::plus) + t(qp(s), G::v, G::v) + t(1, G::vbar, G::vbar) +
                      t(qp(s), G::minus, G::minus));
    add("J+k+ + q^sJvkv", t(1, G::plus, G::plus) + t(qp(s), G::v, G::v));
    add("Jvbkvb + q^sJ-k-", t(1, G::vbar, G::vbar) + t(qp(s), G::minus, G::minus));
    add("J+k+ + Jvbkvb", t(1, G::plus, G::plus) + t(1, G::vbar, G::vbar));
    add("Jvkv + J-k-", t(1, G::v, G::v) + t(1, G::minus, G::minus));
    add("J+kvb + q^sJvk-", t(1, G::plus, G::vbar) + t(qp(s), G::v, G::minus));
    add("Jvbk+ + q^sJ-kv", t(1, G::vbar, G::plus) + t(qp(s), G::minus, G::v));
    add("J+kv + Jvbk-", t(1, G::plus, G::v) + t(1, G::vbar, G::minus));
    add("Jvk+ + J-kvb", t(1, G::v, G::plus) + t(1, G::minus, G::vbar));
  }
  return out;
}

/// I13 applied to the current state J0 * (plane component s - 1).
inline FieldState current_conservation_residual(Basis basis, int m, int s, const SolutionConstants& gammas,
                                                Reading reading = Reading::printed, bool on_cone = true) {
  if (s < 1) throw IndexError("current_conservation_residual: needs s >= 1");
  const FieldState cur = current_coefficient(basis, m, s, gammas) * maxwell_plane(s - 1, basis);
  const FieldState r = apply(eq::current_conservation(basis, reading), cur);
  return on_cone ? r.cone_reduced() : r;
}

// ---------------------------------------------------------------------------
// Conjugation of states

/// omega on a z, zbar-free state: coordinate and momentum parts are
/// conjugated separately (they commute), the tag flips.
inline FieldState omega_state(const FieldState& s) {
  FieldState out(opposite(s.basis()));
  for (const auto& [k, c] : s.terms()) {
    const NCPoly cw = omega_conjugate(NCPoly::monomial(Kind::coordinate, s.basis(), coord_exps(k)));
    const NCPoly cm = omega_conjugate(c);
    for (const auto& [e, a] : cw.terms()) {
      NCPoly t = cm;
      t *= a;
      out.add_term(Key{k[0], k[1], e[0], e[1], e[2], e[3]}, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical plane-wave oracle

/// Rational point on the classical cone k- k+ = k_v k_vbar together with
/// coordinate values; both indexed by Gen.
struct ConePoint {
  std::array<Rational, 4> k, x;
};

inline ConePoint random_cone_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  auto nonzero = [&] {
    for (;;) {
      const int n = num(rng);
      if (n != 0) return Rational(n, den(rng));
    }
  };
  ConePoint p;
  const auto v = static_cast<std::size_t>(Gen::v), mi = static_cast<std::size_t>(Gen::minus),
             pl = static_cast<std::size_t>(Gen::plus), vb = static_cast<std::size_t>(Gen::vbar);
  p.k[v] = nonzero();
  p.k[vb] = nonzero();
  p.k[mi] = nonzero();
  p.k[pl] = p.k[v] * p.k[vb] / p.k[mi];
  for (auto& x : p.x) x = Rational(num(rng), den(rng));
  return p;
}

/// The q = 1 limit of a plane component evaluated at a point.
inline Rational evaluate_classical(const FieldState& s, const ConePoint& p) {
  Rational total = 0;
  for (const auto& [km, c] : limit_q1_state(s)) {
    const auto& [key, e] = km;
    Rational t = c;
    for (std::size_t g = 0; g < 4; ++g) {
      for (int i = 0; i < e[g]; ++i) t *= p.k[g];
      for (int i = 0; i < key[g + 2]; ++i) t *= p.x[g];
    }
    total += t;
  }
  return total;
}

/// The classical pairing 1/2 (k+ x- + k- x+ - k_v vbar - k_vbar v).
inline Rational classical_pairing(const ConePoint& p) {
  const auto v = static_cast<std::size_t>(Gen::v), mi = static_cast<std::size_t>(Gen::minus),
             pl = static_cast<std::size_t>(Gen::plus), vb = static_cast<std::size_t>(Gen::vbar);
  return Rational(1, 2) * (p.k[pl] * p.x[mi] + p.k[mi] * p.x[pl] - p.k[v] * p.x[vb] - p.k[vb] * p.x[v]);
}

// ---------------------------------------------------------------------------
// s-dependence of the inhomogeneous solutions

/// gamma^s_kappa = q^{2s} / d_s (hat) or q^{-s} / d~_s (tilde) on one kappa.
inline SolutionConstants uniformizing_gammas(Basis basis, int s, Gen kappa) {
  const QScalar w = basis == Basis::hat ? QScalar::q_pow(2 * s) / qd(s, basis) : QScalar::q_pow(-s) / qd(s, basis);
  return SolutionConstants::one_hot(gamma_role(basis), {s, static_cast<int>(kappa), 0, 0, 0}, w);
}

/// Whether F-_{ms} (hat) or F+_{ms} (tilde) with the uniformizing gammas is
/// the same momentum polynomial for every s in [0, s_hi].
inline bool field_s_independent(Basis basis, int m, int s_hi, Gen kappa) {
  const Sign sign = basis == Basis::hat ? Sign::minus : Sign::plus;
  const FieldState ref = inhomogeneous_coefficient(sign, basis, m, 0, uniformizing_gammas(basis, 0, kappa));
  for (int s = 1; s <= s_hi; ++s)
    if (!(inhomogeneous_coefficient(sign, basis, m, s, uniformizing_gammas(basis, s, kappa)) == ref)) return false;
  return true;
}

/// Exponents t in [-t_max, t_max] for which gamma^s_kappa = q^{ts} makes the
/// four current components equal for s = 1..s_hi. Empty means no such
/// choice exists in the family.
inline std::vector<int> current_s_uniformizers(Basis basis, int m, int s_hi, Gen kappa, int t_max) {
  std::vector<int> out;
  for (int t = -t_max; t <= t_max; ++t) {
    auto comps = [&](int s) {
      return current_components(
          basis, m, s,
          SolutionConstants::one_hot(gamma_role(basis), {s, static_cast<int>(kappa), 0, 0, 0}, QScalar::q_pow(t * s)));
    };
    const auto ref = comps(1);
    bool same = true;
    for (int s = 2; s <= s_hi && same; ++s) same = comps(s) == ref;
    if (same) out.push_back(t);
  }
  return out;
}

}  // namespace qconf
