// Builders for the q-deformed conformal operators as OpExpr trees.
//
// Every operator is transcribed factor by factor, scalar prefactors
// included, with no simplification. Products list factors left to right and
// the rightmost factor acts first.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "qconf/coeff.hpp"
#include "qconf/fieldspace.hpp"

namespace qconf {

enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

struct BasisUnavailable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Which version of a formula to build: the one as printed, or the variant
/// that makes the solution identities hold exactly.
enum class Reading { printed, repaired };

inline const char* to_string(Reading r) { return r == Reading::printed ? "printed" : "repaired"; }

namespace eq {

using namespace ops;
using V = Var;

inline const QScalar& half() {
  static const QScalar h = QScalar::rational(1, 2);
  return h;
}
inline OpExpr lam() { return scalar(QScalar::lambda()); }

/// q-d'Alembert operator.
///   hat:   (q D- D+ Tv Tvb - Dv Dvb) Tv T- T+ Tvb
///   tilde: (D- D+ - q Dv Dvb Tv Tvb) T- T+
inline OpExpr qdalembert(Basis basis) {
  if (basis == Basis::hat)
    return (qpow(1) * D(V::minus) * D(V::plus) * T(V::v) * T(V::vbar) - D(V::v) * D(V::vbar)) * T(V::v) *
           T(V::minus) * T(V::plus) * T(V::vbar);
  return (D(V::minus) * D(V::plus) - qpow(1) * D(V::v) * D(V::vbar) * T(V::v) * T(V::vbar)) * T(V::minus) *
         T(V::plus);
}

/// Classical d'Alembertian in light-cone variables, d- d+ - dv dvb.
inline OpExpr classical_dalembert() { return P(V::minus) * P(V::plus) - P(V::v) * P(V::vbar); }

/// q-Maxwell intertwiners _qI^{±}_n.
inline OpExpr qmaxwell(Sign sign, int n, Basis basis) {
  const OpExpr nz = bracket(n + 2, {{V::z, -1}});
  const OpExpr nzb = bracket(n + 2, {{V::zbar, -1}});
  if (basis == Basis::hat && sign == Sign::plus) {
    OpExpr first = (qpow(1) * D(V::v) + M(V::zbar) * D(V::plus) * Tinv(V::minus) * Tinv(V::v) * T(V::vbar)) *
                   T(V::minus) * nz;
    OpExpr second = qpow(-n - 2) *
                    (D(V::minus) * T(V::minus) + qpow(-1) * M(V::zbar) * D(V::vbar) -
                     lam() * M(V::v) * M(V::zbar) * D(V::minus) * D(V::plus) * T(V::vbar)) *
                    Tinv(V::minus) * D(V::z);
    return scalar(half()) * (first - second) * T(V::plus) * T(V::v) * T(V::z) * Tinv(V::zbar);
  }
  if (basis == Basis::hat) {
    OpExpr first = scalar(half()) *
                   (D(V::vbar) + qpow(1) * M(V::z) * D(V::plus) * T(V::vbar) * T(V::minus) * Tinv(V::v) -
                    qpow(1) * lam() * M(V::v) * D(V::minus) * D(V::plus) * T(V::vbar)) *
                   T(V::vbar) * nzb;
    OpExpr second = scalar(half()) * qpow(n + 3) * (D(V::minus) + qpow(1) * M(V::z) * D(V::v) * T(V::minus)) *
                    D(V::zbar) * T(V::minus) * T(V::vbar);
    return first - second;
  }
  if (sign == Sign::plus) {
    OpExpr first = scalar(half()) * qpow(1) *
                   (D(V::v) + M(V::zbar) * D(V::plus) * T(V::minus) * Tinv(V::vbar) * T(V::v)) * T(V::v) * nz;
    OpExpr second = scalar(half()) * qpow(n + 3) *
                    (D(V::minus) + M(V::zbar) * D(V::vbar) * T(V::minus) +
                     lam() * qpow(-1) * M(V::v) * M(V::zbar) * D(V::minus) * D(V::plus) * Tinv(V::vbar) *
                         T(V::minus)) *
                    D(V::z) * T(V::minus) * T(V::v);
    return first - second;
  }
  OpExpr first = (D(V::vbar) * T(V::vbar) * T(V::minus) + M(V::z) * D(V::plus) * T(V::v) +
                  qpow(-1) * lam() * M(V::v) * D(V::minus) * D(V::plus) * T(V::minus)) *
                 nzb;
  OpExpr second =
      qpow(-n - 2) * (D(V::minus) + M(V::z) * D(V::v) * Tinv(V::minus)) * D(V::zbar) * T(V::vbar);
  return scalar(half()) * (first - second) * T(V::plus) * T(V::zbar) * Tinv(V::z);
}

/// q-deformed current conservation operator I_13.
inline OpExpr current_conservation(Basis basis, Reading reading = Reading::printed) {
  const OpExpr nz1 = bracket(-1, {{V::z, 1}});
  const OpExpr nzb1 = bracket(-1, {{V::zbar, 1}});
  if (basis == Basis::hat)
    return qpow(3) * nz1 * T(V::z) * D(V::zbar) * D(V::v) * T(V::v) * T(V::minus) * T(V::plus) +
           qpow(1) * D(V::z) * T(V::z) * D(V::zbar) * D(V::minus) * T(V::v) * T(V::plus) +
           qpow(1) * nz1 * T(V::z) * nzb1 * D(V::plus) * T(V::plus) * T(V::vbar) +
           qpow(-1) * nzb1 * D(V::z) * T(V::z) * D(V::vbar) * T(V::v) * Tinv(V::minus) * T(V::plus) -
           lam() * M(V::v) * nzb1 * D(V::z) * T(V::z) * D(V::minus) * D(V::plus) * T(V::v) * Tinv(V::minus) *
               T(V::plus) * T(V::vbar);
  return nz1 * D(V::zbar) * T(V::zbar) * D(V::v) * T(V::vbar) * T(V::plus) * Tinv(V::minus) +
         qpow(1) * D(V::zbar) * T(V::zbar) * D(V::z) * D(V::minus) * T(V::vbar) * T(V::plus) +
         qpow(1) * nzb1 * T(V::zbar) * nz1 * D(V::plus) * T(V::plus) * T(V::v) +
         qpow(2) * nzb1 * D(V::z) * T(V::zbar) * D(V::vbar) * T(V::vbar) * T(V::minus) * T(V::plus) -
         (reading == Reading::printed ? lam() : -lam()) * qpow(1) * M(V::v) * nzb1 * D(V::z) * T(V::zbar) *
             D(V::minus) * D(V::plus) * T(V::minus) * T(V::plus);
}

/// Left factor relating the operator image of an inhomogeneous field to the
/// current. Identity as printed; the repaired reading twists the hat-minus and
/// tilde-plus equations.
inline OpExpr maxwell_output_twist(Sign sign, Basis basis, Reading reading) {
  if (reading == Reading::printed) return identity();
  if (basis == Basis::hat && sign == Sign::minus)
    return T(V::z) * T(V::z) * T(V::plus) * T(V::plus) * T(V::v) * T(V::v);
  if (basis == Basis::tilde && sign == Sign::plus)
    return qpow(-2) * T(V::zbar) * T(V::zbar) * Tinv(V::minus) * Tinv(V::minus) * Tinv(V::v) * Tinv(V::v);
  return identity();
}

/// Simple-root operators I_1, I_2, I_3: classical, or q-deformed (hat basis).
inline OpExpr simple_root(int a, bool deformed) {
  if (a < 1 || a > 3) throw std::invalid_argument("simple_root: index must be 1, 2 or 3");
  if (!deformed) {
    if (a == 1) return P(V::z);
    if (a == 3) return P(V::zbar);
    return M(V::z) * M(V::zbar) * P(V::plus) + M(V::z) * P(V::v) + M(V::zbar) * P(V::vbar) + P(V::minus);
  }
  if (a == 1) return D(V::z) * T(V::z) * T(V::v) * T(V::plus) * Tinv(V::minus) * Tinv(V::vbar);
  if (a == 3) return D(V::zbar) * T(V::zbar);
  return (qpow(1) * M(V::z) * D(V::v) * T(V::minus) * T(V::minus) +
          M(V::z) * M(V::zbar) * D(V::plus) * T(V::minus) * T(V::vbar) * Tinv(V::v) + D(V::minus) * T(V::minus) +
          qpow(-1) * M(V::zbar) * D(V::vbar) - lam() * M(V::v) * M(V::zbar) * D(V::minus) * D(V::plus) * T(V::vbar)) *
         T(V::vbar) * Tinv(V::zbar);
}

/// Parameter-dependent Weyl operators; deformed ones exist in the hat basis only.
inline OpExpr weyl(Sign sign, int n, bool deformed, Basis basis = Basis::hat) {
  if (deformed && basis != Basis::hat)
    throw BasisUnavailable("q-deformed Weyl operators are available in the hat basis only");
  const OpExpr i1 = simple_root(sign == Sign::plus ? 1 : 3, deformed);
  const OpExpr i2 = simple_root(2, deformed);
  QScalar c1, c2, c3;
  if (deformed) {
    c1 = half() * qint(n) * qint(n - 1);
    c2 = -(half() * qint(2) * qint(n - 1) * qint(n + 1));
    c3 = half() * qint(n) * qint(n + 1);
  } else {
    c1 = QScalar::rational(static_cast<long long>(n) * (n - 1), 2);
    c2 = QScalar(-(static_cast<long long>(n) * n - 1));
    c3 = QScalar::rational(static_cast<long long>(n) * (n + 1), 2);
  }
  return scalar(c1) * i1 * i1 * i2 * i2 + scalar(c2) * i1 * i2 * i2 * i1 + scalar(c3) * i2 * i2 * i1 * i1;
}

/// The explicit long-form classical Weyl operators.
inline OpExpr weyl_long_form(Sign sign) {
  auto c = [](long long k) { return scalar(QScalar(k)); };
  const OpExpr z = M(V::z), zb = M(V::zbar);
  const OpExpr dp = P(V::plus), dm = P(V::minus), dv = P(V::v), dvb = P(V::vbar);
  if (sign == Sign::plus) {
    OpExpr a = z * z * zb * zb * dp * dp + z * z * dv * dv + zb * zb * dvb * dvb + dm * dm +
               c(2) * z * z * zb * dv * dp + c(2) * z * zb * zb * dp * dvb + c(2) * z * zb * (dm * dp + dv * dvb) +
               c(2) * zb * dm * dvb + c(2) * z * dv * dm;
    OpExpr b = z * zb * zb * dp * dp + z * dv * dv + c(2) * z * zb * dv * dp + zb * zb * dp * dvb +
               zb * (dm * dp + dv * dvb) + dv * dm;
    OpExpr d = zb * zb * dp * dp + dv * dv + c(2) * zb * dv * dp;
    return a * P(V::z) * P(V::z) - c(6) * b * P(V::z) + c(12) * d;
  }
  OpExpr a = z * z * zb * zb * dp * dp + z * z * dv * dv + zb * zb * dvb * dvb + dm * dm +
             c(2) * z * z * zb * dv * dp + c(2) * z * zb * zb * dp * dvb + c(2) * z * zb * (dm * dp + dv * dvb) +
             c(2) * zb * dm * dvb + c(2) * z * dv * dm;
  OpExpr b = z * z * zb * dp * dp + zb * dvb * dvb + c(2) * z * zb * dp * dvb + z * z * dv * dp +
             z * (dm * dp + dv * dvb) + dm * dvb;
  OpExpr d = z * z * dp * dp + dvb * dvb + c(2) * z * dp * dvb;
  return a * P(V::zbar) * P(V::zbar) - c(6) * b * P(V::zbar) + c(12) * d;
}

/// Factorized q-Maxwell form 1/2([n+2] I_a I_2 - [n+3] I_2 I_a), hat basis.
/// Exploratory only.
inline OpExpr qmaxwell_factorized(Sign sign, int n) {
  const OpExpr ia = simple_root(sign == Sign::plus ? 1 : 3, true);
  const OpExpr i2 = simple_root(2, true);
  return scalar(half()) * (scalar(qint(n + 2)) * ia * i2 - scalar(qint(n + 3)) * i2 * ia);
}

}  // namespace eq

// ---------------------------------------------------------------------------
// Equation addressing

enum class Family {
  dalembert,
  maxwell_plus,
  maxwell_minus,
  current_conservation,
  weyl_plus,
  weyl_minus,
  metric_to_weyl_plus,
  metric_to_weyl_minus
};

struct EquationSpec {
  Family family = Family::dalembert;
  Basis basis = Basis::hat;
  int n = 0;
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::dalembert: return "dalembert";
    case Family::maxwell_plus: return "maxwell_plus";
    case Family::maxwell_minus: return "maxwell_minus";
    case Family::current_conservation: return "current_conservation";
    case Family::weyl_plus: return "weyl_plus";
    case Family::weyl_minus: return "weyl_minus";
    case Family::metric_to_weyl_plus: return "metric_to_weyl_plus";
    case Family::metric_to_weyl_minus: return "metric_to_weyl_minus";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::dalembert, Family::maxwell_plus, Family::maxwell_minus, Family::current_conservation,
                   Family::weyl_plus, Family::weyl_minus, Family::metric_to_weyl_plus, Family::metric_to_weyl_minus})
    if (s == to_string(f)) return f;
  throw std::invalid_argument("unknown equation family: " + s);
}

inline Basis parse_basis(const std::string& s) {
  if (s == "hat") return Basis::hat;
  if (s == "tilde") return Basis::tilde;
  throw std::invalid_argument("unknown basis: " + s);
}

/// The deformed operator named by the request. Weyl families use the hat basis;
/// the metric-to-Weyl families are the Weyl operators at parameter 2.
inline OpExpr build(const EquationSpec& spec) {
  switch (spec.family) {
    case Family::dalembert: return eq::qdalembert(spec.basis);
    case Family::maxwell_plus: return eq::qmaxwell(Sign::plus, spec.n, spec.basis);
    case Family::maxwell_minus: return eq::qmaxwell(Sign::minus, spec.n, spec.basis);
    case Family::current_conservation: return eq::current_conservation(spec.basis);
    case Family::weyl_plus: return eq::weyl(Sign::plus, spec.n, true, spec.basis);
    case Family::weyl_minus: return eq::weyl(Sign::minus, spec.n, true, spec.basis);
    case Family::metric_to_weyl_plus: return eq::weyl(Sign::plus, 2, true, spec.basis);
    case Family::metric_to_weyl_minus: return eq::weyl(Sign::minus, 2, true, spec.basis);
  }
  throw std::invalid_argument("unknown family");
}

// ---------------------------------------------------------------------------
// Operator comparison and mutation

/// Extensional equality on a set of keys, after mapping each image through
/// `view` (identity for exact comparison, limit_q1 for classical ones).
inline bool agree_on(const OpExpr& a, const OpExpr& b, const std::vector<Key>& keys, bool at_q1,
                     Key* witness = nullptr) {
  for (const auto& k : keys) {
    bool same;
    if (at_q1)
      same = limit_q1_image(a, k) == limit_q1_image(b, k);
    else
      same = apply_to_key(a, k) == apply_to_key(b, k);
    if (!same) {
      if (witness) *witness = k;
      return false;
    }
  }
  return true;
}

namespace detail {

inline bool is_qpower_scalar(const QScalar& s) {
  return !s.is_zero() && s.num().terms().size() == 1 && s.den().is_constant();
}

inline OpExpr mutate_rec(const OpExpr& op, int& site) {
  return std::visit(
      [&](const auto& n) -> OpExpr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, OpExpr::Scalar>) {
          if (is_qpower_scalar(n.value) && site-- == 0) return OpExpr(OpExpr::Scalar{n.value * QScalar::q()});
          return op;
        } else if constexpr (std::is_same_v<N, OpExpr::Sum>) {
          OpExpr::Sum s;
          for (const auto& t : n.terms) s.terms.push_back(mutate_rec(t, site));
          return OpExpr(std::move(s));
        } else if constexpr (std::is_same_v<N, OpExpr::Product>) {
          OpExpr::Product p;
          for (const auto& f : n.factors) p.factors.push_back(mutate_rec(f, site));
          return OpExpr(std::move(p));
        } else {
          return op;
        }
      },
      op.node());
}

}  // namespace detail

/// Number of scalar prefactors of the form c*q^k in op.
inline int qpower_sites(const OpExpr& op) {
  int site = 1 << 30;
  const int start = site;
  detail::mutate_rec(op, site);
  return start - site;
}

/// op with the q-exponent of its `site`-th scalar prefactor raised by one.
inline OpExpr mutate_qpower(const OpExpr& op, int site) {
  if (site < 0 || site >= qpower_sites(op)) throw std::out_of_range("mutation site out of range");
  return detail::mutate_rec(op, site);
}

}  // namespace qconf
