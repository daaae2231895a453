#include <gtest/gtest.h>

#include <random>

#include "qconf/waves.hpp"

using namespace qconf;

namespace {
QScalar q(int k) { return QScalar::q_pow(k); }
constexpr Basis H = Basis::hat, Tl = Basis::tilde;
FieldState k(Gen g, Basis b = H) { return momentum_gen(g, b); }
FieldState c(const QScalar& x, Basis b = H) { return scalar_state(x, b); }
SolutionConstants gamma1(Basis b, int s, Gen g) {
  return SolutionConstants::one_hot(gamma_role(b), {s, static_cast<int>(g), 0, 0, 0});
}
constexpr std::array<Gen, 4> kGens{Gen::v, Gen::minus, Gen::plus, Gen::vbar};
}  // namespace

TEST(ExpPoly, Parse) {
  const ExpPoly p = ExpPoly::parse("1,2,-3,0,1,0");
  EXPECT_EQ(p(0, 0), 1);
  EXPECT_EQ(p(2, 1), 1 + 4 - 3 + 2);
  EXPECT_TRUE(ExpPoly::parse("0").is_zero());
  EXPECT_THROW(ExpPoly::parse("1,2,3,4,5,6,7"), std::invalid_argument);
  EXPECT_THROW(ExpPoly::parse("1,x"), std::invalid_argument);
}

TEST(PlaneComponent, ZeroIsUnit) {
  for (Basis b : {H, Tl}) EXPECT_EQ(plane_component(0, b), c(QScalar(1), b));
  EXPECT_THROW(plane_component(-1, H), NegativeArgument);
}

TEST(PlaneComponent, FirstOrderLimitIsPairing) {
  const Rational h(1, 2);
  const ClassicalState want{
      {{Key{0, 0, 0, 1, 0, 0}, Exps{0, 0, 1, 0}}, h},   // k+ x-
      {{Key{0, 0, 0, 0, 1, 0}, Exps{0, 1, 0, 0}}, h},   // k- x+
      {{Key{0, 0, 0, 0, 0, 1}, Exps{1, 0, 0, 0}}, -h},  // kv vbar
      {{Key{0, 0, 1, 0, 0, 0}, Exps{0, 0, 0, 1}}, -h},  // kvb v
  };
  for (Basis b : {H, Tl}) EXPECT_EQ(limit_q1_state(plane_component(1, b)), want) << to_string(b);
}

TEST(PlaneComponent, DalembertOnCone) {
  for (Basis b : {H, Tl}) {
    const FieldState r = apply(eq::qdalembert(b), plane_component(2, b));
    EXPECT_FALSE(r.is_zero()) << "off-cone residual should be visible";
    EXPECT_TRUE(r.cone_reduced().is_zero());
  }
}

TEST(PlaneComponent, DalembertWithExponentPolynomials) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> co(-2, 2);
  for (int t = 0; t < 3; ++t) {
    std::map<std::pair<int, int>, long long> m;
    for (auto ij : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}) m[ij] = co(rng);
    const ExpPoly p(m);
    for (Basis b : {H, Tl})
      for (int s = 0; s <= 4; ++s)
        EXPECT_TRUE(apply(eq::qdalembert(b), plane_component(s, b, p)).cone_reduced().is_zero()) << s;
  }
}

TEST(PlaneComponent, ClassicalOracle) {
  std::mt19937_64 rng(9);
  for (int s = 0; s <= 6; ++s) {
    const FieldState f = f_component(s);
    for (int i = 0; i < 20; ++i) {
      const ConePoint p = random_cone_point(rng);
      Rational want = 1;
      for (int j = 0; j < s; ++j) want *= classical_pairing(p);
      EXPECT_EQ(evaluate_classical(f, p), want) << s;
    }
  }
}

TEST(AssembleExp, Weights) {
  const auto a0 = assemble_exp(0, H);
  ASSERT_EQ(a0.size(), 1u);
  EXPECT_EQ(a0[0].weight, QScalar(1));
  EXPECT_EQ(a0[0].component, c(QScalar(1)));
  const auto a2 = assemble_exp(2, H);
  EXPECT_EQ(a2[2].weight, QScalar(1) / qint(2));
  const auto a3 = assemble_exp(3, Tl);
  const Rational want[] = {1, 1, Rational(1, 2), Rational(1, 6)};
  for (int s = 0; s <= 3; ++s) EXPECT_EQ(limit_q1(a3[static_cast<std::size_t>(s)].weight), want[s]);
  EXPECT_THROW(assemble_exp(-1, H), NegativeArgument);
}

TEST(Homogeneous, ExampleCoefficient) {
  const auto cs = SolutionConstants::one_hot(ConstRole::r_hat, {0, 0, 1, 0, 0});
  const FieldState zb = zpow(0, 1, H);
  const FieldState want = (k(Gen::vbar) - c(q(-1)) * zb * k(Gen::minus)) * (k(Gen::vbar) - zb * k(Gen::minus));
  EXPECT_EQ(homogeneous_coefficient(Sign::minus, H, 0, 0, cs), want);
  EXPECT_EQ(maxwell_homogeneous(Sign::minus, H, 0, 0, cs), want);
}

TEST(Homogeneous, ZeroConstants) {
  const SolutionConstants zero{ConstRole::p_hat, {}};
  EXPECT_TRUE(maxwell_homogeneous(Sign::plus, H, 2, 1, zero).is_zero());
}

TEST(Homogeneous, WrongRoleRejected) {
  EXPECT_THROW(homogeneous_coefficient(Sign::plus, H, 0, 0, SolutionConstants{ConstRole::r_hat, {}}),
               std::invalid_argument);
}

TEST(Homogeneous, PrintedSolutionsHold) {
  const auto cs = SolutionConstants::one_hot(ConstRole::p_hat, {1, 0, 2, 0, 0});
  EXPECT_TRUE(homogeneous_residual(Sign::plus, H, 1, 0, cs).is_zero());
  for (Basis b : {H, Tl})
    for (Sign sg : {Sign::plus, Sign::minus})
      for (int s = 0; s <= 2; ++s)
        for (const auto& slot : homogeneous_slots(1, s)) {
          const auto one = SolutionConstants::one_hot(homogeneous_role(sg, b), slot);
          const bool printed_ok = homogeneous_residual(sg, b, 1, s, one).is_zero();
          // the printed tilde-minus exponents only work at s = 0
          if (b == Tl && sg == Sign::minus && s > 0)
            EXPECT_FALSE(printed_ok);
          else
            EXPECT_TRUE(printed_ok);
          EXPECT_TRUE(homogeneous_residual(sg, b, 1, s, one, Reading::repaired).is_zero());
        }
}

TEST(Homogeneous, SlotCount) {
  // a = 1, 3 take (i, j) with i + j <= m; a = 2 takes i <= m
  for (int m = 0; m <= 3; ++m)
    EXPECT_EQ(homogeneous_slots(m, 0).size(), static_cast<std::size_t>((m + 1) * (m + 2) + (m + 1)));
}

TEST(Current, Kernel) {
  EXPECT_EQ(current_kernel(H, 2, 1, gamma1(H, 1, Gen::v)), k(Gen::v) * k(Gen::v) * k(Gen::v));
  const auto j = current_components(H, 0, 1, gamma1(H, 1, Gen::v));
  EXPECT_EQ(j[static_cast<int>(Gen::minus)], c(-q(-3)) * k(Gen::v) * k(Gen::plus));
}

TEST(Current, ContractionOnCone) {
  for (int s = 1; s <= 3; ++s) {
    const auto j = current_components(H, 1, s, gamma1(H, s, Gen::minus));
    const FieldState r = c(q(1)) * j[static_cast<int>(Gen::plus)] * k(Gen::plus) + j[static_cast<int>(Gen::v)] * k(Gen::v);
    EXPECT_TRUE(r.cone_reduced().is_zero());
  }
}

TEST(Current, IdentitySuite) {
  for (Basis b : {H, Tl})
    for (int m = 0; m <= 2; ++m)
      for (int s = 1; s <= 3; ++s)
        for (Gen g : kGens) {
          const auto ids = current_identity_suite(b, m, s, gamma1(b, s, g));
          ASSERT_EQ(ids.size(), 9u);
          for (const auto& id : ids) EXPECT_TRUE(id.residual.is_zero()) << id.name;
        }
  const SolutionConstants zero{ConstRole::gamma_tilde, {}};
  for (const auto& id : current_identity_suite(Tl, 1, 1, zero)) EXPECT_TRUE(id.residual.is_zero());
  EXPECT_THROW(current_identity_suite(H, 0, 0, gamma1(H, 0, Gen::v)), IndexError);
}

TEST(Current, ConservationOperator) {
  for (int m = 0; m <= 2; ++m)
    for (int s = 1; s <= 3; ++s)
      for (Gen g : kGens) {
        EXPECT_TRUE(current_conservation_residual(H, m, s, gamma1(H, s, g), Reading::printed, true).is_zero());
        EXPECT_TRUE(current_conservation_residual(Tl, m, s, gamma1(Tl, s, g), Reading::repaired, true).is_zero());
        // printed tilde form holds up to s = 2 only
        EXPECT_EQ(current_conservation_residual(Tl, m, s, gamma1(Tl, s, g), Reading::printed, true).is_zero(), s <= 2);
      }
}

TEST(Inhomogeneous, RepairedReadingHolds) {
  for (Basis b : {H, Tl})
    for (Sign sg : {Sign::plus, Sign::minus})
      for (int s = 1; s <= 2; ++s)
        for (Gen g : kGens) {
          EXPECT_TRUE(inhomogeneous_residual(sg, b, 1, s, gamma1(b, s, g), Reading::repaired).is_zero());
          EXPECT_FALSE(inhomogeneous_residual(sg, b, 1, s, gamma1(b, s, g), Reading::printed).is_zero());
        }
}

TEST(Inhomogeneous, PrintedIsScalarMultipleWhereNoTwistNeeded) {
  // hat+ with the printed d_s: the image is s/(s+1) times the current at q = 1
  for (int s = 1; s <= 3; ++s) {
    const auto g = gamma1(H, s, Gen::v);
    const auto sol = maxwell_inhomogeneous(Sign::plus, H, 0, s, g);
    const FieldState img = apply(eq::qmaxwell(Sign::plus, 0, H), sol.field).cone_reduced();
    const QScalar ratio = inhomogeneous_norm(s, H, Reading::printed) / inhomogeneous_norm(s, H, Reading::repaired);
    EXPECT_EQ(img, (ratio * sol.current).cone_reduced());
    EXPECT_EQ(limit_q1(ratio), Rational(s, s + 1));
  }
}

TEST(Inhomogeneous, NeedsPositiveS) {
  EXPECT_THROW(maxwell_inhomogeneous(Sign::plus, H, 0, 0, gamma1(H, 0, Gen::v)), IndexError);
}

TEST(SIndependence, Fields) {
  for (Basis b : {H, Tl})
    for (int m = 0; m <= 2; ++m)
      for (Gen g : kGens) EXPECT_TRUE(field_s_independent(b, m, 2, g));
}

TEST(SIndependence, NoCurrentUniformizer) {
  for (int m = 0; m <= 2; ++m)
    for (Gen g : kGens) EXPECT_TRUE(current_s_uniformizers(H, m, 3, g, 10).empty());
}

TEST(Omega, PlaneComponentsDifferBeyondZero) {
  EXPECT_EQ(omega_state(plane_component(0, H)), plane_component(0, Tl));
  EXPECT_NE(omega_state(plane_component(1, H)), plane_component(1, Tl));
  const FieldState p = plane_component(2, H);
  EXPECT_EQ(omega_state(omega_state(p)), p);
}
