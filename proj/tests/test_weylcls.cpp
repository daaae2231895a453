#include <gtest/gtest.h>

#include <random>

#include "qconf/weylcls.hpp"

using namespace qconf;

namespace {
const GRat I = GRat::i();
const GRat half(Rational(1, 2));
XPoly x(int i) { return XPoly::var(i); }
LPoly l(Var v) { return LPoly::var(static_cast<int>(v)); }

std::vector<SymTensor2> seeds(std::uint64_t seed, int n, int degree) {
  std::mt19937_64 rng(seed);
  std::vector<SymTensor2> out;
  for (int i = 0; i < n; ++i) out.push_back(random_traceless_seed(rng, degree));
  return out;
}
}  // namespace

TEST(GRat, Arithmetic) {
  EXPECT_EQ(I * I, GRat(-1));
  EXPECT_EQ((GRat(1) + I) / (GRat(1) - I), I);
  EXPECT_EQ((GRat(3) + I).conj(), GRat(3) - I);
  EXPECT_EQ(GRat(Rational(1, 2), Rational(-3, 4)).str(), "(1/2-3/4i)");
}

TEST(ParseXPoly, Grammar) {
  EXPECT_EQ(parse_xpoly("x0^2 - 3/2*x1*x2 + i"), x(0).pow(2) - GRat(Rational(3, 2)) * x(1) * x(2) + XPoly(I));
  EXPECT_EQ(parse_xpoly("(x0 + x3)^2"), x(0) * x(0) + GRat(2) * x(0) * x(3) + x(3) * x(3));
  EXPECT_EQ(parse_xpoly("-x1"), -x(1));
  EXPECT_THROW(parse_xpoly("x4"), ParseError);
  EXPECT_THROW(parse_xpoly("x0 +"), ParseError);
  EXPECT_THROW(parse_xpoly("(x0"), ParseError);
  EXPECT_THROW(parse_xpoly("1/0"), ParseError);
}

TEST(CoordMap, Examples) {
  EXPECT_EQ(coord_map(x(0)), half * (l(Var::plus) + l(Var::minus)));
  EXPECT_EQ(coord_map(x(1)), half * (l(Var::v) + l(Var::vbar)));
  EXPECT_EQ(box(x(0) * x(0)), XPoly(GRat(2)));
  // box is 4 (d- d+ - dv dvb) in light-cone variables: box(x0^2) = 2 on both sides
  const LPoly img = apply_classical(eq::classical_dalembert(), coord_map(x(0) * x(0)));
  EXPECT_EQ(GRat(4) * img, coord_map(XPoly(GRat(2))));
}

TEST(CoordMap, RoundTripAndBox) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> co(-3, 3);
  for (int t = 0; t < 5; ++t) {
    XPoly p;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b)
        for (int c = 0; a + b + c <= 4; ++c) p.add({a, b, c, 4 - a - b - c}, GRat(co(rng)));
    EXPECT_EQ(coord_unmap(coord_map(p)), p);
    EXPECT_EQ(coord_map(box(p)), GRat(4) * apply_classical(eq::classical_dalembert(), coord_map(p)));
  }
  EXPECT_THROW(coord_unmap(zmono(1, 0)), std::invalid_argument);
}

TEST(LinearizedWeyl, Examples) {
  EXPECT_TRUE(linearized_weyl(SymTensor2{}).is_zero());
  SymTensor2 trace;
  const XPoly f = x(0) * x(1) * x(2) + x(3).pow(3);
  for (int m = 0; m < 4; ++m) trace(m, m) = GRat(eta()[static_cast<std::size_t>(m)]) * f;
  EXPECT_TRUE(linearized_weyl(trace).is_zero());
  SymTensor2 h;
  h(1, 1) = x(0) * x(0);
  h(2, 2) = -x(0) * x(0);
  const Riemann4 c = linearized_weyl(h);
  // h depends on x0 only, so C_2121 cancels; other components do not
  EXPECT_TRUE(c(2, 1, 2, 1).is_zero());
  EXPECT_FALSE(c.is_zero());
  const WeylComponents w = dictionaries(c, SymTensor2{});
  EXPECT_EQ(w.Cplus[2], GRat(3) * (w.C[1] - I * w.C[3]));
}

TEST(LinearizedWeyl, SymmetriesOnRandomSeeds) {
  for (const auto& h : seeds(17, 20, 3)) {
    EXPECT_TRUE(h.is_symmetric());
    EXPECT_TRUE(h.trace().is_zero());
    const Riemann4 r = linearized_riemann(h);
    EXPECT_TRUE(r.antisymmetric() && r.pair_symmetric() && r.bianchi());
    const Riemann4 c = linearized_weyl(h);
    EXPECT_TRUE(c.antisymmetric());
    EXPECT_TRUE(c.pair_symmetric());
    EXPECT_TRUE(c.bianchi());
    EXPECT_TRUE(c.traceless());
  }
}

TEST(LinearizedWeyl, RejectsAsymmetricInput) {
  SymTensor2 h;
  h(0, 1) = x(0);
  EXPECT_THROW(linearized_weyl(h), NotSymmetric);
}

TEST(WeylEquations, DegreeCounting) {
  EXPECT_TRUE(weyl_equations_index(SymTensor2{}).is_zero());
  for (const auto& h : seeds(5, 5, 3)) EXPECT_TRUE(weyl_equations_index(h).is_zero());
  SymTensor2 h;
  h(1, 2) = h(2, 1) = x(0).pow(4);
  const SymTensor2 t = weyl_equations_index(h);
  EXPECT_FALSE(t.is_zero());
  EXPECT_TRUE(t.is_symmetric());
  EXPECT_TRUE(t.trace().is_zero());
}

TEST(Dictionaries, Examples) {
  const WeylComponents z = dictionaries(Riemann4{}, SymTensor2{});
  for (const auto& c : z.Cplus) EXPECT_TRUE(c.is_zero());
  for (const auto& c : z.Cminus) EXPECT_TRUE(c.is_zero());
  SymTensor2 t;
  t(0, 0) = XPoly(GRat(1));
  t(3, 3) = XPoly(GRat(1));
  const WeylComponents w = dictionaries(Riemann4{}, t);
  EXPECT_EQ(w.Tprime[1][1], t(0, 0) - t(3, 3));
  EXPECT_EQ(w.Tprime[2][2], XPoly(GRat(2)));
}

TEST(Dictionaries, RejectsNonWeylTensor) {
  Riemann4 c;
  c(0, 1, 0, 1) = x(0);
  EXPECT_THROW(dictionaries(c, SymTensor2{}), SymmetryViolation);
}

TEST(Dictionaries, PrintedAsymmetry) {
  SymTensor2 h;
  h(0, 1) = h(1, 0) = x(0) * x(2);
  h(1, 3) = h(3, 1) = x(3) * x(3);
  const WeylComponents w = dictionaries(linearized_weyl(h), SymTensor2{});
  EXPECT_EQ(w.Cplus[3], GRat(8) * (w.C[4] + w.C[8] + I * (w.C[9] + w.C[5])));
  EXPECT_EQ(w.Cminus[3], GRat(2) * (w.C[4] + w.C[8] - I * (w.C[9] + w.C[5])));
}

TEST(HelicityPoly, RepairedIsContractionWithNullVector) {
  // n = z zbar (1,0,0,1) + z (0,1,i,0) + zbar (0,1,-i,0) + (1,0,0,-1)
  const LPoly z = zmono(1, 0), zb = zmono(0, 1), one(GRat(1));
  const std::array<LPoly, 4> n{z * zb + one, z + zb, I * (z - zb), z * zb - one};
  for (const auto& h : seeds(23, 4, 2)) {
    LPoly want;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) want += n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)] * coord_map(h(a, b));
    EXPECT_EQ(helicity_poly(h, Reading::repaired), want);
    EXPECT_NE(helicity_poly(h, Reading::printed), want);
  }
}

TEST(MaxwellDictionary, Examples) {
  const MaxwellHelicity z = maxwell_dictionary(SymTensor2{}, {});
  EXPECT_TRUE(z.Fplus.is_zero() && z.Fminus.is_zero() && z.J0.is_zero());
  SymTensor2 F;
  F(3, 0) = XPoly(GRat(1));
  F(0, 3) = XPoly(GRat(-1));
  const MaxwellHelicity e3 = maxwell_dictionary(F, {});
  EXPECT_EQ(e3.Fplus, GRat(-2) * zmono(1, 0));
  SymTensor2 bad;
  bad(0, 1) = x(0);
  EXPECT_THROW(maxwell_dictionary(bad, {}), NotAntisymmetric);
}

TEST(MaxwellDictionary, IndexlessImagesMatchCurrent) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> co(-3, 3);
  for (Basis b : {Basis::hat, Basis::tilde})
    for (int t = 0; t < 3; ++t) {
      std::array<XPoly, 4> A;
      for (auto& a : A)
        for (int i = 0; i <= 3; ++i)
          for (int j = 0; i + j <= 3; ++j) a.add({i, j, co(rng) > 0 ? 1 : 0, 3 - i - j > 0 ? 1 : 0}, GRat(co(rng)));
      const SymTensor2 F = field_strength(A);
      EXPECT_TRUE(F.is_antisymmetric());
      const auto c = maxwell_calibration(F, maxwell_divergence(F), b);
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(*c, half);
    }
}

TEST(ParseSeed, Json) {
  const auto j = nlohmann::json::parse(R"({"h": {"1,1": "x0^2", "2,2": "-x0^2", "0,3": "x1"}})");
  const SymTensor2 h = parse_seed(j);
  EXPECT_EQ(h(1, 1), x(0) * x(0));
  EXPECT_EQ(h(3, 0), x(1));
  EXPECT_TRUE(h.is_symmetric());
  EXPECT_THROW(parse_seed(nlohmann::json::parse(R"({"g": {}})")), ParseError);
  EXPECT_THROW(parse_seed(nlohmann::json::parse(R"({"h": {"1,1": "x0", "0,0": "x0", "0,1": "x1", "1,0": "x2"}})")),
               NotSymmetric);
}

TEST(Calibration, ZeroSeedUndetermined) {
  const CalibrationReport r = index_vs_indexless({SymTensor2{}}, 2);
  EXPECT_TRUE(r.consistent());
  for (const auto& c : r.plus_constants) EXPECT_FALSE(c.has_value());
}

TEST(Calibration, PrintedDictionariesAreInconsistent) {
  const CalibrationReport r = index_vs_indexless(seeds(1, 10, 2), 2, Reading::printed);
  EXPECT_FALSE(r.consistent());
}

TEST(Calibration, RepairedReadingSurfacesEightVersusTwo) {
  const CalibrationReport r = index_vs_indexless(seeds(1, 10, 2), 2, Reading::repaired);
  ASSERT_TRUE(r.consistent()) << r.summary();
  EXPECT_EQ(r.plus_route, "I-(2)");
  EXPECT_EQ(r.minus_route, "I+(2)");
  const GRat q(Rational(1, 4));
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(*r.minus_constants[k], q) << k;
    EXPECT_EQ(*r.plus_constants[k], k == 3 ? GRat(1) : q) << k;
  }
  EXPECT_EQ(*r.asymmetry()[3], q);
}

TEST(Calibration, WeylEquationsUniformAfterScaling) {
  const auto s4 = seeds(2, 3, 4);
  const EquationCalibration ok = weyl_equation_calibration(s4, Reading::repaired, Rational(1, 4));
  ASSERT_TRUE(ok.uniform().has_value());
  EXPECT_EQ(*ok.uniform(), GRat(Rational(-3, 2)));
  EXPECT_FALSE(weyl_equation_calibration(s4, Reading::repaired, Rational(1)).uniform().has_value());
}

TEST(CurrentDivergence, ClassicalConservationOperator) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> co(-3, 3);
  for (Basis b : {Basis::hat, Basis::tilde}) {
    std::array<XPoly, 4> J;
    for (auto& a : J)
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j) a.add({i, j, 2 - i - j, 0}, GRat(co(rng)));
    const LPoly img = apply_classical(eq::current_conservation(b), maxwell_dictionary(SymTensor2{}, J).J0);
    EXPECT_EQ(img, current_divergence(J));
  }
}
