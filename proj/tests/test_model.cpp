#include <gtest/gtest.h>

#include <random>

#include "awr/model.hpp"
#include "awr/pressure.hpp"

namespace awr {
namespace {

const PowerLaw kLinear(1.0);

TEST(PressureLaw, PowerLawValuesAndDerivatives) {
  const PowerLaw quad(2.0);
  EXPECT_DOUBLE_EQ(quad(3.0), 9.0);
  EXPECT_DOUBLE_EQ(quad.derivative(3.0), 6.0);
  EXPECT_DOUBLE_EQ(quad.second_derivative(3.0), 2.0);
  const PowerLaw frac(1.5);
  EXPECT_NEAR(frac(4.0), 8.0, 1e-14);
  EXPECT_NEAR(frac.derivative(4.0), 3.0, 1e-14);
  EXPECT_NEAR(frac.second_derivative(4.0), 0.375, 1e-14);
}

TEST(PressureLaw, HypothesesHoldForAdmissibleExponents) {
  for (double g : {1.0, 1.5, 2.0, 3.0}) EXPECT_TRUE(satisfies_hypotheses(PowerLaw(g))) << g;
  EXPECT_THROW(PowerLaw(0.5), Error);
}

TEST(PressureLaw, InversionRecoversDensity) {
  for (double g : {1.0, 2.0, 2.7}) {
    const PowerLaw p(g);
    for (double rho : {1e-6, 0.3, 1.0, 4.5, 120.0}) {
      EXPECT_NEAR(invert_pressure(p, p(rho)), rho, 1e-12 * std::max(1.0, rho));
    }
  }
}

TEST(State, RejectsVacuumAndNegativeVelocity) {
  EXPECT_THROW(StatePV(0.0, 1.0), Error);
  EXPECT_THROW(StatePV(1e-11, 1.0), Error);
  EXPECT_THROW(StatePV(1.0, -0.1), Error);
  EXPECT_NO_THROW(StatePV(1.0, 0.0));
}

TEST(Conversion, ToConservedExamples) {
  EXPECT_DOUBLE_EQ(to_conserved(StatePV(1.5, 3.0), kLinear).y, 6.75);
  EXPECT_DOUBLE_EQ(to_conserved(StatePV(1.0, 0.0), kLinear).y, 1.0);
  EXPECT_DOUBLE_EQ(to_conserved(StatePV(1.0, 0.0), PowerLaw(3.0)).y, 1.0);
  EXPECT_DOUBLE_EQ(to_conserved(StatePV(4.0, 0.5), kLinear).y, 18.0);
}

TEST(Conversion, ToPrimitiveExamples) {
  const StatePV a = to_primitive(StateRY(1.5, 6.75), kLinear);
  EXPECT_DOUBLE_EQ(a.v, 3.0);
  const PowerLaw quad(2.0);
  EXPECT_EQ(to_primitive(StateRY(2.0, 2.0 * quad(2.0)), quad).v, 0.0);
  EXPECT_DOUBLE_EQ(to_primitive(StateRY(4.0, 18.0), kLinear).v, 0.5);
}

TEST(Conversion, NegativeVelocityIsAnError) {
  try {
    to_primitive(StateRY(2.0, 3.9), kLinear);
    FAIL() << "expected NegativeVelocity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NegativeVelocity);
  }
  // Round-off below the tolerance decodes to v = 0.
  EXPECT_EQ(to_primitive(StateRY(2.0, 4.0 - 1e-13), kLinear).v, 0.0);
}

TEST(Flux, Examples) {
  const Flux2 f = flux(StatePV(1.5, 3.0), kLinear);
  EXPECT_DOUBLE_EQ(f.f1, 4.5);
  EXPECT_DOUBLE_EQ(f.f2, 20.25);
  EXPECT_EQ(flux(StatePV(2.0, 0.0), kLinear), (Flux2{0.0, 0.0}));
  const Flux2 g = flux(StatePV(4.0, 0.5), kLinear);
  EXPECT_DOUBLE_EQ(g.f1, 2.0);
  EXPECT_DOUBLE_EQ(g.f2, 9.0);
}

TEST(Eigenstructure, Examples) {
  const Eigenvalues a = eigenvalues(StatePV(1.5, 3.0), kLinear);
  EXPECT_DOUBLE_EQ(a.lambda1, 1.5);
  EXPECT_DOUBLE_EQ(a.lambda2, 3.0);
  EXPECT_DOUBLE_EQ(eigenvalues(StatePV(2.0, 2.0), kLinear).lambda1, 0.0);
  const Eigenvalues c = eigenvalues(StatePV(4.0, 0.5), kLinear);
  EXPECT_DOUBLE_EQ(c.lambda1, -3.5);
  EXPECT_DOUBLE_EQ(c.lambda2, 0.5);
}

TEST(LaxCurves, FirstFamily) {
  const StatePV s0(1.5, 3.0);
  EXPECT_DOUBLE_EQ(lax1_velocity(1.5, s0, kLinear), 3.0);
  const double rho_hat = (4.5 + std::sqrt(8.25)) / 2.0;
  EXPECT_NEAR(lax1_velocity(rho_hat, s0, kLinear), 4.5 - rho_hat, 1e-15);
  EXPECT_NEAR(lax1_velocity(rho_hat, s0, kLinear), 0.813859, 1e-6);
  EXPECT_DOUBLE_EQ(lax1_velocity(4.0, s0, kLinear), 0.5);
}

TEST(LaxCurves, SecondFamilyIsConstantVelocity) {
  EXPECT_EQ(lax2_velocity(7.0, StatePV(1.5, 3.0)), 3.0);
  EXPECT_EQ(lax2_velocity(0.1, StatePV(4.0, 0.5)), 0.5);
  EXPECT_EQ(lax2_velocity(2.0, StatePV(1.0, 3.0)), 3.0);
}

TEST(RiemannInvariants, Examples) {
  const RiemannInvariants a = riemann_invariants(StatePV(1.5, 3.0), kLinear);
  EXPECT_DOUBLE_EQ(a.z, 3.0);
  EXPECT_DOUBLE_EQ(a.w, 4.5);
  // Both data states of the second test family sit on w = 4.5.
  EXPECT_DOUBLE_EQ(riemann_invariants(StatePV(4.0, 0.5), kLinear).w, 4.5);
  EXPECT_NEAR(riemann_invariants(StatePV(1e-9, 2.0), kLinear).w, 2.0, 1e-8);
}

class ModelProperties : public ::testing::TestWithParam<double> {};

TEST_P(ModelProperties, SampledInvariants) {
  const PowerLaw p(GetParam());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho_dist(1e-6, 10.0);
  std::uniform_real_distribution<double> v_dist(0.0, 10.0);
  for (int i = 0; i < 100000; ++i) {
    const StatePV s(rho_dist(rng), v_dist(rng));
    const Eigenvalues ev = eigenvalues(s, p);
    ASSERT_LT(ev.lambda1, ev.lambda2);
    ASSERT_GT(2.0 * p.derivative(s.rho) + s.rho * p.second_derivative(s.rho), 0.0);
    // lambda2 = v is constant along the 2-curve v = v0.
    ASSERT_EQ(eigenvalues(StatePV(s.rho * 1.7, lax2_velocity(s.rho * 1.7, s)), p).lambda2, ev.lambda2);
    const StatePV back = to_primitive(to_conserved(s, p), p);
    ASSERT_NEAR(back.rho, s.rho, 1e-14 * s.rho);
    // y/rho - p(rho) loses digits when v << p(rho); compare against the size of w.
    ASSERT_NEAR(back.v, s.v, 1e-14 * std::max(s.v, w_of(s, p)));
    const Flux2 f = flux(s, p);
    ASSERT_NEAR(f.f2, f.f1 * w_of(s, p), 1e-14 * std::max(1.0, std::abs(f.f2)));
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, ModelProperties, ::testing::Values(1.0, 2.0, 1.3));

}  // namespace
}  // namespace awr
