#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "zeroprof/families.hpp"
#include "zeroprof/freeconv.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/roots.hpp"

using namespace zeroprof;
using namespace zeroprof::freeconv;

namespace {

ExactPolynomial from_roots(const std::vector<Rational>& r) {
  ExactPolynomial p(std::vector<Rational>{1});
  for (const auto& x : r) p = multiply(p, power_of_linear(x, 1));
  return p;
}

double max_rel_error(const FloatPolynomial& a, const FloatPolynomial& b) {
  double err = 0;
  for (int k = 0; k <= a.n; ++k) {
    double x = a.coeffs[k].to_double(), y = b.coeffs[k].to_double();
    err = std::max(err, std::fabs(x - y) / std::max(1.0, std::fabs(y)));
  }
  return err;
}

}  // namespace

TEST(Boxtimes, Identity) {
  ExactPolynomial p = families::free_mult_poisson_poly(4, 1, 1);
  EXPECT_EQ(boxtimes_n(p, power_of_linear(1, 4)), p);
}

TEST(Boxtimes, PoissonSemigroup) {
  using families::free_mult_poisson_poly;
  EXPECT_EQ(boxtimes_n(free_mult_poisson_poly(3, 2, 1), free_mult_poisson_poly(3, 2, 2)),
            free_mult_poisson_poly(3, 2, 3));
}

TEST(Boxtimes, HermiteSemigroup) {
  using families::free_mult_hermite_poly;
  FloatPolynomial lhs = boxtimes_n(free_mult_hermite_poly(4, 1), free_mult_hermite_poly(4, 2));
  EXPECT_LE(max_rel_error(lhs, free_mult_hermite_poly(4, 3)), 1e-12);
}

TEST(Boxtimes, CommutativeAndAssociative) {
  ExactPolynomial p = from_roots({1, 2, Rational(1, 2), 3});
  ExactPolynomial q = from_roots({0, 1, 5, Rational(2, 3)});
  ExactPolynomial r = families::free_mult_poisson_poly(4, 3, 2);
  EXPECT_EQ(boxtimes_n(p, q), boxtimes_n(q, p));
  EXPECT_EQ(boxtimes_n(boxtimes_n(p, q), r), boxtimes_n(p, boxtimes_n(q, r)));
}

TEST(Boxtimes, PreservesRealRoots) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(0, 40);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> a, b;
    for (int i = 0; i < 8; ++i) {
      a.push_back(Rational(num(rng)) / 8);
      b.push_back(Rational(num(rng)) / 8);
    }
    ExactPolynomial c = boxtimes_n(from_roots(a), from_roots(b));
    EXPECT_EQ(roots::count_real_roots(c), 8) << trial;
    for (double x : roots::isolate_real_roots(c).values()) EXPECT_GE(x, 0.0);
  }
}

TEST(Boxtimes, RejectsMismatchedDegree) {
  EXPECT_THROW(boxtimes_n(power_of_linear(1, 3), power_of_linear(1, 4)), std::invalid_argument);
}

TEST(Boxtimes, ProfilePowerMatchesHermite) {
  const int n = 10;
  FloatPolynomial p1;
  p1.n = n;
  p1.precision = 256;
  for (int k = 0; k <= n; ++k) {
    double a = static_cast<double>(k) / n;
    double v = ((n - k) % 2 ? -1.0 : 1.0) * std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                                     std::lgamma(n - k + 1.0) + 0.5 * a * (1 - a));
    p1.coeffs.emplace_back(v, 256);
  }
  EXPECT_LE(max_rel_error(boxtimes_power(p1, n), families::free_mult_hermite_poly(n, Rational(1) / n)), 1e-10);
}

TEST(Boxplus, DeltaAndIdentity) {
  EXPECT_EQ(boxplus_n(power_of_linear(2, 5), power_of_linear(3, 5)), power_of_linear(5, 5));
  ExactPolynomial p = from_roots({1, -2, Rational(1, 3), 4});
  EXPECT_EQ(boxplus_n(p, power_of_linear(0, 4)), p);
}

TEST(Boxplus, ShiftCovariance) {
  ExactPolynomial p = from_roots({1, -2, Rational(1, 3), 4, 0});
  ExactPolynomial q = families::hermite_poly(5);
  Rational a = Rational(3) / 7;
  EXPECT_EQ(boxplus_n(taylor_shift(p, -a), q), taylor_shift(boxplus_n(p, q), -a));
}

TEST(Boxplus, RejectsNonMonic) {
  EXPECT_THROW(boxplus_n(scale_values(power_of_linear(1, 3), 2), power_of_linear(1, 3)), std::invalid_argument);
}

TEST(Appell, FactorizationSingleRoot) {
  AppellSpec f{Rational(1) / 2, 1, {2}};
  EXPECT_TRUE(appell_factorization_check(6, f));
}

TEST(Appell, GaussianOnly) {
  // He_4(2x)/16
  EXPECT_EQ(test::coeffs(appell_poly(4, AppellSpec{0, 1, {}})),
            (std::vector<std::string>{"3/16", "0", "-3/2", "0", "1"}));
  EXPECT_TRUE(appell_factorization_check(4, AppellSpec{0, 1, {}}));
}

TEST(Appell, PureLinearFactor) {
  // c = -1 cancels the e^{z/x_1} factor, leaving f(z) = 1 - z
  EXPECT_EQ(test::coeffs(appell_poly(2, AppellSpec{-1, 0, {1}})), (std::vector<std::string>{"1/2", "-2", "1"}));
}

TEST(Appell, RTransform) {
  AppellSpec f{0, 1, {2}};
  EXPECT_NEAR(appell_R(f, -0.1), appell_R_numeric(f, -0.1), 1e-3);
}

TEST(Transforms, FromProfile) {
  for (int j : {1, 2}) {
    TransformView S = transforms_from_profile(flow_case_iv_profile(j));
    for (double z : {-0.7, -0.5, -0.2}) EXPECT_NEAR(S(z), std::pow(1 + z, -j), 1e-10);
  }
  TransformView mp = transforms_from_profile(profiles::closed_profile("laguerre", {{"gamma", 0.0}}));
  EXPECT_NEAR(mp(-0.5), 2.0, 1e-12);
  TransformView sig = sigma_from_S(mp);
  EXPECT_NEAR(sig(-1.0 / 3), mp(-0.25), 1e-14);
}

TEST(Transforms, FreeMultNormal) {
  FreeTransforms t = free_mult_normal_transforms(1);
  EXPECT_NEAR(t.S(-0.5), 1.0, 1e-15);
  for (double z = -5; z <= -0.1; z += 0.1) {
    EXPECT_NEAR(std::exp(t.lk.v(z)), t.Sigma(z), 1e-10 * t.Sigma(z));
    EXPECT_NEAR(t.Sigma(z), std::exp(0.5 * (z + 1) / (z - 1)), 1e-12);
  }
}

TEST(Transforms, FreeMultPoisson) {
  FreeTransforms t = free_mult_poisson_transforms(1, 2);
  EXPECT_NEAR(t.Sigma(-1.0), std::exp(4.0 / 3), 1e-12);
  for (double z = -5; z <= -0.1; z += 0.1) EXPECT_NEAR(std::exp(t.lk.v(z)), t.Sigma(z), 1e-10 * t.Sigma(z));
  FreeTransforms p0 = free_mult_poisson_transforms(0, 1);
  EXPECT_NEAR(p0.Sigma(-2.0), std::exp(3.0), 1e-12);
  EXPECT_EQ(p0.lk.c0, 1.0);
  ASSERT_EQ(p0.lk.rho.size(), 1u);
  EXPECT_TRUE(std::isinf(p0.lk.rho[0].t));
  EXPECT_EQ(p0.lk.rho[0].weight, 1.0);
  EXPECT_THROW(free_mult_poisson_transforms(-0.5, 1), std::invalid_argument);
}

TEST(EmpiricalS, PointMassAtOne) {
  roots::EmpiricalMeasure em = roots::empirical_measure(std::vector<double>(50, 1.0), 50);
  TransformView one{TransformKind::S, -1, 0, [](double) { return 1.0; }, "one"};
  SCheckReport rep = empirical_S_check(em, one);
  EXPECT_EQ(rep.out_of_range, 0);
  EXPECT_LE(rep.max_error, 1e-10);
}

TEST(EmpiricalS, FreeMultPoissonZeros) {
  const int n = 200;
  auto em = roots::empirical_measure(roots::isolate_real_roots(families::free_mult_poisson_poly(n, n, n)), n);
  SCheckReport rep = empirical_S_check(em, free_mult_poisson_transforms(1, 1).S);
  EXPECT_LE(rep.max_error, 0.05);
}

TEST(Flow, CaseIIHeat) {
  FlowSpec spec = flow_case(FlowCase::II, 1);
  ExactPolynomial p = flow_polynomial(spec);
  EXPECT_EQ(test::coeffs(p), (std::vector<std::string>{"-1/2", "0", "1"}));
  // He_2(sqrt 2 x) = 2x^2 - 1
  EXPECT_EQ(test::coeffs(scale_values(p, 2)), (std::vector<std::string>{"-1", "0", "2"}));
}

TEST(Flow, CaseILaguerre) {
  FlowSpec spec = flow_case(FlowCase::I, 2);
  ExactPolynomial p = flow_polynomial(spec);
  EXPECT_EQ(test::coeffs(p), (std::vector<std::string>{"1/2", "-2", "1"}));
  EXPECT_EQ(p, *flow_case_closed_form(FlowCase::I, spec));
  for (int n = 1; n <= 6; ++n) {
    FlowSpec s = flow_case(FlowCase::I, n, 1, Rational(3) / 2, 2);
    EXPECT_EQ(flow_polynomial(s), *flow_case_closed_form(FlowCase::I, s, 2)) << n;
  }
}

TEST(Flow, HypergeometricIdentityPerPermutation) {
  for (const std::vector<int>& sigma : {std::vector<int>{1, 2}, std::vector<int>{2, 1}}) {
    FlowSpec spec{3, 2, 2, 1, {1, 1}, sigma};
    FlowCheck chk = flow_identity_check(spec);
    EXPECT_TRUE(chk.displayed_identity);
    EXPECT_TRUE(chk.composed_identity);
  }
  FlowSpec a{3, 2, 2, 1, {1, 2}, {1, 2}}, b{3, 2, 2, 1, {1, 2}, {2, 1}};
  EXPECT_TRUE(flow_identity_check(a).displayed_identity);
  EXPECT_TRUE(flow_identity_check(b).displayed_identity);
  EXPECT_EQ(flow_polynomial(a).degree(), flow_polynomial(b).degree());
}

TEST(Flow, CaseIIIClosedForm) {
  for (int j : {1, 2}) {
    FlowSpec spec = flow_case(FlowCase::III, 3, j);
    EXPECT_EQ(flow_polynomial(spec, FlowAction::composed), *flow_case_closed_form(FlowCase::III, spec)) << j;
    EXPECT_TRUE(flow_identity_check(spec).displayed_identity) << j;
  }
  EXPECT_FALSE(flow_case_closed_form(FlowCase::IV, flow_case(FlowCase::IV, 3)).has_value());
}

TEST(Flow, Validation) {
  EXPECT_THROW(validate(FlowSpec{3, 3, 1, 1, {1}, {}}), std::invalid_argument);
  EXPECT_THROW(validate(FlowSpec{3, 1, 1, 1, {Rational(1) / 2}, {}}), std::invalid_argument);
  EXPECT_THROW(validate(FlowSpec{3, 1, 2, 1, {1, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(validate(FlowSpec{3, 1, 1, 0, {1}, {}}), std::invalid_argument);
  EXPECT_EQ(parse_flow_case("III"), FlowCase::III);
  EXPECT_EQ(parse_flow_case("4"), FlowCase::IV);
}
