#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "zeroprof/specialfn.hpp"

using namespace zeroprof::specialfn;

namespace {

const double kE = std::exp(1.0);
const double kPi = std::acos(-1.0);

double residual(ComplexValue w, ComplexValue z) { return std::abs(w * std::exp(w) - z); }

// Independent series for e^{W(z)} = sum_{k>=0} (1-k)^{k-1}/k! z^k, summed in long double.
long double exp_w_reference(long double z, int terms) {
  long double sum = 1.0L + z;
  for (int k = 2; k < terms; ++k) {
    long double t = std::pow(static_cast<long double>(1 - k), k - 1);
    for (int i = 2; i <= k; ++i) t /= i;
    sum += t * std::pow(z, k);
  }
  return sum;
}

}  // namespace

TEST(LambertW0, SpecialValues) {
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(kE), 1.0, 1e-15);
  EXPECT_NEAR(lambert_w0(-1.0 / kE), -1.0, 1e-7);
  EXPECT_THROW(lambert_w0(-0.5), std::domain_error);
}

TEST(LambertW0, RealResidual) {
  for (double x : {-0.367, -0.2, 1e-8, 0.5, 3.0, 1e3, 1e12, 1e300}) {
    double w = lambert_w0(x);
    EXPECT_LE(std::fabs(w * std::exp(w) - x), 1e-13 * (1 + std::fabs(x))) << x;
  }
}

TEST(LambertW0, BigFloatAgreesWithDouble) {
  for (double x : {-0.3, 0.1, 2.0, 50.0}) {
    zeroprof::BigFloat w = lambert_w0(zeroprof::BigFloat(x, 200));
    EXPECT_NEAR(w.to_double(), lambert_w0(x), 1e-15 * (1 + std::fabs(x)));
  }
}

TEST(LambertW0Complex, ImaginaryUnit) {
  ComplexValue z(0.0, 1.0);
  EXPECT_LE(residual(lambert_w0_complex(z), z), 1e-14);
}

TEST(LambertW0Complex, RealAxisAndReflection) {
  for (double x : {-0.3, 0.0, 0.7, 10.0}) EXPECT_NEAR(lambert_w0_complex(x).real(), lambert_w0(x), 1e-14);
  for (double re = -3; re <= 3; re += 0.75)
    for (double im = 0.25; im <= 3; im += 0.75) {
      ComplexValue z(re, im);
      EXPECT_LE(std::abs(std::conj(lambert_w0_complex(z)) - lambert_w0_complex(std::conj(z))), 1e-14);
    }
}

TEST(LambertW0Cut, Limits) {
  EXPECT_LT(std::fabs(lambert_w0_cut(-1e300).imag() - kPi), 0.01);
  EXPECT_LT(std::fabs(lambert_w0_cut_log(1e6).imag() - kPi), 0.01);
  EXPECT_LT(lambert_w0_cut(-1.0 / kE - 1e-6).imag(), 0.01);
  ComplexValue w = lambert_w0_cut(-2.0);
  EXPECT_LE(residual(w, -2.0), 1e-12);
  EXPECT_NEAR(lambert_w0_cut(-2.0, CutSide::lower).imag(), -w.imag(), 1e-15);
}

TEST(LambertW0Cut, SlowApproachToPi) {
  // Im W0 ~ pi - pi/log|x|, so at -1e8 the gap is still about 0.19
  double gap = kPi - lambert_w0_cut(-1e8).imag();
  EXPECT_GT(gap, 0.1);
  EXPECT_LT(gap, 0.3);
}

TEST(ExpW0Series, Values) {
  EXPECT_EQ(exp_w0_series(0.0, 10), ComplexValue(1.0));
  EXPECT_NEAR(std::abs(exp_w0_series(0.2, 40) - std::exp(lambert_w0(0.2))), 0.0, 1e-12);
  // 60 terms at -0.3 leave a truncation error of order 1e-8
  double err60 = std::abs(exp_w0_series(-0.3, 60) - std::exp(lambert_w0(-0.3)));
  EXPECT_LT(err60, 1e-7);
  EXPECT_LE(std::abs(exp_w0_series(-0.3, 200) - std::exp(lambert_w0(-0.3))), 1e-10);
}

TEST(ExpW0Series, MatchesReferenceSeries) {
  for (double z : {-0.25, -0.1, 0.05, 0.2})
    EXPECT_NEAR(exp_w0_series(z, 30).real(), static_cast<double>(exp_w_reference(z, 31)), 1e-14);
}

TEST(LambertW0Derivative, FiniteDifference) {
  EXPECT_DOUBLE_EQ(lambert_w0_derivative(0.0), 1.0);
  for (double x : {-0.3, 0.4, 5.0}) {
    double h = 1e-6 * (1 + std::fabs(x));
    double fd = (lambert_w0(x + h) - lambert_w0(x - h)) / (2 * h);
    EXPECT_NEAR(lambert_w0_derivative(x), fd, 1e-7);
  }
}
