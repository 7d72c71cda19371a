#include <gtest/gtest.h>

#include <cmath>

#include "zeroprof/families.hpp"
#include "zeroprof/limitlaws.hpp"
#include "zeroprof/roots.hpp"

using namespace zeroprof;
using namespace zeroprof::roots;

namespace {

ExactPolynomial from_roots(const std::vector<Rational>& r) {
  ExactPolynomial p(std::vector<Rational>{1});
  for (const auto& x : r) p = multiply(p, power_of_linear(x, 1));
  return p;
}

}  // namespace

TEST(Sturm, Counts) {
  auto p = from_roots({1, 1, -2});
  EXPECT_EQ(sturm_count(p), 2);
  EXPECT_EQ(count_real_roots(p), 3);
  EXPECT_EQ(sturm_count(ExactPolynomial(std::vector<Rational>{1, 0, 1})), 0);
  auto sq = squarefree_decomposition(p);
  ASSERT_GE(sq.size(), 2u);
  EXPECT_EQ(sq[1].degree(), 1);
}

TEST(IsolateRealRoots, SimpleCubic) {
  RootSet rs = isolate_real_roots(from_roots({-1, -2, -3}));
  auto v = rs.values();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], -3, 1e-15);
  EXPECT_NEAR(v[1], -2, 1e-15);
  EXPECT_NEAR(v[2], -1, 1e-15);
  EXPECT_TRUE(rs.certified);
}

TEST(IsolateRealRoots, Multiplicities) {
  RootSet rs = isolate_real_roots(from_roots({Rational(1, 3), Rational(1, 3), 2}));
  ASSERT_EQ(rs.distinct.size(), 2u);
  EXPECT_EQ(rs.distinct[0].multiplicity, 2);
  EXPECT_EQ(rs.values().size(), 3u);
}

TEST(IsolateRealRoots, ScaledTouchard) {
  auto v = isolate_real_roots(scale_argument(families::touchard_poly(5), Rational(5))).values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.back(), 0.0);
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    EXPECT_LT(v[i], 0.0);
    EXPECT_GT(v[i], -std::exp(1.0));
  }
}

TEST(IsolateRealRoots, RankOnePoisson) {
  auto v = isolate_real_roots(families::free_mult_poisson_poly(2, 2, 1)).values();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(v[0], 0.5, 1e-15);
  EXPECT_NEAR(v[1], 1.0, 1e-15);
}

TEST(IsolateRealRoots, RejectsComplexRoots) {
  EXPECT_THROW(isolate_real_roots(ExactPolynomial(std::vector<Rational>{1, 0, 1})), NotRealRooted);
}

TEST(IsolateRealRoots, HighDegreeCertified) {
  RootSet rs = isolate_real_roots(families::hermite_poly(120));
  EXPECT_EQ(rs.values().size(), 120u);
  EXPECT_TRUE(rs.certified);
  auto v = rs.values();
  for (size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], -v[v.size() - 1 - i], 1e-10);
}

TEST(IsolateRealRoots, FloatPolynomial) {
  FloatPolynomial p = families::free_mult_hermite_poly(6, 1, 256);
  auto v = isolate_real_roots(p).values();
  ASSERT_EQ(v.size(), 6u);
  // G_n(x; s) has roots in reciprocal pairs
  for (size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i] * v[v.size() - 1 - i], 1.0, 1e-12);
}

TEST(EmpiricalMeasure, Bookkeeping) {
  EmpiricalMeasure a = empirical_measure(isolate_real_roots(from_roots({-1, -2})), 2);
  EXPECT_EQ(a.roots, (std::vector<double>{-2, -1}));
  EXPECT_EQ(a.mass_at_infinity, 0.0);
  EmpiricalMeasure b = empirical_measure(isolate_real_roots(ExactPolynomial(std::vector<Rational>{1, 1})), 3);
  EXPECT_EQ(b.roots, (std::vector<double>{-1}));
  EXPECT_NEAR(b.mass_at_infinity, 2.0 / 3, 1e-15);
  EmpiricalMeasure e = empirical_measure(isolate_real_roots(families::eulerian_poly(10)), 10);
  EXPECT_EQ(e.roots.size(), 9u);
  EXPECT_NEAR(e.mass_at_infinity, 0.1, 1e-15);
  EXPECT_NEAR(e.total_mass(), 1.0, 1e-15);
}

TEST(KsDistance, QuantileSample) {
  auto law = limitlaws::law_arcsine();
  const int n = 200;
  std::vector<double> q;
  for (int k = 1; k <= n; ++k) {
    double u = (k - 0.5) / n, lo = -1, hi = 1;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (limitlaws::cdf(*law, mid) < u ? lo : hi) = mid;
    }
    q.push_back(0.5 * (lo + hi));
  }
  EXPECT_LE(ks_distance(empirical_measure(q, n), *law), 0.5 / n + 1e-9);
}

TEST(KsDistance, TwoSample) {
  EmpiricalMeasure a = empirical_measure(std::vector<double>{0, 1}, 2);
  EmpiricalMeasure b = empirical_measure(std::vector<double>{0.5, 1}, 2);
  EXPECT_NEAR(ks_distance(a, b), 0.5, 1e-15);
}

TEST(KsDistance, ModerateDegree) {
  auto em = empirical_measure(isolate_real_roots(families::hermite_poly(100)).values(), 100);
  EXPECT_LE(ks_distance(scaled_measure(em, std::sqrt(100.0)), *limitlaws::law_semicircle()), 0.05);
}

TEST(ShiftForPositiveRoots, Examples) {
  auto p = shift_for_positive_roots(ExactPolynomial(std::vector<Rational>{-1, 0, 1}), 1);
  EXPECT_EQ(p, ExactPolynomial(std::vector<Rational>{0, 2, 1}));
  auto h = shift_for_positive_roots(scale_argument(families::hermite_poly(4), Rational(2)), 2);
  auto v = isolate_real_roots(h).values();
  for (double x : v) {
    EXPECT_LE(x, 0.0);
    EXPECT_GE(x, -4.0);
  }
  auto orig = isolate_real_roots(scale_argument(families::hermite_poly(4), Rational(2))).values();
  for (size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i] + 2, orig[i], 1e-12);
}

TEST(KsDistance, EdgeCrowdedRoots) {
  // several Fubini zeros sit within 1e-16 of -1 and round to it in double
  auto rs = isolate_real_roots(families::fubini_poly(100), 60, RootMethod::mobius);
  EmpiricalMeasure em = empirical_measure(rs, 100);
  EXPECT_EQ(em.roots.front(), -1.0);
  EXPECT_LE(ks_distance(em, *limitlaws::law_fubini()), 0.016);
  EmpiricalMeasure coarse = empirical_measure(rs.values(), 100);
  EXPECT_GE(ks_distance(coarse, *limitlaws::law_fubini()), 0.019);
}

TEST(ScaledMeasure, Reflection) {
  EmpiricalMeasure em = empirical_measure(isolate_real_roots(from_roots({1, 2, 4})), 3);
  EmpiricalMeasure r = scaled_measure(em, -2.0);
  EXPECT_EQ(r.roots, (std::vector<double>{-2, -1, -0.5}));
  ASSERT_EQ(r.precise.size(), 3u);
  EXPECT_EQ(r.precise[0].to_double(), -2.0);
  EXPECT_THROW(scaled_measure(em, 0.0), std::invalid_argument);
}
