#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/randmat.hpp"
#include "zeroprof/roots.hpp"

using namespace zeroprof;
using namespace zeroprof::randmat;

TEST(Covariance, SingleEntry) {
  CovarianceRun run = covariance_from_matrix({-3.0}, 1, 1);
  ASSERT_EQ(run.eigenvalues.size(), 1u);
  EXPECT_DOUBLE_EQ(run.eigenvalues[0], 9.0);
}

TEST(Covariance, StructuralZeros) {
  CovarianceRun run = covariance_from_matrix({1.0, 2.0, 3.0}, 3, 1);
  ASSERT_EQ(run.eigenvalues.size(), 3u);
  EXPECT_EQ(run.eigenvalues[0], 0.0);
  EXPECT_EQ(run.eigenvalues[1], 0.0);
  EXPECT_NEAR(run.eigenvalues[2], 14.0, 1e-12);
}

TEST(Covariance, LawOfLargeNumbers) {
  CovarianceRun run = sample_covariance(2, 1000000, EntryDist::gaussian, 1.0, 11);
  for (double x : run.eigenvalues) EXPECT_NEAR(x, 1.0, 0.01);
}

TEST(Covariance, Reproducible) {
  for (EntryDist d : {EntryDist::gaussian, EntryDist::rademacher}) {
    CovarianceRun a = sample_covariance(30, 45, d, 2.0, 5), b = sample_covariance(30, 45, d, 2.0, 5);
    ASSERT_EQ(a.eigenvalues.size(), b.eigenvalues.size());
    EXPECT_EQ(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(), a.eigenvalues.size() * sizeof(double)), 0);
    EXPECT_NE(a.eigenvalues, sample_covariance(30, 45, d, 2.0, 6).eigenvalues);
  }
}

TEST(Covariance, Residual) {
  CovarianceRun run = sample_covariance(80, 100, EntryDist::gaussian, 1.0, 3);
  EXPECT_LE(run.residual, 1e-10);
  for (double x : run.eigenvalues) EXPECT_GE(x, 0.0);
}

TEST(CharPoly, SmallSpectra) {
  auto a = char_poly_coefficients(std::vector<double>{1, 1});
  ASSERT_EQ(a.logs.size(), 3u);
  EXPECT_NEAR(std::exp(a.logs[0]), 0.25, 1e-15);
  EXPECT_NEAR(std::exp(a.logs[1]), 0.5, 1e-15);
  EXPECT_NEAR(std::exp(a.logs[2]), 0.25, 1e-15);
  auto b = char_poly_coefficients(std::vector<double>{0, 2});
  EXPECT_EQ(b.logs[0], -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(std::exp(b.logs[1]), 2.0 / 3, 1e-15);
  EXPECT_NEAR(std::exp(b.logs[2]), 1.0 / 3, 1e-15);
}

TEST(CharPoly, LogConcave) {
  auto c = char_poly_coefficients(sample_covariance(50, 60, EntryDist::gaussian, 1.0, 2));
  EXPECT_NEAR(c.log_sum(), 0.0, 1e-10);
  for (size_t k = 1; k + 1 < c.logs.size(); ++k) EXPECT_GE(2 * c.logs[k] - c.logs[k - 1] - c.logs[k + 1], -1e-9) << k;
}

TEST(GmProfile, SupIsZeroAndEgIncreasing) {
  for (double s2 : {0.5, 1.0, 3.0})
    for (double lam : {0.25, 1.0, 2.0}) {
      profiles::ClosedProfile g = profiles::gM_profile(s2, lam);
      double lo = std::max(0.0, 1 - 1 / lam), sup = -1e300, prev = 0;
      for (int i = 1; i < 2000; ++i) {
        double a = lo + (1 - lo) * i / 2000.0;
        sup = std::max(sup, g.g(a));
        double e = g.eg(a);
        EXPECT_GT(e, prev);
        prev = e;
      }
      EXPECT_LE(sup, 1e-8) << s2 << " " << lam;
      EXPECT_GE(sup, -1e-5) << s2 << " " << lam;
    }
}

TEST(CovarianceReport, WideMatrix) {
  std::vector<CovarianceRun> runs;
  for (std::uint64_t s = 1; s <= 5; ++s) runs.push_back(sample_covariance(200, 400, EntryDist::gaussian, 1.0, s));
  CovarianceReport rep = covariance_deviation_report(runs);
  EXPECT_LE(rep.mean_sup_deviation, 0.05);
  double ks = 0;
  auto mp = limitlaws::law_mp(1.0, 0.5);
  for (const auto& r : runs) ks += roots::ks_distance(roots::empirical_measure(r.eigenvalues, r.n), *mp);
  EXPECT_LE(ks / runs.size(), 0.07);
}

TEST(CovarianceReport, TallMatrixDiverges) {
  std::vector<CovarianceRun> runs{sample_covariance(100, 50, EntryDist::rademacher, 1.0, 9)};
  CovarianceReport rep = covariance_deviation_report(runs);
  EXPECT_NEAR(rep.lambda_star, 0.5, 1e-15);
  EXPECT_EQ(rep.max_outside, -std::numeric_limits<double>::infinity());
  EXPECT_LE(rep.rows[0].sup_deviation, 0.1);
}
