#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeroprof/profiles.hpp"

namespace zeroprof::randmat {

enum class EntryDist { gaussian, rademacher };

EntryDist parse_entry_dist(const std::string& name);
std::string to_string(EntryDist d);

/// Spectrum of M = m^{-1} X X^T for an n x m matrix X with iid centred entries of variance sigma2.
struct CovarianceRun {
  int n = 0;
  int m = 0;
  EntryDist dist = EntryDist::gaussian;
  double sigma2 = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> eigenvalues;  // ascending, all >= 0
  /// max ||M v - xi v|| / ||M|| over the computed eigenpairs.
  double residual = 0.0;
  /// Negative eigenvalues rounded up to 0.
  int clamped = 0;

  double lambda() const { return static_cast<double>(n) / m; }
};

CovarianceRun sample_covariance(int n, int m, EntryDist dist, double sigma2, std::uint64_t seed);
/// Spectrum for a given row-major n x m matrix X. When m < n the n - m structural zeros are exact.
CovarianceRun covariance_from_matrix(const std::vector<double>& X, int n, int m);

/// log a_k, a_k = [x^k] det(M + xI)/det(M + I) = e_{n-k}(xi) / prod(1 + xi).
profiles::LogCoeffVector char_poly_coefficients(const std::vector<double>& eigenvalues);
profiles::LogCoeffVector char_poly_coefficients(const CovarianceRun& run);

struct CovarianceRow {
  int n = 0;
  std::uint64_t seed = 0;
  /// sup over k in [(lambda* + eps) n, (1 - eps) n] of |(1/n) log a_k - g_M(k/n)|.
  double sup_deviation = 0.0;
  /// max over k <= (lambda* - eps) n of (1/n) log a_k; -inf when that range is empty or all zero.
  double outside_max = 0.0;
  int points = 0;
};

struct CovarianceReport {
  double sigma2 = 1.0;
  double lambda = 1.0;
  double lambda_star = 0.0;
  double eps = 0.1;
  std::vector<CovarianceRow> rows;
  double mean_sup_deviation = 0.0;
  double max_outside = 0.0;
};

/// Runs must share n, m and sigma2.
CovarianceReport covariance_deviation_report(const std::vector<CovarianceRun>& runs, double eps = 0.1);

}  // namespace zeroprof::randmat
