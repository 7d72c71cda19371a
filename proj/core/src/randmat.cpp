#include "zeroprof/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace zeroprof::randmat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

CovarianceRun spectrum(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows()), m = static_cast<int>(X.cols());
  // the nonzero spectrum of X X^T equals that of X^T X
  const bool gram_small = m < n;
  Eigen::MatrixXd M = gram_small ? Eigen::MatrixXd(X.transpose() * X) : Eigen::MatrixXd(X * X.transpose());
  M /= static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("sample_covariance: eigensolver failed");
  CovarianceRun run;
  run.n = n;
  run.m = m;
  const double norm = std::max(M.norm(), 1e-300);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    Eigen::VectorXd v = es.eigenvectors().col(i);
    double r = (M * v - es.eigenvalues()(i) * v).norm() / norm;
    run.residual = std::max(run.residual, r);
  }
  if (gram_small) run.eigenvalues.assign(static_cast<size_t>(n - m), 0.0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double x = es.eigenvalues()(i);
    if (x < 0.0) {
      x = 0.0;
      ++run.clamped;
    }
    run.eigenvalues.push_back(x);
  }
  std::sort(run.eigenvalues.begin(), run.eigenvalues.end());
  return run;
}

}  // namespace

EntryDist parse_entry_dist(const std::string& name) {
  if (name == "gaussian") return EntryDist::gaussian;
  if (name == "rademacher") return EntryDist::rademacher;
  throw std::invalid_argument("unknown entry distribution: " + name);
}

std::string to_string(EntryDist d) { return d == EntryDist::gaussian ? "gaussian" : "rademacher"; }

CovarianceRun sample_covariance(int n, int m, EntryDist dist, double sigma2, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("sample_covariance: n and m must be positive");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sample_covariance: sigma2 must be positive");
  std::mt19937_64 rng(seed);
  const double s = std::sqrt(sigma2);
  Eigen::MatrixXd X(n, m);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) X(i, j) = s * (dist == EntryDist::gaussian ? normal(rng) : (coin(rng) ? 1.0 : -1.0));
  CovarianceRun run = spectrum(X);
  run.dist = dist;
  run.sigma2 = sigma2;
  run.seed = seed;
  return run;
}

CovarianceRun covariance_from_matrix(const std::vector<double>& X, int n, int m) {
  if (n < 1 || m < 1 || X.size() != static_cast<size_t>(n) * m)
    throw std::invalid_argument("covariance_from_matrix: shape mismatch");
  Eigen::MatrixXd A(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = X[static_cast<size_t>(i) * m + j];
  return spectrum(A);
}

profiles::LogCoeffVector char_poly_coefficients(const std::vector<double>& eigenvalues) {
  const int n = static_cast<int>(eigenvalues.size());
  std::vector<double> xi = eigenvalues;
  for (double x : xi)
    if (x < 0.0) throw std::domain_error("char_poly_coefficients: negative eigenvalue");
  std::sort(xi.begin(), xi.end(), [](double a, double b) { return a > b; });
  // E[j] = log e_j over the eigenvalues seen so far
  std::vector<double> E(static_cast<size_t>(n) + 1, -kInf);
  E[0] = 0.0;
  double log_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lx = xi[i] > 0.0 ? std::log(xi[i]) : -kInf;
    for (int j = i + 1; j >= 1; --j) E[j] = logaddexp(E[j], lx + E[j - 1]);
    log_norm += std::log1p(xi[i]);
  }
  profiles::LogCoeffVector out;
  out.n = n;
  out.logs.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out.logs[k] = E[n - k] == -kInf ? -kInf : E[n - k] - log_norm;
  return out;
}

profiles::LogCoeffVector char_poly_coefficients(const CovarianceRun& run) {
  return char_poly_coefficients(run.eigenvalues);
}

CovarianceReport covariance_deviation_report(const std::vector<CovarianceRun>& runs, double eps) {
  if (runs.empty()) throw std::invalid_argument("covariance_deviation_report: no runs");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("covariance_deviation_report: eps must lie in (0, 1/2)");
  for (const auto& r : runs)
    if (r.n != runs[0].n || r.m != runs[0].m || r.sigma2 != runs[0].sigma2)
      throw std::invalid_argument("covariance_deviation_report: runs differ in n, m or sigma2");
  CovarianceReport rep;
  rep.sigma2 = runs[0].sigma2;
  rep.lambda = runs[0].lambda();
  rep.eps = eps;
  profiles::ClosedProfile g = profiles::gM_profile(rep.sigma2, rep.lambda);
  rep.lambda_star = g.lo;
  rep.max_outside = -kInf;
  double total = 0.0;
  for (const auto& run : runs) {
    profiles::LogCoeffVector c = char_poly_coefficients(run);
    CovarianceRow row;
    row.n = run.n;
    row.seed = run.seed;
    row.outside_max = -kInf;
    const double n = run.n;
    for (int k = 0; k <= run.n; ++k) {
      const double alpha = k / n;
      const double v = c.logs[k] / n;
      if (alpha >= rep.lambda_star + eps && alpha <= 1.0 - eps) {
        row.sup_deviation = std::max(row.sup_deviation, std::fabs(v - g.g(alpha)));
        ++row.points;
      } else if (alpha <= rep.lambda_star - eps) {
        row.outside_max = std::max(row.outside_max, v);
      }
    }
    total += row.sup_deviation;
    rep.max_outside = std::max(rep.max_outside, row.outside_max);
    rep.rows.push_back(row);
  }
  rep.mean_sup_deviation = total / runs.size();
  return rep;
}

}  // namespace zeroprof::randmat
