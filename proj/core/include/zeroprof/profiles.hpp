#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/polynomial.hpp"
#include "zeroprof/roots.hpp"

namespace zeroprof::profiles {

/// Natural logs of coefficient magnitudes a_0..a_n; -inf marks a zero coefficient.
struct LogCoeffVector {
  std::vector<double> logs;
  int n = 0;

  /// log of the coefficient sum, i.e. log P(1).
  double log_sum() const;
};

/// Throws when a coefficient is negative, naming its index.
LogCoeffVector log_coefficients(const ExactPolynomial& p);
LogCoeffVector log_coefficients(const FloatPolynomial& p);

enum class Normalize { none, by_P1 };

struct ProfileGrid {
  std::vector<double> alphas;  // k/n for every k
  std::vector<double> gvals;
  int n_used = 0;

  /// Forward differences n (g_{k+1} - g_k); NaN where either side is infinite.
  std::vector<double> derivative() const;
  /// Second differences strictly negative on the finite part.
  bool discretely_concave() const;
};

ProfileGrid empirical_profile(const ExactPolynomial& p, Normalize normalize = Normalize::none);
ProfileGrid empirical_profile(const LogCoeffVector& c, Normalize normalize = Normalize::none);

/**
 * Closed-form profile on (lo, hi). g is in the family's own scaling (it may have a
 * positive maximum); eg is e^{-g'}, strictly increasing.
 */
struct ClosedProfile {
  std::string id;
  std::map<std::string, double> params;
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> g;
  std::function<double(double)> eg;
  /// sup g, attained where eg = 1 (or at an endpoint when 1 is out of range).
  double sup_g = 0.0;

  /// g - sup g.
  double normalized(double alpha) const;
  /// Limits of eg at lo and hi, by evaluation at lo + 1e-6 and hi - 1e-6.
  double eg_lo() const;
  double eg_hi() const;
};

std::vector<std::string> closed_profile_names();
/// Profiles by name: stirling, touchard, fubini, eulerian, narayana(gamma), laguerre(gamma),
/// hermite, legendre, gegenbauer(gamma), jacobi(u, v), q_laguerre(a, lambda), covariance(sigma2, lambda).
ClosedProfile closed_profile(const std::string& family, const std::map<std::string, double>& params = {});
/// alpha/(1-alpha) prod(b_s - 1 + alpha) / prod(a_s - 1 + alpha).
ClosedProfile hypergeometric_profile(const std::vector<double>& a, const std::vector<double>& b);
/// e^{-g'} = sigma2 alpha (lambda alpha + 1 - lambda)/(1 - alpha) on (lambda*, 1), sup g = 0.
ClosedProfile gM_profile(double sigma2, double lambda);

/// Roots of the auxiliary equations, residual at most 1e-12.
double w_stirling(double alpha);  // w/(e^w - 1) = alpha
double w_touchard(double alpha);  // 1 - e^{-w} = alpha w
double w_eulerian(double alpha);  // e^w/(e^w - 1) - 1/w = alpha

enum class AtomSide { none, zero, infinity };

struct Inversion {
  double alpha = 0.0;
  double G = 0.0;  // alpha / t
  double residual = 0.0;
  /// Set when t lies outside the range of eg; alpha is then the endpoint.
  AtomSide atom = AtomSide::none;
};

/// alpha with eg(alpha) = t, by bisection then Newton, to |eg - t| <= 1e-12 (1 + t).
Inversion invert_profile_to_tG(const std::function<double(double)>& eg, double t, double lo = 0.0,
                               double hi = 1.0);
Inversion invert_profile_to_tG(const ClosedProfile& profile, double t);

struct ZeroProfileRow {
  int n = 0;
  double sup_deviation = 0.0;
  /// max (1/n) log(a_k / P(1)) over k/n outside [lo, hi]; -inf when empty or all zero.
  double outside_max = 0.0;
  int points = 0;
};

struct ZeroProfileReport {
  std::vector<ZeroProfileRow> rows;
  double lo = 0.0;
  double hi = 1.0;
  double eps = 0.0;
  /// lo == hi: the sup statement is void and no deviation is computed.
  bool void_case = false;
  bool decreasing = false;
};

/**
 * Sup over k/n in [lo + eps, hi - eps] of |(1/n) log(a_k/P(1)) - (g - sup g)(k/n)| per n.
 * lo and hi come from the last measure (mass at 0, one minus mass at -inf) when measures
 * are given, else from the profile.
 */
ZeroProfileReport verify_zero_to_profile(const std::vector<LogCoeffVector>& polys, const ClosedProfile* profile,
                                         double eps, const std::vector<roots::EmpiricalMeasure>& measures = {});

struct LegendreRow {
  double alpha = 0.0;
  double g_minus_sup = 0.0;
  double infimum = 0.0;  // inf_u Psi(e^u) - alpha u
  double u_star = 0.0;
  double deviation = 0.0;
};

struct LegendreReport {
  std::vector<LegendreRow> rows;
  double max_deviation = 0.0;
  bool unbounded = false;
};

/// Compares g - sup g with inf_u (Psi(e^u) - alpha u), golden-section in u.
LegendreReport legendre_check(const ClosedProfile& profile, const limitlaws::LimitLaw& law,
                              const std::vector<double>& alphas);

}  // namespace zeroprof::profiles
