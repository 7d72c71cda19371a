#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zeroprof/quadrature.hpp"

namespace zeroprof::limitlaws {

using Complex = std::complex<double>;

struct Atom {
  double x;  // may be -inf
  double mass;
};

/// Closed hull of the absolutely continuous part, on the extended line.
struct Support {
  double lo;
  double hi;
};

struct Potential {
  bool infinite = false;
  double value = 0.0;
};

enum class MomentMethod { automatic, closed, quadrature };

/// sqrt(t - a) sqrt(t - b): the branch of sqrt((t - a)(t - b)) that behaves like t at infinity.
Complex sqrt_branch(Complex t, double a, double b);

class LimitLaw {
 public:
  virtual ~LimitLaw() = default;

  virtual std::string id() const = 0;
  const std::map<std::string, double>& params() const { return params_; }
  virtual Support support() const = 0;
  virtual std::vector<Atom> atoms() const { return {}; }
  double atom_at_zero() const;
  double atom_at_infinity() const;

  virtual double density(double x) const = 0;
  /// d * density(c + dir d) with d = exp(log_d); laws with log-type edges override it.
  virtual double scaled_density(double c, int dir, double log_d) const;
  /// Closed-form Cauchy transform; laws without one fall back to quadrature.
  virtual bool has_closed_cauchy() const { return true; }
  virtual Complex cauchy_closed(Complex t) const;
  /// Mass of the absolutely continuous part on (-inf, x], when known in closed form.
  virtual std::optional<double> cdf_closed(double) const { return std::nullopt; }
  /// cdf_closed at c + dir e^{log_d} for an edge c, resolving gaps below double spacing.
  virtual std::optional<double> cdf_edge_closed(double, int, double) const { return std::nullopt; }
  /// Analytic F with Re F = U off the support.
  virtual std::optional<Complex> potential_closed(Complex) const { return std::nullopt; }
  virtual std::optional<double> psi_closed(double) const { return std::nullopt; }
  virtual bool infinite_potential() const { return false; }
  virtual std::optional<double> moment_closed(int) const { return std::nullopt; }
  /// Largest k with a finite absolute moment; -1 means all are finite.
  virtual int max_finite_moment() const { return -1; }
  /// Quadrature breakpoints covering the absolutely continuous part.
  virtual std::vector<quadrature::Breakpoint> breakpoints() const;

 protected:
  std::map<std::string, double> params_;
};

using LawPtr = std::shared_ptr<const LimitLaw>;

LawPtr law_uniform_stirling();
LawPtr law_touchard();
LawPtr law_fubini();
LawPtr law_eulerian();
LawPtr law_narayana(double gamma);
LawPtr law_mp(double sigma2, double lambda);
/// Marchenko-Pastur limit of L_n^(gamma_n)(n x) with gamma_n / n -> gamma.
LawPtr law_laguerre(double gamma);
LawPtr law_semicircle();
LawPtr law_arcsine();
LawPtr law_jacobi(double u, double v);
LawPtr law_gegenbauer(double gamma);
LawPtr law_q_laguerre(double a, double lambda);
/// Image of a law under x -> -x.
LawPtr law_reflect(LawPtr inner);

/// Laws by name with a parameter map; unknown names or parameters throw.
LawPtr make_law(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> law_names();

bool on_support(const LimitLaw& law, double x);
Complex cauchy_transform(const LimitLaw& law, Complex t);
Complex cauchy_transform_quadrature(const LimitLaw& law, Complex t);
double cdf(const LimitLaw& law, double x);
/// CDF at increasing points, accumulating quadrature piece by piece.
std::vector<double> cdf_sorted(const LimitLaw& law, const std::vector<double>& xs);
Potential log_potential(const LimitLaw& law, double t);
double log_potential_quadrature(const LimitLaw& law, double t);
double normalized_log_potential(const LimitLaw& law, double t);
double normalized_log_potential_quadrature(const LimitLaw& law, double t);
std::vector<double> moments(const LimitLaw& law, int k_max, MomentMethod method = MomentMethod::automatic);
/// Integral of f against the absolutely continuous part plus the finite atoms.
double integrate_against(const LimitLaw& law, const std::function<double(double)>& f);
/// Absolutely continuous mass plus all atoms.
double total_mass(const LimitLaw& law);
double density_mass(const LimitLaw& law);

}  // namespace zeroprof::limitlaws
