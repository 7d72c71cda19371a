#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/polynomial.hpp"

namespace zeroprof::roots {

class NotRealRooted : public std::runtime_error {
 public:
  NotRealRooted(int real_roots, int degree);
  int real_roots;
  int degree;
};

/// `mobius` isolates (t-1)^d P(1/(t-1)) and maps back by x = 1/(t-1); suited to roots
/// clustered at both -1 and 0, where monomial evaluation near -1 cancels badly.
enum class RootMethod { automatic, sturm, numeric, mobius };

struct Root {
  BigFloat value;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> distinct;  // ascending
  int degree = 0;
  /// The count is proved: exact Sturm, or sign changes beyond a rigorous Horner error bound.
  bool certified = false;
  /// Every root was bracketed to the requested precision.
  bool precision_met = false;
  std::string method;
  mpfr_prec_t working_precision = 0;

  /// Ascending roots repeated by multiplicity.
  std::vector<double> values() const;
};

/// Distinct real roots of p, by a Sturm sequence in exact arithmetic.
int sturm_count(const ExactPolynomial& p);
/// Real roots counted with multiplicity (square-free decomposition, then Sturm per factor).
int count_real_roots(const ExactPolynomial& p);
/// Square-free decomposition: factors[i] has multiplicity i + 1 (possibly constant).
std::vector<ExactPolynomial> squarefree_decomposition(const ExactPolynomial& p);

/**
 * All roots of a real-rooted p to absolute precision 2^-precision_bits relative to the root
 * scale. Degree up to 64 goes through Sturm bisection; above that a Laguerre iteration with
 * implicit deflation runs in MPFR and the count is certified by sign alternation.
 * Throws NotRealRooted when fewer than deg p real roots exist.
 */
RootSet isolate_real_roots(const ExactPolynomial& p, int precision_bits = 60,
                           RootMethod method = RootMethod::automatic);
/// Numerical path for high-precision float coefficients; the result is evidence, not proof.
RootSet isolate_real_roots(const FloatPolynomial& p, int precision_bits = 60);

/// Uniform measure 1/n on the roots; mass (n - #roots)/n sits at -infinity.
struct EmpiricalMeasure {
  std::vector<double> roots;
  /// The same roots at working precision when built from a RootSet, else empty.
  std::vector<BigFloat> precise;
  double mass_at_infinity = 0.0;
  int n = 0;

  double mass_at_zero() const;
  double total_mass() const;
  /// Mass of [-inf, x], the infinite part included.
  double cdf(double x) const;
};

EmpiricalMeasure empirical_measure(const RootSet& roots, int n);
EmpiricalMeasure empirical_measure(std::vector<double> roots, int n);
/// Roots of p scaled by 1/s (zeros of P(s x)), normalised by n; negative s reflects.
EmpiricalMeasure scaled_measure(const EmpiricalMeasure& em, double s);

using Compactify = std::function<double(double)>;
/// x -> x/(1-x), an increasing map of [-inf, 0] onto [-1, 0].
double compactify_negative(double x);

/// sup |F_emp - F_law|, evaluated at every jump of either side.
double ks_distance(const EmpiricalMeasure& em, const limitlaws::LimitLaw& law,
                   const Compactify& compactify = {});
double ks_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// P(x + A); for A at least the largest root every root becomes nonpositive.
ExactPolynomial shift_for_positive_roots(const ExactPolynomial& p, const Rational& a);

}  // namespace zeroprof::roots
