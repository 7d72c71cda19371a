#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/polynomial.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/roots.hpp"

namespace zeroprof::freeconv {

/// sum (-1)^{n-k} a_k b_k / binom(n,k) x^k; both inputs must share n.
ExactPolynomial boxtimes_n(const ExactPolynomial& p, const ExactPolynomial& q);
FloatPolynomial boxtimes_n(const FloatPolynomial& p, const FloatPolynomial& q);
/// p boxtimes p ... (k factors); k = 0 gives (x - 1)^n.
FloatPolynomial boxtimes_power(const FloatPolynomial& p, int k);

/**
 * Finite free additive convolution of monic polynomials of degree n. With p = sum a_i x^{n-i},
 * c_k = sum_{i+j=k} (n-i)!(n-j)!/(n!(n-k)!) a_i b_j.
 */
ExactPolynomial boxplus_n(const ExactPolynomial& p, const ExactPolynomial& q);

enum class TransformKind { psi, S, Sigma, R };

struct TransformView {
  TransformKind kind = TransformKind::S;
  double lo = -1.0;
  double hi = 0.0;
  std::function<double(double)> f;
  std::string source;

  double operator()(double z) const { return f(z); }
};

/// Sigma(z) = S(z/(1-z)).
TransformView sigma_from_S(const TransformView& S);

/// Weighted atom of rho; t = +inf contributes -z per unit weight.
struct LKAtom {
  double t;
  double weight;
};

struct LevyKhintchineData {
  double c0 = 0.0;
  std::vector<LKAtom> rho;

  /// v(z) = c0 + sum w (1 + t z)/(z - t).
  double v(double z) const;
  double sigma(double z) const;
};

struct FreeTransforms {
  TransformView S;
  TransformView Sigma;
  LevyKhintchineData lk;
};

/// S(t) = exp(-sigma2 (t + 1/2)); rho = (sigma2/2) delta_1, c0 = 0.
FreeTransforms free_mult_normal_transforms(double sigma2);
/// S(t) = exp(gamma/(t + beta + 1)); beta in (-1, 0) is rejected.
FreeTransforms free_mult_poisson_transforms(double beta, double gamma);

/// S(z) = -((1+z)/z) / eg(1+z) on (-1, 0).
TransformView transforms_from_profile(const profiles::ClosedProfile& profile);
TransformView transforms_from_profile(const std::function<double(double)>& eg);

/// psi(z) = integral of u z/(1 - u z) against the uniform-root measure (mass at infinity excluded).
double psi_empirical(const roots::EmpiricalMeasure& em, double z);
/// Inverse of psi on (-inf, 0); throws std::domain_error when y is out of range.
double psi_inverse(const roots::EmpiricalMeasure& em, double y);

struct SCheckRow {
  double z;
  double empirical;
  double target;
};

struct SCheckReport {
  std::vector<SCheckRow> rows;
  double max_error = 0.0;
  /// Grid points where psi could not be inverted.
  int out_of_range = 0;
};

/// S_em(z) = ((1+z)/z) psi^{-1}(z) against target on `points` values of z in [lo, hi].
SCheckReport empirical_S_check(const roots::EmpiricalMeasure& em, const TransformView& target, double lo = -0.8,
                               double hi = -0.2, int points = 61);

/// R(t) = t G^{-1}(t) - 1 with G^{-1} taken outside the support on the side of sign(t).
double numeric_R(const limitlaws::LimitLaw& law, double t);

struct FlowSpec {
  int n = 1;
  int m = 1;
  int j = 1;
  Rational c = 1;
  std::vector<Rational> b;  // b_1..b_j
  std::vector<int> sigma;   // permutation of 1..j; empty means identity
};

enum class FlowAction {
  /// Iterates H x^l = (l/(nm)) prod_s ((l - 1 + t_{s-1})/(nm) + b_{sigma(s)} - 1) x^{l-m}.
  displayed,
  /// Applies B_0 then B_{sigma(1)}, ..., B_{sigma(j)} to each monomial.
  composed,
};

/// e^{-c n H} x^{nm}, exact. The series stops after n + 1 terms since H^{n+1} x^{nm} = 0.
ExactPolynomial flow_polynomial(const FlowSpec& spec, FlowAction action = FlowAction::displayed);
/// b_s + (t_{sigma^{-1}(s)-1} - 1)/(mn).
std::vector<Rational> flow_b_shift(const FlowSpec& spec);
/// The shift matching the composed operator word: b_{sigma(s)} + (t_{s-1} - s)/(mn).
std::vector<Rational> flow_b_shift_composed(const FlowSpec& spec);
/// (-c)^n H_n^{empty, b}(-x^m/c).
ExactPolynomial flow_hypergeometric_side(const FlowSpec& spec, const std::vector<Rational>& b);

struct FlowCheck {
  bool displayed_identity = false;
  bool composed_identity = false;
  /// Whether the composed word matches the displayed action (differs once j >= 2 and m >= 2).
  bool actions_agree = false;
};

FlowCheck flow_identity_check(const FlowSpec& spec);
void validate(const FlowSpec& spec);

enum class FlowCase { I, II, III, IV };

FlowCase parse_flow_case(const std::string& name);
std::string to_string(FlowCase c);
/**
 * I: m = j = 1, b_1 = 1 + (gamma_n + 1)/n, c given. II: m = 2, j = 1, b = c = 1 (heat flow).
 * III: m = j + 1, b = c = 1. IV: m = 1, b = c = 1.
 */
FlowSpec flow_case(FlowCase which, int n, int j = 1, const Rational& c = 1, const Rational& gamma_n = 0);
/// I: ((-c)^n n!/n^n) L_n^{(gamma_n)}(n x/c). II, III: sum_k (-n)^k/k! (D/(nm))^{mk} x^{nm}, which is
/// the composed flow (the displayed action differs in Case III once j >= 2). IV has none.
std::optional<ExactPolynomial> flow_case_closed_form(FlowCase which, const FlowSpec& spec,
                                                     const Rational& gamma_n = 0);
/// Case IV: e^{-g'} = alpha^{j+1}/(1 - alpha).
profiles::ClosedProfile flow_case_iv_profile(int j);

/// f(z) = e^{c z - sigma2 z^2/2} prod (1 - z/x_j) e^{z/x_j}.
struct AppellSpec {
  Rational c = 0;
  Rational sigma2 = 0;
  std::vector<Rational> roots;
};

/// (f(D/n))^n x^n, exact.
ExactPolynomial appell_poly(int n, const AppellSpec& f);

struct AppellFactors {
  ExactPolynomial shift;     // (x + c + sum 1/x_j)^n
  ExactPolynomial gaussian;  // e^{-sigma2 D^2/(2n)} x^n
  std::vector<ExactPolynomial> laguerre;  // (1 - D/(n x_j))^n x^n
};

AppellFactors appell_factors(int n, const AppellSpec& f);
/// appell_poly equals the boxplus_n composition of the factors.
bool appell_factorization_check(int n, const AppellSpec& f);
/// gamma t + sigma2 t^2 + sum t (t + x)/(1 - t x) x^2/(x^2 + 1), x = 1/x_j, gamma = -c - sum 1/(x_j^3 + x_j).
double appell_R(const AppellSpec& f, double t);
/// R of the limit law as a sum of numerically inverted R-transforms of its semicircle and MP parts.
double appell_R_numeric(const AppellSpec& f, double t);

}  // namespace zeroprof::freeconv
