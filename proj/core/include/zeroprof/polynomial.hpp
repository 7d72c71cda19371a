#pragma once

#include <map>
#include <string>
#include <vector>

#include "zeroprof/numeric.hpp"

namespace zeroprof {

/// Coefficients a_0..a_n of a polynomial of degree at most n.
struct ExactPolynomial {
  std::vector<Rational> coeffs;
  int n = 0;

  ExactPolynomial() : coeffs(1, Rational(0)) {}
  explicit ExactPolynomial(int degree_bound)
      : coeffs(static_cast<size_t>(degree_bound) + 1, Rational(0)), n(degree_bound) {}
  explicit ExactPolynomial(std::vector<Rational> c)
      : coeffs(std::move(c)), n(static_cast<int>(coeffs.size()) - 1) {}

  /// Highest index with a nonzero coefficient, -1 for the zero polynomial.
  int degree() const;
  const Rational& operator[](int k) const { return coeffs[static_cast<size_t>(k)]; }
  Rational& operator[](int k) { return coeffs[static_cast<size_t>(k)]; }
  Rational evaluate(const Rational& x) const;
  bool all_nonnegative() const;
  bool operator==(const ExactPolynomial& other) const;
};

/// High-precision float coefficients, for families with transcendental coefficients.
struct FloatPolynomial {
  std::vector<BigFloat> coeffs;
  int n = 0;
  mpfr_prec_t precision = 256;

  int degree() const;
  /// Exact rational image of the stored binary coefficients.
  ExactPolynomial to_exact() const;
};

ExactPolynomial from_integers(const std::vector<long>& c);

/// P(s x): a_k -> s^k a_k.
ExactPolynomial scale_argument(const ExactPolynomial& p, const Rational& s);
/// P(x + a) by repeated synthetic division.
ExactPolynomial taylor_shift(const ExactPolynomial& p, const Rational& a);
ExactPolynomial derivative(const ExactPolynomial& p);
ExactPolynomial multiply(const ExactPolynomial& p, const ExactPolynomial& q);
ExactPolynomial add(const ExactPolynomial& p, const ExactPolynomial& q);
ExactPolynomial scale_values(const ExactPolynomial& p, const Rational& c);
/// P(c x^m), degree bound n*m.
ExactPolynomial compose_monomial(const ExactPolynomial& p, const Rational& c, int m);
/// Divides by the leading coefficient; throws on the zero polynomial.
ExactPolynomial monic(const ExactPolynomial& p);
/// (x - r)^n.
ExactPolynomial power_of_linear(const Rational& r, int n);
/// Drops trailing zero coefficients so that n = degree.
ExactPolynomial trimmed(const ExactPolynomial& p);

/// Integer polynomial proportional to p by a positive factor, with content 1.
std::vector<Integer> primitive_integer_coeffs(const ExactPolynomial& p);

struct CoefficientFile {
  std::string family;
  int n = 0;
  std::map<std::string, std::string> params;
  bool is_float = false;
  ExactPolynomial exact;
  FloatPolynomial floating;
};

std::string serialize(const ExactPolynomial& p, const std::string& family,
                      const std::map<std::string, std::string>& params);
std::string serialize(const FloatPolynomial& p, const std::string& family,
                      const std::map<std::string, std::string>& params);
CoefficientFile parse_coefficients(const std::string& text);

}  // namespace zeroprof
