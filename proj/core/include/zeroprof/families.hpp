#pragma once

#include <string>
#include <vector>

#include "zeroprof/polynomial.hpp"

namespace zeroprof::families {

/// S_n(x) = x(x+1)...(x+n-1); unsigned Stirling numbers of the first kind.
ExactPolynomial stirling1_poly(int n);
/// T_n(x) = sum_k S(n,k) x^k with Stirling numbers of the second kind.
ExactPolynomial touchard_poly(int n);
/// F_n(x) = sum_k k! S(n,k) x^k.
ExactPolynomial fubini_poly(int n);
/// E_n(x) = sum_j <n,j> x^j, degree n-1 stored with degree bound n.
ExactPolynomial eulerian_poly(int n);
/// N_n(x) = sum_{k=1}^n N_{n,k-1} x^k.
ExactPolynomial narayana_poly(int n);
/// B_{n,gamma}(x) = sum_k binom(n,k)^gamma x^k, integer gamma >= 2.
ExactPolynomial binomial_power_poly(int n, int gamma);

/**
 * Rescaled hypergeometric polynomial
 *   sum_k binom(n,k) n^{(i-j)(n-k)} (b n)_{(n-k)} / (a n)_{(n-k)} x^k
 * with falling factorials. The vectors may be the per-n values a^(n), b^(n).
 */
ExactPolynomial hypergeometric_poly(int n, const std::vector<Rational>& a,
                                    const std::vector<Rational>& b);

/// Signed Laguerre L_n^(gamma); negative integer gamma goes through the reflection identity.
ExactPolynomial laguerre_poly(int n, const Rational& gamma);
/// L_n^(gamma)(-x), nonnegative coefficients for gamma > -1.
ExactPolynomial laguerre_nonneg(int n, const Rational& gamma);
/// Probabilists' Hermite He_n.
ExactPolynomial hermite_poly(int n);
/// Jacobi J_n^(u,v) in the monomial basis.
ExactPolynomial jacobi_poly(int n, const Rational& u, const Rational& v);

/// Coefficients of P_n(-x; a | q) with q = exp(-lambda/n).
FloatPolynomial little_q_laguerre_poly(int n, const Rational& a, const Rational& lambda,
                                       mpfr_prec_t prec = 256);
/// Same with a high-precision lambda, e.g. log 2.
FloatPolynomial little_q_laguerre_poly(int n, const Rational& a, const BigFloat& lambda, mpfr_prec_t prec = 256);
/// G_n(x; sigma2) = sum (-1)^{n-k} binom(n,k) exp(sigma2 k(n-k)/2) x^k.
FloatPolynomial free_mult_hermite_poly(int n, const Rational& sigma2, mpfr_prec_t prec = 256);
/// P_n(x; b, c) = sum (-1)^{n-k} binom(n,k) |k+b|^c x^k.
ExactPolynomial free_mult_poisson_poly(int n, const Rational& b, int c);

/// Real-exponent variants; real-rootedness is only conjectured for these.
FloatPolynomial binomial_power_poly_real(int n, const Rational& gamma, mpfr_prec_t prec = 256);
FloatPolynomial free_mult_poisson_poly_real(int n, const Rational& b, const Rational& c, mpfr_prec_t prec = 256);

/// Unsigned Stirling numbers of the first kind s(n, 0..n).
std::vector<Integer> stirling1_row(int n);
/// Stirling numbers of the second kind S(n, 0..n).
std::vector<Integer> stirling2_row(int n);

}  // namespace zeroprof::families
