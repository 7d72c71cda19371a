#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <vector>

namespace zeroprof {

using Integer = mpz_class;
using Rational = mpq_class;

/**
 * Owning MPFR value. Binary operations round to the larger operand precision;
 * values built from doubles or rationals use the thread default unless given.
 */
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(double v);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const Rational& q, mpfr_prec_t prec);
  BigFloat(const Integer& z, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_string(const std::string& text, mpfr_prec_t prec);
  static BigFloat zero(mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  Rational to_rational() const;
  std::string to_hex() const;
  std::string to_decimal(int digits = 20) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat operator-() const;

  static mpfr_prec_t default_precision();
  static void set_default_precision(mpfr_prec_t prec);

 private:
  struct Uninit {};
  BigFloat(Uninit, mpfr_prec_t prec);
  mpfr_t v_;
};

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t prec);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator+(const BigFloat& a, double b);
BigFloat operator-(const BigFloat& a, double b);
BigFloat operator*(const BigFloat& a, double b);
BigFloat operator/(const BigFloat& a, double b);
BigFloat operator+(double a, const BigFloat& b);
BigFloat operator-(double a, const BigFloat& b);
BigFloat operator*(double a, const BigFloat& b);
BigFloat operator/(double a, const BigFloat& b);
bool operator<(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator>=(const BigFloat& a, const BigFloat& b);
bool operator==(const BigFloat& a, const BigFloat& b);
bool operator<(const BigFloat& a, double b);
bool operator>(const BigFloat& a, double b);

BigFloat exp(const BigFloat& x);
BigFloat expm1(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat const_e(mpfr_prec_t prec);
BigFloat const_pi(mpfr_prec_t prec);

/// Natural log of |q| for a nonzero rational, accurate to double rounding.
double log_abs(const Rational& q);
double log_abs(const Integer& z);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);
Rational rational_pow(const Rational& base, unsigned long e);

/// Falling factorial x(x-1)...(x-r+1) in exact rational arithmetic.
Rational falling_factorial(const Rational& x, unsigned long r);
/// Rising factorial x(x+1)...(x+r-1).
Rational rising_factorial(const Rational& x, unsigned long r);
/// Generalized binomial (x choose r) for rational x via a falling factorial.
Rational binomial_rational(const Rational& x, unsigned long r);

/// Parses "p/q", an integer, or a terminating decimal ("0.25", "-1e-3") exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace zeroprof
