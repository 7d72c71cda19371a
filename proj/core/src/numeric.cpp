#include "zeroprof/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeroprof {

namespace {
thread_local mpfr_prec_t g_default_prec = 256;

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

mpfr_prec_t BigFloat::default_precision() { return g_default_prec; }
void BigFloat::set_default_precision(mpfr_prec_t prec) { g_default_prec = prec; }

BigFloat::BigFloat(Uninit, mpfr_prec_t prec) { mpfr_init2(v_, prec); }

BigFloat::BigFloat() : BigFloat(Uninit{}, g_default_prec) { mpfr_set_zero(v_, 1); }

BigFloat::BigFloat(double v) : BigFloat(Uninit{}, g_default_prec) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(double v, mpfr_prec_t prec) : BigFloat(Uninit{}, prec) {
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) : BigFloat(Uninit{}, prec) {
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& z, mpfr_prec_t prec) : BigFloat(Uninit{}, prec) {
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(Uninit{}, other.precision()) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(Uninit{}, other.precision()) {
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_string(const std::string& text, mpfr_prec_t prec) {
  BigFloat r(Uninit{}, prec);
  char* end = nullptr;
  mpfr_strtofr(r.v_, text.c_str(), &end, 0, MPFR_RNDN);
  if (end == text.c_str()) throw std::invalid_argument("cannot parse float: " + text);
  return r;
}

BigFloat BigFloat::zero(mpfr_prec_t prec) {
  BigFloat r(Uninit{}, prec);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Rational BigFloat::to_rational() const {
  if (!is_finite()) throw std::domain_error("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string BigFloat::to_hex() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string BigFloat::to_decimal(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long BigFloat::exponent2() const {
  if (is_zero() || !is_finite()) return 0;
  return mpfr_get_exp(v_);
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(Uninit{}, precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

PrecisionScope::PrecisionScope(mpfr_prec_t prec) : saved_(BigFloat::default_precision()) {
  BigFloat::set_default_precision(prec);
}
PrecisionScope::~PrecisionScope() { BigFloat::set_default_precision(saved_); }

#define ZP_BINOP(OP, FN)                                               \
  BigFloat operator OP(const BigFloat& a, const BigFloat& b) {         \
    BigFloat r = BigFloat::zero(max_prec(a, b));                       \
    FN(r.get(), a.get(), b.get(), MPFR_RNDN);                          \
    return r;                                                          \
  }                                                                    \
  BigFloat operator OP(const BigFloat& a, double b) {                  \
    return a OP BigFloat(b, a.precision());                            \
  }                                                                    \
  BigFloat operator OP(double a, const BigFloat& b) {                  \
    return BigFloat(a, b.precision()) OP b;                            \
  }

ZP_BINOP(+, mpfr_add)
ZP_BINOP(-, mpfr_sub)
ZP_BINOP(*, mpfr_mul)
ZP_BINOP(/, mpfr_div)
#undef ZP_BINOP

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()); }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.get(), b.get()); }
bool operator>=(const BigFloat& a, const BigFloat& b) {
  return mpfr_greaterequal_p(a.get(), b.get());
}
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.get(), b.get()); }
bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }

#define ZP_UNARY(NAME, FN)                       \
  BigFloat NAME(const BigFloat& x) {             \
    BigFloat r = BigFloat::zero(x.precision());  \
    FN(r.get(), x.get(), MPFR_RNDN);             \
    return r;                                    \
  }

ZP_UNARY(exp, mpfr_exp)
ZP_UNARY(expm1, mpfr_expm1)
ZP_UNARY(log, mpfr_log)
ZP_UNARY(log1p, mpfr_log1p)
ZP_UNARY(sqrt, mpfr_sqrt)
ZP_UNARY(abs, mpfr_abs)
ZP_UNARY(sin, mpfr_sin)
ZP_UNARY(cos, mpfr_cos)
#undef ZP_UNARY

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r = BigFloat::zero(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r = x;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

BigFloat const_e(mpfr_prec_t prec) {
  BigFloat one(1.0, prec);
  return exp(one);
}

BigFloat const_pi(mpfr_prec_t prec) {
  BigFloat r = BigFloat::zero(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

double log_abs(const Integer& z) {
  if (z == 0) return -INFINITY;
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const Rational& q) {
  if (q == 0) return -INFINITY;
  return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rational rational_pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Rational falling_factorial(const Rational& x, unsigned long r) {
  Rational acc = 1;
  for (unsigned long l = 0; l < r; ++l) acc *= (x - Rational(static_cast<long>(l)));
  return acc;
}

Rational rising_factorial(const Rational& x, unsigned long r) {
  Rational acc = 1;
  for (unsigned long l = 0; l < r; ++l) acc *= (x + Rational(static_cast<long>(l)));
  return acc;
}

Rational binomial_rational(const Rational& x, unsigned long r) {
  Rational f = falling_factorial(x, r);
  return f / Rational(factorial(r));
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text.push_back(c);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q;
    Integer num(text.substr(0, slash), 10);
    Integer den(text.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in " + raw);
    q = Rational(num, den);
    q.canonicalize();
    return q;
  }
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  std::string mant = text;
  if (epos != std::string::npos) {
    exp10 = std::stol(text.substr(epos + 1));
    mant = text.substr(0, epos);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("cannot parse rational: " + raw);
  Rational q{Integer(digits, 10)};
  Integer ten = 10, p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0)
    q *= Rational(p);
  else
    q /= Rational(p);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str() + "/1";
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace zeroprof
