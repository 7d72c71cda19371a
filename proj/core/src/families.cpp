#include "zeroprof/families.hpp"

#include <stdexcept>

namespace zeroprof::families {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

ExactPolynomial from_integer_row(const std::vector<Integer>& row) {
  ExactPolynomial p(static_cast<int>(row.size()) - 1);
  for (size_t k = 0; k < row.size(); ++k) p.coeffs[k] = Rational(row[k]);
  return p;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }
}  // namespace

std::vector<Integer> stirling1_row(int n) {
  std::vector<Integer> row(static_cast<size_t>(n) + 1, Integer(0));
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = m; k >= 1; --k) row[k] = row[k - 1] + Integer(m - 1) * row[k];
    row[0] = 0;
  }
  return row;
}

std::vector<Integer> stirling2_row(int n) {
  std::vector<Integer> row(static_cast<size_t>(n) + 1, Integer(0));
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = m; k >= 1; --k) row[k] = Integer(k) * row[k] + row[k - 1];
    row[0] = 0;
  }
  return row;
}

ExactPolynomial stirling1_poly(int n) {
  require(n >= 0, "stirling1_poly: n must be >= 0");
  return from_integer_row(stirling1_row(n));
}

ExactPolynomial touchard_poly(int n) {
  require(n >= 1, "touchard_poly: n must be >= 1");
  return from_integer_row(stirling2_row(n));
}

ExactPolynomial fubini_poly(int n) {
  require(n >= 1, "fubini_poly: n must be >= 1");
  auto row = stirling2_row(n);
  Integer f = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    row[k] *= f;
  }
  return from_integer_row(row);
}

ExactPolynomial eulerian_poly(int n) {
  require(n >= 1, "eulerian_poly: n must be >= 1");
  std::vector<Integer> row(static_cast<size_t>(n) + 1, Integer(0));
  row[0] = 1;
  for (int m = 2; m <= n; ++m) {
    for (int j = m - 1; j >= 1; --j) row[j] = Integer(j + 1) * row[j] + Integer(m - j) * row[j - 1];
  }
  return from_integer_row(row);
}

ExactPolynomial narayana_poly(int n) {
  require(n >= 1, "narayana_poly: n must be >= 1");
  ExactPolynomial p(n);
  for (int k = 1; k <= n; ++k) {
    int j = k - 1;
    Integer v = binomial(n, j) * binomial(n - 1, j);
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(j + 1));
    p[k] = Rational(v);
  }
  return p;
}

ExactPolynomial binomial_power_poly(int n, int gamma) {
  require(n >= 1, "binomial_power_poly: n must be >= 1");
  require(gamma >= 2, "binomial_power_poly: gamma must be an integer >= 2");
  ExactPolynomial p(n);
  for (int k = 0; k <= n; ++k) {
    Integer c = binomial(n, k), v;
    mpz_pow_ui(v.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(gamma));
    p[k] = Rational(v);
  }
  return p;
}

ExactPolynomial hypergeometric_poly(int n, const std::vector<Rational>& a,
                                    const std::vector<Rational>& b) {
  require(n >= 1, "hypergeometric_poly: n must be >= 1");
  const Rational boundary = Rational(1) - Rational(1, n);
  for (const auto& as : a)
    require(as >= 1 || as < 0, "hypergeometric_poly: a_s must lie outside [0,1)");
  for (const auto& bs : b)
    require(bs >= boundary || bs < 0, "hypergeometric_poly: b_s must lie outside [0,1) (b_s >= 1-1/n allowed)");
  const int i = static_cast<int>(a.size()), j = static_cast<int>(b.size());
  Rational nn(n);
  std::vector<Rational> an(a.size()), bn(b.size());
  for (size_t s = 0; s < a.size(); ++s) an[s] = a[s] * nn;
  for (size_t s = 0; s < b.size(); ++s) bn[s] = b[s] * nn;

  // ratio[r] = prod (b n)_(r) / prod (a n)_(r), built incrementally in r = n - k.
  std::vector<Rational> ratio(static_cast<size_t>(n) + 1);
  ratio[0] = 1;
  for (int r = 1; r <= n; ++r) {
    Rational f = ratio[r - 1];
    for (const auto& v : bn) f *= (v - Rational(r - 1));
    for (size_t s = 0; s < an.size(); ++s) {
      Rational d = an[s] - Rational(r - 1);
      if (d == 0)
        throw std::domain_error("hypergeometric_poly: falling factorial (a_" + std::to_string(s + 1) +
                                " n) vanishes at factor " + std::to_string(r - 1));
      f /= d;
    }
    ratio[r] = f;
  }
  ExactPolynomial p(n);
  const int shift = i - j;
  for (int k = 0; k <= n; ++k) {
    int r = n - k;
    Rational c(binomial(n, k));
    c *= ratio[r];
    long e = static_cast<long>(shift) * r;
    Rational pw = rational_pow(nn, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0)
      c *= pw;
    else
      c /= pw;
    p[k] = c;
  }
  return p;
}

ExactPolynomial laguerre_poly(int n, const Rational& gamma) {
  require(n >= 1, "laguerre_poly: n must be >= 1");
  if (is_integer(gamma) && gamma < 0 && gamma >= -n) {
    // L_n^(g)(x) = (-x)^(-g) ((n+g)!/n!) L_{n+g}^(-g)(x)
    const int r = static_cast<int>(-gamma.get_num().get_si());
    ExactPolynomial p(n);
    Rational pref = Rational(factorial(n - r)) / Rational(factorial(n));
    if (r % 2) pref = -pref;
    if (n - r == 0) {
      p[r] = pref;
      return p;
    }
    ExactPolynomial inner = laguerre_poly(n - r, Rational(r));
    for (int k = 0; k <= n - r; ++k) p[k + r] = pref * inner[k];
    return p;
  }
  ExactPolynomial p(n);
  Rational upper = Rational(n) + gamma;
  Rational kf = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kf *= k;
    Rational c = binomial_rational(upper, static_cast<unsigned long>(n - k)) / kf;
    p[k] = (k % 2) ? Rational(-c) : c;
  }
  return p;
}

ExactPolynomial laguerre_nonneg(int n, const Rational& gamma) {
  return scale_argument(laguerre_poly(n, gamma), Rational(-1));
}

ExactPolynomial hermite_poly(int n) {
  require(n >= 1, "hermite_poly: n must be >= 1");
  ExactPolynomial p(n);
  Integer nf = factorial(n);
  for (int m = 0; 2 * m <= n; ++m) {
    Integer den = factorial(m) * factorial(n - 2 * m);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(m));
    Rational c(nf, den);
    c.canonicalize();
    p[n - 2 * m] = (m % 2) ? Rational(-c) : c;
  }
  return p;
}

ExactPolynomial jacobi_poly(int n, const Rational& u, const Rational& v) {
  require(n >= 0, "jacobi_poly: n must be >= 0");
  require(u > -1 && v > -1, "jacobi_poly: requires u, v > -1");
  // ((u+1)^(n)/n!) sum_k (-n)^(k) (1+u+v+n)^(k) / ((u+1)^(k) k!) y^k, y = (1-x)/2
  ExactPolynomial in_y(n);
  Rational pref = rising_factorial(u + 1, static_cast<unsigned long>(n)) / Rational(factorial(n));
  Rational term = 1;
  for (int k = 0; k <= n; ++k) {
    in_y[k] = pref * term;
    term *= Rational(k - n) * (Rational(1 + n + k) + u + v);
    term /= (u + Rational(1 + k)) * Rational(k + 1);
  }
  // substitute y = 1/2 - x/2
  ExactPolynomial lin(1);
  lin[0] = Rational(1, 2);
  lin[1] = Rational(-1, 2);
  ExactPolynomial out(n), pw(0);
  pw[0] = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) pw = multiply(pw, lin);
    for (int m = 0; m <= k; ++m) out[m] += in_y[k] * pw[m];
  }
  return out;
}

FloatPolynomial little_q_laguerre_poly(int n, const Rational& a, const Rational& lambda,
                                       mpfr_prec_t prec) {
  require(lambda > 0, "little_q_laguerre_poly: requires lambda > 0");
  return little_q_laguerre_poly(n, a, BigFloat(lambda, prec), prec);
}

FloatPolynomial little_q_laguerre_poly(int n, const Rational& a, const BigFloat& lambda, mpfr_prec_t prec) {
  require(n >= 1, "little_q_laguerre_poly: n must be >= 1");
  require(a >= 0 && a <= 1, "little_q_laguerre_poly: requires 0 <= a <= 1 (nonnegativity for a <= 1 < 1/q)");
  require(lambda.sign() > 0, "little_q_laguerre_poly: requires lambda > 0");
  PrecisionScope scope(prec);
  FloatPolynomial p;
  p.n = n;
  p.precision = prec;
  p.coeffs.assign(static_cast<size_t>(n) + 1, BigFloat::zero(prec));
  BigFloat lam = lambda, av(a, prec);
  BigFloat lq = -lam / BigFloat(static_cast<double>(n), prec);  // log q
  BigFloat q = exp(lq);
  BigFloat acc(1.0, prec);
  p.coeffs[0] = acc;
  for (int j = 1; j <= n; ++j) {
    BigFloat qj = exp(lq * static_cast<double>(j));
    BigFloat qjn = exp(lq * static_cast<double>(j - n));
    BigFloat num = qjn - q;
    BigFloat den = (1.0 - av * qj) * (-expm1(lq * static_cast<double>(j)));
    acc = acc * num / den;
    p.coeffs[static_cast<size_t>(j)] = acc;
  }
  return p;
}

FloatPolynomial free_mult_hermite_poly(int n, const Rational& sigma2, mpfr_prec_t prec) {
  require(n >= 1, "free_mult_hermite_poly: n must be >= 1");
  require(sigma2 >= 0, "free_mult_hermite_poly: requires sigma2 >= 0");
  PrecisionScope scope(prec);
  FloatPolynomial p;
  p.n = n;
  p.precision = prec;
  p.coeffs.assign(static_cast<size_t>(n) + 1, BigFloat::zero(prec));
  for (int k = 0; k <= n; ++k) {
    Rational ex = sigma2 * Rational(static_cast<long>(k) * (n - k), 2);
    BigFloat c = BigFloat(Rational(binomial(n, k)), prec) * exp(BigFloat(ex, prec));
    p.coeffs[static_cast<size_t>(k)] = ((n - k) % 2) ? -c : c;
  }
  return p;
}

ExactPolynomial free_mult_poisson_poly(int n, const Rational& b, int c) {
  require(n >= 1, "free_mult_poisson_poly: n must be >= 1");
  require(c >= 0, "free_mult_poisson_poly: c must be a nonnegative integer");
  require(b >= 0 || b <= -n, "free_mult_poisson_poly: requires b >= 0 or b <= -n");
  ExactPolynomial p(n);
  for (int k = 0; k <= n; ++k) {
    Rational base = abs(Rational(k) + b);
    Rational v = Rational(binomial(n, k)) * rational_pow(base, static_cast<unsigned long>(c));
    p[k] = ((n - k) % 2) ? Rational(-v) : v;
  }
  return p;
}

}  // namespace zeroprof::families

namespace zeroprof::families {

FloatPolynomial binomial_power_poly_real(int n, const Rational& gamma, mpfr_prec_t prec) {
  require(n >= 1, "binomial_power_poly_real: n must be >= 1");
  require(gamma >= 2, "binomial_power_poly_real: requires gamma >= 2");
  PrecisionScope scope(prec);
  FloatPolynomial p;
  p.n = n;
  p.precision = prec;
  BigFloat g(gamma, prec);
  for (int k = 0; k <= n; ++k) p.coeffs.push_back(pow(BigFloat(binomial(n, k), prec), g));
  return p;
}

FloatPolynomial free_mult_poisson_poly_real(int n, const Rational& b, const Rational& c, mpfr_prec_t prec) {
  require(n >= 1, "free_mult_poisson_poly_real: n must be >= 1");
  require(c >= 0, "free_mult_poisson_poly_real: c must be nonnegative");
  require(b >= 0 || b <= -n, "free_mult_poisson_poly_real: requires b >= 0 or b <= -n");
  PrecisionScope scope(prec);
  FloatPolynomial p;
  p.n = n;
  p.precision = prec;
  BigFloat cv(c, prec);
  for (int k = 0; k <= n; ++k) {
    Rational base = abs(Rational(k) + b);
    BigFloat v = BigFloat(binomial(n, k), prec);
    if (base != 0) {
      v = v * pow(BigFloat(base, prec), cv);
    } else if (c != 0) {
      v = BigFloat::zero(prec);
    }
    p.coeffs.push_back(((n - k) % 2) ? -v : v);
  }
  return p;
}

}  // namespace zeroprof::families
