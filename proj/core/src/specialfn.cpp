#include "zeroprof/specialfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zeroprof::specialfn {

namespace {
constexpr long double kE = 2.718281828459045235360287471352662498L;
constexpr double kInvE = 0.36787944117144232159552377016146086745;
constexpr double kPi = 3.14159265358979323846264338327950288;

double initial_guess(double x) {
  if (x < -kInvE + 0.2) {
    long double q = 1.0L + kE * static_cast<long double>(x);
    double p = std::sqrt(std::max(0.0, 2.0 * static_cast<double>(q)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (std::fabs(x) <= 0.3) return x - x * x + 1.5 * x * x * x - 8.0 / 3.0 * x * x * x * x;
  if (x > 3.0) {
    double l1 = std::log(x), l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  return std::log1p(x) * (1.0 - 0.14 * std::log1p(x));
}
}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN argument");
  if (std::isinf(x)) {
    if (x > 0) return x;
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  long double q = 1.0L + kE * static_cast<long double>(x);
  const long double tol = 8.0L * std::numeric_limits<double>::epsilon();
  if (q < -tol) throw std::domain_error("lambert_w0: argument below -1/e");
  if (q <= tol) return -1.0;
  if (x == 0.0) return 0.0;
  double w = initial_guess(x);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double wp1 = w + 1.0;
    double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    double next = w - f / denom;
    if (next == w || next == prev) {
      w = next;
      break;
    }
    prev = w;
    w = next;
  }
  return w;
}

BigFloat lambert_w0(const BigFloat& x) {
  const mpfr_prec_t prec = x.precision();
  PrecisionScope scope(prec);
  BigFloat e = const_e(prec);
  BigFloat q = 1.0 + e * x;
  BigFloat tol = ldexp(BigFloat(1.0, prec), -static_cast<long>(prec) + 4);
  if (q < -tol) throw std::domain_error("lambert_w0: argument below -1/e");
  if (q <= tol) return BigFloat(-1.0, prec);
  if (x.is_zero()) return BigFloat::zero(prec);
  BigFloat w(0.0, prec);
  double xd = x.to_double();
  if (std::isfinite(xd) && xd > -kInvE) {
    w = BigFloat(lambert_w0(xd), prec);
  } else if (xd <= -kInvE) {
    BigFloat p = sqrt(2.0 * q);
    w = -1.0 + p - p * p / 3.0;
  } else {
    BigFloat l1 = log(x);
    w = l1 - log(l1);
  }
  BigFloat eps = ldexp(BigFloat(1.0, prec), -static_cast<long>(prec) + 2);
  for (int it = 0; it < 200; ++it) {
    BigFloat ew = exp(w);
    BigFloat f = w * ew - x;
    BigFloat wp1 = w + 1.0;
    if (wp1.is_zero()) break;
    BigFloat denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom.is_zero()) break;
    BigFloat step = f / denom;
    w -= step;
    if (abs(step) <= eps * (abs(w) + 1.0)) {
      // one more step settles the last bits
      ew = exp(w);
      f = w * ew - x;
      wp1 = w + 1.0;
      denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
      if (!denom.is_zero()) w -= f / denom;
      break;
    }
  }
  return w;
}

ComplexValue lambert_w0_complex(ComplexValue z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("lambert_w0_complex: non-finite argument");
  if (z.imag() == 0.0) {
    if (z.real() < -kInvE)
      throw std::domain_error("lambert_w0_complex: argument on the branch cut, use lambert_w0_cut");
    return {lambert_w0(z.real()), 0.0};
  }
  const ComplexValue ez(static_cast<double>(kE), 0.0);
  ComplexValue w;
  if (std::abs(z + kInvE) < 0.3) {
    ComplexValue p = std::sqrt(2.0 * (ez * z + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (std::abs(z) <= 0.3) {
    w = z - z * z + 1.5 * z * z * z;
  } else if (std::abs(z) >= 3.0 || z.real() < 0.0) {
    ComplexValue l1 = std::log(z);
    w = l1 - std::log(l1);
  } else {
    w = std::log(1.0 + z);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 100; ++it) {
    ComplexValue ew = std::exp(w);
    ComplexValue f = w * ew - z;
    ComplexValue wp1 = w + 1.0;
    ComplexValue denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (std::abs(denom) == 0.0) break;
    ComplexValue step = f / denom;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);
    w -= step;
    if (std::abs(step) <= 2.0 * eps * (1.0 + std::abs(w))) {
      ew = std::exp(w);
      f = w * ew - z;
      wp1 = w + 1.0;
      denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
      if (std::abs(denom) != 0.0) w -= f / denom;
      break;
    }
  }
  return w;
}

ComplexValue lambert_w0_cut(double x, CutSide side) {
  if (!(x < -kInvE)) throw std::domain_error("lambert_w0_cut: requires x < -1/e");
  return lambert_w0_cut_log(std::log(-x), side);
}

ComplexValue lambert_w0_cut_log(double log_neg_x, CutSide side) {
  if (!(log_neg_x > -1.0)) throw std::domain_error("lambert_w0_cut: requires x < -1/e");
  // x = -(v/sin v) exp(-v cot v), so log(-x) = log(v/sin v) - v cot v, increasing on (0, pi)
  const double target = log_neg_x;
  double v;
  if (target < 8.0) {
    auto h = [](double t) {
      double s = std::sin(t);
      return std::log(t / s) - t * std::cos(t) / s;
    };
    double lo = 0.0, hi = kPi;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (h(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    v = 0.5 * (lo + hi);
    if (v <= 0.0) v = hi;
    ComplexValue w(-v * std::cos(v) / std::sin(v), v);
    return side == CutSide::upper ? w : std::conj(w);
  }
  // close to pi: bisect geometrically in d = pi - v
  auto hd = [](double d) {
    double s = std::sin(d);
    return std::log((kPi - d) / s) + (kPi - d) * std::cos(d) / s;
  };
  double lo = std::numeric_limits<double>::min(), hi = 1.0;
  for (int it = 0; it < 400; ++it) {
    double mid = (hi / lo > 1.5) ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hd(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  double d = 0.5 * (lo + hi);
  v = kPi - d;
  ComplexValue w((kPi - d) * std::cos(d) / std::sin(d), v);
  return side == CutSide::upper ? w : std::conj(w);
}

ComplexValue exp_w0_series(ComplexValue z, int terms) {
  ComplexValue sum = 1.0;
  ComplexValue zp = z;
  for (int k = 0; k < terms; ++k) {
    double mag = (k == 0) ? 1.0 : std::exp(k * std::log(static_cast<double>(k)) - std::lgamma(k + 2.0));
    double coef = (k % 2) ? -mag : mag;
    sum += coef * zp;
    zp *= z;
  }
  return sum;
}

double lambert_w0_derivative(double x) {
  if (x == 0.0) return 1.0;
  double w = lambert_w0(x);
  return w / (x * (1.0 + w));
}

}  // namespace zeroprof::specialfn
