#include "zeroprof/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace zeroprof::profiles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double logsumexp(const std::vector<double>& v) {
  double m = -kInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v)
    if (std::isfinite(x)) s += std::exp(x - m);
  return m + std::log(s);
}

// Root of a monotone f on (lo, hi) by bisection down to adjacent doubles.
template <class F>
double bisect(F f, double target, double lo, double hi, bool increasing) {
  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double v = f(mid);
    if ((v < target) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  double vl = std::fabs(f(lo) - target), vh = std::fabs(f(hi) - target);
  return vl <= vh ? lo : hi;
}

// (1 - e^{-w})/w, decreasing from 1 to 0 on (0, inf)
double touchard_fn(double w) { return w == 0.0 ? 1.0 : -std::expm1(-w) / w; }
// w/(e^w - 1)
double stirling_fn(double w) { return w == 0.0 ? 1.0 : w / std::expm1(w); }
// e^w/(e^w - 1) - 1/w, increasing from 0 to 1 on the line
double eulerian_fn(double w) {
  if (std::fabs(w) < 1e-4) return 0.5 + w / 12.0 - w * w * w / 720.0;
  return -1.0 / std::expm1(-w) - 1.0 / w;
}

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1)");
}

double entropy(double a) {
  double v = 0.0;
  if (a > 0.0) v -= a * std::log(a);
  if (a < 1.0) v -= (1.0 - a) * std::log1p(-a);
  return v;
}

// integral of log|c - x| over [0, len]
double log_linear_integral(double c, double len) {
  auto F = [](double y) { return y == 0.0 ? 0.0 : y * std::log(std::fabs(y)) - y; };
  return F(c) - F(c - len);
}

void finish(ClosedProfile& p) {
  double e0 = p.eg_lo(), e1 = p.eg_hi();
  double at;
  if (e0 < 1.0 && 1.0 < e1)
    at = invert_profile_to_tG(p.eg, 1.0, p.lo, p.hi).alpha;
  else if (e1 <= 1.0)
    at = p.hi - 1e-9;
  else
    at = p.lo + 1e-9;
  p.sup_g = p.g(at);
}

double param(const std::map<std::string, double>& m, const std::string& key, const std::string& who) {
  auto it = m.find(key);
  if (it == m.end()) throw std::invalid_argument(who + ": missing parameter " + key);
  return it->second;
}

void only_keys(const std::map<std::string, double>& m, std::initializer_list<const char*> keys,
               const std::string& who) {
  for (const auto& [k, v] : m) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw std::invalid_argument(who + ": unknown parameter " + k);
  }
}

}  // namespace

double LogCoeffVector::log_sum() const { return logsumexp(logs); }

LogCoeffVector log_coefficients(const ExactPolynomial& p) {
  LogCoeffVector out;
  out.n = p.n;
  out.logs.resize(p.coeffs.size());
  for (size_t k = 0; k < p.coeffs.size(); ++k) {
    int s = sgn(p.coeffs[k]);
    if (s < 0) throw std::domain_error("negative coefficient at index " + std::to_string(k));
    out.logs[k] = s == 0 ? -kInf : log_abs(p.coeffs[k]);
  }
  return out;
}

LogCoeffVector log_coefficients(const FloatPolynomial& p) {
  LogCoeffVector out;
  out.n = p.n;
  out.logs.resize(p.coeffs.size());
  for (size_t k = 0; k < p.coeffs.size(); ++k) {
    const BigFloat& c = p.coeffs[k];
    if (c.sign() < 0) throw std::domain_error("negative coefficient at index " + std::to_string(k));
    out.logs[k] = c.is_zero() ? -kInf : log(c).to_double();
  }
  return out;
}

namespace {

ProfileGrid make_grid(const LogCoeffVector& c, double shift) {
  if (c.n <= 0) throw std::invalid_argument("empirical_profile: degree bound must be positive");
  ProfileGrid g;
  g.n_used = c.n;
  const double n = c.n;
  for (size_t k = 0; k < c.logs.size(); ++k) {
    g.alphas.push_back(static_cast<double>(k) / n);
    g.gvals.push_back(std::isfinite(c.logs[k]) ? (c.logs[k] - shift) / n : -kInf);
  }
  return g;
}

}  // namespace

ProfileGrid empirical_profile(const ExactPolynomial& p, Normalize normalize) {
  LogCoeffVector c = log_coefficients(p);
  double shift = 0.0;
  if (normalize == Normalize::by_P1) {
    Rational s = 0;
    for (const auto& q : p.coeffs) s += q;
    if (s == 0) throw std::domain_error("empirical_profile: P(1) = 0");
    shift = log_abs(s);
  }
  return make_grid(c, shift);
}

ProfileGrid empirical_profile(const LogCoeffVector& c, Normalize normalize) {
  double shift = normalize == Normalize::by_P1 ? c.log_sum() : 0.0;
  return make_grid(c, shift);
}

std::vector<double> ProfileGrid::derivative() const {
  std::vector<double> d;
  for (size_t k = 0; k + 1 < gvals.size(); ++k) {
    if (std::isfinite(gvals[k]) && std::isfinite(gvals[k + 1]))
      d.push_back((gvals[k + 1] - gvals[k]) / (alphas[k + 1] - alphas[k]));
    else
      d.push_back(kNaN);
  }
  return d;
}

bool ProfileGrid::discretely_concave() const {
  for (size_t k = 1; k + 1 < gvals.size(); ++k) {
    if (!std::isfinite(gvals[k - 1]) || !std::isfinite(gvals[k]) || !std::isfinite(gvals[k + 1])) continue;
    if (!(gvals[k + 1] - 2.0 * gvals[k] + gvals[k - 1] < 0.0)) return false;
  }
  return true;
}

double ClosedProfile::normalized(double alpha) const { return g(alpha) - sup_g; }
double ClosedProfile::eg_lo() const { return eg(lo + 1e-6); }
double ClosedProfile::eg_hi() const { return eg(hi - 1e-6); }

double w_stirling(double alpha) {
  check_alpha(alpha, "w_stirling");
  double hi = 1.0;
  while (stirling_fn(hi) > alpha) hi *= 2.0;
  return bisect(stirling_fn, alpha, 0.0, hi, false);
}

double w_touchard(double alpha) {
  check_alpha(alpha, "w_touchard");
  double hi = 1.0;
  while (touchard_fn(hi) > alpha) hi *= 2.0;
  return bisect(touchard_fn, alpha, 0.0, hi, false);
}

double w_eulerian(double alpha) {
  check_alpha(alpha, "w_eulerian");
  double r = 1.0;
  while (eulerian_fn(r) < alpha) r *= 2.0;
  while (eulerian_fn(-r) > alpha) r *= 2.0;
  return bisect(eulerian_fn, alpha, -r, r, true);
}

ClosedProfile hypergeometric_profile(const std::vector<double>& a, const std::vector<double>& b) {
  for (double v : a)
    if (v >= 0.0 && v < 1.0) throw std::domain_error("hypergeometric profile: a_s in [0,1)");
  for (double v : b)
    if (v >= 0.0 && v < 1.0) throw std::domain_error("hypergeometric profile: b_s in [0,1)");
  ClosedProfile p;
  p.id = "hypergeometric";
  for (size_t i = 0; i < a.size(); ++i) p.params["a" + std::to_string(i + 1)] = a[i];
  for (size_t i = 0; i < b.size(); ++i) p.params["b" + std::to_string(i + 1)] = b[i];
  p.eg = [a, b](double x) {
    double v = x / (1.0 - x);
    for (double bs : b) v *= bs - 1.0 + x;
    for (double as : a) v /= as - 1.0 + x;
    return v;
  };
  p.g = [a, b](double x) {
    double v = entropy(x);
    for (double as : a) v -= log_linear_integral(as, 1.0 - x);
    for (double bs : b) v += log_linear_integral(bs, 1.0 - x);
    return v;
  };
  finish(p);
  return p;
}

ClosedProfile gM_profile(double sigma2, double lambda) {
  if (!(sigma2 > 0.0) || !(lambda > 0.0)) throw std::domain_error("gM_profile: sigma2 and lambda must be positive");
  ClosedProfile p;
  p.id = "covariance";
  p.params = {{"sigma2", sigma2}, {"lambda", lambda}};
  const double lstar = std::max(1.0 - 1.0 / lambda, 0.0);
  p.lo = lstar;
  // alpha* from sigma2 lambda a^2 + (sigma2 (1 - lambda) + 1) a - 1 = 0
  const double A = sigma2 * lambda, B = sigma2 * (1.0 - lambda) + 1.0;
  const double disc = std::sqrt(B * B + 4.0 * A);
  const double astar = B > 0 ? 2.0 / (B + disc) : (disc - B) / (2.0 * A);
  if (!(astar > lstar && astar < 1.0)) throw std::logic_error("gM_profile: no root in (lambda*, 1)");
  const double logs = 0.5 * std::log(sigma2);
  const double C = std::log1p(-astar) / lambda - std::log(astar) / lambda + std::log(astar) - astar -
                   2.0 * (1.0 / lambda - 1.0) * logs;
  p.params["alpha_star"] = astar;
  p.params["C"] = C;
  p.eg = [=](double x) { return sigma2 * x * (lambda * x + 1.0 - lambda) / (1.0 - x); };
  p.g = [=](double x) {
    double arg = lambda * x + 1.0 - lambda;
    double coef = -x + 1.0 - 1.0 / lambda;
    double mid = (coef == 0.0 || arg <= 0.0) ? 0.0 : coef * std::log(arg);
    return -2.0 * x * logs + mid + x + entropy(x) + C;
  };
  finish(p);
  return p;
}

std::vector<std::string> closed_profile_names() {
  return {"stirling", "touchard", "fubini",     "eulerian", "narayana",   "laguerre",
          "hermite",  "legendre", "gegenbauer", "jacobi",   "q_laguerre", "covariance"};
}

ClosedProfile closed_profile(const std::string& family, const std::map<std::string, double>& params) {
  const std::string who = "closed_profile(" + family + ")";
  ClosedProfile p;
  p.id = family;
  p.params = params;
  if (family == "stirling") {
    only_keys(params, {}, who);
    p.eg = [](double x) { return x / w_stirling(x); };
    p.g = [](double x) {
      double w = w_stirling(x);
      return -1.0 + x + (1.0 - x) * std::log(x) + w + (x - 1.0) * std::log(w);
    };
  } else if (family == "touchard") {
    only_keys(params, {}, who);
    p.eg = [](double x) {
      double w = w_touchard(x);
      return std::exp(-w) / w;
    };
    p.g = [](double x) {
      double w = w_touchard(x);
      return x * std::log(std::expm1(w)) - std::log(w) + x - 1.0 - x * std::log(x);
    };
  } else if (family == "fubini") {
    only_keys(params, {}, who);
    p.eg = [](double x) { return 1.0 / std::expm1(w_touchard(x)); };
    p.g = [](double x) {
      double w = w_touchard(x);
      return x * std::log(std::expm1(w)) - std::log(w);
    };
  } else if (family == "eulerian") {
    only_keys(params, {}, who);
    p.eg = [](double x) { return std::exp(w_eulerian(x)); };
    p.g = [](double x) {
      double w = w_eulerian(x);
      return -x * w + (w == 0.0 ? 0.0 : std::log(std::expm1(w) / w));
    };
  } else if (family == "narayana") {
    only_keys(params, {"gamma"}, who);
    double gamma = param(params, "gamma", who);
    if (!(gamma >= 1.0)) throw std::domain_error(who + ": gamma must be at least 1");
    p.eg = [gamma](double x) { return std::pow(x / (1.0 - x), gamma); };
    p.g = [gamma](double x) { return gamma * entropy(x); };
  } else if (family == "laguerre" || family == "hermite") {
    double gamma = 0.0;
    if (family == "laguerre") {
      only_keys(params, {"gamma"}, who);
      gamma = param(params, "gamma", who);
    } else {
      only_keys(params, {}, who);
    }
    if (!(gamma >= 0.0)) throw std::domain_error(who + ": gamma must be nonnegative");
    ClosedProfile h = hypergeometric_profile({}, {1.0 + gamma});
    auto hg = h.g;
    p.eg = h.eg;
    // L_n^{(gamma n)}(-n x) = (n^n / n!) H_n(x)
    p.g = [hg](double x) { return hg(x) + 1.0; };
  } else if (family == "legendre" || family == "gegenbauer" || family == "jacobi") {
    double u = 0.0, v = 0.0;
    if (family == "gegenbauer") {
      only_keys(params, {"gamma"}, who);
      double gamma = param(params, "gamma", who);
      if (!(gamma >= 0.5)) throw std::domain_error(who + ": gamma must be at least 1/2");
      u = v = gamma - 0.5;
    } else if (family == "jacobi") {
      only_keys(params, {"u", "v"}, who);
      u = param(params, "u", who);
      v = param(params, "v", who);
      if (!(u >= 0.0 && v >= 0.0)) throw std::domain_error(who + ": u, v must be nonnegative");
    } else {
      only_keys(params, {}, who);
    }
    ClosedProfile h = hypergeometric_profile({2.0 + u + v}, {1.0 + u});
    p.eg = h.eg;
    p.g = h.g;
  } else if (family == "q_laguerre") {
    only_keys(params, {"a", "lambda"}, who);
    double a = param(params, "a", who), lam = param(params, "lambda", who);
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error(who + ": a must lie in [0, 1]");
    if (!(lam > 0.0)) throw std::domain_error(who + ": lambda must be positive");
    auto one_minus_ae = [a, lam](double x) { return a == 1.0 ? -std::expm1(-lam * x) : 1.0 - a * std::exp(-lam * x); };
    p.eg = [=](double x) { return one_minus_ae(x) * -std::expm1(-lam * x) / std::expm1(lam * (1.0 - x)); };
    p.g = [=](double x) {
      // smooth remainder after taking out log(lam (1-x)) and log(lam x) (twice when a = 1)
      auto rel = [](double y) { return y == 0.0 ? 1.0 : std::expm1(y) / y; };
      auto smooth = [=](double s) {
        double v = std::log(rel(lam * (1.0 - s))) - std::log(rel(-lam * s));
        v -= a == 1.0 ? std::log(rel(-lam * s)) : std::log(one_minus_ae(s));
        return v;
      };
      double I = x > 0.0 ? boost::math::quadrature::gauss_kronrod<double, 31>::integrate(smooth, 0.0, x, 12, 1e-14) : 0.0;
      double lx = x > 0.0 ? x * std::log(lam * x) - x : 0.0;
      double one = x < 1.0 ? -(1.0 - x) * std::log(lam * (1.0 - x)) + (1.0 - x) : 0.0;
      double l1 = one + std::log(lam) - 1.0;
      return I + l1 - lx * (a == 1.0 ? 2.0 : 1.0);
    };
  } else if (family == "covariance") {
    only_keys(params, {"sigma2", "lambda"}, who);
    return gM_profile(param(params, "sigma2", who), param(params, "lambda", who));
  } else {
    throw std::invalid_argument("closed_profile: unknown family " + family);
  }
  finish(p);
  return p;
}

Inversion invert_profile_to_tG(const std::function<double(double)>& eg, double t, double lo, double hi) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("invert_profile_to_tG: t must be positive");
  Inversion out;
  const double tol = 1e-12 * (1.0 + t);
  double a = lo, b = hi;
  double x = 0.5 * (a + b);
  for (int it = 0; it < 2000; ++it) {
    x = 0.5 * (a + b);
    if (x <= a || x >= b) break;
    double v = eg(x);
    if (v == t) {
      a = b = x;
      break;
    }
    if (v < t)
      a = x;
    else
      b = x;
  }
  auto resid = [&](double y) { return (y > lo && y < hi) ? std::fabs(eg(y) - t) : kInf; };
  double best = x, rbest = resid(x);
  for (double y : {a, b}) {
    double r = resid(y);
    if (r < rbest) best = y, rbest = r;
  }
  // Newton polish with a central-difference slope
  for (int it = 0; it < 3 && rbest > tol; ++it) {
    double h = 1e-7 * std::max(std::min(best - lo, hi - best), 1e-300);
    double d = (eg(best + h) - eg(best - h)) / (2.0 * h);
    if (!(d > 0.0) || !std::isfinite(d)) break;
    double y = best - (eg(best) - t) / d;
    double r = resid(y);
    if (!(r < rbest)) break;
    best = y;
    rbest = r;
  }
  out.alpha = best;
  out.residual = rbest;
  if (rbest > tol) {
    if (best - lo < 1e-6) {
      out.atom = AtomSide::zero;
      out.alpha = lo;
    } else if (hi - best < 1e-6) {
      out.atom = AtomSide::infinity;
      out.alpha = hi;
    }
  }
  out.G = out.alpha / t;
  return out;
}

Inversion invert_profile_to_tG(const ClosedProfile& profile, double t) {
  return invert_profile_to_tG(profile.eg, t, profile.lo, profile.hi);
}

ZeroProfileReport verify_zero_to_profile(const std::vector<LogCoeffVector>& polys, const ClosedProfile* profile,
                                         double eps, const std::vector<roots::EmpiricalMeasure>& measures) {
  ZeroProfileReport rep;
  rep.eps = eps;
  if (!measures.empty()) {
    rep.lo = measures.back().mass_at_zero();
    rep.hi = 1.0 - measures.back().mass_at_infinity;
  } else if (profile) {
    rep.lo = profile->lo;
    rep.hi = profile->hi;
  }
  rep.void_case = rep.hi - rep.lo <= 1e-12;
  for (const auto& c : polys) {
    ZeroProfileRow row;
    row.n = c.n;
    row.outside_max = -kInf;
    const double L = c.log_sum();
    const double n = c.n;
    for (size_t k = 0; k < c.logs.size(); ++k) {
      const double alpha = static_cast<double>(k) / n;
      const double v = std::isfinite(c.logs[k]) ? (c.logs[k] - L) / n : -kInf;
      if (alpha <= rep.lo - eps || alpha >= rep.hi + eps) {
        row.outside_max = std::max(row.outside_max, v);
      } else if (!rep.void_case && profile && alpha >= rep.lo + eps && alpha <= rep.hi - eps) {
        double dev = std::fabs(v - profile->normalized(alpha));
        row.sup_deviation = std::max(row.sup_deviation, std::isnan(dev) ? kInf : dev);
        ++row.points;
      }
    }
    rep.rows.push_back(row);
  }
  rep.decreasing = !rep.void_case && rep.rows.size() >= 2;
  for (size_t i = 1; i < rep.rows.size(); ++i)
    rep.decreasing = rep.decreasing && rep.rows[i].sup_deviation < rep.rows[i - 1].sup_deviation;
  return rep;
}

LegendreReport legendre_check(const ClosedProfile& profile, const limitlaws::LimitLaw& law,
                              const std::vector<double>& alphas) {
  LegendreReport rep;
  for (double alpha : alphas) {
    auto phi = [&](double u) { return limitlaws::normalized_log_potential(law, std::exp(u)) - alpha * u; };
    // coarse scan, then golden section around the smallest sample
    const double lo = -40.0, hi = 40.0, step = 0.5;
    int best = 0;
    std::vector<double> vals;
    for (double u = lo; u <= hi + 1e-12; u += step) vals.push_back(phi(u));
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i] < vals[static_cast<size_t>(best)]) best = static_cast<int>(i);
    if (best == 0 || best + 1 == static_cast<int>(vals.size())) rep.unbounded = true;
    double a = lo + step * (best - 1), b = lo + step * (best + 1);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = phi(c), fd = phi(d);
    while (b - a > 1e-9) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = phi(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = phi(d);
      }
    }
    LegendreRow row;
    row.alpha = alpha;
    row.u_star = 0.5 * (a + b);
    row.infimum = phi(row.u_star);
    row.g_minus_sup = profile.normalized(alpha);
    row.deviation = std::fabs(row.infimum - row.g_minus_sup);
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace zeroprof::profiles
