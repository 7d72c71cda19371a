#include "zeroprof/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zeroprof::quadrature {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr double kInf = std::numeric_limits<double>::infinity();

double gk(const Integrand& f, double a, double b, const Options& o) {
  if (a == b) return 0.0;
  return GK::integrate(f, a, b, o.max_depth, o.rel_tol);
}

double scaled_value(const EdgeIntegrand& f, double c, int dir, double log_d) {
  if (f.scaled) return f.scaled(c, dir, log_d);
  double d = std::exp(log_d);
  if (d == 0.0 || !std::isfinite(d)) return 0.0;
  double x = c + dir * d;
  if (x == c) return 0.0;
  double v = f.at(x);
  return v == 0.0 ? 0.0 : d * v;
}

// [c, c +- inf) through x = c +- (e^s - 1).
double tail(const EdgeIntegrand& f, double c, int dir, const Options& o) {
  auto g = [&](double s) {
    if (s < 1.0) {
      double v = f.at(c + dir * std::expm1(s));
      return v == 0.0 ? 0.0 : std::exp(s) * v;
    }
    double log_d = s + std::log1p(-std::exp(-s));
    return scaled_value(f, c, dir, log_d) / (-std::expm1(-s));
  };
  return gk(g, 0.0, kInf, o);
}

// One special edge at `c`, the segment extends a distance `len` towards `dir`.
double edge_segment(const EdgeIntegrand& f, double c, double len, int dir, Edge kind, const Options& o) {
  switch (kind) {
    case Edge::regular:
      return dir > 0 ? gk(f.at, c, c + len, o) : gk(f.at, c - len, c, o);
    case Edge::sqrt: {
      auto g = [&](double u) {
        double v = f.at(c + dir * u * u);
        return v == 0.0 ? 0.0 : 2.0 * u * v;
      };
      return gk(g, 0.0, std::sqrt(len), o);
    }
    case Edge::log: {
      const double log_len = std::log(len);
      auto g = [&](double s) { return scaled_value(f, c, dir, log_len - s); };
      return gk(g, 0.0, kInf, o);
    }
  }
  return 0.0;
}
}  // namespace

double integrate(const EdgeIntegrand& f, double a, double b, Edge left, Edge right, const Options& opts) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate: NaN limit");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, right, left, opts);
  if (std::isinf(a) && std::isinf(b)) {
    return integrate(f, a, 0.0, Edge::regular, Edge::regular, opts) +
           integrate(f, 0.0, b, Edge::regular, Edge::regular, opts);
  }
  if (std::isinf(b)) {
    if (left == Edge::regular) return tail(f, a, +1, opts);
    double mid = a + std::max(1.0, std::fabs(a));
    return edge_segment(f, a, mid - a, +1, left, opts) + tail(f, mid, +1, opts);
  }
  if (std::isinf(a)) {
    if (right == Edge::regular) return tail(f, b, -1, opts);
    double mid = b - std::max(1.0, std::fabs(b));
    return tail(f, mid, -1, opts) + edge_segment(f, b, b - mid, -1, right, opts);
  }
  if (left == Edge::regular && right == Edge::regular) return gk(f.at, a, b, opts);
  if (right == Edge::regular) return edge_segment(f, a, b - a, +1, left, opts);
  if (left == Edge::regular) return edge_segment(f, b, b - a, -1, right, opts);
  double mid = 0.5 * (a + b);
  return edge_segment(f, a, mid - a, +1, left, opts) + edge_segment(f, b, b - mid, -1, right, opts);
}

double integrate(const Integrand& f, double a, double b, Edge left, Edge right, const Options& opts) {
  return integrate(EdgeIntegrand{f, {}}, a, b, left, right, opts);
}

double integrate_piecewise(const EdgeIntegrand& f, std::vector<Breakpoint> points, const Options& opts) {
  std::sort(points.begin(), points.end(), [](const Breakpoint& l, const Breakpoint& r) { return l.x < r.x; });
  double total = 0.0;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].x == points[i + 1].x) continue;
    total += integrate(f, points[i].x, points[i + 1].x, points[i].kind, points[i + 1].kind, opts);
  }
  return total;
}

double integrate_piecewise(const Integrand& f, std::vector<Breakpoint> points, const Options& opts) {
  return integrate_piecewise(EdgeIntegrand{f, {}}, std::move(points), opts);
}

}  // namespace zeroprof::quadrature
