#pragma once

#include <functional>
#include <vector>

namespace zeroprof::quadrature {

/// Behaviour of an integrand at a breakpoint, selecting the substitution used next to it.
enum class Edge { regular, sqrt, log };

struct Breakpoint {
  double x;
  Edge kind = Edge::regular;
};

struct Options {
  double rel_tol = 1e-12;
  unsigned max_depth = 15;
};

using Integrand = std::function<double(double)>;

/**
 * Integrand with an optional log-scale view near edges and infinite tails:
 * scaled(c, dir, log_d) = d * f(c + dir * d) with d = exp(log_d). Supplying it keeps
 * mass that sits closer to an edge than double spacing (or beyond the largest double).
 */
struct EdgeIntegrand {
  Integrand at;
  std::function<double(double c, int dir, double log_d)> scaled;
};

/// Integral over [a, b]; either endpoint may be infinite.
double integrate(const Integrand& f, double a, double b, Edge left = Edge::regular,
                 Edge right = Edge::regular, const Options& opts = {});
double integrate(const EdgeIntegrand& f, double a, double b, Edge left = Edge::regular,
                 Edge right = Edge::regular, const Options& opts = {});

/// Sum of integrals over consecutive breakpoints (sorted, endpoints included).
double integrate_piecewise(const Integrand& f, std::vector<Breakpoint> points,
                           const Options& opts = {});
double integrate_piecewise(const EdgeIntegrand& f, std::vector<Breakpoint> points,
                           const Options& opts = {});

}  // namespace zeroprof::quadrature
