#include "zeroprof/limitlaws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "zeroprof/families.hpp"
#include "zeroprof/specialfn.hpp"

namespace zeroprof::limitlaws {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
using quadrature::Breakpoint;
using quadrature::Edge;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double atoms_mass(const LimitLaw& law) {
  double m = 0.0;
  for (const auto& a : law.atoms()) m += a.mass;
  return m;
}

class Uniform final : public LimitLaw {
 public:
  std::string id() const override { return "uniform"; }
  Support support() const override { return {-1.0, 0.0}; }
  double density(double x) const override { return (x >= -1.0 && x <= 0.0) ? 1.0 : 0.0; }
  Complex cauchy_closed(Complex t) const override { return std::log((t + 1.0) / t); }
  std::optional<double> cdf_closed(double x) const override { return std::clamp(x + 1.0, 0.0, 1.0); }
  std::optional<Complex> potential_closed(Complex t) const override {
    auto xlogx = [](Complex z) { return std::abs(z) == 0.0 ? Complex(0.0) : z * std::log(z); };
    if (std::abs(t) < 1e4) return xlogx(t + 1.0) - xlogx(t) - 1.0;
    // t log(1 + 1/t) by its series, the direct difference cancels
    Complex r = 1.0 / t, tail = 0.0, p = 1.0;
    for (int k = 1; k <= 6; ++k, p *= -r) tail += p / static_cast<double>(k);
    return std::log(t + 1.0) + tail - 1.0;
  }
  std::optional<double> moment_closed(int k) const override { return ((k % 2) ? -1.0 : 1.0) / (k + 1.0); }
};

class Touchard final : public LimitLaw {
 public:
  std::string id() const override { return "touchard"; }
  Support support() const override { return {-std::numbers::e, 0.0}; }
  double density(double x) const override {
    if (!(x > -std::numbers::e && x < 0.0)) return 0.0;
    // (1/pi) Im e^{W} with e^W = z / W, z = 1/x
    Complex w = specialfn::lambert_w0_cut_log(-std::log(-x), specialfn::CutSide::upper);
    return w.imag() / (kPi * -x * std::norm(w));
  }
  double scaled_density(double c, int dir, double log_d) const override {
    if (c != 0.0 || dir > 0) return LimitLaw::scaled_density(c, dir, log_d);
    Complex w = specialfn::lambert_w0_cut_log(-log_d, specialfn::CutSide::upper);
    return w.imag() / (kPi * std::norm(w));
  }
  Complex cauchy_closed(Complex t) const override {
    return std::exp(specialfn::lambert_w0_complex(1.0 / t)) - 1.0;
  }
  std::optional<double> cdf_closed(double x) const override {
    if (x <= -std::numbers::e) return 0.0;
    if (x >= 0.0) return 1.0;
    Complex w = specialfn::lambert_w0_cut_log(-std::log(-x), specialfn::CutSide::upper);
    return w.imag() / kPi * (1.0 - 1.0 / std::norm(w));
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    Complex w = specialfn::lambert_w0_complex(1.0 / t);
    return 1.0 / w + w - t - 1.0 + std::log(t);
  }
  std::optional<double> moment_closed(int k) const override {
    if (k == 0) return 1.0;
    double mag = std::exp(k * std::log(static_cast<double>(k)) - std::lgamma(k + 2.0));
    return (k % 2) ? -mag : mag;
  }
  std::vector<Breakpoint> breakpoints() const override {
    return {{-std::numbers::e, Edge::sqrt}, {0.0, Edge::log}};
  }
};

class Fubini final : public LimitLaw {
 public:
  std::string id() const override { return "fubini"; }
  Support support() const override { return {-1.0, 0.0}; }
  double density(double x) const override {
    if (!(x > -1.0 && x < 0.0)) return 0.0;
    double l = std::log(std::fabs(1.0 + 1.0 / x));
    return 1.0 / (std::fabs(x) * (x + 1.0) * (kPi * kPi + l * l));
  }
  double scaled_density(double c, int dir, double log_d) const override {
    // both edges: d p = 1 / ((1-d)(pi^2 + (log d - log(1-d))^2)), by the symmetry x -> -1-x
    if (!((c == 0.0 && dir < 0) || (c == -1.0 && dir > 0))) return LimitLaw::scaled_density(c, dir, log_d);
    double d = std::exp(log_d);
    if (!(d < 1.0)) return 0.0;
    double l = log_d - std::log1p(-d);
    return 1.0 / ((1.0 - d) * (kPi * kPi + l * l));
  }
  Complex cauchy_closed(Complex t) const override {
    return 1.0 / (t * (t + 1.0) * std::log(1.0 + 1.0 / t));
  }
  std::optional<double> cdf_closed(double x) const override {
    if (x <= -1.0) return 0.0;
    if (x >= 0.0) return 1.0;
    return 0.5 + std::atan(std::log(std::fabs(1.0 + 1.0 / x)) / kPi) / kPi;
  }
  std::optional<double> cdf_edge_closed(double c, int dir, double log_d) const override {
    if (!((c == 0.0 && dir < 0) || (c == -1.0 && dir > 0))) return std::nullopt;
    double d = std::exp(log_d);
    if (!(d < 1.0)) return std::nullopt;
    // log|1 + 1/x| is log d - log(1-d) next to -1 and its negative next to 0
    double l = (c == -1.0 ? 1.0 : -1.0) * (log_d - std::log1p(-d));
    return 0.5 + std::atan(l / kPi) / kPi;
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    return -std::log(std::log(1.0 + 1.0 / t));
  }
  std::optional<double> moment_closed(int k) const override {
    // (-1)^k C_k / k! with C_k the integral over [0,1] of the rising factorial
    auto row = families::stirling1_row(k);
    Rational c = 0;
    for (int j = 0; j <= k; ++j) c += Rational(row[static_cast<size_t>(j)], Integer(j + 1));
    c /= Rational(factorial(static_cast<unsigned long>(k)));
    c.canonicalize();
    double v = c.get_d();
    return (k % 2) ? -v : v;
  }
  std::vector<Breakpoint> breakpoints() const override { return {{-1.0, Edge::log}, {0.0, Edge::log}}; }
};

class Eulerian final : public LimitLaw {
 public:
  std::string id() const override { return "eulerian"; }
  Support support() const override { return {-kInf, 0.0}; }
  double density(double x) const override {
    if (!(x < 0.0)) return 0.0;
    double l = std::log(-x);
    return 1.0 / (-x * (kPi * kPi + l * l));
  }
  double scaled_density(double c, int dir, double log_d) const override {
    if (dir > 0) return LimitLaw::scaled_density(c, dir, log_d);
    if (c == 0.0) return 1.0 / (kPi * kPi + log_d * log_d);
    // x = c - d with c < 0: |x| p = 1 / (pi^2 + log^2|x|), times d / |x|
    double log_ax = log_d > 40.0 ? log_d + std::log1p(-c * std::exp(-log_d)) : std::log(-c + std::exp(log_d));
    double ratio = std::exp(log_d - log_ax);
    return ratio / (kPi * kPi + log_ax * log_ax);
  }
  Complex cauchy_closed(Complex t) const override { return 1.0 / (t - 1.0) - 1.0 / (t * std::log(t)); }
  std::optional<double> cdf_closed(double x) const override {
    if (x >= 0.0) return 1.0;
    if (x == -kInf) return 0.0;
    return 0.5 - std::atan(std::log(-x) / kPi) / kPi;
  }
  std::optional<double> psi_closed(double t) const override {
    if (t == 1.0) return 0.0;
    return std::log(std::fabs((t - 1.0) / std::log(t)));
  }
  bool infinite_potential() const override { return true; }
  int max_finite_moment() const override { return 0; }
  std::vector<Breakpoint> breakpoints() const override {
    return {{-kInf, Edge::regular}, {-1.0, Edge::regular}, {0.0, Edge::log}};
  }
};

class Narayana final : public LimitLaw {
 public:
  explicit Narayana(double gamma) : g_(gamma) {
    require(gamma >= 2.0, "law_narayana: requires real gamma >= 2");
    params_["gamma"] = gamma;
  }
  std::string id() const override { return "narayana"; }
  Support support() const override { return {-kInf, 0.0}; }
  double density(double x) const override {
    if (!(x < 0.0)) return 0.0;
    double ax = -x, th = kPi / g_;
    double r = std::pow(ax, 1.0 / g_);
    return std::sin(th) / (kPi * ax * (1.0 / r + 2.0 * std::cos(th) + r));
  }
  double scaled_density(double c, int dir, double log_d) const override {
    if (c != 0.0 || dir > 0) return LimitLaw::scaled_density(c, dir, log_d);
    double th = kPi / g_, r = std::exp(log_d / g_);
    return std::sin(th) / (kPi * (1.0 / r + 2.0 * std::cos(th) + r));
  }
  Complex cauchy_closed(Complex t) const override {
    return 1.0 / (t * (std::exp(-std::log(t) / g_) + 1.0));
  }
  std::optional<double> cdf_closed(double x) const override {
    if (x >= 0.0) return 1.0;
    if (x == -kInf) return 0.0;
    double y = std::pow(-x, 1.0 / g_), th = kPi / g_;
    double tail = g_ / kPi * (kPi / 2.0 - std::atan((y + std::cos(th)) / std::sin(th)));
    return tail;
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    return g_ * std::log(1.0 + std::exp(std::log(t) / g_));
  }
  int max_finite_moment() const override { return 0; }
  std::vector<Breakpoint> breakpoints() const override {
    return {{-kInf, Edge::regular}, {-1.0, Edge::regular}, {0.0, Edge::log}};
  }

 private:
  double g_;
};

class MarchenkoPastur final : public LimitLaw {
 public:
  MarchenkoPastur(double sigma2, double lambda) : s2_(sigma2), lam_(lambda) {
    require(sigma2 > 0.0, "law_mp: requires sigma2 > 0");
    require(lambda > 0.0, "law_mp: requires lambda > 0");
    params_["sigma2"] = sigma2;
    params_["lambda"] = lambda;
    double r = std::sqrt(lambda);
    lo_ = sigma2 * (1.0 - r) * (1.0 - r);
    hi_ = sigma2 * (1.0 + r) * (1.0 + r);
    atom_ = std::max(1.0 - 1.0 / lambda, 0.0);
  }
  std::string id() const override { return "mp"; }
  Support support() const override { return {lo_, hi_}; }
  std::vector<Atom> atoms() const override {
    if (atom_ > 0.0) return {{0.0, atom_}};
    return {};
  }
  double density(double x) const override {
    if (!(x > lo_ && x < hi_)) return 0.0;
    return std::sqrt((hi_ - x) * (x - lo_)) / (2.0 * kPi * s2_ * lam_ * x);
  }
  Complex cauchy_closed(Complex t) const override {
    return (t - s2_ * (1.0 - lam_) - sqrt_branch(t, lo_, hi_)) / (2.0 * s2_ * lam_ * t);
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    Complex g = cauchy_closed(t);
    return t * g - std::log(g) + std::log(1.0 - s2_ * lam_ * g) / lam_ - 1.0;
  }
  std::vector<Breakpoint> breakpoints() const override { return {{lo_, Edge::sqrt}, {hi_, Edge::sqrt}}; }

 private:
  double s2_, lam_, lo_, hi_, atom_;
};

class Semicircle final : public LimitLaw {
 public:
  std::string id() const override { return "semicircle"; }
  Support support() const override { return {-2.0, 2.0}; }
  double density(double x) const override {
    if (!(x > -2.0 && x < 2.0)) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * kPi);
  }
  Complex cauchy_closed(Complex t) const override { return 0.5 * (t - sqrt_branch(t, -2.0, 2.0)); }
  std::optional<double> cdf_closed(double x) const override {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(x / 2.0) / kPi;
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    Complex s = sqrt_branch(t, -2.0, 2.0);
    return 0.25 * (t * t - t * s) + std::log((t + s) / 2.0) - 0.5;
  }
  std::vector<Breakpoint> breakpoints() const override { return {{-2.0, Edge::sqrt}, {2.0, Edge::sqrt}}; }
};

class Arcsine final : public LimitLaw {
 public:
  std::string id() const override { return "arcsine"; }
  Support support() const override { return {-1.0, 1.0}; }
  double density(double x) const override {
    if (!(x > -1.0 && x < 1.0)) return 0.0;
    return 1.0 / (kPi * std::sqrt((1.0 - x) * (1.0 + x)));
  }
  Complex cauchy_closed(Complex t) const override { return 1.0 / sqrt_branch(t, -1.0, 1.0); }
  std::optional<double> cdf_closed(double x) const override {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 0.5 + std::asin(x) / kPi;
  }
  std::optional<Complex> potential_closed(Complex t) const override {
    return std::log((t + sqrt_branch(t, -1.0, 1.0)) / 2.0);
  }
  std::vector<Breakpoint> breakpoints() const override { return {{-1.0, Edge::sqrt}, {1.0, Edge::sqrt}}; }
};

class Jacobi final : public LimitLaw {
 public:
  Jacobi(double u, double v, std::string name) : u_(u), v_(v), name_(std::move(name)) {
    require(u >= 0.0 && v >= 0.0, "law_jacobi: requires limiting ratios u, v >= 0");
    params_["u"] = u;
    params_["v"] = v;
    k_ = (u + v + 2.0) * (u + v + 2.0);
    // K t^2 + 2(u+v)(u-v) t + (u-v)^2 - 4(1+u+v) = 0
    double b = 2.0 * (u + v) * (u - v), c = (u - v) * (u - v) - 4.0 * (1.0 + u + v);
    double disc = std::sqrt(b * b - 4.0 * k_ * c);
    double q = -0.5 * (b + (b >= 0 ? disc : -disc));
    double r1 = q / k_, r2 = c / q;
    lo_ = std::max(-1.0, std::min(r1, r2));
    hi_ = std::min(1.0, std::max(r1, r2));
  }
  std::string id() const override { return name_; }
  Support support() const override { return {lo_, hi_}; }
  double density(double x) const override {
    if (!(x > lo_ && x < hi_)) return 0.0;
    if (u_ == 0.0 && v_ == 0.0) return 1.0 / (kPi * std::sqrt((1.0 - x) * (1.0 + x)));
    return std::sqrt(k_ * (x - lo_) * (hi_ - x)) / (2.0 * kPi * (1.0 - x * x));
  }
  Complex cauchy_closed(Complex t) const override {
    // [-B + sqrt(D)] / (2(t^2-1)) rationalized to 2(1+u+v) / (B + sqrt(D))
    Complex bb = t * (u_ + v_) + (u_ - v_);
    Complex sd = std::sqrt(k_) * sqrt_branch(t, lo_, hi_);
    return 2.0 * (1.0 + u_ + v_) / (bb + sd);
  }
  std::vector<Breakpoint> breakpoints() const override { return {{lo_, Edge::sqrt}, {hi_, Edge::sqrt}}; }

 private:
  double u_, v_, k_, lo_, hi_;
  std::string name_;
};

class QLaguerre final : public LimitLaw {
 public:
  QLaguerre(double a, double lambda) : a_(a), lam_(lambda) {
    require(a >= 0.0 && a <= 1.0, "law_q_laguerre: requires 0 <= a <= 1");
    require(lambda > 0.0, "law_q_laguerre: requires lambda > 0");
    params_["a"] = a;
    params_["lambda"] = lambda;
    double em = std::exp(-lambda);
    double r1 = std::sqrt(1.0 - a * em), r2 = std::sqrt(a * (-std::expm1(-lambda)));
    tm_ = em * (r1 - r2) * (r1 - r2);
    tp_ = std::min(1.0, em * (r1 + r2) * (r1 + r2));
    plateau_ = lambda > std::log1p(a);
  }
  std::string id() const override { return "q_laguerre"; }
  Support support() const override { return {tm_, plateau_ ? 1.0 : tp_}; }
  double t_minus() const { return tm_; }
  double t_plus() const { return tp_; }
  double density(double x) const override {
    if (plateau_ && x >= tp_ && x <= 1.0) return 1.0 / (lam_ * x);
    if (!(x > tm_ && x < tp_)) return 0.0;
    double el = std::exp(lam_);
    double re = a_ + 1.0 - el * x, im = el * std::sqrt((x - tm_) * (tp_ - x));
    return std::atan2(im, re) / (lam_ * kPi * x);
  }
  Complex cauchy_closed(Complex t) const override {
    double el = std::exp(lam_);
    Complex big_a = a_ + 1.0 - el * t;
    Complex s = el * sqrt_branch(t, tm_, tp_);
    return -std::log(2.0 * (1.0 - t) / (big_a - s)) / (lam_ * t);
  }
  std::optional<double> cdf_closed(double x) const override {
    if (!plateau_ || x < tp_) return std::nullopt;
    double inner = 1.0 - std::log(1.0 / tp_) / lam_;
    return inner + std::log(std::min(x, 1.0) / tp_) / lam_;
  }
  std::vector<Breakpoint> breakpoints() const override {
    std::vector<Breakpoint> pts{{tm_, Edge::sqrt}, {tp_, Edge::sqrt}};
    if (plateau_) pts.push_back({1.0, Edge::regular});
    return pts;
  }

 private:
  double a_, lam_, tm_, tp_;
  bool plateau_;
};

class Reflected final : public LimitLaw {
 public:
  explicit Reflected(LawPtr inner) : inner_(std::move(inner)) { params_ = inner_->params(); }
  std::string id() const override { return inner_->id() + "_reflected"; }
  Support support() const override {
    auto s = inner_->support();
    return {-s.hi, -s.lo};
  }
  std::vector<Atom> atoms() const override {
    auto a = inner_->atoms();
    for (auto& at : a) at.x = -at.x;
    return a;
  }
  double density(double x) const override { return inner_->density(-x); }
  bool has_closed_cauchy() const override { return inner_->has_closed_cauchy(); }
  Complex cauchy_closed(Complex t) const override { return -inner_->cauchy_closed(-t); }
  std::optional<double> cdf_closed(double x) const override {
    // mass of the continuous part on (-inf, x] equals inner mass on [-x, inf)
    auto c = inner_->cdf_closed(-x);
    if (!c) return std::nullopt;
    return 1.0 - atoms_mass(*inner_) - *c;
  }
  std::optional<Complex> potential_closed(Complex t) const override { return inner_->potential_closed(-t); }
  bool infinite_potential() const override { return inner_->infinite_potential(); }
  std::optional<double> moment_closed(int k) const override {
    auto m = inner_->moment_closed(k);
    if (!m) return std::nullopt;
    return (k % 2) ? -*m : *m;
  }
  int max_finite_moment() const override { return inner_->max_finite_moment(); }
  std::vector<Breakpoint> breakpoints() const override {
    auto b = inner_->breakpoints();
    for (auto& p : b) p.x = -p.x;
    std::reverse(b.begin(), b.end());
    return b;
  }

 private:
  LawPtr inner_;
};

quadrature::EdgeIntegrand weighted(const LimitLaw& law, std::function<double(double)> f = {}) {
  quadrature::EdgeIntegrand e;
  e.at = [&law, f](double x) {
    double p = law.density(x);
    if (p == 0.0) return 0.0;
    return f ? p * f(x) : p;
  };
  e.scaled = [&law, f](double c, int dir, double log_d) {
    double v = law.scaled_density(c, dir, log_d);
    if (v == 0.0) return 0.0;
    if (!f) return v;
    double x = c + dir * std::exp(log_d);
    if (!std::isfinite(x)) return 0.0;
    return v * f(x);
  };
  return e;
}

// Breakpoints restricted to [lo, hi], with the cut points added as regular edges.
std::vector<Breakpoint> clipped(const LimitLaw& law, double lo, double hi) {
  std::vector<Breakpoint> out;
  auto pts = law.breakpoints();
  auto find_kind = [&](double x) {
    for (const auto& p : pts)
      if (p.x == x) return p.kind;
    return Edge::regular;
  };
  out.push_back({lo, find_kind(lo)});
  for (const auto& p : pts)
    if (p.x > lo && p.x < hi) out.push_back(p);
  out.push_back({hi, find_kind(hi)});
  return out;
}

// Breakpoints with additional logarithmic singular points inside the support.
std::vector<Breakpoint> with_log_points(const LimitLaw& law, std::initializer_list<double> xs) {
  auto pts = law.breakpoints();
  auto s = law.support();
  for (double x : xs) {
    if (!(x > s.lo && x < s.hi)) continue;
    bool found = false;
    for (auto& p : pts)
      if (p.x == x) {
        found = true;
        if (p.kind == Edge::regular) p.kind = Edge::log;
      }
    if (!found) pts.push_back({x, Edge::log});
  }
  return pts;
}
}  // namespace

Complex sqrt_branch(Complex t, double a, double b) { return std::sqrt(t - a) * std::sqrt(t - b); }

double LimitLaw::atom_at_zero() const {
  double m = 0.0;
  for (const auto& a : atoms())
    if (a.x == 0.0) m += a.mass;
  return m;
}

double LimitLaw::atom_at_infinity() const {
  double m = 0.0;
  for (const auto& a : atoms())
    if (std::isinf(a.x)) m += a.mass;
  return m;
}

double LimitLaw::scaled_density(double c, int dir, double log_d) const {
  double d = std::exp(log_d);
  if (d == 0.0 || !std::isfinite(d)) return 0.0;
  double x = c + dir * d;
  if (x == c) return 0.0;
  double p = density(x);
  return p == 0.0 ? 0.0 : d * p;
}

Complex LimitLaw::cauchy_closed(Complex t) const { return cauchy_transform_quadrature(*this, t); }

std::vector<Breakpoint> LimitLaw::breakpoints() const {
  auto s = support();
  return {{s.lo, Edge::sqrt}, {s.hi, Edge::sqrt}};
}

LawPtr law_uniform_stirling() { return std::make_shared<Uniform>(); }
LawPtr law_touchard() { return std::make_shared<Touchard>(); }
LawPtr law_fubini() { return std::make_shared<Fubini>(); }
LawPtr law_eulerian() { return std::make_shared<Eulerian>(); }
LawPtr law_narayana(double gamma) { return std::make_shared<Narayana>(gamma); }
LawPtr law_mp(double sigma2, double lambda) { return std::make_shared<MarchenkoPastur>(sigma2, lambda); }
LawPtr law_laguerre(double gamma) {
  require(gamma > -1.0, "law_laguerre: requires gamma > -1");
  return law_mp(1.0 + gamma, 1.0 / (1.0 + gamma));
}
LawPtr law_semicircle() { return std::make_shared<Semicircle>(); }
LawPtr law_arcsine() { return std::make_shared<Arcsine>(); }
LawPtr law_jacobi(double u, double v) { return std::make_shared<Jacobi>(u, v, "jacobi"); }
LawPtr law_gegenbauer(double gamma) {
  require(gamma >= 0.5, "law_gegenbauer: requires gamma >= 1/2");
  auto law = std::make_shared<Jacobi>(gamma - 0.5, gamma - 0.5, "gegenbauer");
  return law;
}
LawPtr law_q_laguerre(double a, double lambda) { return std::make_shared<QLaguerre>(a, lambda); }
LawPtr law_reflect(LawPtr inner) { return std::make_shared<Reflected>(std::move(inner)); }

std::vector<std::string> law_names() {
  return {"uniform",   "touchard", "fubini", "eulerian", "narayana",   "mp",        "laguerre",
          "semicircle", "arcsine", "jacobi", "gegenbauer", "q_laguerre"};
}

LawPtr make_law(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw std::invalid_argument("law " + name + ": missing parameter " + key);
  };
  if (name == "uniform" || name == "stirling") return law_uniform_stirling();
  if (name == "touchard") return law_touchard();
  if (name == "fubini") return law_fubini();
  if (name == "eulerian") return law_eulerian();
  if (name == "narayana") return law_narayana(get("gamma", 2.0));
  if (name == "mp") return law_mp(get("sigma2", 1.0), get("lambda", 1.0));
  if (name == "laguerre") return law_laguerre(get("gamma", 0.0));
  if (name == "semicircle" || name == "hermite") return law_semicircle();
  if (name == "arcsine" || name == "legendre") return law_arcsine();
  if (name == "jacobi") return law_jacobi(get("u"), get("v"));
  if (name == "gegenbauer") return law_gegenbauer(get("gamma"));
  if (name == "q_laguerre") return law_q_laguerre(get("a"), get("lambda"));
  throw std::invalid_argument("unknown law: " + name);
}

bool on_support(const LimitLaw& law, double x) {
  auto s = law.support();
  if (x >= s.lo && x <= s.hi) return true;
  for (const auto& a : law.atoms())
    if (a.x == x) return true;
  return false;
}

Complex cauchy_transform(const LimitLaw& law, Complex t) {
  if (t.imag() == 0.0 && on_support(law, t.real()))
    throw std::domain_error("cauchy_transform: t lies on the support of " + law.id() +
                            "; evaluate the density instead");
  if (!law.has_closed_cauchy()) return cauchy_transform_quadrature(law, t);
  return law.cauchy_closed(t);
}

Complex cauchy_transform_quadrature(const LimitLaw& law, Complex t) {
  auto pts = law.breakpoints();
  double re = quadrature::integrate_piecewise(weighted(law, [&](double x) { return (1.0 / (t - x)).real(); }), pts);
  double im = quadrature::integrate_piecewise(weighted(law, [&](double x) { return (1.0 / (t - x)).imag(); }), pts);
  Complex g(re, im);
  for (const auto& a : law.atoms())
    if (std::isfinite(a.x)) g += a.mass / (t - a.x);
  return g;
}

double density_mass(const LimitLaw& law) {
  return quadrature::integrate_piecewise(weighted(law), law.breakpoints());
}

double total_mass(const LimitLaw& law) { return density_mass(law) + atoms_mass(law); }

double cdf(const LimitLaw& law, double x) { return cdf_sorted(law, {x}).front(); }

std::vector<double> cdf_sorted(const LimitLaw& law, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  auto s = law.support();
  const auto atoms = law.atoms();
  const double ac_total = 1.0 - atoms_mass(law);
  double prev_x = s.lo, prev_ac = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    if (i > 0 && x < xs[i - 1]) throw std::invalid_argument("cdf_sorted: points must be increasing");
    double atom_part = 0.0;
    for (const auto& a : atoms)
      if (a.x <= x) atom_part += a.mass;
    double ac;
    if (x <= s.lo) {
      ac = 0.0;
    } else if (x >= s.hi) {
      ac = ac_total;
    } else if (auto c = law.cdf_closed(x)) {
      ac = *c;
    } else {
      double from = std::max(prev_x, s.lo);
      double base = (prev_x <= s.lo) ? 0.0 : prev_ac;
      ac = base + quadrature::integrate_piecewise(weighted(law), clipped(law, from, x));
      prev_x = x;
      prev_ac = ac;
    }
    out[i] = std::clamp(atom_part + ac, 0.0, 1.0);
  }
  return out;
}

double log_potential_quadrature(const LimitLaw& law, double t) {
  double v = quadrature::integrate_piecewise(weighted(law, [t](double x) { return std::log(std::fabs(t - x)); }),
                                             with_log_points(law, {t}));
  for (const auto& a : law.atoms()) {
    if (std::isinf(a.x)) return kInf;
    v += a.mass * std::log(std::fabs(t - a.x));
  }
  return v;
}

Potential log_potential(const LimitLaw& law, double t) {
  if (law.infinite_potential() || law.atom_at_infinity() > 0.0) return {true, kInf};
  if (auto f = law.potential_closed(Complex(t, 0.0))) return {false, f->real()};
  return {false, log_potential_quadrature(law, t)};
}

double normalized_log_potential_quadrature(const LimitLaw& law, double t) {
  double v = quadrature::integrate_piecewise(
      weighted(law, [t](double x) { return std::log(std::fabs((t - x) / (1.0 - x))); }),
      with_log_points(law, {t, 1.0}));
  for (const auto& a : law.atoms())
    if (std::isfinite(a.x)) v += a.mass * (std::log(std::fabs(t - a.x)) - std::log(std::fabs(1.0 - a.x)));
  return v;
}

double normalized_log_potential(const LimitLaw& law, double t) {
  if (t == 1.0) return 0.0;
  if (auto p = law.psi_closed(t)) return *p;
  if (!law.infinite_potential() && law.atom_at_infinity() == 0.0) {
    auto f1 = law.potential_closed(Complex(1.0, 0.0));
    auto ft = law.potential_closed(Complex(t, 0.0));
    if (f1 && ft) return ft->real() - f1->real();
  }
  return normalized_log_potential_quadrature(law, t);
}

std::vector<double> moments(const LimitLaw& law, int k_max, MomentMethod method) {
  if (k_max < 0) throw std::invalid_argument("moments: k_max must be >= 0");
  int lim = law.max_finite_moment();
  if (lim >= 0 && k_max > lim)
    throw std::domain_error("moments: the moments of " + law.id() + " beyond order " + std::to_string(lim) +
                            " are infinite");
  if (law.atom_at_infinity() > 0.0 && k_max > 0)
    throw std::domain_error("moments: mass at infinity makes the moments infinite");
  std::vector<double> out(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    std::optional<double> closed;
    if (method != MomentMethod::quadrature) closed = law.moment_closed(k);
    if (method == MomentMethod::closed && !closed)
      throw std::invalid_argument("moments: no closed form for " + law.id());
    if (closed) {
      out[static_cast<size_t>(k)] = *closed;
      continue;
    }
    out[static_cast<size_t>(k)] = integrate_against(law, [k](double x) { return std::pow(x, k); });
  }
  return out;
}

double integrate_against(const LimitLaw& law, const std::function<double(double)>& f) {
  double v = quadrature::integrate_piecewise(weighted(law, f), law.breakpoints());
  for (const auto& a : law.atoms())
    if (std::isfinite(a.x)) v += a.mass * f(a.x);
  return v;
}

}  // namespace zeroprof::limitlaws
