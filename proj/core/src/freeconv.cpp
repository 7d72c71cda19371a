#include "zeroprof/freeconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zeroprof/families.hpp"

namespace zeroprof::freeconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// q(D) p for q given by its coefficients in D.
ExactPolynomial apply_in_D(const ExactPolynomial& p, const std::vector<Rational>& q) {
  ExactPolynomial out(p.n);
  ExactPolynomial d = p;
  for (size_t k = 0; k < q.size(); ++k) {
    if (k > 0) {
      d = derivative(d);
      d.n = p.n;
      d.coeffs.resize(static_cast<size_t>(p.n) + 1, Rational(0));
    }
    if (q[k] == 0) continue;
    for (int i = 0; i <= p.n; ++i) out[i] += q[k] * d[i];
  }
  return out;
}

Rational factorial_q(int k) { return Rational(factorial(static_cast<unsigned long>(k))); }

}  // namespace

ExactPolynomial boxtimes_n(const ExactPolynomial& p, const ExactPolynomial& q) {
  require(p.n == q.n, "boxtimes_n: mismatched n (" + std::to_string(p.n) + " vs " + std::to_string(q.n) + ")");
  const int n = p.n;
  ExactPolynomial out(n);
  for (int k = 0; k <= n; ++k) {
    Rational c = p[k] * q[k] / Rational(binomial(n, k));
    out[k] = (n - k) % 2 ? Rational(-c) : c;
  }
  return out;
}

FloatPolynomial boxtimes_n(const FloatPolynomial& p, const FloatPolynomial& q) {
  require(p.n == q.n, "boxtimes_n: mismatched n (" + std::to_string(p.n) + " vs " + std::to_string(q.n) + ")");
  const int n = p.n;
  const mpfr_prec_t prec = std::max(p.precision, q.precision);
  FloatPolynomial out;
  out.n = n;
  out.precision = prec;
  for (int k = 0; k <= n; ++k) {
    BigFloat c = p.coeffs[k] * q.coeffs[k] / BigFloat(binomial(n, k), prec);
    out.coeffs.push_back((n - k) % 2 ? -c : c);
  }
  return out;
}

FloatPolynomial boxtimes_power(const FloatPolynomial& p, int k) {
  require(k >= 0, "boxtimes_power: negative exponent");
  FloatPolynomial acc;
  acc.n = p.n;
  acc.precision = p.precision;
  ExactPolynomial id = power_of_linear(Rational(1), p.n);
  for (const auto& c : id.coeffs) acc.coeffs.emplace_back(c, p.precision);
  for (int i = 0; i < k; ++i) acc = boxtimes_n(acc, p);
  return acc;
}

ExactPolynomial boxplus_n(const ExactPolynomial& p, const ExactPolynomial& q) {
  require(p.n == q.n, "boxplus_n: mismatched n (" + std::to_string(p.n) + " vs " + std::to_string(q.n) + ")");
  const int n = p.n;
  require(p[n] == 1 && q[n] == 1, "boxplus_n: inputs must be monic of degree n");
  std::vector<Rational> fact(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) fact[i] = factorial_q(i);
  ExactPolynomial out(n);
  for (int k = 0; k <= n; ++k) {
    Rational s = 0;
    for (int i = 0; i <= k; ++i) {
      int j = k - i;
      if (p[n - i] == 0 || q[n - j] == 0) continue;
      s += fact[n - i] * fact[n - j] / (fact[n] * fact[n - k]) * p[n - i] * q[n - j];
    }
    out[n - k] = s;
  }
  return out;
}

TransformView sigma_from_S(const TransformView& S) {
  TransformView out;
  out.kind = TransformKind::Sigma;
  out.lo = -kInf;
  out.hi = 0.0;
  out.source = S.source;
  auto f = S.f;
  out.f = [f](double z) { return f(z / (1.0 - z)); };
  return out;
}

double LevyKhintchineData::v(double z) const {
  double s = c0;
  for (const auto& a : rho) {
    if (std::isinf(a.t))
      s -= a.weight * z;
    else
      s += a.weight * (1.0 + a.t * z) / (z - a.t);
  }
  return s;
}

double LevyKhintchineData::sigma(double z) const { return std::exp(v(z)); }

FreeTransforms free_mult_normal_transforms(double sigma2) {
  require(sigma2 > 0.0, "free_mult_normal_transforms: sigma2 must be positive");
  FreeTransforms out;
  out.S.kind = TransformKind::S;
  out.S.source = "free_mult_normal(sigma2=" + std::to_string(sigma2) + ")";
  out.S.f = [sigma2](double t) { return std::exp(-sigma2 * (t + 0.5)); };
  out.Sigma.kind = TransformKind::Sigma;
  out.Sigma.lo = -kInf;
  out.Sigma.source = out.S.source;
  out.Sigma.f = [sigma2](double z) { return std::exp(0.5 * sigma2 * (z + 1.0) / (z - 1.0)); };
  out.lk.c0 = 0.0;
  out.lk.rho = {{1.0, 0.5 * sigma2}};
  return out;
}

FreeTransforms free_mult_poisson_transforms(double beta, double gamma) {
  require(!(beta > -1.0 && beta < 0.0), "free_mult_poisson_transforms: beta in (-1, 0) is not allowed");
  require(gamma > 0.0, "free_mult_poisson_transforms: gamma must be positive");
  FreeTransforms out;
  out.S.kind = TransformKind::S;
  out.S.source = "free_mult_poisson(beta=" + std::to_string(beta) + ",gamma=" + std::to_string(gamma) + ")";
  out.S.f = [beta, gamma](double t) { return std::exp(gamma / (t + beta + 1.0)); };
  out.Sigma.kind = TransformKind::Sigma;
  out.Sigma.lo = -kInf;
  out.Sigma.source = out.S.source;
  out.Sigma.f = [beta, gamma](double z) { return std::exp(gamma * (1.0 - z) / (1.0 + beta * (1.0 - z))); };
  if (beta == 0.0) {
    out.lk.c0 = gamma;
    out.lk.rho = {{kInf, gamma}};
  } else {
    const double t0 = 1.0 / beta + 1.0;
    const double K = gamma / beta;
    out.lk.c0 = K * (t0 + 1.0) / (t0 * t0 + 1.0);
    out.lk.rho = {{t0, K * (t0 - 1.0) / (t0 * t0 + 1.0)}};
  }
  return out;
}

TransformView transforms_from_profile(const std::function<double(double)>& eg) {
  TransformView out;
  out.kind = TransformKind::S;
  out.f = [eg](double z) { return -((1.0 + z) / z) / eg(1.0 + z); };
  return out;
}

TransformView transforms_from_profile(const profiles::ClosedProfile& profile) {
  TransformView out = transforms_from_profile(profile.eg);
  out.lo = profile.lo - 1.0;
  out.hi = profile.hi - 1.0;
  out.source = "profile:" + profile.id;
  return out;
}

double psi_empirical(const roots::EmpiricalMeasure& em, double z) {
  double s = 0.0;
  for (double u : em.roots) s += u * z / (1.0 - u * z);
  return s / em.n;
}

double psi_inverse(const roots::EmpiricalMeasure& em, double y) {
  for (double u : em.roots)
    if (u < -1e-12) throw std::domain_error("psi_inverse: measure has negative atoms");
  double nonzero = 0.0;
  for (double u : em.roots) nonzero += u > 0.0 ? 1.0 : 0.0;
  nonzero /= em.n;
  if (!(y < 0.0 && y > -nonzero)) throw std::domain_error("psi_inverse: value outside the range of psi");
  // psi(-e^u) decreases in u from 0 to -nonzero
  double a = -60.0, b = 60.0;
  while (psi_empirical(em, -std::exp(a)) < y) a -= 60.0;
  while (psi_empirical(em, -std::exp(b)) > y) b += 60.0;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
    double mid = 0.5 * (a + b);
    if (psi_empirical(em, -std::exp(mid)) > y)
      a = mid;
    else
      b = mid;
  }
  return -std::exp(0.5 * (a + b));
}

SCheckReport empirical_S_check(const roots::EmpiricalMeasure& em, const TransformView& target, double lo,
                               double hi, int points) {
  require(em.mass_at_infinity == 0.0, "empirical_S_check: measure has mass at infinity");
  require(points >= 2 && lo < hi, "empirical_S_check: bad grid");
  SCheckReport rep;
  for (int i = 0; i < points; ++i) {
    double z = lo + (hi - lo) * i / (points - 1);
    double x;
    try {
      x = psi_inverse(em, z);
    } catch (const std::domain_error&) {
      ++rep.out_of_range;
      continue;
    }
    SCheckRow row{z, (1.0 + z) / z * x, target(z)};
    rep.max_error = std::max(rep.max_error, std::fabs(row.empirical - row.target));
    rep.rows.push_back(row);
  }
  return rep;
}

double numeric_R(const limitlaws::LimitLaw& law, double t) {
  if (t == 0.0) return 0.0;
  auto sup = law.support();
  double lo = sup.lo, hi = sup.hi;
  for (const auto& a : law.atoms()) {
    if (std::isinf(a.x)) throw std::domain_error("numeric_R: law has mass at infinity");
    lo = std::min(lo, a.x);
    hi = std::max(hi, a.x);
  }
  const double edge = t < 0.0 ? lo : hi;
  const double dir = t < 0.0 ? -1.0 : 1.0;
  auto G = [&](double d) { return limitlaws::cauchy_transform(law, edge + dir * d).real(); };
  // |G(edge + dir d)| decreases in d
  double dmin = 1e-12 * std::max(1.0, std::fabs(edge));
  if (std::fabs(G(dmin)) < std::fabs(t)) throw std::domain_error("numeric_R: t outside the range of G");
  double dmax = 1.0;
  while (std::fabs(G(dmax)) > std::fabs(t)) dmax *= 2.0;
  double a = std::log(dmin), b = std::log(dmax);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    double mid = 0.5 * (a + b);
    if (std::fabs(G(std::exp(mid))) > std::fabs(t))
      a = mid;
    else
      b = mid;
  }
  double s = edge + dir * std::exp(0.5 * (a + b));
  return t * s - 1.0;
}

void validate(const FlowSpec& spec) {
  require(spec.n >= 1, "flow: n must be positive");
  require(spec.m >= 1, "flow: m must be positive");
  require(spec.j >= 1, "flow: j must be positive");
  require(spec.j + 1 >= spec.m, "flow: requires j + 1 >= m");
  require(spec.c > 0, "flow: c must be positive");
  require(static_cast<int>(spec.b.size()) == spec.j, "flow: b must have j entries");
  for (const auto& b : spec.b) require(b >= 1, "flow: every b_s must be at least 1");
  if (!spec.sigma.empty()) {
    require(static_cast<int>(spec.sigma.size()) == spec.j, "flow: sigma must have j entries");
    std::vector<int> s = spec.sigma;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < spec.j; ++i) require(s[i] == i + 1, "flow: sigma must be a permutation of 1..j");
  }
}

namespace {

std::vector<int> permutation(const FlowSpec& spec) {
  if (!spec.sigma.empty()) return spec.sigma;
  std::vector<int> id(static_cast<size_t>(spec.j));
  for (int i = 0; i < spec.j; ++i) id[i] = i + 1;
  return id;
}

// t_i for i = 0..j
std::vector<int> t_counts(const FlowSpec& spec, const std::vector<int>& sigma) {
  std::vector<int> t(static_cast<size_t>(spec.j) + 1, 0);
  for (int i = 1; i <= spec.j; ++i) t[i] = t[i - 1] + (sigma[i - 1] >= spec.m ? 1 : 0);
  return t;
}

// H x^l = h(l) x^{l-m}
Rational h_coefficient(const FlowSpec& spec, const std::vector<int>& sigma, const std::vector<int>& t, long l,
                       FlowAction action) {
  const Rational nm(spec.n * spec.m);
  Rational h = Rational(l) / nm;
  long deg = l - 1;
  for (int s = 1; s <= spec.j; ++s) {
    const int q = sigma[s - 1];
    const Rational& b = spec.b[q - 1];
    const long at = action == FlowAction::displayed ? l - 1 + t[s - 1] : deg;
    h *= Rational(at) / nm + b - 1;
    if (q < spec.m) --deg;
  }
  return h;
}

}  // namespace

ExactPolynomial flow_polynomial(const FlowSpec& spec, FlowAction action) {
  validate(spec);
  const auto sigma = permutation(spec);
  const auto t = t_counts(spec, sigma);
  const int n = spec.n, m = spec.m;
  ExactPolynomial out(n * m);
  Rational hk = 1;       // coefficient of H^k x^{nm}
  Rational scale = 1;    // (-c n)^k / k!
  for (int k = 0; k <= n; ++k) {
    out[m * (n - k)] += scale * hk;
    if (k == n) break;
    hk *= h_coefficient(spec, sigma, t, static_cast<long>(m) * (n - k), action);
    scale *= -spec.c * n / (k + 1);
  }
  return out;
}

std::vector<Rational> flow_b_shift(const FlowSpec& spec) {
  validate(spec);
  const auto sigma = permutation(spec);
  const auto t = t_counts(spec, sigma);
  const Rational mn(spec.m * spec.n);
  std::vector<Rational> out(spec.b.size());
  for (int pos = 1; pos <= spec.j; ++pos) {
    int s = sigma[pos - 1];
    out[s - 1] = spec.b[s - 1] + Rational(t[pos - 1] - 1) / mn;
  }
  return out;
}

std::vector<Rational> flow_b_shift_composed(const FlowSpec& spec) {
  validate(spec);
  const auto sigma = permutation(spec);
  const auto t = t_counts(spec, sigma);
  const Rational mn(spec.m * spec.n);
  std::vector<Rational> out(spec.b.size());
  for (int pos = 1; pos <= spec.j; ++pos) {
    int s = sigma[pos - 1];
    out[s - 1] = spec.b[s - 1] + Rational(t[pos - 1] - pos) / mn;
  }
  return out;
}

ExactPolynomial flow_hypergeometric_side(const FlowSpec& spec, const std::vector<Rational>& b) {
  ExactPolynomial h = families::hypergeometric_poly(spec.n, {}, b);
  ExactPolynomial composed = compose_monomial(h, Rational(-1) / spec.c, spec.m);
  Rational sign = rational_pow(-spec.c, static_cast<unsigned long>(spec.n));
  return scale_values(composed, sign);
}

FlowCheck flow_identity_check(const FlowSpec& spec) {
  FlowCheck out;
  ExactPolynomial displayed = flow_polynomial(spec, FlowAction::displayed);
  ExactPolynomial composed = flow_polynomial(spec, FlowAction::composed);
  out.displayed_identity = displayed == flow_hypergeometric_side(spec, flow_b_shift(spec));
  out.composed_identity = composed == flow_hypergeometric_side(spec, flow_b_shift_composed(spec));
  out.actions_agree = displayed == composed;
  return out;
}

namespace {

Rational shift_of(const AppellSpec& f) {
  Rational s = f.c;
  for (const auto& x : f.roots) {
    require(x != 0, "appell: roots must be nonzero");
    s += 1 / x;
  }
  return s;
}

std::vector<Rational> gaussian_series(int n, const Rational& sigma2) {
  // e^{-sigma2 D^2/(2n)} up to D^n
  std::vector<Rational> q(static_cast<size_t>(n) + 1, Rational(0));
  Rational term = 1;
  for (int k = 0; 2 * k <= n; ++k) {
    q[2 * k] = term;
    term *= -sigma2 / (2 * n) / (k + 1);
  }
  return q;
}

std::vector<Rational> laguerre_series(int n, const Rational& x) {
  // (1 - D/(n x))^n
  std::vector<Rational> q(static_cast<size_t>(n) + 1);
  Rational r = Rational(-1) / (n * x);
  for (int k = 0; k <= n; ++k) q[k] = Rational(binomial(n, k)) * rational_pow(r, k);
  return q;
}

}  // namespace

ExactPolynomial appell_poly(int n, const AppellSpec& f) {
  require(n >= 1, "appell_poly: n must be positive");
  ExactPolynomial p = taylor_shift(power_of_linear(Rational(0), n), shift_of(f));
  if (f.sigma2 != 0) p = apply_in_D(p, gaussian_series(n, f.sigma2));
  for (const auto& x : f.roots) p = apply_in_D(p, laguerre_series(n, x));
  return p;
}

AppellFactors appell_factors(int n, const AppellSpec& f) {
  AppellFactors out;
  ExactPolynomial xn = power_of_linear(Rational(0), n);
  out.shift = power_of_linear(-shift_of(f), n);
  out.gaussian = apply_in_D(xn, gaussian_series(n, f.sigma2));
  for (const auto& x : f.roots) out.laguerre.push_back(apply_in_D(xn, laguerre_series(n, x)));
  return out;
}

bool appell_factorization_check(int n, const AppellSpec& f) {
  AppellFactors fac = appell_factors(n, f);
  ExactPolynomial acc = boxplus_n(fac.shift, fac.gaussian);
  for (const auto& l : fac.laguerre) acc = boxplus_n(acc, l);
  return acc == appell_poly(n, f);
}

double appell_R(const AppellSpec& f, double t) {
  double gamma = -f.c.get_d();
  double s = f.sigma2.get_d() * t * t;
  for (const auto& xj : f.roots) {
    double xr = xj.get_d();
    gamma -= 1.0 / (xr * xr * xr + xr);
    double x = 1.0 / xr;
    s += t * (t + x) / (1.0 - t * x) * x * x / (x * x + 1.0);
  }
  return gamma * t + s;
}

double appell_R_numeric(const AppellSpec& f, double t) {
  double r = -shift_of(f).get_d() * t;
  const double sigma2 = f.sigma2.get_d();
  if (sigma2 > 0.0) r += numeric_R(*limitlaws::law_semicircle(), std::sqrt(sigma2) * t);
  auto mp = limitlaws::law_mp(1.0, 1.0);
  for (const auto& xj : f.roots) r += numeric_R(*mp, t / xj.get_d());
  return r;
}

}  // namespace zeroprof::freeconv

namespace zeroprof::freeconv {

FlowCase parse_flow_case(const std::string& name) {
  if (name == "I" || name == "1") return FlowCase::I;
  if (name == "II" || name == "2") return FlowCase::II;
  if (name == "III" || name == "3") return FlowCase::III;
  if (name == "IV" || name == "4") return FlowCase::IV;
  throw std::invalid_argument("unknown flow case: " + name + " (expected I, II, III or IV)");
}

std::string to_string(FlowCase c) {
  switch (c) {
    case FlowCase::I: return "I";
    case FlowCase::II: return "II";
    case FlowCase::III: return "III";
    case FlowCase::IV: return "IV";
  }
  return "?";
}

FlowSpec flow_case(FlowCase which, int n, int j, const Rational& c, const Rational& gamma_n) {
  require(n >= 1, "flow: n must be positive");
  require(j >= 1, "flow: j must be positive");
  FlowSpec s;
  s.n = n;
  switch (which) {
    case FlowCase::I:
      s.m = s.j = 1;
      s.c = c;
      s.b = {1 + (gamma_n + 1) / n};
      break;
    case FlowCase::II:
      s.m = 2;
      s.j = 1;
      s.b = {1};
      break;
    case FlowCase::III:
      s.m = j + 1;
      s.j = j;
      s.b.assign(static_cast<size_t>(j), Rational(1));
      break;
    case FlowCase::IV:
      s.m = 1;
      s.j = j;
      s.b.assign(static_cast<size_t>(j), Rational(1));
      break;
  }
  validate(s);
  return s;
}

std::optional<ExactPolynomial> flow_case_closed_form(FlowCase which, const FlowSpec& spec, const Rational& gamma_n) {
  const int n = spec.n;
  if (which == FlowCase::I) {
    Rational pre = Rational(n % 2 ? -1 : 1);
    for (int i = 1; i <= n; ++i) pre *= spec.c * i / n;
    return scale_values(scale_argument(families::laguerre_poly(n, gamma_n), Rational(n) / spec.c), pre);
  }
  if (which == FlowCase::IV) return std::nullopt;
  const int m = spec.m, N = n * m;
  // (D/(nm))^m applied k times to x^N, weighted by (-n)^k/k!
  ExactPolynomial out(N);
  Rational term = 1;
  for (int k = 0; m * k <= N; ++k) {
    out[N - m * k] += term;
    if (m * (k + 1) > N) break;
    Rational f = Rational(-n) / (k + 1);
    for (int i = 0; i < m; ++i) f *= Rational(N - m * k - i) / N;
    term *= f;
  }
  return out;
}

profiles::ClosedProfile flow_case_iv_profile(int j) {
  require(j >= 1, "flow: j must be positive");
  return profiles::hypergeometric_profile({}, std::vector<double>(static_cast<size_t>(j), 1.0));
}

}  // namespace zeroprof::freeconv
