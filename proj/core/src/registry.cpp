#include "zeroprof/registry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zeroprof/families.hpp"

namespace zeroprof::registry {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::string get(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void only_keys(const Params& p, std::initializer_list<const char*> keys, const std::string& family) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("family " + family + ": unknown parameter " + k);
  }
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

int to_int(const Rational& q, const std::string& what) {
  if (!is_integer(q) || !q.get_num().fits_sint_p()) throw std::invalid_argument(what + " must be an integer");
  return static_cast<int>(q.get_num().get_si());
}

mpfr_prec_t float_precision(const Params& p, int n, double bits_per_degree) {
  auto it = p.find("precision");
  if (it != p.end()) return std::stol(it->second);
  long bits = static_cast<long>(std::ceil(bits_per_degree * n / 64.0)) * 64;
  return std::max<long>(256, bits);
}

}  // namespace

Rational parse_rule(const std::string& raw, int n) {
  std::string t = trim(raw);
  if (t.empty()) throw std::invalid_argument("empty parameter value");
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "/n") == 0) {
    std::string head = t.substr(0, t.size() - 2);
    return parse_rational(head.empty() ? "1" : head) / n;
  }
  if (t.back() == 'n') {
    std::string head = t.substr(0, t.size() - 1);
    if (head.empty() || head == "+") head = "1";
    if (head == "-") head = "-1";
    if (head.back() == '*') head.pop_back();
    return parse_rational(head) * n;
  }
  return parse_rational(t);
}

BigFloat parse_real_rule(const std::string& raw, int n, mpfr_prec_t prec) {
  std::string t = trim(raw);
  if (t.rfind("log(", 0) == 0 && t.back() == ')') {
    Rational r = parse_rule(t.substr(4, t.size() - 5), n);
    if (r <= 0) throw std::invalid_argument("log of a nonpositive value");
    PrecisionScope scope(prec);
    return log(BigFloat(r, prec));
  }
  return BigFloat(parse_rule(t, n), prec);
}

std::vector<Rational> parse_rule_list(const std::string& text, int n) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) out.push_back(parse_rule(item, n));
  return out;
}

std::vector<std::string> family_names() {
  return {"stirling",  "touchard", "fubini",     "eulerian",         "narayana",         "binomial_power",
          "laguerre",  "hermite",  "legendre",   "gegenbauer",       "jacobi",           "hypergeometric",
          "q_laguerre", "free_mult_hermite", "free_mult_poisson"};
}

FamilyInstance build_family(const std::string& family, int n, const Params& params) {
  if (n < 1) throw std::invalid_argument("family " + family + ": n must be >= 1");
  FamilyInstance f;
  f.family = family;
  f.n = n;
  f.normalizer = n;
  f.params = params;
  f.scaling = "none";
  if (family == "stirling") {
    only_keys(params, {}, family);
    f.exact = families::stirling1_poly(n);
    f.scaling = "x -> n x";
    f.root_divisor = n;
    f.law = "uniform";
    f.profile = "stirling";
  } else if (family == "touchard") {
    only_keys(params, {}, family);
    f.exact = families::touchard_poly(n);
    f.scaling = "x -> n x";
    f.root_divisor = n;
    f.law = "touchard";
    f.profile = "touchard";
  } else if (family == "fubini") {
    only_keys(params, {}, family);
    f.exact = families::fubini_poly(n);
    f.method = roots::RootMethod::mobius;
    f.law = "fubini";
    f.profile = "fubini";
  } else if (family == "eulerian") {
    only_keys(params, {}, family);
    f.exact = families::eulerian_poly(n);
    f.law = "eulerian";
    f.compactify = true;
    f.profile = "eulerian";
  } else if (family == "narayana") {
    only_keys(params, {}, family);
    f.exact = families::narayana_poly(n);
    f.law = "narayana";
    f.law_params = {{"gamma", 2.0}};
    f.profile = "narayana";
    f.profile_params = {{"gamma", 2.0}};
  } else if (family == "binomial_power") {
    only_keys(params, {"gamma", "precision"}, family);
    f.params["gamma"] = get(params, "gamma", "2");
    Rational g = parse_rule(f.params["gamma"], n);
    if (g < 2) throw std::invalid_argument("family binomial_power: gamma must be at least 2");
    if (is_integer(g)) {
      f.exact = families::binomial_power_poly(n, to_int(g, "gamma"));
    } else {
      f.is_float = true;
      f.floating = families::binomial_power_poly_real(n, g, float_precision(params, n, 2.0));
      f.real_rooted_proved = false;
    }
    f.law = "narayana";
    f.law_params = {{"gamma", g.get_d()}};
    f.profile = "narayana";
    f.profile_params = f.law_params;
  } else if (family == "laguerre") {
    only_keys(params, {"gamma", "gamma_n"}, family);
    f.params["gamma"] = get(params, "gamma", "0");
    const double gstar = parse_rule(f.params["gamma"], n).get_d();
    Rational gn = params.count("gamma_n") ? parse_rule(params.at("gamma_n"), n) : parse_rule(f.params["gamma"], n) * n;
    f.exact = families::laguerre_nonneg(n, gn);
    f.scaling = "L_n^(gamma_n)(-x), x -> n x";
    f.root_divisor = -static_cast<double>(n);
    f.law = "laguerre";
    f.law_params = {{"gamma", gstar}};
    f.profile = "laguerre";
    f.profile_params = {{"gamma", gstar}};
  } else if (family == "hermite") {
    only_keys(params, {}, family);
    f.exact = families::hermite_poly(n);
    f.scaling = "x -> sqrt(n) x";
    f.root_divisor = std::sqrt(static_cast<double>(n));
    f.law = "semicircle";
    f.profile = "hermite";
  } else if (family == "legendre" || family == "gegenbauer" || family == "jacobi") {
    Rational u = 0, v = 0;
    if (family == "gegenbauer") {
      only_keys(params, {"gamma"}, family);
      f.params["gamma"] = get(params, "gamma", "1");
      Rational g = parse_rule(f.params["gamma"], n);
      if (g < Rational(1, 2)) throw std::invalid_argument("family gegenbauer: gamma must be at least 1/2");
      u = v = g - Rational(1, 2);
      f.law_params = {{"gamma", g.get_d()}};
      f.profile_params = f.law_params;
    } else if (family == "jacobi") {
      only_keys(params, {"u", "v"}, family);
      f.params["u"] = get(params, "u", "0");
      f.params["v"] = get(params, "v", "0");
      u = parse_rule(f.params["u"], n);
      v = parse_rule(f.params["v"], n);
      if (u < 0 || v < 0) throw std::invalid_argument("family jacobi: u and v must be nonnegative");
      f.law_params = {{"u", u.get_d()}, {"v", v.get_d()}};
      f.profile_params = f.law_params;
    } else {
      only_keys(params, {}, family);
    }
    f.exact = families::jacobi_poly(n, u * n, v * n);
    f.scaling = "J_n^(u n, v n)";
    f.law = family == "legendre" ? "arcsine" : family;
    f.profile = family;
  } else if (family == "hypergeometric") {
    only_keys(params, {"a", "b"}, family);
    f.exact = families::hypergeometric_poly(n, parse_rule_list(get(params, "a", ""), n),
                                            parse_rule_list(get(params, "b", ""), n));
    f.profile = "hypergeometric";
  } else if (family == "q_laguerre") {
    only_keys(params, {"a", "lambda", "precision"}, family);
    f.params["a"] = get(params, "a", "1");
    f.params["lambda"] = get(params, "lambda", "log(2)");
    mpfr_prec_t prec = float_precision(params, n, 2.6);
    Rational a = parse_rule(f.params["a"], n);
    BigFloat lam = parse_real_rule(f.params["lambda"], n, prec);
    f.is_float = true;
    f.floating = families::little_q_laguerre_poly(n, a, lam, prec);
    f.scaling = "P_n(-x; a | q), q = exp(-lambda/n)";
    f.root_divisor = -1.0;
    f.law = "q_laguerre";
    f.law_params = {{"a", a.get_d()}, {"lambda", lam.to_double()}};
    f.profile = "q_laguerre";
    f.profile_params = f.law_params;
  } else if (family == "free_mult_hermite") {
    only_keys(params, {"sigma2", "precision"}, family);
    f.params["sigma2"] = get(params, "sigma2", "1/n");
    f.is_float = true;
    f.floating = families::free_mult_hermite_poly(n, parse_rule(f.params["sigma2"], n), float_precision(params, n, 5.0));
  } else if (family == "free_mult_poisson") {
    only_keys(params, {"b", "c", "precision"}, family);
    f.params["b"] = get(params, "b", "n");
    f.params["c"] = get(params, "c", "n");
    Rational b = parse_rule(f.params["b"], n), c = parse_rule(f.params["c"], n);
    if (is_integer(c)) {
      f.exact = families::free_mult_poisson_poly(n, b, to_int(c, "c"));
    } else {
      f.is_float = true;
      f.floating = families::free_mult_poisson_poly_real(n, b, c, float_precision(params, n, 4.0));
      f.real_rooted_proved = false;
    }
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }
  if (!f.real_rooted_proved) f.tag = "unverified real-rootedness";
  return f;
}

roots::EmpiricalMeasure family_measure(const FamilyInstance& inst, int precision_bits, roots::RootSet* raw) {
  roots::RootSet rs = inst.is_float ? roots::isolate_real_roots(inst.floating, precision_bits)
                                    : roots::isolate_real_roots(inst.exact, precision_bits, inst.method);
  roots::EmpiricalMeasure em = roots::empirical_measure(rs, inst.normalizer);
  if (inst.root_divisor != 1.0) em = roots::scaled_measure(em, inst.root_divisor);
  if (raw) *raw = std::move(rs);
  return em;
}

limitlaws::LawPtr family_law(const FamilyInstance& inst) {
  if (inst.law.empty()) return nullptr;
  if (inst.law == "uniform") return limitlaws::law_uniform_stirling();
  return limitlaws::make_law(inst.law, inst.law_params);
}

profiles::LogCoeffVector profile_coefficients(const FamilyInstance& inst) {
  const int n = inst.n;
  if (inst.family == "stirling" || inst.family == "touchard")
    return profiles::log_coefficients(scale_argument(inst.exact, Rational(n)));
  if (inst.family == "laguerre") return profiles::log_coefficients(scale_argument(inst.exact, Rational(n)));
  if (inst.family == "hermite")
    return profiles::log_coefficients(scale_argument(families::laguerre_nonneg(n, Rational(-1, 2)), Rational(n)));
  if (inst.family == "legendre" || inst.family == "gegenbauer" || inst.family == "jacobi") {
    double u = 0.0, v = 0.0;
    if (inst.family == "gegenbauer") u = v = inst.profile_params.at("gamma") - 0.5;
    if (inst.family == "jacobi") {
      u = inst.profile_params.at("u");
      v = inst.profile_params.at("v");
    }
    Rational ur(u), vr(v);
    if (inst.family == "gegenbauer") ur = vr = parse_rule(inst.params.at("gamma"), n) - Rational(1, 2);
    if (inst.family == "jacobi") {
      ur = parse_rule(inst.params.at("u"), n);
      vr = parse_rule(inst.params.at("v"), n);
    }
    return profiles::log_coefficients(families::hypergeometric_poly(n, {2 + ur + vr}, {1 + ur}));
  }
  if (inst.is_float) {
    for (const auto& c : inst.floating.coeffs)
      if (c.sign() < 0) {
        // alternating families: profile of P(-x) up to sign
        FloatPolynomial q = inst.floating;
        for (size_t k = 0; k < q.coeffs.size(); ++k)
          if ((inst.n - static_cast<int>(k)) % 2) q.coeffs[k] = -q.coeffs[k];
        return profiles::log_coefficients(q);
      }
    return profiles::log_coefficients(inst.floating);
  }
  if (!inst.exact.all_nonnegative()) {
    ExactPolynomial q = scale_argument(inst.exact, Rational(-1));
    if (inst.n % 2) q = scale_values(q, Rational(-1));
    return profiles::log_coefficients(q);
  }
  return profiles::log_coefficients(inst.exact);
}

std::optional<profiles::ClosedProfile> family_profile(const FamilyInstance& inst) {
  if (inst.profile.empty()) return std::nullopt;
  if (inst.profile == "hypergeometric") {
    std::vector<double> a, b;
    for (const auto& q : parse_rule_list(get(inst.params, "a", ""), 1)) a.push_back(q.get_d());
    for (const auto& q : parse_rule_list(get(inst.params, "b", ""), 1)) b.push_back(q.get_d());
    return profiles::hypergeometric_profile(a, b);
  }
  return profiles::closed_profile(inst.profile, inst.profile_params);
}

double ProfileLaw::tG(double t) const {
  return t * scale * limitlaws::cauchy_transform(*law, limitlaws::Complex(shift + scale * t, 0.0)).real();
}

ProfileLaw profile_law(const std::string& profile, const std::map<std::string, double>& params) {
  using namespace limitlaws;
  auto at = [&](const std::string& k) {
    auto it = params.find(k);
    if (it == params.end()) throw std::invalid_argument("profile_law(" + profile + "): missing " + k);
    return it->second;
  };
  ProfileLaw pl;
  if (profile == "stirling") {
    pl.law = law_uniform_stirling();
  } else if (profile == "touchard") {
    pl.law = law_touchard();
  } else if (profile == "fubini") {
    pl.law = law_fubini();
  } else if (profile == "eulerian") {
    pl.law = law_eulerian();
  } else if (profile == "narayana") {
    pl.law = law_narayana(at("gamma"));
  } else if (profile == "laguerre") {
    pl.law = law_reflect(law_laguerre(at("gamma")));
  } else if (profile == "hermite") {
    pl.law = law_reflect(law_laguerre(0.0));
  } else if (profile == "legendre" || profile == "gegenbauer" || profile == "jacobi") {
    if (profile == "legendre")
      pl.law = law_jacobi(0.0, 0.0);
    else if (profile == "gegenbauer")
      pl.law = law_gegenbauer(at("gamma"));
    else
      pl.law = law_jacobi(at("u"), at("v"));
    pl.scale = 2.0;
    pl.shift = 1.0;
  } else if (profile == "q_laguerre") {
    pl.law = law_reflect(law_q_laguerre(at("a"), at("lambda")));
  } else if (profile == "covariance") {
    pl.law = law_reflect(law_mp(at("sigma2"), at("lambda")));
  } else {
    throw std::invalid_argument("profile_law: no matched law for " + profile);
  }
  return pl;
}

const std::vector<TableRow>& table1() {
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> r;
    auto add = [&](std::string name, std::string family, Params params, std::string profile,
                   std::map<std::string, double> pp, std::string law, std::map<std::string, double> lp) {
      std::string cmd = "zeroprof profile --family " + family;
      for (const auto& [k, v] : params) cmd += " --param " + k + "=" + v;
      cmd += " --n 200";
      r.push_back({std::move(name), std::move(family), std::move(params), std::move(profile), std::move(pp),
                   std::move(law), std::move(lp), cmd});
    };
    add("Stirling", "stirling", {}, "stirling", {}, "uniform", {});
    add("Touchard", "touchard", {}, "touchard", {}, "touchard", {});
    add("Fubini", "fubini", {}, "fubini", {}, "fubini", {});
    add("Eulerian", "eulerian", {}, "eulerian", {}, "eulerian", {});
    add("gen. Narayana", "binomial_power", {{"gamma", "2"}}, "narayana", {{"gamma", 2.0}}, "narayana",
        {{"gamma", 2.0}});
    add("Laguerre", "laguerre", {{"gamma", "1"}}, "laguerre", {{"gamma", 1.0}}, "laguerre", {{"gamma", 1.0}});
    add("Hermite", "hermite", {}, "hermite", {}, "semicircle", {});
    add("Legendre", "legendre", {}, "legendre", {}, "arcsine", {});
    add("Gegenbauer", "gegenbauer", {{"gamma", "1"}}, "gegenbauer", {{"gamma", 1.0}}, "gegenbauer",
        {{"gamma", 1.0}});
    add("little q-Laguerre", "q_laguerre", {{"a", "1"}, {"lambda", "log(2)"}}, "q_laguerre",
        {{"a", 1.0}, {"lambda", std::log(2.0)}}, "q_laguerre", {{"a", 1.0}, {"lambda", std::log(2.0)}});
    return r;
  }();
  return rows;
}

}  // namespace zeroprof::registry
