#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "output.hpp"
#include "settings.hpp"
#include "zeroprof/families.hpp"
#include "zeroprof/freeconv.hpp"
#include "zeroprof/limitlaws.hpp"
#include "zeroprof/parallel.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/randmat.hpp"
#include "zeroprof/registry.hpp"
#include "zeroprof/roots.hpp"

namespace zeroprof::cli {

namespace fs = std::filesystem;
using registry::FamilyInstance;

namespace {

constexpr int kCheckFailed = 3;

struct Result {
  json summary = json::object();
  int status = 0;
};

struct Context {
  const Settings& s;
  fs::path out;

  std::vector<std::pair<std::string, std::string>> meta(std::vector<std::pair<std::string, std::string>> extra) const {
    extra.insert(extra.begin(), {"command", s.command()});
    return extra;
  }
};

struct Command {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
  std::function<Result(Context&)> run;
};

const std::vector<OptionDef> kFamilyOptions = {
    {"family", "", "family name", false},
    {"param", "", "family parameter name=value (repeatable)", true},
};

std::vector<OptionDef> with(std::vector<OptionDef> base, const std::vector<OptionDef>& more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

std::map<std::string, double> real_params(const std::map<std::string, std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : raw) out[k] = registry::parse_real_rule(v, 1, 128).to_double();
  return out;
}

json to_json(const std::map<std::string, double>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = finite_or_text(v);
  return j;
}

json to_json(const registry::Params& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

FamilyInstance family_of(const Settings& s, int n) {
  return registry::build_family(s.str("family"), n, s.pairs("param"));
}

json family_meta(const FamilyInstance& f) {
  json j = {{"family", f.family},
            {"n", f.n},
            {"params", to_json(f.params)},
            {"coefficients", f.is_float ? "float" : "exact"},
            {"scaling", f.scaling},
            {"root_divisor", f.root_divisor},
            {"law", f.law},
            {"law_params", to_json(f.law_params)},
            {"profile", f.profile},
            {"real_rooted_proved", f.real_rooted_proved}};
  if (f.is_float) j["precision_bits"] = f.floating.precision;
  if (!f.tag.empty()) j["tag"] = f.tag;
  return j;
}

std::vector<std::pair<std::string, std::string>> family_csv_meta(const FamilyInstance& f) {
  std::vector<std::pair<std::string, std::string>> m = {{"family", f.family}, {"n", std::to_string(f.n)}};
  for (const auto& [k, v] : f.params) m.push_back({"param." + k, v});
  if (!f.tag.empty()) m.push_back({"tag", f.tag});
  return m;
}

roots::Compactify compactify_for(const FamilyInstance& f, const std::string& law) {
  if (f.compactify && law == f.law) return roots::compactify_negative;
  return {};
}

// Parses "lo:hi:count".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:count, got " + text);
  double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  int count = std::stoi(parts[2]);
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("grid needs lo < hi and count >= 2");
  std::vector<double> xs(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) xs[i] = i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1);
  return xs;
}

// -- family ------------------------------------------------------------------------------------

Result cmd_family(Context& ctx) {
  FamilyInstance f = family_of(ctx.s, ctx.s.integer("n"));
  CsvWriter csv(ctx.out / "coeffs.csv", ctx.meta(family_csv_meta(f)), {"k", "coefficient", "approx"});
  if (f.is_float) {
    for (int k = 0; k <= f.floating.n; ++k)
      csv.row({std::to_string(k), f.floating.coeffs[k].to_hex(), num(f.floating.coeffs[k].to_double())});
  } else {
    for (int k = 0; k <= f.exact.n; ++k)
      csv.row({std::to_string(k), to_string(f.exact[k]), num(f.exact[k].get_d())});
  }
  {
    std::ofstream txt(ctx.out / "coeffs.txt");
    txt << (f.is_float ? serialize(f.floating, f.family, f.params) : serialize(f.exact, f.family, f.params));
  }
  json meta = family_meta(f);
  meta["degree"] = f.is_float ? f.floating.degree() : f.exact.degree();
  if (!f.is_float) meta["nonnegative_coefficients"] = f.exact.all_nonnegative();
  write_json(ctx.out / "family.json", meta);
  return {meta, 0};
}

// -- roots -------------------------------------------------------------------------------------

Result cmd_roots(Context& ctx) {
  FamilyInstance f = family_of(ctx.s, ctx.s.integer("n"));
  roots::RootSet rs;
  roots::EmpiricalMeasure em = registry::family_measure(f, ctx.s.integer("precision"), &rs);
  CsvWriter csv(ctx.out / "roots.csv", ctx.meta(family_csv_meta(f)), {"index", "root", "multiplicity", "scaled"});
  for (size_t i = 0; i < rs.distinct.size(); ++i) {
    double x = rs.distinct[i].value.to_double();
    csv.row({std::to_string(i), rs.distinct[i].value.to_decimal(20), std::to_string(rs.distinct[i].multiplicity),
             num(x / f.root_divisor)});
  }
  json rep = family_meta(f);
  rep["roots"] = {{"count", em.roots.size()},
                  {"distinct", rs.distinct.size()},
                  {"certified", rs.certified},
                  {"precision_met", rs.precision_met},
                  {"method", rs.method},
                  {"working_precision", rs.working_precision}};
  rep["measure"] = {{"mass_at_zero", em.mass_at_zero()},
                    {"mass_at_infinity", em.mass_at_infinity},
                    {"total_mass", em.total_mass()}};
  if (!em.roots.empty()) rep["measure"]["range"] = {em.roots.front(), em.roots.back()};
  if (auto law = registry::family_law(f)) rep["ks_to_law"] = roots::ks_distance(em, *law, compactify_for(f, f.law));
  write_json(ctx.out / "measure.json", rep);
  return {rep, 0};
}

// -- law ---------------------------------------------------------------------------------------

Result cmd_law(Context& ctx) {
  const std::string name = ctx.s.str("name");
  const auto params = real_params(ctx.s.pairs("param"));
  limitlaws::LawPtr law = limitlaws::make_law(name, params);
  const limitlaws::Support sup = law->support();
  std::vector<double> xs;
  if (ctx.s.has("grid")) {
    xs = parse_grid(ctx.s.str("grid"));
  } else {
    if (!std::isfinite(sup.lo) || !std::isfinite(sup.hi))
      throw std::invalid_argument("law " + name + " has unbounded support; pass --grid lo:hi:count");
    double pad = 1e-3 * (sup.hi - sup.lo);
    xs = parse_grid(num(sup.lo + pad) + ":" + num(sup.hi - pad) + ":101");
  }
  const double eps = ctx.s.real("eps");
  std::vector<double> F = limitlaws::cdf_sorted(*law, xs);
  std::vector<std::pair<std::string, std::string>> meta = {{"law", name}, {"eps", num(eps)}};
  for (const auto& [k, v] : params) meta.push_back({"param." + k, num(v)});
  CsvWriter csv(ctx.out / "law.csv", ctx.meta(meta), {"x", "density", "cdf", "re_G", "im_G", "U"});
  double trap = 0.0, min_density = INFINITY;
  std::vector<double> dens(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    dens[i] = law->density(xs[i]);
    min_density = std::min(min_density, dens[i]);
    if (i) trap += 0.5 * (dens[i] + dens[i - 1]) * (xs[i] - xs[i - 1]);
    limitlaws::Complex G = limitlaws::cauchy_transform(*law, {xs[i], eps});
    limitlaws::Potential U = limitlaws::log_potential(*law, xs[i]);
    csv.row({num(xs[i]), num(dens[i]), num(F[i]), num(G.real()), num(G.imag()),
             U.infinite ? "inf" : num(U.value)});
  }
  const double lower_tail = F.front(), upper_tail = 1.0 - F.back();
  json atoms = json::array();
  for (const auto& a : law->atoms()) atoms.push_back({{"x", finite_or_text(a.x)}, {"mass", a.mass}});
  json rep = {{"law", name},
              {"id", law->id()},
              {"params", to_json(params)},
              {"support", {finite_or_text(sup.lo), finite_or_text(sup.hi)}},
              {"atoms", atoms},
              {"grid", {{"lo", xs.front()}, {"hi", xs.back()}, {"count", xs.size()}}},
              {"density_min", min_density},
              {"density_all_positive", min_density > 0.0},
              {"trapezoid_mass", trap},
              {"tail_mass", lower_tail + upper_tail},
              {"trapezoid_plus_tails", trap + lower_tail + upper_tail},
              {"density_mass", limitlaws::density_mass(*law)},
              {"total_mass", limitlaws::total_mass(*law)}};
  const int moments = ctx.s.integer("moments");
  if (moments > 0) {
    json mj = json::array();
    for (double m : limitlaws::moments(*law, moments)) mj.push_back(finite_or_text(m));
    rep["moments"] = mj;
  }
  write_json(ctx.out / "law.json", rep);
  return {rep, 0};
}

// -- profile -----------------------------------------------------------------------------------

json profile_roundtrip(const FamilyInstance& f, const profiles::ClosedProfile& prof) {
  registry::ProfileLaw pl;
  try {
    pl = registry::profile_law(f.profile, f.profile_params);
  } catch (const std::invalid_argument&) {
    return nullptr;
  }
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    double alpha = prof.lo + (prof.hi - prof.lo) * i / 21.0;
    double t = prof.eg(alpha);
    profiles::Inversion inv = profiles::invert_profile_to_tG(prof, t);
    worst = std::max(worst, std::fabs(inv.alpha - pl.tG(t)));
  }
  return {{"points", 20}, {"max_error", worst}, {"law", pl.law->id()}};
}

Result cmd_profile(Context& ctx) {
  const std::vector<int> ns = ctx.s.int_list("n");
  const double eps = ctx.s.real("eps");
  std::vector<profiles::LogCoeffVector> polys;
  FamilyInstance last;
  for (int n : ns) {
    last = family_of(ctx.s, n);
    polys.push_back(registry::profile_coefficients(last));
  }
  auto prof = registry::family_profile(last);
  if (!prof) throw std::invalid_argument("family " + last.family + " has no closed profile");
  profiles::ZeroProfileReport rep = profiles::verify_zero_to_profile(polys, &*prof, eps);

  const profiles::LogCoeffVector& c = polys.back();
  CsvWriter csv(ctx.out / "profile.csv", ctx.meta(family_csv_meta(last)),
                {"k", "alpha", "empirical", "closed", "in_band"});
  const double n = c.n, ls = c.log_sum();
  for (int k = 0; k <= c.n; ++k) {
    double alpha = k / n;
    bool band = !rep.void_case && alpha >= rep.lo + eps && alpha <= rep.hi - eps;
    double closed = alpha > prof->lo && alpha < prof->hi ? prof->normalized(alpha) : NAN;
    csv.row({std::to_string(k), num(alpha), num((c.logs[k] - ls) / n), num(closed), band ? "1" : "0"});
  }
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"sup_deviation", r.sup_deviation},
                    {"outside_max", finite_or_text(r.outside_max)},
                    {"points", r.points}});
  json out = family_meta(last);
  out["profile_params"] = to_json(last.profile_params);
  out["band"] = {{"lo", rep.lo}, {"hi", rep.hi}, {"eps", eps}, {"void_case", rep.void_case}};
  out["sup_g"] = prof->sup_g;
  out["rows"] = rows;
  out["decreasing"] = rep.decreasing;
  out["roundtrip"] = profile_roundtrip(last, *prof);
  write_json(ctx.out / "report.json", out);
  return {out, 0};
}

// -- compare -----------------------------------------------------------------------------------

Result cmd_compare(Context& ctx) {
  const std::vector<int> ns = ctx.s.int_list("n");
  const int bits = ctx.s.integer("precision");
  std::vector<FamilyInstance> insts;
  for (int n : ns) insts.push_back(family_of(ctx.s, n));
  std::string law_name = ctx.s.has("law") ? ctx.s.str("law") : insts.front().law;
  if (law_name.empty()) throw std::invalid_argument("family " + insts.front().family + " has no matched law; pass --law");
  auto law_params = real_params(ctx.s.pairs("law_param"));
  if (law_params.empty() && law_name == insts.front().law) law_params = insts.front().law_params;
  limitlaws::LawPtr law = limitlaws::make_law(law_name, law_params);

  std::vector<double> ks(ns.size());
  std::vector<roots::RootSet> sets(ns.size());
  parallel::parallel_for(ns.size(), [&](size_t i) {
    roots::EmpiricalMeasure em = registry::family_measure(insts[i], bits, &sets[i]);
    ks[i] = roots::ks_distance(em, *law, compactify_for(insts[i], law_name));
  });
  bool decreasing = true;
  for (size_t i = 1; i < ks.size(); ++i) decreasing = decreasing && ks[i] < ks[i - 1];

  auto meta = family_csv_meta(insts.front());
  meta.erase(meta.begin() + 1);
  meta.push_back({"law", law_name});
  for (const auto& [k, v] : law_params) meta.push_back({"law_param." + k, num(v)});
  CsvWriter csv(ctx.out / "compare.csv", ctx.meta(meta), {"n", "ks", "certified", "method"});
  json rows = json::array();
  for (size_t i = 0; i < ns.size(); ++i) {
    csv.row({std::to_string(ns[i]), num(ks[i]), sets[i].certified ? "1" : "0", sets[i].method});
    rows.push_back({{"n", ns[i]}, {"ks", ks[i]}, {"certified", sets[i].certified}, {"method", sets[i].method}});
  }
  json rep = {{"family", insts.front().family},
              {"params", to_json(insts.front().params)},
              {"law", law_name},
              {"law_params", to_json(law_params)},
              {"compactified", static_cast<bool>(compactify_for(insts.front(), law_name))},
              {"rows", rows},
              {"ks_strictly_decreasing", decreasing}};
  if (!decreasing) rep["warning"] = "KS column is not strictly decreasing";
  write_json(ctx.out / "report.json", rep);
  return {rep, 0};
}

// -- freeconv ----------------------------------------------------------------------------------

double max_rel_diff(const FloatPolynomial& a, const FloatPolynomial& b) {
  double scale = 0.0, diff = 0.0;
  for (size_t k = 0; k < b.coeffs.size(); ++k) scale = std::max(scale, std::fabs(b.coeffs[k].to_double()));
  for (size_t k = 0; k < b.coeffs.size(); ++k) {
    PrecisionScope p(b.precision);
    diff = std::max(diff, std::fabs((a.coeffs[k] - b.coeffs[k]).to_double()));
  }
  return diff / scale;
}

json check_semigroup(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("freeconv semigroup: n must lie in 1..10");
  using namespace freeconv;
  ExactPolynomial p = families::free_mult_poisson_poly(n, 1, 1);
  bool identity = boxtimes_n(p, power_of_linear(1, n)) == p;
  bool poisson = boxtimes_n(families::free_mult_poisson_poly(n, 2, 1), families::free_mult_poisson_poly(n, 2, 2)) ==
                 families::free_mult_poisson_poly(n, 2, 3);
  double hermite = max_rel_diff(boxtimes_n(families::free_mult_hermite_poly(n, 1), families::free_mult_hermite_poly(n, 2)),
                                families::free_mult_hermite_poly(n, 3));
  bool delta = boxplus_n(power_of_linear(2, n), power_of_linear(3, n)) == power_of_linear(5, n);
  bool shift = boxplus_n(p, power_of_linear(0, n)) == p;
  bool ok = identity && poisson && hermite <= 1e-12 && delta && shift;
  return {{"n", n},
          {"boxtimes_identity", identity},
          {"poisson_semigroup", poisson},
          {"hermite_semigroup_rel_error", hermite},
          {"boxplus_delta", delta},
          {"boxplus_identity", shift},
          {"pass", ok}};
}

json check_lk() {
  using namespace freeconv;
  json rows = json::array();
  bool ok = true;
  auto run = [&](const std::string& label, const FreeTransforms& ft) {
    double worst = 0.0;
    for (int i = 0; i <= 49; ++i) {
      double z = -5.0 + (4.9 * i) / 49.0;
      worst = std::max(worst, std::fabs(std::exp(ft.lk.v(z)) - ft.Sigma(z)));
    }
    ok = ok && worst <= 1e-10;
    rows.push_back({{"case", label}, {"max_error", worst}});
  };
  for (double s2 : {1.0, 2.0}) run("normal sigma2=" + num(s2), free_mult_normal_transforms(s2));
  for (double b : {0.0, 1.0})
    for (double g : {1.0, 2.0}) run("poisson beta=" + num(b) + " gamma=" + num(g), free_mult_poisson_transforms(b, g));
  return {{"rows", rows}, {"pass", ok}};
}

json check_case_iv(int j) {
  freeconv::TransformView S = freeconv::transforms_from_profile(freeconv::flow_case_iv_profile(j));
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    double z = -0.9 + 0.8 * i / 40.0;
    worst = std::max(worst, std::fabs(S(z) - std::pow(1.0 + z, -j)));
  }
  return {{"j", j}, {"max_error", worst}, {"pass", worst <= 1e-10}};
}

json check_appell(const Settings& s, int n) {
  freeconv::AppellSpec f;
  f.c = parse_rational(s.str("c"));
  f.sigma2 = parse_rational(s.str("sigma2"));
  f.roots = registry::parse_rule_list(s.str("roots"), n);
  bool fact = freeconv::appell_factorization_check(n, f);
  const double t = -0.1;
  double closed = freeconv::appell_R(f, t), numeric = freeconv::appell_R_numeric(f, t);
  return {{"n", n},
          {"factorization", fact},
          {"t", t},
          {"R_closed", closed},
          {"R_numeric", numeric},
          {"pass", fact && std::fabs(closed - numeric) <= 1e-3}};
}

json check_s_transform(Context& ctx, int n) {
  const Settings& s = ctx.s;
  std::string family = s.has("family") ? s.str("family") : "free_mult_hermite";
  FamilyInstance f = registry::build_family(family, n, s.pairs("param"));
  freeconv::TransformView target;
  json target_params;
  if (family == "free_mult_hermite") {
    double sigma2 = registry::parse_rule(f.params.at("sigma2"), n).get_d() * n;
    target = freeconv::free_mult_normal_transforms(sigma2).S;
    target_params = {{"sigma2", sigma2}};
  } else if (family == "free_mult_poisson") {
    double beta = registry::parse_rule(f.params.at("b"), n).get_d() / n;
    double gamma = registry::parse_rule(f.params.at("c"), n).get_d() / n;
    target = freeconv::free_mult_poisson_transforms(beta, gamma).S;
    target_params = {{"beta", beta}, {"gamma", gamma}};
  } else {
    throw std::invalid_argument("freeconv s_transform: family must be free_mult_hermite or free_mult_poisson");
  }
  roots::RootSet rs;
  roots::EmpiricalMeasure em = registry::family_measure(f, s.integer("precision"), &rs);
  freeconv::SCheckReport rep =
      freeconv::empirical_S_check(em, target, s.real("lo"), s.real("hi"), s.integer("points"));
  auto meta = family_csv_meta(f);
  for (const auto& [k, v] : target_params.items()) meta.push_back({"target." + k, num(v.get<double>())});
  CsvWriter csv(ctx.out / "s_transform.csv", ctx.meta(meta), {"z", "empirical", "target"});
  for (const auto& r : rep.rows) csv.row({num(r.z), num(r.empirical), num(r.target)});
  return {{"family", family},
          {"n", n},
          {"params", to_json(f.params)},
          {"target", target_params},
          {"roots_certified", rs.certified},
          {"max_error", rep.max_error},
          {"out_of_range", rep.out_of_range},
          {"pass", rep.out_of_range == 0 && rep.max_error <= 0.05}};
}

Result cmd_freeconv(Context& ctx) {
  const std::string which = ctx.s.str("check");
  static const std::vector<std::string> all = {"semigroup", "lk", "case_iv", "appell", "s_transform"};
  if (which != "all" && std::find(all.begin(), all.end(), which) == all.end())
    throw std::invalid_argument("freeconv: unknown check " + which);
  auto n_or = [&](int fallback) { return ctx.s.has("n") ? ctx.s.integer("n") : fallback; };
  json rep = json::object();
  bool ok = true;
  for (const auto& name : all) {
    if (which != "all" && which != name) continue;
    json r;
    if (name == "semigroup") r = check_semigroup(n_or(6));
    if (name == "lk") r = check_lk();
    if (name == "case_iv") r = check_case_iv(ctx.s.integer("j"));
    if (name == "appell") r = check_appell(ctx.s, n_or(6));
    if (name == "s_transform") r = check_s_transform(ctx, n_or(200));
    ok = ok && r["pass"].get<bool>();
    rep[name] = r;
  }
  rep["pass"] = ok;
  write_json(ctx.out / "report.json", rep);
  return {rep, ok ? 0 : kCheckFailed};
}

// -- flow --------------------------------------------------------------------------------------

Result cmd_flow(Context& ctx) {
  using namespace freeconv;
  const int n = ctx.s.integer("n");
  FlowSpec spec;
  std::optional<FlowCase> which;
  Rational gamma_n = 0;
  if (ctx.s.has("case")) {
    which = parse_flow_case(ctx.s.str("case"));
    if (ctx.s.has("gamma_n")) gamma_n = registry::parse_rule(ctx.s.str("gamma_n"), n);
    Rational c = ctx.s.has("c") ? parse_rational(ctx.s.str("c")) : Rational(1);
    spec = flow_case(*which, n, ctx.s.integer("j"), c, gamma_n);
  } else {
    spec.n = n;
    spec.m = ctx.s.integer("m");
    spec.j = ctx.s.integer("j");
    spec.c = ctx.s.has("c") ? parse_rational(ctx.s.str("c")) : Rational(1);
    spec.b = ctx.s.has("b") ? registry::parse_rule_list(ctx.s.str("b"), n)
                            : std::vector<Rational>(static_cast<size_t>(spec.j), Rational(1));
    if (ctx.s.has("sigma")) {
      std::stringstream ss(ctx.s.str("sigma"));
      std::string item;
      while (std::getline(ss, item, ',')) spec.sigma.push_back(std::stoi(item));
    }
    validate(spec);
  }
  ExactPolynomial lhs = flow_polynomial(spec, FlowAction::displayed);
  ExactPolynomial lhs_c = flow_polynomial(spec, FlowAction::composed);
  std::vector<Rational> b_disp = flow_b_shift(spec), b_comp = flow_b_shift_composed(spec);
  ExactPolynomial rhs = flow_hypergeometric_side(spec, b_disp);
  ExactPolynomial rhs_c = flow_hypergeometric_side(spec, b_comp);
  FlowCheck chk = flow_identity_check(spec);

  std::vector<std::pair<std::string, std::string>> meta = {
      {"n", std::to_string(spec.n)}, {"m", std::to_string(spec.m)}, {"j", std::to_string(spec.j)},
      {"c", to_string(spec.c)}};
  if (which) meta.insert(meta.begin(), {"case", to_string(*which)});
  CsvWriter csv(ctx.out / "flow.csv", ctx.meta(meta),
                {"k", "displayed", "hypergeometric_displayed", "composed", "hypergeometric_composed"});
  for (int k = 0; k <= lhs.n; ++k)
    csv.row({std::to_string(k), to_string(lhs[k]), to_string(k <= rhs.n ? rhs[k] : Rational(0)), to_string(lhs_c[k]),
             to_string(k <= rhs_c.n ? rhs_c[k] : Rational(0))});

  auto strs = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
  };
  json rep = {{"n", spec.n},
              {"m", spec.m},
              {"j", spec.j},
              {"c", to_string(spec.c)},
              {"b", strs(spec.b)},
              {"sigma", spec.sigma},
              {"b_shift_displayed", strs(b_disp)},
              {"b_shift_composed", strs(b_comp)},
              {"displayed_identity", chk.displayed_identity},
              {"composed_identity", chk.composed_identity},
              {"actions_agree", chk.actions_agree}};
  bool ok = chk.displayed_identity && chk.composed_identity;
  if (which) {
    rep["case"] = to_string(*which);
    if (auto closed = flow_case_closed_form(*which, spec, gamma_n)) {
      bool match = trimmed(*closed) == trimmed(lhs_c);
      rep["closed_form_match"] = match;
      ok = ok && match;
    }
    if (*which == FlowCase::IV) {
      json s = check_case_iv(spec.j);
      rep["s_transform"] = s;
      ok = ok && s["pass"].get<bool>();
    }
  }
  rep["pass"] = ok;
  write_json(ctx.out / "report.json", rep);
  return {rep, ok ? 0 : kCheckFailed};
}

// -- covariance --------------------------------------------------------------------------------

Result cmd_covariance(Context& ctx) {
  const int n = ctx.s.integer("n");
  const double sigma2 = ctx.s.real("sigma2");
  int m = 0;
  if (ctx.s.has("m")) {
    m = ctx.s.integer("m");
  } else {
    double lambda = registry::parse_real_rule(ctx.s.str("lambda"), n, 128).to_double();
    if (!(lambda > 0.0)) throw std::invalid_argument("covariance: lambda must be positive");
    m = static_cast<int>(std::lround(n / lambda));
  }
  if (m < 1) throw std::invalid_argument("covariance: m must be positive");
  const randmat::EntryDist dist = randmat::parse_entry_dist(ctx.s.str("dist"));
  const int seeds = ctx.s.integer("seeds");
  const long first = std::stol(ctx.s.str("seed"));
  if (seeds < 1) throw std::invalid_argument("covariance: seeds must be positive");

  std::vector<randmat::CovarianceRun> runs(static_cast<size_t>(seeds));
  parallel::parallel_for(runs.size(), [&](size_t i) {
    runs[i] = randmat::sample_covariance(n, m, dist, sigma2, static_cast<std::uint64_t>(first + static_cast<long>(i)));
  });
  randmat::CovarianceReport rep = randmat::covariance_deviation_report(runs, ctx.s.real("eps"));
  profiles::ClosedProfile g = profiles::gM_profile(sigma2, runs[0].lambda());

  std::vector<std::pair<std::string, std::string>> meta = {
      {"n", std::to_string(n)}, {"m", std::to_string(m)}, {"sigma2", num(sigma2)}, {"dist", to_string(dist)}};
  CsvWriter eigs(ctx.out / "eigs.csv", ctx.meta(meta), {"seed", "index", "eigenvalue"});
  CsvWriter coeffs(ctx.out / "coeffs.csv", ctx.meta(meta), {"seed", "k", "alpha", "log_coeff_over_n", "g_M"});
  double residual = 0.0;
  int clamped = 0;
  for (const auto& run : runs) {
    residual = std::max(residual, run.residual);
    clamped += run.clamped;
    for (size_t i = 0; i < run.eigenvalues.size(); ++i)
      eigs.row({std::to_string(run.seed), std::to_string(i), num(run.eigenvalues[i])});
    profiles::LogCoeffVector c = randmat::char_poly_coefficients(run);
    for (int k = 0; k <= n; ++k) {
      double alpha = static_cast<double>(k) / n;
      double gm = alpha > g.lo && alpha < g.hi ? g.g(alpha) : NAN;
      coeffs.row({std::to_string(run.seed), std::to_string(k), num(alpha), num(c.logs[k] / n), num(gm)});
    }
  }
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"seed", r.seed},
                    {"sup_deviation", r.sup_deviation},
                    {"outside_max", finite_or_text(r.outside_max)},
                    {"points", r.points}});
  json out = {{"n", n},
              {"m", m},
              {"lambda", rep.lambda},
              {"sigma2", sigma2},
              {"dist", to_string(dist)},
              {"eps", rep.eps},
              {"lambda_star", rep.lambda_star},
              {"g_M_sup", g.sup_g},
              {"rows", rows},
              {"mean_sup_deviation", rep.mean_sup_deviation},
              {"max_outside", finite_or_text(rep.max_outside)},
              {"eigen_residual", residual},
              {"clamped_eigenvalues", clamped}};
  write_json(ctx.out / "report.json", out);
  return {out, 0};
}

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"family", "generate a family's coefficients", with(kFamilyOptions, {{"n", "", "degree", false}}), cmd_family},
      {"roots", "isolate the zeros of a family member",
       with(kFamilyOptions, {{"n", "", "degree", false}, {"precision", "60", "root precision in bits", false}}),
       cmd_roots},
      {"law",
       "tabulate density, CDF, Cauchy transform and log potential",
       {{"name", "", "law name", false},
        {"param", "", "law parameter name=value (repeatable)", true},
        {"grid", "", "lo:hi:count", false},
        {"eps", "1e-9", "imaginary offset for G", false},
        {"moments", "0", "number of moments to report", false}},
       cmd_law},
      {"profile", "compare coefficient profiles to the closed form",
       with(kFamilyOptions, {{"n", "200", "degree or comma list", false}, {"eps", "0.1", "band margin", false}}),
       cmd_profile},
      {"compare", "KS distance of zeros to a limit law across n",
       with(kFamilyOptions, {{"n", "100,200,400", "comma list of degrees", false},
                             {"law", "", "law name (default: the family's)", false},
                             {"law_param", "", "law parameter name=value (repeatable)", true},
                             {"precision", "60", "root precision in bits", false}}),
       cmd_compare},
      {"freeconv", "finite free convolution and transform checks",
       {{"check", "all", "semigroup, lk, case_iv, appell, s_transform or all", false},
        {"n", "", "degree (per-check default)", false},
        {"family", "", "s_transform family", false},
        {"param", "", "family parameter name=value (repeatable)", true},
        {"j", "1", "case IV order", false},
        {"c", "0", "Appell shift", false},
        {"sigma2", "1", "Appell Gaussian variance", false},
        {"roots", "2", "Appell roots, ':'-separated", false},
        {"lo", "-0.8", "S grid start", false},
        {"hi", "-0.2", "S grid end", false},
        {"points", "61", "S grid size", false},
        {"precision", "60", "root precision in bits", false}},
       cmd_freeconv},
      {"flow", "verify the differential flow identity",
       {{"case", "", "I, II, III or IV", false},
        {"n", "1", "n", false},
        {"m", "1", "m", false},
        {"j", "1", "j", false},
        {"c", "", "c (default 1)", false},
        {"b", "", "b_1..b_j, ':'-separated", false},
        {"sigma", "", "permutation of 1..j, comma list", false},
        {"gamma_n", "", "Case I gamma_n", false}},
       cmd_flow},
      {"covariance", "sample covariance coefficient profiles",
       {{"n", "200", "dimension", false},
        {"lambda", "1", "n/m", false},
        {"m", "", "sample count (overrides lambda)", false},
        {"sigma2", "1", "entry variance", false},
        {"dist", "gaussian", "gaussian or rademacher", false},
        {"seeds", "5", "number of seeds", false},
        {"seed", "1", "first seed", false},
        {"eps", "0.1", "band margin", false}},
       cmd_covariance},
  };
  return list;
}

json error_json(const std::string& kind, const std::string& message, const std::string& command) {
  json e = {{"schema_version", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
  if (!command.empty()) e["error"]["command"] = command;
  return e;
}

std::string flag_name(const std::string& key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"zeroprof: zeros of polynomial families, limit laws and coefficient profiles"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  app.add_option("--out", out_dir, "output directory (default zeroprof-out/<command>)");

  struct Bound {
    const Command* cmd;
    CLI::App* sub;
    std::map<std::string, std::string> single;
    std::map<std::string, std::vector<std::string>> multi;
    std::map<std::string, CLI::Option*> opts;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());
  for (const auto& c : commands()) {
    Bound b{&c, app.add_subcommand(c.name, c.help), {}, {}, {}};
    bound.push_back(std::move(b));
  }
  for (auto& b : bound) {
    for (const auto& o : b.cmd->options) {
      std::string help = o.help + (o.fallback.empty() || o.multi ? "" : " [" + o.fallback + "]");
      b.opts[o.key] = o.multi ? b.sub->add_option(flag_name(o.key), b.multi[o.key], help)
                              : b.sub->add_option(flag_name(o.key), b.single[o.key], help);
    }
  }

  std::string active;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what(), "").dump() << "\n";
    return 2;
  }
  try {
    for (auto& b : bound) {
      if (!b.sub->parsed()) continue;
      active = b.cmd->name;
      Settings s(active, b.cmd->options);
      if (!config_path.empty()) s.load_config(config_path);
      for (const auto& o : b.cmd->options) {
        if (b.opts[o.key]->count() == 0) continue;
        if (o.multi)
          for (const auto& pair : b.multi[o.key]) s.add_flag_pair(o.key, pair);
        else
          s.set_flag(o.key, b.single[o.key]);
      }
      fs::path dir = out_dir.empty() ? fs::path("zeroprof-out") / active : fs::path(out_dir);
      fs::create_directories(dir);
      write_json(dir / "run.json", {{"schema_version", kSchemaVersion},
                                    {"tool", "zeroprof"},
                                    {"version", kToolVersion},
                                    {"command", active},
                                    {"settings", s.echo()}});
      Context ctx{s, dir};
      Result r = b.cmd->run(ctx);
      r.summary["schema_version"] = kSchemaVersion;
      r.summary["command"] = active;
      r.summary["out"] = dir.string();
      out << r.summary.dump() << "\n";
      return r.status;
    }
  } catch (const std::invalid_argument& e) {
    out << error_json("invalid_argument", e.what(), active).dump() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    out << error_json("domain_error", e.what(), active).dump() << "\n";
    return 1;
  } catch (const roots::NotRealRooted& e) {
    out << error_json("not_real_rooted", e.what(), active).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << error_json("runtime_error", e.what(), active).dump() << "\n";
    return 1;
  }
  out << error_json("usage", "no subcommand given", "").dump() << "\n";
  return 2;
}

}  // namespace zeroprof::cli
