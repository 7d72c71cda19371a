#include <benchmark/benchmark.h>

#include "zeroprof/families.hpp"
#include "zeroprof/freeconv.hpp"
#include "zeroprof/limitlaws.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/randmat.hpp"
#include "zeroprof/roots.hpp"
#include "zeroprof/specialfn.hpp"

using namespace zeroprof;

static void BM_LambertW0(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specialfn::lambert_w0(x));
    x = x < 1e6 ? x * 1.7 : 0.1;
  }
}
BENCHMARK(BM_LambertW0);

static void BM_LambertW0Complex(benchmark::State& state) {
  specialfn::ComplexValue z(0.3, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(specialfn::lambert_w0_complex(z));
}
BENCHMARK(BM_LambertW0Complex);

static void BM_TouchardPoly(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(families::touchard_poly(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TouchardPoly)->Arg(100)->Arg(400);

static void BM_QLaguerrePoly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(families::little_q_laguerre_poly(n, 1, Rational(1) / 4, 512));
}
BENCHMARK(BM_QLaguerrePoly)->Arg(100)->Arg(200);

static void BM_IsolateRootsHermite(benchmark::State& state) {
  ExactPolynomial p = families::hermite_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(roots::isolate_real_roots(p));
}
BENCHMARK(BM_IsolateRootsHermite)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SturmCount(benchmark::State& state) {
  ExactPolynomial p = families::fubini_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(roots::sturm_count(p));
}
BENCHMARK(BM_SturmCount)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_KsDistance(benchmark::State& state) {
  ExactPolynomial p = families::hermite_poly(100);
  auto em = roots::scaled_measure(roots::empirical_measure(roots::isolate_real_roots(p), 100), 10.0);
  auto law = limitlaws::law_semicircle();
  for (auto _ : state) benchmark::DoNotOptimize(roots::ks_distance(em, *law));
}
BENCHMARK(BM_KsDistance);

static void BM_CauchyQuadrature(benchmark::State& state) {
  auto law = limitlaws::law_touchard();
  for (auto _ : state) benchmark::DoNotOptimize(limitlaws::cauchy_transform_quadrature(*law, 2.5));
}
BENCHMARK(BM_CauchyQuadrature);

static void BM_NormalizedPotential(benchmark::State& state) {
  auto law = limitlaws::law_eulerian();
  for (auto _ : state) benchmark::DoNotOptimize(limitlaws::normalized_log_potential(*law, 3.0));
}
BENCHMARK(BM_NormalizedPotential);

static void BM_EmpiricalProfile(benchmark::State& state) {
  ExactPolynomial p = families::fubini_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(profiles::empirical_profile(p));
}
BENCHMARK(BM_EmpiricalProfile)->Arg(200);

static void BM_InvertProfile(benchmark::State& state) {
  profiles::ClosedProfile g = profiles::closed_profile("eulerian");
  for (auto _ : state) benchmark::DoNotOptimize(profiles::invert_profile_to_tG(g, 3.0));
}
BENCHMARK(BM_InvertProfile);

static void BM_Boxtimes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExactPolynomial p = families::free_mult_poisson_poly(n, 2, 1), q = families::free_mult_poisson_poly(n, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(freeconv::boxtimes_n(p, q));
}
BENCHMARK(BM_Boxtimes)->Arg(20)->Arg(50);

static void BM_Boxplus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExactPolynomial p = families::hermite_poly(n), q = monic(families::laguerre_poly(n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(freeconv::boxplus_n(p, q));
}
BENCHMARK(BM_Boxplus)->Arg(20)->Arg(50);

static void BM_FlowPolynomial(benchmark::State& state) {
  freeconv::FlowSpec spec{static_cast<int>(state.range(0)), 2, 2, 1, {1, 2}, {2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(freeconv::flow_polynomial(spec));
}
BENCHMARK(BM_FlowPolynomial)->Arg(6)->Arg(12);

static void BM_SampleCovariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(randmat::sample_covariance(n, 2 * n, randmat::EntryDist::gaussian, 1.0, seed++));
}
BENCHMARK(BM_SampleCovariance)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_CharPolyCoefficients(benchmark::State& state) {
  auto run = randmat::sample_covariance(200, 400, randmat::EntryDist::gaussian, 1.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(randmat::char_poly_coefficients(run));
}
BENCHMARK(BM_CharPolyCoefficients);

BENCHMARK_MAIN();
