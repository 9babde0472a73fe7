// Microbenchmarks for the hot paths: the quadrature kernel, level-set
// quantities, curve assembly, solid reconstructions, and certification.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "shrinkfreq/certify.hpp"
#include "shrinkfreq/fields.hpp"
#include "shrinkfreq/frequency.hpp"
#include "shrinkfreq/models.hpp"
#include "shrinkfreq/numerics.hpp"

using namespace shrinkfreq;

namespace {

void BM_integrate_smooth(benchmark::State& state) {
  NumericsConfig cfg;
  auto fn = [](double x) { return std::exp(-x * x / 4.0) * x * x; };
  for (auto _ : state) {
    Integral r = integrate(fn, 0.0, 40.0, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_integrate_smooth);

void BM_integrate_endpoint_singularity(benchmark::State& state) {
  NumericsConfig cfg;
  IntegrateOptions opt;
  opt.lower_exponent = -0.5;
  auto fn = [](double x) { return std::cos(x) / std::sqrt(x - 2.0); };
  for (auto _ : state) {
    Integral r = integrate(fn, 2.0, 10.0, cfg, opt);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_integrate_endpoint_singularity);

void BM_level_quantities_cylinder(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:3:2");
  const Field f = parse_field(m, "prod:1");
  for (auto _ : state) {
    const double i = I_boundary(m, f, 10.0);
    const double d = D_boundary(m, f, 10.0);
    benchmark::DoNotOptimize(i + d);
  }
}
BENCHMARK(BM_level_quantities_cylinder);

void BM_curve_exact(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:1:0");
  const Field f = parse_field(m, "hermite:4");
  const std::vector<double> grid = model_grid(m, GridSpec{});
  for (auto _ : state) {
    FrequencyCurve c = curve(m, f, f.lambda(), 0.5, grid);
    benchmark::DoNotOptimize(c.U.back());
  }
}
BENCHMARK(BM_curve_exact)->Unit(benchmark::kMillisecond);

void BM_curve_growing(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:1:0");
  const Field f = parse_field(m, "grow:0.75:even");
  const std::vector<double> grid = model_grid(m, GridSpec{0.0, 40.0, 160});
  for (auto _ : state) {
    FrequencyCurve c = curve(m, f, 0.75, 0.5, grid);
    benchmark::DoNotOptimize(c.U.back());
  }
}
BENCHMARK(BM_curve_growing)->Unit(benchmark::kMillisecond);

void BM_D_solid_exact_route(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:1:0");
  const Field f = parse_field(m, "hermite:4");
  for (auto _ : state) {
    SolidResult r = D_solid(m, f, f.lambda(), 30.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_D_solid_exact_route);

void BM_D_solid_log_route(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:1:0");
  const Field f = parse_field(m, "grow:0.75:even");
  for (auto _ : state) {
    SolidResult r = D_solid(m, f, 0.75, 30.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_D_solid_log_route);

void BM_certify_frequency_bound(benchmark::State& state) {
  const SolitonModel m = parse_model("gc:1:0");
  const Field f = parse_field(m, "hermite:4");
  const std::vector<double> grid = model_grid(m, GridSpec{});
  const FrequencyCurve c = curve(m, f, f.lambda(), 0.5, grid);
  for (auto _ : state) {
    Certificate cert = certify_T11(c, f.lambda(), 1.0);
    benchmark::DoNotOptimize(cert.min_margin);
  }
}
BENCHMARK(BM_certify_frequency_bound);

void BM_certify_small_suite(benchmark::State& state) {
  for (auto _ : state) {
    std::vector<Certificate> certs = run_catalog_suite("T43");
    benchmark::DoNotOptimize(certs.size());
  }
}
BENCHMARK(BM_certify_small_suite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
