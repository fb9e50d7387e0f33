#include <benchmark/benchmark.h>

#include <memory>

#include "hkt/bem.hpp"
#include "hkt/geometry.hpp"
#include "hkt/polar.hpp"

namespace {

hkt::RotorModel rotor() {
  return {hkt::baseline_geometry(), std::make_shared<const hkt::AirfoilPolar>(hkt::default_polar())};
}

void BM_SectionSolve(benchmark::State& state) {
  const auto r = rotor();
  const auto rc = hkt::RotorConstants::of(r.geometry());
  const auto& seg = r.geometry().segments[5];
  for (auto _ : state)
    benchmark::DoNotOptimize(hkt::solve_bem_section(seg, rc, 1.5, 10.0, r.polar(), r.fluid()));
}
BENCHMARK(BM_SectionSolve);

void BM_RotorTorque(benchmark::State& state) {
  const auto r = rotor();
  for (auto _ : state) benchmark::DoNotOptimize(r.torque(1.5, 10.0));
}
BENCHMARK(BM_RotorTorque);

// Dual-number pass plus implicit differentiation, all segments.
void BM_RotorTorqueGradient(benchmark::State& state) {
  const auto r = rotor();
  hkt::TorqueGradient g;
  for (auto _ : state) {
    r.torque_gradient(1.5, 10.0, g);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_RotorTorqueGradient);

void BM_CpCurve(benchmark::State& state) {
  const auto r = rotor();
  const auto grid = hkt::tsr_grid(1.0, 12.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hkt::cp_curve(r.geometry(), r.polar(), r.fluid(), grid));
}
BENCHMARK(BM_CpCurve)->Arg(45)->Arg(221);

void BM_PolarLookup(benchmark::State& state) {
  const auto polar = hkt::default_polar();
  double alpha = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hkt::interpolate_polar(polar, alpha));
    alpha = alpha > 40.0 ? -20.0 : alpha + 0.37;
  }
}
BENCHMARK(BM_PolarLookup);

}  // namespace

BENCHMARK_MAIN();
