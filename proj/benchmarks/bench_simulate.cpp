#include <benchmark/benchmark.h>

#include <memory>

#include "hkt/oloc.hpp"
#include "hkt/simulate.hpp"

namespace {

hkt::RotorModel rotor() {
  return {hkt::baseline_geometry(), std::make_shared<const hkt::AirfoilPolar>(hkt::default_polar())};
}

hkt::ControlLaw quadratic_law() {
  return {hkt::QuadraticFeedback{12.58}, hkt::Saturation{700.0, 0.001}};
}

void BM_Simulate(benchmark::State& state) {
  const auto r = rotor();
  const auto law = quadratic_law();
  hkt::SimulationSettings s;
  s.horizon = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hkt::simulate(r, law, hkt::FlowProfile::sinusoidal_inflow(), s).energy);
}
BENCHMARK(BM_Simulate)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SimulateSensor(benchmark::State& state) {
  const auto r = rotor();
  const auto law = quadratic_law();
  hkt::SimulationSettings s;
  s.horizon = 50.0;
  s.sensor = hkt::SensorModel{};
  for (auto _ : state) benchmark::DoNotOptimize(hkt::simulate(r, law, hkt::FlowProfile::sinusoidal_inflow(), s).energy);
}
BENCHMARK(BM_SimulateSensor)->Unit(benchmark::kMillisecond);

// Exact forward sensitivities w.r.t. gain, chords and twists.
void BM_SimulateWithGradient(benchmark::State& state) {
  const auto r = rotor();
  const auto law = quadratic_law();
  hkt::SimulationSettings s;
  s.horizon = 50.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(hkt::simulate_with_gradient(r, law, hkt::FlowProfile::sinusoidal_inflow(), s).energy);
}
BENCHMARK(BM_SimulateWithGradient)->Unit(benchmark::kMillisecond);

void BM_TranscriptionEvaluate(benchmark::State& state) {
  hkt::TranscriptionOptions o;
  o.free_geometry = state.range(0) != 0;
  o.u_max = 700.0;
  const hkt::TranscribedProblem p(rotor(), hkt::FlowProfile::sinusoidal_inflow(), 50.0, o);
  const auto x = p.initial_guess(quadratic_law());
  hkt::nlp::Evaluation ev;
  for (auto _ : state) {
    p.evaluate(x, true, ev);
    benchmark::DoNotOptimize(ev);
  }
}
BENCHMARK(BM_TranscriptionEvaluate)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
