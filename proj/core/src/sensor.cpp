#include "hkt/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkt/error.hpp"

namespace hkt {

ButterworthLowPass::ButterworthLowPass(double cutoff_hz, double sample_rate_hz) : sample_rate_(sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * sample_rate_hz))
    throw ConfigError("filter cutoff must lie in (0, Nyquist)");
  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
  const double k2 = k * k;
  const double norm = 1.0 / (1.0 + std::numbers::sqrt2 * k + k2);
  b0_ = k2 * norm;
  b1_ = 2.0 * b0_;
  b2_ = b0_;
  a1_ = 2.0 * (k2 - 1.0) * norm;
  a2_ = (1.0 - std::numbers::sqrt2 * k + k2) * norm;
}

double ButterworthLowPass::step(double x) {
  const double y = b0_ * x + z1_;
  z1_ = b1_ * x - a1_ * y + z2_;
  z2_ = b2_ * x - a2_ * y;
  return y;
}

void ButterworthLowPass::reset(double value) {
  z2_ = (b2_ - a2_) * value;
  z1_ = (b1_ - a1_) * value + z2_;
}

std::complex<double> ButterworthLowPass::response(double frequency_hz) const {
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  return (b0_ + b1_ * z1 + b2_ * z2) / (1.0 + a1_ * z1 + a2_ * z2);
}

void SensorModel::validate(double dt) const {
  if (!std::isfinite(snr_db)) throw ConfigError("sensor SNR must be finite");
  if (!(dt > 0.0)) throw ConfigError("sample period must be positive");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 / dt)) throw ConfigError("filter cutoff must lie below Nyquist");
}

double noise_sigma(std::span<const double> signal, double snr_db) {
  if (signal.empty()) throw DomainError("empty signal");
  double power = 0.0;
  for (double x : signal) power += x * x;
  power /= static_cast<double>(signal.size());
  return std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
}

SensorChain::SensorChain(const SensorModel& model, double dt, double sigma, double initial_value)
    : filter_(model.cutoff_hz, 1.0 / dt), rng_(model.seed), noise_(0.0, sigma > 0.0 ? sigma : 1.0) {
  model.validate(dt);
  if (!(sigma >= 0.0)) throw DomainError("noise sigma must be >= 0");
  if (sigma == 0.0) noise_ = std::normal_distribution<double>(0.0, 1.0);
  zero_noise_ = sigma == 0.0;
  filter_.reset(initial_value);
}

double SensorChain::measure(double omega) {
  const double n = noise_(rng_);
  return std::max(0.0, filter_.step(omega + (zero_noise_ ? 0.0 : n)));
}

std::vector<double> apply_sensor_chain(std::span<const double> omega, double dt, const SensorModel& model) {
  if (omega.empty()) throw DomainError("sensor chain needs a non-empty series");
  model.validate(dt);
  const double sigma = noise_sigma(omega, model.snr_db);
  std::mt19937_64 rng(model.seed);
  std::vector<double> noisy(omega.size());
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (std::size_t i = 0; i < omega.size(); ++i) noisy[i] = omega[i] + noise(rng);
  } else {
    std::copy(omega.begin(), omega.end(), noisy.begin());
  }
  ButterworthLowPass filter(model.cutoff_hz, 1.0 / dt);
  filter.reset(noisy.front());
  std::vector<double> out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) out[i] = std::max(0.0, filter.step(noisy[i]));
  return out;
}

}  // namespace hkt
