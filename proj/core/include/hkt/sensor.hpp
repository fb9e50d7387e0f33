#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hkt {

/// Second-order Butterworth low-pass from the bilinear transform with
/// frequency prewarping (exact -3 dB at the cutoff).
class ButterworthLowPass {
 public:
  ButterworthLowPass(double cutoff_hz, double sample_rate_hz);

  double step(double x);
  /// Sets the internal state to the steady state for a constant input.
  void reset(double value);

  std::complex<double> response(double frequency_hz) const;
  double gain(double frequency_hz) const { return std::abs(response(frequency_hz)); }

  double b0() const { return b0_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }

 private:
  double sample_rate_;
  double b0_, b1_, b2_, a1_, a2_;
  double z1_ = 0.0, z2_ = 0.0;  // transposed direct form II
};

struct SensorModel {
  double snr_db = 20.0;
  double cutoff_hz = 0.5;
  std::uint64_t seed = 0;

  /// Throws ConfigError for a non-finite SNR or a cutoff at/above Nyquist.
  void validate(double dt) const;
};

/// Noise standard deviation giving `snr_db` against the mean power of `signal`.
double noise_sigma(std::span<const double> signal, double snr_db);

/// Online noisy-and-filtered speed measurement: y = max(0, F[omega + n]).
class SensorChain {
 public:
  SensorChain(const SensorModel& model, double dt, double sigma, double initial_value);
  double measure(double omega);

 private:
  ButterworthLowPass filter_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_;
  bool zero_noise_ = false;
};

/// Batch version: sigma from the series itself, filter started at the first
/// noisy sample.
std::vector<double> apply_sensor_chain(std::span<const double> omega, double dt, const SensorModel& model);

}  // namespace hkt
