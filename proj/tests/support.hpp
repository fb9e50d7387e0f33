#pragma once

#include <cmath>
#include <memory>

#include "hkt/bem.hpp"
#include "hkt/geometry.hpp"
#include "hkt/polar.hpp"

namespace hkt::test {

inline RotorModel baseline_rotor(AirfoilPolar::Interpolation rule = AirfoilPolar::Interpolation::MonotoneCubic) {
  return RotorModel(baseline_geometry(), std::make_shared<const AirfoilPolar>(default_polar({}, rule)));
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace hkt::test
