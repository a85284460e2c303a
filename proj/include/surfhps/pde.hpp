#pragma once

#include <functional>

#include "surfhps/core.hpp"

namespace surfhps {

// Variable-coefficient second-order operator in non-divergence form on the
// surface:
//   L u = sum_{i<=j} a_ijDxGi DxGj u + sum_i b_i DxGi u + c u,
// where DxGi denotes the i-th Cartesian component of the surface gradient.
// Only the upper triangle of `a` is used (mixed terms are not symmetrized).
struct PdeCoefficients {
  std::function<Mat3(const Vec3&)> a;
  std::function<Vec3(const Vec3&)> b;
  std::function<double(const Vec3&)> c;
};

// L = -Laplace-Beltrami + shift * identity.
PdeCoefficients shifted_laplace_beltrami(double shift = 0.0);

// Implicit reaction-diffusion step operator L = mass * I - diffusion * Laplace-Beltrami.
PdeCoefficients implicit_step_operator(double diffusion, double mass);

}  // namespace surfhps
