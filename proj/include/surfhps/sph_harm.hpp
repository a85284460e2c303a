#pragma once

// Real spherical harmonics Y_l^m on the unit sphere, used as exact solutions
// for the Laplace-Beltrami operator: -lap_surface(Y_l^m) = l(l+1) Y_l^m.
//
// Convention: real-valued, orthonormal over the sphere, no Condon-Shortley
// phase.  For m > 0 the function is sqrt(2) * N_l^m * P_l^m(cos th) * cos(m ph),
// for m < 0 the sin(|m| ph) partner, and for m = 0 the zonal harmonic.
// Evaluation uses normalized recurrences stable up to high degree (l ~ 100).

#include "surfhps/core.hpp"

namespace surfhps {

// Evaluate Y_l^m at a point on (or near) the unit sphere; the input is
// normalized internally so slightly off-sphere points are safe.
double real_spherical_harmonic(int l, int m, const Vec3& x);

// Laplace-Beltrami eigenvalue: -lap Y_l^m = eigenvalue * Y_l^m.
inline double sph_harm_eigenvalue(int l) { return double(l) * (l + 1); }

// Convenience callable factory.
std::function<double(const Vec3&)> sph_harm_fn(int l, int m);

}  // namespace surfhps
