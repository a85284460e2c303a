#pragma once

// Reaction kinetics for the activator-inhibitor Turing system and its coupled
// four-species extension.  The standalone two-species system is
//
//   d u1/dt = delta_u1 * lap u1 + alpha*u1*(1 - r1*u2^2) + u2*(1 - r2*u1)
//   d u2/dt = delta_u2 * lap u2 + beta*u2 + alpha*r1*u1*u2^2 + u1*(gamma + r2*u2)
//
// (the u2 reaction written multiplied out so beta = 0 would be harmless).
// With gamma = -alpha, (0,0) is a unique equilibrium of the kinetics.
//
// The coupled model adds a second pair (v1, v2) whose kinetics are modulated
// by (u1, u2) through linear/quadratic/cubic couplings q1, q2, q3:
//
//   d v1/dt = ... + q1*u1 + q2*u1*v2 + q3*u1*v2^2
//   d v2/dt = ... - q2*u2*v1 - q3*u2^2*v1
//
// while the (u1, u2) pair evolves by the standalone kinetics, so setting
// q1 = q2 = q3 = 0 decouples the model into two independent Turing systems.

#include <vector>

#include "surfhps/core.hpp"

namespace surfhps {

struct TuringParams {
    double alpha = 0.899;
    double beta = -0.91;
    double gamma = -0.899;
    double r1 = 0.02;
    double r2 = 0.2;
    double delta_u1 = 0.516 * 5e-3;
    double delta_u2 = 5e-3;
};

struct CoupledParams {
    TuringParams u;  // driving pair (u1, u2)
    TuringParams v;  // driven pair (v1, v2)
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
};

// Reaction terms (F1, F2) for nodal vectors u1, u2 (same length).
void turing_rhs(const TuringParams& p, const VecX& u1, const VecX& u2, VecX& f1, VecX& f2);

// Reaction terms for the four species ordered (u1, u2, v1, v2).
void coupled_rhs(const CoupledParams& p, const std::vector<VecX>& species,
                 std::vector<VecX>& rhs);

// Species-wise diffusion coefficients for each system.
std::vector<double> turing_diffusions(const TuringParams& p);
std::vector<double> coupled_diffusions(const CoupledParams& p);

}  // namespace surfhps
