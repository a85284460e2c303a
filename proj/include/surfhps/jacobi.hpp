#pragma once

#include "surfhps/core.hpp"

namespace surfhps {

// Jacobi polynomial P_m^{(alpha,beta)}(x), standard normalization
// (P_m^{(alpha,beta)}(1) = binom(m+alpha, m)), evaluated by the three-term
// recurrence. Requires alpha, beta > -1.
double jacobi_eval(int m, double alpha, double beta, double x);

// d/dx P_m^{(alpha,beta)}(x) = (m+alpha+beta+1)/2 * P_{m-1}^{(alpha+1,beta+1)}(x).
double jacobi_deriv(int m, double alpha, double beta, double x);

}  // namespace surfhps
