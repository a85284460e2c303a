#pragma once

// Implicit-explicit backward differentiation (IMEX-BDF) tableaux of orders
// 1 through 4.  A step for u_t = delta * lap_surface(u) + F(u) reads
//
//   (I - omega*dt*delta*lap) u^{n+1} = sum_i a[i] u^{n-i} + dt * sum_i b[i] F^{n-i}
//
// so the implicit solve always involves the shifted elliptic operator
// (1/(omega*dt)) I - delta*lap applied through a direct solver.

#include <array>

#include "surfhps/core.hpp"

namespace surfhps {

struct ImexBdfTableau {
    int steps = 1;          // M: number of history states used
    double omega = 1.0;     // implicit weight
    std::array<double, 4> a{};  // weights on u^{n}, u^{n-1}, ...
    std::array<double, 4> b{};  // weights on F^{n}, F^{n-1}, ...
};

// Tableau for the M-step scheme, M in {1,2,3,4}.
ImexBdfTableau imex_bdf_tableau(int steps);

}  // namespace surfhps
