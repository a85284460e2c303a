#pragma once

#include <utility>
#include <vector>

#include "surfhps/core.hpp"

namespace surfhps {

// Orthonormal Dubiner basis on the reference triangle
//   T = {(xi, eta): xi >= 0, eta >= 0, xi + eta <= 1}.
//
//   phi_ij(xi, eta) = sqrt(2(2i+1)(i+j+1)) * (1-eta)^i
//                     * P_i^{(0,0)}(2xi/(1-eta) - 1) * P_j^{(2i+1,0)}(2eta - 1)
//
// The (1-eta)^i prefactor cancels the pole of the first Jacobi argument; the
// evaluation below expands the product algebraically so eta = 1 is regular.
// The modes are L2-orthonormal on T (verified by quadrature in the tests).

double dubiner_eval(int i, int j, double xi, double eta);

// Value and partial derivatives at one point.
void dubiner_eval_grad(int i, int j, double xi, double eta,
                       double& value, double& d_xi, double& d_eta);

// Index pairs (i, j), i + j <= n, in the canonical column order used by the
// Vandermonde matrices: i major, j minor.
std::vector<std::pair<int, int>> dubiner_index_pairs(int n);

// Vandermonde-style tables: row p = point p, column k = mode k (canonical
// order). points is Mx2 (xi, eta).
MatX dubiner_vandermonde(int n, const MatX& points);
void dubiner_vandermonde_grad(int n, const MatX& points, MatX& v_xi, MatX& v_eta);

}  // namespace surfhps
