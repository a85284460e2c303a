#pragma once

#include <vector>

#include "surfhps/core.hpp"

namespace surfhps {

// One-dimensional Chebyshev--Lobatto collocation grid on [-1, 1].
// Points are x_k = cos(k*pi/n), k = 0..n, stored in decreasing order
// (x_0 = 1, x_n = -1); the set is symmetric about 0.
struct Grid1D {
  int n = 0;         // polynomial degree; n+1 points
  VecX points;       // size n+1, decreasing
  MatX diff;         // (n+1)x(n+1) spectral differentiation matrix
  VecX weights;      // Clenshaw-Curtis quadrature weights for [-1, 1]
};

// Collocation points only.
VecX chebyshev_lobatto(int n);

// First-derivative collocation matrix for the Lobatto grid (row i applies
// d/dx of the degree-n interpolant at x_i). Diagonal uses the negative-sum
// trick for accuracy.
MatX chebyshev_diff_matrix(int n);

// Clenshaw-Curtis weights for the same grid; sum equals 2 and the rule
// integrates polynomials of degree <= n exactly.
VecX clenshaw_curtis_weights(int n);

Grid1D make_grid_1d(int n);

// Barycentric weights for an arbitrary 1-D point set (used for off-node
// evaluation of Lobatto-grid interpolants).
VecX barycentric_weights(const VecX& points);

// Row vector mapping nodal values on `points` to the interpolant value at x.
VecX barycentric_eval_row(const VecX& points, const VecX& bary_w, double x);

// Row vector mapping nodal values to the interpolant derivative at x.
// `diff` is the collocation differentiation matrix for `points` (used when x
// coincides with a node).
VecX barycentric_deriv_row(const VecX& points, const VecX& bary_w, const MatX& diff, double x);

// Gauss-Legendre rule on [-1, 1] (nodes ascending). Exact through degree 2m-1.
void gauss_legendre(int m, VecX& nodes, VecX& weights);

}  // namespace surfhps
