#pragma once

#include <array>
#include <vector>

#include "surfhps/core.hpp"

namespace surfhps {

// Interpolation nodes for degree n on the reference triangle
// T = {(xi, eta): xi >= 0, eta >= 0, xi + eta <= 1}, N = (n+1)(n+2)/2 points.
//
// Construction (warp & blend): the equispaced barycentric lattice is warped
// so that every edge trace becomes the 1-D Gauss-Lobatto-Legendre grid, with
// the edge warps blended into the interior using order-tuned coefficients.
// This keeps the interpolation Vandermonde well conditioned at high order.
// Edge traces are symmetric under traversal reversal, so two elements
// sharing an edge sample identical physical points.
//
// Node order: vertices (0,1,2), then edge interiors for edges
// (v0->v1), (v1->v2), (v2->v0) in traversal order, then interior points.
// The first 3n nodes are therefore exactly the boundary nodes.
struct SimplexNodes {
  int n = 0;
  MatX coords;                                    // N x 2, (xi, eta)
  std::array<int, 3> vertex_ids{};                // {0, 1, 2}
  std::array<std::vector<int>, 3> edge_interior;  // ordered along each edge
  std::vector<int> boundary_ids;                  // size 3n
  std::vector<int> interior_ids;                  // size (n-1)(n-2)/2
};

SimplexNodes simplex_nodes(int n);

}  // namespace surfhps
