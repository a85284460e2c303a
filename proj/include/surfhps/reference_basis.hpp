#pragma once

#include <array>
#include <vector>

#include "surfhps/chebyshev.hpp"
#include "surfhps/core.hpp"
#include "surfhps/simplex_nodes.hpp"

namespace surfhps {

enum class ElemKind { Tri, Quad };

// Collocation machinery on a reference element.
//
// Quad: tensor Chebyshev-Lobatto grid on [-1,1]^2; node m = i_xi + (n+1)*i_eta
// so that D_xi = I (x) D1 and D_eta = D1 (x) I (Kronecker products of the 1-D
// differentiation matrix). (n+1)^2 nodes, 4n boundary, (n-1)^2 interior.
//
// Tri: degree-n simplex nodes on T = {xi,eta >= 0, xi+eta <= 1}; nodal
// differentiation via the orthonormal modal Vandermonde K (D = K' * K^{-1},
// solves by column-pivoted QR). (n+1)(n+2)/2 nodes, 3n boundary,
// (n-1)(n-2)/2 interior.
//
// Boundary node order: corners first (local vertex order), then per-edge
// interior nodes in traversal order. Local edges run corner k -> corner k+1
// (mod #corners); for the quad the corner reference coords are
// (-1,-1), (1,-1), (1,1), (-1,1); for the triangle (0,0), (1,0), (0,1).
struct ReferenceBasis {
  ElemKind kind = ElemKind::Quad;
  int n = 0;
  int num_nodes = 0;
  int num_corners = 0;
  MatX nodes;  // N x 2

  MatX d_xi, d_eta;  // N x N nodal differentiation

  std::vector<int> interior_ids;
  std::vector<int> boundary_ids;  // corners then edge interiors
  std::vector<int> corner_ids;    // node ids of the corners, vertex order

  std::vector<std::vector<int>> edge_interior;   // per edge, traversal order
  std::vector<std::array<int, 2>> edge_corners;  // (start, end) local vertex ids

  // Per boundary ROW (index into boundary_ids):
  std::vector<int> owning_edge;     // lowest local edge containing the node
  std::vector<bool> is_corner_row;  // true for the first num_corners rows

  std::vector<int> boundary_row_of_node;  // node id -> row in boundary_ids, else -1

  VecX w_nodal;  // reference quadrature weights at nodes (exact for degree <= n)

  double cond_vandermonde = 1.0;  // 2-norm condition of the modal Vandermonde

  // Triangle-only modal data (empty for quads).
  MatX k_vand;   // Dubiner Vandermonde at the nodes
  MatX k_inv;    // its inverse (column-pivoted QR solve)

  // Quad-only 1-D data.
  Grid1D grid;
  VecX bary_w;

  int edge_count() const { return num_corners; }
  int nodes_per_edge() const { return n + 1; }

  // Reference-space outward edge normal / unit traversal tangent for edge e.
  Vec2 edge_ref_normal(int e) const;
  Vec2 edge_ref_tangent(int e) const;
  // Reference coordinates at parameter t in [0,1] along edge e (traversal order).
  Vec2 edge_point(int e, double t) const;

  // Off-node evaluation: rows mapping nodal values to interpolant values /
  // derivatives at arbitrary reference points (M x 2).
  MatX eval_rows(const MatX& pts) const;
  void deriv_rows(const MatX& pts, MatX& rows_xi, MatX& rows_eta) const;

  // Cardinal (Lagrange) function m evaluated at one point.
  double lagrange_eval(int m, double xi, double eta) const;
};

ReferenceBasis build_reference_basis(ElemKind kind, int n);

// Dense quadrature on the reference element for diagnostics/integrals that
// need more accuracy than the nodal rule: tensor Gauss-Legendre (quad) or a
// Duffy-collapsed tensor rule (tri). `q` = points per direction.
struct RefQuadrature {
  MatX pts;  // M x 2
  VecX w;    // reference weights
};
RefQuadrature dense_quadrature(ElemKind kind, int q);

}  // namespace surfhps
