#pragma once

#include <Eigen/LU>

#include "surfhps/chart.hpp"
#include "surfhps/core.hpp"
#include "surfhps/pde.hpp"
#include "surfhps/reference_basis.hpp"

namespace surfhps {

// Elementwise spectral collocation operators for one charted element.
//
// The full collocation matrix L (N x N) discretizes the PDE at every node.
// Partitioning nodes into interior (i) and boundary (b) sets gives the local
// solve u_i = -L_ii^{-1} L_ib u_b + L_ii^{-1} f_i and a boundary flux map.
//
// The flux operator has one row per boundary node:
//  - edge-interior rows apply the outward binormal derivative n_b . grad_G;
//  - corner rows apply the PDE residual row scaled to unit max-norm, which is
//    the only single-valued choice at mesh vertices where several elements
//    meet at arbitrary valence. The scale is kept so the forcing contribution
//    of those rows can be assembled during merges.
struct LocalOperators {
  int elem = -1;
  Eigen::PartialPivLU<MatX> lu_ii;  // factorization of L_ii
  MatX s;                           // interior values from boundary data: -L_ii^{-1} L_ib
  MatX flux_int, flux_bnd;          // flux operator split by interior/boundary columns
  MatX dtn;                         // boundary-to-flux map: flux_int * s + flux_bnd
  VecX corner_rhs_scale;            // per boundary row: PDE-row scale at corners, else 0
};

MatX surface_gradient_component(const ChartedElement& chart, const ReferenceBasis& basis, int j);

// Full N x N collocation matrix of the PDE on the chart.
MatX collocation_matrix(const ChartedElement& chart, const ReferenceBasis& basis,
                        const PdeCoefficients& pde);

LocalOperators assemble_local(const ChartedElement& chart, const ReferenceBasis& basis,
                              const PdeCoefficients& pde);

// Solve the element problem with Dirichlet data h (boundary order) and
// forcing f (all nodes, node order); returns all N nodal values.
VecX local_solve(const LocalOperators& ops, const ReferenceBasis& basis, const VecX& h,
                 const VecX& f);

// Particular (zero-boundary-data) response to forcing f: interior values and
// the boundary flux they generate, including the scaled corner forcing terms.
void particular_response(const LocalOperators& ops, const ReferenceBasis& basis, const VecX& f,
                         VecX& v_int, VecX& v_flux);

// Plain outward binormal derivative at every boundary node (corners use the
// lowest-index adjacent edge); diagnostic companion to the flux operator.
MatX binormal_derivative_operator(const ChartedElement& chart, const ReferenceBasis& basis);

}  // namespace surfhps
