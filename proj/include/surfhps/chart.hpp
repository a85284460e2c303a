#pragma once

#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/projector.hpp"
#include "surfhps/reference_basis.hpp"
#include "surfhps/surface_mesh.hpp"

namespace surfhps {

// Degree-n polynomial chart of one curved element: the interpolant of the
// composed map (projector o straight-element map) sampled at the reference
// nodes. All geometric quantities below are evaluated at the nodes from that
// interpolant, so off-node evaluation must interpolate the stored samples
// (not re-project).
struct ChartedElement {
  int elem = -1;
  MatX x;       // N x 3 surface coordinates
  MatX dx_xi;   // N x 3 chart derivative d x / d xi
  MatX dx_eta;  // N x 3 chart derivative d x / d eta
  VecX gn;      // sqrt(det g), g = J^T J the first fundamental form
  // Surface-gradient coefficients: rows of the chart Jacobian pseudo-inverse
  // g^{-1} J^T. Column layout: (dxi/dx1, dxi/dx2, dxi/dx3, deta/dx1, ...).
  MatX xi_coef;  // N x 6
  VecX w_area;   // nodal quadrature weight * gn (degree-n surface quadrature)
};

// Straight-element map: multilinear for quads, affine for triangles,
// evaluated at the given reference points (M x 2) -> M x 3.
MatX straight_map(const SurfaceMesh& mesh, int elem, const MatX& ref_pts);

// Snap every mesh vertex onto the surface (e.g. after refinement introduced
// off-surface midpoints).
SurfaceMesh project_mesh_vertices(const SurfaceMesh& mesh, const Projector& projector);

ChartedElement chart_element(const SurfaceMesh& mesh, int elem,
                             const ReferenceBasis& basis, const Projector& projector);

// Chart from prescribed nodal positions (evolving surfaces move the chart
// nodes as material points; no projection is involved).
ChartedElement chart_from_nodes(int elem, const MatX& x_nodes, const ReferenceBasis& basis);

std::vector<ChartedElement> chart_all(const SurfaceMesh& mesh, const ReferenceBasis& basis,
                                      const Projector& projector);

// Chart data interpolated at arbitrary reference points.
struct ChartSamples {
  MatX x, dx_xi, dx_eta;  // M x 3
  VecX gn;                // M
  MatX xi_coef;           // M x 6
};
ChartSamples chart_at(const ChartedElement& chart, const ReferenceBasis& basis,
                      const MatX& ref_pts);

// Unit binormal (tangent to the surface, normal to edge `edge`, outward) at
// one chart sample.
Vec3 binormal_vector(const Vec3& dxi, const Vec3& deta, const ReferenceBasis& basis, int edge);

// High-accuracy element/surface area via a dense off-node quadrature of the
// chart interpolant (q points per direction).
double element_area(const ChartedElement& chart, const ReferenceBasis& basis, int q = 0);
double surface_area(const std::vector<ChartedElement>& charts, const ReferenceBasis& basis,
                    int q = 0);

}  // namespace surfhps
