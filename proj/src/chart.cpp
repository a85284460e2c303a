#include "surfhps/chart.hpp"

#include <cmath>

namespace surfhps {

namespace {

// First fundamental form quantities from chart derivative samples.
// Fills gn, xi_coef for M sample points.
void metric_from_derivatives(const MatX& dx_xi, const MatX& dx_eta, VecX& gn, MatX& xi_coef) {
  const int m = static_cast<int>(dx_xi.rows());
  gn.resize(m);
  xi_coef.resize(m, 6);
  for (int p = 0; p < m; ++p) {
    const Vec3 jxi = dx_xi.row(p);
    const Vec3 jeta = dx_eta.row(p);
    const double e = jxi.dot(jxi);
    const double f = jxi.dot(jeta);
    const double g = jeta.dot(jeta);
    const double det = e * g - f * f;
    require(det > 0.0 && std::isfinite(det), ErrorCode::GeometryFailure,
            "degenerate chart: first fundamental form is singular");
    gn[p] = std::sqrt(det);
    for (int j = 0; j < 3; ++j) {
      xi_coef(p, j) = (g * jxi[j] - f * jeta[j]) / det;       // d xi / d x_j
      xi_coef(p, 3 + j) = (e * jeta[j] - f * jxi[j]) / det;   // d eta / d x_j
    }
  }
}

}  // namespace

MatX straight_map(const SurfaceMesh& mesh, int elem, const MatX& ref_pts) {
  require(elem >= 0 && elem < mesh.num_elems(), ErrorCode::InvalidArgument,
          "straight_map: element index out of range");
  const int m = static_cast<int>(ref_pts.rows());
  MatX out(m, 3);
  const auto& conn = mesh.elems[static_cast<size_t>(elem)];
  if (mesh.kind == MeshKind::Tri) {
    const Vec3 v0 = mesh.vertices[static_cast<size_t>(conn[0])];
    const Vec3 v1 = mesh.vertices[static_cast<size_t>(conn[1])];
    const Vec3 v2 = mesh.vertices[static_cast<size_t>(conn[2])];
    for (int p = 0; p < m; ++p) {
      const double xi = ref_pts(p, 0), eta = ref_pts(p, 1);
      out.row(p) = ((1.0 - xi - eta) * v0 + xi * v1 + eta * v2).transpose();
    }
  } else {
    const Vec3 v0 = mesh.vertices[static_cast<size_t>(conn[0])];
    const Vec3 v1 = mesh.vertices[static_cast<size_t>(conn[1])];
    const Vec3 v2 = mesh.vertices[static_cast<size_t>(conn[2])];
    const Vec3 v3 = mesh.vertices[static_cast<size_t>(conn[3])];
    for (int p = 0; p < m; ++p) {
      const double xi = ref_pts(p, 0), eta = ref_pts(p, 1);
      out.row(p) = 0.25 * ((1.0 - xi) * (1.0 - eta) * v0 + (1.0 + xi) * (1.0 - eta) * v1 +
                           (1.0 + xi) * (1.0 + eta) * v2 + (1.0 - xi) * (1.0 + eta) * v3)
                       .transpose();
    }
  }
  return out;
}

SurfaceMesh project_mesh_vertices(const SurfaceMesh& mesh, const Projector& projector) {
  SurfaceMesh out = mesh;
  for (auto& v : out.vertices) v = projector.project(v);
  return out;
}

ChartedElement chart_element(const SurfaceMesh& mesh, int elem, const ReferenceBasis& basis,
                             const Projector& projector) {
  require((mesh.kind == MeshKind::Tri) == (basis.kind == ElemKind::Tri),
          ErrorCode::InvalidArgument, "chart_element: mesh/basis element kind mismatch");
  ChartedElement c;
  c.elem = elem;
  MatX flat = straight_map(mesh, elem, basis.nodes);
  c.x.resize(basis.num_nodes, 3);
  for (int p = 0; p < basis.num_nodes; ++p) c.x.row(p) = projector.project(flat.row(p)).transpose();
  c.dx_xi = basis.d_xi * c.x;
  c.dx_eta = basis.d_eta * c.x;
  metric_from_derivatives(c.dx_xi, c.dx_eta, c.gn, c.xi_coef);
  c.w_area = basis.w_nodal.cwiseProduct(c.gn);
  return c;
}

ChartedElement chart_from_nodes(int elem, const MatX& x_nodes, const ReferenceBasis& basis) {
  require(x_nodes.rows() == basis.num_nodes && x_nodes.cols() == 3, ErrorCode::InvalidArgument,
          "chart_from_nodes: node block shape mismatch");
  ChartedElement c;
  c.elem = elem;
  c.x = x_nodes;
  c.dx_xi = basis.d_xi * c.x;
  c.dx_eta = basis.d_eta * c.x;
  metric_from_derivatives(c.dx_xi, c.dx_eta, c.gn, c.xi_coef);
  c.w_area = basis.w_nodal.cwiseProduct(c.gn);
  return c;
}

std::vector<ChartedElement> chart_all(const SurfaceMesh& mesh, const ReferenceBasis& basis,
                                      const Projector& projector) {
  std::vector<ChartedElement> charts;
  charts.reserve(static_cast<size_t>(mesh.num_elems()));
  for (int e = 0; e < mesh.num_elems(); ++e)
    charts.push_back(chart_element(mesh, e, basis, projector));
  return charts;
}

ChartSamples chart_at(const ChartedElement& chart, const ReferenceBasis& basis,
                      const MatX& ref_pts) {
  ChartSamples s;
  const MatX rows = basis.eval_rows(ref_pts);
  MatX drows_xi, drows_eta;
  basis.deriv_rows(ref_pts, drows_xi, drows_eta);
  s.x = rows * chart.x;
  s.dx_xi = drows_xi * chart.x;
  s.dx_eta = drows_eta * chart.x;
  metric_from_derivatives(s.dx_xi, s.dx_eta, s.gn, s.xi_coef);
  return s;
}

Vec3 binormal_vector(const Vec3& dxi, const Vec3& deta, const ReferenceBasis& basis, int edge) {
  const Vec2 rt = basis.edge_ref_tangent(edge);
  const Vec2 rn = basis.edge_ref_normal(edge);
  Vec3 tang = dxi * rt[0] + deta * rt[1];
  const double tn = tang.norm();
  require(tn > 0.0, ErrorCode::GeometryFailure, "binormal_vector: degenerate edge tangent");
  tang /= tn;
  Vec3 out = dxi * rn[0] + deta * rn[1];
  out -= out.dot(tang) * tang;
  const double on = out.norm();
  require(on > 0.0, ErrorCode::GeometryFailure, "binormal_vector: degenerate edge normal");
  return out / on;
}

double element_area(const ChartedElement& chart, const ReferenceBasis& basis, int q) {
  if (q <= 0) q = 2 * (basis.n + 1);
  const RefQuadrature quad = dense_quadrature(basis.kind, q);
  const ChartSamples s = chart_at(chart, basis, quad.pts);
  return quad.w.dot(s.gn);
}

double surface_area(const std::vector<ChartedElement>& charts, const ReferenceBasis& basis,
                    int q) {
  double total = 0.0;
  for (const auto& c : charts) total += element_area(c, basis, q);
  return total;
}

}  // namespace surfhps
