#include "surfhps/reference_basis.hpp"

#include <cmath>

#include "surfhps/dubiner.hpp"

namespace surfhps {

namespace {

void build_quad(ReferenceBasis& b) {
  const int n = b.n;
  const int np = n + 1;
  b.grid = make_grid_1d(n);
  b.bary_w = barycentric_weights(b.grid.points);
  b.num_nodes = np * np;
  b.num_corners = 4;
  b.nodes.resize(b.num_nodes, 2);
  auto idx = [np](int ixi, int ieta) { return ixi + np * ieta; };
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) {
      b.nodes(idx(i, j), 0) = b.grid.points[i];
      b.nodes(idx(i, j), 1) = b.grid.points[j];
    }

  b.d_xi = MatX::Zero(b.num_nodes, b.num_nodes);
  b.d_eta = MatX::Zero(b.num_nodes, b.num_nodes);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i)
      for (int k = 0; k < np; ++k) {
        b.d_xi(idx(i, j), idx(k, j)) = b.grid.diff(i, k);
        b.d_eta(idx(i, j), idx(i, k)) = b.grid.diff(j, k);
      }

  // Corner reference coords (-1,-1),(1,-1),(1,1),(-1,1): the 1-D grid is
  // decreasing, so xi = -1 is index n and xi = +1 is index 0.
  b.corner_ids = {idx(n, n), idx(0, n), idx(0, 0), idx(n, 0)};
  b.edge_corners = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  b.edge_interior.resize(4);
  for (int i = n - 1; i >= 1; --i) b.edge_interior[0].push_back(idx(i, n));  // eta=-1, xi rising
  for (int j = n - 1; j >= 1; --j) b.edge_interior[1].push_back(idx(0, j));  // xi=+1, eta rising
  for (int i = 1; i <= n - 1; ++i) b.edge_interior[2].push_back(idx(i, 0));  // eta=+1, xi falling
  for (int j = 1; j <= n - 1; ++j) b.edge_interior[3].push_back(idx(n, j));  // xi=-1, eta falling

  b.w_nodal.resize(b.num_nodes);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i)
      b.w_nodal[idx(i, j)] = b.grid.weights[i] * b.grid.weights[j];

  // Conditioning proxy: Chebyshev-polynomial Vandermonde on the 1-D grid.
  MatX v(np, np);
  for (int i = 0; i < np; ++i)
    for (int k = 0; k < np; ++k) v(i, k) = std::cos(k * std::acos(std::clamp(b.grid.points[i], -1.0, 1.0)));
  Eigen::JacobiSVD<MatX> svd(v);
  b.cond_vandermonde = svd.singularValues()(0) / svd.singularValues()(np - 1);
}

void build_tri(ReferenceBasis& b) {
  const int n = b.n;
  const SimplexNodes sn = simplex_nodes(n);
  b.num_nodes = static_cast<int>(sn.coords.rows());
  b.num_corners = 3;
  b.nodes = sn.coords;
  b.corner_ids = {sn.vertex_ids[0], sn.vertex_ids[1], sn.vertex_ids[2]};
  b.edge_corners = {{0, 1}, {1, 2}, {2, 0}};
  b.edge_interior = {sn.edge_interior[0], sn.edge_interior[1], sn.edge_interior[2]};

  b.k_vand = dubiner_vandermonde(n, b.nodes);
  Eigen::ColPivHouseholderQR<MatX> qr(b.k_vand);
  require(qr.isInvertible(), ErrorCode::SingularOperator,
          "build_reference_basis: simplex node set is not unisolvent");
  b.k_inv = qr.solve(MatX::Identity(b.num_nodes, b.num_nodes));

  MatX v_xi, v_eta;
  dubiner_vandermonde_grad(n, b.nodes, v_xi, v_eta);
  b.d_xi = v_xi * b.k_inv;
  b.d_eta = v_eta * b.k_inv;

  // Nodal quadrature: integral of cardinal fn m = (K^{-1})_{0m} * integral of
  // the constant mode phi_00 = sqrt(2), i.e. row 0 of K^{-1} divided by sqrt(2).
  b.w_nodal = b.k_inv.row(0).transpose() / std::sqrt(2.0);

  Eigen::JacobiSVD<MatX> svd(b.k_vand);
  b.cond_vandermonde = svd.singularValues()(0) / svd.singularValues()(b.num_nodes - 1);
}

void finish_common(ReferenceBasis& b) {
  // Boundary list: corners first, then edge interiors.
  b.boundary_ids = b.corner_ids;
  for (const auto& e : b.edge_interior)
    b.boundary_ids.insert(b.boundary_ids.end(), e.begin(), e.end());

  std::vector<bool> is_boundary(b.num_nodes, false);
  for (int id : b.boundary_ids) is_boundary[id] = true;
  b.interior_ids.clear();
  for (int p = 0; p < b.num_nodes; ++p)
    if (!is_boundary[p]) b.interior_ids.push_back(p);

  b.boundary_row_of_node.assign(b.num_nodes, -1);
  for (size_t r = 0; r < b.boundary_ids.size(); ++r)
    b.boundary_row_of_node[b.boundary_ids[r]] = static_cast<int>(r);

  const int ec = b.edge_count();
  b.owning_edge.assign(b.boundary_ids.size(), -1);
  b.is_corner_row.assign(b.boundary_ids.size(), false);
  for (int c = 0; c < b.num_corners; ++c) {
    b.is_corner_row[c] = true;
    // Lowest local edge index containing corner c: edge c-1 (mod ec) ends at c,
    // edge c starts at c; the minimum of those two indices.
    const int prev = (c + ec - 1) % ec;
    b.owning_edge[c] = std::min(prev, c);
  }
  int row = b.num_corners;
  for (int e = 0; e < ec; ++e)
    for (size_t k = 0; k < b.edge_interior[e].size(); ++k) b.owning_edge[row++] = e;
}

}  // namespace

Vec2 ReferenceBasis::edge_ref_normal(int e) const {
  if (kind == ElemKind::Quad) {
    static const Vec2 nrm[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    return nrm[e];
  }
  static const double s = 1.0 / std::sqrt(2.0);
  static const Vec2 nrm[3] = {{0, -1}, {s, s}, {-1, 0}};
  return nrm[e];
}

Vec2 ReferenceBasis::edge_ref_tangent(int e) const {
  if (kind == ElemKind::Quad) {
    static const Vec2 tan[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tan[e];
  }
  static const double s = 1.0 / std::sqrt(2.0);
  static const Vec2 tan[3] = {{1, 0}, {-s, s}, {0, -1}};
  return tan[e];
}

Vec2 ReferenceBasis::edge_point(int e, double t) const {
  Vec2 a, c;
  if (kind == ElemKind::Quad) {
    static const Vec2 corner[4] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    a = corner[e];
    c = corner[(e + 1) % 4];
  } else {
    static const Vec2 corner[3] = {{0, 0}, {1, 0}, {0, 1}};
    a = corner[e];
    c = corner[(e + 1) % 3];
  }
  return (1.0 - t) * a + t * c;
}

MatX ReferenceBasis::eval_rows(const MatX& pts) const {
  const Eigen::Index m = pts.rows();
  MatX rows(m, num_nodes);
  if (kind == ElemKind::Tri) {
    rows = dubiner_vandermonde(n, pts) * k_inv;
    return rows;
  }
  const int np = n + 1;
  for (Eigen::Index p = 0; p < m; ++p) {
    const VecX rx = barycentric_eval_row(grid.points, bary_w, pts(p, 0));
    const VecX re = barycentric_eval_row(grid.points, bary_w, pts(p, 1));
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) rows(p, i + np * j) = rx[i] * re[j];
  }
  return rows;
}

void ReferenceBasis::deriv_rows(const MatX& pts, MatX& rows_xi, MatX& rows_eta) const {
  const Eigen::Index m = pts.rows();
  rows_xi.resize(m, num_nodes);
  rows_eta.resize(m, num_nodes);
  if (kind == ElemKind::Tri) {
    MatX v_xi, v_eta;
    dubiner_vandermonde_grad(n, pts, v_xi, v_eta);
    rows_xi = v_xi * k_inv;
    rows_eta = v_eta * k_inv;
    return;
  }
  const int np = n + 1;
  for (Eigen::Index p = 0; p < m; ++p) {
    const VecX rx = barycentric_eval_row(grid.points, bary_w, pts(p, 0));
    const VecX re = barycentric_eval_row(grid.points, bary_w, pts(p, 1));
    const VecX dx = barycentric_deriv_row(grid.points, bary_w, grid.diff, pts(p, 0));
    const VecX de = barycentric_deriv_row(grid.points, bary_w, grid.diff, pts(p, 1));
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        rows_xi(p, i + np * j) = dx[i] * re[j];
        rows_eta(p, i + np * j) = rx[i] * de[j];
      }
  }
}

double ReferenceBasis::lagrange_eval(int m, double xi, double eta) const {
  MatX pt(1, 2);
  pt << xi, eta;
  return eval_rows(pt)(0, m);
}

ReferenceBasis build_reference_basis(ElemKind kind, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "build_reference_basis: n must be >= 1");
  ReferenceBasis b;
  b.kind = kind;
  b.n = n;
  if (kind == ElemKind::Quad)
    build_quad(b);
  else
    build_tri(b);
  finish_common(b);
  return b;
}

RefQuadrature dense_quadrature(ElemKind kind, int q) {
  VecX x, w;
  gauss_legendre(q, x, w);
  RefQuadrature rq;
  if (kind == ElemKind::Quad) {
    rq.pts.resize(q * q, 2);
    rq.w.resize(q * q);
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) {
        rq.pts(i + q * j, 0) = x[i];
        rq.pts(i + q * j, 1) = x[j];
        rq.w[i + q * j] = w[i] * w[j];
      }
    return rq;
  }
  // Duffy collapse: (a, b) in [0,1]^2 -> (xi, eta) = (a(1-b), b), weight (1-b).
  rq.pts.resize(q * q, 2);
  rq.w.resize(q * q);
  for (int j = 0; j < q; ++j) {
    const double bj = 0.5 * (x[j] + 1.0), wj = 0.5 * w[j];
    for (int i = 0; i < q; ++i) {
      const double ai = 0.5 * (x[i] + 1.0), wi = 0.5 * w[i];
      rq.pts(i + q * j, 0) = ai * (1.0 - bj);
      rq.pts(i + q * j, 1) = bj;
      rq.w[i + q * j] = wi * wj * (1.0 - bj);
    }
  }
  return rq;
}

}  // namespace surfhps
