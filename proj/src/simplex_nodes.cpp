#include "surfhps/simplex_nodes.hpp"

#include <Eigen/LU>
#include <cmath>

#include "surfhps/jacobi.hpp"

namespace surfhps {

namespace {

// Gauss-Lobatto-Legendre points on [-1, 1]: endpoints plus the roots of
// P_n', found by Newton iteration from Chebyshev-Lobatto seeds.
VecX gauss_lobatto_legendre(int n) {
  VecX x(n + 1);
  x[0] = -1.0;
  x[n] = 1.0;
  for (int k = 1; k < n; ++k) {
    double t = -std::cos(M_PI * k / n);
    for (int it = 0; it < 60; ++it) {
      const double f = jacobi_deriv(n, 0.0, 0.0, t);
      const double fp = 0.5 * (n + 1) * jacobi_deriv(n - 1, 1.0, 1.0, t);
      const double dt = f / fp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[k] = t;
  }
  return x;
}

// One-dimensional warp: the degree-n polynomial that displaces the
// equispaced grid onto the Gauss-Lobatto-Legendre grid, evaluated at r and
// normalized by (1 - r^2) so edge blending leaves endpoints fixed.
class WarpFactor {
 public:
  explicit WarpFactor(int n) : n_(n), req_(n + 1), gll_(gauss_lobatto_legendre(n)) {
    req_.setLinSpaced(n + 1, -1.0, 1.0);
    MatX veq(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) veq(i, j) = jacobi_eval(j, 0.0, 0.0, req_[i]);
    lu_.compute(MatX(veq.transpose()));
  }

  double operator()(double r) const {
    VecX p(n_ + 1);
    for (int j = 0; j <= n_; ++j) p[j] = jacobi_eval(j, 0.0, 0.0, r);
    const VecX lagrange = lu_.solve(p);
    const double w = lagrange.dot(gll_ - req_);
    if (std::abs(r) < 1.0 - 1e-10) return w / (1.0 - r * r);
    return 0.0;
  }

 private:
  int n_;
  VecX req_, gll_;
  Eigen::PartialPivLU<MatX> lu_;
};

// Order-dependent blending strength (minimizes the interpolation Lebesgue
// constant; values tabulated for n <= 15, asymptotic 5/3 beyond).
double blend_alpha(int n) {
  static const double table[] = {0.0,    0.0,    1.4152, 0.1001, 0.2751,
                                 0.9800, 1.0999, 1.2832, 1.3648, 1.4773,
                                 1.4959, 1.5743, 1.5770, 1.6223, 1.6258};
  if (n >= 1 && n <= 15) return table[n - 1];
  return 5.0 / 3.0;
}

}  // namespace

SimplexNodes simplex_nodes(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "simplex_nodes: n must be >= 1");
  const int total = (n + 1) * (n + 2) / 2;

  // Vertices of the equilateral working triangle (side length 2).
  const Eigen::Vector2d ev[3] = {{-1.0, -1.0 / std::sqrt(3.0)},
                                 {1.0, -1.0 / std::sqrt(3.0)},
                                 {0.0, 2.0 / std::sqrt(3.0)}};
  const WarpFactor warp(n);
  const double alpha = blend_alpha(n);

  // Warp the equispaced barycentric lattice point lam = (l0, l1, l2).
  auto warp_point = [&](const Eigen::Vector3d& lam) {
    Eigen::Vector2d x = lam[0] * ev[0] + lam[1] * ev[1] + lam[2] * ev[2];
    for (int e = 0; e < 3; ++e) {
      const int a = e, b = (e + 1) % 3, c = (e + 2) % 3;
      const Eigen::Vector2d tangent = 0.5 * (ev[b] - ev[a]);  // unit for side 2
      const double w = warp(lam[b] - lam[a]);
      x += (4.0 * lam[a] * lam[b]) * (1.0 + alpha * alpha * lam[c] * lam[c]) * w * tangent;
    }
    // Back to barycentric (exact affine inversion).
    Eigen::Matrix2d m;
    m.col(0) = ev[1] - ev[0];
    m.col(1) = ev[2] - ev[0];
    const Eigen::Vector2d l12 = m.inverse() * (x - ev[0]);
    return Eigen::Vector3d(1.0 - l12[0] - l12[1], l12[0], l12[1]);
  };

  auto lattice = [&](int i, int j) {
    return Eigen::Vector3d(double(n - i - j) / n, double(i) / n, double(j) / n);
  };

  // The warp is tangential on edges; snap the vanishing barycentric to zero
  // so boundary nodes sit exactly on their reference edge.
  auto warp_edge_point = [&](int i, int j, int zero) {
    Eigen::Vector3d lam = warp_point(lattice(i, j));
    lam[zero] = 0.0;
    lam /= lam.sum();
    return lam;
  };

  // Emit in the canonical order: vertices, per-edge interiors along the
  // traversal direction, then interior lattice points.
  std::vector<Eigen::Vector3d> bary;
  bary.reserve(static_cast<size_t>(total));
  bary.emplace_back(1.0, 0.0, 0.0);
  bary.emplace_back(0.0, 1.0, 0.0);
  bary.emplace_back(0.0, 0.0, 1.0);
  for (int i = 1; i < n; ++i) bary.push_back(warp_edge_point(i, 0, 2));          // v0 -> v1
  for (int k = 1; k < n; ++k) bary.push_back(warp_edge_point(n - k, k, 0));      // v1 -> v2
  for (int j = n - 1; j >= 1; --j) bary.push_back(warp_edge_point(0, j, 1));     // v2 -> v0
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= n - 1 - i; ++j) bary.push_back(warp_point(lattice(i, j)));
  require(static_cast<int>(bary.size()) == total, ErrorCode::InvalidArgument,
          "simplex_nodes: internal count mismatch");

  SimplexNodes out;
  out.n = n;
  out.coords.resize(total, 2);
  for (int p = 0; p < total; ++p) {
    out.coords(p, 0) = bary[static_cast<size_t>(p)][1];  // xi  = lambda_1
    out.coords(p, 1) = bary[static_cast<size_t>(p)][2];  // eta = lambda_2
  }
  out.vertex_ids = {0, 1, 2};
  int id = 3;
  for (int e = 0; e < 3; ++e) {
    out.edge_interior[e].resize(n - 1);
    for (int k = 0; k < n - 1; ++k) out.edge_interior[e][k] = id++;
  }
  out.boundary_ids.resize(3 * n);
  for (int p = 0; p < 3 * n; ++p) out.boundary_ids[p] = p;
  out.interior_ids.resize(total - 3 * n);
  for (int p = 3 * n; p < total; ++p) out.interior_ids[p - 3 * n] = p;
  return out;
}

}  // namespace surfhps
