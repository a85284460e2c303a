#include "surfhps/dubiner.hpp"

#include <cmath>

#include "surfhps/jacobi.hpp"

namespace surfhps {

namespace {

// Homogenized Legendre product Q_m(xi, eta) = (1-eta)^m P_m^{(0,0)}(2xi/(1-eta) - 1)
// and its partials, valid on the whole triangle including eta = 1.
// Recurrence (Legendre three-term, multiplied through by (1-eta)^m):
//   m Q_m = (2m-1) s Q_{m-1} - (m-1) w^2 Q_{m-2},  s = 2xi + eta - 1, w = 1 - eta.
struct HomogenizedLegendre {
  std::vector<double> q, q_xi, q_eta;

  HomogenizedLegendre(int max_i, double xi, double eta) {
    const int m = max_i + 1;
    q.assign(m, 0.0);
    q_xi.assign(m, 0.0);
    q_eta.assign(m, 0.0);
    const double s = 2.0 * xi + eta - 1.0;
    const double w = 1.0 - eta;
    q[0] = 1.0;
    if (max_i >= 1) {
      q[1] = s;
      q_xi[1] = 2.0;
      q_eta[1] = 1.0;
    }
    for (int k = 2; k <= max_i; ++k) {
      const double a = (2.0 * k - 1.0) / k;
      const double b = (k - 1.0) / k;
      q[k] = a * s * q[k - 1] - b * w * w * q[k - 2];
      q_xi[k] = a * (2.0 * q[k - 1] + s * q_xi[k - 1]) - b * w * w * q_xi[k - 2];
      q_eta[k] = a * (q[k - 1] + s * q_eta[k - 1]) -
                 b * (-2.0 * w * q[k - 2] + w * w * q_eta[k - 2]);
    }
  }
};

double norm_const(int i, int j) {
  return std::sqrt(2.0 * (2.0 * i + 1.0) * (i + j + 1.0));
}

}  // namespace

double dubiner_eval(int i, int j, double xi, double eta) {
  require(i >= 0 && j >= 0, ErrorCode::InvalidArgument, "dubiner_eval: modes must be >= 0");
  HomogenizedLegendre hl(i, xi, eta);
  const double r = jacobi_eval(j, 2.0 * i + 1.0, 0.0, 2.0 * eta - 1.0);
  return norm_const(i, j) * hl.q[i] * r;
}

void dubiner_eval_grad(int i, int j, double xi, double eta,
                       double& value, double& d_xi, double& d_eta) {
  require(i >= 0 && j >= 0, ErrorCode::InvalidArgument, "dubiner_eval_grad: modes must be >= 0");
  HomogenizedLegendre hl(i, xi, eta);
  const double c = norm_const(i, j);
  const double r = jacobi_eval(j, 2.0 * i + 1.0, 0.0, 2.0 * eta - 1.0);
  const double rp = 2.0 * jacobi_deriv(j, 2.0 * i + 1.0, 0.0, 2.0 * eta - 1.0);
  value = c * hl.q[i] * r;
  d_xi = c * hl.q_xi[i] * r;
  d_eta = c * (hl.q_eta[i] * r + hl.q[i] * rp);
}

std::vector<std::pair<int, int>> dubiner_index_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) pairs.emplace_back(i, j);
  return pairs;
}

MatX dubiner_vandermonde(int n, const MatX& points) {
  const auto pairs = dubiner_index_pairs(n);
  MatX v(points.rows(), static_cast<Eigen::Index>(pairs.size()));
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    HomogenizedLegendre hl(n, points(p, 0), points(p, 1));
    for (size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      const double r = jacobi_eval(j, 2.0 * i + 1.0, 0.0, 2.0 * points(p, 1) - 1.0);
      v(p, static_cast<Eigen::Index>(k)) = norm_const(i, j) * hl.q[i] * r;
    }
  }
  return v;
}

void dubiner_vandermonde_grad(int n, const MatX& points, MatX& v_xi, MatX& v_eta) {
  const auto pairs = dubiner_index_pairs(n);
  v_xi.resize(points.rows(), static_cast<Eigen::Index>(pairs.size()));
  v_eta.resize(points.rows(), static_cast<Eigen::Index>(pairs.size()));
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    const double xi = points(p, 0), eta = points(p, 1);
    HomogenizedLegendre hl(n, xi, eta);
    for (size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      const double c = norm_const(i, j);
      const double r = jacobi_eval(j, 2.0 * i + 1.0, 0.0, 2.0 * eta - 1.0);
      const double rp = 2.0 * jacobi_deriv(j, 2.0 * i + 1.0, 0.0, 2.0 * eta - 1.0);
      v_xi(p, static_cast<Eigen::Index>(k)) = c * hl.q_xi[i] * r;
      v_eta(p, static_cast<Eigen::Index>(k)) = c * (hl.q_eta[i] * r + hl.q[i] * rp);
    }
  }
}

}  // namespace surfhps
