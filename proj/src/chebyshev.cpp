#include "surfhps/chebyshev.hpp"

#include <cmath>

namespace surfhps {

VecX chebyshev_lobatto(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "chebyshev_lobatto: n must be >= 1");
  VecX x(n + 1);
  for (int k = 0; k <= n; ++k) x[k] = std::cos(M_PI * k / n);
  // Exact symmetry: force the midpoint of odd-sized grids to 0.
  if (n % 2 == 0) x[n / 2] = 0.0;
  return x;
}

MatX chebyshev_diff_matrix(int n) {
  const VecX x = chebyshev_lobatto(n);
  MatX d(n + 1, n + 1);
  auto c = [n](int k) { return (k == 0 || k == n) ? 2.0 : 1.0; };
  for (int i = 0; i <= n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = (c(i) / c(j)) * sign / (x[i] - x[j]);
      row_sum += d(i, j);
    }
    d(i, i) = -row_sum;  // derivative of constants is exactly zero
  }
  return d;
}

VecX clenshaw_curtis_weights(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "clenshaw_curtis_weights: n must be >= 1");
  // Standard explicit form: w_k = (c_k/n) * (1 - sum_j b_j/(4j^2-1) * 2cos(2 j theta_k)).
  VecX w(n + 1);
  const int half = n / 2;
  for (int k = 0; k <= n; ++k) {
    const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
    double s = 0.0;
    for (int j = 1; j <= half; ++j) {
      const double bj = (2 * j == n) ? 1.0 : 2.0;
      s += bj / (4.0 * j * j - 1.0) * std::cos(2.0 * M_PI * j * k / n);
    }
    w[k] = ck / n * (1.0 - s);
  }
  return w;
}

Grid1D make_grid_1d(int n) {
  Grid1D g;
  g.n = n;
  g.points = chebyshev_lobatto(n);
  g.diff = chebyshev_diff_matrix(n);
  g.weights = clenshaw_curtis_weights(n);
  return g;
}

VecX barycentric_weights(const VecX& points) {
  const int m = static_cast<int>(points.size());
  VecX w = VecX::Ones(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j != i) w[i] /= (points[i] - points[j]);
    }
  }
  return w;
}

VecX barycentric_eval_row(const VecX& points, const VecX& bary_w, double x) {
  const int m = static_cast<int>(points.size());
  VecX row = VecX::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (x == points[i]) {
      row[i] = 1.0;
      return row;
    }
  }
  double denom = 0.0;
  for (int i = 0; i < m; ++i) {
    row[i] = bary_w[i] / (x - points[i]);
    denom += row[i];
  }
  row /= denom;
  return row;
}

VecX barycentric_deriv_row(const VecX& points, const VecX& bary_w, const MatX& diff, double x) {
  const int m = static_cast<int>(points.size());
  for (int i = 0; i < m; ++i) {
    if (x == points[i]) return diff.row(i).transpose();
  }
  // p(x) = N/D, N = sum w_i u_i/(x-x_i), D = sum w_i/(x-x_i);
  // p'(x) row follows from the quotient rule.
  VecX c(m), c2(m);
  double d = 0.0, d2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = x - points[i];
    c[i] = bary_w[i] / r;
    c2[i] = bary_w[i] / (r * r);
    d += c[i];
    d2 += c2[i];
  }
  VecX row(m);
  for (int i = 0; i < m; ++i) row[i] = (-c2[i] + (c[i] / d) * d2) / d;
  return row;
}

void gauss_legendre(int m, VecX& nodes, VecX& weights) {
  require(m >= 1, ErrorCode::InvalidArgument, "gauss_legendre: m must be >= 1");
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess + Newton on P_m.
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (m == 1) p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[m - 1 - i] = x;  // ascending order
    weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace surfhps
