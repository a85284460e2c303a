#include "surfhps/jacobi.hpp"

namespace surfhps {

double jacobi_eval(int m, double alpha, double beta, double x) {
  require(m >= 0, ErrorCode::InvalidArgument, "jacobi_eval: m must be >= 0");
  require(alpha > -1.0 && beta > -1.0, ErrorCode::InvalidArgument,
          "jacobi_eval: alpha, beta must be > -1");
  if (m == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
  for (int k = 2; k <= m; ++k) {
    const double a = alpha, b = beta;
    const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
    const double c2 = (2.0 * k + a + b - 1.0) * (a * a - b * b);
    const double c3 = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0);
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
    const double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
    pm1 = p;
    p = next;
  }
  return p;
}

double jacobi_deriv(int m, double alpha, double beta, double x) {
  if (m == 0) return 0.0;
  return 0.5 * (m + alpha + beta + 1.0) * jacobi_eval(m - 1, alpha + 1.0, beta + 1.0, x);
}

}  // namespace surfhps
