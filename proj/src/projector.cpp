#include "surfhps/projector.hpp"

#include <cmath>
#include <cstdio>

namespace surfhps {

Projector Projector::identity() { return Projector(); }

Projector Projector::analytic(AnalyticMap map, std::string name) {
  Projector p;
  p.map_ = std::move(map);
  p.name_ = std::move(name);
  return p;
}

Projector Projector::implicit(LevelSet d, LevelSetGrad grad, double scale, std::string name) {
  Projector p;
  p.level_set_ = std::move(d);
  p.grad_ = std::move(grad);
  p.scale_ = scale;
  p.name_ = std::move(name);
  return p;
}

Projector Projector::implicit_fd(LevelSet d, double scale, std::string name) {
  auto grad = [d, scale](const Vec3& x) {
    const double h = 1e-7 * scale;
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Vec3 xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (d(xp) - d(xm)) / (2.0 * h);
    }
    return g;
  };
  return implicit(std::move(d), grad, scale, std::move(name));
}

double Projector::level_set(const Vec3& x) const {
  require(static_cast<bool>(level_set_), ErrorCode::InvalidArgument,
          "Projector::level_set: not an implicit projector");
  return level_set_(x);
}

Vec3 Projector::level_set_grad(const Vec3& x) const {
  require(static_cast<bool>(grad_), ErrorCode::InvalidArgument,
          "Projector::level_set_grad: not an implicit projector");
  return grad_(x);
}

Vec3 Projector::project(const Vec3& x) const {
  if (map_) return map_(x);
  if (!level_set_) return x;  // identity

  // Damped Newton on F(p, lambda) = [p - x - lambda * grad d(p); d(p)] = 0.
  // The Hessian of d is approximated by finite differences of the gradient.
  const double tol = 1e-12 * scale_;
  Vec3 p = x;
  Vec3 g = grad_(p);
  double gn2 = g.squaredNorm();
  require(gn2 > 0.0, ErrorCode::GeometryFailure,
          "Projector::project: vanishing level-set gradient at seed point");
  double lambda = -level_set_(p) / gn2;
  p += lambda * g;

  auto residual = [&](const Vec3& pp, double ll) {
    const Vec3 gg = grad_(pp);
    Eigen::Vector4d r;
    r.head<3>() = pp - x - ll * gg;
    r[3] = level_set_(pp);
    return r;
  };

  Eigen::Vector4d r = residual(p, lambda);
  bool stalled = false;
  for (int iter = 0; iter < 50 && !stalled; ++iter) {
    if (r.norm() <= tol) return p;
    const Vec3 gg = grad_(p);
    Eigen::Matrix3d hess;
    const double hstep = 1e-6 * scale_;
    for (int i = 0; i < 3; ++i) {
      Vec3 pp = p, pm = p;
      pp[i] += hstep;
      pm[i] -= hstep;
      hess.col(i) = (grad_(pp) - grad_(pm)) / (2.0 * hstep);
    }
    Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
    jac.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity() - lambda * hess;
    jac.topRightCorner<3, 1>() = -gg;
    jac.bottomLeftCorner<1, 3>() = gg.transpose();
    const Eigen::Vector4d step = jac.partialPivLu().solve(-r);
    // Backtracking line search on |F|.
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30 && !accepted; ++ls) {
      const Vec3 p_try = p + t * step.head<3>();
      const double l_try = lambda + t * step[3];
      const Eigen::Vector4d r_try = residual(p_try, l_try);
      if (r_try.norm() < r.norm()) {
        p = p_try;
        lambda = l_try;
        r = r_try;
        accepted = true;
      }
      t *= 0.5;
    }
    // No descent direction left: the residual has bottomed out at the noise
    // floor of the (possibly finite-difference) gradient.
    stalled = !accepted;
  }
  if (r.norm() <= tol) return p;
  // When the gradient is supplied by finite differences its noise (~1e-9
  // relative) keeps the full KKT residual above tol.  Accept the point anyway
  // if it sits on the zero set to near machine accuracy and the positional
  // part of the residual is already tiny; otherwise report failure.
  const Vec3 gf = grad_(p);
  const double gfn = gf.norm();
  if (gfn > 0.0 && std::abs(level_set_(p)) <= 1e-10 * scale_ * gfn &&
      r.head<3>().norm() <= 1e-6 * scale_) {
    return p;
  }
  char msg[160];
  std::snprintf(msg, sizeof(msg),
                "Projector::project: Newton projection did not converge (point "
                "outside the tubular neighborhood?); residual %.3e",
                r.norm());
  fail(ErrorCode::GeometryFailure, msg);
}

Projector sphere_projector(double radius) {
  return Projector::analytic(
      [radius](const Vec3& x) {
        const double r = x.norm();
        require(r > 0.0, ErrorCode::GeometryFailure,
                "sphere projector: cannot project the origin");
        return Vec3(radius * x / r);
      },
      "sphere");
}

}  // namespace surfhps
