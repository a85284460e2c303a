#include "surfhps/evolution.hpp"

#include <cmath>

namespace surfhps {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dumbbell shape functions and their time derivatives.
double db_a(double t) { return 0.1 + 0.05 * std::sin(2.0 * kPi * t); }
double db_da(double t) { return 0.1 * kPi * std::cos(2.0 * kPi * t); }
double db_c(double t) { return 1.0 + 0.2 * std::sin(4.0 * kPi * t); }
double db_dc(double t) { return 0.8 * kPi * std::cos(4.0 * kPi * t); }
double db_b(double s) { return 200.0 * s * (s - 199.0 / 200.0); }
double db_db(double s) { return 400.0 * s - 199.0; }

double logistic_eta(double g, double k, double t) {
  const double e = std::exp(g * t);
  return k * e / (k + e - 1.0);
}

}  // namespace

EvolutionLaw EvolutionLaw::static_surface() { return EvolutionLaw{}; }

EvolutionLaw EvolutionLaw::isotropic_logistic(double g, double k, double r0) {
  require(k > 0.0 && r0 > 0.0, ErrorCode::InvalidArgument, "logistic law needs K > 0, r0 > 0");
  EvolutionLaw law;
  law.kind = Kind::IsotropicLogistic;
  law.rate = g;
  law.cap = k;
  law.base_radius = r0;
  return law;
}

EvolutionLaw EvolutionLaw::isotropic_linear(double g, double r0) {
  require(r0 > 0.0, ErrorCode::InvalidArgument, "linear law needs r0 > 0");
  EvolutionLaw law;
  law.kind = Kind::IsotropicLinear;
  law.rate = g;
  law.base_radius = r0;
  return law;
}

EvolutionLaw EvolutionLaw::anisotropic_axis(double g) {
  EvolutionLaw law;
  law.kind = Kind::AnisotropicAxis;
  law.rate = g;
  return law;
}

EvolutionLaw EvolutionLaw::dumbbell() {
  EvolutionLaw law;
  law.kind = Kind::Dumbbell;
  return law;
}

EvolutionLaw EvolutionLaw::from_velocity(std::function<Vec3(const Vec3&, double)> field,
                                         double step) {
  require(static_cast<bool>(field), ErrorCode::InvalidArgument, "velocity law needs a field");
  require(step > 0.0, ErrorCode::InvalidArgument, "velocity law needs a positive step");
  EvolutionLaw law;
  law.kind = Kind::Velocity;
  law.velocity_field = std::move(field);
  law.euler_dt = step;
  return law;
}

Vec3 EvolutionLaw::scale(double t) const {
  switch (kind) {
    case Kind::Static:
      return Vec3::Ones();
    case Kind::IsotropicLogistic: {
      const double eta = logistic_eta(rate, cap, t);
      return Vec3::Constant(eta);
    }
    case Kind::IsotropicLinear: {
      const double eta = 1.0 - rate * t;
      require(eta > 0.0, ErrorCode::InvalidArgument, "linear contraction reached extinction");
      return Vec3::Constant(eta);
    }
    case Kind::AnisotropicAxis:
      return Vec3(1.0, 1.0, 1.0 + rate * t);
    case Kind::Dumbbell:
      return Vec3(db_a(t) / db_a(0.0), db_a(t) / db_a(0.0), db_c(t) / db_c(0.0));
    case Kind::Velocity:
      break;
  }
  fail(ErrorCode::InvalidArgument, "scale factors undefined for velocity-field laws");
}

Vec3 EvolutionLaw::scale_rate(double t) const {
  switch (kind) {
    case Kind::Static:
      return Vec3::Zero();
    case Kind::IsotropicLogistic: {
      const double eta = logistic_eta(rate, cap, t);
      return Vec3::Constant(rate * eta * (1.0 - eta / cap));
    }
    case Kind::IsotropicLinear:
      return Vec3::Constant(-rate);
    case Kind::AnisotropicAxis:
      return Vec3(0.0, 0.0, rate);
    case Kind::Dumbbell:
      return Vec3(db_da(t) / db_a(0.0), db_da(t) / db_a(0.0), db_dc(t) / db_c(0.0));
    case Kind::Velocity:
      break;
  }
  fail(ErrorCode::InvalidArgument, "scale factors undefined for velocity-field laws");
}

Vec3 EvolutionLaw::map(const Vec3& x0, double t) const {
  require(t >= 0.0, ErrorCode::InvalidArgument, "evolution time must be nonnegative");
  if (kind == Kind::Static || t == 0.0) return x0;
  if (closed_form()) return scale(t).cwiseProduct(x0);
  const int steps = std::max(1, static_cast<int>(std::ceil(t / euler_dt)));
  const double h = t / steps;
  Vec3 x = x0;
  for (int k = 0; k < steps; ++k) x += h * velocity_field(x, k * h);
  return x;
}

Vec3 EvolutionLaw::material_velocity(const Vec3& x, double t) const {
  if (kind == Kind::Static) return Vec3::Zero();
  if (kind == Kind::Velocity) return velocity_field(x, t);
  return scale_rate(t).cwiseQuotient(scale(t)).cwiseProduct(x);
}

double EvolutionLaw::level_set(const Vec3& x, double t) const {
  switch (kind) {
    case Kind::IsotropicLogistic:
      return x.norm() - base_radius * logistic_eta(rate, cap, t);
    case Kind::IsotropicLinear:
      return x.norm() - base_radius * (1.0 - rate * t);
    case Kind::AnisotropicAxis: {
      const double gam = 1.0 + rate * t;
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] / (gam * gam) - base_radius * base_radius;
    }
    case Kind::Dumbbell: {
      const double a = db_a(t), c = db_c(t);
      const double s = x[2] * x[2] / (c * c);
      return x[0] * x[0] + x[1] * x[1] + a * a * db_b(s) - a * a;
    }
    default:
      break;
  }
  fail(ErrorCode::InvalidArgument, "law has no level-set description");
}

Vec3 EvolutionLaw::level_set_grad(const Vec3& x, double t) const {
  switch (kind) {
    case Kind::IsotropicLogistic:
    case Kind::IsotropicLinear: {
      const double r = x.norm();
      require(r > 0.0, ErrorCode::GeometryFailure, "level-set gradient undefined at the origin");
      return x / r;
    }
    case Kind::AnisotropicAxis: {
      const double gam = 1.0 + rate * t;
      return Vec3(2.0 * x[0], 2.0 * x[1], 2.0 * x[2] / (gam * gam));
    }
    case Kind::Dumbbell: {
      const double a = db_a(t), c = db_c(t);
      const double s = x[2] * x[2] / (c * c);
      return Vec3(2.0 * x[0], 2.0 * x[1], a * a * db_db(s) * 2.0 * x[2] / (c * c));
    }
    default:
      break;
  }
  fail(ErrorCode::InvalidArgument, "law has no level-set description");
}

double EvolutionLaw::level_set_dt(const Vec3& x, double t) const {
  switch (kind) {
    case Kind::IsotropicLogistic: {
      const double eta = logistic_eta(rate, cap, t);
      return -base_radius * rate * eta * (1.0 - eta / cap);
    }
    case Kind::IsotropicLinear:
      return base_radius * rate;
    case Kind::AnisotropicAxis: {
      const double gam = 1.0 + rate * t;
      return -2.0 * x[2] * x[2] * rate / (gam * gam * gam);
    }
    case Kind::Dumbbell: {
      const double a = db_a(t), da = db_da(t);
      const double c = db_c(t), dc = db_dc(t);
      const double s = x[2] * x[2] / (c * c);
      return 2.0 * a * da * (db_b(s) - 1.0) - a * a * db_db(s) * 2.0 * x[2] * x[2] * dc / (c * c * c);
    }
    default:
      break;
  }
  fail(ErrorCode::InvalidArgument, "law has no level-set description");
}

double EvolutionLaw::normal_velocity(const Vec3& x, double t) const {
  const double gn = level_set_grad(x, t).norm();
  require(gn > 0.0, ErrorCode::GeometryFailure, "degenerate level-set gradient");
  return -level_set_dt(x, t) / gn;
}

Projector EvolutionLaw::projector_at(double t) const {
  require(kind != Kind::Static && kind != Kind::Velocity, ErrorCode::InvalidArgument,
          "no retraction available for this law");
  if (kind == Kind::IsotropicLogistic || kind == Kind::IsotropicLinear) {
    const double eta = scale(t)[0];
    return sphere_projector(base_radius * eta);
  }
  const Vec3 s = scale(t);
  Projector base;
  if (kind == Kind::AnisotropicAxis) {
    base = sphere_projector(base_radius);
  } else {
    // Initial dumbbell level set; self-contained so the projector owns its state.
    auto d0 = [](const Vec3& p) {
      const double a = db_a(0.0), c = db_c(0.0);
      return p[0] * p[0] + p[1] * p[1] + a * a * db_b(p[2] * p[2] / (c * c)) - a * a;
    };
    auto grad0 = [](const Vec3& p) {
      const double a = db_a(0.0), c = db_c(0.0);
      return Vec3(2.0 * p[0], 2.0 * p[1],
                  a * a * db_db(p[2] * p[2] / (c * c)) * 2.0 * p[2] / (c * c));
    };
    base = Projector::implicit(d0, grad0, 0.1, "dumbbell level set");
  }
  return Projector::analytic(
      [s, base](const Vec3& x) {
        return s.cwiseProduct(base.project(x.cwiseQuotient(s)));
      },
      "evolving retraction");
}

MatX evolve_nodes(const EvolutionLaw& law, const MatX& x0, double t) {
  require(x0.cols() == 3, ErrorCode::InvalidArgument, "evolve_nodes expects an M x 3 block");
  MatX out(x0.rows(), 3);
  for (int i = 0; i < x0.rows(); ++i) out.row(i) = law.map(x0.row(i), t).transpose();
  return out;
}

Vec3 dumbbell_surface_point(const Vec3& p) {
  const double r = p.norm();
  require(r > 0.0, ErrorCode::InvalidArgument, "cannot map the origin onto the dumbbell");
  const Vec3 u = p / r;
  const double a = db_a(0.0), c = db_c(0.0);
  const double z = c * u[2];
  // Radius of the circle of revolution: x1^2 + x2^2 = a^2 (1 - b(z^2/c^2)).
  const double rad2 = a * a * std::max(0.0, 1.0 - db_b(u[2] * u[2]));
  const double rho = std::sqrt(std::max(0.0, u[0] * u[0] + u[1] * u[1]));
  if (rho < 1e-14) return Vec3(0.0, 0.0, z);  // poles
  const double scale = std::sqrt(rad2) / rho;
  return Vec3(scale * u[0], scale * u[1], z);
}

}  // namespace surfhps
