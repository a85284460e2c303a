#pragma once

#include <functional>

#include "surfhps/core.hpp"
#include "surfhps/projector.hpp"

namespace surfhps {

// Prescribed motion of the surface. The built-in laws are diagonal scalings
// of the initial configuration, x(t) = s(t) .* x(0), so material node motion
// is exact and closed-form. A generic velocity-field law integrates node
// paths with substepped explicit Euler instead.
struct EvolutionLaw {
  enum class Kind {
    Static,
    IsotropicLogistic,  // radius factor solves eta' = g eta (1 - eta/K), eta(0)=1
    IsotropicLinear,    // radius factor eta(t) = 1 - g t
    AnisotropicAxis,    // x3 axis stretched by (1 + g t), sphere -> ellipsoid
    Dumbbell,           // oscillating implicit dumbbell family
    Velocity,           // user velocity field, explicit Euler node transport
  };

  Kind kind = Kind::Static;
  double rate = 0.0;         // g
  double cap = 1.0;          // K (logistic)
  double base_radius = 1.0;  // initial radius of the isotropic sphere laws
  std::function<Vec3(const Vec3&, double)> velocity_field;
  double euler_dt = 1e-3;

  static EvolutionLaw static_surface();
  static EvolutionLaw isotropic_logistic(double g = 0.1, double k = 1.5, double r0 = 1.0);
  static EvolutionLaw isotropic_linear(double g = 0.02, double r0 = 3.0);
  static EvolutionLaw anisotropic_axis(double g = 0.04);
  static EvolutionLaw dumbbell();
  static EvolutionLaw from_velocity(std::function<Vec3(const Vec3&, double)> field,
                                    double step = 1e-3);

  bool closed_form() const { return kind != Kind::Velocity; }

  // Diagonal scale factors s(t) and their time derivatives (closed-form laws).
  Vec3 scale(double t) const;
  Vec3 scale_rate(double t) const;

  // Material position at time t of the point at x0 in the initial configuration.
  Vec3 map(const Vec3& x0, double t) const;

  // Velocity of the material point currently at x.
  Vec3 material_velocity(const Vec3& x, double t) const;

  // Signed implicit description of the evolving surface (diagnostics and
  // projector construction); unavailable for velocity-field laws.
  bool has_level_set() const { return kind != Kind::Velocity && kind != Kind::Static; }
  double level_set(const Vec3& x, double t) const;
  Vec3 level_set_grad(const Vec3& x, double t) const;
  double level_set_dt(const Vec3& x, double t) const;

  // Scalar normal velocity V = -d_t d / |grad d| at a point of the surface.
  double normal_velocity(const Vec3& x, double t) const;

  // Retraction onto the time-t surface: the initial projector conjugated by
  // the scaling map.
  Projector projector_at(double t) const;
};

// Apply the material map to every row of an M x 3 node block.
MatX evolve_nodes(const EvolutionLaw& law, const MatX& x0, double t);

// Maps a point via its ray through the origin onto the t = 0 dumbbell surface
// of revolution (used to seed dumbbell meshes from sphere meshes).
Vec3 dumbbell_surface_point(const Vec3& p);

}  // namespace surfhps
