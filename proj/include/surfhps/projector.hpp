#pragma once

#include <functional>
#include <memory>
#include <string>

#include "surfhps/core.hpp"

namespace surfhps {

// Smooth retraction onto a surface. Two kinds:
//  - analytic: a closed-form map (e.g. x -> x/|x| for the sphere);
//  - implicit: the zero level set of d(x), projected by damped Newton on the
//    constrained system { d(p) = 0, p - x parallel to grad d(p) } starting
//    from the input point.
// Projections must be idempotent and land on the surface to 1e-12 * scale.
class Projector {
 public:
  using AnalyticMap = std::function<Vec3(const Vec3&)>;
  using LevelSet = std::function<double(const Vec3&)>;
  using LevelSetGrad = std::function<Vec3(const Vec3&)>;

  static Projector identity();
  static Projector analytic(AnalyticMap map, std::string name = "analytic");
  // `scale` sets the convergence tolerance (1e-12 * scale); pass the bounding
  // box diameter of the surface.
  static Projector implicit(LevelSet d, LevelSetGrad grad, double scale = 1.0,
                            std::string name = "implicit");
  // Implicit surface with finite-difference gradient.
  static Projector implicit_fd(LevelSet d, double scale = 1.0, std::string name = "implicit");

  Vec3 project(const Vec3& x) const;

  bool is_implicit() const { return static_cast<bool>(level_set_); }
  double level_set(const Vec3& x) const;
  Vec3 level_set_grad(const Vec3& x) const;
  const std::string& name() const { return name_; }
  double scale() const { return scale_; }

 private:
  AnalyticMap map_;
  LevelSet level_set_;
  LevelSetGrad grad_;
  double scale_ = 1.0;
  std::string name_ = "identity";
};

// Unit-sphere projector (analytic): x -> x / |x|.
Projector sphere_projector(double radius = 1.0);

}  // namespace surfhps
