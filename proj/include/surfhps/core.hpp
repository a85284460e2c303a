#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace surfhps {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

// Error taxonomy for the solver stack. `code` is stable and machine-checkable;
// `what()` carries the human-readable detail.
enum class ErrorCode {
  InvalidArgument,   // bad order, malformed input, out-of-range index
  MeshFormat,        // unreadable or non-conforming mesh file
  GeometryFailure,   // projection did not converge / left tubular neighborhood
  SingularOperator,  // interior block or interface system not factorizable
  Incompatible,      // rhs incompatible with a singular operator
  Diverged,          // time stepper produced non-finite values
  Io,                // file system failure
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw SolverError(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace surfhps
