#pragma once

#include <stdexcept>
#include <string>

namespace nsaxi {

enum class ErrorKind {
  Domain,          // argument outside the admissible parameter set
  DegenerateBranch,
  Divergence,      // series coefficients grow past the configured cap
  OutOfRadius,
  Escape,          // |U| left the a-priori bound, no global solution
  Stiffness,       // step size underflow
  AmbiguousMatch,  // endpoint extrapolation matches no admissible limit
  Unclassifiable,
  PoleProximity,
  Precondition,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nsaxi
