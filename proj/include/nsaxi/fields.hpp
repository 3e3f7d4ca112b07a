#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsaxi/solver.hpp"

namespace nsaxi {

/// Velocity and pressure at (r, x = cos theta). Velocities scale as 1/r, pressure as 1/r^2.
struct FieldSample {
  double r = 1.0;
  double x = 0.0;
  double u_r = 0.0;
  double u_theta = 0.0;
  double u_phi = 0.0;
  double p = 0.0;
};

/// Fields stay this far from the poles: u_theta = U / sqrt(1-x^2) blows up there.
inline constexpr double kFieldPoleCutoff = 1e-6;

FieldSample reconstruct(const SolutionCurve& curve, double r, double x);

/// Landau profile 2(1-x^2)/(x+lambda), which solves the ODE with c = 0.
double landau(double lambda, double x);

/// Radial velocity at r = 1, pressure at r = 1; only the analytic derivatives of the curve enter.
struct UnitFields {
  double u_r = 0.0;
  double u_theta = 0.0;
  double p = 0.0;
};
UnitFields unit_fields(const Derivs& d, double x);

struct GridSample {
  double r = 1.0;
  double x = 0.0;
  std::optional<FieldSample> sample;
  std::string error;  // set when sample is empty
};

/// Row-major in x: all radii for x_values[0], then x_values[1], ...
std::vector<GridSample> sample_grid(const SolutionCurve& curve, const std::vector<double>& r_values,
                                    const std::vector<double>& x_values);

}  // namespace nsaxi
