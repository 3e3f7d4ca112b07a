#include "nsaxi/fields.hpp"

#include <cmath>

#include "nsaxi/error.hpp"

namespace nsaxi {

namespace {

void check_point(double r, double x) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::Domain, "radius must be positive");
  if (!(std::abs(x) < 1.0)) throw Error(ErrorKind::Domain, "x must lie in (-1, 1)");
  if (1.0 - std::abs(x) < kFieldPoleCutoff)
    throw Error(ErrorKind::PoleProximity, "x is within the field cutoff of a pole");
}

FieldSample scaled(const UnitFields& f, double r, double x) {
  return {r, x, f.u_r / r, f.u_theta / r, 0.0, f.p / (r * r)};
}

}  // namespace

UnitFields unit_fields(const Derivs& d, double x) {
  const double q = (1.0 - x) * (1.0 + x);
  UnitFields f;
  f.u_r = d.u1;
  f.u_theta = d.u / std::sqrt(q);
  // theta-derivatives rewritten with d/dtheta = -sqrt(1-x^2) d/dx
  f.p = -0.5 * (q * d.u3 - 2.0 * x * d.u2 + d.u * d.u2 + d.u1 * d.u1 + d.u * d.u / q);
  return f;
}

FieldSample reconstruct(const SolutionCurve& curve, double r, double x) {
  check_point(r, x);
  return scaled(unit_fields(curve.derivs(x), x), r, x);
}

double landau(double lambda, double x) {
  if (!(std::abs(lambda) > 1.0)) throw Error(ErrorKind::Domain, "Landau parameter needs |lambda| > 1");
  return 2.0 * (1.0 - x) * (1.0 + x) / (x + lambda);
}

std::vector<GridSample> sample_grid(const SolutionCurve& curve, const std::vector<double>& r_values,
                                    const std::vector<double>& x_values) {
  std::vector<GridSample> out;
  out.reserve(r_values.size() * x_values.size());
  for (double x : x_values) {
    std::optional<UnitFields> unit;
    std::string err;
    try {
      check_point(1.0, x);
      unit = unit_fields(curve.derivs(x), x);
    } catch (const std::exception& e) {
      err = e.what();
    }
    for (double r : r_values) {
      GridSample g{r, x, std::nullopt, err};
      if (unit) {
        if (r > 0.0 && std::isfinite(r))
          g.sample = scaled(*unit, r, x);
        else
          g.error = Error(ErrorKind::Domain, "radius must be positive").what();
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace nsaxi
