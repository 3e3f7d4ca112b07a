#pragma once

#include <vector>

#include "nsaxi/params.hpp"

namespace nsaxi {

/// Analytic solution near a pole: U = tau + sum_{n>=1} a_n s^n with s = 1+x (south)
/// or s = 1-x (north). Stored coefficients satisfy |a_n| <= growth^n.
struct SeriesExpansion {
  Pole pole = Pole::South;
  Params params;
  double tau = 0.0;
  std::vector<double> coeffs;  // a_1 .. a_N
  double radius = 0.0;         // handoff offset; evaluation valid for 0 <= s <= radius
  double growth = 1.0;
  bool terminating = false;    // exact polynomial; evaluation valid on the whole interval

  /// Geometric bound on the truncated tail at offset s.
  double tail_bound(double s) const;
};

struct SeriesOptions {
  int max_terms = 200;
  double max_radius = 0.05;
  double growth_cap = 1e8;
  double term_tol = 1e-16;  // per-term contribution at the handoff offset, relative
  double tail_tol = 1e-14;  // geometric tail bound at the handoff offset, relative
};

struct SeriesValue {
  double u = 0.0;
  double du = 0.0;  // derivative in x
};

SeriesExpansion expand_south(const Params& c, double tau, const SeriesOptions& opts = {});
SeriesExpansion expand_north(const Params& c, double taup, const SeriesOptions& opts = {});

/// Value and x-derivative at x. Throws OutOfRadius when |x - pole| > radius, unless the series
/// terminates.
SeriesValue eval(const SeriesExpansion& series, double x);

/// Value and derivative with respect to the pole offset s (s >= 0).
SeriesValue eval_offset(const SeriesExpansion& series, double s);

}  // namespace nsaxi
