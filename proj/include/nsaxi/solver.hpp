#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsaxi/params.hpp"
#include "nsaxi/series.hpp"

namespace nsaxi {

struct SolverOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double max_step = 0.1;      // largest step in ln of the pole offset
  double residual_target = 3e-10;  // half branches are re-integrated with smaller steps above this
  int max_refine = 3;
  double pole_cutoff = 1e-8;  // integration stops at |x| = 1 - pole_cutoff
  double match_abs = 1e-6;    // absolute floor of the endpoint matching window
  double escape_factor = 8.0;
  SeriesOptions series;
  ClassifyTolerances tol;
};

/// How a solution behaves near one pole, as seen by the numerics.
struct EndpointInfo {
  double limit = 0.0;       // assigned tau constant
  double estimate = 0.0;    // extrapolated U at the pole
  double error = 0.0;       // spread of the extrapolation
  bool matched = false;     // estimate fell inside the window of exactly one tau
  bool from_series = false; // analytic branch, limit is exact
};

/// U and its x-derivatives up to third order; derivatives come from differentiating the ODE.
struct Derivs {
  double u = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;
};

namespace detail {
struct HalfBranch;
}

/// A solution U^{c,gamma} on (-1,1): two half branches glued at x = 0, each either integrated
/// from x = 0 toward its pole or started from the pole series and integrated inward.
/// Immutable after construction.
class SolutionCurve {
 public:
  SolutionCurve(SolutionIndex index, std::shared_ptr<const detail::HalfBranch> south,
                std::shared_ptr<const detail::HalfBranch> north);
  /// Closed-form boundary solution at c3 = c3_bar.
  static SolutionCurve boundary(const SolutionIndex& index);

  const SolutionIndex& index() const { return index_; }
  const Params& params() const { return index_.params; }
  /// U(0) as integrated, which may differ from index().gamma by the classify tolerance.
  double gamma() const;

  /// U(x) for x in [-1, 1]; x strictly between the cutoff and a pole throws PoleProximity.
  double eval(double x) const;
  /// U at offset s from a pole (s = 1+x south, 1-x north); s >= cutoff or s == 0.
  double eval_offset(Pole pole, double s) const;
  double deriv(double x, int order) const;
  Derivs derivs(double x) const;
  /// |(1-x^2)U' + 2xU + U^2/2 - P_c| using the dense interpolant's own derivative.
  double residual(double x) const;
  double residual_bound() const { return residual_bound_; }

  const EndpointInfo& endpoint(Pole pole) const;
  double south_limit() const { return endpoint(Pole::South).limit; }
  double north_limit() const { return endpoint(Pole::North).limit; }
  double cutoff() const { return cutoff_; }
  bool closed_form() const { return !south_; }

 private:
  friend class Solver;
  SolutionCurve() = default;
  double value_and_slope(double x, double* du_interp) const;

  SolutionIndex index_;
  std::shared_ptr<const detail::HalfBranch> south_;
  std::shared_ptr<const detail::HalfBranch> north_;
  EndpointInfo south_end_;
  EndpointInfo north_end_;
  double residual_bound_ = 0.0;
  double cutoff_ = 0.0;
};

struct ExistenceReport {
  enum class Status { Exists, NoSolutionC3Below, NoSolutionPoleParameter, EscapedAt };
  Status status = Status::Exists;
  std::optional<double> escape_x;
  std::optional<double> escape_value;
  std::string detail;
};

std::string to_string(ExistenceReport::Status status);

struct Exploration {
  ExistenceReport report;
  std::optional<SolutionCurve> curve;
};

enum class Extremal { Upper, Lower };

class Solver {
 public:
  explicit Solver(SolverOptions opts = {}) : opts_(opts) {}
  const SolverOptions& options() const { return opts_; }

  /// Stratum OutsideI when (c, gamma) is outside I; throws Unclassifiable when gamma_pm cannot be computed.
  SolutionIndex classify(const Params& c, double gamma) const;
  SolutionCurve solve_ivp(const Params& c, double gamma) const;
  /// Integrates from x = 0 without classification and reports escapes instead of throwing.
  Exploration explore(const Params& c, double gamma) const;
  SolutionCurve extremal(const Params& c, Extremal which) const;
  /// South half of U+ joined at x = 0 to the north half of U-, both integrated from their pole
  /// series. Continuous only at c3 = c3_bar, where it is a numerical copy of the closed form.
  SolutionCurve pole_branches(const Params& c) const;
  double gamma_plus(const Params& c) const;
  double gamma_minus(const Params& c) const;
  ExistenceReport exists(const Params& c) const;

  /// Escape threshold for |U| over (-1,1), an explicit over-estimate of the a-priori bound.
  double escape_cap(const Params& c) const;

 private:
  SolverOptions opts_;
};

/// Returns the matched tau constant; throws AmbiguousMatch when the numerics could not decide.
double endpoint_value(const SolutionCurve& curve, Pole pole);

}  // namespace nsaxi
