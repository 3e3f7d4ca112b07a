#pragma once

#include <string>
#include <vector>

#include "nsaxi/solver.hpp"

namespace nsaxi {

struct Witness {
  std::string input;
  double value = 0.0;
};

/// passed == (measured <= bound). Sub-conditions that have no natural magnitude (ordering of a
/// sequence, a missing escape) push measured to +inf and leave a witness.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::vector<Witness> witnesses;
  std::string note;
};

struct VerifyOptions {
  SolverOptions solver;
  int grid_points = 1000;
  int max_witnesses = 10;
  double sandwich_tol = 1e-8;
  double residual_tol = 1e-9;
  double reflection_tol = 1e-9;
  double landau_tol = 1e-8;
  double landau_span = 0.99;
  double log_tol = 0.35;
  double log_refinement_cap = 20.0;
  double fd_step = 1e-5;
  double fd_stability = 0.1;       // relative change allowed when the FD step is halved
  double derivative_cap = 1e3;
  double derivative_margin = 0.05; // distance samples keep from their stratum boundary
  double derivative_reach = 1e-7;  // x-grid runs to +-(1 - reach)
  double uniqueness_tol = 1e-8;
  double uniqueness_span = 0.999;
  double perturbation = 1e-3;
  double continuity_tol = 1e-4;
};

/// A curve to check: an IVP solution U^{c,gamma}, or one of the two extremal solutions.
struct CurveSample {
  enum class Branch { Gamma, Upper, Lower };
  Params c;
  Branch branch = Branch::Gamma;
  double gamma = 0.0;

  std::string label() const;
  /// Same curve under x -> -x, U -> -U.
  CurveSample reflected() const;
};

SolutionCurve realize(const Solver& solver, const CurveSample& sample);

/// Midpoints of N equal cells of (-1, 1).
std::vector<double> interior_grid(int n);

CheckResult check_foliation(const Solver& solver, const Params& c, const std::vector<double>& gammas,
                            const VerifyOptions& opts = {});
CheckResult check_sandwich(const Solver& solver, const Params& c, const std::vector<double>& gammas,
                           const VerifyOptions& opts = {});
CheckResult check_residual(const Solver& solver, const std::vector<CurveSample>& samples,
                           const VerifyOptions& opts = {});
CheckResult check_reflection(const Solver& solver, const std::vector<CurveSample>& samples,
                             const VerifyOptions& opts = {});
/// gamma_plus(c1,c2,c3) + gamma_minus(c2,c1,c3) over a parameter list.
CheckResult check_gamma_reflection(const Solver& solver, const std::vector<Params>& cs,
                                   const VerifyOptions& opts = {});
CheckResult check_landau(const Solver& solver, const std::vector<double>& lambdas, const VerifyOptions& opts = {});

struct LogSequence {
  std::vector<double> s;           // pole offsets 1e-3 .. 1e-8
  std::vector<double> g;           // (U - limit) ln(s/3)
  std::vector<double> refinement;  // |U - limit - target/ln(s/3)| |ln(s/3)|^1.5
  double target = 4.0;             // limit of g: 4 south, -4 north
};
LogSequence log_sequence(const SolutionCurve& curve, Pole pole);
/// Pole with c_pole = -1 on a curve that is not extremal there.
CheckResult check_log_asymptotics(const Solver& solver, const Params& c, double gamma, Pole pole,
                                  const VerifyOptions& opts = {});

enum class Direction { C1, C2, C3, Gamma };
std::string to_string(Direction d);
/// Directions in which a stratum can be moved without leaving it.
std::vector<Direction> allowed_directions(const Stratum& stratum);
/// Log weight paired with the stratum's degenerate poles.
double derivative_weight(const Stratum& stratum, double x);
/// Empty `directions` means every allowed direction.
CheckResult check_param_derivatives(const Solver& solver, const std::vector<CurveSample>& samples,
                                    const Stratum& stratum, std::vector<Direction> directions = {},
                                    const VerifyOptions& opts = {});

CheckResult check_endpoint_table(const Solver& solver, const std::vector<CurveSample>& samples,
                                 const VerifyOptions& opts = {});
CheckResult check_uniqueness_at_boundary(const Solver& solver, double c1, double c2, const VerifyOptions& opts = {});
/// Centered FD quotients of gamma_plus along c2 and c3 settle as the step shrinks (c1 > -1).
CheckResult check_gamma_continuity(const Solver& solver, const Params& c, const VerifyOptions& opts = {});

std::vector<std::string> default_suites();
std::vector<std::string> all_suites();
/// Runs the built-in sample set for each named suite; unknown names throw Config.
/// Results keep a fixed order whatever `jobs` is.
std::vector<CheckResult> run_suites(const std::vector<std::string>& suites, const VerifyOptions& opts = {},
                                    int jobs = 1);

}  // namespace nsaxi
