#include "nsaxi/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "nsaxi/error.hpp"
#include "nsaxi/fields.hpp"
#include "nsaxi/format.hpp"

namespace nsaxi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string params_str(const Params& c) {
  return "c=(" + format_double(c.c1) + "," + format_double(c.c2) + "," + format_double(c.c3) + ")";
}

class Collector {
 public:
  Collector(CheckResult& r, int limit) : r_(r), limit_(limit) {}
  void add(std::string input, double value) {
    if (static_cast<int>(r_.witnesses.size()) < limit_) r_.witnesses.push_back({std::move(input), value});
  }

 private:
  CheckResult& r_;
  int limit_;
};

CheckResult finish(CheckResult r) {
  r.passed = r.measured <= r.bound;
  return r;
}

CheckResult failed(CheckResult r, const std::string& input, const std::exception& e) {
  r.measured = kInf;
  r.witnesses.push_back({input + ": " + e.what(), kInf});
  return finish(std::move(r));
}

Params admitted_in_j(const Params& c, const SolverOptions& o) {
  const Params p = admit(c).params;
  if (!in_j(p, o.tol)) throw Error(ErrorKind::Precondition, params_str(c) + " is outside J");
  return p;
}

}  // namespace

std::string CurveSample::label() const {
  switch (branch) {
    case Branch::Upper: return params_str(c) + " upper";
    case Branch::Lower: return params_str(c) + " lower";
    case Branch::Gamma: break;
  }
  return params_str(c) + " gamma=" + format_double(gamma);
}

CurveSample CurveSample::reflected() const {
  CurveSample r{{c.c2, c.c1, c.c3}, branch, -gamma};
  if (branch == Branch::Upper) r.branch = Branch::Lower;
  if (branch == Branch::Lower) r.branch = Branch::Upper;
  return r;
}

SolutionCurve realize(const Solver& solver, const CurveSample& sample) {
  switch (sample.branch) {
    case CurveSample::Branch::Upper: return solver.extremal(sample.c, Extremal::Upper);
    case CurveSample::Branch::Lower: return solver.extremal(sample.c, Extremal::Lower);
    case CurveSample::Branch::Gamma: break;
  }
  return solver.solve_ivp(sample.c, sample.gamma);
}

std::vector<double> interior_grid(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = -1.0 + (2.0 * i + 1.0) / n;
  return xs;
}

// ---------------------------------------------------------------------------------------------

CheckResult check_foliation(const Solver& solver, const Params& c, const std::vector<double>& gammas,
                            const VerifyOptions& opts) {
  CheckResult r;
  r.name = "foliation " + params_str(c) + " n=" + std::to_string(gammas.size());
  r.bound = 0.0;
  const Params p = admitted_in_j(c, solver.options());
  if (on_boundary(p, solver.options().tol))
    throw Error(ErrorKind::Precondition, "foliation needs c3 > c3_bar");
  if (std::adjacent_find(gammas.begin(), gammas.end(), std::greater_equal<>()) != gammas.end())
    throw Error(ErrorKind::Precondition, "gammas must be strictly increasing");

  std::vector<SolutionCurve> curves;
  for (double g : gammas) {
    try {
      curves.push_back(solver.solve_ivp(p, g));
    } catch (const std::exception& e) {
      return failed(std::move(r), "gamma=" + format_double(g), e);
    }
  }
  Collector w(r, opts.max_witnesses);
  double min_margin = kInf;
  for (double x : interior_grid(opts.grid_points)) {
    for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
      const double margin = curves[i + 1].eval(x) - curves[i].eval(x);
      min_margin = std::min(min_margin, margin);
      if (margin <= 0.0) {
        // a tie is a violation too, so it must count above the zero bound
        r.measured = std::max(r.measured, std::max(-margin, std::numeric_limits<double>::denorm_min()));
        w.add("x=" + format_double(x) + " gammas=" + format_double(gammas[i]) + "," + format_double(gammas[i + 1]),
              margin);
      }
    }
  }
  if (curves.size() > 1) r.note = "smallest margin " + format_double(min_margin);
  return finish(std::move(r));
}

CheckResult check_sandwich(const Solver& solver, const Params& c, const std::vector<double>& gammas,
                           const VerifyOptions& opts) {
  CheckResult r;
  r.name = "sandwich " + params_str(c) + " n=" + std::to_string(gammas.size());
  r.bound = opts.sandwich_tol;
  const Params p = admitted_in_j(c, solver.options());
  Collector w(r, opts.max_witnesses);
  try {
    const SolutionCurve up = solver.extremal(p, Extremal::Upper);
    const SolutionCurve lo = solver.extremal(p, Extremal::Lower);
    for (double g : gammas) {
      const SolutionCurve u = solver.solve_ivp(p, g);
      for (double x : interior_grid(opts.grid_points)) {
        const double v = u.eval(x);
        const double excess = std::max(v - up.eval(x), lo.eval(x) - v);
        if (excess > r.measured) r.measured = excess;
        if (excess > r.bound) w.add("gamma=" + format_double(g) + " x=" + format_double(x), excess);
      }
    }
  } catch (const std::exception& e) {
    return failed(std::move(r), params_str(p), e);
  }
  return finish(std::move(r));
}

CheckResult check_residual(const Solver& solver, const std::vector<CurveSample>& samples,
                           const VerifyOptions& opts) {
  CheckResult r;
  r.name = "residual n=" + std::to_string(samples.size());
  r.bound = opts.residual_tol;
  Collector w(r, opts.max_witnesses);
  double reported = 0.0;
  for (const CurveSample& s : samples) {
    try {
      const SolutionCurve curve = realize(solver, s);
      reported = std::max(reported, curve.residual_bound());
      double worst = 0.0, at = 0.0;
      for (double x : interior_grid(opts.grid_points)) {
        const double res = curve.residual(x);
        if (res > worst) worst = res, at = x;
      }
      r.measured = std::max(r.measured, worst);
      if (worst > r.bound) w.add(s.label() + " x=" + format_double(at), worst);
    } catch (const std::exception& e) {
      return failed(std::move(r), s.label(), e);
    }
  }
  r.note = "largest residual_bound " + format_double(reported);
  return finish(std::move(r));
}

CheckResult check_reflection(const Solver& solver, const std::vector<CurveSample>& samples,
                             const VerifyOptions& opts) {
  CheckResult r;
  r.name = "reflection n=" + std::to_string(samples.size());
  r.bound = opts.reflection_tol;
  Collector w(r, opts.max_witnesses);
  for (const CurveSample& s : samples) {
    try {
      const SolutionCurve a = realize(solver, s);
      const SolutionCurve b = realize(solver, s.reflected());
      for (double x : interior_grid(opts.grid_points)) {
        const double d = std::abs(a.eval(x) + b.eval(-x));
        r.measured = std::max(r.measured, d);
        if (d > r.bound) w.add(s.label() + " x=" + format_double(x), d);
      }
    } catch (const std::exception& e) {
      return failed(std::move(r), s.label(), e);
    }
  }
  return finish(std::move(r));
}

CheckResult check_gamma_reflection(const Solver& solver, const std::vector<Params>& cs, const VerifyOptions& opts) {
  CheckResult r;
  r.name = "gamma reflection n=" + std::to_string(cs.size());
  r.bound = opts.reflection_tol;
  Collector w(r, opts.max_witnesses);
  for (const Params& c : cs) {
    try {
      const double d = std::abs(solver.gamma_plus(c) + solver.gamma_minus({c.c2, c.c1, c.c3}));
      r.measured = std::max(r.measured, d);
      if (d > r.bound) w.add(params_str(c), d);
    } catch (const std::exception& e) {
      return failed(std::move(r), params_str(c), e);
    }
  }
  return finish(std::move(r));
}

CheckResult check_landau(const Solver& solver, const std::vector<double>& lambdas, const VerifyOptions& opts) {
  CheckResult r;
  r.name = "landau n=" + std::to_string(lambdas.size());
  r.bound = opts.landau_tol;
  Collector w(r, opts.max_witnesses);
  const int n = opts.grid_points;
  for (double lambda : lambdas) {
    try {
      const SolutionCurve u = solver.solve_ivp({0.0, 0.0, 0.0}, 2.0 / lambda);
      for (int i = 0; i < n; ++i) {
        const double x = -opts.landau_span + 2.0 * opts.landau_span * i / (n - 1);
        const double d = std::abs(u.eval(x) - landau(lambda, x));
        r.measured = std::max(r.measured, d);
        if (d > r.bound) w.add("lambda=" + format_double(lambda) + " x=" + format_double(x), d);
      }
    } catch (const std::exception& e) {
      return failed(std::move(r), "lambda=" + format_double(lambda), e);
    }
  }
  return finish(std::move(r));
}

// ---------------------------------------------------------------------------------------------

LogSequence log_sequence(const SolutionCurve& curve, Pole pole) {
  LogSequence seq;
  const double limit = pole == Pole::South ? 2.0 : -2.0;
  seq.target = 2.0 * limit;
  for (int k = 3; k <= 8; ++k) {
    const double s = std::pow(10.0, -k);
    const double u = curve.eval_offset(pole, s);
    const double l = std::log(s / 3.0);
    seq.s.push_back(s);
    seq.g.push_back((u - limit) * l);
    seq.refinement.push_back(std::abs(u - limit - seq.target / l) * std::pow(std::abs(l), 1.5));
  }
  return seq;
}

CheckResult check_log_asymptotics(const Solver& solver, const Params& c, double gamma, Pole pole,
                                  const VerifyOptions& opts) {
  const bool south = pole == Pole::South;
  CheckResult r;
  r.name = std::string("log asymptotics ") + (south ? "south " : "north ") + params_str(c) +
           " gamma=" + format_double(gamma);
  r.bound = opts.log_tol;
  const Params p = admit(c).params;
  if ((south ? p.c1 : p.c2) != -1.0)
    throw Error(ErrorKind::Precondition, "the logarithmic regime needs c1 = -1 (south) or c2 = -1 (north)");
  const SolutionIndex idx = solver.classify(p, gamma);
  if (idx.stratum.kind != Stratum::Kind::Interior || idx.stratum.l == (south ? 2 : 3))
    throw Error(ErrorKind::Precondition, "the curve takes the analytic limit at this pole, no log term");

  LogSequence seq;
  try {
    seq = log_sequence(solver.solve_ivp(p, gamma), pole);
  } catch (const std::exception& e) {
    return failed(std::move(r), params_str(p), e);
  }
  Collector w(r, opts.max_witnesses);
  const double final_gap = std::abs(seq.g.back() - seq.target);
  r.measured = final_gap;
  for (std::size_t i = 0; i + 1 < seq.g.size(); ++i) {
    if (std::abs(seq.g[i + 1] - seq.target) >= std::abs(seq.g[i] - seq.target)) {
      r.measured = kInf;
      w.add("not approaching the limit at s=" + format_double(seq.s[i + 1]), seq.g[i + 1]);
    }
  }
  const double refine = *std::max_element(seq.refinement.begin(), seq.refinement.end());
  if (refine > opts.log_refinement_cap) {
    r.measured = kInf;
    w.add("second-order remainder", refine);
  }
  if (final_gap > opts.log_tol) w.add("s=" + format_double(seq.s.back()) + " g", seq.g.back());
  r.note = "g(" + format_double(seq.s.back()) + ")=" + format_double(seq.g.back()) + " limit " +
           format_double(seq.target) + " gap " + format_double(final_gap) + " max remainder " + format_double(refine);
  return finish(std::move(r));
}

// ---------------------------------------------------------------------------------------------

std::string to_string(Direction d) {
  switch (d) {
    case Direction::C1: return "c1";
    case Direction::C2: return "c2";
    case Direction::C3: return "c3";
    case Direction::Gamma: return "gamma";
  }
  return "?";
}

std::vector<Direction> allowed_directions(const Stratum& stratum) {
  if (stratum.kind != Stratum::Kind::Interior) return {};
  std::vector<Direction> dirs;
  if (stratum.k == 1 || stratum.k == 3) dirs.push_back(Direction::C1);
  if (stratum.k == 1 || stratum.k == 2) dirs.push_back(Direction::C2);
  dirs.push_back(Direction::C3);
  if (stratum.l == 1) dirs.push_back(Direction::Gamma);
  return dirs;
}

double derivative_weight(const Stratum& stratum, double x) {
  const double ls = std::log((1.0 + x) / 3.0);
  const double ln = std::log((1.0 - x) / 3.0);
  switch (stratum.k) {
    case 2: return ls * ls;
    case 3: return ln * ln;
    case 4: return ls * ls * ln * ln;
    default: return 1.0;
  }
}

namespace {

std::vector<double> derivative_grid(double reach) {
  std::vector<double> xs;
  for (int i = -90; i <= 90; ++i) xs.push_back(i / 100.0);
  for (double k = 1.5; k <= -std::log10(reach) + 1e-9; k += 0.5) {
    const double s = std::pow(10.0, -k);
    xs.push_back(-1.0 + s);
    xs.push_back(1.0 - s);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

CurveSample shifted(CurveSample s, Direction d, double h) {
  switch (d) {
    case Direction::C1: s.c.c1 += h; break;
    case Direction::C2: s.c.c2 += h; break;
    case Direction::C3: s.c.c3 += h; break;
    case Direction::Gamma: s.gamma += h; break;
  }
  return s;
}

Stratum sample_stratum(const Solver& solver, const CurveSample& s) {
  const Params p = admit(s.c).params;
  switch (s.branch) {
    case CurveSample::Branch::Upper: return Stratum::interior(solver.classify(p, solver.gamma_plus(p)).stratum.k, 2);
    case CurveSample::Branch::Lower: return Stratum::interior(solver.classify(p, solver.gamma_minus(p)).stratum.k, 3);
    case CurveSample::Branch::Gamma: break;
  }
  return solver.classify(p, s.gamma).stratum;
}

void check_margin(const Solver& solver, const CurveSample& s, double m) {
  const Params p = admit(s.c).params;
  bool ok = p.c3 - c3_bar(p.c1, p.c2) >= m;
  if (p.c1 != -1.0) ok = ok && p.c1 + 1.0 >= m;
  if (p.c2 != -1.0) ok = ok && p.c2 + 1.0 >= m;
  if (s.branch == CurveSample::Branch::Gamma)
    ok = ok && solver.gamma_plus(p) - s.gamma >= m && s.gamma - solver.gamma_minus(p) >= m;
  if (!ok) throw Error(ErrorKind::Precondition, s.label() + " is within the margin of its stratum boundary");
}

}  // namespace

CheckResult check_param_derivatives(const Solver& solver, const std::vector<CurveSample>& samples,
                                    const Stratum& stratum, std::vector<Direction> directions,
                                    const VerifyOptions& opts) {
  CheckResult r;
  const std::vector<Direction> allowed = allowed_directions(stratum);
  if (allowed.empty()) throw Error(ErrorKind::Precondition, "derivatives are only checked inside I_{k,l}");
  if (directions.empty()) directions = allowed;
  std::string dir_names;
  for (Direction d : directions) {
    if (std::find(allowed.begin(), allowed.end(), d) == allowed.end())
      throw Error(ErrorKind::Precondition, "direction " + to_string(d) + " leaves stratum " + stratum.name());
    dir_names += (dir_names.empty() ? "" : ",") + to_string(d);
  }
  r.name = "param derivatives " + stratum.name() + " d=" + dir_names + " n=" + std::to_string(samples.size());
  r.bound = opts.derivative_cap;
  for (const CurveSample& s : samples) {
    const Stratum got = sample_stratum(solver, s);
    if (!(got == stratum))
      throw Error(ErrorKind::Precondition, s.label() + " lies in " + got.name() + ", not " + stratum.name());
    check_margin(solver, s, opts.derivative_margin);
  }

  Collector w(r, opts.max_witnesses);
  const std::vector<double> xs = derivative_grid(opts.derivative_reach);
  // weighted max of the centered difference quotient over the grid
  auto weighted = [&](const CurveSample& s, Direction d, double h) {
    const SolutionCurve plus = realize(solver, shifted(s, d, h));
    const SolutionCurve minus = realize(solver, shifted(s, d, -h));
    double worst = 0.0;
    for (double x : xs)
      worst = std::max(worst, derivative_weight(stratum, x) * std::abs(plus.eval(x) - minus.eval(x)) / (2.0 * h));
    return worst;
  };
  double worst_change = 0.0;
  for (const CurveSample& s : samples) {
    for (Direction d : directions) {
      const std::string input = s.label() + " d=" + to_string(d);
      try {
        const double m1 = weighted(s, d, opts.fd_step);
        const double m2 = weighted(s, d, 0.5 * opts.fd_step);
        const double change = std::abs(m1 - m2) / std::max(m2, 1e-8);
        worst_change = std::max(worst_change, change);
        r.measured = std::max(r.measured, std::max(m1, m2));
        if (change >= opts.fd_stability) {
          r.measured = kInf;
          w.add(input + " step-unstable, relative change", change);
        } else if (m1 > r.bound) {
          w.add(input, m1);
        }
      } catch (const std::exception& e) {
        return failed(std::move(r), input, e);
      }
    }
  }
  r.note = "largest relative change on halving the step " + format_double(worst_change);
  return finish(std::move(r));
}

// ---------------------------------------------------------------------------------------------

CheckResult check_endpoint_table(const Solver& solver, const std::vector<CurveSample>& samples,
                                 const VerifyOptions& opts) {
  CheckResult r;
  r.name = "endpoint table n=" + std::to_string(samples.size());
  r.bound = opts.solver.match_abs;
  Collector w(r, opts.max_witnesses);
  for (const CurveSample& s : samples) {
    try {
      const SolutionCurve curve = realize(solver, s);
      const Params& p = curve.params();
      const EndpointConstants tc = tau_constants(p.c1, p.c2);
      const Stratum st = curve.index().stratum;
      const bool boundary = st.kind == Stratum::Kind::Boundary;
      const double want_s = boundary || st.l == 2 ? tc.tau2 : tc.tau1;
      const double want_n = boundary || st.l == 3 ? tc.tau1p : tc.tau2p;
      const double ds = std::abs(endpoint_value(curve, Pole::South) - want_s);
      const double dn = std::abs(endpoint_value(curve, Pole::North) - want_n);
      r.measured = std::max({r.measured, ds, dn});
      if (ds > r.bound) w.add(s.label() + " south", ds);
      if (dn > r.bound) w.add(s.label() + " north", dn);
    } catch (const std::exception& e) {
      return failed(std::move(r), s.label(), e);
    }
  }
  return finish(std::move(r));
}

CheckResult check_uniqueness_at_boundary(const Solver& solver, double c1, double c2, const VerifyOptions& opts) {
  const Params c{c1, c2, c3_bar(c1, c2)};
  CheckResult r;
  r.name = "uniqueness " + params_str(c);
  r.bound = opts.uniqueness_tol;
  Collector w(r, opts.max_witnesses);
  const double g0 = boundary_solution(c1, c2, 0.0);
  try {
    const SolutionCurve direct = solver.solve_ivp(c, g0);
    const SolutionCurve numeric = solver.pole_branches(c);
    const int n = opts.grid_points;
    for (int i = 0; i < n; ++i) {
      const double x = -opts.uniqueness_span + 2.0 * opts.uniqueness_span * i / (n - 1);
      const double exact = boundary_solution(c1, c2, x);
      const double d = std::max(std::abs(direct.eval(x) - exact), std::abs(numeric.eval(x) - exact));
      r.measured = std::max(r.measured, d);
      if (d > r.bound) w.add("x=" + format_double(x), d);
    }
  } catch (const std::exception& e) {
    return failed(std::move(r), params_str(c), e);
  }
  std::string escapes;
  for (double sign : {1.0, -1.0}) {
    const double g = g0 + sign * opts.perturbation;
    const Exploration ex = solver.explore(c, g);
    if (ex.report.status != ExistenceReport::Status::EscapedAt) {
      r.measured = kInf;
      w.add("gamma=" + format_double(g) + " reached both poles", g);
    } else {
      escapes += (escapes.empty() ? "" : "; ") + std::string("gamma=") + format_double(g) + " escapes at x=" +
                 format_double(*ex.report.escape_x);
    }
  }
  r.note = escapes;
  return finish(std::move(r));
}

CheckResult check_gamma_continuity(const Solver& solver, const Params& c, const VerifyOptions& opts) {
  CheckResult r;
  r.name = "gamma continuity " + params_str(c);
  r.bound = opts.continuity_tol;
  const Params p = admitted_in_j(c, solver.options());
  if (p.c1 == -1.0 || p.c3 - c3_bar(p.c1, p.c2) < 0.05)
    throw Error(ErrorKind::Precondition, "continuity is checked on compact sets with c1 > -1 inside J");
  Collector w(r, opts.max_witnesses);
  for (Direction d : {Direction::C2, Direction::C3}) {
    try {
      std::vector<double> q;
      for (double h : {1e-2, 1e-3, 1e-4}) {
        const CurveSample a = shifted({p}, d, h), b = shifted({p}, d, -h);
        q.push_back((solver.gamma_plus(a.c) - solver.gamma_plus(b.c)) / (2.0 * h));
      }
      const double late = std::abs(q[2] - q[1]), early = std::abs(q[1] - q[0]);
      const double rel = late / std::max(1.0, std::abs(q[1]));
      r.measured = std::max(r.measured, rel);
      if (late > early) {
        r.measured = kInf;
        w.add("d=" + to_string(d) + " quotients drift apart", late);
      } else if (rel > r.bound) {
        w.add("d=" + to_string(d), rel);
      }
    } catch (const std::exception& e) {
      return failed(std::move(r), "d=" + to_string(d), e);
    }
  }
  return finish(std::move(r));
}

// ---------------------------------------------------------------------------------------------
// built-in sample set

namespace {

using Task = std::function<CheckResult()>;

std::vector<double> spread(double lo, double hi, int n, bool ends) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i)
    v.push_back(ends ? lo + (hi - lo) * i / (n - 1) : lo + (hi - lo) * (i + 1) / (n + 1));
  return v;
}

void plan(const std::string& suite, const Solver& sv, const VerifyOptions& o, std::vector<Task>& out) {
  const Solver* s = &sv;
  auto mid = [s](const Params& c) { return 0.5 * (s->gamma_plus(c) + s->gamma_minus(c)); };
  if (suite == "foliation") {
    out.push_back([=] {
      const Params c{0, 0, 1};
      return check_foliation(*s, c, spread(s->gamma_minus(c), s->gamma_plus(c), 9, false), o);
    });
    out.push_back([=] { return check_foliation(*s, {0, 0, 0}, {-1, 0, 1}, o); });
    out.push_back([=] {
      const Params c{0, 0, 0};
      return check_foliation(*s, c, {s->gamma_minus(c), s->gamma_plus(c)}, o);
    });
    out.push_back([=] {
      const Params c{3, 0, 0};
      return check_foliation(*s, c, spread(s->gamma_minus(c), s->gamma_plus(c), 5, true), o);
    });
    out.push_back([=] {
      const Params c{-1, -1, 1};
      return check_foliation(*s, c, spread(s->gamma_minus(c), s->gamma_plus(c), 5, true), o);
    });
  } else if (suite == "sandwich") {
    for (Params c : {Params{0, 0, 1}, Params{3, 0, 0}, Params{0.5, -1, 0.2}, Params{-1, -1, 1}}) {
      out.push_back([=] { return check_sandwich(*s, c, spread(s->gamma_minus(c), s->gamma_plus(c), 5, false), o); });
    }
  } else if (suite == "residual") {
    out.push_back([=] {
      std::vector<CurveSample> v;
      for (double lambda : {1.5, -1.5, 2.0, -2.0, 5.0}) v.push_back({{0, 0, 0}, CurveSample::Branch::Gamma, 2.0 / lambda});
      v.push_back({{0, 0, 0}, CurveSample::Branch::Upper});
      v.push_back({{0, 0, 0}, CurveSample::Branch::Lower});
      for (auto [a, b] : {std::pair{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}, {-1.0, -1.0}}) {
        const Params c{a, b, c3_bar(a, b)};
        v.push_back({c, CurveSample::Branch::Gamma, boundary_solution(a, b, 0.0)});
      }
      return check_residual(*s, v, o);
    });
    out.push_back([=] {
      std::vector<CurveSample> v;
      for (Params c : {Params{0, 0, 1}, Params{3, 0, 0}, Params{0, 3, 0}, Params{-1, 0, 0}, Params{0.5, -1, 0.2},
                       Params{-1, -1, 1}, Params{2, 1, -3}}) {
        v.push_back({c, CurveSample::Branch::Gamma, mid(c)});
        v.push_back({c, CurveSample::Branch::Upper});
        v.push_back({c, CurveSample::Branch::Lower});
      }
      return check_residual(*s, v, o);
    });
  } else if (suite == "reflection") {
    out.push_back([=] {
      return check_reflection(*s,
                              {{{0.5, 2, 1}, CurveSample::Branch::Gamma, 0.3},
                               {{3, 0, 0}, CurveSample::Branch::Upper},
                               {{0, 3, 0}, CurveSample::Branch::Lower},
                               {{-1, 0.5, 0.2}, CurveSample::Branch::Gamma, 0.0}},
                              o);
    });
    out.push_back([=] {
      std::vector<Params> cs;
      for (double a : {-1.0, -0.5, 0.0, 1.0, 3.0})
        for (double b : {-1.0, -0.5, 0.0, 1.0, 3.0})
          for (double off : {0.25, 1.0, 3.0}) cs.push_back({a, b, c3_bar(a, b) + off});
      return check_gamma_reflection(*s, cs, o);
    });
  } else if (suite == "landau") {
    out.push_back([=] { return check_landau(*s, {1.5, -1.5, 2.0, -2.0, 5.0}, o); });
  } else if (suite == "endpoint_table") {
    out.push_back([=] {
      std::vector<CurveSample> v;
      for (Params c : {Params{0, 0, 0}, Params{3, 0, 0}, Params{0, 3, 0}}) {
        v.push_back({c, CurveSample::Branch::Gamma, mid(c)});
        v.push_back({c, CurveSample::Branch::Upper});
        v.push_back({c, CurveSample::Branch::Lower});
      }
      v.push_back({{0, 0, 0}, CurveSample::Branch::Gamma, 1.0});
      v.push_back({{0, 0, -4}, CurveSample::Branch::Gamma, 0.0});
      v.push_back({{-1, 0, 0}, CurveSample::Branch::Gamma, 0.0});
      return check_endpoint_table(*s, v, o);
    });
  } else if (suite == "uniqueness") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}, {-1.0, -1.0}})
      out.push_back([=] { return check_uniqueness_at_boundary(*s, a, b, o); });
  } else if (suite == "log_asymptotics") {
    out.push_back([=] { return check_log_asymptotics(*s, {-1, 0, 0}, 0.0, Pole::South, o); });
    out.push_back([=] { return check_log_asymptotics(*s, {0, -1, 0}, 0.0, Pole::North, o); });
  } else if (suite == "param_derivatives") {
    out.push_back([=] {
      return check_param_derivatives(*s,
                                     {{{0, 0, 1}, CurveSample::Branch::Gamma, 0.0},
                                      {{1, 0.5, 0}, CurveSample::Branch::Gamma, mid({1, 0.5, 0})}},
                                     Stratum::interior(1, 1), {}, o);
    });
    out.push_back([=] {
      return check_param_derivatives(*s,
                                     {{{-1, 0, 0}, CurveSample::Branch::Gamma, 0.0},
                                      {{-1, 1, 0.5}, CurveSample::Branch::Gamma, mid({-1, 1, 0.5})}},
                                     Stratum::interior(2, 1), {Direction::C2, Direction::C3, Direction::Gamma}, o);
    });
    out.push_back([=] {
      return check_param_derivatives(*s, {{{-1, -1, 1}, CurveSample::Branch::Gamma, mid({-1, -1, 1})}},
                                     Stratum::interior(4, 1), {Direction::C3, Direction::Gamma}, o);
    });
  } else if (suite == "gamma_continuity") {
    out.push_back([=] { return check_gamma_continuity(*s, {0, 0, 1}, o); });
    out.push_back([=] { return check_gamma_continuity(*s, {1, 2, 0}, o); });
  } else {
    throw Error(ErrorKind::Config, "unknown verify suite '" + suite + "'");
  }
}

}  // namespace

std::vector<std::string> default_suites() {
  return {"foliation", "sandwich", "residual", "reflection", "landau", "endpoint_table", "uniqueness"};
}

std::vector<std::string> all_suites() {
  std::vector<std::string> v = default_suites();
  v.insert(v.end(), {"log_asymptotics", "param_derivatives", "gamma_continuity"});
  return v;
}

std::vector<CheckResult> run_suites(const std::vector<std::string>& suites, const VerifyOptions& opts, int jobs) {
  const Solver solver(opts.solver);
  std::vector<Task> tasks;
  for (const std::string& name : suites) plan(name, solver, opts, tasks);

  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        CheckResult r;
        r.name = "setup";
        results[i] = failed(std::move(r), "check could not start", e);
      }
    }
  };
  const int n = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace nsaxi
