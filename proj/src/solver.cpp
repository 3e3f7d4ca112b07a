#include "nsaxi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsaxi/dopri.hpp"
#include "nsaxi/error.hpp"

namespace nsaxi {

namespace detail {

// Quintic Hermite basis on [0,1]: value / first derivative, for (y0, y0', y0'', y1, y1', y1'').
namespace {

struct Basis {
  double w[6];
};

Basis hermite5(double th) {
  const double t2 = th * th, t3 = t2 * th, t4 = t3 * th, t5 = t4 * th;
  return {{1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5, th - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
           0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5, 10.0 * t3 - 15.0 * t4 + 6.0 * t5,
           -4.0 * t3 + 7.0 * t4 - 3.0 * t5, 0.5 * t3 - t4 + 0.5 * t5}};
}

Basis hermite5_prime(double th) {
  const double t2 = th * th, t3 = t2 * th, t4 = t3 * th;
  return {{-30.0 * t2 + 60.0 * t3 - 30.0 * t4, 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
           th - 4.5 * t2 + 6.0 * t3 - 2.5 * t4, 30.0 * t2 - 60.0 * t3 + 30.0 * t4,
           -12.0 * t2 + 28.0 * t3 - 15.0 * t4, 1.5 * t2 - 4.0 * t3 + 2.5 * t4}};
}

}  // namespace

struct Node {
  double t;    // ln of the pole offset
  double u;
  double ut;   // dU/dt
  double utt;  // d2U/dt2
};

/// Solution on one half of (-1,1), written in the pole offset s (s = 1+x south, 1-x north)
/// and integrated in t = ln s, where the ODE reads dU/dt = sigma F(s,U) / (2 - s).
struct HalfBranch {
  Pole pole = Pole::South;
  double sigma = 1.0;
  Params c;
  double c_pole = 0.0;  // c1 at the south, c2 at the north
  double ct1 = 0.0;     // linear Taylor coefficient of P_c in s
  std::optional<SeriesExpansion> series;
  std::vector<Node> nodes;  // ascending in t, last node at t = 0 (x = 0)
  EndpointInfo end;
  double residual_max = 0.0;

  HalfBranch(const Params& p, Pole which) : pole(which), c(p) {
    sigma = which == Pole::South ? 1.0 : -1.0;
    c_pole = which == Pole::South ? p.c1 : p.c2;
    ct1 = sigma * (p.c2 - p.c1) + 2.0 * p.c3;
  }

  // P_c - 2xU - U^2/2 with x = sigma (s - 1), free of cancellation near s = 0
  double forcing(double s, double u) const {
    return 2.0 * c_pole + ct1 * s - c.c3 * s * s + 2.0 * sigma * (1.0 - s) * u - 0.5 * u * u;
  }
  double rhs(double s, double u) const { return sigma * forcing(s, u) / (2.0 - s); }
  double rhs_t(double s, double u) const {
    const double f = forcing(s, u);
    const double fs = ct1 - 2.0 * c.c3 * s - 2.0 * sigma * u;
    const double fu = 2.0 * sigma * (1.0 - s) - u;
    const double d = 2.0 - s;
    const double hs = sigma * (fs / d + f / (d * d));
    const double hu = sigma * fu / d;
    return s * hs + rhs(s, u) * hu;
  }

  double t_low() const { return nodes.front().t; }

  bool covers(double s) const {
    if (series && s <= series->radius) return s >= 0.0;
    return s > 0.0 && std::log(s) >= t_low() - 1e-9;
  }

  /// U at offset s, with dU/ds from the interpolant (not the ODE) in *du_ds.
  double value(double s, double* du_ds) const {
    if (series && s <= series->radius) {
      const SeriesValue v = eval_offset(*series, s);
      if (du_ds) *du_ds = v.du;
      return v.u;
    }
    const double t = std::min(std::log(s), 0.0);
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                               [](double v, const Node& n) { return v < n.t; });
    if (it == nodes.begin()) ++it;
    if (it == nodes.end()) --it;
    const Node& a = *(it - 1);
    const Node& b = *it;
    const double h = b.t - a.t;
    const double th = std::clamp((t - a.t) / h, 0.0, 1.0);
    const Basis w = hermite5(th);
    const double u = w.w[0] * a.u + h * w.w[1] * a.ut + h * h * w.w[2] * a.utt + w.w[3] * b.u +
                     h * w.w[4] * b.ut + h * h * w.w[5] * b.utt;
    if (du_ds) {
      const Basis d = hermite5_prime(th);
      const double ut = (d.w[0] * a.u + d.w[3] * b.u) / h + d.w[1] * a.ut + h * d.w[2] * a.utt +
                        d.w[4] * b.ut + h * d.w[5] * b.utt;
      *du_ds = ut / s;
    }
    return u;
  }

  /// (1-x^2)U' + 2xU + U^2/2 - P_c at offset s using the interpolant slope.
  double residual(double s) const {
    double du_ds = 0.0;
    const double u = value(s, &du_ds);
    return sigma * s * (2.0 - s) * du_ds - forcing(s, u);
  }

  Node make_node(double t, double u, double ut) const { return {t, u, ut, rhs_t(std::exp(t), u)}; }

  void measure_residual() {
    double worst = 0.0;
    if (series) {
      for (double f : {1.0, 0.5, 0.1, 1e-2, 1e-4}) worst = std::max(worst, std::abs(residual(f * series->radius)));
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      for (double th : {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9}) {
        const double t = nodes[i].t + th * (nodes[i + 1].t - nodes[i].t);
        worst = std::max(worst, std::abs(residual(std::exp(t))));
      }
    }
    residual_max = worst;
  }
};

}  // namespace detail

namespace {

using detail::HalfBranch;
using detail::Node;

struct HalfResult {
  std::shared_ptr<HalfBranch> half;
  DopriStatus status = DopriStatus::Done;
  double last_s = 1.0;
  double last_u = 0.0;
};

DopriOptions dopri_options(const SolverOptions& o) {
  DopriOptions d;
  d.rtol = o.rtol;
  d.atol = o.atol;
  // the quintic interpolant slope loses accuracy well before the integrator does
  d.max_step = o.max_step;
  return d;
}

double x_of(Pole pole, double s) { return pole == Pole::South ? s - 1.0 : 1.0 - s; }

/// Runs `step` with a shrinking step cap until the sampled residual of the half branch meets
/// the target or the cap bottoms out. Large steps in ln s can pass the integrator's error
/// test while the quintic interpolant between nodes is still too coarse.
template <class Run>
HalfResult refine(const SolverOptions& o, Run&& run) {
  DopriOptions d = dopri_options(o);
  for (int pass = 0;; ++pass) {
    HalfResult r = run(d);
    if (r.status != DopriStatus::Done) return r;
    r.half->measure_residual();
    if (r.half->residual_max <= o.residual_target || pass == o.max_refine) return r;
    d.max_step *= 0.25;
  }
}

/// Integrates from x = 0 (t = 0) toward the pole, down to the cutoff.
HalfResult integrate_outward(const Params& c, Pole pole, double u0, const SolverOptions& o, double cap) {
  return refine(o, [&](const DopriOptions& d) {
    auto half = std::make_shared<HalfBranch>(c, pole);
    std::vector<Node> nodes;
    auto f = [&](double t, double u) { return half->rhs(std::exp(t), u); };
    auto on_step = [&](double t, double u, double ut) { nodes.push_back(half->make_node(t, u, ut)); };
    auto escaped = [&](double u) { return !(std::abs(u) <= cap); };
    const DopriResult r = dopri5(f, 0.0, u0, std::log(o.pole_cutoff), d, on_step, escaped);
    std::reverse(nodes.begin(), nodes.end());
    half->nodes = std::move(nodes);
    return HalfResult{half, r.status, std::exp(r.t), r.y};
  });
}

/// Starts on the pole series and integrates inward to x = 0.
HalfResult integrate_inward(const Params& c, Pole pole, const SolverOptions& o, double cap) {
  const EndpointConstants tc = tau_constants(c.c1, c.c2);
  const SeriesExpansion series =
      pole == Pole::South ? expand_south(c, tc.tau2, o.series) : expand_north(c, tc.tau1p, o.series);
  return refine(o, [&](const DopriOptions& d) {
    auto half = std::make_shared<HalfBranch>(c, pole);
    half->series = series;
    const double s0 = series.radius;
    const double u0 = eval_offset(series, s0).u;
    std::vector<Node> nodes;
    auto f = [&](double t, double u) { return half->rhs(std::exp(t), u); };
    auto on_step = [&](double t, double u, double ut) { nodes.push_back(half->make_node(t, u, ut)); };
    auto escaped = [&](double u) { return !(std::abs(u) <= cap); };
    const DopriResult r = dopri5(f, std::log(s0), u0, 0.0, d, on_step, escaped);
    half->nodes = std::move(nodes);
    half->end = {series.tau, series.tau, 0.0, true, true};
    return HalfResult{half, r.status, std::exp(r.t), r.y};
  });
}

[[noreturn]] void fail(const HalfResult& r, Pole pole) {
  std::ostringstream os;
  os.precision(17);
  if (r.status == DopriStatus::Escaped) {
    os << "|U| exceeded the a-priori bound at x = " << x_of(pole, r.last_s) << " (U = " << r.last_u << ")";
    throw Error(ErrorKind::Escape, os.str());
  }
  os << "integration stalled at x = " << x_of(pole, r.last_s);
  throw Error(ErrorKind::Stiffness, os.str());
}

struct PoleRoots {
  double attracting;  // limit reached by integrating toward the pole
  double repelling;   // analytic branch
  double alpha;       // sqrt(1 + c_pole)
};

PoleRoots roots(const Params& c, Pole pole) {
  const EndpointConstants tc = tau_constants(c.c1, c.c2);
  if (pole == Pole::South) return {tc.tau1, tc.tau2, std::sqrt(1.0 + c.c1)};
  return {tc.tau2p, tc.tau1p, std::sqrt(1.0 + c.c2)};
}

/// Window above the analytic root that no admissible solution enters near the cutoff.
double escape_window(const HalfBranch& h, const PoleRoots& pr, const SolverOptions& o) {
  const double a1 = h.ct1 / pr.repelling - 2.0 * h.sigma;
  return o.match_abs + 10.0 * o.pole_cutoff * (1.0 + std::abs(a1));
}

/// Extrapolates U to the pole from the three samples closest to the cutoff and matches the
/// result against the two admissible limits.
EndpointInfo match_endpoint(const HalfBranch& h, const SolverOptions& o) {
  const PoleRoots pr = roots(h.c, h.pole);
  const double s3 = o.pole_cutoff, s2 = 10.0 * s3, s1 = 100.0 * s3;
  const double u1 = h.value(s1, nullptr), u2 = h.value(s2, nullptr), u3 = h.value(s3, nullptr);
  const double gap = std::abs(pr.repelling - pr.attracting);
  const bool degenerate = gap <= o.match_abs;

  double la = 0.0, lb = 0.0;
  if (degenerate) {
    // U ~ tau + 4 sigma / ln(s/3)
    la = u2 - 4.0 * h.sigma / std::log(s2 / 3.0);
    lb = u3 - 4.0 * h.sigma / std::log(s3 / 3.0);
  } else {
    // U ~ tau + A s^p, p = min(alpha, 1)
    const double r = std::pow(10.0, -std::min(pr.alpha, 1.0));
    la = (u2 - r * u1) / (1.0 - r);
    lb = (u3 - r * u2) / (1.0 - r);
  }
  EndpointInfo e;
  e.estimate = lb;
  e.error = std::abs(la - lb);
  e.limit = pr.attracting;
  const double w = std::max(o.match_abs, 10.0 * e.error);
  const bool near_att = std::abs(lb - pr.attracting) <= w;
  const bool near_rep = std::abs(lb - pr.repelling) <= w;
  if (degenerate) {
    e.matched = near_att;
  } else if (near_att != near_rep) {
    e.matched = true;
    e.limit = near_att ? pr.attracting : pr.repelling;
  }
  return e;
}

/// True when the value at the cutoff sits beyond the analytic root on the side that diverges.
bool super_extremal(const HalfBranch& h, const SolverOptions& o, double* u_cut) {
  const PoleRoots pr = roots(h.c, h.pole);
  const double u = h.value(o.pole_cutoff, nullptr);
  if (u_cut) *u_cut = u;
  return h.sigma * (u - pr.repelling) > escape_window(h, pr, o);
}

int k_index(const Params& c) {
  const bool s = c.c1 == -1.0, n = c.c2 == -1.0;
  return s ? (n ? 4 : 2) : (n ? 3 : 1);
}

}  // namespace

std::string to_string(ExistenceReport::Status status) {
  switch (status) {
    case ExistenceReport::Status::Exists: return "Exists";
    case ExistenceReport::Status::NoSolutionC3Below: return "NoSolution_c3_below";
    case ExistenceReport::Status::NoSolutionPoleParameter: return "NoSolution_pole_parameter";
    case ExistenceReport::Status::EscapedAt: return "EscapedAt";
  }
  return "?";
}

// ---------------------------------------------------------------------------------------------
// SolutionCurve

SolutionCurve::SolutionCurve(SolutionIndex index, std::shared_ptr<const detail::HalfBranch> south,
                             std::shared_ptr<const detail::HalfBranch> north)
    : index_(index), south_(std::move(south)), north_(std::move(north)) {
  south_end_ = south_->end;
  north_end_ = north_->end;
  residual_bound_ = std::max(south_->residual_max, north_->residual_max);
  // series halves reach the pole itself
  for (const auto* h : {south_.get(), north_.get()})
    if (!h->series) cutoff_ = std::max(cutoff_, std::exp(h->t_low()));
}

SolutionCurve SolutionCurve::boundary(const SolutionIndex& index) {
  SolutionCurve curve;
  curve.index_ = index;
  const Params& c = index.params;
  const EndpointConstants tc = tau_constants(c.c1, c.c2);
  curve.south_end_ = {tc.tau2, boundary_solution(c.c1, c.c2, -1.0), 0.0, true, true};
  curve.north_end_ = {tc.tau1p, boundary_solution(c.c1, c.c2, 1.0), 0.0, true, true};
  curve.cutoff_ = 0.0;
  double worst = 0.0;
  for (int i = -10; i <= 10; ++i) worst = std::max(worst, curve.residual(0.0999 * i));
  curve.residual_bound_ = worst;
  return curve;
}

double SolutionCurve::gamma() const { return eval(0.0); }

const EndpointInfo& SolutionCurve::endpoint(Pole pole) const {
  return pole == Pole::South ? south_end_ : north_end_;
}

double SolutionCurve::eval_offset(Pole pole, double s) const {
  if (!(s >= 0.0) || s > 1.0) throw Error(ErrorKind::Domain, "pole offset outside [0, 1]");
  if (s == 0.0) return endpoint(pole).limit;
  if (closed_form()) return boundary_solution(params().c1, params().c2, x_of(pole, s));
  const detail::HalfBranch& h = pole == Pole::South ? *south_ : *north_;
  if (!h.covers(s)) throw Error(ErrorKind::PoleProximity, "offset is inside the integration cutoff");
  return h.value(s, nullptr);
}

double SolutionCurve::value_and_slope(double x, double* du) const {
  if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "x outside [-1, 1]");
  if (closed_form()) {
    if (du) *du = boundary_solution_prime(params().c1, params().c2);
    return boundary_solution(params().c1, params().c2, x);
  }
  const Pole pole = x < 0.0 ? Pole::South : Pole::North;
  const double s = x < 0.0 ? 1.0 + x : 1.0 - x;
  if (s == 0.0) {
    if (du) *du = std::numeric_limits<double>::quiet_NaN();
    return endpoint(pole).limit;
  }
  const detail::HalfBranch& h = pole == Pole::South ? *south_ : *north_;
  if (!h.covers(s)) throw Error(ErrorKind::PoleProximity, "x is inside the integration cutoff");
  double du_ds = 0.0;
  const double u = h.value(s, &du_ds);
  if (du) *du = h.sigma * du_ds;
  return u;
}

double SolutionCurve::eval(double x) const { return value_and_slope(x, nullptr); }

Derivs SolutionCurve::derivs(double x) const {
  if (x <= -1.0 || x >= 1.0) throw Error(ErrorKind::PoleProximity, "derivatives are not defined at the poles");
  const Params& c = params();
  Derivs d;
  d.u = eval(x);
  if (closed_form()) {
    d.u1 = boundary_solution_prime(c.c1, c.c2);
    return d;
  }
  const double q = (1.0 - x) * (1.0 + x);
  const bool south = x < 0.0;
  const double s = south ? 1.0 + x : 1.0 - x;
  const detail::HalfBranch& h = south ? *south_ : *north_;
  // U' = F / (1 - x^2) with F evaluated in the pole offset
  d.u1 = h.forcing(s, d.u) / (s * (2.0 - s));
  d.u2 = (p_c_prime(x, c) - 2.0 * d.u - d.u * d.u1) / q;
  d.u3 = (-2.0 * c.c3 - 2.0 * d.u1 - d.u1 * d.u1 - d.u * d.u2 + 2.0 * x * d.u2) / q;
  return d;
}

double SolutionCurve::deriv(double x, int order) const {
  if (order < 0 || order > 3) throw Error(ErrorKind::Domain, "derivative order must be 0..3");
  const Derivs d = derivs(x);
  switch (order) {
    case 0: return d.u;
    case 1: return d.u1;
    case 2: return d.u2;
    default: return d.u3;
  }
}

double SolutionCurve::residual(double x) const {
  double du = 0.0;
  const double u = value_and_slope(x, &du);
  return std::abs((1.0 - x) * (1.0 + x) * du + 2.0 * x * u + 0.5 * u * u - p_c(x, params()));
}

double endpoint_value(const SolutionCurve& curve, Pole pole) {
  const EndpointInfo& e = curve.endpoint(pole);
  if (!e.matched) {
    std::ostringstream os;
    os.precision(17);
    os << (pole == Pole::South ? "south" : "north") << " extrapolated value " << e.estimate
       << " (spread " << e.error << ") matches no admissible limit";
    throw Error(ErrorKind::AmbiguousMatch, os.str());
  }
  return e.limit;
}

// ---------------------------------------------------------------------------------------------
// Solver

double Solver::escape_cap(const Params& c) const {
  const double m = std::max({std::abs(2.0 * c.c1), std::abs(2.0 * c.c2), p_c_sup(c)});
  return opts_.escape_factor * (2.0 + std::sqrt(4.0 + 2.0 * m));
}

SolutionIndex Solver::classify(const Params& c, double gamma) const {
  SolutionIndex idx;
  idx.params = c;
  idx.gamma = gamma;
  idx.stratum = Stratum::outside();
  if (c.c1 < -1.0 - kClampWindow || c.c2 < -1.0 - kClampWindow || std::isnan(c.c3) || std::isnan(gamma))
    return idx;
  const Admitted adm = admit(c);
  idx.params = adm.params;
  idx.clamped = adm.clamped;
  const Params& p = adm.params;
  if (!in_j(p, opts_.tol)) return idx;
  if (on_boundary(p, opts_.tol)) {
    const double g = boundary_solution(p.c1, p.c2, 0.0);
    if (within_rel(gamma, g, opts_.tol.gamma_rel)) idx.stratum = Stratum::boundary();
    return idx;
  }
  double gp = 0.0, gm = 0.0;
  try {
    gp = gamma_plus(p);
    gm = gamma_minus(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::Unclassifiable, e.what());
  }
  idx.stratum = interior_stratum(p, gamma, gm, gp, opts_.tol);
  return idx;
}

SolutionCurve Solver::extremal(const Params& c, Extremal which) const {
  const Admitted adm = admit(c);
  const Params& p = adm.params;
  if (!in_j(p, opts_.tol)) throw Error(ErrorKind::Domain, "c is outside J (c3 < c3_bar)");
  SolutionIndex idx{p, 0.0, Stratum::boundary(), adm.clamped};
  if (on_boundary(p, opts_.tol)) {
    idx.gamma = boundary_solution(p.c1, p.c2, 0.0);
    return SolutionCurve::boundary(idx);
  }
  const double cap = escape_cap(p);
  const Pole series_pole = which == Extremal::Upper ? Pole::South : Pole::North;
  const Pole other = which == Extremal::Upper ? Pole::North : Pole::South;

  HalfResult in = integrate_inward(p, series_pole, opts_, cap);
  if (in.status != DopriStatus::Done) fail(in, series_pole);
  const double g = in.half->nodes.back().u;
  HalfResult out = integrate_outward(p, other, g, opts_, cap);
  if (out.status != DopriStatus::Done) fail(out, other);
  out.half->end = match_endpoint(*out.half, opts_);

  idx.gamma = g;
  idx.stratum = Stratum::interior(k_index(p), which == Extremal::Upper ? 2 : 3);
  return which == Extremal::Upper ? SolutionCurve(idx, in.half, out.half) : SolutionCurve(idx, out.half, in.half);
}

SolutionCurve Solver::pole_branches(const Params& c) const {
  const Admitted adm = admit(c);
  const Params& p = adm.params;
  if (!in_j(p, opts_.tol)) throw Error(ErrorKind::Domain, "c is outside J (c3 < c3_bar)");
  const double cap = escape_cap(p);
  HalfResult s = integrate_inward(p, Pole::South, opts_, cap);
  if (s.status != DopriStatus::Done) fail(s, Pole::South);
  HalfResult n = integrate_inward(p, Pole::North, opts_, cap);
  if (n.status != DopriStatus::Done) fail(n, Pole::North);
  const Stratum st = on_boundary(p, opts_.tol) ? Stratum::boundary() : Stratum::outside();
  return SolutionCurve({p, s.half->nodes.back().u, st, adm.clamped}, s.half, n.half);
}

double Solver::gamma_plus(const Params& c) const {
  const Params p = admit(c).params;
  if (!in_j(p, opts_.tol)) throw Error(ErrorKind::Domain, "c is outside J (c3 < c3_bar)");
  if (on_boundary(p, opts_.tol)) return boundary_solution(p.c1, p.c2, 0.0);
  const HalfResult in = integrate_inward(p, Pole::South, opts_, escape_cap(p));
  if (in.status != DopriStatus::Done) fail(in, Pole::South);
  return in.half->nodes.back().u;
}

double Solver::gamma_minus(const Params& c) const {
  const Params p = admit(c).params;
  if (!in_j(p, opts_.tol)) throw Error(ErrorKind::Domain, "c is outside J (c3 < c3_bar)");
  if (on_boundary(p, opts_.tol)) return boundary_solution(p.c1, p.c2, 0.0);
  const HalfResult in = integrate_inward(p, Pole::North, opts_, escape_cap(p));
  if (in.status != DopriStatus::Done) fail(in, Pole::North);
  return in.half->nodes.back().u;
}

SolutionCurve Solver::solve_ivp(const Params& c, double gamma) const {
  SolutionIndex idx = classify(c, gamma);
  if (!idx.stratum.inside()) throw Error(ErrorKind::Domain, "(c, gamma) is outside I");
  if (idx.stratum.kind == Stratum::Kind::Boundary) return SolutionCurve::boundary(idx);
  if (idx.stratum.l == 2 || idx.stratum.l == 3) {
    SolutionCurve e = extremal(idx.params, idx.stratum.l == 2 ? Extremal::Upper : Extremal::Lower);
    return SolutionCurve(idx, e.south_, e.north_);
  }
  const Params& p = idx.params;
  const double cap = escape_cap(p);
  HalfResult s = integrate_outward(p, Pole::South, gamma, opts_, cap);
  if (s.status != DopriStatus::Done) fail(s, Pole::South);
  HalfResult n = integrate_outward(p, Pole::North, gamma, opts_, cap);
  if (n.status != DopriStatus::Done) fail(n, Pole::North);
  s.half->end = match_endpoint(*s.half, opts_);
  n.half->end = match_endpoint(*n.half, opts_);
  return SolutionCurve(idx, s.half, n.half);
}

Exploration Solver::explore(const Params& c, double gamma) const {
  Exploration ex;
  Params p;
  try {
    p = admit(c).params;
  } catch (const Error& e) {
    ex.report.status = ExistenceReport::Status::NoSolutionPoleParameter;
    ex.report.detail = e.what();
    return ex;
  }
  const double cap = escape_cap(p);
  std::shared_ptr<HalfBranch> halves[2];
  for (Pole pole : {Pole::South, Pole::North}) {
    HalfResult r = integrate_outward(p, pole, gamma, opts_, cap);
    std::ostringstream os;
    os.precision(17);
    if (r.status != DopriStatus::Done) {
      ex.report.status = ExistenceReport::Status::EscapedAt;
      ex.report.escape_x = x_of(pole, r.last_s);
      ex.report.escape_value = r.last_u;
      os << (r.status == DopriStatus::Escaped ? "|U| exceeded " : "integration stalled below ") << cap
         << " toward the " << (pole == Pole::South ? "south" : "north") << " pole";
      ex.report.detail = os.str();
      return ex;
    }
    double u_cut = 0.0;
    if (super_extremal(*r.half, opts_, &u_cut)) {
      ex.report.status = ExistenceReport::Status::EscapedAt;
      ex.report.escape_x = x_of(pole, opts_.pole_cutoff);
      ex.report.escape_value = u_cut;
      os << "value at the " << (pole == Pole::South ? "south" : "north")
         << " cutoff lies beyond the analytic pole limit; the trajectory diverges before the pole";
      ex.report.detail = os.str();
      return ex;
    }
    r.half->end = match_endpoint(*r.half, opts_);
    halves[pole == Pole::South ? 0 : 1] = r.half;
  }
  SolutionIndex idx{p, gamma, Stratum::outside(), false};
  try {
    idx = classify(p, gamma);
  } catch (const Error&) {
  }
  ex.report.status = ExistenceReport::Status::Exists;
  ex.report.detail = "reached both pole cutoffs";
  ex.curve = SolutionCurve(idx, halves[0], halves[1]);
  return ex;
}

ExistenceReport Solver::exists(const Params& c) const {
  ExistenceReport rep;
  Params p;
  try {
    p = admit(c).params;
  } catch (const Error& e) {
    rep.status = ExistenceReport::Status::NoSolutionPoleParameter;
    rep.detail = e.what();
    return rep;
  }
  if (on_boundary(p, opts_.tol)) {
    rep.detail = "c3 = c3_bar: the unique solution is the closed-form boundary profile";
    return rep;
  }
  if (in_j(p, opts_.tol)) {
    rep.detail = "c3 > c3_bar: a two-sided family between the extremal solutions";
    return rep;
  }
  rep.status = ExistenceReport::Status::NoSolutionC3Below;
  // Diagnostic only: follow the analytic south branch and report where it leaves.
  std::ostringstream os;
  os.precision(17);
  const double cap = escape_cap(p);
  HalfResult in = integrate_inward(p, Pole::South, opts_, cap);
  if (in.status != DopriStatus::Done) {
    rep.escape_x = x_of(Pole::South, in.last_s);
    rep.escape_value = in.last_u;
  } else {
    HalfResult out = integrate_outward(p, Pole::North, in.half->nodes.back().u, opts_, cap);
    double u_cut = 0.0;
    if (out.status != DopriStatus::Done) {
      rep.escape_x = x_of(Pole::North, out.last_s);
      rep.escape_value = out.last_u;
    } else if (super_extremal(*out.half, opts_, &u_cut)) {
      rep.escape_x = x_of(Pole::North, opts_.pole_cutoff);
      rep.escape_value = u_cut;
    }
  }
  os << "c3 < c3_bar(c1, c2) = " << c3_bar(p.c1, p.c2);
  if (rep.escape_x) os << "; analytic south branch escapes at x = " << *rep.escape_x;
  rep.detail = os.str();
  return rep;
}

}  // namespace nsaxi
