#include "nsaxi/series.hpp"

#include <algorithm>
#include <cmath>

#include "nsaxi/error.hpp"

namespace nsaxi {

namespace {

// Coefficient recurrences in the pole offset s, with a_0 = tau and ct_n the
// Taylor coefficients of P_c in s:
// South (s = 1+x): (2n-2+tau) a_n + (3-n) a_{n-1} + 1/2 sum a_k a_{n-k} = ct_n
// North (s = 1-x): (2-2n+tau) a_n + (n-3) a_{n-1} + 1/2 sum a_k a_{n-k} = ct_n
struct Recurrence {
  double tau;
  double ct1;
  double ct2;
  bool north;

  double denom(int n) const { return north ? 2.0 - 2.0 * n + tau : 2.0 * n - 2.0 + tau; }
  double lag(int n) const { return north ? n - 3.0 : 3.0 - n; }
};

void check_root(double tau, double expect_a, double expect_b) {
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!near(tau, expect_a) && !near(tau, expect_b))
    throw Error(ErrorKind::Precondition, "endpoint value is not an admissible pole limit");
}

SeriesExpansion build(const Params& c, Pole pole, const Recurrence& rec, const SeriesOptions& opts) {
  // The denominators vanish for tau in {0,-2,-4,...} (south) or {0,2,4,...} (north).
  for (int n = 1; n <= opts.max_terms; ++n) {
    if (std::abs(rec.denom(n)) < 1e-12)
      throw Error(ErrorKind::DegenerateBranch, "endpoint value hits a resonance of the recurrence");
  }

  SeriesExpansion out;
  out.pole = pole;
  out.params = c;
  out.tau = rec.tau;

  const double scale = std::max(1.0, std::abs(rec.tau));
  std::vector<double> a{rec.tau};  // a[0] = tau
  double growth = 1.0;

  for (int n = 1; n <= opts.max_terms; ++n) {
    double conv = 0.0;
    for (int k = 1; k < n; ++k) conv += a[k] * a[n - k];
    const double forcing = n == 1 ? rec.ct1 : (n == 2 ? rec.ct2 : 0.0);
    const double an = (forcing - rec.lag(n) * a[n - 1] - 0.5 * conv) / rec.denom(n);
    a.push_back(an);

    if (an != 0.0) growth = std::max(growth, std::pow(std::abs(an), 1.0 / n));
    if (growth > opts.growth_cap)
      throw Error(ErrorKind::Divergence, "coefficient growth exceeds cap");

    const double radius = std::min(opts.max_radius, 0.5 / growth);
    const double q = growth * radius;
    if (n < 3) continue;
    bool small = true;
    for (int m = n - 2; m <= n; ++m)
      small = small && std::abs(a[m]) * std::pow(radius, m) < opts.term_tol * scale;
    const double tail = std::pow(q, n + 1) / (1.0 - q);
    if (small && tail < opts.tail_tol * scale) break;
  }

  out.growth = growth;
  out.radius = std::min(opts.max_radius, 0.5 / growth);
  out.coeffs.assign(a.begin() + 1, a.end());
  // Past the forcing terms, a_n only couples to a_{n-1} and products a_k a_{n-k}. Zeros from
  // d+1 through 2d+1 (d the last nonzero index) therefore stay zero for good.
  std::size_t d = a.size() - 1;
  while (d > 0 && a[d] == 0.0) --d;
  out.terminating = a.size() - 1 >= std::max<std::size_t>(2 * d + 1, 3);
  return out;
}

}  // namespace

double SeriesExpansion::tail_bound(double s) const {
  const double q = growth * s;
  if (q >= 1.0) return INFINITY;
  return std::pow(q, static_cast<double>(coeffs.size() + 1)) / (1.0 - q);
}

SeriesExpansion expand_south(const Params& c, double tau, const SeriesOptions& opts) {
  const Admitted adm = admit(c);
  const Params& p = adm.params;
  const EndpointConstants tc = tau_constants(p.c1, p.c2);
  check_root(tau, tc.tau1, tc.tau2);
  // P_c = 2c1 + (-c1 + c2 + 2c3) s - c3 s^2
  return build(p, Pole::South, {tau, -p.c1 + p.c2 + 2.0 * p.c3, -p.c3, false}, opts);
}

SeriesExpansion expand_north(const Params& c, double taup, const SeriesOptions& opts) {
  const Admitted adm = admit(c);
  const Params& p = adm.params;
  const EndpointConstants tc = tau_constants(p.c1, p.c2);
  check_root(taup, tc.tau1p, tc.tau2p);
  // P_c = 2c2 + (c1 - c2 + 2c3) s - c3 s^2
  return build(p, Pole::North, {taup, p.c1 - p.c2 + 2.0 * p.c3, -p.c3, true}, opts);
}

SeriesValue eval_offset(const SeriesExpansion& series, double s) {
  const double reach = series.terminating ? 2.0 : series.radius * (1.0 + 1e-12);
  if (!(s >= 0.0) || s > reach)
    throw Error(ErrorKind::OutOfRadius, "offset outside the series radius");
  // Horner for value and derivative together
  double u = 0.0;
  double du = 0.0;
  for (auto it = series.coeffs.rbegin(); it != series.coeffs.rend(); ++it) {
    du = du * s + u;
    u = u * s + *it;
  }
  // now u = sum a_n s^(n-1), du = d/ds of that
  return {series.tau + s * u, u + s * du};
}

SeriesValue eval(const SeriesExpansion& series, double x) {
  const double s = series.pole == Pole::South ? 1.0 + x : 1.0 - x;
  SeriesValue v = eval_offset(series, s);
  if (series.pole == Pole::North) v.du = -v.du;
  return v;
}

}  // namespace nsaxi
