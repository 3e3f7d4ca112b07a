#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nsaxi/error.hpp"
#include "nsaxi/series.hpp"

using namespace nsaxi;

namespace {

double ode_residual(const SeriesExpansion& s, double x) {
  const SeriesValue v = eval(s, x);
  return (1 - x * x) * v.du + 2 * x * v.u + 0.5 * v.u * v.u - p_c(x, s.params);
}

}  // namespace

TEST_CASE("boundary profile series is exact") {
  const SeriesExpansion s = expand_south({0, 0, -4}, 4.0);
  REQUIRE(s.coeffs.size() >= 2);
  CHECK(s.coeffs[0] == -4.0);
  for (std::size_t n = 1; n < s.coeffs.size(); ++n) CHECK(s.coeffs[n] == 0.0);
  CHECK(s.terminating);
  CHECK(eval(s, -0.9).u == doctest::Approx(3.6).epsilon(1e-15));
}

TEST_CASE("U+ for c = 0 is 2(1-x)") {
  const SeriesExpansion s = expand_south({0, 0, 0}, 4.0);
  CHECK(s.coeffs[0] == -2.0);
  CHECK(eval(s, -0.5).u == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval(s, -0.5).du == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("first coefficients for c = (0,0,1)") {
  const SeriesExpansion s = expand_south({0, 0, 1}, 4.0);
  CHECK(s.coeffs[0] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(s.coeffs[1] == doctest::Approx(-0.1041666666666667).epsilon(1e-14));
  CHECK_FALSE(s.terminating);
}

TEST_CASE("north expansions") {
  const SeriesExpansion a = expand_north({0, 0, -4}, -4.0);
  CHECK(eval(a, 0.99).u == doctest::Approx(-3.96).epsilon(1e-15));
  const SeriesExpansion b = expand_north({0, 0, 0}, -4.0);
  CHECK(eval(b, 0.97).u == doctest::Approx(-2 * 1.97).epsilon(1e-15));
  CHECK(eval(b, 0.97).du == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("north mirrors south") {
  const Params c{0.7, 2.5, 0.4};
  const double taup = tau_constants(c.c1, c.c2).tau1p;
  const SeriesExpansion n = expand_north(c, taup);
  const SeriesExpansion s = expand_south(reflect(c), -taup);
  for (double off : {0.0, 1e-3, 0.01, 0.5 * n.radius}) {
    CHECK(eval(n, 1 - off).u == doctest::Approx(-eval(s, off - 1).u).epsilon(1e-14));
  }
}

TEST_CASE("pole offset zero gives tau and a1") {
  const SeriesExpansion s = expand_south({1, 2, 3}, tau_constants(1, 2).tau2);
  const SeriesValue v = eval_offset(s, 0.0);
  CHECK(v.u == s.tau);
  CHECK(v.du == s.coeffs[0]);
}

TEST_CASE("coefficients respect the growth bound") {
  const SeriesExpansion s = expand_south({2, -0.5, 3}, tau_constants(2, -0.5).tau2);
  for (std::size_t n = 0; n < s.coeffs.size(); ++n)
    CHECK(std::abs(s.coeffs[n]) <= std::pow(s.growth, static_cast<double>(n + 1)) * (1 + 1e-12));
  CHECK(s.radius <= 0.05);
  CHECK(s.radius <= 0.5 / s.growth);
  CHECK(s.tail_bound(s.radius) <= 1e-14 * std::max(1.0, std::abs(s.tau)));
}

TEST_CASE("series satisfies the ODE inside its radius") {
  const Params c{0.5, 1.5, -1};
  const SeriesExpansion s = expand_south(c, tau_constants(c.c1, c.c2).tau2);
  for (double f : {0.0, 0.1, 0.5, 1.0}) CHECK(std::abs(ode_residual(s, -1 + f * s.radius)) < 1e-12);
}

TEST_CASE("series errors") {
  CHECK_THROWS_AS(expand_south({0, 0, 0}, 1.0), Error);  // not a root
  try {
    expand_south({-0.75, 0, 0}, tau_constants(-0.75, 0).tau1);  // tau1 = 1: fine
    expand_south({0, 0, 0}, 0.0);                                // tau1(0) = 0 is a resonance
    FAIL("expected a degenerate-branch error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateBranch);
  }
  const SeriesExpansion s = expand_south({0, 0, 1}, 4.0);
  CHECK_THROWS_AS(eval_offset(s, 2 * s.radius), Error);
  SeriesOptions tight;
  tight.growth_cap = 1.5;
  try {
    expand_south({5, 0, 4}, tau_constants(5, 0).tau2, tight);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Divergence);
  }
}

TEST_CASE("repeated expansion is identical") {
  const Params c{0.3, 0.2, 0.1};
  const double tau = tau_constants(c.c1, c.c2).tau2;
  CHECK(expand_south(c, tau).coeffs == expand_south(c, tau).coeffs);
}
