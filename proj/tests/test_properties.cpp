#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "nsaxi/format.hpp"
#include "nsaxi/solver.hpp"
#include "nsaxi/verify.hpp"

using namespace nsaxi;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(20261017);
  return g;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// c in J strictly above the boundary surface
Params random_interior() {
  const double a = uniform(-1, 4), b = uniform(-1, 4);
  return {a, b, c3_bar(a, b) + uniform(0.1, 3)};
}

}  // namespace

TEST_CASE("tau identities over random c1") {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double c1 = uniform(-1, 50);
    const EndpointConstants t = tau_constants(c1, c1);
    worst = std::max(worst, std::abs((t.tau2 - 2) * (t.tau2 - 2) - 4 * (1 + c1)) / (1 + c1 + 1));
    CHECK(t.tau1 <= 2);
    CHECK(t.tau2 >= 2);
    CHECK(t.tau1p <= -2);
    CHECK(t.tau2p >= -2);
    CHECK(t.tau1 + t.tau2 == doctest::Approx(4));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("boundary profile solves the ODE at c3_bar") {
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(-1, 10), b = uniform(-1, 10), x = uniform(-1, 1);
    const Params c{a, b, c3_bar(a, b)};
    const double u = boundary_solution(a, b, x), du = boundary_solution_prime(a, b);
    const double lhs = (1 - x * x) * du + 2 * x * u + 0.5 * u * u;
    CHECK(std::abs(lhs - p_c(x, c)) <= 1e-12 * std::max(1.0, std::abs(p_c_sup(c))));
  }
}

TEST_CASE("c3_bar is symmetric and bounded above by 0 at c = -1") {
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(-1, 10), b = uniform(-1, 10);
    CHECK(c3_bar(a, b) == c3_bar(b, a));
    CHECK(c3_bar(a, b) <= 0);
  }
}

TEST_CASE("extremal values reflect") {
  const Solver s;
  for (int i = 0; i < 15; ++i) {
    const Params c = random_interior();
    CHECK(std::abs(s.gamma_plus(c) + s.gamma_minus(reflect(c))) < 1e-9);
    CHECK(s.gamma_minus(c) < s.gamma_plus(c));
  }
}

TEST_CASE("random curves are ordered, reflect and satisfy the ODE") {
  const Solver s;
  const std::vector<double> xs = interior_grid(200);
  for (int i = 0; i < 10; ++i) {
    const Params c = random_interior();
    const double lo = s.gamma_minus(c), hi = s.gamma_plus(c);
    std::vector<double> g{uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    std::sort(g.begin(), g.end());
    CAPTURE(c.c1);
    CAPTURE(c.c2);
    CAPTURE(c.c3);
    CHECK(check_foliation(s, c, g).passed);

    const SolutionCurve u = s.solve_ivp(c, g[1]);
    const SolutionCurve v = s.solve_ivp(reflect(c), -g[1]);
    double res = 0, refl = 0;
    for (double x : xs) {
      res = std::max(res, std::abs(u.residual(x)));
      refl = std::max(refl, std::abs(u.eval(x) + v.eval(-x)));
    }
    CHECK(res <= 1e-9);
    CHECK(refl <= 1e-9);
  }
}

TEST_CASE("sandwich between the extremal curves") {
  const Solver s;
  for (int i = 0; i < 5; ++i) {
    const Params c = random_interior();
    const double lo = s.gamma_minus(c), hi = s.gamma_plus(c);
    CHECK(check_sandwich(s, c, {lo + 0.25 * (hi - lo), 0.5 * (lo + hi)}).passed);
  }
}

TEST_CASE("shortest printing round-trips") {
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(uniform(-1, 1), static_cast<int>(uniform(-300, 300)));
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("admission clamps only a hair below -1") {
  for (int i = 0; i < 100; ++i) {
    const double d = uniform(0, kClampWindow);
    const Admitted a = admit({-1 - d, 0, 0});
    CHECK(a.params.c1 == -1.0);
  }
}
