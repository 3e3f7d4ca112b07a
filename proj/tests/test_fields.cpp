#include <doctest.h>

#include <cmath>

#include "nsaxi/error.hpp"
#include "nsaxi/fields.hpp"

using namespace nsaxi;

namespace {

// Landau lambda = 2 and its x-derivative in closed form
double landau_prime(double lambda, double x) {
  return (-4 * x * (x + lambda) - 2 * (1 - x * x)) / ((x + lambda) * (x + lambda));
}

}  // namespace

TEST_CASE("landau closed form") {
  CHECK(landau(2, 0) == 1.0);
  CHECK(landau(2, 1) == 0.0);
  CHECK(landau(2, -1) == 0.0);
  const double x = 0.3, u = landau(2, x);
  CHECK(std::abs((1 - x * x) * landau_prime(2, x) + 2 * x * u + 0.5 * u * u) < 1e-13);
  CHECK_THROWS_AS(landau(1.0, 0), Error);
  CHECK_THROWS_AS(landau(-0.5, 0), Error);
}

TEST_CASE("Landau fields at the equator") {
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 1.0);
  const FieldSample f = reconstruct(u, 1.0, 0.0);
  CHECK(f.u_theta == 1.0);
  CHECK(f.u_r == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(f.u_phi == 0.0);
  CHECK(f.p == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("zero solution has zero fields") {
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 0.0);
  const FieldSample f = reconstruct(u, 2.0, 0.4);
  CHECK(f.u_r == 0.0);
  CHECK(f.u_theta == 0.0);
  CHECK(f.p == 0.0);
}

TEST_CASE("homogeneity") {
  const SolutionCurve u = Solver().solve_ivp({0.5, 0.2, 1}, 0.3);
  const FieldSample a = reconstruct(u, 1.0, 0.35);
  const FieldSample b = reconstruct(u, 2.0, 0.35);
  CHECK(b.u_r == a.u_r / 2);
  CHECK(b.u_theta == a.u_theta / 2);
  CHECK(b.p == a.p / 4);
}

TEST_CASE("pressure matches the reduced form for c = 0") {
  // p = c3 + U' - u_theta^2 / 2 once the ODE is used to eliminate U''' and U''
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 1.0);
  for (double x : {-0.9, -0.4, 0.1, 0.6, 0.95}) {
    const FieldSample f = reconstruct(u, 1.0, x);
    const double ut = landau(2, x) / std::sqrt(1 - x * x);
    CHECK(f.p == doctest::Approx(landau_prime(2, x) - 0.5 * ut * ut).epsilon(1e-9));
  }
}

TEST_CASE("field errors") {
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 1.0);
  try {
    reconstruct(u, 1.0, 1 - 1e-7);
    FAIL("expected pole proximity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
  CHECK_THROWS_AS(reconstruct(u, 0.0, 0.1), Error);
  CHECK_THROWS_AS(reconstruct(u, 1.0, 1.0), Error);
}

TEST_CASE("grid sampling") {
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 4.0 / 3.0);
  CHECK(sample_grid(u, {}, {}).empty());
  const auto one = sample_grid(u, {1.5}, {0.2});
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].sample);
  const FieldSample ref = reconstruct(u, 1.5, 0.2);
  CHECK(one[0].sample->u_r == ref.u_r);
  CHECK(one[0].sample->p == ref.p);

  const auto partial = sample_grid(u, {1.0, -1.0}, {0.0, 1 - 1e-9});
  REQUIRE(partial.size() == 4);
  CHECK(partial[0].sample.has_value());
  CHECK_FALSE(partial[1].sample.has_value());
  CHECK_FALSE(partial[2].sample.has_value());
  CHECK_FALSE(partial[2].error.empty());
}

TEST_CASE("100 x 100 Landau grid satisfies u_r = U'") {
  const double lambda = 1.5;
  const SolutionCurve u = Solver().solve_ivp({0, 0, 0}, 2 / lambda);
  std::vector<double> rs, xs;
  for (int i = 0; i < 100; ++i) {
    rs.push_back(0.5 + 0.05 * i);
    xs.push_back(-0.99 + 1.98 * i / 99);
  }
  double worst = 0;
  for (const GridSample& g : sample_grid(u, rs, xs)) {
    REQUIRE(g.sample);
    worst = std::max(worst, std::abs(g.sample->u_r * g.r - landau_prime(lambda, g.x)));
  }
  CHECK(worst < 1e-9);
}
