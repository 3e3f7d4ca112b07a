#include <doctest.h>

#include <cmath>
#include <limits>

#include "nsaxi/error.hpp"
#include "nsaxi/verify.hpp"

using namespace nsaxi;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Config;
}

}  // namespace

TEST_CASE("interior grid") {
  const auto g = interior_grid(4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == -0.75);
  CHECK(g[3] == 0.75);
  CHECK(interior_grid(1000).size() == 1000);
}

TEST_CASE("curve sample labels and reflection") {
  const CurveSample s{{3, 0, 1}, CurveSample::Branch::Upper};
  const CurveSample r = s.reflected();
  CHECK(r.c == Params{0, 3, 1});
  CHECK(r.branch == CurveSample::Branch::Lower);
  const CurveSample g{{1, 2, 0}, CurveSample::Branch::Gamma, 0.25};
  CHECK(g.reflected().gamma == -0.25);
  CHECK(s.label() != g.label());
}

TEST_CASE("foliation of Landau curves") {
  const Solver s;
  const CheckResult r = check_foliation(s, {0, 0, 0}, {-1, 0, 1});
  CHECK(r.passed);
  CHECK(r.measured == 0.0);
  CHECK(r.witnesses.empty());
}

TEST_CASE("foliation with the extremal pair") {
  const Solver s;
  CHECK(check_foliation(s, {0, 0, 0}, {-2, 2}).passed);
}

TEST_CASE("single gamma is trivially foliated") {
  const Solver s;
  const CheckResult r = check_foliation(s, {0, 0, 1}, {0.1});
  CHECK(r.passed);
  CHECK(r.measured == 0.0);
}

TEST_CASE("foliation preconditions") {
  const Solver s;
  CHECK(kind_of([&] { check_foliation(s, {0, 0, -4}, {0.0}); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { check_foliation(s, {0, 0, 0}, {1, 0}); }) == ErrorKind::Precondition);
}

TEST_CASE("result invariant: passed iff measured <= bound") {
  const Solver s;
  for (const CheckResult& r : run_suites({"landau", "endpoint_table"})) {
    CHECK(r.passed == (r.measured <= r.bound));
  }
}

TEST_CASE("endpoint table samples") {
  const Solver s;
  const CheckResult r = check_endpoint_table(s, {{{0, 0, 0}, CurveSample::Branch::Gamma, 1.0},
                                                 {{3, 0, 0}, CurveSample::Branch::Upper},
                                                 {{0, 3, 0}, CurveSample::Branch::Lower}});
  CHECK(r.passed);
}

TEST_CASE("uniqueness at the boundary surface") {
  const Solver s;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {3.0, 0.0}}) {
    const CheckResult r = check_uniqueness_at_boundary(s, a, b);
    CHECK_MESSAGE(r.passed, r.name << " " << r.note);
  }
}

TEST_CASE("log asymptotics rejects the analytic branch") {
  const Solver s;
  const Params c{-1, 0, 0};
  const double gp = s.gamma_plus(c);
  CHECK(kind_of([&] { check_log_asymptotics(s, c, gp, Pole::South); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { check_log_asymptotics(s, {0, 0, 0}, 0.0, Pole::South); }) == ErrorKind::Precondition);
}

TEST_CASE("log sequence shape") {
  const Solver s;
  const LogSequence q = log_sequence(s.solve_ivp({-1, 0, 0}, 0.0), Pole::South);
  REQUIRE(q.s.size() == 6);
  CHECK(q.s.front() == doctest::Approx(1e-3));
  CHECK(q.s.back() == doctest::Approx(1e-8));
  CHECK(q.target == 4.0);
  // g approaches the limit from one side
  for (std::size_t i = 1; i < q.g.size(); ++i) CHECK(std::abs(q.g[i] - 4) < std::abs(q.g[i - 1] - 4));
}

TEST_CASE("allowed directions per stratum") {
  using D = Direction;
  CHECK(allowed_directions(Stratum::interior(1, 1)) == std::vector<D>{D::C1, D::C2, D::C3, D::Gamma});
  CHECK(allowed_directions(Stratum::interior(2, 1)) == std::vector<D>{D::C2, D::C3, D::Gamma});
  CHECK(allowed_directions(Stratum::interior(4, 1)) == std::vector<D>{D::C3, D::Gamma});
  CHECK(allowed_directions(Stratum::interior(1, 2)) == std::vector<D>{D::C1, D::C2, D::C3});
  CHECK(derivative_weight(Stratum::interior(1, 1), 0.999) == 1.0);
  const double l = std::log(2e-3 / 3);
  CHECK(derivative_weight(Stratum::interior(2, 1), -0.998) == doctest::Approx(l * l));
}

TEST_CASE("forbidden derivative direction") {
  const Solver s;
  CHECK(kind_of([&] {
          check_param_derivatives(s, {{{-1, 0, 0}, CurveSample::Branch::Gamma, 0.0}}, Stratum::interior(2, 1),
                                  {Direction::C1});
        }) == ErrorKind::Precondition);
}

TEST_CASE("stratum mismatch") {
  const Solver s;
  CHECK(kind_of([&] {
          check_param_derivatives(s, {{{0, 0, 1}, CurveSample::Branch::Gamma, 0.0}}, Stratum::interior(2, 1),
                                  {Direction::C3});
        }) == ErrorKind::Precondition);
}

TEST_CASE("gamma derivative in I_{1,1} is bounded and stable") {
  const Solver s;
  const CheckResult r =
      check_param_derivatives(s, {{{0, 0, 1}, CurveSample::Branch::Gamma, 0.0}}, Stratum::interior(1, 1),
                              {Direction::Gamma});
  CHECK_MESSAGE(r.passed, r.note);
}

TEST_CASE("suite selection") {
  const auto only = run_suites({"foliation"});
  REQUIRE_FALSE(only.empty());
  for (const CheckResult& r : only) CHECK(r.name.rfind("foliation", 0) == 0);
  CHECK(kind_of([] { run_suites({"nope"}); }) == ErrorKind::Config);
  CHECK(run_suites({}).empty());
}

TEST_CASE("results are independent of the thread count") {
  const auto a = run_suites({"landau", "uniqueness"}, {}, 1);
  const auto b = run_suites({"landau", "uniqueness"}, {}, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].measured == b[i].measured);
  }
}
