#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimcurse/monotone.hpp"
#include "dimcurse/quadrature.hpp"

using namespace dimcurse;
using namespace dimcurse::quadrature;

namespace {

EvalOracle fn(std::size_t d, std::function<double(const Point&)> f) {
  return {d, std::move(f), FunctionClass::unrestricted};
}

}  // namespace

TEST_CASE("staircase examples") {
  const auto id = staircase_monotone(fn(1, [](const Point& x) { return x[0]; }), 2);
  CHECK(id.lower_sum == 0.25);
  CHECK(id.upper_sum == 0.75);
  CHECK(id.estimate() == 0.5);
  CHECK(id.certified_error() == 0.25);
  CHECK(id.samples_used == 3);

  const auto c = staircase_monotone(fn(3, [](const Point&) { return 0.3; }), 3);
  CHECK(c.lower_sum == doctest::Approx(0.3));
  CHECK(c.certified_error() == doctest::Approx(0.0).scale(1).epsilon(1e-15));

  const auto th = staircase_monotone(monotone::threshold_oracle(2), 4);
  CHECK(th.lower_sum <= 0.5);
  CHECK(th.upper_sum >= 0.5);
  CHECK(th.certified_error() <= staircase_error_cap(4, 2));
}

TEST_CASE("staircase brackets random monotone mixtures") {
  // f = mean of indicators of upper orthants [t_j, 1]; INT(f) = mean of box volumes.
  RandomStream rs(5);
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t d = 1 + rs() % 3;
    std::vector<Point> corners;
    for (int j = 0; j < 3; ++j) corners.push_back(rs.uniform_point(d));
    double truth = 0;
    for (const auto& t : corners) truth += monotone::union_box_volume({t}, simd::BoxMode::upper).value / 3.0;
    auto f = fn(d, [corners](const Point& x) {
      double v = 0;
      for (const auto& t : corners) v += t.dominated_by(x) ? 1.0 / 3.0 : 0.0;
      return v;
    });
    const auto b = staircase_monotone(f, 6);
    CHECK(b.certified);
    CHECK(b.lower_sum <= truth + 1e-12);
    CHECK(b.upper_sum >= truth - 1e-12);
  }
}

TEST_CASE("non-monotone input is flagged") {
  const auto b = staircase_monotone(fn(1, [](const Point& x) { return 1.0 - x[0]; }), 8);
  CHECK_FALSE(b.certified);
}

TEST_CASE("Monte Carlo") {
  const auto c = monte_carlo(fn(4, [](const Point&) { return 0.7; }), 500, RandomStream(1));
  CHECK(c.estimate == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(c.guaranteed_rmse == doctest::Approx(1.0 / std::sqrt(500.0)));

  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = monte_carlo(monotone::threshold_oracle(5), 10'000, RandomStream(seed));
    within += std::abs(r.estimate - 0.5) <= 1.5e-2;
  }
  CHECK(within >= 99);

  const auto a = monte_carlo(monotone::threshold_oracle(5), 20'000, RandomStream(4), 1);
  const auto b = monte_carlo(monotone::threshold_oracle(5), 20'000, RandomStream(4), 5);
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("piecewise-constant approximation and the integration adapter") {
  auto identity = fn(1, [](const Point& x) { return x[0]; });
  const auto pc = pc_approximate(identity, 4);
  CHECK(pc.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(app_to_int(pc) == 0.375);
  CHECK(lp_error(identity, pc, 1.0) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::abs(0.5 - app_to_int(pc)) <= lp_error(identity, pc, 1.0) + 1e-12);

  auto step = fn(1, [](const Point& x) { return x[0] >= 0.5 ? 1.0 : 0.0; });
  const auto ps = pc_approximate(step, 2);
  CHECK(ps.values() == std::vector<double>{0.0, 1.0});
  CHECK(lp_error(step, ps, 1.0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  auto constant = fn(2, [](const Point&) { return 0.4; });
  CHECK(lp_error(constant, pc_approximate(constant, 3), 2.0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(app_to_int(PiecewiseConstantApprox(2, 2, {0, 0, 0, 0})) == 0.0);
}

TEST_CASE("reduction inequality on built-in oracles") {
  for (std::size_t d : {1, 2}) {
    for (const auto& id : builtin_oracle_ids()) {
      const auto b = builtin_oracle(id, d);
      REQUIRE(b.has_true_value);
      for (std::size_t m : {1, 3, 5}) {
        const auto pc = pc_approximate(b.oracle, m);
        const double l1 = lp_error(b.oracle, pc, 1.0);
        CHECK(std::abs(b.true_value - app_to_int(pc)) <= l1 + 1e-9);
        CHECK(l1 <= lp_error(b.oracle, pc, 2.0) + 1e-9);
      }
    }
  }
}

TEST_CASE("staircase rate follows n^(-1/d)") {
  for (std::size_t d : {2, 3}) {
    const auto fit = staircase_rate(monotone::threshold_oracle(d), {2, 4, 8, 16, 32});
    const double target = -1.0 / static_cast<double>(d);
    CHECK(std::abs(fit.slope - target) <= 0.2 * std::abs(target));
  }
}
