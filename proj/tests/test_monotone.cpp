#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimcurse/monotone.hpp"
#include "oracles.hpp"

using namespace dimcurse;
using namespace dimcurse::monotone;
using simd::BoxMode;

namespace {

std::vector<std::vector<double>> raw(const std::vector<Point>& pts) {
  std::vector<std::vector<double>> out;
  for (const auto& p : pts) out.emplace_back(p.coords().begin(), p.coords().end());
  return out;
}

}  // namespace

TEST_CASE("threshold value") {
  CHECK(threshold_value(Point::filled(4, 0.0)) == 0);
  CHECK(threshold_value(Point::filled(4, 1.0)) == 1);
  CHECK(threshold_value(Point{0.25, 0.75}) == 1);
  CHECK(threshold_value(Point{0.1, 0.2, 1.0, 0.7}) == 1);
  CHECK(threshold_value(Point{0.1, 0.2, 1.0, 0.69}) == 0);
}

TEST_CASE("fooling pair pointwise values") {
  auto lower = MonotoneFoolingPair::build({Point{0.5, 0.4}}, 2);
  CHECK(lower.f_plus(Point{0.5, 0.4}) == 0.0);
  CHECK(lower.f_plus(Point{0.5, 0.3}) == 0.0);
  CHECK(lower.f_plus(Point{0.6, 0.4}) == 1.0);
  auto upper = MonotoneFoolingPair::build({Point{0.6, 0.7}}, 2);
  CHECK(upper.f_minus(Point{0.7, 0.7}) == 1.0);
  CHECK(upper.f_minus(Point{0.5, 0.9}) == 0.0);
}

TEST_CASE("union volumes: closed cases") {
  for (std::size_t d = 1; d <= 12; ++d) {
    const auto v = union_box_volume({Point::filled(d, 0.5)}, BoxMode::lower);
    CHECK(v.exact);
    CHECK(v.value == std::ldexp(1.0, -static_cast<int>(d)));
  }
  CHECK(union_box_volume({Point{0.9, 0.9}}, BoxMode::upper).value == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(union_box_volume({}, BoxMode::upper).value == 0.0);
}

TEST_CASE("union volumes match the grid-counting oracle") {
  const std::vector<Point> two{Point{0.5, 0.5}, Point{0.25, 1.0}};
  // 1000 x 1000 midpoint grid; corners sit on cell edges, so counting is exact here.
  const double grid = oracle::grid_union_volume(raw(two), true, 1000);
  CHECK(grid == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(union_box_volume(two, BoxMode::lower).value == doctest::Approx(0.375).epsilon(1e-14));

  RandomStream rs(99);
  for (int inst = 0; inst < 40; ++inst) {
    const std::size_t d = 2 + inst % 2;
    const std::size_t n = 1 + rs() % 4;
    std::vector<Point> corners;
    // A 100^3 grid resolves lattice corners exactly but generic ones only to
    // about 1.5e-2, so d = 3 corners are drawn on the 1/100 lattice.
    for (std::size_t j = 0; j < n; ++j) {
      Point c = rs.uniform_point(d);
      if (d == 3) c = Point{std::round(c[0] * 100) / 100, std::round(c[1] * 100) / 100, std::round(c[2] * 100) / 100};
      corners.push_back(c);
    }
    for (bool lower : {true, false}) {
      const double got = union_box_volume(corners, lower ? BoxMode::lower : BoxMode::upper).value;
      const double ref = oracle::grid_union_volume(raw(corners), lower, d == 2 ? 1000 : 100);
      CHECK(std::abs(got - ref) <= 2e-3);
    }
  }
}

TEST_CASE("union volume falls back to Monte Carlo above the cap") {
  RandomStream rs(5);
  std::vector<Point> corners;
  for (std::size_t j = 0; j < kExactCornerCap + 3; ++j) corners.push_back(rs.uniform_point(2));
  const auto v = union_box_volume(corners, BoxMode::lower, 400'000);
  CHECK_FALSE(v.exact);
  CHECK(v.std_error > 0.0);
  const double ref = oracle::grid_union_volume(raw(corners), true, 1000);
  CHECK(std::abs(v.value - ref) <= 4 * v.std_error + 1e-3);
}

TEST_CASE("exact gap examples") {
  SUBCASE("no queries") {
    const auto p = MonotoneFoolingPair::build({}, 3);
    CHECK(p.exact_gap() == 1.0);
    CHECK(certified_error(p) == 0.5);
  }
  SUBCASE("single central query for d = 1..20") {
    for (std::size_t d = 1; d <= 20; ++d) {
      const auto p = MonotoneFoolingPair::build({Point::filled(d, 0.5)}, d);
      CHECK(p.exact_gap() == doctest::Approx(1.0 - std::ldexp(1.0, -static_cast<int>(d))).epsilon(1e-15));
    }
  }
  SUBCASE("d = 2, one lower and one upper corner") {
    const std::vector<Point> pts{Point{0.5, 0.4}, Point{0.6, 0.7}};
    const auto p = MonotoneFoolingPair::build(pts, 2);
    CHECK(p.ell() == 1);
    const double ref = (1.0 - oracle::grid_union_volume({{0.5, 0.4}}, true, 1000)) -
                       oracle::grid_union_volume({{0.6, 0.7}}, false, 1000);
    CHECK(ref == doctest::Approx(0.68).epsilon(1e-9));
    CHECK(p.exact_gap() == doctest::Approx(0.68).epsilon(1e-14));
    CHECK(p.exact_gap() >= p.guaranteed_gap());
    CHECK(p.guaranteed_gap() == 0.5);
  }
}

TEST_CASE("exact gap never falls below the guaranteed gap") {
  RandomStream rs(123);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t d = 1 + rs() % 6;
    const std::size_t n = rs() % 10;
    std::vector<Point> pts;
    for (std::size_t j = 0; j < n; ++j) pts.push_back(rs.uniform_point(d));
    const auto p = MonotoneFoolingPair::build(pts, d);
    CHECK(p.exact_gap() >= p.guaranteed_gap() - 1e-12);
    CHECK(certified_error(p) >= error_lower_bound_mon(static_cast<double>(n), d) - 1e-12);
    for (const auto& x : pts) CHECK(p.f_plus(x) == p.f_minus(x));
  }
}

TEST_CASE("error and complexity lower bounds") {
  CHECK(error_lower_bound_mon(0, 7) == 0.5);
  CHECK(error_lower_bound_mon(1024, 10) == 0.0);
  CHECK(error_lower_bound_mon(2000, 10) == 0.0);
  CHECK(error_lower_bound_mon(100, 10) == 0.451171875);

  CHECK(complexity_lower_mon(0.5, 4) == 0.0);
  CHECK(complexity_lower_mon(0.7, 4) == 0.0);
  CHECK(complexity_lower_mon(0.25, 10) == 512.0);
  CHECK(complexity_lower_mon(1e-12, 8) == 256.0);
  CHECK_THROWS_AS(complexity_lower_mon(0.0, 3), DomainError);
  for (std::size_t d = 1; d <= 30; ++d) CHECK(complexity_lower_mon(0.25, d) == std::ldexp(1.0, static_cast<int>(d) - 1));
  double prev = 1e300;
  for (double eps = 0.01; eps < 0.5; eps += 0.01) {
    const double c = complexity_lower_mon(eps, 12);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("product maximum over the capped box") {
  CHECK(simplex_product_max(1).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(simplex_product_max(2).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(oracle::grid_product_max_2d(10'000) == doctest::Approx(0.25).epsilon(1e-12));
  for (std::size_t d = 3; d <= 12; ++d) {
    CHECK(std::abs(simplex_product_max(d, 1e-12, d).value - std::ldexp(1.0, -static_cast<int>(d))) <= 1e-9);
  }
}

TEST_CASE("gap row and JSON") {
  const auto p = MonotoneFoolingPair::build({Point{0.5, 0.4}, Point{0.6, 0.7}}, 2);
  const auto row = gap_row(p);
  CHECK(row.n == 2);
  CHECK(row.ell == 1);
  CHECK(row.error_lower_bound == doctest::Approx(0.34));
  const auto j = p.to_json();
  CHECK(j["d"] == 2);
  CHECK(j["L"].size() == 1);
  CHECK(j["U"].size() == 1);
}
