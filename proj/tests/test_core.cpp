#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dimcurse/core.hpp"
#include "dimcurse/harness.hpp"
#include "dimcurse/monotone.hpp"

using namespace dimcurse;

namespace {

class ConstantHalf final : public AdaptiveCubature {
 public:
  explicit ConstantHalf(std::size_t d) : d_(d) {}
  std::size_t dim() const override { return d_; }
  std::optional<Point> next_query(const Transcript&) const override { return std::nullopt; }
  double finalize(const Transcript&) const override { return 0.5; }
  std::string name() const override { return "const"; }

 private:
  std::size_t d_;
};

// Replays a fixed list of points, then averages.
class FixedQueries final : public AdaptiveCubature {
 public:
  explicit FixedQueries(std::vector<Point> pts) : pts_(std::move(pts)) {}
  std::size_t dim() const override { return pts_.empty() ? 2 : pts_.front().dim(); }
  std::optional<Point> next_query(const Transcript& t) const override {
    if (t.size() < pts_.size()) return pts_[t.size()];
    return std::nullopt;
  }
  double finalize(const Transcript& t) const override {
    double s = 0;
    for (const auto& r : t) s += r.value;
    return t.empty() ? 0.5 : s / static_cast<double>(t.size());
  }
  std::string name() const override { return "fixed"; }

 private:
  std::vector<Point> pts_;
};

// First query (0.3, 0.3); goes to (0.9, 0.9) after a 0 and to (0.1, 0.1) after a 1.
class TwoStep final : public AdaptiveCubature {
 public:
  std::size_t dim() const override { return 2; }
  std::optional<Point> next_query(const Transcript& t) const override {
    if (t.empty()) return Point{0.3, 0.3};
    if (t.size() == 1) return t[0].value == 0.0 ? Point{0.9, 0.9} : Point{0.1, 0.1};
    return std::nullopt;
  }
  double finalize(const Transcript& t) const override { return t[1].value; }
  std::string name() const override { return "two-step"; }
};

class OutOfCube final : public AdaptiveCubature {
 public:
  std::size_t dim() const override { return 1; }
  std::optional<Point> next_query(const Transcript&) const override { return Point(std::vector<double>{1.5}); }
  double finalize(const Transcript&) const override { return 0.0; }
  std::string name() const override { return "bad"; }
};

}  // namespace

TEST_CASE("Point validates coordinates with inclusive endpoints") {
  CHECK_NOTHROW(Point{0.0, 1.0});
  CHECK_THROWS_AS(Point({-1e-300, 0.5}), DomainError);
  CHECK_THROWS_AS(Point({0.5, 1.0000000000000002}), DomainError);
  CHECK_THROWS_AS(Point(std::vector<double>{}), DomainError);
  CHECK(Point{0.2, 0.3}.dominated_by(Point{0.2, 0.4}));
  CHECK_FALSE(Point{0.2, 0.5}.dominated_by(Point{0.2, 0.4}));
}

TEST_CASE("zero-query algorithm returns its constant on an empty transcript") {
  const auto oracle = monotone::threshold_oracle(3);
  const auto r = run_algorithm(ConstantHalf(3), oracle, 0);
  CHECK(r.transcript.empty());
  CHECK(r.output == 0.5);
}

TEST_CASE("single query at the centre sees the boundary value 1") {
  const auto r = run_algorithm(FixedQueries({Point{0.5, 0.5}}), monotone::threshold_oracle(2), 1);
  REQUIRE(r.transcript.size() == 1);
  CHECK(r.transcript[0].point == Point{0.5, 0.5});
  CHECK(r.transcript[0].value == 1.0);
}

TEST_CASE("adaptive algorithm follows the answers") {
  const auto r = run_algorithm(TwoStep(), monotone::threshold_oracle(2), 2);
  REQUIRE(r.transcript.size() == 2);
  CHECK(r.transcript[0].value == 0.0);
  CHECK(r.transcript[1].point == Point{0.9, 0.9});
  CHECK(r.transcript[1].value == 1.0);
}

TEST_CASE("run_algorithm error paths") {
  SUBCASE("budget exceeded") {
    CHECK_THROWS_AS(run_algorithm(TwoStep(), monotone::threshold_oracle(2), 1), BudgetExceeded);
  }
  SUBCASE("query outside the cube") {
    CHECK_THROWS_AS(run_algorithm(OutOfCube(), monotone::threshold_oracle(1), 5), DomainError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(run_algorithm(TwoStep(), monotone::threshold_oracle(3), 5), DomainError);
  }
  SUBCASE("oracle value outside [0,1]") {
    EvalOracle bad{2, [](const Point&) { return 1.5; }, FunctionClass::unrestricted};
    CHECK_THROWS_AS(run_algorithm(TwoStep(), bad, 5), DomainError);
  }
}

TEST_CASE("repeated queries each consume budget") {
  const Point p{0.1, 0.2};
  CHECK(run_algorithm(FixedQueries({p, p, p}), monotone::threshold_oracle(2), 3).transcript.size() == 3);
  CHECK_THROWS_AS(run_algorithm(FixedQueries({p, p, p}), monotone::threshold_oracle(2), 2), BudgetExceeded);
}

TEST_CASE("initial error is 1/2 for every class and dimension") {
  CHECK(initial_error(FunctionClass::monotone) == 0.5);
  CHECK(initial_error(FunctionClass::convex) == 0.5);
}

TEST_CASE("oracles agreeing on the transcript give identical runs") {
  RandomStream rs(11);
  for (const auto& id : harness::algorithm_ids()) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const std::size_t budget = 1 + rs() % 20;
      const auto alg = harness::make_algorithm(id, d, budget, rs());
      const auto probe = monotone::threshold_oracle(d);
      const auto first = run_algorithm(*alg, probe, budget);
      // Replay with the recorded values only; anything off-transcript is 0.37.
      EvalOracle replay{d,
                        [&](const Point& x) {
                          for (const auto& r : first.transcript) {
                            if (r.point == x) return r.value;
                          }
                          return 0.37;
                        },
                        FunctionClass::unrestricted};
      const auto second = run_algorithm(*alg, replay, budget);
      CHECK(second.transcript == first.transcript);
      CHECK(second.output == first.output);
    }
  }
}

TEST_CASE("transcript JSON preserves order and values") {
  RandomStream rs(3);
  Transcript t;
  for (int i = 0; i < 25; ++i) t.append(rs.uniform_point(4), rs.uniform());
  const auto j = to_json(t);
  CHECK(j.is_array());
  CHECK(j[0].contains("point"));
  CHECK(j[0].contains("value"));
  CHECK(transcript_from_json(nlohmann::json::parse(j.dump())) == t);
  CHECK_THROWS_AS(transcript_from_json(nlohmann::json::parse(R"([{"point":[2.0],"value":0}])")), DomainError);
}

TEST_CASE("RandomStream is reproducible and substreams differ") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  const auto s1 = RandomStream(42).substream(1);
  const auto s2 = RandomStream(42).substream(2);
  auto c1 = s1, c2 = s2;
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += c1() == c2();
  CHECK(equal == 0);
  auto u = RandomStream(5);
  double mean = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    mean += x;
  }
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("block Monte Carlo is independent of the worker count") {
  const RandomStream stream(77);
  auto draw = [](RandomStream& rs) { return rs.uniform() * rs.uniform(); };
  const auto one = block_monte_carlo(50'000, stream, draw, 1);
  const auto four = block_monte_carlo(50'000, stream, draw, 4);
  const auto seven = block_monte_carlo(50'000, stream, draw, 7);
  CHECK(one.value == four.value);
  CHECK(one.value == seven.value);
  CHECK(one.std_error == four.std_error);
  CHECK(one.value == doctest::Approx(0.25).epsilon(0.02));
}
