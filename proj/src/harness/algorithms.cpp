#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dimcurse/harness.hpp"
#include "dimcurse/quadrature.hpp"

namespace dimcurse::harness {

namespace {

double mean_value(const Transcript& t) {
  if (t.empty()) return 0.5;
  double s = 0.0;
  for (const auto& r : t) s += r.value;
  return s / static_cast<double>(t.size());
}

class ConstantHalf final : public AdaptiveCubature {
 public:
  explicit ConstantHalf(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript&) const override { return std::nullopt; }
  double finalize(const Transcript&) const override { return 0.5; }
  std::string name() const override { return "const-half"; }

 private:
  std::size_t dim_;
};

// Largest k with k^d <= budget.
std::size_t per_axis_count(std::size_t budget, std::size_t dim) {
  if (budget == 0) return 0;
  std::size_t k = 1;
  for (;;) {
    std::size_t total = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < dim && !overflow; ++i) {
      total *= k + 1;
      overflow = total > budget;
    }
    if (overflow) return k;
    ++k;
  }
}

/// Midpoint rule on a k^d grid.
class MidpointGrid final : public AdaptiveCubature {
 public:
  MidpointGrid(std::size_t dim, std::size_t budget) : dim_(dim), k_(per_axis_count(budget, dim)) {
    total_ = k_ == 0 ? 0 : static_cast<std::size_t>(std::pow(static_cast<double>(k_), static_cast<double>(dim)) + 0.5);
  }
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript& so_far) const override {
    std::size_t idx = so_far.size();
    if (idx >= total_) return std::nullopt;
    std::vector<double> c(dim_);
    for (auto& v : c) {
      v = (static_cast<double>(idx % k_) + 0.5) / static_cast<double>(k_);
      idx /= k_;
    }
    return Point(std::move(c));
  }
  double finalize(const Transcript& t) const override { return mean_value(t); }
  std::string name() const override { return "grid"; }

 private:
  std::size_t dim_;
  std::size_t k_;
  std::size_t total_ = 0;
};

/// Plain Monte Carlo; query j is drawn from substream j so the rule is a pure
/// function of (seed, j).
class RandomSampler final : public AdaptiveCubature {
 public:
  RandomSampler(std::size_t dim, std::size_t budget, std::uint64_t seed)
      : dim_(dim), budget_(budget), stream_(RandomStream(seed).substream("random-sampler")) {}
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript& so_far) const override {
    if (so_far.size() >= budget_) return std::nullopt;
    RandomStream rs = stream_.substream(static_cast<std::uint64_t>(so_far.size()));
    return rs.uniform_point(dim_);
  }
  double finalize(const Transcript& t) const override { return mean_value(t); }
  std::string name() const override { return "random"; }

 private:
  std::size_t dim_;
  std::size_t budget_;
  RandomStream stream_;
};

/// Adaptive: bisects along the main diagonal c(1,...,1) for the level where the
/// value first reaches 1/2, then reports 1 - c. Each query depends on all
/// earlier answers.
class DiagonalBisect final : public AdaptiveCubature {
 public:
  DiagonalBisect(std::size_t dim, std::size_t budget) : dim_(dim), budget_(budget) {}
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript& so_far) const override {
    if (so_far.size() >= budget_) return std::nullopt;
    const auto [lo, hi] = interval(so_far);
    return Point::filled(dim_, 0.5 * (lo + hi));
  }
  double finalize(const Transcript& t) const override {
    const auto [lo, hi] = interval(t);
    return std::clamp(1.0 - 0.5 * (lo + hi), 0.0, 1.0);
  }
  std::string name() const override { return "diagonal-bisect"; }

 private:
  static std::pair<double, double> interval(const Transcript& t) {
    double lo = 0.0, hi = 1.0;
    for (const auto& r : t) (r.value >= 0.5 ? hi : lo) = r.point[0];
    return {lo, hi};
  }
  std::size_t dim_;
  std::size_t budget_;
};

/// The bracketing staircase rule on the largest (m+1)^d grid within budget.
class StaircaseRule final : public AdaptiveCubature {
 public:
  StaircaseRule(std::size_t dim, std::size_t budget) : dim_(dim) {
    const std::size_t k = per_axis_count(budget, dim);
    m_ = k >= 2 ? k - 1 : 0;
    total_ = m_ == 0 ? 0 : static_cast<std::size_t>(std::pow(static_cast<double>(m_ + 1), static_cast<double>(dim)) + 0.5);
  }
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript& so_far) const override {
    std::size_t idx = so_far.size();
    if (idx >= total_) return std::nullopt;
    std::vector<double> c(dim_);
    for (auto& v : c) {
      const std::size_t digit = idx % (m_ + 1);
      v = digit == m_ ? 1.0 : static_cast<double>(digit) / static_cast<double>(m_);
      idx /= m_ + 1;
    }
    return Point(std::move(c));
  }
  double finalize(const Transcript& t) const override {
    if (m_ == 0) return 0.5;
    double lower = 0.0, upper = 0.0;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      std::size_t idx = flat;
      bool is_lower = true, is_upper = true;
      for (std::size_t k = 0; k < dim_; ++k) {
        const std::size_t digit = idx % (m_ + 1);
        idx /= m_ + 1;
        is_lower = is_lower && digit < m_;
        is_upper = is_upper && digit > 0;
      }
      if (is_lower) lower += t[flat].value;
      if (is_upper) upper += t[flat].value;
    }
    const double cells = std::pow(static_cast<double>(m_), static_cast<double>(dim_));
    return 0.5 * (lower + upper) / cells;
  }
  std::string name() const override { return "staircase"; }

 private:
  std::size_t dim_;
  std::size_t m_ = 0;
  std::size_t total_ = 0;
};

// Cube vertices in binary counting order (origin first), up to the budget or
// all 2^d of them; returns the mean of the answers.
class CubeVertices final : public AdaptiveCubature {
 public:
  CubeVertices(std::size_t dim, std::size_t budget) : dim_(dim), total_(budget) {
    if (dim < 64) total_ = std::min(budget, std::size_t{1} << dim);
  }
  std::size_t dim() const override { return dim_; }
  std::optional<Point> next_query(const Transcript& so_far) const override {
    if (so_far.size() >= total_) return std::nullopt;
    std::vector<double> c(dim_);
    for (std::size_t k = 0; k < dim_ && k < 64; ++k) c[k] = static_cast<double>((so_far.size() >> k) & 1U);
    return Point(std::move(c));
  }
  double finalize(const Transcript& t) const override { return mean_value(t); }
  std::string name() const override { return "vertices"; }

 private:
  std::size_t dim_;
  std::size_t total_;
};

}  // namespace

std::vector<std::string> algorithm_ids() {
  return {"const-half", "grid", "random", "diagonal-bisect", "staircase", "vertices"};
}

std::unique_ptr<AdaptiveCubature> make_algorithm(const std::string& id, std::size_t dim,
                                                 std::size_t budget, std::uint64_t seed) {
  if (dim == 0) throw ConfigError("dimension must be >= 1");
  if (id == "const-half") return std::make_unique<ConstantHalf>(dim);
  if (id == "grid") return std::make_unique<MidpointGrid>(dim, budget);
  if (id == "random") return std::make_unique<RandomSampler>(dim, budget, seed);
  if (id == "diagonal-bisect") return std::make_unique<DiagonalBisect>(dim, budget);
  if (id == "staircase") return std::make_unique<StaircaseRule>(dim, budget);
  if (id == "vertices") return std::make_unique<CubeVertices>(dim, budget);
  throw ConfigError("unknown algorithm id: " + id);
}

}  // namespace dimcurse::harness
