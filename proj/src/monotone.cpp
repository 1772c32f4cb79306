#include "dimcurse/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dimcurse::monotone {

int threshold_value(const Point& x) {
  return x.sum() >= 0.5 * static_cast<double>(x.dim()) ? 1 : 0;
}

EvalOracle threshold_oracle(std::size_t dim) {
  return {dim, [](const Point& x) { return static_cast<double>(threshold_value(x)); },
          FunctionClass::monotone};
}

namespace {

// Neumaier-compensated accumulator; inclusion-exclusion terms alternate in sign.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Depth-first walk over nonempty subsets S of the corners, carrying the
// componentwise min (lower) or max (upper) of S. Subsets are visited in a fixed
// order, so the compensated sum is reproducible.
class InclusionExclusion {
 public:
  InclusionExclusion(const std::vector<Point>& corners, simd::BoxMode mode)
      : corners_(corners), mode_(mode), dim_(corners.front().dim()) {}

  double run() {
    std::vector<double> extreme(dim_, mode_ == simd::BoxMode::lower ? 1.0 : 0.0);
    visit(0, extreme, 0);
    return total_.value();
  }

 private:
  void visit(std::size_t next, const std::vector<double>& extreme, std::size_t size) {
    for (std::size_t j = next; j < corners_.size(); ++j) {
      std::vector<double> narrowed(dim_);
      double volume = 1.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        if (mode_ == simd::BoxMode::lower) {
          narrowed[k] = std::min(extreme[k], corners_[j][k]);
          volume *= narrowed[k];
        } else {
          narrowed[k] = std::max(extreme[k], corners_[j][k]);
          volume *= 1.0 - narrowed[k];
        }
      }
      total_.add((size % 2 == 0) ? volume : -volume);
      // Empty intersections contribute nothing further down this branch.
      if (volume > 0.0) visit(j + 1, narrowed, size + 1);
    }
  }

  const std::vector<Point>& corners_;
  simd::BoxMode mode_;
  std::size_t dim_;
  CompensatedSum total_;
};

VolumeResult union_volume_monte_carlo(const std::vector<Point>& corners, simd::BoxMode mode,
                                      std::size_t samples, const RandomStream& stream) {
  const std::size_t dim = corners.front().dim();
  std::vector<double> flat;
  flat.reserve(corners.size() * dim);
  for (const auto& c : corners) flat.insert(flat.end(), c.coords().begin(), c.coords().end());

  constexpr std::size_t kBatch = 4096;
  const auto& kern = simd::active_kernels();
  std::vector<double> soa(kBatch * dim);
  std::size_t hits = 0;
  for (std::size_t done = 0, block = 0; done < samples; done += kBatch, ++block) {
    const std::size_t count = std::min(kBatch, samples - done);
    RandomStream rs = stream.substream(static_cast<std::uint64_t>(block));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < dim; ++k) soa[k * count + i] = rs.uniform();
    }
    hits += kern.count_in_box_union(std::span<const double>(soa.data(), count * dim), count, dim,
                                    flat, mode);
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), false};
}

}  // namespace

VolumeResult union_box_volume(const std::vector<Point>& corners, simd::BoxMode mode,
                              std::size_t mc_samples, const RandomStream& stream) {
  if (corners.empty()) return {0.0, 0.0, true};
  const std::size_t dim = corners.front().dim();
  for (const auto& c : corners) {
    if (c.dim() != dim) throw DomainError("corners have mixed dimensions");
  }
  if (corners.size() <= kExactCornerCap) {
    const double v = InclusionExclusion(corners, mode).run();
    return {std::clamp(v, 0.0, 1.0), 0.0, true};
  }
  return union_volume_monte_carlo(corners, mode, mc_samples, stream);
}

MonotoneFoolingPair MonotoneFoolingPair::build(const std::vector<Point>& points, std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be >= 1");
  MonotoneFoolingPair pair;
  pair.dim_ = dim;
  for (const auto& p : points) {
    if (p.dim() != dim) throw DomainError("point dimension does not match pair dimension");
    (threshold_value(p) == 0 ? pair.lower_ : pair.upper_).push_back(p);
  }

  const auto lower = union_box_volume(pair.lower_, simd::BoxMode::lower);
  const auto upper = union_box_volume(pair.upper_, simd::BoxMode::upper);
  pair.integral_plus_ = 1.0 - lower.value;
  pair.integral_minus_ = upper.value;
  pair.exact_gap_ = pair.integral_plus_ - pair.integral_minus_;
  pair.gap_exact_ = lower.exact && upper.exact;
  pair.gap_std_error_ = std::hypot(lower.std_error, upper.std_error);
  pair.guaranteed_gap_ =
      std::max(0.0, 1.0 - static_cast<double>(points.size()) * std::ldexp(1.0, -static_cast<int>(dim)));
  return pair;
}

double MonotoneFoolingPair::f_plus(const Point& x) const {
  for (const auto& t : lower_) {
    if (x.dominated_by(t)) return 0.0;
  }
  return 1.0;
}

double MonotoneFoolingPair::f_minus(const Point& x) const {
  for (const auto& t : upper_) {
    if (t.dominated_by(x)) return 1.0;
  }
  return 0.0;
}

EvalOracle MonotoneFoolingPair::plus_oracle() const {
  return {dim_, [self = *this](const Point& x) { return self.f_plus(x); }, FunctionClass::monotone};
}

EvalOracle MonotoneFoolingPair::minus_oracle() const {
  return {dim_, [self = *this](const Point& x) { return self.f_minus(x); },
          FunctionClass::monotone};
}

nlohmann::json MonotoneFoolingPair::to_json() const {
  auto pts = [](const std::vector<Point>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& p : v) arr.push_back(dimcurse::to_json(p));
    return arr;
  };
  return {{"d", dim_},
          {"L", pts(lower_)},
          {"U", pts(upper_)},
          {"exact_gap", exact_gap_},
          {"guaranteed_gap", guaranteed_gap_}};
}

double certified_error(const MonotoneFoolingPair& pair) { return 0.5 * pair.exact_gap(); }

double error_lower_bound_mon(double n, std::size_t d) {
  return std::max(0.0, 0.5 * (1.0 - n * std::ldexp(1.0, -static_cast<int>(d))));
}

double complexity_lower_mon(double eps, std::size_t d) {
  if (eps >= 0.5) return 0.0;
  if (!(eps > 0.0)) throw DomainError("eps must lie in (0, 1/2)");
  return std::ceil(std::ldexp(1.0 - 2.0 * eps, static_cast<int>(d)));
}

namespace {

// Euclidean projection onto {y : lo <= y_j <= 1, sum y <= cap}.
std::vector<double> project_capped(const std::vector<double>& z, double lo, double cap) {
  auto shifted = [&](double tau) {
    std::vector<double> y(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) y[j] = std::clamp(z[j] - tau, lo, 1.0);
    return y;
  };
  auto total = [](const std::vector<double>& y) { return std::accumulate(y.begin(), y.end(), 0.0); };
  auto y = shifted(0.0);
  if (total(y) <= cap) return y;
  double a = 0.0;
  double b = *std::max_element(z.begin(), z.end()) - lo;
  for (int it = 0; it < 200 && b - a > 1e-17 * std::max(1.0, b); ++it) {
    const double mid = 0.5 * (a + b);
    (total(shifted(mid)) > cap ? a : b) = mid;
  }
  return shifted(b);
}

double log_objective(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += std::log(v);
  return s;
}

}  // namespace

ProductMax simplex_product_max(std::size_t d, double tol, std::uint64_t seed) {
  if (d == 0) throw DomainError("dimension must be >= 1");
  constexpr double kFloor = 1e-12;
  constexpr std::size_t kMaxIter = 10'000;
  const double cap = 0.5 * static_cast<double>(d);

  RandomStream rs(seed);
  std::vector<double> y(d);
  for (auto& v : y) v = 0.05 + 0.9 * rs.uniform();
  y = project_capped(y, kFloor, cap);

  double residual = 0.0;
  for (std::size_t it = 0; it < kMaxIter; ++it) {
    std::vector<double> grad(d);
    for (std::size_t j = 0; j < d; ++j) grad[j] = 1.0 / y[j];

    // Stationarity measure: distance moved by a unit projected-gradient step.
    std::vector<double> probe(d);
    for (std::size_t j = 0; j < d; ++j) probe[j] = y[j] + grad[j];
    const auto unit = project_capped(probe, kFloor, cap);
    residual = 0.0;
    for (std::size_t j = 0; j < d; ++j) residual = std::max(residual, std::abs(unit[j] - y[j]));
    if (residual <= tol) {
      ProductMax out;
      out.value = std::exp(log_objective(y));
      out.maximizer = y;
      out.iterations = it;
      return out;
    }

    // Step 1/L with L = max_j 1/y_j^2, the local curvature of sum log y.
    // Function values are too flat near the optimum for a sufficient-decrease
    // test, so only guard against outright loss.
    const double current = log_objective(y);
    double step = std::pow(*std::min_element(y.begin(), y.end()), 2);
    std::vector<double> candidate;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < d; ++j) probe[j] = y[j] + step * grad[j];
      candidate = project_capped(probe, kFloor, cap);
      if (log_objective(candidate) >= current - 1e-12 * std::max(1.0, std::abs(current))) break;
      step *= 0.5;
    }
    y = std::move(candidate);
  }
  throw ConvergenceError("simplex_product_max: projected gradient residual " +
                         std::to_string(residual) + " above tolerance after " +
                         std::to_string(kMaxIter) + " iterations (d=" + std::to_string(d) + ")");
}

GapRow gap_row(const MonotoneFoolingPair& pair) {
  return {pair.dim(),
          pair.n(),
          pair.ell(),
          pair.exact_gap(),
          pair.guaranteed_gap(),
          certified_error(pair)};
}

}  // namespace dimcurse::monotone
