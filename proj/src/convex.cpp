#include "dimcurse/convex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace dimcurse::convex {

SampleSet::SampleSet(std::size_t dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
  if (dim_ == 0) throw DomainError("sample set dimension must be >= 1");
  for (const auto& p : points_) {
    if (p.dim() != dim_) throw DomainError("sample point has wrong dimension");
  }
}

SampleSet SampleSet::cube_vertices(std::size_t dim) {
  if (dim >= 30) throw DomainError("too many cube vertices to enumerate");
  std::vector<Point> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    std::vector<double> c(dim);
    for (std::size_t k = 0; k < dim; ++k) c[k] = (mask >> k) & 1U ? 1.0 : 0.0;
    pts.emplace_back(std::move(c));
  }
  return SampleSet(dim, std::move(pts));
}

lp::LinearProgram fplus_program(const Point& x, const SampleSet& samples) {
  const std::size_t n = samples.size();
  const std::size_t d = samples.dim();
  lp::LinearProgram prog;
  prog.objective.assign(n, 1.0);
  prog.rows.reserve(2 * d + 1);
  prog.rhs.reserve(2 * d + 1);
  prog.rows.emplace_back(n, 1.0);
  prog.rhs.push_back(1.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> below(n), above(n);
    for (std::size_t j = 0; j < n; ++j) {
      below[j] = samples[j][i];
      above[j] = 1.0 - samples[j][i];
    }
    prog.rows.push_back(std::move(below));
    prog.rhs.push_back(x[i]);
    prog.rows.push_back(std::move(above));
    prog.rhs.push_back(1.0 - x[i]);
  }
  return prog;
}

double fplus_value(const Point& x, const SampleSet& samples) {
  if (x.dim() != samples.dim()) throw DomainError("query dimension does not match sample set");
  if (samples.empty()) return 1.0;
  const auto prog = fplus_program(x, samples);
  const auto sol = lp::solve(prog);
  if (sol.status != lp::LpStatus::optimal) {
    throw lp::LpFailure(sol.status == lp::LpStatus::unbounded ? "f_plus LP reported unbounded"
                                                             : "f_plus LP hit the pivot limit",
                        prog);
  }
  return std::clamp(1.0 - sol.objective, 0.0, 1.0);
}

EvalOracle fplus_oracle(const SampleSet& samples) {
  return {samples.dim(), [samples](const Point& x) { return fplus_value(x, samples); },
          FunctionClass::convex};
}

EvalOracle zero_oracle(std::size_t dim) {
  return {dim, [](const Point&) { return 0.0; }, FunctionClass::convex};
}

IntegralEstimate integral_fplus(const SampleSet& samples, std::size_t mc_samples,
                                const RandomStream& stream, unsigned workers) {
  if (mc_samples == 0) throw DomainError("integral_fplus needs at least one sample");
  if (samples.empty()) return {1.0, 0.0, 0.0, mc_samples};
  const std::size_t d = samples.dim();
  const auto est = block_monte_carlo(
      mc_samples, stream, [&](RandomStream& rs) { return fplus_value(rs.uniform_point(d), samples); },
      workers);
  return {est.value, est.std_error, 1.0 - est.value, est.samples};
}

ErrorBoundEstimate error_lower_bound_con_empirical(const SampleSet& samples, std::size_t mc_samples,
                                                   const RandomStream& stream, unsigned workers) {
  const auto est = integral_fplus(samples, mc_samples, stream, workers);
  ErrorBoundEstimate out;
  out.lower_bound = 0.5 * est.integral;
  out.std_error = 0.5 * est.std_error;
  out.ci_low = std::max(0.0, out.lower_bound - 3.0 * out.std_error);
  out.ci_high = std::min(0.5, out.lower_bound + 3.0 * out.std_error);
  return out;
}

std::vector<WeightedVertex> caratheodory_cube_decomposition(const Point& x) {
  const std::size_t d = x.dim();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });

  std::vector<WeightedVertex> out;
  std::vector<int> vertex(d, 0);
  auto sorted = [&](std::size_t r) { return r < d ? x[order[r]] : 0.0; };
  // vertex_0 = 0 carries 1 - max; vertex_k has ones on the k largest coordinates.
  if (const double w = 1.0 - sorted(0); w > 0.0) out.push_back({vertex, w});
  for (std::size_t k = 1; k <= d; ++k) {
    vertex[order[k - 1]] = 1;
    if (const double w = sorted(k - 1) - sorted(k); w > 0.0) out.push_back({vertex, w});
  }
  return out;
}

SampleSet vertexize(const SampleSet& samples) {
  std::set<std::vector<int>> seen;
  std::vector<Point> out;
  for (const auto& p : samples.points()) {
    for (const auto& wv : caratheodory_cube_decomposition(p)) {
      if (!seen.insert(wv.vertex).second) continue;
      out.emplace_back(std::vector<double>(wv.vertex.begin(), wv.vertex.end()));
    }
  }
  return SampleSet(samples.dim(), std::move(out));
}

bool Ball::contains(std::span<const double> x, double rel_tol) const {
  double dist_sq = 0.0;
  for (std::size_t k = 0; k < center.size(); ++k) {
    const double diff = x[k] - center[k];
    dist_sq += diff * diff;
  }
  const double r2 = radius * radius;
  return dist_sq <= r2 * (1.0 + rel_tol) + 1e-15;
}

Ball elekes_ball(const std::vector<int>& vertex) {
  Ball b;
  b.center.resize(vertex.size());
  double half_dist_sq = 0.0;
  for (std::size_t k = 0; k < vertex.size(); ++k) {
    if (vertex[k] != 0 && vertex[k] != 1) throw DomainError("elekes_ball expects a cube vertex");
    b.center[k] = 0.5 * (0.5 + vertex[k]);
    const double diff = 0.5 - vertex[k];
    half_dist_sq += diff * diff;
  }
  b.radius = 0.5 * std::sqrt(half_dist_sq);
  return b;
}

std::vector<std::vector<int>> as_vertices(const SampleSet& vertex_set) {
  std::vector<std::vector<int>> out;
  for (const auto& p : vertex_set.points()) {
    std::vector<int> v(p.dim());
    for (std::size_t k = 0; k < p.dim(); ++k) {
      if (p[k] != 0.0 && p[k] != 1.0) throw DomainError("sample set contains a non-vertex");
      v[k] = p[k] == 1.0 ? 1 : 0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

CoverCheck elekes_cover_check(const std::vector<std::vector<int>>& vertices, std::size_t trials,
                              const RandomStream& stream) {
  if (vertices.empty()) throw DomainError("elekes_cover_check needs a nonempty vertex set");
  const std::size_t d = vertices.front().size();
  std::vector<Ball> balls;
  for (const auto& v : vertices) balls.push_back(elekes_ball(v));

  RandomStream rs = stream.substream("elekes");
  CoverCheck result;
  std::vector<double> weights(vertices.size());
  std::vector<double> x(d);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::fill(weights.begin(), weights.end(), 0.0);
    if (trial % 2 == 0 || vertices.size() == 1) {
      for (auto& w : weights) w = -std::log1p(-rs.uniform());
    } else {
      const std::size_t a = rs() % vertices.size();
      const std::size_t b = rs() % vertices.size();
      const double lambda = rs.uniform();
      weights[a] += lambda;
      weights[b] += 1.0 - lambda;
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      for (std::size_t k = 0; k < d; ++k) x[k] += weights[j] / total * vertices[j][k];
    }
    ++result.checked;
    const bool covered = std::any_of(balls.begin(), balls.end(), [&](const Ball& b) { return b.contains(x); });
    if (!covered) {
      result.passed = false;
      result.counterexample = x;
      return result;
    }
  }
  return result;
}

double volume_upper_bound(double n, std::size_t d, double t0) {
  const double dd = static_cast<double>(d);
  const double v = (1.0 - t0) + (dd + 1.0) * n * t0 * std::pow(10.0 / 11.0, dd);
  return std::min(1.0, v);
}

double complexity_lower_con(double eps, std::size_t d, double eps0) {
  if (!(eps0 > 0.0)) throw DomainError("eps0 must be positive");
  if (eps >= eps0) return 0.0;
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double dd = static_cast<double>(d);
  return std::ceil(std::pow(1.1, dd) * (1.0 - eps / eps0) / (dd + 1.0));
}

double error_lower_bound_con(double n, std::size_t d, double t0) {
  return 0.5 * (1.0 - volume_upper_bound(n, d, t0));
}

}  // namespace dimcurse::convex
