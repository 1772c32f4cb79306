#pragma once

// Adversary for integration over convex [0,1]-valued functions on the cube.
//
// An algorithm probed with f = 0 reveals only its sample set P. The largest
// convex [0,1]-valued function vanishing on P is the lower boundary of
//
//   C = conv(P x {0}  U  [0,1]^d x {1}),
//
// so INT(f_plus) = 1 - vol(C) and every such algorithm errs by at least
// (1 - vol(C)) / 2 on f_plus or on 0. This header covers f_plus itself and the
// geometric side of the volume estimate; the Chernoff side lives in chernoff.hpp.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dimcurse/core.hpp"
#include "dimcurse/lp.hpp"

namespace dimcurse::convex {

class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  /// All 2^d vertices of the cube.
  static SampleSet cube_vertices(std::size_t dim);

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

/// The program  max sum(lambda)  s.t.  lambda >= 0, sum(lambda) <= 1,
/// sum_j lambda_j p_{j,i} <= x_i  and  sum_j lambda_j (1 - p_{j,i}) <= 1 - x_i.
lp::LinearProgram fplus_program(const Point& x, const SampleSet& samples);

/// min{ t : (x, t) in C }, i.e. 1 minus the optimum of fplus_program. Throws
/// lp::LpFailure (carrying the instance) if the solver does not reach optimality.
double fplus_value(const Point& x, const SampleSet& samples);

EvalOracle fplus_oracle(const SampleSet& samples);
/// The probe function f = 0.
EvalOracle zero_oracle(std::size_t dim);

struct IntegralEstimate {
  double integral = 0.0;       // INT(f_plus)
  double std_error = 0.0;
  double hull_volume = 0.0;    // 1 - integral
  std::size_t samples = 0;
};

IntegralEstimate integral_fplus(const SampleSet& samples, std::size_t mc_samples,
                                const RandomStream& stream, unsigned workers = 0);

struct ErrorBoundEstimate {
  double lower_bound = 0.0;  // INT(f_plus) / 2
  double std_error = 0.0;
  double ci_low = 0.0;       // +/- 3 standard errors
  double ci_high = 0.0;
};

ErrorBoundEstimate error_lower_bound_con_empirical(const SampleSet& samples, std::size_t mc_samples,
                                                   const RandomStream& stream, unsigned workers = 0);

struct WeightedVertex {
  std::vector<int> vertex;  // entries in {0, 1}
  double weight = 0.0;
};

/// Writes x as a convex combination of at most d+1 cube vertices: sort the
/// coordinates in decreasing order (ties by index), take the indicator of the
/// top-k coordinates for k = 0..d, weighted by consecutive differences. Zero
/// weights are dropped.
std::vector<WeightedVertex> caratheodory_cube_decomposition(const Point& x);

/// Union of the decomposition vertices of every sample, deduplicated, in first
/// appearance order.
SampleSet vertexize(const SampleSet& samples);

struct Ball {
  std::vector<double> center;
  double radius = 0.0;

  bool contains(std::span<const double> x, double rel_tol = 1e-12) const;
};

/// Ball with diameter [v, (1/2, ..., 1/2)]: center (w0 + v)/2, radius sqrt(d)/4.
Ball elekes_ball(const std::vector<int>& vertex);

struct CoverCheck {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::vector<double>> counterexample;
};

/// Samples `trials` convex combinations of the vertex set (alternating full
/// Dirichlet(1) weights and random two-point segments) and checks that each lies
/// in the union of the Elekes balls.
CoverCheck elekes_cover_check(const std::vector<std::vector<int>>& vertices, std::size_t trials,
                              const RandomStream& stream);

std::vector<std::vector<int>> as_vertices(const SampleSet& vertex_set);

/// vol(C) <= (1 - t0) + (d + 1) n t0 (10/11)^d, clipped to 1.
double volume_upper_bound(double n, std::size_t d, double t0);

/// ceil((11/10)^d (1 - eps/eps0) / (d + 1)); 0 for eps >= eps0.
double complexity_lower_con(double eps, std::size_t d, double eps0);

/// Error bound implied by the volume bound: (1 - volume_upper_bound) / 2.
double error_lower_bound_con(double n, std::size_t d, double t0);

}  // namespace dimcurse::convex
