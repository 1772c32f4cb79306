#pragma once

// Positive-side baselines: a bracketing staircase rule for monotone integrands,
// plain Monte Carlo, piecewise-constant approximation and the adapter that turns
// an approximation algorithm into an integration algorithm.

#include <cstddef>
#include <string>
#include <vector>

#include "dimcurse/core.hpp"

namespace dimcurse::quadrature {

struct BracketEstimate {
  double lower_sum = 0.0;
  double upper_sum = 0.0;
  std::size_t samples_used = 0;
  /// False when the sampled monotonicity check found a violation; the bracket
  /// is then not a certificate.
  bool certified = true;

  double estimate() const { return 0.5 * (lower_sum + upper_sum); }
  double certified_error() const { return 0.5 * (upper_sum - lower_sum); }
};

/// Evaluates f on the (m+1)^d grid {0, 1/m, ..., 1}^d. The lower sum averages
/// the lower-left corner of each of the m^d cells, the upper sum the upper-right
/// corner; for monotone f they bracket INT(f) and differ by at most d/m.
BracketEstimate staircase_monotone(const EvalOracle& oracle, std::size_t m,
                                   std::uint64_t check_seed = 0x51a1c);

/// Analytic cap d / (2m) on the staircase certified error.
double staircase_error_cap(std::size_t m, std::size_t d);

struct MonteCarloResult {
  double estimate = 0.0;
  double guaranteed_rmse = 0.0;  // n^{-1/2}
  double sample_std_error = 0.0;
  std::size_t n = 0;
};

MonteCarloResult monte_carlo(const EvalOracle& oracle, std::size_t n, const RandomStream& stream,
                             unsigned workers = 0);

class PiecewiseConstantApprox {
 public:
  PiecewiseConstantApprox(std::size_t dim, std::size_t m, std::vector<double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t resolution() const noexcept { return m_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Value of the step function at x (cells are half-open, the last one closed).
  double operator()(const Point& x) const;

 private:
  std::size_t dim_;
  std::size_t m_;
  std::vector<double> values_;  // row-major, first coordinate fastest
};

/// Cell value = oracle at the cell's lower corner.
PiecewiseConstantApprox pc_approximate(const EvalOracle& oracle, std::size_t m);

/// Exact integral of the step function: the mean of its cell values.
double app_to_int(const PiecewiseConstantApprox& approx);

/// ||f - approx||_p on the cube by composite Gauss-Legendre quadrature with
/// `refine`^d subcells per approximation cell (5 nodes per axis per subcell).
double lp_error(const EvalOracle& oracle, const PiecewiseConstantApprox& approx, double p,
                std::size_t refine = 8);

// Built-in test integrands.

struct BuiltinOracle {
  std::string id;
  EvalOracle oracle;
  bool has_true_value = false;
  double true_value = 0.0;
  bool monotone = false;
  bool convex = false;
};

/// "threshold" (INT 1/2), "product" (prod x_j, INT 2^-d), "linear" (mean x_j,
/// INT 1/2), "quadratic" ((4/d) sum (x_j - 1/2)^2, convex, INT 1/3),
/// "identity" (x_1, INT 1/2).
BuiltinOracle builtin_oracle(const std::string& id, std::size_t dim);
std::vector<std::string> builtin_oracle_ids();

struct RatePoint {
  std::size_t m = 0;
  std::size_t n = 0;
  double certified_error = 0.0;
};

struct RateFit {
  std::vector<RatePoint> points;
  double slope = 0.0;  // least squares of log(error) on log(n)
};

RateFit staircase_rate(const EvalOracle& oracle, const std::vector<std::size_t>& resolutions);

}  // namespace dimcurse::quadrature
