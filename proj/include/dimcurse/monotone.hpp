#pragma once

// Adversary for integration over monotone [0,1]-valued functions on the cube.
//
// Every query is answered with the half-space indicator [sum_k x_k >= d/2].
// From the resulting transcript we build the two extreme monotone functions
// consistent with it:
//
//   f_plus(x)  = 0 iff x <= t componentwise for some t answered with 0, else 1
//   f_minus(x) = 1 iff x >= t componentwise for some t answered with 1, else 0
//
// Their integral gap is computed exactly from the volumes of the unions of
// orthant boxes, and half of it bounds the error of any algorithm that saw the
// same answers.

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "dimcurse/core.hpp"
#include "dimcurse/simd.hpp"

namespace dimcurse::monotone {

/// Largest corner count for which union volumes are computed by
/// inclusion-exclusion (2^n - 1 terms).
inline constexpr std::size_t kExactCornerCap = 20;

/// 1 iff sum_k x_k >= d/2 (boundary maps to 1).
int threshold_value(const Point& x);
EvalOracle threshold_oracle(std::size_t dim);

struct VolumeResult {
  double value = 0.0;
  double std_error = 0.0;  // 0 when exact
  bool exact = true;
};

/// Volume of the union of [0, t_j] (lower) or [t_j, 1] (upper) over all
/// corners. Exact up to kExactCornerCap corners; Monte Carlo above, using
/// `mc_samples` draws from `stream`.
VolumeResult union_box_volume(const std::vector<Point>& corners, simd::BoxMode mode,
                              std::size_t mc_samples = 1'000'000,
                              const RandomStream& stream = RandomStream(0x5eed));

class MonotoneFoolingPair {
 public:
  static MonotoneFoolingPair build(const std::vector<Point>& points, std::size_t dim);

  double f_plus(const Point& x) const;
  double f_minus(const Point& x) const;
  EvalOracle plus_oracle() const;
  EvalOracle minus_oracle() const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t n() const noexcept { return lower_.size() + upper_.size(); }
  std::size_t ell() const noexcept { return lower_.size(); }
  const std::vector<Point>& lower_corners() const noexcept { return lower_; }
  const std::vector<Point>& upper_corners() const noexcept { return upper_; }

  /// INT(f_plus) - INT(f_minus).
  double exact_gap() const noexcept { return exact_gap_; }
  /// max(0, 1 - n 2^-d); never exceeds exact_gap when the gap is exact.
  double guaranteed_gap() const noexcept { return guaranteed_gap_; }
  /// False when a union had more than kExactCornerCap corners.
  bool gap_is_exact() const noexcept { return gap_exact_; }
  double gap_std_error() const noexcept { return gap_std_error_; }

  double integral_plus() const noexcept { return integral_plus_; }
  double integral_minus() const noexcept { return integral_minus_; }

  nlohmann::json to_json() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> lower_;
  std::vector<Point> upper_;
  double integral_plus_ = 1.0;
  double integral_minus_ = 0.0;
  double exact_gap_ = 1.0;
  double guaranteed_gap_ = 1.0;
  double gap_std_error_ = 0.0;
  bool gap_exact_ = true;
};

/// Half the exact gap: the worst-case error any algorithm with this transcript
/// must incur on {f_plus, f_minus}.
double certified_error(const MonotoneFoolingPair& pair);

/// max(0, (1 - n 2^-d) / 2).
double error_lower_bound_mon(double n, std::size_t d);

/// ceil(2^d (1 - 2 eps)); 0 for eps >= 1/2. Integer-valued double so large d
/// does not overflow.
double complexity_lower_mon(double eps, std::size_t d);

struct ProductMax {
  double value = 0.0;
  std::vector<double> maximizer;
  std::size_t iterations = 0;
};

/// Maximizes prod_j y_j over y in [0,1]^d with sum_j y_j <= d/2 by projected
/// gradient ascent on sum_j log y_j from a seeded random start. Throws
/// ConvergenceError if the KKT residual does not fall below `tol`.
ProductMax simplex_product_max(std::size_t d, double tol = 1e-12, std::uint64_t seed = 1);

/// One row of the gap report; error_lower_bound is the certified value
/// (half the exact gap).
struct GapRow {
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t ell = 0;
  double exact_gap = 0.0;
  double guaranteed_gap = 0.0;
  double error_lower_bound = 0.0;
};

GapRow gap_row(const MonotoneFoolingPair& pair);

}  // namespace dimcurse::monotone
