#pragma once

// Exponential-moment bound on the volume of the cap
//
//   E_t = { x in [0,1]^d : sum_j (x_j - s)^2 <= d s^2 },   s = (1 + t) / 4,
//
// the ball spanned by the origin and the projected apex w_t, cut to the cube.
// For uniform X on [0,1] and any alpha > 0,
//
//   vol(E_t) <= g(s, alpha)^d,   g(s, alpha) = int_0^1 exp(alpha (2 s x - x^2)) dx.
//
// g is convex in alpha with g(s, 0) = 1 and dg/dalpha(s, 0) = s - 1/3, so the
// infimum is below 1 exactly when s < 1/3.

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "dimcurse/core.hpp"

namespace dimcurse::chernoff {

inline constexpr double kTargetRatio = 10.0 / 11.0;

struct HullGeometry {
  double t = 0.0;
  double s = 0.25;
  std::vector<double> apex;  // w_t, length d + 1

  static HullGeometry at(double t, std::size_t d);
  /// E_t as a ball: center (s, ..., s), squared radius d s^2.
  std::vector<double> cap_center() const;
  double cap_radius_sq() const;
};

/// s = (1 + t) / 4.
double s_of_t(double t);

/// Adaptive Gauss-Kronrod quadrature, absolute tolerance 1e-10. Throws
/// ConvergenceError if the error estimate stays above tolerance.
double g_value(double s, double alpha);
/// exp(alpha s^2) sqrt(pi / alpha) / 2 [erf(sqrt(alpha)(1 - s)) + erf(sqrt(alpha) s)].
double g_value_closed_form(double s, double alpha);

struct ChernoffResult {
  double s = 0.0;
  double alpha_star = 0.0;  // 0 when the infimum is only approached as alpha -> 0+
  double g_min = 1.0;
  bool certified = false;   // g_min < 10/11

  double margin() const { return kTargetRatio - g_min; }
};

/// Bracket growth followed by golden-section search in alpha (tolerance 1e-9).
ChernoffResult g_min(double s);

struct T0Result {
  double t0 = 0.0;
  double eps0 = 0.0;
  ChernoffResult at_t0;
  std::size_t grid_points_checked = 0;
};

/// Largest t0 such that g_min((1 + t)/4) < 10/11 for every t on a 1e-3 grid of
/// [0, t0], refined by bisection to 1e-6 at the first failing grid cell.
/// eps0 = t0 / 2. Throws ConvergenceError if t = 0 itself is not certified.
T0Result find_t0();

/// Monte Carlo estimate of vol(E_t) in dimension d.
Estimate cap_volume_mc(double t, std::size_t d, std::size_t samples, const RandomStream& stream);

nlohmann::json to_json(const ChernoffResult& r);
nlohmann::json to_json(const T0Result& r);

}  // namespace dimcurse::chernoff
