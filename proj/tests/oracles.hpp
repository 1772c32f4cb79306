#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the code paths they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// Volume of the union of [0, t_j] (lower) or [t_j, 1] (upper) by counting
/// cell midpoints of a `cells`^d grid.
inline double grid_union_volume(const std::vector<std::vector<double>>& corners, bool lower,
                                std::size_t cells) {
  if (corners.empty()) return 0.0;
  const std::size_t d = corners.front().size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= cells;
  std::size_t hits = 0;
  std::vector<double> x(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t idx = flat;
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = (static_cast<double>(idx % cells) + 0.5) / static_cast<double>(cells);
      idx /= cells;
    }
    for (const auto& t : corners) {
      bool in = true;
      for (std::size_t k = 0; k < d && in; ++k) in = lower ? x[k] <= t[k] : x[k] >= t[k];
      if (in) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// f_plus in one dimension: zero on [min P, max P], linear up to 1 at the ends
/// of [0,1] outside it (no ramp when the hull touches the end).
inline double fplus_1d(double x, const std::vector<double>& pts) {
  if (pts.empty()) return 1.0;
  const double lo = *std::min_element(pts.begin(), pts.end());
  const double hi = *std::max_element(pts.begin(), pts.end());
  if (x < lo) return (lo - x) / lo;
  if (x > hi) return (x - hi) / (1.0 - hi);
  return 0.0;
}

using Vec2 = std::array<double, 2>;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; returns the hull counter-clockwise.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline double shoelace(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(a);
}

/// vol_{d+1} conv(P x {0} U [0,1]^d x {1}) for d in {1, 2}. The slice at height
/// t is (1-t) conv(P) + t [0,1]^d, whose measure is a polynomial of degree d in
/// t, so Simpson's rule on three slices is exact.
inline double hull_volume_lowdim(const std::vector<std::vector<double>>& pts) {
  if (pts.empty()) return 0.0;
  const std::size_t d = pts.front().size();
  auto slice = [&](double t) {
    if (d == 1) {
      double lo = 1, hi = 0;
      for (const auto& p : pts) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      return (1.0 - t) * (hi - lo) + t;
    }
    std::vector<Vec2> sums;
    for (const auto& p : pts) {
      for (double a : {0.0, 1.0}) {
        for (double b : {0.0, 1.0}) sums.push_back({(1.0 - t) * p[0] + t * a, (1.0 - t) * p[1] + t * b});
      }
    }
    return shoelace(convex_hull(sums));
  };
  return (slice(0.0) + 4.0 * slice(0.5) + slice(1.0)) / 6.0;
}

/// max prod y_j over sum y_j <= d/2 on a grid of step 1/steps (d = 2: y_2 is
/// set to its largest feasible value, which is optimal for fixed y_1).
inline double grid_product_max_2d(std::size_t steps) {
  double best = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double y1 = static_cast<double>(i) / static_cast<double>(steps);
    const double y2 = std::min(1.0, 1.0 - y1);
    best = std::max(best, y1 * y2);
  }
  return best;
}

/// Closed-form g scanned on a uniform alpha grid.
inline double scan_g_min(double s, double alpha_max, std::size_t steps) {
  double best = 1.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double a = alpha_max * static_cast<double>(i) / static_cast<double>(steps);
    const double r = std::sqrt(a);
    const double g = std::exp(a * s * s) * 0.5 * std::sqrt(M_PI / a) * (std::erf(r * (1.0 - s)) + std::erf(r * s));
    best = std::min(best, g);
  }
  return best;
}

/// Composite Simpson for int_0^1 exp(alpha (2 s x - x^2)) dx.
inline double simpson_g(double s, double alpha, std::size_t panels = 2000) {
  const double h = 1.0 / static_cast<double>(panels);
  auto f = [&](double x) { return std::exp(alpha * (2.0 * s * x - x * x)); };
  double acc = f(0.0) + f(1.0);
  for (std::size_t i = 1; i < panels; ++i) acc += f(static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace oracle
