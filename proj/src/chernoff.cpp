#include "dimcurse/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dimcurse/simd.hpp"

namespace dimcurse::chernoff {

double s_of_t(double t) { return 0.25 * (1.0 + t); }

HullGeometry HullGeometry::at(double t, std::size_t d) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("slice height must lie in [0,1]");
  if (d == 0) throw DomainError("dimension must be >= 1");
  HullGeometry g;
  g.t = t;
  g.s = s_of_t(t);
  g.apex.assign(d, 0.5 * (1.0 + t));
  g.apex.push_back(t);
  return g;
}

std::vector<double> HullGeometry::cap_center() const {
  std::vector<double> c(apex.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.5 * apex[k];
  return c;
}

double HullGeometry::cap_radius_sq() const {
  return static_cast<double>(apex.size() - 1) * s * s;
}

double g_value(double s, double alpha) {
  if (alpha < 0.0) throw DomainError("alpha must be nonnegative");
  if (alpha == 0.0) return 1.0;
  auto integrand = [&](double x) { return std::exp(alpha * (2.0 * s * x - x * x)); };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, 1.0, 20, 1e-13, &error);
  if (!(error <= 1e-10 * std::max(1.0, std::abs(value)))) {
    throw ConvergenceError("g_value: quadrature error estimate " + std::to_string(error) +
                           " exceeds tolerance at s=" + std::to_string(s) +
                           ", alpha=" + std::to_string(alpha));
  }
  return value;
}

double g_value_closed_form(double s, double alpha) {
  if (alpha == 0.0) return 1.0;
  const double r = std::sqrt(alpha);
  return std::exp(alpha * s * s) * 0.5 * std::sqrt(std::numbers::pi / alpha) *
         (std::erf(r * (1.0 - s)) + std::erf(r * s));
}

ChernoffResult g_min(double s) {
  if (!(s > 0.0 && s <= 0.5)) throw DomainError("g_min expects s in (0, 1/2]");
  ChernoffResult out;
  out.s = s;
  // Convexity in alpha and a nonnegative slope at 0 put the infimum at alpha -> 0+.
  if (s >= 1.0 / 3.0) {
    out.alpha_star = 0.0;
    out.g_min = 1.0;
    out.certified = false;
    return out;
  }

  auto g = [s](double a) { return g_value(s, a); };
  constexpr int kMaxBracketSteps = 80;
  double lo = 0.0;
  double mid = 1.0;
  double f_mid = g(mid);
  double hi = 2.0;
  int steps = 0;
  if (f_mid >= 1.0) {
    while (f_mid >= 1.0) {
      if (++steps > kMaxBracketSteps) throw ConvergenceError("g_min: could not bracket the minimum");
      hi = mid;
      mid *= 0.5;
      f_mid = g(mid);
    }
  } else {
    double f_hi = g(hi);
    while (f_hi < f_mid) {
      if (++steps > kMaxBracketSteps) throw ConvergenceError("g_min: could not bracket the minimum");
      lo = mid;
      mid = hi;
      f_mid = f_hi;
      hi *= 2.0;
      f_hi = g(hi);
    }
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }
  out.alpha_star = 0.5 * (a + b);
  out.g_min = std::min({g(out.alpha_star), fc, fd, f_mid});
  out.certified = out.g_min < kTargetRatio;
  return out;
}

T0Result find_t0() {
  constexpr double kGrid = 1e-3;
  constexpr double kRefine = 1e-6;
  auto certified_at = [](double t) { return g_min(s_of_t(t)).certified; };

  T0Result out;
  if (!certified_at(0.0)) {
    throw ConvergenceError("find_t0: g_min(1/4) is not below 10/11; the volume bound cannot start");
  }
  out.grid_points_checked = 1;
  std::size_t k = 1;
  double fail = 1.0;
  for (; k <= 1000; ++k) {
    const double t = static_cast<double>(k) * kGrid;
    ++out.grid_points_checked;
    if (!certified_at(t)) {
      fail = t;
      break;
    }
  }
  double lo = static_cast<double>(k - 1) * kGrid;
  double hi = fail;
  while (hi - lo > kRefine) {
    const double mid = 0.5 * (lo + hi);
    (certified_at(mid) ? lo : hi) = mid;
  }
  out.t0 = lo;
  out.eps0 = out.t0 / 2.0;
  out.at_t0 = g_min(s_of_t(out.t0));
  return out;
}

Estimate cap_volume_mc(double t, std::size_t d, std::size_t samples, const RandomStream& stream) {
  if (samples == 0) throw DomainError("cap_volume_mc needs at least one sample");
  const auto geom = HullGeometry::at(t, d);
  const auto center = geom.cap_center();
  const double r2 = geom.cap_radius_sq();

  constexpr std::size_t kBatch = 4096;
  const auto& kern = simd::active_kernels();
  std::vector<double> soa(kBatch * d);
  std::size_t hits = 0;
  for (std::size_t done = 0, block = 0; done < samples; done += kBatch, ++block) {
    const std::size_t count = std::min(kBatch, samples - done);
    RandomStream rs = stream.substream(static_cast<std::uint64_t>(block));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < d; ++k) soa[k * count + i] = rs.uniform();
    }
    hits += kern.count_in_ball(std::span<const double>(soa.data(), count * d), count, d, center, r2);
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), samples};
}

nlohmann::json to_json(const ChernoffResult& r) {
  return {{"s", r.s},
          {"alpha_star", r.alpha_star},
          {"g_min", r.g_min},
          {"certified", r.certified},
          {"margin", r.margin()}};
}

nlohmann::json to_json(const T0Result& r) {
  return {{"s", r.at_t0.s},         {"alpha_star", r.at_t0.alpha_star},
          {"g_min", r.at_t0.g_min}, {"certified", r.at_t0.certified},
          {"t0", r.t0},             {"eps0", r.eps0}};
}

}  // namespace dimcurse::chernoff
