#include "dimcurse/simd.hpp"

namespace dimcurse::simd::scalar {

std::size_t count_in_ball(std::span<const double> soa, std::size_t count, std::size_t dim,
                          std::span<const double> center, double radius_sq) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = soa[k * count + i] - center[k];
      acc = acc + diff * diff;
    }
    hits += acc <= radius_sq ? 1 : 0;
  }
  return hits;
}

std::size_t count_in_box_union(std::span<const double> soa, std::size_t count, std::size_t dim,
                               std::span<const double> corners, BoxMode mode) {
  const std::size_t boxes = dim == 0 ? 0 : corners.size() / dim;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    bool inside_any = false;
    for (std::size_t j = 0; j < boxes && !inside_any; ++j) {
      bool inside = true;
      for (std::size_t k = 0; k < dim && inside; ++k) {
        const double x = soa[k * count + i];
        const double t = corners[j * dim + k];
        inside = mode == BoxMode::lower ? x <= t : x >= t;
      }
      inside_any = inside;
    }
    hits += inside_any ? 1 : 0;
  }
  return hits;
}

}  // namespace dimcurse::simd::scalar
