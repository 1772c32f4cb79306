// Compiled with -mavx2 (and without -mfma). Only reached through the dispatcher
// after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "dimcurse/simd.hpp"

namespace dimcurse::simd::avx2 {

namespace {
constexpr std::size_t kLanes = 4;

inline unsigned lane_count(__m256d mask) {
  return static_cast<unsigned>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mask))));
}
}  // namespace

std::size_t count_in_ball(std::span<const double> soa, std::size_t count, std::size_t dim,
                          std::span<const double> center, double radius_sq) {
  const double* base = soa.data();
  const __m256d r2 = _mm256_set1_pd(radius_sq);
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d x = _mm256_loadu_pd(base + k * count + i);
      const __m256d diff = _mm256_sub_pd(x, _mm256_set1_pd(center[k]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    hits += lane_count(_mm256_cmp_pd(acc, r2, _CMP_LE_OQ));
  }
  for (; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = base[k * count + i] - center[k];
      acc = acc + diff * diff;
    }
    hits += acc <= radius_sq ? 1 : 0;
  }
  return hits;
}

std::size_t count_in_box_union(std::span<const double> soa, std::size_t count, std::size_t dim,
                               std::span<const double> corners, BoxMode mode) {
  const double* base = soa.data();
  const std::size_t boxes = dim == 0 ? 0 : corners.size() / dim;
  const __m256d all_ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    __m256d any = _mm256_setzero_pd();
    for (std::size_t j = 0; j < boxes; ++j) {
      __m256d inside = all_ones;
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d x = _mm256_loadu_pd(base + k * count + i);
        const __m256d t = _mm256_set1_pd(corners[j * dim + k]);
        const __m256d cmp = mode == BoxMode::lower ? _mm256_cmp_pd(x, t, _CMP_LE_OQ)
                                                   : _mm256_cmp_pd(x, t, _CMP_GE_OQ);
        inside = _mm256_and_pd(inside, cmp);
      }
      any = _mm256_or_pd(any, inside);
      if (_mm256_movemask_pd(any) == 0xF) break;
    }
    hits += lane_count(any);
  }
  if (i < count) {
    const std::size_t tail = count - i;
    for (std::size_t r = 0; r < tail; ++r) {
      bool inside_any = false;
      for (std::size_t j = 0; j < boxes && !inside_any; ++j) {
        bool inside = true;
        for (std::size_t k = 0; k < dim && inside; ++k) {
          const double x = base[k * count + i + r];
          const double t = corners[j * dim + k];
          inside = mode == BoxMode::lower ? x <= t : x >= t;
        }
        inside_any = inside;
      }
      hits += inside_any ? 1 : 0;
    }
  }
  return hits;
}

}  // namespace dimcurse::simd::avx2
