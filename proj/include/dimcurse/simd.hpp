#pragma once

// Batched counting kernels for the Monte Carlo volume estimators. Samples are
// laid out dimension-major ("SoA"): coordinate k of sample i is soa[k * count + i].
//
// Every kernel has a scalar reference and, on x86-64, an AVX2 variant that
// vectorizes across samples. Each lane performs the same operations in the
// same order as the scalar loop (no FMA), so both variants return identical
// counts on identical input.

#include <cstddef>
#include <span>
#include <string_view>

namespace dimcurse::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

enum class BoxMode { lower, upper };

struct KernelTable {
  /// Number of samples with sum_k (x_k - center_k)^2 <= radius_sq.
  std::size_t (*count_in_ball)(std::span<const double> soa, std::size_t count, std::size_t dim,
                               std::span<const double> center, double radius_sq);
  /// Number of samples inside the union of boxes [0, t_j] (lower) or [t_j, 1]
  /// (upper); `corners` is row-major n x dim, boundaries inclusive.
  std::size_t (*count_in_box_union)(std::span<const double> soa, std::size_t count,
                                    std::size_t dim, std::span<const double> corners,
                                    BoxMode mode);
};

bool supported(Isa isa);
/// Best ISA supported by the running CPU, unless DIMCURSE_ISA=scalar is set.
Isa best_available();
const KernelTable& kernels(Isa isa);

/// Process-wide selection used by the estimators; initialised from best_available().
Isa active();
void set_active(Isa isa);
inline const KernelTable& active_kernels() { return kernels(active()); }

namespace scalar {
std::size_t count_in_ball(std::span<const double> soa, std::size_t count, std::size_t dim,
                          std::span<const double> center, double radius_sq);
std::size_t count_in_box_union(std::span<const double> soa, std::size_t count, std::size_t dim,
                               std::span<const double> corners, BoxMode mode);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DIMCURSE_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::size_t count_in_ball(std::span<const double> soa, std::size_t count, std::size_t dim,
                          std::span<const double> center, double radius_sq);
std::size_t count_in_box_union(std::span<const double> soa, std::size_t count, std::size_t dim,
                               std::span<const double> corners, BoxMode mode);
}  // namespace avx2
#endif

}  // namespace dimcurse::simd
