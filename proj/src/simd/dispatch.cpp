#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dimcurse/simd.hpp"

namespace dimcurse::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "scalar";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(DIMCURSE_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_available() {
  if (const char* env = std::getenv("DIMCURSE_ISA"); env && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

const KernelTable& kernels(Isa isa) {
  static constexpr KernelTable scalar_table{&scalar::count_in_ball, &scalar::count_in_box_union};
#ifdef DIMCURSE_HAVE_AVX2_KERNELS
  static constexpr KernelTable avx2_table{&avx2::count_in_ball, &avx2::count_in_box_union};
#endif
  if (!supported(isa)) throw std::runtime_error("ISA not supported: " + std::string(to_string(isa)));
  switch (isa) {
    case Isa::scalar: return scalar_table;
    case Isa::avx2:
#ifdef DIMCURSE_HAVE_AVX2_KERNELS
      return avx2_table;
#else
      break;
#endif
  }
  return scalar_table;
}

namespace {
std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{best_available()};
  return slot;
}
}  // namespace

Isa active() { return active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!supported(isa)) throw std::runtime_error("ISA not supported: " + std::string(to_string(isa)));
  active_slot().store(isa, std::memory_order_relaxed);
}

}  // namespace dimcurse::simd
