#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dimcurse/core.hpp"
#include "dimcurse/simd.hpp"

using namespace dimcurse;
using simd::BoxMode;
using simd::Isa;

namespace {

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (simd::supported(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

}  // namespace

TEST_CASE("scalar kernels on hand-built input") {
  // Three samples in d = 2, dimension-major.
  const std::vector<double> soa{0.0, 0.5, 1.0,   // x0
                                0.0, 0.5, 1.0};  // x1
  const std::vector<double> center{0.5, 0.5};
  CHECK(simd::scalar::count_in_ball(soa, 3, 2, center, 0.0) == 1);
  CHECK(simd::scalar::count_in_ball(soa, 3, 2, center, 0.5) == 3);
  const std::vector<double> corner{0.5, 0.5};
  CHECK(simd::scalar::count_in_box_union(soa, 3, 2, corner, BoxMode::lower) == 2);
  CHECK(simd::scalar::count_in_box_union(soa, 3, 2, corner, BoxMode::upper) == 2);
  CHECK(simd::scalar::count_in_box_union(soa, 3, 2, {}, BoxMode::upper) == 0);
}

TEST_CASE("every available ISA matches the scalar reference exactly") {
  RandomStream rs(2024);
  const auto& ref = simd::kernels(Isa::scalar);
  for (Isa isa : available_isas()) {
    CAPTURE(simd::to_string(isa));
    const auto& k = simd::kernels(isa);
    for (int inst = 0; inst < 300; ++inst) {
      const std::size_t d = 1 + rs() % 12;
      const std::size_t count = rs() % 67;  // exercises every tail length
      const std::size_t boxes = rs() % 6;
      std::vector<double> soa(d * count), center(d), corners(boxes * d);
      for (auto& v : soa) v = rs.uniform();
      for (auto& v : center) v = rs.uniform();
      for (auto& v : corners) v = rs.uniform();
      const double r2 = rs.uniform() * 0.4 * static_cast<double>(d);
      CHECK(k.count_in_ball(soa, count, d, center, r2) == ref.count_in_ball(soa, count, d, center, r2));
      for (auto mode : {BoxMode::lower, BoxMode::upper}) {
        CHECK(k.count_in_box_union(soa, count, d, corners, mode) ==
              ref.count_in_box_union(soa, count, d, corners, mode));
      }
    }
  }
}

TEST_CASE("boundary samples are counted identically") {
  // Samples placed exactly on the sphere and on box faces.
  const std::size_t d = 3, count = 9;
  std::vector<double> soa(d * count);
  const double s = 0.25;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < d; ++k) soa[k * count + i] = (i + k) % 3 == 0 ? 0.0 : s * 2.0;
  }
  const std::vector<double> center(d, s);
  const double r2 = static_cast<double>(d) * s * s;
  const std::vector<double> corners{0.5, 0.5, 0.5, 0.0, 0.5, 0.0};
  const auto& ref = simd::kernels(Isa::scalar);
  CHECK(ref.count_in_ball(soa, count, d, center, r2) == count);
  for (Isa isa : available_isas()) {
    const auto& k = simd::kernels(isa);
    CHECK(k.count_in_ball(soa, count, d, center, r2) == count);
    for (auto mode : {BoxMode::lower, BoxMode::upper}) {
      CHECK(k.count_in_box_union(soa, count, d, corners, mode) == ref.count_in_box_union(soa, count, d, corners, mode));
    }
  }
}

TEST_CASE("dispatch") {
  CHECK(simd::supported(Isa::scalar));
  const Isa before = simd::active();
  simd::set_active(Isa::scalar);
  CHECK(simd::active() == Isa::scalar);
  simd::set_active(before);
  CHECK(simd::to_string(Isa::avx2) == "avx2");
  if (!simd::supported(Isa::avx2)) CHECK_THROWS(simd::set_active(Isa::avx2));
}
