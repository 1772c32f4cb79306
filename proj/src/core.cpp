#include "dimcurse/core.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dimcurse {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("point must have dimension >= 1");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double c = coords_[i];
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DomainError("coordinate " + std::to_string(i) + " = " + std::to_string(c) +
                        " outside [0,1]");
    }
  }
}

Point Point::filled(std::size_t dim, double value) { return Point(std::vector<double>(dim, value)); }

double Point::sum() const noexcept {
  double s = 0.0;
  for (double c : coords_) s += c;
  return s;
}

bool Point::dominated_by(const Point& other) const {
  if (other.dim() != dim()) throw DomainError("dimension mismatch in comparison");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] > other.coords_[i]) return false;
  }
  return true;
}

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::monotone: return "monotone";
    case FunctionClass::convex: return "convex";
    case FunctionClass::unrestricted: return "unrestricted";
  }
  return "unrestricted";
}

FunctionClass function_class_from_string(std::string_view s) {
  if (s == "monotone" || s == "mon") return FunctionClass::monotone;
  if (s == "convex" || s == "con") return FunctionClass::convex;
  if (s == "unrestricted") return FunctionClass::unrestricted;
  throw std::invalid_argument("unknown function class: " + std::string(s));
}

std::vector<Point> Transcript::points() const {
  std::vector<Point> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.point);
  return out;
}

void Transcript::append(Point p, double value) { records_.push_back({std::move(p), value}); }

nlohmann::json to_json(const Point& p) {
  return nlohmann::json(std::vector<double>(p.coords().begin(), p.coords().end()));
}

Point point_from_json(const nlohmann::json& j) { return Point(j.get<std::vector<double>>()); }

nlohmann::json to_json(const Transcript& t) {
  auto arr = nlohmann::json::array();
  for (const auto& r : t) arr.push_back({{"point", to_json(r.point)}, {"value", r.value}});
  return arr;
}

Transcript transcript_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("transcript JSON must be an array");
  Transcript t;
  for (const auto& rec : j) {
    const double v = rec.at("value").get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("transcript value outside [0,1]");
    t.append(point_from_json(rec.at("point")), v);
  }
  return t;
}

RunResult run_algorithm(const AdaptiveCubature& alg, const EvalOracle& oracle, std::size_t budget) {
  if (alg.dim() != oracle.dim) {
    throw DomainError("algorithm dimension " + std::to_string(alg.dim()) +
                      " does not match oracle dimension " + std::to_string(oracle.dim));
  }
  RunResult result;
  while (auto query = alg.next_query(result.transcript)) {
    if (result.transcript.size() == budget) throw BudgetExceeded(budget);
    if (query->dim() != oracle.dim) throw DomainError("query has wrong dimension");
    const double value = oracle(*query);
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("oracle returned " + std::to_string(value) + " outside [0,1]");
    }
    result.transcript.append(std::move(*query), value);
  }
  result.output = alg.finalize(result.transcript);
  return result;
}

double initial_error(FunctionClass) { return 0.5; }

std::uint64_t RandomStream::mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Point RandomStream::uniform_point(std::size_t dim) {
  std::vector<double> c(dim);
  for (auto& v : c) v = uniform();
  return Point(std::move(c));
}

RandomStream RandomStream::substream(std::uint64_t label) const {
  return RandomStream(seed_, mix(key_ ^ mix(label + 0x632BE59BD9B4E019ULL)), 0);
}

RandomStream RandomStream::substream(std::string_view label) const {
  // FNV-1a
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return substream(h);
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace {
constexpr std::size_t kBlock = 4096;

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};
}  // namespace

Estimate block_monte_carlo(std::size_t samples, const RandomStream& stream,
                           const std::function<double(RandomStream&)>& draw, unsigned workers) {
  if (samples == 0) throw DomainError("Monte Carlo needs at least one sample");
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockSums> partial(blocks);

  auto run_block = [&](std::size_t b) {
    RandomStream rs = stream.substream(static_cast<std::uint64_t>(b));
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(samples, lo + kBlock);
    BlockSums acc;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = draw(rs);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[b] = acc;
  };

  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n), samples};
}

}  // namespace dimcurse
