#pragma once

// Problem setup shared by every adversary: points in the unit cube, [0,1]-valued
// oracles, adaptive algorithms that see nothing but function values, and the
// transcript that records what they saw.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dimcurse {

inline constexpr const char* kVersion = "0.1.0";

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : std::runtime_error("algorithm requested more than " + std::to_string(budget) +
                           " function values"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A location in [0,1]^d. Construction rejects out-of-range coordinates; there is
/// no clamping.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  /// d copies of `value`.
  static Point filled(std::size_t dim, double value);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double sum() const noexcept;

  /// Componentwise x <= y (ties count as <=).
  bool dominated_by(const Point& other) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

enum class FunctionClass { monotone, convex, unrestricted };

std::string_view to_string(FunctionClass c);
FunctionClass function_class_from_string(std::string_view s);

/// f: [0,1]^d -> [0,1]. `eval` must be deterministic.
struct EvalOracle {
  std::size_t dim = 0;
  std::function<double(const Point&)> eval;
  FunctionClass class_tag = FunctionClass::unrestricted;

  double operator()(const Point& x) const { return eval(x); }
};

struct Record {
  Point point;
  double value = 0.0;
  friend bool operator==(const Record&, const Record&) = default;
};

/// Ordered (point, value) pairs in query order.
class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::vector<Record> records) : records_(std::move(records)) {}

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const noexcept { return records_; }
  std::vector<Point> points() const;

  void append(Point p, double value);

  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<Record> records_;
};

nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);
/// Array of {"point": [...], "value": v}, order-preserving.
nlohmann::json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

/// An algorithm of the form phi(f(t_1), ..., f(t_n)) whose t_j may depend on
/// earlier values. Implementations see only the transcript so far; they are
/// expected to be deterministic functions of it and of their own seed.
class AdaptiveCubature {
 public:
  virtual ~AdaptiveCubature() = default;

  virtual std::size_t dim() const = 0;
  /// Next query, or std::nullopt to stop.
  virtual std::optional<Point> next_query(const Transcript& so_far) const = 0;
  virtual double finalize(const Transcript& transcript) const = 0;
  virtual std::string name() const = 0;
};

struct RunResult {
  Transcript transcript;
  double output = 0.0;
};

/// Drives `alg` against `oracle`. Each query, repeated or not, consumes one unit
/// of `budget`. Throws DomainError for dimension mismatch, out-of-cube queries or
/// out-of-range oracle values, and BudgetExceeded when the algorithm asks for
/// query number budget+1.
RunResult run_algorithm(const AdaptiveCubature& alg, const EvalOracle& oracle, std::size_t budget);

/// Worst-case error of the best zero-information algorithm (the constant 1/2) on
/// either class; independent of d.
double initial_error(FunctionClass c = FunctionClass::monotone);

/// Counter-based generator (SplitMix64 finalizer over key + counter). Substreams
/// get keys derived from the parent key and a label, so blocks of a parallel
/// computation draw the same numbers regardless of which thread runs them.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) : seed_(seed), key_(mix(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + kGamma * ++counter_); }
  /// Uniform on [0,1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  Point uniform_point(std::size_t dim);

  RandomStream substream(std::uint64_t label) const;
  RandomStream substream(std::string_view label) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  RandomStream(std::uint64_t seed, std::uint64_t key, int) : seed_(seed), key_(key) {}

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Mean and standard error of a Monte Carlo estimate.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Mean of f(i, stream_i) over `samples` draws, split into fixed blocks whose
/// streams are `stream.substream(block)`; partial sums are reduced in block order
/// so the result is independent of `workers`.
Estimate block_monte_carlo(std::size_t samples, const RandomStream& stream,
                           const std::function<double(RandomStream&)>& draw, unsigned workers = 0);

unsigned default_workers();

}  // namespace dimcurse
