#pragma once

// Experiment driver behind the `dimcurse` command line tool. Every command
// writes its report to a stream and returns an exit code; the CLI only parses
// flags and routes output.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimcurse/core.hpp"

namespace dimcurse::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGate = 3;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { csv, json };

struct ExperimentConfig {
  FunctionClass cls = FunctionClass::monotone;
  std::size_t d = 2;
  std::size_t dmax = 10;
  std::size_t budget = 0;
  double eps = 0.25;
  std::optional<double> eps0;
  std::uint64_t seed = 1;
  std::size_t mc_samples = 10'000;
  std::string out;
  Format format = Format::csv;
  std::string algorithm = "const-half";
  std::string oracle = "threshold";
  std::string method = "staircase";
  std::size_t m = 4;
  std::vector<double> t_grid;
  unsigned workers = 0;

  /// Throws ConfigError when an invariant (d >= 1, eps in (0,1/2), ...) fails.
  void validate() const;
  nlohmann::json to_json() const;
};

// Algorithms ---------------------------------------------------------------

/// Ids: const-half, grid, random, diagonal-bisect, staircase, vertices.
std::vector<std::string> algorithm_ids();
std::unique_ptr<AdaptiveCubature> make_algorithm(const std::string& id, std::size_t dim,
                                                 std::size_t budget, std::uint64_t seed);

// Reports ------------------------------------------------------------------

/// Shortest round-trip decimal form, '.' separator.
std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::size_t v);
  void end_row();

 private:
  std::ostream& os_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

struct BoundRow {
  std::size_t d = 0;
  double eps = 0.0;
  double value = 0.0;
  std::string formula_id;
  std::string provenance;
  bool exceeds_budget = false;
};

/// Complexity lower bounds for d = 1..dmax. For the convex class eps0 is
/// required (from find_t0 or the user).
std::vector<BoundRow> bound_rows(FunctionClass cls, double eps, std::size_t dmax,
                                 std::optional<double> eps0, std::size_t budget);

// Commands -----------------------------------------------------------------

int cmd_adversary(const ExperimentConfig& cfg, std::ostream& out);
int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out);
int cmd_gscan(const ExperimentConfig& cfg, std::ostream& out);
int cmd_t0(const ExperimentConfig& cfg, std::ostream& out);
int cmd_quad(const ExperimentConfig& cfg, std::ostream& out);
/// Runs the built-in property suite, one PASS/FAIL line per check.
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

int run_command(const std::string& name, const ExperimentConfig& cfg, std::ostream& out);

nlohmann::json manifest(const std::string& command, const ExperimentConfig& cfg);

}  // namespace dimcurse::harness
