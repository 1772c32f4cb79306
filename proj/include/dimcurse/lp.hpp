#pragma once

// Small dense linear programs:
//
//   maximize c.x  subject to  A x <= b,  x_j >= 0 where nonneg[j]
//
// solved with a primal tableau simplex under Bland's rule. Right-hand sides
// must be nonnegative so the slack basis is feasible from the start; every
// program built by the convex adversary has this form.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimcurse::lp {

struct LinearProgram {
  std::vector<double> objective;             // c, length n
  std::vector<std::vector<double>> rows;     // A, m rows of length n
  std::vector<double> rhs;                   // b, length m, all >= 0
  std::vector<bool> nonneg;                  // length n; empty means all true

  std::size_t num_vars() const noexcept { return objective.size(); }
  std::size_t num_constraints() const noexcept { return rows.size(); }
  /// Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
  std::string describe() const;
};

enum class LpStatus { optimal, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

class LpFailure : public std::runtime_error {
 public:
  LpFailure(const std::string& what, LinearProgram instance)
      : std::runtime_error(what), instance_(std::move(instance)) {}
  const LinearProgram& instance() const noexcept { return instance_; }

 private:
  LinearProgram instance_;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  std::size_t max_pivots = 10'000;
};

/// Returns the optimum; status `unbounded` / `iteration_limit` are reported in
/// the solution rather than thrown. Throws LpFailure when a right-hand side is
/// negative (no phase one is implemented).
LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace dimcurse::lp
