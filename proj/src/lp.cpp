#include "dimcurse/lp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dimcurse::lp {

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (rows.size() != rhs.size()) throw std::invalid_argument("LP: rows and rhs differ in length");
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("LP: constraint row has wrong length");
  }
  if (!nonneg.empty() && nonneg.size() != n) {
    throw std::invalid_argument("LP: nonneg flags have wrong length");
  }
}

std::string LinearProgram::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "maximize";
  for (double c : objective) os << ' ' << c;
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double a : rows[i]) os << a << ' ';
    os << "<= " << rhs[i] << '\n';
  }
  return os.str();
}

namespace {

// Dense tableau, row-major, (m + 1) x (cols + 1); last row is the objective,
// last column the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), data_((m + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(m_, c); }

  void pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / at(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) at(row, c) *= inv;
    at(row, col) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const double factor = at(r, col);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(row, c);
      at(r, col) = 0.0;
    }
  }

 private:
  std::size_t m_;
  std::size_t cols_;
  std::vector<double> data_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_constraints();
  for (double b : lp.rhs) {
    if (b < 0.0) throw LpFailure("LP: negative right-hand side requires phase one", lp);
  }

  // Free variables are split as x = x_pos - x_neg.
  std::vector<std::size_t> column_of(n);
  std::vector<bool> is_split(n, false);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    column_of[j] = structural++;
    if (!lp.nonneg.empty() && !lp.nonneg[j]) {
      is_split[j] = true;
      ++structural;
    }
  }
  const std::size_t cols = structural + m;

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, column_of[j]) = lp.rows[i][j];
      if (is_split[j]) t.at(i, column_of[j] + 1) = -lp.rows[i][j];
    }
    t.at(i, structural + i) = 1.0;
    t.rhs(i) = lp.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    t.cost(column_of[j]) = -lp.objective[j];
    if (is_split[j]) t.cost(column_of[j] + 1) = lp.objective[j];
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = structural + i;

  LpSolution sol;
  const double tol = opts.tolerance;
  for (;;) {
    // Bland: lowest-index improving column, then lowest-index basic variable
    // among tied ratios.
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (t.cost(c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = t.at(r, enter);
      if (a <= tol) continue;
      const double ratio = t.rhs(r) / a;
      if (leave == m || ratio < best - tol) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + tol && basis[r] < basis[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave == m) {
      sol.status = LpStatus::unbounded;
      return sol;
    }
    if (sol.pivots == opts.max_pivots) {
      sol.status = LpStatus::iteration_limit;
      return sol;
    }
    t.pivot(leave, enter);
    basis[leave] = enter;
    ++sol.pivots;
    // Clean tiny negative right-hand sides left by roundoff.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.rhs(r) < 0.0 && t.rhs(r) > -tol) t.rhs(r) = 0.0;
    }
  }

  std::vector<double> values(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) values[basis[r]] = t.rhs(r);
  sol.x.assign(n, 0.0);
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double v = values[column_of[j]];
    if (is_split[j]) v -= values[column_of[j] + 1];
    sol.x[j] = v;
    obj += lp.objective[j] * v;
  }
  sol.objective = obj;
  sol.status = LpStatus::optimal;
  return sol;
}

}  // namespace dimcurse::lp
