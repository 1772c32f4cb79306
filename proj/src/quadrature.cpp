#include "dimcurse/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dimcurse/monotone.hpp"

namespace dimcurse::quadrature {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > (std::size_t{1} << 40) / base) throw DomainError("grid too large");
    out *= base;
  }
  return out;
}

// Advances a mixed-radix counter (first digit fastest); false on wraparound.
bool next_index(std::vector<std::size_t>& idx, std::size_t radix) {
  for (auto& digit : idx) {
    if (++digit < radix) return true;
    digit = 0;
  }
  return false;
}

}  // namespace

BracketEstimate staircase_monotone(const EvalOracle& oracle, std::size_t m, std::uint64_t check_seed) {
  if (m == 0) throw DomainError("staircase needs m >= 1");
  const std::size_t d = oracle.dim;
  const std::size_t nodes = checked_power(m + 1, d);
  const double h = 1.0 / static_cast<double>(m);

  // Grid values, first coordinate fastest.
  std::vector<double> values(nodes);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> coords(d);
  std::size_t flat = 0;
  do {
    for (std::size_t k = 0; k < d; ++k) coords[k] = idx[k] == m ? 1.0 : static_cast<double>(idx[k]) * h;
    values[flat++] = oracle(Point(coords));
  } while (next_index(idx, m + 1));

  double lower = 0.0, upper = 0.0;
  std::fill(idx.begin(), idx.end(), 0);
  flat = 0;
  do {
    bool is_lower = true, is_upper = true;
    for (auto digit : idx) {
      is_lower = is_lower && digit < m;
      is_upper = is_upper && digit > 0;
    }
    if (is_lower) lower += values[flat];
    if (is_upper) upper += values[flat];
    ++flat;
  } while (next_index(idx, m + 1));

  const double cells = static_cast<double>(checked_power(m, d));
  BracketEstimate out;
  out.lower_sum = lower / cells;
  out.upper_sum = upper / cells;
  out.samples_used = nodes;

  RandomStream rs(check_seed);
  for (int pair = 0; pair < 100; ++pair) {
    std::vector<double> x(d), y(d);
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = rs.uniform();
      y[k] = x[k] + rs.uniform() * (1.0 - x[k]);
    }
    if (oracle(Point(x)) > oracle(Point(y)) + 1e-12) {
      out.certified = false;
      break;
    }
  }
  if (out.lower_sum > out.upper_sum) out.certified = false;
  return out;
}

double staircase_error_cap(std::size_t m, std::size_t d) {
  return static_cast<double>(d) / (2.0 * static_cast<double>(m));
}

MonteCarloResult monte_carlo(const EvalOracle& oracle, std::size_t n, const RandomStream& stream,
                             unsigned workers) {
  if (n == 0) throw DomainError("Monte Carlo needs n >= 1");
  const std::size_t d = oracle.dim;
  const auto est = block_monte_carlo(
      n, stream, [&](RandomStream& rs) { return oracle(rs.uniform_point(d)); }, workers);
  return {est.value, 1.0 / std::sqrt(static_cast<double>(n)), est.std_error, n};
}

PiecewiseConstantApprox::PiecewiseConstantApprox(std::size_t dim, std::size_t m, std::vector<double> values)
    : dim_(dim), m_(m), values_(std::move(values)) {
  if (dim_ == 0 || m_ == 0) throw DomainError("approximation needs dim >= 1 and m >= 1");
  if (values_.size() != checked_power(m_, dim_)) throw DomainError("cell value count must be m^d");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("cell values must lie in [0,1]");
  }
}

double PiecewiseConstantApprox::operator()(const Point& x) const {
  std::size_t flat = 0, stride = 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    auto cell = static_cast<std::size_t>(x[k] * static_cast<double>(m_));
    cell = std::min(cell, m_ - 1);
    flat += cell * stride;
    stride *= m_;
  }
  return values_[flat];
}

PiecewiseConstantApprox pc_approximate(const EvalOracle& oracle, std::size_t m) {
  if (m == 0) throw DomainError("pc_approximate needs m >= 1");
  const std::size_t d = oracle.dim;
  std::vector<double> values(checked_power(m, d));
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> coords(d);
  std::size_t flat = 0;
  do {
    for (std::size_t k = 0; k < d; ++k) coords[k] = static_cast<double>(idx[k]) / static_cast<double>(m);
    values[flat++] = oracle(Point(coords));
  } while (next_index(idx, m));
  return PiecewiseConstantApprox(d, m, std::move(values));
}

double app_to_int(const PiecewiseConstantApprox& approx) {
  double sum = 0.0;
  for (double v : approx.values()) sum += v;
  return sum / static_cast<double>(approx.values().size());
}

double lp_error(const EvalOracle& oracle, const PiecewiseConstantApprox& approx, double p,
                std::size_t refine) {
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  if (refine == 0) throw DomainError("refine must be >= 1");
  // 5-point Gauss-Legendre on [0,1].
  static constexpr std::array<double, 5> kNodes{0.04691007703066800, 0.23076534494715845, 0.5,
                                                0.76923465505284155, 0.95308992296933200};
  static constexpr std::array<double, 5> kWeights{0.11846344252809454, 0.23931433524968324,
                                                  0.28444444444444444, 0.23931433524968324,
                                                  0.11846344252809454};
  const std::size_t d = approx.dim();
  const std::size_t per_axis = approx.resolution() * refine;
  const double h = 1.0 / static_cast<double>(per_axis);
  checked_power(per_axis, d);

  std::vector<std::size_t> cell(d, 0);
  std::vector<std::size_t> node(d, 0);
  std::vector<double> coords(d);
  double total = 0.0;
  do {
    std::fill(node.begin(), node.end(), 0);
    do {
      double w = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        coords[k] = (static_cast<double>(cell[k]) + kNodes[node[k]]) * h;
        w *= kWeights[node[k]] * h;
      }
      const Point x(coords);
      const double diff = std::abs(oracle(x) - approx(x));
      total += w * std::pow(diff, p);
    } while (next_index(node, kNodes.size()));
  } while (next_index(cell, per_axis));
  return std::pow(total, 1.0 / p);
}

BuiltinOracle builtin_oracle(const std::string& id, std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be >= 1");
  const double dd = static_cast<double>(dim);
  BuiltinOracle b;
  b.id = id;
  if (id == "threshold") {
    b.oracle = monotone::threshold_oracle(dim);
    b.has_true_value = true;
    b.true_value = 0.5;
    b.monotone = true;
  } else if (id == "product") {
    b.oracle = {dim, [](const Point& x) {
                  double v = 1.0;
                  for (double c : x.coords()) v *= c;
                  return v;
                },
                FunctionClass::monotone};
    b.has_true_value = true;
    b.true_value = std::ldexp(1.0, -static_cast<int>(dim));
    b.monotone = true;
  } else if (id == "linear") {
    b.oracle = {dim, [dd](const Point& x) { return std::min(1.0, x.sum() / dd); }, FunctionClass::convex};
    b.has_true_value = true;
    b.true_value = 0.5;
    b.monotone = true;
    b.convex = true;
  } else if (id == "quadratic") {
    b.oracle = {dim, [dd](const Point& x) {
                  double v = 0.0;
                  for (double c : x.coords()) v += (c - 0.5) * (c - 0.5);
                  return std::min(1.0, 4.0 * v / dd);
                },
                FunctionClass::convex};
    b.has_true_value = true;
    b.true_value = 1.0 / 3.0;
    b.convex = true;
  } else if (id == "identity") {
    b.oracle = {dim, [](const Point& x) { return x[0]; }, FunctionClass::monotone};
    b.has_true_value = true;
    b.true_value = 0.5;
    b.monotone = true;
    b.convex = true;
  } else {
    throw std::invalid_argument("unknown oracle: " + id);
  }
  return b;
}

std::vector<std::string> builtin_oracle_ids() {
  return {"threshold", "product", "linear", "quadratic", "identity"};
}

RateFit staircase_rate(const EvalOracle& oracle, const std::vector<std::size_t>& resolutions) {
  if (resolutions.size() < 2) throw DomainError("rate fit needs at least two resolutions");
  RateFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto m : resolutions) {
    const auto b = staircase_monotone(oracle, m);
    fit.points.push_back({m, b.samples_used, b.certified_error()});
    if (!(b.certified_error() > 0.0)) throw DomainError("rate fit needs a positive certified error");
    const double lx = std::log(static_cast<double>(b.samples_used));
    const double ly = std::log(b.certified_error());
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(resolutions.size());
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return fit;
}

}  // namespace dimcurse::quadrature
