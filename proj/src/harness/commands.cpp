#include <algorithm>
#include <cmath>
#include <ostream>

#include "dimcurse/chernoff.hpp"
#include "dimcurse/convex.hpp"
#include "dimcurse/harness.hpp"
#include "dimcurse/monotone.hpp"
#include "dimcurse/quadrature.hpp"

namespace dimcurse::harness {

namespace {

constexpr double kGateSlack = 1e-12;

const chernoff::T0Result& cached_t0() {
  static const chernoff::T0Result t0 = chernoff::find_t0();
  return t0;
}

double resolve_eps0(const ExperimentConfig& cfg) { return cfg.eps0 ? *cfg.eps0 : cached_t0().eps0; }

int adversary_monotone(const ExperimentConfig& cfg, std::ostream& out) {
  const auto alg = make_algorithm(cfg.algorithm, cfg.d, cfg.budget, cfg.seed);
  const auto run = run_algorithm(*alg, monotone::threshold_oracle(cfg.d), cfg.budget);
  const auto pair = monotone::MonotoneFoolingPair::build(run.transcript.points(), cfg.d);

  // The algorithm must not be able to tell the probe from either extreme function.
  const auto run_plus = run_algorithm(*alg, pair.plus_oracle(), cfg.budget);
  const auto run_minus = run_algorithm(*alg, pair.minus_oracle(), cfg.budget);
  const bool fooled = run_plus.transcript == run.transcript && run_minus.transcript == run.transcript &&
                      run_plus.output == run.output && run_minus.output == run.output;

  const double n = static_cast<double>(run.transcript.size());
  const double certified =
      0.5 * (pair.gap_is_exact() ? pair.exact_gap() : pair.exact_gap() - 3.0 * pair.gap_std_error());
  const double theorem = monotone::error_lower_bound_mon(n, cfg.d);
  const double realized = std::max(std::abs(pair.integral_plus() - run.output),
                                   std::abs(pair.integral_minus() - run.output));

  if (cfg.format == Format::json) {
    out << nlohmann::json{{"class", "monotone"},
                          {"algorithm", alg->name()},
                          {"output", run.output},
                          {"transcript", to_json(run.transcript)},
                          {"pair", pair.to_json()},
                          {"gap_exact", pair.gap_is_exact()},
                          {"certified_error_lower_bound", certified},
                          {"theorem_error_lower_bound", theorem},
                          {"realized_error", realized},
                          {"fooling_verified", fooled}}
               .dump(2)
        << '\n';
  } else {
    CsvWriter csv(out, {"d", "n", "ell", "exact_gap", "guaranteed_gap", "error_lower_bound"});
    csv.cell(cfg.d).cell(pair.n()).cell(pair.ell()).cell(pair.exact_gap()).cell(pair.guaranteed_gap()).cell(certified);
    csv.end_row();
  }

  const bool gate = fooled && certified + kGateSlack >= theorem && realized + kGateSlack >= certified;
  return gate ? kExitOk : kExitGate;
}

int adversary_convex(const ExperimentConfig& cfg, std::ostream& out) {
  const auto alg = make_algorithm(cfg.algorithm, cfg.d, cfg.budget, cfg.seed);
  const auto run = run_algorithm(*alg, convex::zero_oracle(cfg.d), cfg.budget);
  const convex::SampleSet samples(cfg.d, run.transcript.points());

  bool vanishes = true;
  for (const auto& p : samples.points()) vanishes = vanishes && convex::fplus_value(p, samples) <= 1e-9;

  const RandomStream stream = RandomStream(cfg.seed).substream("adversary-integral");
  const auto integral = convex::integral_fplus(samples, cfg.mc_samples, stream, cfg.workers);
  const double bound = 0.5 * integral.integral;
  const double se = 0.5 * integral.std_error;
  const double t0 = cached_t0().t0;
  const double theorem = convex::error_lower_bound_con(static_cast<double>(samples.size()), cfg.d, t0);
  const double realized = std::max(std::abs(integral.integral - run.output), std::abs(run.output));

  if (cfg.format == Format::json) {
    out << nlohmann::json{{"class", "convex"},
                          {"algorithm", alg->name()},
                          {"output", run.output},
                          {"transcript", to_json(run.transcript)},
                          {"integral_fplus", integral.integral},
                          {"std_error", integral.std_error},
                          {"hull_volume", integral.hull_volume},
                          {"error_lower_bound", bound},
                          {"ci_low", bound - 3.0 * se},
                          {"ci_high", bound + 3.0 * se},
                          {"theorem_error_lower_bound", theorem},
                          {"t0", t0},
                          {"realized_error", realized},
                          {"fplus_vanishes_on_samples", vanishes}}
               .dump(2)
        << '\n';
  } else {
    CsvWriter csv(out, {"d", "n", "integral_fplus", "std_error", "error_lower_bound", "ci_low", "ci_high",
                        "theorem_error_lower_bound", "realized_error"});
    csv.cell(cfg.d).cell(samples.size()).cell(integral.integral).cell(integral.std_error).cell(bound);
    csv.cell(bound - 3.0 * se).cell(bound + 3.0 * se).cell(theorem).cell(realized);
    csv.end_row();
  }

  const bool gate = vanishes && bound + 3.0 * se + kGateSlack >= theorem;
  return gate ? kExitOk : kExitGate;
}

}  // namespace

int cmd_adversary(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  switch (cfg.cls) {
    case FunctionClass::monotone: return adversary_monotone(cfg, out);
    case FunctionClass::convex: return adversary_convex(cfg, out);
    case FunctionClass::unrestricted: break;
  }
  throw ConfigError("adversary needs --class monotone or convex");
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::optional<double> eps0;
  if (cfg.cls == FunctionClass::convex) eps0 = resolve_eps0(cfg);
  const auto rows = bound_rows(cfg.cls, cfg.eps, cfg.dmax, eps0, cfg.budget);
  if (cfg.format == Format::json) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"d", r.d},
                     {"eps", r.eps},
                     {"bound", r.value},
                     {"formula_id", r.formula_id},
                     {"provenance", r.provenance},
                     {"exceeds_budget", r.exceeds_budget}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  CsvWriter csv(out, {"d", "eps", "bound", "formula_id", "provenance", "exceeds_budget"});
  for (const auto& r : rows) {
    csv.cell(r.d).cell(r.eps).cell(r.value).cell(r.formula_id).cell(r.provenance).cell(
        std::string(r.exceeds_budget ? "1" : "0"));
    csv.end_row();
  }
  return kExitOk;
}

int cmd_gscan(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<double> grid = cfg.t_grid;
  if (grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  }
  std::vector<chernoff::ChernoffResult> results;
  for (double t : grid) results.push_back(chernoff::g_min(chernoff::s_of_t(t)));

  if (cfg.format == Format::json) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto j = chernoff::to_json(results[i]);
      j["t"] = grid[i];
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  CsvWriter csv(out, {"t", "s", "alpha_star", "g_min", "bound_10_over_11_margin"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.cell(grid[i]).cell(results[i].s).cell(results[i].alpha_star).cell(results[i].g_min).cell(results[i].margin());
    csv.end_row();
  }
  return kExitOk;
}

int cmd_t0(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto& t0 = cached_t0();
  out << chernoff::to_json(t0).dump(2) << '\n';
  return t0.at_t0.certified && t0.t0 > 0.0 && t0.eps0 == t0.t0 / 2.0 ? kExitOk : kExitGate;
}

int cmd_quad(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto builtin = quadrature::builtin_oracle(cfg.oracle, cfg.d);
  const std::string true_value = builtin.has_true_value ? format_number(builtin.true_value) : "";
  const bool all = cfg.method == "all";
  if (!all && cfg.method != "staircase" && cfg.method != "mc" && cfg.method != "rate") {
    throw ConfigError("unknown quadrature method: " + cfg.method);
  }

  CsvWriter csv(out, {"d", "method", "n", "estimate", "certified_error_or_rmse", "true_value_if_known"});
  bool gate = true;

  if (all || cfg.method == "staircase") {
    const auto b = quadrature::staircase_monotone(builtin.oracle, cfg.m);
    csv.cell(cfg.d).cell(std::string("staircase")).cell(b.samples_used).cell(b.estimate()).cell(b.certified_error()).cell(true_value);
    csv.end_row();
    if (builtin.monotone && builtin.has_true_value) {
      gate = gate && b.lower_sum <= builtin.true_value + kGateSlack && builtin.true_value <= b.upper_sum + kGateSlack;
    }
  }
  if (all || cfg.method == "mc") {
    const std::size_t n = cfg.budget > 0 ? cfg.budget : cfg.mc_samples;
    const auto mc = quadrature::monte_carlo(builtin.oracle, n, RandomStream(cfg.seed).substream("quad-mc"),
                                            cfg.workers);
    csv.cell(cfg.d).cell(std::string("mc")).cell(n).cell(mc.estimate).cell(mc.guaranteed_rmse).cell(true_value);
    csv.end_row();
  }
  if (all || cfg.method == "rate") {
    const auto fit = quadrature::staircase_rate(builtin.oracle, {2, 4, 8, 16, 32});
    for (const auto& p : fit.points) {
      csv.cell(cfg.d).cell(std::string("staircase_rate")).cell(p.n).cell(std::string("")).cell(p.certified_error).cell(true_value);
      csv.end_row();
    }
    csv.cell(cfg.d).cell(std::string("rate_slope")).cell(fit.points.size()).cell(fit.slope)
        .cell(-1.0 / static_cast<double>(cfg.d)).cell(std::string(""));
    csv.end_row();
  }
  return gate ? kExitOk : kExitGate;
}

int run_command(const std::string& name, const ExperimentConfig& cfg, std::ostream& out) {
  if (name == "adversary") return cmd_adversary(cfg, out);
  if (name == "bounds") return cmd_bounds(cfg, out);
  if (name == "gscan") return cmd_gscan(cfg, out);
  if (name == "t0") return cmd_t0(cfg, out);
  if (name == "quad") return cmd_quad(cfg, out);
  if (name == "verify") return cmd_verify(cfg, out);
  throw ConfigError("unknown command: " + name);
}

}  // namespace dimcurse::harness
