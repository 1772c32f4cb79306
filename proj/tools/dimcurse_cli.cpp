// dimcurse: adversaries, bound calculators and baseline quadrature for
// monotone and convex integration on the unit cube.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dimcurse/harness.hpp"
#include "dimcurse/simd.hpp"

namespace fs = std::filesystem;
using namespace dimcurse;

int main(int argc, char** argv) {
  CLI::App app{"dimcurse: worst-case lower bounds for monotone and convex integration"};
  app.require_subcommand(1);

  harness::ExperimentConfig cfg;
  std::string cls = "monotone";
  std::string format = "csv";
  std::string isa = "auto";

  app.add_option("--class", cls, "function class: monotone|convex")->check(CLI::IsMember({"monotone", "convex", "mon", "con"}));
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--dmax", cfg.dmax, "largest dimension for bounds");
  app.add_option("--eps", cfg.eps, "accuracy in (0, 1/2)");
  app.add_option("--eps0", cfg.eps0, "override the computed eps0 for convex bounds");
  app.add_option("--budget", cfg.budget, "number of function values");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples");
  app.add_option("--out", cfg.out, "output file (default: stdout, or $DIMCURSE_OUT_DIR/<command>.<format>)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--algorithm", cfg.algorithm, "algorithm id")->check(CLI::IsMember(harness::algorithm_ids()));
  app.add_option("--oracle", cfg.oracle, "built-in integrand for quad");
  app.add_option("--method", cfg.method, "quad method: staircase|mc|rate|all");
  app.add_option("--m", cfg.m, "grid resolution per axis");
  app.add_option("--t", cfg.t_grid, "slice heights for gscan");
  app.add_option("--workers", cfg.workers, "Monte Carlo worker threads (0 = hardware)");
  app.add_option("--isa", isa, "kernel ISA: auto|scalar|avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string command;
  for (const char* name : {"adversary", "bounds", "gscan", "t0", "quad", "verify"}) {
    app.add_subcommand(name)->fallthrough()->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : harness::kExitConfig;
  }

  try {
    cfg.cls = function_class_from_string(cls);
    cfg.format = format == "json" ? harness::Format::json : harness::Format::csv;
    if (isa == "scalar") simd::set_active(simd::Isa::scalar);
    if (isa == "avx2") simd::set_active(simd::Isa::avx2);

    if (const char* dir = std::getenv("DIMCURSE_OUT_DIR"); dir && *dir) {
      if (cfg.out.empty()) {
        cfg.out = (fs::path(dir) / (command + (command == "t0" ? ".json" : "." + format))).string();
      } else if (fs::path(cfg.out).is_relative()) {
        cfg.out = (fs::path(dir) / cfg.out).string();
      }
    }

    std::ostringstream report;
    const int rc = harness::run_command(command, cfg, report);
    const auto manifest = harness::manifest(command, cfg);
    if (cfg.out.empty()) {
      std::cout << report.str();
      std::cerr << manifest.dump() << '\n';
    } else {
      if (auto parent = fs::path(cfg.out).parent_path(); !parent.empty()) fs::create_directories(parent);
      std::ofstream(cfg.out, std::ios::binary) << report.str();
      std::ofstream(cfg.out + ".manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
    }
    if (rc == harness::kExitGate) std::cerr << "dimcurse: internal consistency gate failed\n";
    return rc;
  } catch (const harness::ConfigError& e) {
    std::cerr << "dimcurse: " << e.what() << '\n';
    return harness::kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "dimcurse: " << e.what() << '\n';
    return harness::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dimcurse: " << e.what() << '\n';
    return harness::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "dimcurse: error: " << e.what() << '\n';
    return 1;
  }
}
