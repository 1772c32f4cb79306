#include <charconv>
#include <cmath>
#include <ostream>

#include "dimcurse/convex.hpp"
#include "dimcurse/harness.hpp"
#include "dimcurse/monotone.hpp"
#include "dimcurse/simd.hpp"

namespace dimcurse::harness {

void ExperimentConfig::validate() const {
  if (d == 0) throw ConfigError("--d must be >= 1");
  if (dmax == 0) throw ConfigError("--dmax must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("--eps must lie in (0, 1/2)");
  if (eps0 && !(*eps0 > 0.0 && *eps0 < 0.5)) throw ConfigError("--eps0 must lie in (0, 1/2)");
  if (mc_samples == 0) throw ConfigError("--mc-samples must be >= 1");
  if (m == 0) throw ConfigError("--m must be >= 1");
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t values must lie in [0,1]");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"class", std::string(dimcurse::to_string(cls))},
                   {"d", d},
                   {"dmax", dmax},
                   {"budget", budget},
                   {"eps", eps},
                   {"seed", seed},
                   {"mc_samples", mc_samples},
                   {"out", out},
                   {"format", format == Format::csv ? "csv" : "json"},
                   {"algorithm", algorithm},
                   {"oracle", oracle},
                   {"method", method},
                   {"m", m},
                   {"t_grid", t_grid},
                   {"workers", workers}};
  j["eps0"] = eps0 ? nlohmann::json(*eps0) : nlohmann::json(nullptr);
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  os_ << (in_row_++ ? "," : "") << s;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }

CsvWriter& CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw std::logic_error("CSV row has wrong number of cells");
  os_ << '\n';
  in_row_ = 0;
}

std::vector<BoundRow> bound_rows(FunctionClass cls, double eps, std::size_t dmax,
                                 std::optional<double> eps0, std::size_t budget) {
  std::vector<BoundRow> rows;
  for (std::size_t d = 1; d <= dmax; ++d) {
    BoundRow r;
    r.d = d;
    r.eps = eps;
    if (cls == FunctionClass::convex) {
      if (!eps0) throw ConfigError("convex bounds need eps0");
      r.value = convex::complexity_lower_con(eps, d, *eps0);
      r.formula_id = "con_complexity:ceil((11/10)^d*(1-eps/eps0)/(d+1))";
      r.provenance = "closed-form;eps0=" + format_number(*eps0);
    } else {
      r.value = monotone::complexity_lower_mon(eps, d);
      r.formula_id = "mon_complexity:ceil(2^d*(1-2*eps))";
      r.provenance = "closed-form";
    }
    r.exceeds_budget = budget > 0 && r.value > static_cast<double>(budget);
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json manifest(const std::string& command, const ExperimentConfig& cfg) {
  return {{"tool", "dimcurse"},
          {"version", kVersion},
          {"command", command},
          {"config", cfg.to_json()},
          {"seed", cfg.seed},
          {"isa", std::string(simd::to_string(simd::active()))},
          {"compiler", __VERSION__},
          {"cxx_standard", __cplusplus}};
}

}  // namespace dimcurse::harness
