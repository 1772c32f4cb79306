#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "dimcurse/chernoff.hpp"
#include "dimcurse/convex.hpp"
#include "dimcurse/harness.hpp"
#include "dimcurse/monotone.hpp"
#include "dimcurse/quadrature.hpp"
#include "dimcurse/simd.hpp"

namespace dimcurse::harness {

namespace {

struct Check {
  std::string name;
  std::function<bool(RandomStream&, std::ostringstream&)> run;
};

std::vector<Point> random_points(RandomStream& rs, std::size_t n, std::size_t d) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(rs.uniform_point(d));
  return pts;
}

std::vector<Check> property_suite() {
  std::vector<Check> checks;

  checks.push_back({"initial error is 1/2 for both classes", [](RandomStream&, std::ostringstream&) {
                      return initial_error(FunctionClass::monotone) == 0.5 &&
                             initial_error(FunctionClass::convex) == 0.5;
                    }});

  checks.push_back({"monotone pair: monotone, fooling, gap >= 1 - n 2^-d", [](RandomStream& rs, std::ostringstream& why) {
                      for (int inst = 0; inst < 50; ++inst) {
                        const std::size_t d = 1 + rs() % 6;
                        const std::size_t n = rs() % 9;
                        const auto pts = random_points(rs, n, d);
                        const auto pair = monotone::MonotoneFoolingPair::build(pts, d);
                        for (const auto& t : pts) {
                          const double v = monotone::threshold_value(t);
                          if (pair.f_plus(t) != v || pair.f_minus(t) != v) {
                            why << "fooling agreement fails at instance " << inst;
                            return false;
                          }
                        }
                        if (pair.exact_gap() + 1e-12 < pair.guaranteed_gap()) {
                          why << "gap " << pair.exact_gap() << " below " << pair.guaranteed_gap();
                          return false;
                        }
                        for (int k = 0; k < 200; ++k) {
                          const Point x = rs.uniform_point(d);
                          std::vector<double> y(d);
                          for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + rs.uniform() * (1.0 - x[i]);
                          const Point yy(y);
                          if (pair.f_plus(x) > pair.f_plus(yy) || pair.f_minus(x) > pair.f_minus(yy) ||
                              pair.f_minus(x) > pair.f_plus(x)) {
                            why << "monotonicity/order violated at instance " << inst;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"union volume: inclusion-exclusion vs Monte Carlo within 3 se", [](RandomStream& rs, std::ostringstream& why) {
                      for (int inst = 0; inst < 10; ++inst) {
                        const std::size_t d = 2 + rs() % 3;
                        const auto corners = random_points(rs, 1 + rs() % 5, d);
                        for (auto mode : {simd::BoxMode::lower, simd::BoxMode::upper}) {
                          const auto exact = monotone::union_box_volume(corners, mode);
                          // Force the sampled path by duplicating corners past the cap.
                          std::vector<Point> padded = corners;
                          while (padded.size() <= monotone::kExactCornerCap) padded.push_back(corners.front());
                          const auto mc = monotone::union_box_volume(padded, mode, 200'000, rs.substream(inst));
                          if (std::abs(mc.value - exact.value) > 3.0 * mc.std_error + 1e-12) {
                            why << "instance " << inst << ": exact " << exact.value << " mc " << mc.value;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"product max over {sum y <= d/2} equals 2^-d", [](RandomStream&, std::ostringstream& why) {
                      for (std::size_t d = 1; d <= 8; ++d) {
                        const auto r = monotone::simplex_product_max(d);
                        if (std::abs(r.value - std::ldexp(1.0, -static_cast<int>(d))) > 1e-9) {
                          why << "d=" << d << " value " << r.value;
                          return false;
                        }
                      }
                      return true;
                    }});

  checks.push_back({"f_plus: vanishing, range, midpoint convexity", [](RandomStream& rs, std::ostringstream& why) {
                      for (int inst = 0; inst < 10; ++inst) {
                        const std::size_t d = 1 + rs() % 6;
                        const convex::SampleSet set(d, random_points(rs, 1 + rs() % 10, d));
                        for (const auto& p : set.points()) {
                          if (convex::fplus_value(p, set) > 1e-9) {
                            why << "nonzero at a sample";
                            return false;
                          }
                        }
                        for (int k = 0; k < 100; ++k) {
                          const Point x = rs.uniform_point(d), y = rs.uniform_point(d);
                          std::vector<double> mid(d);
                          for (std::size_t i = 0; i < d; ++i) mid[i] = 0.5 * (x[i] + y[i]);
                          const double fx = convex::fplus_value(x, set), fy = convex::fplus_value(y, set);
                          const double fm = convex::fplus_value(Point(mid), set);
                          if (fm > 0.5 * (fx + fy) + 1e-7 || fx < 0.0 || fx > 1.0) {
                            why << "convexity violated";
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"vertexization never raises f_plus", [](RandomStream& rs, std::ostringstream& why) {
                      for (int inst = 0; inst < 10; ++inst) {
                        const std::size_t d = 2 + rs() % 4;
                        const convex::SampleSet set(d, random_points(rs, 1 + rs() % 4, d));
                        const auto verts = convex::vertexize(set);
                        if (verts.size() > (d + 1) * set.size()) return false;
                        for (int k = 0; k < 50; ++k) {
                          const Point x = rs.uniform_point(d);
                          if (convex::fplus_value(x, verts) > convex::fplus_value(x, set) + 1e-9) {
                            why << "instance " << inst;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"Elekes balls cover sampled hull points", [](RandomStream& rs, std::ostringstream& why) {
                      for (int inst = 0; inst < 10; ++inst) {
                        const std::size_t d = 1 + rs() % 5;
                        const auto verts = convex::vertexize(convex::SampleSet(d, random_points(rs, 1 + rs() % 3, d)));
                        const auto r = convex::elekes_cover_check(convex::as_vertices(verts), 2000, rs.substream(inst));
                        if (!r.passed) {
                          why << "violation at instance " << inst;
                          return false;
                        }
                      }
                      return true;
                    }});

  checks.push_back({"g(s, alpha): quadrature matches closed form", [](RandomStream&, std::ostringstream& why) {
                      for (double s : {0.25, 0.3, 1.0 / 3.0, 0.45}) {
                        for (double a = 0.0; a <= 40.0; a += 0.5) {
                          const double q = chernoff::g_value(s, a), c = chernoff::g_value_closed_form(s, a);
                          if (std::abs(q - c) > 1e-8 * std::max(1.0, c)) {
                            why << "s=" << s << " alpha=" << a;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"t0 > 0, eps0 = t0/2, certified at t0", [](RandomStream&, std::ostringstream& why) {
                      const auto t0 = chernoff::find_t0();
                      why << "t0=" << t0.t0 << " g_min=" << t0.at_t0.g_min;
                      return t0.t0 > 0.0 && t0.eps0 == t0.t0 / 2.0 && t0.at_t0.certified &&
                             chernoff::g_min(0.25).certified;
                    }});

  checks.push_back({"cap volume below Chernoff bound", [](RandomStream& rs, std::ostringstream& why) {
                      for (std::size_t d : {5u, 10u}) {
                        const auto est = chernoff::cap_volume_mc(0.0, d, 50'000, rs.substream(d));
                        const double bound = std::pow(chernoff::g_min(0.25).g_min, static_cast<double>(d));
                        if (est.value > bound + 3.0 * est.std_error) {
                          why << "d=" << d;
                          return false;
                        }
                      }
                      return true;
                    }});

  checks.push_back({"SIMD kernels match the scalar reference", [](RandomStream& rs, std::ostringstream& why) {
                      const auto best = simd::best_available();
                      const auto& ref = simd::kernels(simd::Isa::scalar);
                      const auto& fast = simd::kernels(best);
                      for (int inst = 0; inst < 20; ++inst) {
                        const std::size_t d = 1 + rs() % 8, count = 1 + rs() % 300;
                        std::vector<double> soa(d * count), center(d), corners(3 * d);
                        for (auto& v : soa) v = rs.uniform();
                        for (auto& v : center) v = rs.uniform();
                        for (auto& v : corners) v = rs.uniform();
                        const double r2 = rs.uniform() * static_cast<double>(d) * 0.3;
                        if (ref.count_in_ball(soa, count, d, center, r2) != fast.count_in_ball(soa, count, d, center, r2)) {
                          why << "ball kernel mismatch";
                          return false;
                        }
                        for (auto mode : {simd::BoxMode::lower, simd::BoxMode::upper}) {
                          if (ref.count_in_box_union(soa, count, d, corners, mode) !=
                              fast.count_in_box_union(soa, count, d, corners, mode)) {
                            why << "box kernel mismatch";
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"staircase brackets monotone integrals", [](RandomStream&, std::ostringstream& why) {
                      for (std::size_t d = 1; d <= 3; ++d) {
                        for (const auto& id : {"threshold", "product", "linear"}) {
                          const auto b = quadrature::builtin_oracle(id, d);
                          const auto br = quadrature::staircase_monotone(b.oracle, 5);
                          if (!(br.lower_sum <= b.true_value && b.true_value <= br.upper_sum) ||
                              br.certified_error() > quadrature::staircase_error_cap(5, d) + 1e-15) {
                            why << id << " d=" << d;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"Monte Carlo RMSE within n^-1/2", [](RandomStream& rs, std::ostringstream& why) {
                      const auto oracle = monotone::threshold_oracle(5);
                      double sq = 0.0;
                      for (int trial = 0; trial < 200; ++trial) {
                        const auto r = quadrature::monte_carlo(oracle, 100, rs.substream(trial), 1);
                        sq += (r.estimate - 0.5) * (r.estimate - 0.5);
                      }
                      const double rmse = std::sqrt(sq / 200.0);
                      why << "rmse=" << rmse;
                      return rmse <= 0.1;
                    }});

  checks.push_back({"approximation error bounds integration error", [](RandomStream&, std::ostringstream& why) {
                      for (const auto& id : quadrature::builtin_oracle_ids()) {
                        for (std::size_t m : {1u, 2u, 4u, 7u}) {
                          const auto b = quadrature::builtin_oracle(id, 1);
                          const auto approx = quadrature::pc_approximate(b.oracle, m);
                          const double int_err = std::abs(b.true_value - quadrature::app_to_int(approx));
                          const double l1 = quadrature::lp_error(b.oracle, approx, 1.0);
                          const double l2 = quadrature::lp_error(b.oracle, approx, 2.0);
                          if (int_err > l1 + 1e-12 || l1 > l2 + 1e-12) {
                            why << id << " m=" << m;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  checks.push_back({"adversary certificate never below the closed-form bound", [](RandomStream& rs, std::ostringstream& why) {
                      for (const auto& id : algorithm_ids()) {
                        for (std::size_t d = 1; d <= 6; ++d) {
                          const std::size_t n = rs() % (std::size_t{1} << d);
                          const auto alg = make_algorithm(id, d, n, rs());
                          const auto run = run_algorithm(*alg, monotone::threshold_oracle(d), n);
                          const auto pair = monotone::MonotoneFoolingPair::build(run.transcript.points(), d);
                          const double bound = monotone::error_lower_bound_mon(static_cast<double>(run.transcript.size()), d);
                          if (monotone::certified_error(pair) + 1e-12 < bound) {
                            why << id << " d=" << d << " n=" << n;
                            return false;
                          }
                        }
                      }
                      return true;
                    }});

  return checks;
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  RandomStream root(cfg.seed);
  bool all_ok = true;
  std::size_t index = 0;
  for (const auto& check : property_suite()) {
    RandomStream rs = root.substream(check.name);
    std::ostringstream why;
    bool ok = false;
    try {
      ok = check.run(rs, why);
    } catch (const std::exception& e) {
      why << "exception: " << e.what();
    }
    all_ok = all_ok && ok;
    out << (ok ? "PASS " : "FAIL ") << ++index << ' ' << check.name;
    if (!why.str().empty()) out << " (" << why.str() << ')';
    out << '\n';
  }
  return all_ok ? kExitOk : kExitGate;
}

}  // namespace dimcurse::harness
