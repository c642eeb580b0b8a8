#include "weingarten/cli.hpp"

#include "weingarten/errors.hpp"
#include "weingarten/monitors.hpp"
#include "weingarten/scenario.hpp"
#include "weingarten/symfunc.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace weingarten {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_atomically(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string series_csv(const std::vector<MonitorRecord>& trajectory) {
  std::ostringstream out;
  out << "t,dt,u_min,u_max,kappa_min,kappa_max,cone_margin,vtilde_min,residual_min,residual_max,"
         "w_max\n";
  for (const auto& r : trajectory) {
    out << fmt(r.t) << ',' << fmt(r.dt) << ',' << fmt(r.u_min) << ',' << fmt(r.u_max) << ','
        << fmt(r.kappa_min) << ',' << fmt(r.kappa_max) << ',' << fmt(r.cone_margin) << ','
        << fmt(r.vtilde_min) << ',' << fmt(r.residual_min) << ',' << fmt(r.residual_max) << ','
        << fmt(r.w_max) << '\n';
  }
  return out.str();
}

std::string profile_csv(const FlowState& state) {
  const int n = state.graph.dimension();
  std::ostringstream out;
  out << "node,coordinate,u";
  for (int i = 1; i <= n; ++i) out << ",kappa_" << i;
  out << ",vtilde\n";
  const auto& u = state.graph.values();
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto& node = state.report.nodes[j];
    out << j << ',' << fmt(state.graph.coordinate(j)) << ',' << fmt(u[j]);
    for (std::size_t i = 0; i < node.kappa.size(); ++i) out << ',' << fmt(node.kappa[i]);
    out << ',' << fmt(node.vtilde) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json summary_json(const FlowRun& run, const BoundsReport& bounds, int code) {
  nlohmann::ordered_json j;
  const auto& s = run.summary;
  j["converged"] = s.converged;
  j["reason"] = stop_reason_name(s.reason);
  j["t_final"] = s.t_final;
  j["steps"] = s.steps;
  if (s.r_final) j["r_final"] = *s.r_final;
  j["residual_min"] = s.residual_min;
  j["residual_max"] = s.residual_max;
  j["velocity_max"] = s.velocity_max;
  j["theta"] = s.theta;
  if (!s.message.empty()) j["message"] = s.message;

  auto& b = j["bounds"];
  b["preserved_F_ge_f"] = bounds.preserved_F_ge_f;
  b["vtilde_floor"] = bounds.vtilde_floor;
  b["kappa_bounded"] = bounds.kappa_bounded;
  b["cone_compact"] = bounds.cone_compact;
  b["w_bounded"] = bounds.w_bounded;
  b["barriers_held"] = bounds.barriers_held;
  b["barriers_configured"] = bounds.barriers_configured;
  b["worst_residual"] = bounds.worst_residual;
  b["vtilde_inf"] = bounds.vtilde_inf;
  b["kappa_sup"] = bounds.kappa_sup;
  b["kappa_early"] = bounds.kappa_early;
  b["delta"] = bounds.delta;
  b["w_sup"] = bounds.w_sup;
  b["barrier_margin"] = bounds.barrier_margin;
  b["all"] = bounds.all();
  j["exit_code"] = code;
  return j;
}

int run_one(const fs::path& config_path, const fs::path& out_dir, std::ostream& log) {
  Scenario scenario = [&] {
    try {
      return build_scenario(load_scenario(config_path));
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
  }();
  const FlowRun result = run(scenario.space, scenario.flow, scenario.initial);
  const BoundsReport bounds = verify_bounds(result.trajectory, scenario.flow);
  const int code =
      result.summary.converged && bounds.all() ? exit_code::ok : exit_code::failed;

  fs::create_directories(out_dir);
  write_atomically(out_dir / "series.csv", series_csv(result.trajectory));
  write_atomically(out_dir / "final_profile.csv", profile_csv(result.final));
  write_atomically(out_dir / "summary.json", summary_json(result, bounds, code).dump(2) + "\n");

  log << config_path.string() << ": " << stop_reason_name(result.summary.reason) << " after "
      << result.summary.steps << " steps, t = " << fmt(result.summary.t_final);
  if (result.summary.r_final) log << ", r_final = " << fmt(*result.summary.r_final);
  log << '\n';
  if (!result.summary.message.empty()) log << "  " << result.summary.message << '\n';
  if (!bounds.all()) {
    log << "  bounds violated:";
    if (!bounds.preserved_F_ge_f) log << " preserved_F_ge_f";
    if (!bounds.vtilde_floor) log << " vtilde_floor";
    if (!bounds.kappa_bounded) log << " kappa_bounded";
    if (!bounds.cone_compact) log << " cone_compact";
    if (!bounds.w_bounded) log << " w_bounded";
    if (!bounds.barriers_held) log << " barriers_held";
    log << '\n';
  }
  return code;
}

int run_guarded(const fs::path& config_path, const fs::path& out_dir, std::ostream& log) {
  try {
    return run_one(config_path, out_dir, log);
  } catch (const ValidationError& e) {
    log << "error: " << config_path.string() << ": " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const std::exception& e) {
    log << "error: " << config_path.string() << ": " << e.what() << '\n';
    return exit_code::failed;
  }
}

}  // namespace

int run_command(const fs::path& config, const fs::path& out_dir, std::ostream& log) {
  return run_guarded(config, out_dir, log);
}

int run_command(const std::vector<fs::path>& configs, const fs::path& out_dir, std::size_t jobs,
                std::ostream& log) {
  if (configs.empty()) {
    log << "error: no scenario given\n";
    return exit_code::invalid;
  }
  if (configs.size() == 1) return run_guarded(configs.front(), out_dir, log);

  std::vector<std::ostringstream> logs(configs.size());
  std::vector<int> codes(configs.size(), exit_code::ok);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++)
      codes[i] = run_guarded(configs[i], out_dir / configs[i].stem(), logs[i]);
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, configs.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& text : logs) log << text.str();
  return *std::max_element(codes.begin(), codes.end());
}

int check_command(const std::string& function, int n, int k, std::size_t samples,
                  std::uint64_t seed, bool allow_nonvanishing, std::ostream& log) {
  CurvatureFunctionSpec F = CurvatureFunctionSpec::sigma1(1);
  try {
    F = CurvatureFunctionSpec::from_name(function, n, k);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::invalid;
  }

  const auto report = assumption_suite(F, samples, seed);
  const auto sweep = lemma_sweep(F, samples, seed);

  log << F.name() << " samples=" << samples << " seed=" << seed << '\n';
  log << "  check   status worst margin             failed      property\n";
  bool ok = true;
  for (const auto& check : report.checks) {
    std::string status;
    if (!check.applicable) {
      status = "n/a";
    } else if (check.passed) {
      status = "pass";
    } else if (check.id == "g" && !F.boundary_vanishing() && allow_nonvanishing) {
      status = "exempt";
    } else {
      status = "FAIL";
      ok = false;
    }
    log << "  (" << check.id << ")     " << std::left << std::setw(7) << status << std::setw(25)
        << fmt(check.worst_margin) << ' ' << std::setw(12)
        << (std::to_string(check.failures) + "/" + std::to_string(check.evaluated)) << check.name
        << '\n';
  }
  const std::string lemma_status =
      sweep.evaluated == 0 ? "n/a" : (sweep.passed() ? "pass" : "FAIL");
  if (sweep.evaluated > 0 && !sweep.passed()) ok = false;
  log << "  (lemma) " << std::left << std::setw(7) << lemma_status << std::setw(25)
      << fmt(sweep.worst_margin) << ' ' << std::setw(12)
      << (std::to_string(sweep.violations) + "/" + std::to_string(sweep.evaluated))
      << "two-point Hessian bound\n";
  log << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? exit_code::ok : exit_code::failed;
}

}  // namespace weingarten
