#include "weingarten/monitors.hpp"

#include "weingarten/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace weingarten {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBarrierTolerance = 1e-8;

double min_vtilde(const GeometryReport& report) {
  double out = kInf;
  for (const auto& node : report.nodes) out = std::min(out, node.vtilde);
  return out;
}

std::vector<double> prescribed_values(const FlowConfig& config, const std::vector<double>& u) {
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = config.f(u[j]);
  return out;
}

void validate_initial(const WarpedProductSpace& space, const FlowConfig& config,
                      const GraphHypersurface& initial, const GeometryReport& report) {
  const auto& u = initial.values();
  std::size_t worst = 0;
  double worst_residual = kInf;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto& kappa = report.nodes[j].kappa;
    const auto membership = cone_contains(config.F.cone(), kappa);
    if (!membership.inside) {
      std::ostringstream msg;
      msg << "initial data inadmissible at node " << j << ": principal curvatures outside "
          << config.F.cone().name() << " (margin " << membership.margin << ")";
      throw ValidationError(msg.str());
    }
    const double residual = evaluate(config.F, kappa) - config.f(u[j]);
    if (residual < worst_residual) {
      worst_residual = residual;
      worst = j;
    }
  }
  if (worst_residual < -config.tol_residual) {
    std::ostringstream msg;
    msg << "initial F < f at node " << worst << " (F - f = " << worst_residual
        << "); the flow requires F >= f at t = 0";
    throw ValidationError(msg.str());
  }
  if (config.barriers) {
    const auto& b = *config.barriers;
    if (b.lower.size() != u.size() || b.upper.size() != u.size())
      throw ValidationError("barrier profiles must have one value per node");
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (b.lower[j] > u[j] || u[j] > b.upper[j]) {
        std::ostringstream msg;
        msg << "initial data outside the barriers at node " << j << " (" << b.lower[j]
            << " <= " << u[j] << " <= " << b.upper[j] << " fails)";
        throw ValidationError(msg.str());
      }
    }
  }
  (void)space;
}

}  // namespace

std::vector<double> largest_curvature(const GeometryReport& report) {
  std::vector<double> out;
  out.reserve(report.nodes.size());
  for (const auto& node : report.nodes) {
    if (node.g.rows() == 1) {
      out.push_back(node.h(0, 0) / node.g(0, 0));
      continue;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(node.h, node.g,
                                                            Eigen::EigenvaluesOnly);
    out.push_back(solver.eigenvalues().maxCoeff());
  }
  return out;
}

std::vector<double> w_profile(const WarpedProductSpace& space, const FlowState& state,
                              double theta, double lambda) {
  const auto zeta = largest_curvature(state.report);
  const auto& u = state.graph.values();
  const auto& chi = space.potential().chi;
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double gap = state.report.nodes[j].vtilde - theta;
    if (!(gap > 0.0) || !(zeta[j] > 0.0)) {
      out[j] = kInf;
      continue;
    }
    out[j] = std::log(zeta[j]) - std::log(gap) + lambda * chi.value(u[j]);
  }
  return out;
}

MonitorRecord record(const WarpedProductSpace& space, const FlowState& state,
                     const FlowConfig& config, double theta) {
  const auto& u = state.graph.values();
  MonitorRecord rec;
  rec.t = state.t;
  rec.dt = state.dt_last;
  rec.u_min = *std::min_element(u.begin(), u.end());
  rec.u_max = *std::max_element(u.begin(), u.end());

  const auto zeta = largest_curvature(state.report);
  rec.kappa_max = *std::max_element(zeta.begin(), zeta.end());
  rec.kappa_min = kInf;
  for (const auto& node : state.report.nodes) rec.kappa_min = std::min(rec.kappa_min, node.kappa.min());
  rec.vtilde_min = min_vtilde(state.report);

  const auto adm =
      admissibility(state.report, config.F.cone(), config.F, prescribed_values(config, u));
  rec.cone_margin = adm.cone_margin;
  rec.residual_min = adm.residual_min;
  rec.residual_max = adm.residual_max;

  const auto w = w_profile(space, state, theta, config.lambda);
  rec.w_max = *std::max_element(w.begin(), w.end());
  rec.w_finite = std::isfinite(rec.w_max);

  if (config.barriers) {
    double lower = kInf, upper = kInf;
    for (std::size_t j = 0; j < u.size(); ++j) {
      lower = std::min(lower, u[j] - config.barriers->lower[j]);
      upper = std::min(upper, config.barriers->upper[j] - u[j]);
    }
    rec.barrier_margins = std::pair{lower, upper};
  }
  return rec;
}

BoundsReport verify_bounds(const std::vector<MonitorRecord>& trajectory, const FlowConfig& config) {
  if (trajectory.empty()) throw ArgumentError("verify_bounds needs a nonempty trajectory");
  BoundsReport out;
  out.theta = config.theta.value_or(trajectory.front().vtilde_min / 2.0);

  out.worst_residual = kInf;
  out.vtilde_inf = kInf;
  out.delta = kInf;
  out.w_sup = -kInf;
  out.barrier_margin = kInf;
  bool w_all_finite = true;
  for (const auto& rec : trajectory) {
    out.worst_residual = std::min(out.worst_residual, rec.residual_min);
    out.vtilde_inf = std::min(out.vtilde_inf, rec.vtilde_min);
    out.kappa_sup = std::max(out.kappa_sup, rec.kappa_max);
    out.delta = std::min(out.delta, rec.cone_margin);
    out.w_sup = std::max(out.w_sup, rec.w_max);
    w_all_finite = w_all_finite && rec.w_finite;
    if (rec.barrier_margins) {
      out.barriers_configured = true;
      out.barrier_margin = std::min(
          {out.barrier_margin, rec.barrier_margins->first, rec.barrier_margins->second});
    }
  }
  const std::size_t early =
      std::max<std::size_t>(1, (trajectory.size() + 9) / 10);
  out.kappa_early = -kInf;
  for (std::size_t i = 0; i < early; ++i)
    out.kappa_early = std::max(out.kappa_early, trajectory[i].kappa_max);

  out.preserved_F_ge_f = out.worst_residual >= -10.0 * config.tol_residual;
  out.vtilde_floor = out.vtilde_inf >= out.theta;
  out.kappa_bounded = std::isfinite(out.kappa_sup) && out.kappa_sup <= 10.0 * out.kappa_early;
  out.cone_compact = out.delta > 0.0;
  out.w_bounded = w_all_finite && std::isfinite(out.w_sup);
  if (out.barriers_configured) {
    out.barriers_held = out.barrier_margin >= -kBarrierTolerance;
  } else {
    out.barrier_margin = 0.0;
  }
  return out;
}

FlowRun run(const WarpedProductSpace& space, const FlowConfig& config,
            const GraphHypersurface& initial) {
  if (!(config.dt_safety > 0.0 && config.dt_safety <= 1.0))
    throw ValidationError("dt_safety must lie in (0, 1]");
  if (!(config.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (config.cadence < 1) throw ValidationError("record cadence must be at least 1");

  GeometryReport report;
  try {
    report = geometry(space, initial);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("initial data leaves the ambient domain: ") + e.what());
  } catch (const NumericalError& e) {
    throw ValidationError(std::string("initial data is not finite: ") + e.what());
  }
  validate_initial(space, config, initial, report);

  FlowState state{0.0, initial, std::move(report), 0.0};
  const double theta = config.theta.value_or(min_vtilde(state.report) / 2.0);
  if (config.theta && !(min_vtilde(state.report) > theta))
    throw ValidationError("initial vtilde does not exceed the configured theta");

  FlowRun out{{}, state, {}};
  out.summary.theta = theta;
  out.trajectory.push_back(record(space, state, config, theta));
  std::size_t last_recorded = 0;
  std::size_t steps = 0;

  while (true) {
    const auto speed = velocity(space, state, config);
    const auto adm = admissibility(state.report, config.F.cone(), config.F,
                                   prescribed_values(config, state.graph.values()));
    double speed_max = 0.0;
    for (double s : speed) speed_max = std::max(speed_max, std::abs(s));
    out.summary.residual_min = adm.residual_min;
    out.summary.residual_max = adm.residual_max;
    out.summary.velocity_max = speed_max;

    const double residual_abs = std::max(std::abs(adm.residual_min), std::abs(adm.residual_max));
    if (residual_abs <= config.tol_residual && speed_max <= config.tol_velocity) {
      out.summary.converged = true;
      out.summary.reason = StopReason::residual;
      break;
    }
    if (state.t >= config.t_max) {
      out.summary.reason = StopReason::t_max;
      break;
    }
    if (steps >= config.max_steps) {
      out.summary.reason = StopReason::t_max;
      out.summary.message = "step budget exhausted";
      break;
    }
    try {
      state = step(space, state, config, config.t_max - state.t);
    } catch (const StepFailure& failure) {
      out.summary.reason = failure.reason();
      out.summary.message = failure.what();
      break;
    }
    ++steps;
    if (steps % config.cadence == 0) {
      out.trajectory.push_back(record(space, state, config, theta));
      last_recorded = steps;
    }
  }
  if (last_recorded != steps) out.trajectory.push_back(record(space, state, config, theta));

  out.summary.t_final = state.t;
  out.summary.steps = steps;
  if (state.graph.mode() == GraphMode::umbilic) out.summary.r_final = state.graph.values()[0];
  out.final = std::move(state);
  return out;
}

}  // namespace weingarten
