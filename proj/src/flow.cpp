#include "weingarten/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace weingarten {

namespace {

double orientation_sign(Orientation orientation) {
  return orientation == Orientation::expanding ? 1.0 : -1.0;
}

/// Geometry and velocity of a trial profile; maps geometric failures to
/// StepFailure.
std::pair<FlowState, std::vector<double>> checked_state(const WarpedProductSpace& space,
                                                        GraphHypersurface graph,
                                                        const FlowConfig& config) {
  try {
    auto report = geometry(space, graph);
    FlowState trial{0.0, std::move(graph), std::move(report), 0.0};
    auto speed = velocity(space, trial, config);
    return {std::move(trial), std::move(speed)};
  } catch (const DomainError& e) {
    throw StepFailure(StopReason::left_domain, e.what());
  } catch (const AdmissibilityError& e) {
    throw StepFailure(StopReason::blow_up, e.what());
  } catch (const NumericalError& e) {
    throw StepFailure(StopReason::blow_up, e.what());
  }
}

std::vector<double> trial_velocity(const WarpedProductSpace& space, const GraphHypersurface& graph,
                                   const FlowConfig& config) {
  return checked_state(space, graph, config).second;
}

std::vector<double> axpy(const std::vector<double>& u, double a, const std::vector<double>& k) {
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j] + a * k[j];
  return out;
}

}  // namespace

PrescribedFunction::PrescribedFunction(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
  for (double c : coefficients_)
    if (!std::isfinite(c)) throw ArgumentError("prescribed function coefficients must be finite");
}

PrescribedFunction PrescribedFunction::constant(double value) {
  return PrescribedFunction(std::vector<double>{value});
}

double PrescribedFunction::operator()(double r) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

double PrescribedFunction::derivative(double r) const {
  double acc = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 1;) acc = acc * r + double(k) * coefficients_[k];
  return acc;
}

std::string orientation_name(Orientation orientation) {
  return orientation == Orientation::expanding ? "expanding" : "contracting";
}

std::string stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::residual: return "residual";
    case StopReason::t_max: return "t_max";
    case StopReason::blow_up: return "blow_up";
    case StopReason::left_domain: return "left_domain";
  }
  return "unknown";
}

StepFailure::StepFailure(StopReason reason, const std::string& what)
    : Error(what), reason_(reason) {}

FlowState FlowState::initial(const WarpedProductSpace& space, GraphHypersurface graph) {
  auto report = geometry(space, graph);
  return FlowState{0.0, std::move(graph), std::move(report), 0.0};
}

std::vector<double> velocity(const WarpedProductSpace& space, const FlowState& state,
                             const FlowConfig& config) {
  const auto& u = state.graph.values();
  const auto& nodes = state.report.nodes;
  if (nodes.size() != u.size()) throw ArgumentError("flow state report does not match its graph");
  (void)space;
  const double sign = orientation_sign(config.orientation);
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double F = evaluate(config.F, nodes[j].kappa);
    out[j] = sign * (F - config.f(u[j])) * nodes[j].v;
  }
  return out;
}

double stable_time_step(const WarpedProductSpace& space, const FlowState& state,
                        const FlowConfig& config) {
  const auto& u = state.graph.values();
  if (state.graph.mode() == GraphMode::umbilic) {
    const double r = u[0];
    const double delta = 1e-6 * std::max(1.0, std::abs(r));
    const double lo = std::max(space.r_lo(), r - delta);
    const double hi = std::min(space.r_hi(), r + delta);
    auto speed = [&](double radius) {
      return trial_velocity(space, state.graph.with_values({radius}), config)[0];
    };
    const double rate = std::abs((speed(hi) - speed(lo)) / (hi - lo));
    const double current = std::abs(speed(r));
    double dt = std::numeric_limits<double>::infinity();
    if (rate > 0.0) dt = config.dt_safety / rate;
    // Never cross more than a fraction of the domain in one step.
    if (current > 0.0) dt = std::min(dt, config.dt_safety * (space.r_hi() - space.r_lo()) / current);
    if (!std::isfinite(dt)) dt = config.t_max;
    return dt;
  }

  // Bound on the coefficient of u'' in the linearized speed: sum_i F_i / (theta v)^2.
  double diffusion = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto& node = state.report.nodes[j];
    const double theta = theta_eval(space, u[j]).theta;
    const Vector grad = gradient(config.F, node.kappa);
    diffusion = std::max(diffusion, grad.sum() / (theta * theta * node.v * node.v));
  }
  const double h = state.graph.spacing();
  return config.dt_safety * h * h / diffusion;
}

FlowState step(const WarpedProductSpace& space, const FlowState& state, const FlowConfig& config,
               double dt_cap) {
  double dt = 0.0;
  try {
    dt = stable_time_step(space, state, config);
  } catch (const AdmissibilityError& e) {
    throw StepFailure(StopReason::blow_up, e.what());
  }
  if (dt_cap > 0.0) dt = std::min(dt, dt_cap);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StepFailure(StopReason::blow_up, "invalid time step");

  const auto& u = state.graph.values();
  const auto k1 = trial_velocity(space, state.graph, config);
  const auto k2 = trial_velocity(space, state.graph.with_values(axpy(u, 0.5 * dt, k1)), config);
  const auto k3 = trial_velocity(space, state.graph.with_values(axpy(u, 0.5 * dt, k2)), config);
  const auto k4 = trial_velocity(space, state.graph.with_values(axpy(u, dt, k3)), config);

  std::vector<double> next(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    next[j] = u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!std::isfinite(next[j])) throw StepFailure(StopReason::blow_up, "non-finite radius");
  }
  // The new state must itself be admissible; otherwise the run ends here.
  auto accepted = checked_state(space, state.graph.with_values(std::move(next)), config).first;
  accepted.t = state.t + dt;
  accepted.dt_last = dt;
  return accepted;
}

double umbilic_stationary_radius(const WarpedProductSpace& space, const CurvatureFunctionSpec& F,
                                 const PrescribedFunction& f) {
  auto mismatch = [&](double r) { return F.unit_value() * slice_curvature(space, r) - f(r); };
  double lo = space.r_lo();
  double hi = space.r_hi();
  double g_lo = mismatch(lo);
  const double g_hi = mismatch(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    std::ostringstream msg;
    msg << "F(1,...,1) theta'/theta - f has no sign change on [" << lo << ", " << hi << "]";
    throw NoSolutionError(msg.str());
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = mismatch(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double umbilic_stationary_radius(const WarpedProductSpace& space, const CurvatureFunctionSpec& F,
                                 double f_const) {
  return umbilic_stationary_radius(space, F, PrescribedFunction::constant(f_const));
}

}  // namespace weingarten
