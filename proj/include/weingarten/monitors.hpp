#pragma once

// Runtime monitors for the quantities the curvature estimates control, and
// the flow driver that records them.

#include "weingarten/flow.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace weingarten {

struct MonitorRecord {
  double t = 0.0;
  double dt = 0.0;
  double kappa_max = 0.0;
  double kappa_min = 0.0;
  double cone_margin = 0.0;
  double vtilde_min = 0.0;
  double residual_min = 0.0;  ///< min (F - f)
  double residual_max = 0.0;
  double w_max = 0.0;
  bool w_finite = true;  ///< false when vtilde <= theta or zeta <= 0 at some node
  double u_min = 0.0;
  double u_max = 0.0;
  std::optional<std::pair<double, double>> barrier_margins;  ///< (min u - lower, min upper - u)
};

/// Nodewise w = log zeta + phi + lambda chi(u), zeta the largest principal
/// curvature and phi = -log(vtilde - theta). +inf where undefined.
std::vector<double> w_profile(const WarpedProductSpace& space, const FlowState& state,
                              double theta, double lambda);

/// Largest generalized eigenvalue of (h, g) at every node.
std::vector<double> largest_curvature(const GeometryReport& report);

/// `theta` must be resolved (config.theta set or passed explicitly).
MonitorRecord record(const WarpedProductSpace& space, const FlowState& state,
                     const FlowConfig& config, double theta);

struct BoundsReport {
  bool preserved_F_ge_f = false;
  double worst_residual = 0.0;
  bool vtilde_floor = false;
  double vtilde_inf = 0.0;
  double theta = 0.0;
  bool kappa_bounded = false;
  double kappa_sup = 0.0;
  double kappa_early = 0.0;  ///< max kappa over the first 10% of records
  bool cone_compact = false;
  double delta = 0.0;  ///< inf over time of cone_margin
  bool w_bounded = false;
  double w_sup = 0.0;
  bool barriers_held = true;
  bool barriers_configured = false;
  double barrier_margin = 0.0;

  bool all() const {
    return preserved_F_ge_f && vtilde_floor && kappa_bounded && cone_compact && w_bounded &&
           barriers_held;
  }
};

/// Evaluates every BoundsReport predicate over the trajectory. When
/// config.theta is unset, theta = vtilde_min(first record) / 2.
BoundsReport verify_bounds(const std::vector<MonitorRecord>& trajectory, const FlowConfig& config);

struct FlowRun {
  std::vector<MonitorRecord> trajectory;
  FlowState final;
  FlowSummary summary;
};

/// Integrates until convergence, t_max, step budget or failure. Throws
/// ValidationError when the initial data violates F >= f, leaves the domain,
/// is inadmissible, or lies outside the configured barriers.
FlowRun run(const WarpedProductSpace& space, const FlowConfig& config,
            const GraphHypersurface& initial);

}  // namespace weingarten
