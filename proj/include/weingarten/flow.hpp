#pragma once

// Scalar graph form of the curvature flow x' = -(F - f) nu, integrated with an
// explicit four-stage scheme under a parabolic step bound.

#include "weingarten/ambient.hpp"
#include "weingarten/errors.hpp"
#include "weingarten/hypersurface.hpp"
#include "weingarten/symfunc.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace weingarten {

/// Prescribed radial function f(r) = sum_k c_k r^k (constants are degree 0).
class PrescribedFunction {
 public:
  PrescribedFunction() = default;
  explicit PrescribedFunction(std::vector<double> coefficients);
  static PrescribedFunction constant(double value);

  double operator()(double r) const;
  double derivative(double r) const;
  bool is_constant() const noexcept { return coefficients_.size() <= 1; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

 private:
  std::vector<double> coefficients_{0.0};
};

/// Direction of travel for F > f.
///
/// `expanding`: u' = (F - f) v, the hypersurface moves towards larger r where
/// F > f. Converges to slices of constant f in space forms (umbilic runs), but
/// the spatial operator is anti-diffusive, so curve and axisymmetric runs are
/// unstable.
///
/// `contracting`: u' = -(F - f) v, the parabolic direction. Converges between
/// slice barriers when f decreases faster in r than F on slices.
enum class Orientation { expanding, contracting };

std::string orientation_name(Orientation orientation);

/// Nodewise lower and upper barrier profiles (same grid as the flow graph).
struct Barriers {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct FlowConfig {
  CurvatureFunctionSpec F = CurvatureFunctionSpec::sigma1(1);
  PrescribedFunction f = PrescribedFunction::constant(1.0);
  Orientation orientation = Orientation::expanding;
  double lambda = 1.0;
  std::optional<double> theta;  ///< nullopt: min vtilde(0) / 2
  double dt_safety = 0.2;
  double tol_residual = 1e-8;
  double tol_velocity = 1e-10;
  double t_max = 100.0;
  std::size_t max_steps = 10'000'000;
  std::size_t cadence = 1;  ///< record every `cadence` steps (and the final state)
  std::optional<Barriers> barriers;
};

struct FlowState {
  double t = 0.0;
  GraphHypersurface graph;
  GeometryReport report;
  double dt_last = 0.0;

  static FlowState initial(const WarpedProductSpace& space, GraphHypersurface graph);
};

enum class StopReason { residual, t_max, blow_up, left_domain };
std::string stop_reason_name(StopReason reason);

struct FlowSummary {
  bool converged = false;
  StopReason reason = StopReason::t_max;
  double t_final = 0.0;
  std::size_t steps = 0;
  double residual_min = 0.0;
  double residual_max = 0.0;
  double velocity_max = 0.0;
  double theta = 0.0;  ///< resolved vtilde floor
  std::optional<double> r_final;  ///< umbilic runs only
  std::string message;            ///< failure detail, empty on success
};

/// Normal speed in graph form at every node: s (F(kappa) - f(u)) v, s = +1
/// for expanding and -1 for contracting orientation. Throws
/// AdmissibilityError at the first inadmissible node.
std::vector<double> velocity(const WarpedProductSpace& space, const FlowState& state,
                             const FlowConfig& config);

/// Thrown by step when the integration cannot continue.
class StepFailure : public Error {
 public:
  StepFailure(StopReason reason, const std::string& what);
  StopReason reason() const noexcept { return reason_; }

 private:
  StopReason reason_;
};

/// Time step the next call to step() will take (before clipping to t_max).
double stable_time_step(const WarpedProductSpace& space, const FlowState& state,
                        const FlowConfig& config);

/// One classical Runge-Kutta step. `dt_cap` clips the step (e.g. to t_max).
FlowState step(const WarpedProductSpace& space, const FlowState& state, const FlowConfig& config,
               double dt_cap = 0.0);

/// Radius r* with F(1,...,1) theta'/theta = f(r*), by bisection to 1e-12.
double umbilic_stationary_radius(const WarpedProductSpace& space, const CurvatureFunctionSpec& F,
                                 double f_const);
double umbilic_stationary_radius(const WarpedProductSpace& space, const CurvatureFunctionSpec& F,
                                 const PrescribedFunction& f);

}  // namespace weingarten
