#pragma once

// Scenario files: a line-oriented "[section]" / "key = value" text format.
// '#' starts a comment. Unknown sections, unknown keys and repeated keys are
// errors. See README.md for the full key list.

#include "weingarten/ambient.hpp"
#include "weingarten/flow.hpp"
#include "weingarten/hypersurface.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weingarten {

struct ScenarioConfig {
  // [ambient]
  std::string ambient_family;
  int dimension = 0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::vector<double> theta_coefficients;  ///< custom family only
  std::vector<double> chi_coefficients;    ///< custom family only
  double chi_c0 = 0.0;                     ///< custom family only

  // [graph]
  GraphMode mode = GraphMode::umbilic;
  std::size_t intervals = 0;  ///< N

  // [function]
  std::string function;
  int k = 0;

  // [prescribed]
  std::vector<double> f_coefficients;

  // [initial]
  double initial_radius = 0.0;
  std::vector<std::pair<int, double>> fourier;  ///< (frequency, amplitude)

  // [flow]
  Orientation orientation = Orientation::expanding;
  double lambda = 1.0;
  std::optional<double> theta;
  double dt_safety = 0.2;
  double tol_residual = 1e-8;
  double tol_velocity = 1e-10;
  double t_max = 100.0;
  std::size_t max_steps = 10'000'000;
  std::optional<double> barrier_lower;  ///< slice radius
  std::optional<double> barrier_upper;

  // [output]
  std::size_t cadence = 1;
};

/// Throws ValidationError naming the offending line.
ScenarioConfig parse_scenario(std::istream& in, const std::string& source = "<scenario>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct Scenario {
  WarpedProductSpace space;
  FlowConfig flow;
  GraphHypersurface initial;
};

/// Cross-field validation and construction of the runtime objects. Throws
/// ValidationError.
Scenario build_scenario(const ScenarioConfig& config);

/// Initial profile base + sum a_k cos(k x) sampled on the graph grid.
std::vector<double> fourier_profile(GraphMode mode, std::size_t intervals, double base,
                                    const std::vector<std::pair<int, double>>& modes);

}  // namespace weingarten
