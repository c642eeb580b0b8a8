#pragma once

// Radial graphs r = u(x) over S^n in a warped product, and their geometry.
//
// Orientation: the unit normal points towards increasing r, and h is signed so
// that the slice r = const has principal curvatures +theta'/theta.

#include "weingarten/ambient.hpp"
#include "weingarten/symfunc.hpp"

#include <vector>

namespace weingarten {

enum class GraphMode {
  umbilic,       ///< u is a single radius, any n
  curve,         ///< n = 1, periodic grid phi_j = 2 pi j / N, j < N
  axisymmetric,  ///< n = 2, polar grid theta_j = pi j / N, j <= N
};

class GraphHypersurface {
 public:
  static GraphHypersurface umbilic(double radius, int n);
  static GraphHypersurface curve(std::vector<double> u);
  /// `u` holds the N + 1 values at theta_0 = 0, ..., theta_N = pi.
  static GraphHypersurface axisymmetric(std::vector<double> u);

  GraphMode mode() const noexcept { return mode_; }
  int dimension() const noexcept { return n_; }
  const std::vector<double>& values() const noexcept { return u_; }
  std::size_t nodes() const noexcept { return u_.size(); }
  /// Uniform grid spacing in angle; zero for umbilic graphs.
  double spacing() const noexcept;
  /// Angle of node j (phi for curves, polar angle for axisymmetric graphs).
  double coordinate(std::size_t j) const;

  /// Same grid and mode, new values.
  GraphHypersurface with_values(std::vector<double> u) const;

 private:
  GraphHypersurface(GraphMode mode, int n, std::vector<double> u);

  GraphMode mode_;
  int n_;
  std::vector<double> u_;
};

std::string mode_name(GraphMode mode);

/// Geometry at one node. Tensors are expressed in a sigma-orthonormal frame
/// of the base sphere, so they stay regular at the poles.
struct NodeGeometry {
  Matrix g;
  Matrix h;
  double v = 1.0;       ///< sqrt(1 + theta^-2 |Du|^2)
  Vector nu;            ///< (nu^0, nu^1, ..., nu^n)
  CurvatureVector kappa{1.0};  ///< ascending
  double vtilde = 1.0;  ///< <eta, nu> = nu^0 = 1/v
};

struct GeometryReport {
  std::vector<NodeGeometry> nodes;
};

GeometryReport geometry(const WarpedProductSpace& space, const GraphHypersurface& graph);

struct AdmissibilitySummary {
  double cone_margin;   ///< min over nodes of the cone margin
  double residual_min;  ///< min over admissible nodes of F(kappa) - f
  double residual_max;
  std::size_t inadmissible_nodes;
};

AdmissibilitySummary admissibility(const GeometryReport& report, const ConeSpec& cone,
                                   const CurvatureFunctionSpec& F,
                                   const std::vector<double>& f_values);

/// Curvatures from the Cartesian embedding (Euclidean ambient only), by
/// classical parametric formulas on the same grid. Per node, ascending.
std::vector<CurvatureVector> curvature_oracle_cartesian(const WarpedProductSpace& space,
                                                        const GraphHypersurface& graph);

}  // namespace weingarten
