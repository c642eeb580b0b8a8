#pragma once

// Warped-product ambient spaces dr^2 + theta(r)^2 sigma over the unit sphere
// S^n, in normal Gaussian coordinates (conformal factor identically one).

#include <functional>
#include <string>

namespace weingarten {

enum class AmbientFamily { euclidean, sphere, hyperbolic, custom };

/// A scalar radial profile together with its first two derivatives.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;
};

struct WarpValues {
  double theta;
  double dtheta;
  double ddtheta;
};

/// Strictly convex radial potential chi with a certified Hessian lower bound c0.
struct ConvexPotential {
  RadialProfile chi;
  double c0 = 0.0;
};

class WarpedProductSpace {
 public:
  /// n is the hypersurface dimension; the ambient space has dimension n + 1.
  static WarpedProductSpace euclidean(int n, double r_lo, double r_hi);
  /// Requires r_hi < pi/2 so that chi = -cos r stays strictly convex.
  static WarpedProductSpace sphere(int n, double r_lo, double r_hi);
  static WarpedProductSpace hyperbolic(int n, double r_lo, double r_hi);
  /// The claimed c0 of `potential` is certified by sampling; throws
  /// ArgumentError if theta or theta' fail to be positive or chi fails the bound.
  static WarpedProductSpace custom(int n, double r_lo, double r_hi, RadialProfile warp,
                                   ConvexPotential potential);
  /// "euclidean", "sphere", "hyperbolic".
  static WarpedProductSpace named(const std::string& family, int n, double r_lo, double r_hi);

  AmbientFamily family() const noexcept { return family_; }
  std::string family_name() const;
  int dimension() const noexcept { return n_; }
  double r_lo() const noexcept { return r_lo_; }
  double r_hi() const noexcept { return r_hi_; }
  bool contains(double r) const noexcept { return r >= r_lo_ && r <= r_hi_; }
  /// Throws DomainError when r is outside [r_lo, r_hi].
  void require_in_domain(double r) const;

  const RadialProfile& warp() const noexcept { return warp_; }
  const ConvexPotential& potential() const noexcept { return potential_; }

 private:
  WarpedProductSpace(AmbientFamily family, int n, double r_lo, double r_hi, RadialProfile warp,
                     ConvexPotential potential);

  AmbientFamily family_;
  int n_;
  double r_lo_;
  double r_hi_;
  RadialProfile warp_;
  ConvexPotential potential_;
};

WarpValues theta_eval(const WarpedProductSpace& space, double r);

/// theta'/theta: principal curvature of the slice {r = const}.
double slice_curvature(const WarpedProductSpace& space, double r);

struct SectionalCurvatures {
  double radial;      ///< -theta''/theta
  double tangential;  ///< (1 - theta'^2)/theta^2
};
SectionalCurvatures sectional_curvatures(const WarpedProductSpace& space, double r);

struct PotentialValues {
  double value;
  double radial_derivative;
  double hessian_radial;      ///< chi''
  double hessian_tangential;  ///< chi' theta'/theta
  double margin;              ///< min of both Hessian entries minus c0
};
PotentialValues chi_eval(const WarpedProductSpace& space, double r);

struct PotentialCertificate {
  double c0_sampled;  ///< largest c0 consistent with every sample
  double min_margin;  ///< smallest margin against the stored c0
};
/// Samples chi's Hessian bound at `samples` uniformly spaced radii.
PotentialCertificate certify_potential(const WarpedProductSpace& space, int samples);

}  // namespace weingarten
