#include "weingarten/ambient.hpp"

#include "weingarten/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace weingarten {

namespace {

void require_interval(double r_lo, double r_hi) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi))
    throw ArgumentError("ambient domain must satisfy 0 < r_lo < r_hi < inf");
}

void require_dimension(int n) {
  if (n < 1) throw ArgumentError("hypersurface dimension must be at least 1");
}

double hessian_floor(const WarpedProductSpace& space, double r) {
  const auto w = theta_eval(space, r);
  const auto& chi = space.potential().chi;
  return std::min(chi.second(r), chi.first(r) * w.dtheta / w.theta);
}

}  // namespace

WarpedProductSpace::WarpedProductSpace(AmbientFamily family, int n, double r_lo, double r_hi,
                                       RadialProfile warp, ConvexPotential potential)
    : family_(family),
      n_(n),
      r_lo_(r_lo),
      r_hi_(r_hi),
      warp_(std::move(warp)),
      potential_(std::move(potential)) {}

WarpedProductSpace WarpedProductSpace::euclidean(int n, double r_lo, double r_hi) {
  require_dimension(n);
  require_interval(r_lo, r_hi);
  RadialProfile warp{[](double r) { return r; }, [](double) { return 1.0; },
                     [](double) { return 0.0; }};
  ConvexPotential chi{{[](double r) { return 0.5 * r * r; }, [](double r) { return r; },
                       [](double) { return 1.0; }},
                      1.0};
  return {AmbientFamily::euclidean, n, r_lo, r_hi, std::move(warp), std::move(chi)};
}

WarpedProductSpace WarpedProductSpace::sphere(int n, double r_lo, double r_hi) {
  require_dimension(n);
  require_interval(r_lo, r_hi);
  if (!(r_hi < std::numbers::pi / 2))
    throw ArgumentError("sphere domain must stay below r = pi/2");
  RadialProfile warp{[](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
                     [](double r) { return -std::sin(r); }};
  ConvexPotential chi{{[](double r) { return -std::cos(r); }, [](double r) { return std::sin(r); },
                       [](double r) { return std::cos(r); }},
                      std::cos(r_hi)};
  return {AmbientFamily::sphere, n, r_lo, r_hi, std::move(warp), std::move(chi)};
}

WarpedProductSpace WarpedProductSpace::hyperbolic(int n, double r_lo, double r_hi) {
  require_dimension(n);
  require_interval(r_lo, r_hi);
  RadialProfile warp{[](double r) { return std::sinh(r); }, [](double r) { return std::cosh(r); },
                     [](double r) { return std::sinh(r); }};
  ConvexPotential chi{{[](double r) { return std::cosh(r); }, [](double r) { return std::sinh(r); },
                       [](double r) { return std::cosh(r); }},
                      std::cosh(r_lo)};
  return {AmbientFamily::hyperbolic, n, r_lo, r_hi, std::move(warp), std::move(chi)};
}

WarpedProductSpace WarpedProductSpace::custom(int n, double r_lo, double r_hi,
                                              RadialProfile warp, ConvexPotential potential) {
  require_dimension(n);
  require_interval(r_lo, r_hi);
  if (!warp.value || !warp.first || !warp.second || !potential.chi.value ||
      !potential.chi.first || !potential.chi.second)
    throw ArgumentError("custom ambient needs theta, chi and two derivatives of each");
  if (!(potential.c0 > 0.0)) throw ArgumentError("claimed c0 must be positive");
  WarpedProductSpace space(AmbientFamily::custom, n, r_lo, r_hi, std::move(warp),
                           std::move(potential));
  constexpr int kSamples = 1000;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / kSamples;
    const auto w = theta_eval(space, r);
    if (!(w.theta > 0.0) || !(w.dtheta > 0.0)) {
      std::ostringstream msg;
      msg << "custom warp must satisfy theta > 0 and theta' > 0; fails at r = " << r;
      throw ArgumentError(msg.str());
    }
  }
  const auto cert = certify_potential(space, kSamples);
  if (cert.min_margin < 0.0) {
    std::ostringstream msg;
    msg << "claimed c0 = " << space.potential().c0 << " exceeds the sampled Hessian floor "
        << cert.c0_sampled;
    throw ArgumentError(msg.str());
  }
  return space;
}

WarpedProductSpace WarpedProductSpace::named(const std::string& family, int n, double r_lo,
                                             double r_hi) {
  if (family == "euclidean") return euclidean(n, r_lo, r_hi);
  if (family == "sphere") return sphere(n, r_lo, r_hi);
  if (family == "hyperbolic") return hyperbolic(n, r_lo, r_hi);
  throw ArgumentError("unknown ambient family '" + family + "'");
}

std::string WarpedProductSpace::family_name() const {
  switch (family_) {
    case AmbientFamily::euclidean: return "euclidean";
    case AmbientFamily::sphere: return "sphere";
    case AmbientFamily::hyperbolic: return "hyperbolic";
    case AmbientFamily::custom: return "custom";
  }
  return "unknown";
}

void WarpedProductSpace::require_in_domain(double r) const {
  if (!contains(r)) {
    std::ostringstream msg;
    msg << "radius " << r << " outside the ambient domain [" << r_lo_ << ", " << r_hi_ << "]";
    throw DomainError(msg.str(), r);
  }
}

WarpValues theta_eval(const WarpedProductSpace& space, double r) {
  space.require_in_domain(r);
  const auto& w = space.warp();
  return {w.value(r), w.first(r), w.second(r)};
}

double slice_curvature(const WarpedProductSpace& space, double r) {
  const auto w = theta_eval(space, r);
  return w.dtheta / w.theta;
}

SectionalCurvatures sectional_curvatures(const WarpedProductSpace& space, double r) {
  const auto w = theta_eval(space, r);
  return {-w.ddtheta / w.theta, (1.0 - w.dtheta * w.dtheta) / (w.theta * w.theta)};
}

PotentialValues chi_eval(const WarpedProductSpace& space, double r) {
  const auto w = theta_eval(space, r);
  const auto& p = space.potential();
  PotentialValues out{};
  out.value = p.chi.value(r);
  out.radial_derivative = p.chi.first(r);
  out.hessian_radial = p.chi.second(r);
  out.hessian_tangential = out.radial_derivative * w.dtheta / w.theta;
  out.margin = std::min(out.hessian_radial, out.hessian_tangential) - p.c0;
  return out;
}

PotentialCertificate certify_potential(const WarpedProductSpace& space, int samples) {
  if (samples < 1) throw ArgumentError("certify_potential needs at least one sample");
  double floor = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double r = space.r_lo() + (space.r_hi() - space.r_lo()) * i / samples;
    floor = std::min(floor, hessian_floor(space, r));
  }
  return {floor, floor - space.potential().c0};
}

}  // namespace weingarten
