#include "weingarten/hypersurface.hpp"

#include "weingarten/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace weingarten {

namespace {

struct Derivatives {
  double first;
  double second;
};

/// Centered second-order differences; periodic for curves, even reflection
/// about the poles for axisymmetric graphs.
Derivatives differentiate(const GraphHypersurface& graph, std::size_t j) {
  const auto& u = graph.values();
  const std::size_t count = u.size();
  const double h = graph.spacing();
  double left = 0.0, right = 0.0;
  if (graph.mode() == GraphMode::curve) {
    left = u[(j + count - 1) % count];
    right = u[(j + 1) % count];
  } else {
    left = (j == 0) ? u[1] : u[j - 1];
    right = (j + 1 == count) ? u[count - 2] : u[j + 1];
  }
  return {(right - left) / (2.0 * h), (right - 2.0 * u[j] + left) / (h * h)};
}

void require_finite(double x, std::size_t j, const char* what) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << "non-finite " << what << " at node " << j;
    throw NumericalError(msg.str());
  }
}

/// Normal curvature of the profile r = u(s) in the totally geodesic plane
/// dr^2 + theta^2 ds^2: h = -<D_t t, N> with Gamma^r_ss = -theta theta',
/// Gamma^s_rs = theta'/theta and N = (theta, -u'/theta) / L.
double profile_curvature(const WarpValues& w, const Derivatives& d) {
  const double length2 = d.first * d.first + w.theta * w.theta;
  const double length = std::sqrt(length2);
  const double accel_r = d.second - w.theta * w.dtheta;
  const double accel_s = 2.0 * w.dtheta * d.first / w.theta;
  const double normal_r = w.theta / length;
  const double normal_s = -d.first / (w.theta * length);
  const double h_ss = -(accel_r * normal_r + w.theta * w.theta * accel_s * normal_s);
  return h_ss / length2;
}

NodeGeometry umbilic_node(const WarpedProductSpace& space, double r, int n) {
  const auto w = theta_eval(space, r);
  NodeGeometry node;
  node.g = Matrix::Identity(n, n) * (w.theta * w.theta);
  node.h = Matrix::Identity(n, n) * (w.theta * w.dtheta);
  node.v = 1.0;
  node.nu = Vector::Zero(n + 1);
  node.nu[0] = 1.0;
  node.kappa = CurvatureVector(std::vector<double>(static_cast<std::size_t>(n), w.dtheta / w.theta));
  node.vtilde = 1.0;
  return node;
}

}  // namespace

GraphHypersurface::GraphHypersurface(GraphMode mode, int n, std::vector<double> u)
    : mode_(mode), n_(n), u_(std::move(u)) {}

GraphHypersurface GraphHypersurface::umbilic(double radius, int n) {
  if (n < 1) throw ArgumentError("dimension must be at least 1");
  return {GraphMode::umbilic, n, {radius}};
}

GraphHypersurface GraphHypersurface::curve(std::vector<double> u) {
  if (u.size() < 3) throw ArgumentError("curve grids need at least 3 nodes");
  return {GraphMode::curve, 1, std::move(u)};
}

GraphHypersurface GraphHypersurface::axisymmetric(std::vector<double> u) {
  if (u.size() < 3) throw ArgumentError("axisymmetric grids need at least 3 nodes");
  return {GraphMode::axisymmetric, 2, std::move(u)};
}

double GraphHypersurface::spacing() const noexcept {
  switch (mode_) {
    case GraphMode::umbilic: return 0.0;
    case GraphMode::curve: return 2.0 * std::numbers::pi / static_cast<double>(u_.size());
    case GraphMode::axisymmetric: return std::numbers::pi / static_cast<double>(u_.size() - 1);
  }
  return 0.0;
}

double GraphHypersurface::coordinate(std::size_t j) const {
  if (j >= u_.size()) throw ArgumentError("node index out of range");
  return spacing() * static_cast<double>(j);
}

GraphHypersurface GraphHypersurface::with_values(std::vector<double> u) const {
  if (u.size() != u_.size()) throw ArgumentError("node count mismatch");
  return {mode_, n_, std::move(u)};
}

std::string mode_name(GraphMode mode) {
  switch (mode) {
    case GraphMode::umbilic: return "umbilic";
    case GraphMode::curve: return "curve";
    case GraphMode::axisymmetric: return "axisymmetric";
  }
  return "unknown";
}

GeometryReport geometry(const WarpedProductSpace& space, const GraphHypersurface& graph) {
  if (graph.dimension() != space.dimension())
    throw ArgumentError("graph dimension does not match the ambient space");
  const auto& u = graph.values();
  for (std::size_t j = 0; j < u.size(); ++j) {
    require_finite(u[j], j, "radius");
    space.require_in_domain(u[j]);
  }

  GeometryReport report;
  report.nodes.reserve(u.size());
  if (graph.mode() == GraphMode::umbilic) {
    report.nodes.push_back(umbilic_node(space, u[0], graph.dimension()));
    return report;
  }

  const bool axisymmetric = graph.mode() == GraphMode::axisymmetric;
  const std::size_t last = u.size() - 1;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto w = theta_eval(space, u[j]);
    const auto d = differentiate(graph, j);
    require_finite(d.first, j, "first derivative");
    require_finite(d.second, j, "second derivative");

    const double length = std::sqrt(d.first * d.first + w.theta * w.theta);
    NodeGeometry node;
    node.v = length / w.theta;
    node.vtilde = 1.0 / node.v;
    const double k_profile = profile_curvature(w, d);

    if (!axisymmetric) {
      node.g = Matrix::Constant(1, 1, length * length);
      node.h = Matrix::Constant(1, 1, k_profile * length * length);
      node.nu = Vector(2);
      node.nu << node.vtilde, -d.first / (w.theta * length);
      node.kappa = CurvatureVector{k_profile};
    } else {
      // Rotational curvature -<D_phi d_phi, N>/|d_phi|^2; equals the profile
      // curvature in the limit at the poles.
      double k_rotation = k_profile;
      if (j != 0 && j != last) {
        const double polar = graph.coordinate(j);
        k_rotation = (w.dtheta - d.first * std::cos(polar) / (std::sin(polar) * w.theta)) / length;
      }
      node.g = Matrix::Zero(2, 2);
      node.g(0, 0) = length * length;
      node.g(1, 1) = w.theta * w.theta;
      node.h = Matrix::Zero(2, 2);
      node.h(0, 0) = k_profile * node.g(0, 0);
      node.h(1, 1) = k_rotation * node.g(1, 1);
      node.nu = Vector::Zero(3);
      node.nu[0] = node.vtilde;
      node.nu[1] = -d.first / (w.theta * length);
      node.kappa = CurvatureVector(std::vector<double>{std::min(k_profile, k_rotation),
                                                       std::max(k_profile, k_rotation)});
    }
    for (double k : node.kappa.entries()) require_finite(k, j, "principal curvature");
    report.nodes.push_back(std::move(node));
  }
  return report;
}

AdmissibilitySummary admissibility(const GeometryReport& report, const ConeSpec& cone,
                                   const CurvatureFunctionSpec& F,
                                   const std::vector<double>& f_values) {
  if (f_values.size() != report.nodes.size())
    throw ArgumentError("need one prescribed value per node");
  AdmissibilitySummary out{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < report.nodes.size(); ++j) {
    const auto& kappa = report.nodes[j].kappa;
    const auto membership = cone_contains(cone, kappa);
    out.cone_margin = std::min(out.cone_margin, membership.margin);
    if (!membership.inside || !cone_contains(F.cone(), kappa).inside) {
      ++out.inadmissible_nodes;
      continue;
    }
    const double residual = evaluate(F, kappa) - f_values[j];
    out.residual_min = std::min(out.residual_min, residual);
    out.residual_max = std::max(out.residual_max, residual);
  }
  if (out.inadmissible_nodes == report.nodes.size()) {
    out.residual_min = out.residual_max = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<CurvatureVector> curvature_oracle_cartesian(const WarpedProductSpace& space,
                                                        const GraphHypersurface& graph) {
  if (space.family() != AmbientFamily::euclidean)
    throw UnsupportedError("the Cartesian curvature oracle needs a Euclidean ambient");
  if (graph.mode() == GraphMode::umbilic)
    throw UnsupportedError("the Cartesian curvature oracle handles curve and axisymmetric graphs");

  const auto& u = graph.values();
  const std::size_t count = u.size();
  const double h = graph.spacing();
  const bool periodic = graph.mode() == GraphMode::curve;

  // Planar point (a, b) of the sample at signed grid index i; for
  // axisymmetric graphs a is the distance to the axis and b the height.
  auto point = [&](long i) {
    double radius = 0.0;
    if (periodic) {
      radius = u[static_cast<std::size_t>((i % long(count) + long(count)) % long(count))];
    } else {
      const long last = long(count) - 1;
      const long mirrored = i < 0 ? -i : (i > last ? 2 * last - i : i);
      radius = u[static_cast<std::size_t>(mirrored)];
    }
    const double angle = h * static_cast<double>(i);
    if (periodic) return std::pair{radius * std::cos(angle), radius * std::sin(angle)};
    return std::pair{radius * std::sin(angle), radius * std::cos(angle)};
  };

  std::vector<CurvatureVector> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto [a0, b0] = point(long(j));
    const auto [am, bm] = point(long(j) - 1);
    const auto [ap, bp] = point(long(j) + 1);
    const double da = (ap - am) / (2.0 * h), db = (bp - bm) / (2.0 * h);
    const double dda = (ap - 2.0 * a0 + am) / (h * h), ddb = (bp - 2.0 * b0 + bm) / (h * h);
    const double speed = std::sqrt(da * da + db * db);
    if (periodic) {
      // Counter-clockwise curve: positive curvature for convex curves.
      out.push_back(CurvatureVector{(da * ddb - db * dda) / (speed * speed * speed)});
      continue;
    }
    // Profile (rho, z) traversed from the north pole: curvature with respect to
    // the outward normal is (z' rho'' - rho' z'') / |.|^3; parallels -z'/(rho |.|).
    const double meridian = (db * dda - da * ddb) / (speed * speed * speed);
    const double parallel = (j == 0 || j + 1 == count) ? meridian : -db / (a0 * speed);
    out.push_back(CurvatureVector(
        std::vector<double>{std::min(meridian, parallel), std::max(meridian, parallel)}));
  }
  return out;
}

}  // namespace weingarten
