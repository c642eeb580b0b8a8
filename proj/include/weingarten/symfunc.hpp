#pragma once

// Symmetric, monotone, concave curvature functions F(kappa) that are
// homogeneous of degree one, together with the calculus needed to treat F as a
// function of admissible symmetric tensors (h_ij relative to g_ij).

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weingarten {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Principal curvatures in caller order. The ascending view is sorted().
class CurvatureVector {
 public:
  explicit CurvatureVector(std::vector<double> entries);
  CurvatureVector(std::initializer_list<double> entries);
  explicit CurvatureVector(const Vector& entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  Vector as_vector() const;

  /// Ascending permutation kappa_1 <= ... <= kappa_n.
  std::vector<double> sorted() const;
  double min() const;
  double max() const;
  double norm() const;

 private:
  std::vector<double> entries_;
};

enum class ConeKind {
  positive,  ///< Gamma_+ = { all kappa_i > 0 }
  garding,   ///< Gamma_k = { sigma_1, ..., sigma_k > 0 }; k = 1 is the half space
};

struct ConeSpec {
  ConeKind kind = ConeKind::positive;
  int order = 1;  ///< k for Garding cones, n for Gamma_+
  int dimension = 1;

  static ConeSpec positive(int n);
  static ConeSpec garding(int k, int n);

  std::string name() const;
};

struct ConeMembership {
  bool inside = false;
  double margin = 0.0;
};

/// Gamma_+: margin = min kappa_i. Gamma_k: margin = min_{j<=k} sigma_j(kappa).
ConeMembership cone_contains(const ConeSpec& cone, const CurvatureVector& kappa);

/// Elementary symmetric polynomial sigma_k, 0 <= k <= n.
double sigma_k(const CurvatureVector& kappa, int k);
double sigma_k(std::span<const double> values, int k);

enum class CurvatureFamily { sigma1, sigma_k_root, gauss_root, harmonic_mean, quotient };

/// Catalog entry for F. Immutable once built; F(1,...,1) is cached.
class CurvatureFunctionSpec {
 public:
  static CurvatureFunctionSpec sigma1(int n);
  static CurvatureFunctionSpec sigma_k_root(int k, int n);
  static CurvatureFunctionSpec gauss_root(int n);
  static CurvatureFunctionSpec harmonic_mean(int n);
  /// sigma_k / sigma_{k-1}, on Gamma_k.
  static CurvatureFunctionSpec quotient(int k, int n);

  /// Names: sigma1, sigma_k_root, gauss_root, harmonic_mean, quotient. A
  /// suffix ":k" (e.g. "quotient:3") overrides the k argument.
  static CurvatureFunctionSpec from_name(std::string_view name, int n, int k = 0);

  CurvatureFamily family() const noexcept { return family_; }
  int k() const noexcept { return k_; }
  int dimension() const noexcept { return n_; }
  const ConeSpec& cone() const noexcept { return cone_; }
  /// F(1,...,1).
  double unit_value() const noexcept { return unit_value_; }
  /// False only for sigma1, which does not vanish on the boundary of Gamma_+.
  bool boundary_vanishing() const noexcept { return family_ != CurvatureFamily::sigma1; }
  std::string name() const;

 private:
  CurvatureFunctionSpec(CurvatureFamily family, int k, int n, ConeSpec cone);

  CurvatureFamily family_;
  int k_;
  int n_;
  ConeSpec cone_;
  double unit_value_ = 0.0;
};

double evaluate(const CurvatureFunctionSpec& F, const CurvatureVector& kappa);
/// F_i = dF/dkappa_i in the order of kappa.
Vector gradient(const CurvatureFunctionSpec& F, const CurvatureVector& kappa);
/// d^2F / dkappa_i dkappa_j.
Matrix hessian(const CurvatureFunctionSpec& F, const CurvatureVector& kappa);

/// Induced metric g and second fundamental form h at one point.
struct SymmetricTensorPair {
  Matrix g;
  Matrix h;
};

/// Generalized eigen-decomposition of (h, g): ascending kappa and a
/// g-orthonormal frame (columns) with h e = kappa g e.
struct ShapeOperatorFrame {
  Vector kappa;
  Matrix frame;
};
ShapeOperatorFrame shape_operator_frame(const SymmetricTensorPair& pair);

/// Relative gap below which (F_i - F_j)/(kappa_i - kappa_j) is replaced by its limit.
inline constexpr double kCoalescenceTolerance = 1e-7;

/// F^{ij} = dF/dh_ij, contravariant, symmetric positive definite.
Matrix tensor_first_derivative(const CurvatureFunctionSpec& F, const SymmetricTensorPair& pair);

/// F^{ij,kl} eta_ij eta_kl in a frame with g = identity and h = diag(kappa).
double hessian_quadratic_form(const CurvatureFunctionSpec& F, const CurvatureVector& kappa,
                              const Matrix& eta);

/// F^{ij,kl} eta_ij eta_kl for a general pair: eta is rotated into the
/// g-orthonormal eigenframe before hessian_quadratic_form is applied.
double tensor_second_derivative_form(const CurvatureFunctionSpec& F,
                                     const SymmetricTensorPair& pair, const Matrix& eta);

struct LemmaBound {
  double lhs = 0.0;  ///< sum_{i!=j} (F_i - F_j)/(kappa_i - kappa_j) eta_ij^2
  double rhs = 0.0;  ///< 2/(kappa_n - kappa_1) sum_i (F_n - F_i) eta_ni^2
};

/// Both sides of the off-diagonal concavity bound. kappa must be ascending with
/// kappa_1 < kappa_n.
LemmaBound lemma_bound_pair(const CurvatureFunctionSpec& F, const CurvatureVector& kappa,
                            const Matrix& eta);

// ---------------------------------------------------------------------------
// Certification

struct CheckResult {
  std::string id;    ///< "a" ... "j"
  std::string name;
  bool applicable = true;
  bool passed = true;
  /// Smallest slack observed; negative means the check failed somewhere.
  double worst_margin = 0.0;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
};

struct CertificationReport {
  std::string function;
  int dimension = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult& check(std::string_view id) const;
};

/// Epsilon_1 used by the Case-1 curvature bound check (j).
inline constexpr double kCaseOneEpsilon = 0.1;

/// Runs checks (a)-(j) on `samples` seeded draws from the cone interior.
CertificationReport assumption_suite(const CurvatureFunctionSpec& F, std::size_t samples,
                                     std::uint64_t seed);

struct LemmaSweepResult {
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  /// min over samples of (rhs + tol*scale - lhs) / scale.
  double worst_margin = 0.0;
  /// max over n == 2 samples of |lhs - rhs| / scale (0 when none).
  double worst_two_dim_gap = 0.0;
  bool passed() const { return violations == 0; }
};

/// Random (kappa, eta) pairs with kappa_1 < kappa_n checked against the bound.
LemmaSweepResult lemma_sweep(const CurvatureFunctionSpec& F, std::size_t samples,
                             std::uint64_t seed);

}  // namespace weingarten
