#include "weingarten/symfunc.hpp"

#include "weingarten/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace weingarten {

namespace {

void require_finite(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("curvature vector must have at least one entry");
  for (double x : values) {
    if (!std::isfinite(x)) throw ArgumentError("curvature vector has a non-finite entry");
  }
}

/// All elementary symmetric polynomials sigma_0..sigma_m of `values` with up
/// to two indices removed (skip < 0 means none). Product expansion
/// prod (1 + x_i t), updated in place from the top degree down.
std::vector<double> elementary(std::span<const double> values, int skip_a = -1,
                               int skip_b = -1) {
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (static_cast<int>(i) == skip_a || static_cast<int>(i) == skip_b) continue;
    ++used;
    for (std::size_t j = used; j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e;
}

double sigma_at(const std::vector<double>& e, int k) {
  if (k < 0 || k >= static_cast<int>(e.size())) return 0.0;
  return e[static_cast<std::size_t>(k)];
}

void require_dimension(const CurvatureFunctionSpec& F, const CurvatureVector& kappa) {
  if (static_cast<int>(kappa.size()) != F.dimension()) {
    std::ostringstream msg;
    msg << F.name() << " expects " << F.dimension() << " principal curvatures, got "
        << kappa.size();
    throw ArgumentError(msg.str());
  }
}

void require_admissible(const CurvatureFunctionSpec& F, const CurvatureVector& kappa) {
  require_dimension(F, kappa);
  const auto membership = cone_contains(F.cone(), kappa);
  if (!membership.inside) {
    std::ostringstream msg;
    msg << "principal curvatures outside " << F.cone().name() << " (margin "
        << membership.margin << ")";
    throw AdmissibilityError(msg.str(), membership.margin);
  }
}

double evaluate_unchecked(const CurvatureFunctionSpec& F, std::span<const double> x) {
  const int n = F.dimension();
  switch (F.family()) {
    case CurvatureFamily::sigma1:
      return std::accumulate(x.begin(), x.end(), 0.0);
    case CurvatureFamily::sigma_k_root: {
      const double s = sigma_k(x, F.k());
      return F.k() == 1 ? s : std::pow(s, 1.0 / F.k());
    }
    case CurvatureFamily::gauss_root: {
      double log_sum = 0.0;
      for (double v : x) log_sum += std::log(v);
      return std::exp(log_sum / n);
    }
    case CurvatureFamily::harmonic_mean: {
      double s = 0.0;
      for (double v : x) s += 1.0 / v;
      return 1.0 / s;
    }
    case CurvatureFamily::quotient: {
      const auto e = elementary(x);
      return sigma_at(e, F.k()) / sigma_at(e, F.k() - 1);
    }
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------

CurvatureVector::CurvatureVector(std::vector<double> entries) : entries_(std::move(entries)) {
  require_finite(entries_);
}

CurvatureVector::CurvatureVector(std::initializer_list<double> entries)
    : CurvatureVector(std::vector<double>(entries)) {}

CurvatureVector::CurvatureVector(const Vector& entries)
    : CurvatureVector(std::vector<double>(entries.data(), entries.data() + entries.size())) {}

Vector CurvatureVector::as_vector() const {
  return Eigen::Map<const Vector>(entries_.data(), static_cast<Eigen::Index>(entries_.size()));
}

std::vector<double> CurvatureVector::sorted() const {
  auto out = entries_;
  std::sort(out.begin(), out.end());
  return out;
}

double CurvatureVector::min() const { return *std::min_element(entries_.begin(), entries_.end()); }
double CurvatureVector::max() const { return *std::max_element(entries_.begin(), entries_.end()); }

double CurvatureVector::norm() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

ConeSpec ConeSpec::positive(int n) {
  if (n < 1) throw ArgumentError("cone dimension must be at least 1");
  return ConeSpec{ConeKind::positive, n, n};
}

ConeSpec ConeSpec::garding(int k, int n) {
  if (n < 1) throw ArgumentError("cone dimension must be at least 1");
  if (k < 1 || k > n) throw ArgumentError("Garding cone order must satisfy 1 <= k <= n");
  return ConeSpec{ConeKind::garding, k, n};
}

std::string ConeSpec::name() const {
  std::ostringstream out;
  if (kind == ConeKind::positive)
    out << "Gamma_+";
  else
    out << "Gamma_" << order;
  out << " (n=" << dimension << ")";
  return out.str();
}

ConeMembership cone_contains(const ConeSpec& cone, const CurvatureVector& kappa) {
  if (static_cast<int>(kappa.size()) != cone.dimension)
    throw ArgumentError("curvature vector dimension does not match the cone");
  double margin = 0.0;
  if (cone.kind == ConeKind::positive) {
    margin = kappa.min();
  } else {
    const auto e = elementary(kappa.entries());
    margin = e[1];
    for (int j = 2; j <= cone.order; ++j) margin = std::min(margin, e[static_cast<std::size_t>(j)]);
  }
  return {margin > 0.0, margin};
}

double sigma_k(std::span<const double> values, int k) {
  if (k < 0 || k > static_cast<int>(values.size()))
    throw ArgumentError("sigma_k requires 0 <= k <= n");
  return elementary(values)[static_cast<std::size_t>(k)];
}

double sigma_k(const CurvatureVector& kappa, int k) { return sigma_k(kappa.entries(), k); }

// ---------------------------------------------------------------------------

CurvatureFunctionSpec::CurvatureFunctionSpec(CurvatureFamily family, int k, int n, ConeSpec cone)
    : family_(family), k_(k), n_(n), cone_(cone) {
  const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  unit_value_ = evaluate_unchecked(*this, ones);
}

CurvatureFunctionSpec CurvatureFunctionSpec::sigma1(int n) {
  return {CurvatureFamily::sigma1, 1, n, ConeSpec::positive(n)};
}

CurvatureFunctionSpec CurvatureFunctionSpec::sigma_k_root(int k, int n) {
  return {CurvatureFamily::sigma_k_root, k, n, ConeSpec::garding(k, n)};
}

CurvatureFunctionSpec CurvatureFunctionSpec::gauss_root(int n) {
  return {CurvatureFamily::gauss_root, n, n, ConeSpec::positive(n)};
}

CurvatureFunctionSpec CurvatureFunctionSpec::harmonic_mean(int n) {
  return {CurvatureFamily::harmonic_mean, n, n, ConeSpec::positive(n)};
}

CurvatureFunctionSpec CurvatureFunctionSpec::quotient(int k, int n) {
  const ConeSpec cone = (k == n) ? ConeSpec::positive(n) : ConeSpec::garding(k, n);
  return {CurvatureFamily::quotient, k, n, cone};
}

CurvatureFunctionSpec CurvatureFunctionSpec::from_name(std::string_view name, int n, int k) {
  std::string base(name);
  if (const auto colon = base.find(':'); colon != std::string::npos) {
    try {
      k = std::stoi(base.substr(colon + 1));
    } catch (const std::exception&) {
      throw ArgumentError("malformed order suffix in curvature function name '" + base + "'");
    }
    base = base.substr(0, colon);
  }
  if (n < 1) throw ArgumentError("dimension must be at least 1");
  if (base == "sigma1") return sigma1(n);
  if (base == "gauss_root") return gauss_root(n);
  if (base == "harmonic_mean") return harmonic_mean(n);
  if (base == "sigma_k_root" || base == "quotient") {
    if (base == "quotient" && k == 0) k = n;
    if (k < 1 || k > n) throw ArgumentError(base + " requires 1 <= k <= n");
    return base == "quotient" ? quotient(k, n) : sigma_k_root(k, n);
  }
  throw ArgumentError("unknown curvature function '" + base + "'");
}

std::string CurvatureFunctionSpec::name() const {
  std::ostringstream out;
  switch (family_) {
    case CurvatureFamily::sigma1: out << "sigma1"; break;
    case CurvatureFamily::sigma_k_root: out << "sigma_k_root(" << k_ << ")"; break;
    case CurvatureFamily::gauss_root: out << "gauss_root"; break;
    case CurvatureFamily::harmonic_mean: out << "harmonic_mean"; break;
    case CurvatureFamily::quotient: out << "quotient(" << k_ << ")"; break;
  }
  out << "[n=" << n_ << "]";
  return out.str();
}

// ---------------------------------------------------------------------------

double evaluate(const CurvatureFunctionSpec& F, const CurvatureVector& kappa) {
  require_admissible(F, kappa);
  return evaluate_unchecked(F, kappa.entries());
}

Vector gradient(const CurvatureFunctionSpec& F, const CurvatureVector& kappa) {
  require_admissible(F, kappa);
  const auto x = kappa.entries();
  const int n = F.dimension();
  const int k = F.k();
  Vector grad(n);
  switch (F.family()) {
    case CurvatureFamily::sigma1:
      grad.setOnes();
      break;
    case CurvatureFamily::sigma_k_root: {
      const double s = sigma_k(x, k);
      const double factor = std::pow(s, 1.0 / k - 1.0) / k;
      for (int i = 0; i < n; ++i) grad[i] = factor * sigma_at(elementary(x, i), k - 1);
      break;
    }
    case CurvatureFamily::gauss_root: {
      const double value = evaluate_unchecked(F, x);
      for (int i = 0; i < n; ++i) grad[i] = value / (n * x[static_cast<std::size_t>(i)]);
      break;
    }
    case CurvatureFamily::harmonic_mean: {
      const double value = evaluate_unchecked(F, x);
      for (int i = 0; i < n; ++i) {
        const double ratio = value / x[static_cast<std::size_t>(i)];
        grad[i] = ratio * ratio;
      }
      break;
    }
    case CurvatureFamily::quotient: {
      const auto e = elementary(x);
      const double a = sigma_at(e, k);
      const double b = sigma_at(e, k - 1);
      for (int i = 0; i < n; ++i) {
        const auto ei = elementary(x, i);
        const double ai = sigma_at(ei, k - 1);
        const double bi = sigma_at(ei, k - 2);
        grad[i] = (ai * b - a * bi) / (b * b);
      }
      break;
    }
  }
  return grad;
}

Matrix hessian(const CurvatureFunctionSpec& F, const CurvatureVector& kappa) {
  require_admissible(F, kappa);
  const auto x = kappa.entries();
  const int n = F.dimension();
  const int k = F.k();
  Matrix hess = Matrix::Zero(n, n);
  auto at = [&](int i) { return x[static_cast<std::size_t>(i)]; };
  switch (F.family()) {
    case CurvatureFamily::sigma1:
      break;
    case CurvatureFamily::sigma_k_root: {
      const double s = sigma_k(x, k);
      const double p = 1.0 / k;
      Vector si(n);
      for (int i = 0; i < n; ++i) si[i] = sigma_at(elementary(x, i), k - 1);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double sij = (i == j) ? 0.0 : sigma_at(elementary(x, i, j), k - 2);
          hess(i, j) = p * (p - 1.0) * std::pow(s, p - 2.0) * si[i] * si[j] +
                       p * std::pow(s, p - 1.0) * sij;
        }
      }
      break;
    }
    case CurvatureFamily::gauss_root: {
      const double value = evaluate_unchecked(F, x);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) hess(i, j) = value / (double(n) * n * at(i) * at(j));
        hess(i, i) -= value / (n * at(i) * at(i));
      }
      break;
    }
    case CurvatureFamily::harmonic_mean: {
      const double value = evaluate_unchecked(F, x);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
          hess(i, j) = 2.0 * value * value * value / (at(i) * at(i) * at(j) * at(j));
        hess(i, i) -= 2.0 * value * value / (at(i) * at(i) * at(i));
      }
      break;
    }
    case CurvatureFamily::quotient: {
      const auto e = elementary(x);
      const double a = sigma_at(e, k);
      const double b = sigma_at(e, k - 1);
      Vector ai(n), bi(n);
      for (int i = 0; i < n; ++i) {
        const auto ei = elementary(x, i);
        ai[i] = sigma_at(ei, k - 1);
        bi[i] = sigma_at(ei, k - 2);
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double aij = 0.0, bij = 0.0;
          if (i != j) {
            const auto eij = elementary(x, i, j);
            aij = sigma_at(eij, k - 2);
            bij = sigma_at(eij, k - 3);
          }
          hess(i, j) = aij / b - (ai[i] * bi[j] + ai[j] * bi[i]) / (b * b) - a * bij / (b * b) +
                       2.0 * a * bi[i] * bi[j] / (b * b * b);
        }
      }
      break;
    }
  }
  return hess;
}

// ---------------------------------------------------------------------------

ShapeOperatorFrame shape_operator_frame(const SymmetricTensorPair& pair) {
  const auto n = pair.g.rows();
  if (n == 0 || pair.g.cols() != n || pair.h.rows() != n || pair.h.cols() != n)
    throw ArgumentError("g and h must be square matrices of equal size");
  Eigen::LLT<Matrix> llt(pair.g);
  if (llt.info() != Eigen::Success) throw ArgumentError("metric g is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(pair.h, pair.g);
  if (solver.info() != Eigen::Success)
    throw NumericalError("generalized eigen-decomposition of (h, g) failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix tensor_first_derivative(const CurvatureFunctionSpec& F, const SymmetricTensorPair& pair) {
  const auto frame = shape_operator_frame(pair);
  const Vector grad = gradient(F, CurvatureVector(frame.kappa));
  return frame.frame * grad.asDiagonal() * frame.frame.transpose();
}

double hessian_quadratic_form(const CurvatureFunctionSpec& F, const CurvatureVector& kappa,
                              const Matrix& eta) {
  const int n = F.dimension();
  if (eta.rows() != n || eta.cols() != n) throw ArgumentError("eta must be an n x n matrix");
  const Vector grad = gradient(F, kappa);
  const Matrix hess = hessian(F, kappa);
  const double coalesce = kCoalescenceTolerance * std::max(1.0, kappa.norm());

  double form = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) form += hess(i, j) * eta(i, i) * eta(j, j);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gap = kappa[static_cast<std::size_t>(i)] - kappa[static_cast<std::size_t>(j)];
      const double divided =
          std::abs(gap) < coalesce ? hess(i, i) - hess(i, j) : (grad[i] - grad[j]) / gap;
      form += divided * eta(i, j) * eta(i, j);
    }
  }
  return form;
}

double tensor_second_derivative_form(const CurvatureFunctionSpec& F,
                                     const SymmetricTensorPair& pair, const Matrix& eta) {
  const auto frame = shape_operator_frame(pair);
  const Matrix rotated = frame.frame.transpose() * eta * frame.frame;
  return hessian_quadratic_form(F, CurvatureVector(frame.kappa), rotated);
}

LemmaBound lemma_bound_pair(const CurvatureFunctionSpec& F, const CurvatureVector& kappa,
                            const Matrix& eta) {
  const int n = F.dimension();
  require_dimension(F, kappa);
  if (eta.rows() != n || eta.cols() != n) throw ArgumentError("eta must be an n x n matrix");
  if (!std::is_sorted(kappa.entries().begin(), kappa.entries().end()))
    throw ArgumentError("lemma_bound_pair expects ascending principal curvatures");
  const double lo = kappa[0];
  const double hi = kappa[static_cast<std::size_t>(n - 1)];
  if (!(lo < hi)) throw DegenerateInputError("bound undefined for kappa_1 == kappa_n");

  const Vector grad = gradient(F, kappa);
  const Matrix hess = hessian(F, kappa);
  const double coalesce = kCoalescenceTolerance * std::max(1.0, kappa.norm());

  LemmaBound out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gap = kappa[static_cast<std::size_t>(i)] - kappa[static_cast<std::size_t>(j)];
      const double divided =
          std::abs(gap) < coalesce ? hess(i, i) - hess(i, j) : (grad[i] - grad[j]) / gap;
      out.lhs += divided * eta(i, j) * eta(i, j);
    }
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += (grad[n - 1] - grad[i]) * eta(n - 1, i) * eta(n - 1, i);
  out.rhs = 2.0 / (hi - lo) * sum;
  return out;
}

}  // namespace weingarten
