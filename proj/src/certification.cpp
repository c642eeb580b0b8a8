#include "weingarten/errors.hpp"
#include "weingarten/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace weingarten {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kConcavityTol = 1e-9;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double log_uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
    return std::exp(dist(rng_));
  }

  /// Entries log-uniform in [1e-2, 1e2]; always inside Gamma_+, hence inside
  /// every catalog cone.
  std::vector<double> curvatures(int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = log_uniform(1e-2, 1e2);
    return out;
  }

  Matrix symmetric(int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix eta(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) eta(i, j) = eta(j, i) = dist(rng_);
    return eta;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct Tally {
  CheckResult result;

  Tally(std::string id, std::string name) {
    result.id = std::move(id);
    result.name = std::move(name);
    result.worst_margin = std::numeric_limits<double>::infinity();
  }

  /// `ok` decides pass/fail; `margin` is the slack reported.
  void add(double margin, bool ok) {
    ++result.evaluated;
    result.worst_margin = std::min(result.worst_margin, margin);
    if (!ok) {
      ++result.failures;
      result.passed = false;
    }
  }

  void add(double margin) { add(margin, margin >= 0.0); }

  CheckResult finish() {
    if (result.evaluated == 0) {
      result.applicable = false;
      result.worst_margin = 0.0;
    }
    return result;
  }
};

double relative_error(double a, double b) {
  const double denom = std::abs(b);
  return denom == 0.0 ? std::abs(a - b) : std::abs(a - b) / denom;
}

/// Approach the boundary of the cone along (1, ..., 1, x0 + eps), where x0 is
/// the unique boundary value of the last entry.
CheckResult boundary_check(const CurvatureFunctionSpec& F) {
  Tally tally("g", "boundary vanishing");
  const int n = F.dimension();
  const int k = F.cone().order;
  const double x0 = -double(n - k) / double(k);
  std::vector<double> values;
  for (int e = 1; e <= 8; ++e) {
    std::vector<double> kappa(static_cast<std::size_t>(n), 1.0);
    kappa.back() = x0 + std::pow(10.0, -e);
    values.push_back(evaluate(F, CurvatureVector(kappa)));
  }
  // Strictly decreasing as eps shrinks.
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double step = (values[i - 1] - values[i]) / F.unit_value();
    tally.add(step, step > 0.0);
  }
  // A positive limit shows up as a last-decade ratio tending to one.
  const double ratio = values.back() / values[values.size() - 2];
  tally.add((1.0 - 1e-3) - ratio);
  return tally.finish();
}

}  // namespace

bool CertificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& CertificationReport::check(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw ArgumentError("no check with id '" + std::string(id) + "'");
}

CertificationReport assumption_suite(const CurvatureFunctionSpec& F, std::size_t samples,
                                     std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("assumption_suite needs at least one sample");
  const int n = F.dimension();
  const double unit = F.unit_value();
  Sampler sampler(seed);

  Tally symmetry("a", "permutation symmetry");
  Tally homogeneity("b", "degree-1 homogeneity");
  Tally euler("c", "Euler identity");
  Tally monotone("d", "monotonicity F_i > 0");
  Tally ordering("e", "gradient ordering F_1 >= ... >= F_n");
  Tally concavity("f", "concavity of the tensor Hessian form");
  Tally upper("h", "F <= F(1,...,1) kappa_n");
  Tally trace("i", "sum F_i >= F(1,...,1)");
  Tally case_one("j", "case-1 bound sum F_i kappa_i^2 >= (1/n) sum F_i eps1^2 kappa_n^2");

  for (std::size_t s = 0; s < samples; ++s) {
    auto raw = sampler.curvatures(n);
    std::sort(raw.begin(), raw.end());
    const CurvatureVector kappa(raw);
    const double value = evaluate(F, kappa);
    const Vector grad = gradient(F, kappa);

    auto permuted = raw;
    std::shuffle(permuted.begin(), permuted.end(), sampler.engine());
    symmetry.add(kRelTol - relative_error(evaluate(F, CurvatureVector(permuted)), value));

    const double t = sampler.log_uniform(1e-3, 1e3);
    std::vector<double> scaled = raw;
    for (auto& x : scaled) x *= t;
    homogeneity.add(kRelTol - relative_error(evaluate(F, CurvatureVector(scaled)), t * value));

    double euler_sum = 0.0;
    for (int i = 0; i < n; ++i) euler_sum += grad[i] * raw[static_cast<std::size_t>(i)];
    euler.add(kRelTol - relative_error(euler_sum, value));

    monotone.add(grad.minCoeff(), grad.minCoeff() > 0.0);

    double order_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) order_slack = std::min(order_slack, grad[i] - grad[i + 1]);
    if (n > 1) ordering.add(order_slack);

    const Matrix eta = sampler.symmetric(n);
    const double scale = eta.squaredNorm() * std::abs(value) / kappa.norm();
    const double form = hessian_quadratic_form(F, kappa, eta);
    concavity.add((kConcavityTol * scale - form) / scale);

    const double kappa_n = raw.back();
    const double bound = unit * kappa_n;
    upper.add((bound * (1.0 + kRelTol) - value) / bound);

    const double grad_sum = grad.sum();
    trace.add((grad_sum - unit * (1.0 - kRelTol)) / unit);

    if (std::abs(raw.front()) >= kCaseOneEpsilon * kappa_n) {
      double lhs = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = raw[static_cast<std::size_t>(i)];
        lhs += grad[i] * x * x;
      }
      const double rhs = grad_sum * kCaseOneEpsilon * kCaseOneEpsilon * kappa_n * kappa_n / n;
      case_one.add((lhs - rhs * (1.0 - kRelTol)) / rhs);
    }
  }

  CertificationReport report;
  report.function = F.name();
  report.dimension = n;
  report.samples = samples;
  report.seed = seed;
  report.checks = {symmetry.finish(), homogeneity.finish(), euler.finish(),
                   monotone.finish(), ordering.finish(),    concavity.finish(),
                   boundary_check(F), upper.finish(),       trace.finish(),
                   case_one.finish()};
  return report;
}

LemmaSweepResult lemma_sweep(const CurvatureFunctionSpec& F, std::size_t samples,
                             std::uint64_t seed) {
  LemmaSweepResult out;
  const int n = F.dimension();
  if (n < 2) return out;
  Sampler sampler(seed);
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    auto raw = sampler.curvatures(n);
    std::sort(raw.begin(), raw.end());
    if (!(raw.front() < raw.back())) continue;
    const CurvatureVector kappa(raw);
    const Matrix eta = sampler.symmetric(n);
    const double scale = eta.squaredNorm() * std::abs(evaluate(F, kappa)) / kappa.norm();
    const auto bound = lemma_bound_pair(F, kappa, eta);
    ++out.evaluated;
    const double margin = (bound.rhs + kConcavityTol * scale - bound.lhs) / scale;
    out.worst_margin = std::min(out.worst_margin, margin);
    bool ok = margin >= 0.0;
    if (n == 2) {
      const double gap = std::abs(bound.lhs - bound.rhs) / scale;
      out.worst_two_dim_gap = std::max(out.worst_two_dim_gap, gap);
      ok = ok && gap <= kRelTol;
    }
    if (!ok) ++out.violations;
  }
  if (out.evaluated == 0) out.worst_margin = 0.0;
  return out;
}

}  // namespace weingarten
