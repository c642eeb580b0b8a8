#include "oracles.hpp"

#include "weingarten/errors.hpp"
#include "weingarten/symfunc.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace weingarten;

namespace {

std::string family_key(const CurvatureFunctionSpec& F) {
  switch (F.family()) {
    case CurvatureFamily::sigma1: return "sigma1";
    case CurvatureFamily::sigma_k_root: return "sigma_k_root";
    case CurvatureFamily::gauss_root: return "gauss_root";
    case CurvatureFamily::harmonic_mean: return "harmonic_mean";
    case CurvatureFamily::quotient: return "quotient";
  }
  return {};
}

std::vector<CurvatureFunctionSpec> catalog(int n) {
  std::vector<CurvatureFunctionSpec> out{CurvatureFunctionSpec::sigma1(n),
                                         CurvatureFunctionSpec::gauss_root(n),
                                         CurvatureFunctionSpec::harmonic_mean(n)};
  for (int k = 1; k <= n; ++k) {
    out.push_back(CurvatureFunctionSpec::sigma_k_root(k, n));
    out.push_back(CurvatureFunctionSpec::quotient(k, n));
  }
  return out;
}

std::vector<double> positive_sample(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_entry(std::log(0.2), std::log(5.0));
  std::vector<double> x(n);
  for (auto& v : x) v = std::exp(log_entry(rng));
  return x;
}

}  // namespace

TEST_CASE("sigma_k examples") {
  CHECK(sigma_k(CurvatureVector{1, 2, 3}, 2) == doctest::Approx(11.0));
  CHECK(sigma_k(CurvatureVector{1, 1, 1}, 3) == doctest::Approx(1.0));
  CHECK(sigma_k(CurvatureVector{2, 3}, 0) == 1.0);
  CHECK_THROWS_AS(sigma_k(CurvatureVector{2, 3}, 3), ArgumentError);
  CHECK_THROWS_AS(sigma_k(CurvatureVector{2, 3}, -1), ArgumentError);
}

TEST_CASE("sigma_k agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  for (int n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(n);
      for (auto& v : x) v = entry(rng);
      for (int k = 0; k <= n; ++k) {
        const double ref = oracle::sigma_subsets(x, k);
        CHECK(sigma_k(CurvatureVector(x), k) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("sigma_k handles large n without overflow of the recursion") {
  std::vector<double> ones(40, 1.0);
  CHECK(sigma_k(CurvatureVector(ones), 20) == doctest::Approx(137846528820.0).epsilon(1e-12));
}

TEST_CASE("curvature vector views") {
  CurvatureVector kappa{3.0, -1.0, 2.0};
  CHECK(kappa.sorted() == std::vector<double>{-1.0, 2.0, 3.0});
  CHECK(kappa.min() == -1.0);
  CHECK(kappa.max() == 3.0);
  CHECK(kappa.norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK_THROWS_AS(CurvatureVector(std::vector<double>{}), ArgumentError);
  CHECK_THROWS_AS(CurvatureVector({1.0, NAN}), ArgumentError);
}

TEST_CASE("cone membership examples") {
  auto a = cone_contains(ConeSpec::positive(3), {1, 2, 3});
  CHECK(a.inside);
  CHECK(a.margin == 1.0);
  auto b = cone_contains(ConeSpec::positive(2), {-1, 2});
  CHECK_FALSE(b.inside);
  CHECK(b.margin == -1.0);
  auto c = cone_contains(ConeSpec::garding(2, 2), {-0.1, 5});
  CHECK_FALSE(c.inside);
  CHECK(c.margin == doctest::Approx(-0.5));
  CHECK_THROWS_AS(cone_contains(ConeSpec::positive(2), {1, 2, 3}), ArgumentError);
}

TEST_CASE("cone membership is scale invariant and contains the positive cone") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto cone = ConeSpec::garding(k, n);
      for (int t = 0; t < 50; ++t) {
        auto x = positive_sample(n, rng);
        CHECK(cone_contains(cone, CurvatureVector(x)).inside);
        for (auto& v : x) v -= 1.0;
        const bool inside = cone_contains(cone, CurvatureVector(x)).inside;
        for (auto& v : x) v *= 7.5;
        CHECK(cone_contains(cone, CurvatureVector(x)).inside == inside);
      }
    }
  }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(CurvatureFunctionSpec::gauss_root(2), {4, 1}) == doctest::Approx(2.0));
  CHECK(evaluate(CurvatureFunctionSpec::harmonic_mean(2), {1, 2}) == doctest::Approx(2.0 / 3.0));
  CHECK(evaluate(CurvatureFunctionSpec::sigma1(3), {1, 1, 1}) == doctest::Approx(3.0));
}

TEST_CASE("evaluate rejects curvatures outside the cone") {
  const auto F = CurvatureFunctionSpec::gauss_root(2);
  try {
    evaluate(F, {-0.5, 2.0});
    FAIL("expected an admissibility error");
  } catch (const AdmissibilityError& e) {
    CHECK(e.margin() == doctest::Approx(-0.5));
  }
  CHECK_THROWS_AS(evaluate(F, {1.0, 2.0, 3.0}), ArgumentError);
}

TEST_CASE("catalog construction") {
  CHECK(CurvatureFunctionSpec::from_name("gauss_root", 3).unit_value() == doctest::Approx(1.0));
  CHECK(CurvatureFunctionSpec::from_name("harmonic_mean", 4).unit_value() == doctest::Approx(0.25));
  CHECK(CurvatureFunctionSpec::from_name("sigma_k_root:2", 3).k() == 2);
  CHECK(CurvatureFunctionSpec::from_name("quotient", 3).k() == 3);
  CHECK(CurvatureFunctionSpec::quotient(3, 3).cone().kind == ConeKind::positive);
  CHECK(CurvatureFunctionSpec::quotient(2, 3).cone().kind == ConeKind::garding);
  CHECK_FALSE(CurvatureFunctionSpec::sigma1(3).boundary_vanishing());
  CHECK(CurvatureFunctionSpec::gauss_root(3).boundary_vanishing());
  CHECK_THROWS_AS(CurvatureFunctionSpec::from_name("mean", 2), ArgumentError);
  CHECK_THROWS_AS(CurvatureFunctionSpec::sigma_k_root(4, 3), ArgumentError);
  CHECK_THROWS_AS(CurvatureFunctionSpec::from_name("sigma_k_root", 3), ArgumentError);
}

TEST_CASE("evaluate matches the defining formulas across the catalog") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& F : catalog(n)) {
      CAPTURE(F.name());
      for (int t = 0; t < 25; ++t) {
        const auto x = positive_sample(n, rng);
        CHECK(evaluate(F, CurvatureVector(x)) ==
              doctest::Approx(oracle::reference_F(family_key(F), F.k(), x)).epsilon(1e-12));
      }
      const std::vector<double> ones(n, 1.0);
      CHECK(F.unit_value() == doctest::Approx(oracle::reference_F(family_key(F), F.k(), ones)));
    }
  }
}

TEST_CASE("gradient examples") {
  const Vector g1 = gradient(CurvatureFunctionSpec::gauss_root(2), {1, 1});
  CHECK(g1[0] == doctest::Approx(0.5));
  CHECK(g1[1] == doctest::Approx(0.5));

  const Vector g2 = gradient(CurvatureFunctionSpec::harmonic_mean(2), {1, 2});
  CHECK(g2[0] == doctest::Approx(4.0 / 9.0));
  CHECK(g2[1] == doctest::Approx(1.0 / 9.0));
  const Vector fd = oracle::fd_gradient(
      [](const std::vector<double>& x) { return oracle::reference_F("harmonic_mean", 0, x); }, {1, 2});
  CHECK(fd[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-8));
  CHECK(fd[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-8));

  const Vector g3 = gradient(CurvatureFunctionSpec::sigma1(4), {0.3, 1.0, 2.0, 5.0});
  for (int i = 0; i < 4; ++i) CHECK(g3[i] == 1.0);
}

TEST_CASE("hessian examples") {
  const Matrix H = hessian(CurvatureFunctionSpec::gauss_root(2), {1, 1});
  CHECK(H(0, 0) == doctest::Approx(-0.25));
  CHECK(H(0, 1) == doctest::Approx(0.25));
  CHECK(H(1, 0) == doctest::Approx(0.25));
  CHECK(H(1, 1) == doctest::Approx(-0.25));
  CHECK(hessian(CurvatureFunctionSpec::sigma1(3), {1, 2, 3}).isZero(0.0));

  const Matrix Hh = hessian(CurvatureFunctionSpec::harmonic_mean(2), {1, 1});
  const Matrix fd = oracle::fd_hessian(
      [](const std::vector<double>& x) { return oracle::reference_F("harmonic_mean", 0, x); }, {1, 1});
  CHECK((Hh - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("gradient and hessian match finite differences across the catalog") {
  std::mt19937_64 rng(19);
  for (int n = 1; n <= 5; ++n) {
    for (const auto& F : catalog(n)) {
      CAPTURE(F.name());
      const auto key = family_key(F);
      const int k = F.k();
      auto f = [&](const std::vector<double>& x) { return oracle::reference_F(key, k, x); };
      for (int t = 0; t < 10; ++t) {
        const auto x = positive_sample(n, rng);
        const Vector g = gradient(F, CurvatureVector(x));
        const Vector gfd = oracle::fd_gradient(f, x);
        CHECK((g - gfd).cwiseAbs().maxCoeff() <= 1e-7 * std::max(1.0, g.cwiseAbs().maxCoeff()));
        const Matrix H = hessian(F, CurvatureVector(x));
        const Matrix Hfd = oracle::fd_hessian(f, x);
        CHECK((H - Hfd).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, H.cwiseAbs().maxCoeff()));
        CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, H.norm()));
      }
    }
  }
}

TEST_CASE("hessians at coalescent points match finite differences") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& F : catalog(n)) {
      CAPTURE(F.name());
      const auto key = family_key(F);
      const int k = F.k();
      auto f = [&](const std::vector<double>& x) { return oracle::reference_F(key, k, x); };
      std::vector<double> x(n, 1.5);
      x.back() = 2.5;
      const Matrix H = hessian(F, CurvatureVector(x));
      const Matrix Hfd = oracle::fd_hessian(f, x);
      CHECK((H - Hfd).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, H.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("tensor first derivative examples") {
  for (int n = 1; n <= 4; ++n) {
    Matrix g = Matrix::Identity(n, n) + 0.2 * Matrix::Ones(n, n);
    const Matrix Fij = tensor_first_derivative(CurvatureFunctionSpec::gauss_root(n), {g, g});
    CHECK((Fij - g.inverse() / n).cwiseAbs().maxCoeff() < 1e-13);
  }
  Matrix h(2, 2);
  h << 1, 0, 0, 2;
  const Matrix Fij =
      tensor_first_derivative(CurvatureFunctionSpec::sigma1(2), {Matrix::Identity(2, 2), h});
  CHECK((Fij - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("tensor first derivative matches finite differences of F(h)") {
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& F : catalog(n)) {
      CAPTURE(F.name());
      const auto key = family_key(F);
      const int k = F.k();
      for (int t = 0; t < 10; ++t) {
        const auto kappa = positive_sample(n, rng);
        const auto [g, h] = oracle::random_pair(kappa, rng);
        auto Fh = [&, g = g](const Matrix& hh) {
          return oracle::tensor_F(key, k, g, hh);
        };
        const Matrix Fij = tensor_first_derivative(F, {g, h});
        const Matrix fd = oracle::fd_tensor_gradient(Fh, h, 1e-6);
        CHECK((Fij - fd).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, Fij.cwiseAbs().maxCoeff()));
        CHECK((Fij - Fij.transpose()).cwiseAbs().maxCoeff() < 1e-12 * Fij.norm());
        Eigen::SelfAdjointEigenSolver<Matrix> spd(0.5 * (Fij + Fij.transpose()));
        CHECK(spd.eigenvalues().minCoeff() > 0.0);
      }
    }
  }
}

TEST_CASE("shape operator frame is g-orthonormal") {
  std::mt19937_64 rng(3);
  const auto [g, h] = oracle::random_pair({0.5, 1.0, 4.0}, rng);
  const auto frame = shape_operator_frame({g, h});
  CHECK((frame.frame.transpose() * g * frame.frame - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(frame.kappa[0] == doctest::Approx(0.5));
  CHECK(frame.kappa[2] == doctest::Approx(4.0));

  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(shape_operator_frame({bad, Matrix::Identity(2, 2)}), ArgumentError);
}

TEST_CASE("hessian quadratic form examples") {
  const auto gauss = CurvatureFunctionSpec::gauss_root(2);
  Matrix diag(2, 2);
  diag << 1, 0, 0, -1;
  CHECK(hessian_quadratic_form(gauss, {1, 1}, diag) == doctest::Approx(-1.0));
  Matrix off(2, 2);
  off << 0, 1, 1, 0;
  CHECK(hessian_quadratic_form(gauss, {1, 1}, off) == doctest::Approx(-1.0));

  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const Matrix eta = oracle::random_symmetric(3, rng);
    CHECK(hessian_quadratic_form(CurvatureFunctionSpec::sigma1(3), {0.5, 1, 2}, eta) ==
          doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("coalescence limit is continuous across the tolerance") {
  const auto F = CurvatureFunctionSpec::harmonic_mean(3);
  Matrix eta(3, 3);
  eta << 0.3, 0.7, -0.2, 0.7, -0.5, 0.4, -0.2, 0.4, 0.9;
  const double merged = hessian_quadratic_form(F, {1.0, 1.0, 2.0}, eta);
  const double split_below = hessian_quadratic_form(F, {1.0, 1.0 + 1e-9, 2.0}, eta);
  const double split_above = hessian_quadratic_form(F, {1.0, 1.0 + 1e-5, 2.0}, eta);
  CHECK(split_below == doctest::Approx(merged).epsilon(1e-8));
  CHECK(split_above == doctest::Approx(merged).epsilon(1e-4));
}

TEST_CASE("tensor second derivative form matches finite differences of F(h)") {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& F : catalog(n)) {
      CAPTURE(F.name());
      const auto key = family_key(F);
      const int k = F.k();
      for (int t = 0; t < 6; ++t) {
        auto kappa = positive_sample(n, rng);
        if (t % 2 == 1) kappa[1] = kappa[0];  // coalescent pair
        const auto [g, h] = oracle::random_pair(kappa, rng);
        const Matrix eta = oracle::random_symmetric(n, rng);
        auto Fh = [&, g = g](const Matrix& hh) {
          return oracle::tensor_F(key, k, g, hh);
        };
        const double form = tensor_second_derivative_form(F, {g, h}, eta);
        const double fd = oracle::fd_second_directional(Fh, h, eta, 3e-4);
        const double scale = std::max(std::abs(form), 1e-2 * evaluate(F, CurvatureVector(kappa)));
        CHECK(std::abs(form - fd) <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("lemma bound examples") {
  Matrix off(2, 2);
  off << 0, 1, 1, 0;
  const auto s = lemma_bound_pair(CurvatureFunctionSpec::sigma1(2), {1, 2}, off);
  CHECK(s.lhs == doctest::Approx(0.0).scale(1.0));
  CHECK(s.rhs == doctest::Approx(0.0).scale(1.0));

  const auto g = lemma_bound_pair(CurvatureFunctionSpec::gauss_root(2), {1, 2}, off);
  CHECK(g.lhs == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(g.rhs == doctest::Approx(-1.0 / std::sqrt(2.0)));

  const auto h = lemma_bound_pair(CurvatureFunctionSpec::harmonic_mean(2), {1, 2}, off);
  CHECK(h.lhs == doctest::Approx(-2.0 / 3.0));
  CHECK(h.rhs == doctest::Approx(-2.0 / 3.0));

  CHECK_THROWS_AS(lemma_bound_pair(CurvatureFunctionSpec::gauss_root(2), {1, 1}, off),
                  DegenerateInputError);
  CHECK_THROWS_AS(lemma_bound_pair(CurvatureFunctionSpec::gauss_root(2), {2, 1}, off),
                  ArgumentError);
}

TEST_CASE("lemma bound holds on random samples") {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 5; ++n) {
    for (const auto& F : catalog(n)) {
      for (int t = 0; t < 40; ++t) {
        auto x = positive_sample(n, rng);
        std::sort(x.begin(), x.end());
        if (x.front() == x.back()) continue;
        const Matrix eta = oracle::random_symmetric(n, rng);
        const auto b = lemma_bound_pair(F, CurvatureVector(x), eta);
        const double scale =
            eta.squaredNorm() * evaluate(F, CurvatureVector(x)) / CurvatureVector(x).norm();
        CHECK(b.lhs <= b.rhs + 1e-9 * scale);
        if (n == 2) CHECK(std::abs(b.lhs - b.rhs) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("assumption suite verdicts") {
  const auto gauss = assumption_suite(CurvatureFunctionSpec::gauss_root(3), 10000, 42);
  CHECK(gauss.all_passed());
  CHECK(gauss.checks.size() == 10);

  const auto s1 = assumption_suite(CurvatureFunctionSpec::sigma1(3), 2000, 42);
  CHECK_FALSE(s1.all_passed());
  CHECK_FALSE(s1.check("g").passed);
  for (const auto& c : s1.checks)
    if (c.id != "g") CHECK_MESSAGE(c.passed, c.id);

  CHECK(assumption_suite(CurvatureFunctionSpec::harmonic_mean(2), 10000, 42).all_passed());
  CHECK(assumption_suite(CurvatureFunctionSpec::sigma_k_root(2, 3), 2000, 1).all_passed());
  CHECK(assumption_suite(CurvatureFunctionSpec::quotient(2, 4), 2000, 1).all_passed());
  CHECK_THROWS_AS(gauss.check("z"), ArgumentError);
}

TEST_CASE("assumption suite is reproducible") {
  const auto a = assumption_suite(CurvatureFunctionSpec::harmonic_mean(3), 500, 9);
  const auto b = assumption_suite(CurvatureFunctionSpec::harmonic_mean(3), 500, 9);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    CHECK(a.checks[i].worst_margin == b.checks[i].worst_margin);
}

TEST_CASE("lemma sweep") {
  CHECK(lemma_sweep(CurvatureFunctionSpec::gauss_root(2), 2000, 3).passed());
  CHECK(lemma_sweep(CurvatureFunctionSpec::gauss_root(2), 2000, 3).worst_two_dim_gap <= 1e-12);
  CHECK(lemma_sweep(CurvatureFunctionSpec::quotient(3, 5), 2000, 3).passed());
  CHECK(lemma_sweep(CurvatureFunctionSpec::gauss_root(1), 10, 3).evaluated == 0);
}
