#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "seglab/generators.hpp"
#include "seglab/problem.hpp"
#include "seglab/rng.hpp"

using namespace seglab;
using seglab::testing::finite_difference_saddle_gradient;
using seglab::testing::random_vector;

namespace {

Vector point2(double x, double y) {
  Vector z(2);
  z << x, y;
  return z;
}

}  // namespace

TEST_CASE("component gradient matches the divergence example by hand") {
  const auto problem = divergence_example(2.0);
  const Vector g = component_gradient(problem, 0, point2(1.0, 0.0));
  CHECK(g[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(-1.0).epsilon(1e-14));

  const Vector full = full_gradient(problem, point2(1.0, 0.0));
  CHECK(full[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(full[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("affine map through the origin vanishes without linear terms") {
  const auto problem = divergence_example(1.5);
  CHECK(component_gradient(problem, 1, point2(0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("gradients agree with central finite differences") {
  Rng rng(505);
  const auto problem = gen_monotone(17, 4, 3, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const int i = static_cast<int>(rng.below(6));
    const Vector z = random_vector(rng, problem.dim());
    const Vector analytic = component_gradient(problem, i, z);
    const Vector numeric =
        finite_difference_saddle_gradient(problem.component(i), z);
    CHECK((numeric - analytic).norm() <= 1e-6 * analytic.norm());
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const auto problem = divergence_example(2.0);
  Vector bad(3);
  bad.setZero();
  CHECK_THROWS_AS((void)component_gradient(problem, 0, bad),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)full_gradient(problem, bad), std::invalid_argument);
  CHECK_THROWS_AS((void)problem.component(2), std::invalid_argument);
}

TEST_CASE("asymmetric blocks are rejected at construction") {
  Matrix a(2, 2);
  a << 1.0, 0.5, 0.0, 1.0;  // asymmetric beyond 1e-12
  CHECK_THROWS_AS(QuadraticComponent(a, Matrix::Zero(2, 1), Matrix::Ones(1, 1),
                                     Vector::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("full gradient equals the mean of component gradients") {
  Rng rng(8);
  const auto problem = gen_strongly_monotone(5, 3, 4, 7);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector z = random_vector(rng, problem.dim());
    Vector mean = Vector::Zero(problem.dim());
    for (int i = 0; i < problem.size(); ++i) {
      mean += component_gradient(problem, i, z);
    }
    mean /= static_cast<double>(problem.size());
    CHECK((mean - full_gradient(problem, z)).norm() <=
          1e-12 * (1.0 + mean.norm()));
  }
}

TEST_CASE("affine consistency of component maps") {
  Rng rng(9);
  const auto problem = gen_monotone(2, 3, 3, 4);
  const Vector origin = Vector::Zero(problem.dim());
  for (int trial = 0; trial < 20; ++trial) {
    const int i = static_cast<int>(rng.below(4));
    const Vector z = random_vector(rng, problem.dim());
    const Vector via_map = problem.component(i).saddle_matrix() * z;
    const Vector via_gradient = component_gradient(problem, i, z) -
                                component_gradient(problem, i, origin);
    CHECK((via_map - via_gradient).norm() <= 1e-12 * (1.0 + via_map.norm()));
  }
}

TEST_CASE("spectral report on the counterexamples") {
  const double L = 2.0;
  const auto bilinear = divergence_example(L);
  const auto report = spectral_report(bilinear);
  CHECK(std::abs(report.strong_monotonicity_mu) <= 1e-12);
  CHECK(report.smoothness_L <= L + 1e-9);
  CHECK(report.smoothness_L == doctest::Approx(L).epsilon(1e-12));
  CHECK(report.hessian_lipschitz_M == 0.0);

  const auto lower = rr_lower_bound_example(4.0, 1.5, 0.3, 6, RrKind::Seg);
  CHECK(spectral_report(lower).strong_monotonicity_mu ==
        doctest::Approx(1.5).epsilon(1e-12));
  const auto lower_sgda =
      rr_lower_bound_example(4.0, 1.5, 0.3, 6, RrKind::Sgda);
  CHECK(spectral_report(lower_sgda).strong_monotonicity_mu ==
        doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("variance bound holds with equality on the divergence example") {
  const double L = 3.0;
  const auto problem = divergence_example(L);
  const VarianceParams params{1.0, 0.0};
  CHECK(verify_variance_bound(problem, params, 200, 5.0, 99) <= 1e-12);
  // (rho, sigma) = (1, 0) holds with equality: both sides match pointwise.
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 2);
    double dev = 0.0;
    for (int i = 0; i < 2; ++i) {
      dev += (component_gradient(problem, i, z) - full_gradient(problem, z))
                 .squaredNorm();
    }
    dev /= 2.0;
    const double rhs = full_gradient(problem, z).squaredNorm();
    CHECK(dev == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("variance of the lower-bound instance is exactly sigma^2") {
  const double sigma = 0.7;
  const auto problem = rr_lower_bound_example(2.0, 1.0, sigma, 4, RrKind::Seg);
  CHECK(verify_variance_bound(problem, {0.0, sigma}, 100, 3.0, 7) <= 1e-12);
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 3);
    for (int i = 0; i < problem.size(); ++i) {
      const double dev =
          (component_gradient(problem, i, z) - full_gradient(problem, z))
              .squaredNorm();
      CHECK(dev == doctest::Approx(sigma * sigma).epsilon(1e-12));
    }
  }
}

TEST_CASE("sgda lower-bound instance satisfies the (1, sigma) bound") {
  const double sigma = 0.5;
  const auto problem =
      rr_lower_bound_example(2.0, 1.0, sigma, 4, RrKind::Sgda);
  CHECK(verify_variance_bound(problem, {1.0, sigma}, 200, 4.0, 13) <= 1e-12);
}

TEST_CASE("single-component problems have zero variance") {
  const auto problem = gen_strongly_monotone(3, 2, 2, 1);
  CHECK(verify_variance_bound(problem, {0.0, 0.0}, 50, 2.0, 1) == 0.0);
}

TEST_CASE("variance bound argument validation") {
  const auto problem = divergence_example(1.0);
  CHECK_THROWS_AS(
      (void)verify_variance_bound(problem, {-1.0, 0.0}, 10, 1.0, 1),
      std::invalid_argument);
  CHECK_THROWS_AS((void)verify_variance_bound(problem, {0.0, 0.0}, 0, 1.0, 1),
                  std::invalid_argument);
}

TEST_CASE("equilibria of the counterexamples sit at the origin") {
  CHECK(equilibrium(divergence_example(2.0)).norm() == 0.0);
  CHECK(equilibrium(variance_floor_example(1.0, 0.5)).norm() <= 1e-12);
  CHECK(equilibrium(rr_lower_bound_example(2.0, 1.0, 1.0, 4, RrKind::Seg))
            .norm() <= 1e-12);
}

TEST_CASE("equilibrium solves against an independent QR oracle") {
  const auto problem = gen_strongly_monotone(21, 4, 4, 6);
  const Vector z_star = equilibrium(problem);
  CHECK(full_gradient(problem, z_star).norm() <=
        1e-9 * (1.0 + problem.full_offset().norm()));
  const Vector oracle = problem.full_matrix().colPivHouseholderQr().solve(
      Vector(-problem.full_offset()));
  CHECK((z_star - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
}

TEST_CASE("singular maps: zero offset returns the origin, otherwise error") {
  const Matrix zero = Matrix::Zero(1, 1);
  {
    std::vector<QuadraticComponent> comps;
    comps.emplace_back(zero, zero, zero, Vector::Zero(2));
    const FiniteSumProblem degenerate(std::move(comps));
    CHECK(equilibrium(degenerate).norm() == 0.0);
  }
  {
    Vector t(2);
    t << 1.0, 0.0;
    std::vector<QuadraticComponent> comps;
    comps.emplace_back(zero, zero, zero, t);
    const FiniteSumProblem inconsistent(std::move(comps));
    CHECK_THROWS_AS((void)equilibrium(inconsistent), NoEquilibriumError);
  }
}

TEST_CASE("divergence example certificates") {
  const double L = 2.0;
  const auto problem = divergence_example(L);
  for (int i = 0; i < 2; ++i) {
    const Matrix& g = problem.component(i).saddle_matrix();
    CHECK((g * g).cwiseAbs().maxCoeff() == 0.0);  // nilpotent, exactly
    CHECK(spectral_norm(g) <= L + 1e-9);
  }
  Matrix expected_full(2, 2);
  expected_full << 0.0, L / 2.0, -L / 2.0, 0.0;
  CHECK((problem.full_matrix() - expected_full).cwiseAbs().maxCoeff() == 0.0);
  // f(x, y) = (L/2) x y at sampled points.
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 2);
    const double f = 0.5 * (problem.component(0).objective(z) +
                            problem.component(1).objective(z));
    CHECK(f == doctest::Approx(L / 2.0 * z[0] * z[1]).epsilon(1e-12));
  }
}

TEST_CASE("variance floor example certificates") {
  const double L = 1.3, sigma = 0.9;
  const auto problem = variance_floor_example(L, sigma);
  Matrix expected_full(2, 2);
  expected_full << 0.0, L, -L, 0.0;
  CHECK((problem.full_matrix() - expected_full).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(spectral_report(problem).strong_monotonicity_mu) <= 1e-12);
  Rng rng(78);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 2);
    for (int i = 0; i < 2; ++i) {
      const double dev =
          (component_gradient(problem, i, z) - full_gradient(problem, z))
              .squaredNorm();
      CHECK(dev == doctest::Approx(sigma * sigma).epsilon(1e-12));
    }
  }
}
