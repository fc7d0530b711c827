#include <doctest.h>

#include <cmath>

#include "seglab/generators.hpp"
#include "seglab/problem.hpp"
#include "seglab/serialization.hpp"

using namespace seglab;

TEST_CASE("monotone generator: zero diagonal sums and mu = 0") {
  const int n = 8;
  const auto problem = gen_monotone(33, 5, 4, n);
  for (Eigen::Index j = 0; j < 5; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += problem.component(i).a()(j, j);
    CHECK(sum == 0.0);  // exact half/half split of +/-2 entries
  }
  for (Eigen::Index j = 0; j < 4; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += problem.component(i).c()(j, j);
    CHECK(sum == 0.0);
  }
  const auto report = spectral_report(problem);
  CHECK(std::abs(report.strong_monotonicity_mu) <= 1e-9);
}

TEST_CASE("monotone generator rejects odd n") {
  CHECK_THROWS_AS((void)gen_monotone(1, 4, 4, 5), std::invalid_argument);
}

TEST_CASE("generators are bitwise deterministic in the seed") {
  const auto a = problem_to_json(gen_monotone(42, 4, 4, 6)).dump();
  const auto b = problem_to_json(gen_monotone(42, 4, 4, 6)).dump();
  CHECK(a == b);
  const auto c = problem_to_json(gen_strongly_monotone(42, 4, 4, 6)).dump();
  const auto d = problem_to_json(gen_strongly_monotone(42, 4, 4, 6)).dump();
  CHECK(c == d);
  CHECK(a != c);
  const auto e = problem_to_json(gen_monotone(43, 4, 4, 6)).dump();
  CHECK(a != e);
}

TEST_CASE("strongly monotone generator: block spectra and mu >= 1") {
  const auto problem = gen_strongly_monotone(12, 5, 5, 6);
  for (int i = 0; i < problem.size(); ++i) {
    for (const Matrix* block :
         {&problem.component(i).a(), &problem.component(i).c()}) {
      Eigen::SelfAdjointEigenSolver<Matrix> eig(*block,
                                                Eigen::EigenvaluesOnly);
      REQUIRE(eig.info() == Eigen::Success);
      CHECK(eig.eigenvalues().minCoeff() >= 0.5 - 1e-9);
      CHECK(eig.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
    }
  }
  CHECK(spectral_report(problem).strong_monotonicity_mu >= 1.0 - 1e-9);
}

TEST_CASE("lower-bound example dimensions and preconditions") {
  const auto seg = rr_lower_bound_example(2.0, 1.0, 0.5, 4, RrKind::Seg);
  CHECK(seg.dx() == 2);
  CHECK(seg.dy() == 1);
  const auto sgda = rr_lower_bound_example(2.0, 1.0, 0.5, 4, RrKind::Sgda);
  CHECK(sgda.dx() == 3);
  CHECK(sgda.dy() == 1);
  CHECK_THROWS_AS(
      (void)rr_lower_bound_example(1.5, 1.0, 0.5, 4, RrKind::Seg),
      std::invalid_argument);  // L/mu < 2
  CHECK_THROWS_AS(
      (void)rr_lower_bound_example(2.0, 1.0, 0.5, 5, RrKind::Seg),
      std::invalid_argument);  // odd n
}

TEST_CASE("counterexample parameter validation") {
  CHECK_THROWS_AS((void)divergence_example(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)variance_floor_example(1.0, -0.1),
                  std::invalid_argument);
}
