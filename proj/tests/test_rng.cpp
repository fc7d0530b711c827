#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "seglab/rng.hpp"

using namespace seglab;

TEST_CASE("equal seeds give equal streams") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(12346);
  bool any_diff = false;
  Rng a2(12345);
  for (int i = 0; i < 16; ++i) any_diff |= (a2.next_u64() != c.next_u64());
  CHECK(any_diff);
}

TEST_CASE("uniform stays in [0, 1) with sane moments") {
  Rng rng(7);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  CHECK(std::abs(sum / draws - 0.5) < 0.005);
  CHECK(std::abs(sum_sq / draws - 1.0 / 3.0) < 0.005);
}

TEST_CASE("normal variates have standard moments") {
  Rng rng(11);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.normal();
    sum += x;
    sum_sq += x * x;
  }
  CHECK(std::abs(sum / draws) < 0.01);
  CHECK(std::abs(sum_sq / draws - 1.0) < 0.02);
}

TEST_CASE("below is range-safe and roughly uniform") {
  Rng rng(3);
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (const int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK_THROWS_AS((void)rng.below(0), std::invalid_argument);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
}

TEST_CASE("permutation of a single element is the identity") {
  Rng rng(1);
  CHECK(sample_permutation(rng, 1) == std::vector<int>{0});
  CHECK_THROWS_AS(sample_permutation(rng, 0), std::invalid_argument);
}

TEST_CASE("n=2 permutations are balanced") {
  Rng rng(2024);
  int identity = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    if (sample_permutation(rng, 2)[0] == 0) ++identity;
  }
  const double freq = static_cast<double>(identity) / draws;
  CHECK(std::abs(freq - 0.5) < 0.01);
}

TEST_CASE("n=4 permutations pass a chi-square test") {
  Rng rng(99);
  std::map<std::vector<int>, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[sample_permutation(rng, 4)];
  REQUIRE(counts.size() == 24);
  const double expected = draws / 24.0;
  double chi_sq = 0.0;
  for (const auto& [perm, count] : counts) {
    chi_sq += (count - expected) * (count - expected) / expected;
  }
  // 1 - 1e-3 quantile of chi-square with 23 degrees of freedom.
  CHECK(chi_sq < 49.728);
}
