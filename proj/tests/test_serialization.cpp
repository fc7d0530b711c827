#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "seglab/generators.hpp"
#include "seglab/serialization.hpp"

using namespace seglab;

namespace {

bool bit_identical(const FiniteSumProblem& a, const FiniteSumProblem& b) {
  if (a.size() != b.size() || a.dx() != b.dx() || a.dy() != b.dy()) {
    return false;
  }
  for (int i = 0; i < a.size(); ++i) {
    const auto& ca = a.component(i);
    const auto& cb = b.component(i);
    if ((ca.a().array() != cb.a().array()).any()) return false;
    if ((ca.b().array() != cb.b().array()).any()) return false;
    if ((ca.c().array() != cb.c().array()).any()) return false;
    if ((ca.t().array() != cb.t().array()).any()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("json round trip is bit exact") {
  const auto problem = gen_strongly_monotone(1234, 3, 4, 5);
  const auto doc = problem_to_json(problem);
  CHECK(doc["d1"] == 3);
  CHECK(doc["d2"] == 4);
  CHECK(doc["n"] == 5);
  const auto restored = problem_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(bit_identical(problem, restored));
}

TEST_CASE("round trip survives awkward finite doubles") {
  Matrix a(1, 1), b(1, 1), c(1, 1);
  a << 0.1;  // not exactly representable; must survive as the same bits
  b << -3.0e-308;
  c << 1.0 / 3.0;
  Vector t(2);
  t << 6.02214076e23, -1e-300;
  std::vector<QuadraticComponent> comps;
  comps.emplace_back(a, b, c, t);
  const FiniteSumProblem problem{std::move(comps)};
  const auto restored =
      problem_from_json(nlohmann::json::parse(problem_to_json(problem).dump()));
  CHECK(bit_identical(problem, restored));
}

TEST_CASE("file save and load round trip") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "seglab_roundtrip.json";
  const auto problem = gen_monotone(9, 3, 3, 4);
  save_problem(problem, path.string());
  const auto restored = load_problem(path.string());
  CHECK(bit_identical(problem, restored));
  fs::remove(path);
  CHECK_THROWS(load_problem(path.string()));
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS((void)problem_from_json(nlohmann::json::object()),
                  std::invalid_argument);
  auto doc = problem_to_json(divergence_example(1.0));
  doc["components"][0]["A"] = nlohmann::json::array({1.0, 2.0});
  CHECK_THROWS_AS((void)problem_from_json(doc), std::invalid_argument);
}
