#include "seglab/serialization.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace seglab {

namespace {

nlohmann::json matrix_to_array(const Matrix& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

Matrix matrix_from_array(const nlohmann::json& arr, Eigen::Index rows,
                         Eigen::Index cols, const char* what) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument(std::string("problem_from_json: bad ") + what);
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = arr[k++].get<double>();
  }
  return m;
}

}  // namespace

nlohmann::json problem_to_json(const FiniteSumProblem& problem) {
  nlohmann::json doc;
  doc["d1"] = problem.dx();
  doc["d2"] = problem.dy();
  doc["n"] = problem.size();
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& comp : problem.components()) {
    nlohmann::json entry;
    entry["A"] = matrix_to_array(comp.a());
    entry["B"] = matrix_to_array(comp.b());
    entry["C"] = matrix_to_array(comp.c());
    nlohmann::json t = nlohmann::json::array();
    for (Eigen::Index i = 0; i < comp.t().size(); ++i) t.push_back(comp.t()[i]);
    entry["t"] = std::move(t);
    comps.push_back(std::move(entry));
  }
  doc["components"] = std::move(comps);
  return doc;
}

FiniteSumProblem problem_from_json(const nlohmann::json& doc) {
  if (!doc.contains("d1") || !doc.contains("d2") || !doc.contains("n") ||
      !doc.contains("components")) {
    throw std::invalid_argument("problem_from_json: missing fields");
  }
  const Eigen::Index d1 = doc["d1"].get<Eigen::Index>();
  const Eigen::Index d2 = doc["d2"].get<Eigen::Index>();
  const auto n = doc["n"].get<int>();
  const auto& comps = doc["components"];
  if (!comps.is_array() || static_cast<int>(comps.size()) != n) {
    throw std::invalid_argument("problem_from_json: component count mismatch");
  }
  std::vector<QuadraticComponent> parsed;
  parsed.reserve(comps.size());
  for (const auto& entry : comps) {
    const Matrix a = matrix_from_array(entry.at("A"), d1, d1, "A");
    const Matrix b = matrix_from_array(entry.at("B"), d1, d2, "B");
    const Matrix c = matrix_from_array(entry.at("C"), d2, d2, "C");
    const auto& tarr = entry.at("t");
    if (!tarr.is_array() || tarr.size() != static_cast<std::size_t>(d1 + d2)) {
      throw std::invalid_argument("problem_from_json: bad t");
    }
    Vector t(d1 + d2);
    for (Eigen::Index i = 0; i < d1 + d2; ++i) {
      t[i] = tarr[static_cast<std::size_t>(i)].get<double>();
    }
    parsed.emplace_back(a, b, c, t);
  }
  return FiniteSumProblem(std::move(parsed));
}

void save_problem(const FiniteSumProblem& problem, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_problem: cannot open " + path);
  }
  out << problem_to_json(problem).dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("save_problem: write failed for " + path);
  }
}

FiniteSumProblem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_problem: cannot open " + path);
  }
  nlohmann::json doc;
  in >> doc;
  return problem_from_json(doc);
}

}  // namespace seglab
