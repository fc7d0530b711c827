#ifndef SEGLAB_SERIALIZATION_HPP
#define SEGLAB_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "seglab/problem.hpp"

namespace seglab {

/// Problem document {d1, d2, n, components: [{A, B, C, t}]} with row-major
/// matrix arrays. Round-trips are bit-exact for finite doubles.
nlohmann::json problem_to_json(const FiniteSumProblem& problem);
FiniteSumProblem problem_from_json(const nlohmann::json& doc);

void save_problem(const FiniteSumProblem& problem, const std::string& path);
FiniteSumProblem load_problem(const std::string& path);

}  // namespace seglab

#endif  // SEGLAB_SERIALIZATION_HPP
