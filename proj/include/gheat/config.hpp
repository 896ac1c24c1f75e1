#ifndef GHEAT_CONFIG_HPP
#define GHEAT_CONFIG_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gheat/problem.hpp"

namespace YAML {
class Node;
}

namespace gheat {

// Problem specs are read from a YAML file; the schema is documented in the
// README (matrices row-major). Errors carry the offending key path.
ProblemSpec load_problem(const std::string& path);
ProblemSpec parse_problem(const YAML::Node& root);

// Building blocks, exposed so studies can swap a single section
// (noise-study reads extra noise files).
UncertaintySet parse_uncertainty(const YAML::Node& node, int dim);
NoiseModel parse_noise(const YAML::Node& node, int dim);
Payoff parse_payoff(const YAML::Node& node);
NoiseModel load_noise(const std::string& path, int dim);

// Fully resolved configuration echo (defaults materialized) for reports.
nlohmann::json config_echo(const ProblemSpec& spec);

}  // namespace gheat

#endif  // GHEAT_CONFIG_HPP
