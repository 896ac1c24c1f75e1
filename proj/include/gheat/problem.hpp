#ifndef GHEAT_PROBLEM_HPP
#define GHEAT_PROBLEM_HPP

#include <string>
#include <vector>

#include "gheat/noise.hpp"
#include "gheat/payoff.hpp"
#include "gheat/uncertainty.hpp"

namespace gheat {

// One fully specified problem: the adversary's set, the increment law and
// the terminal payoff, on the fixed horizon [0, 1]. Immutable once built;
// shared across threads without synchronization.
struct ProblemSpec {
    UncertaintySet uncertainty;
    NoiseModel noise;
    Payoff payoff;
    // optional domain override; <= 0 means use 6 * sigma_max
    double domain_half_width = 0.0;

    int dim() const { return uncertainty.dim(); }
    double default_half_width() const {
        return domain_half_width > 0.0 ? domain_half_width : 6.0 * uncertainty.sigma_max();
    }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string summary() const;
};

// Measures every standing assumption: dimensional agreement, the moment
// conditions of the increment law, and |f| <= M by sampling the
// computational domain. Never throws; hard failures are failed checks.
ValidationReport validate(const ProblemSpec& spec);

// Throws ValidationError/DimensionError when validate() fails.
void require_valid(const ProblemSpec& spec);

}  // namespace gheat

#endif  // GHEAT_PROBLEM_HPP
