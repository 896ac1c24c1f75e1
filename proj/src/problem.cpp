#include "gheat/problem.hpp"

#include <cmath>
#include <sstream>

#include "gheat/rng.hpp"

namespace gheat {

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << ": measured " << c.measured
           << " (tolerance " << c.tolerance << ")";
        if (!c.note.empty()) os << " - " << c.note;
        os << "\n";
    }
    for (const auto& w : warnings) os << "[warn] " << w << "\n";
    return os.str();
}

ValidationReport validate(const ProblemSpec& spec) {
    ValidationReport rep;
    const int d = spec.dim();

    {
        CheckResult c;
        c.name = "dimensions agree";
        c.tolerance = 0.0;
        const bool noise_ok = spec.noise.dim() == d;
        const bool payoff_ok = spec.payoff.required_dim() == 0 || spec.payoff.required_dim() == d;
        c.measured = noise_ok && payoff_ok ? 0.0 : 1.0;
        c.pass = noise_ok && payoff_ok;
        if (!noise_ok) c.note = "noise dimension disagrees with uncertainty set";
        if (!payoff_ok) c.note = "payoff dimension disagrees with uncertainty set";
        rep.checks.push_back(c);
        if (!c.pass) return rep;  // nothing downstream is meaningful
    }

    const auto defects = spec.noise.moment_defects();
    const double tol = spec.noise.moment_tolerance();
    rep.checks.push_back({"mean zero", defects.mean_max_abs <= tol, defects.mean_max_abs, tol,
                          spec.noise.kind() == NoiseModel::Kind::SamplerOnly
                              ? "empirical, seeded sample"
                              : ""});
    rep.checks.push_back({"identity covariance", defects.cov_max_abs <= tol, defects.cov_max_abs,
                          tol,
                          spec.noise.kind() == NoiseModel::Kind::SamplerOnly
                              ? "empirical, seeded sample"
                              : ""});

    // payoff bound over the computational domain, checked by sampling
    {
        const double r = spec.default_half_width();
        const double bound = spec.payoff.bound_on_radius(r, d);
        double worst = 0.0;
        PathRng rng(0xb0adced5ULL, 0);
        std::vector<double> x(static_cast<std::size_t>(d));
        const int samples = 4096;
        for (int i = 0; i < samples; ++i) {
            for (int a = 0; a < d; ++a) x[a] = r * (2.0 * rng.uniform() - 1.0);
            worst = std::max(worst, std::abs(spec.payoff(x.data(), d)));
        }
        // axis extremes and the origin as deterministic probes
        for (int a = 0; a < d; ++a) {
            for (double s : {-r, r}) {
                for (int b = 0; b < d; ++b) x[b] = b == a ? s : 0.0;
                worst = std::max(worst, std::abs(spec.payoff(x.data(), d)));
            }
        }
        std::vector<double> corner(static_cast<std::size_t>(d), r);
        worst = std::max(worst, std::abs(spec.payoff(corner.data(), d)));
        CheckResult c;
        c.name = "payoff bounded by M";
        c.measured = worst;
        c.tolerance = bound * (1.0 + 1e-12);
        c.pass = worst <= c.tolerance;
        std::ostringstream note;
        note << "M = " << bound << " on [-" << r << "," << r << "]^" << d;
        c.note = note.str();
        rep.checks.push_back(c);
    }

    if (spec.domain_half_width > 0.0 &&
        spec.domain_half_width < 3.0 * spec.uncertainty.sigma_max()) {
        std::ostringstream w;
        w << "domain half-width " << spec.domain_half_width << " below 3*sigma_max = "
          << 3.0 * spec.uncertainty.sigma_max() << "; truncation may dominate";
        rep.warnings.push_back(w.str());
    }

    return rep;
}

void require_valid(const ProblemSpec& spec) {
    const ValidationReport rep = validate(spec);
    if (rep.passed()) return;
    for (const auto& c : rep.checks) {
        if (c.pass) continue;
        if (c.name == "dimensions agree") throw DimensionError("problem spec: " + c.note);
        std::ostringstream os;
        os << "problem spec: check '" << c.name << "' failed, measured " << c.measured
           << " > tolerance " << c.tolerance;
        throw ValidationError(os.str());
    }
}

}  // namespace gheat
