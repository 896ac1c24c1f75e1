#include "gheat/config.hpp"

#include <variant>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

namespace gheat {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config: " + where + ": " + what);
}

YAML::Node need(const YAML::Node& node, const char* key, const std::string& where) {
    YAML::Node child = node[key];
    if (!child) fail(where, std::string("missing key '") + key + "'");
    return child;
}

double need_double(const YAML::Node& node, const char* key, const std::string& where) {
    try {
        return need(node, key, where).as<double>();
    } catch (const YAML::Exception&) {
        fail(where, std::string("key '") + key + "' is not a number");
    }
}

int need_int(const YAML::Node& node, const char* key, const std::string& where) {
    try {
        return need(node, key, where).as<int>();
    } catch (const YAML::Exception&) {
        fail(where, std::string("key '") + key + "' is not an integer");
    }
}

std::vector<double> need_doubles(const YAML::Node& node, const char* key,
                                 const std::string& where) {
    try {
        return need(node, key, where).as<std::vector<double>>();
    } catch (const YAML::Exception&) {
        fail(where, std::string("key '") + key + "' is not a list of numbers");
    }
}

Matrix row_major_matrix(const std::vector<double>& flat, int dim, const std::string& where) {
    if (static_cast<int>(flat.size()) != dim * dim)
        fail(where, "matrix needs dim*dim row-major entries");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r) * dim + c];
    return m;
}

}  // namespace

UncertaintySet parse_uncertainty(const YAML::Node& node, int dim) {
    const std::string where = "problem.uncertainty";
    const std::string type = need(node, "type", where).as<std::string>();
    if (type == "scalar_interval") {
        return UncertaintySet::scalar_interval(dim, need_double(node, "sigma_lo", where),
                                               need_double(node, "sigma_hi", where));
    }
    if (type == "finite_set") {
        YAML::Node ms = need(node, "matrices", where);
        if (!ms.IsSequence() || ms.size() == 0) fail(where, "'matrices' must be a nonempty list");
        std::vector<Matrix> list;
        for (const auto& entry : ms)
            list.push_back(row_major_matrix(entry.as<std::vector<double>>(), dim, where));
        return UncertaintySet::finite(std::move(list));
    }
    if (type == "diagonal_box") {
        auto lo = need_doubles(node, "lo", where);
        auto hi = need_doubles(node, "hi", where);
        if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
            fail(where, "'lo'/'hi' must have one entry per axis");
        return UncertaintySet::diagonal_box(std::move(lo), std::move(hi));
    }
    fail(where, "unknown type '" + type + "'");
}

NoiseModel parse_noise(const YAML::Node& node, int dim) {
    const std::string where = "problem.noise";
    const std::string type = need(node, "type", where).as<std::string>();
    if (type == "rademacher") return NoiseModel::rademacher(dim);
    if (type == "two_point") return NoiseModel::two_point_asymmetric(dim);
    if (type == "gauss_hermite") {
        const int order = node["order"] ? node["order"].as<int>() : 7;
        return NoiseModel::gauss_hermite(dim, order);
    }
    if (type == "atoms") {
        YAML::Node pts = need(node, "points", where);
        auto wts = need_doubles(node, "weights", where);
        if (!pts.IsSequence() || pts.size() != wts.size())
            fail(where, "'points' and 'weights' must be lists of equal length");
        std::vector<Vector> points;
        for (const auto& entry : pts) {
            const auto coords = entry.as<std::vector<double>>();
            if (static_cast<int>(coords.size()) != dim)
                fail(where, "each atom needs one coordinate per axis");
            points.push_back(Eigen::Map<const Vector>(coords.data(), dim));
        }
        const double tol =
            node["moment_tolerance"] ? node["moment_tolerance"].as<double>() : 1e-10;
        return NoiseModel::atoms(std::move(points), std::move(wts), tol);
    }
    if (type == "sampler") {
        const std::string law = need(node, "law", where).as<std::string>();
        const double tol =
            node["moment_tolerance"] ? node["moment_tolerance"].as<double>() : 1e-2;
        if (law == "gaussian")
            return NoiseModel::sampler(dim, NoiseModel::SamplerLaw::Gaussian, tol);
        if (law == "rademacher")
            return NoiseModel::sampler(dim, NoiseModel::SamplerLaw::Rademacher, tol);
        if (law == "uniform")
            return NoiseModel::sampler(dim, NoiseModel::SamplerLaw::UniformSqrt3, tol);
        fail(where, "unknown sampler law '" + law + "'");
    }
    fail(where, "unknown type '" + type + "'");
}

Payoff parse_payoff(const YAML::Node& node) {
    const std::string where = "problem.payoff";
    const std::string type = need(node, "type", where).as<std::string>();
    if (type == "cosine") return Payoff::cosine();
    if (type == "quadratic") return Payoff::quadratic();
    if (type == "neg_quadratic") return Payoff::neg_quadratic();
    if (type == "gauss_bump") return Payoff::gauss_bump();
    if (type == "aniso_bump") return Payoff::aniso_bump(need_doubles(node, "weights", where));
    if (type == "coordinate")
        return Payoff::coordinate(need_int(node, "axis", where),
                                  need_double(node, "clip", where));
    if (type == "table") {
        Payoff::TableData data;
        data.lo = need_doubles(node, "lo", where);
        data.hi = need_doubles(node, "hi", where);
        for (int n : need(node, "nodes", where).as<std::vector<int>>()) data.nodes.push_back(n);
        data.values = need_doubles(node, "values", where);
        return Payoff::table(std::move(data));
    }
    fail(where, "unknown type '" + type + "'");
}

ProblemSpec parse_problem(const YAML::Node& root) {
    YAML::Node problem = root["problem"];
    if (!problem) fail("problem", "missing top-level 'problem' section");
    const int dim = need_int(problem, "dimension", "problem");
    if (dim < 1 || dim > 3) fail("problem.dimension", "must be 1, 2 or 3");

    ProblemSpec spec{parse_uncertainty(need(problem, "uncertainty", "problem"), dim),
                     parse_noise(need(problem, "noise", "problem"), dim),
                     parse_payoff(need(problem, "payoff", "problem"))};
    if (YAML::Node domain = root["domain"]) {
        if (domain["half_width"]) spec.domain_half_width = domain["half_width"].as<double>();
        if (!(spec.domain_half_width > 0.0))
            fail("domain.half_width", "must be positive when given");
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ConfigError("config: cannot open '" + path + "'");
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: " + path + ": line " + std::to_string(e.mark.line + 1) +
                          ": " + e.msg);
    }
    try {
        return parse_problem(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: " + path + ": " + e.msg);
    }
}

NoiseModel load_noise(const std::string& path, int dim) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ConfigError("config: cannot open '" + path + "'");
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: " + path + ": " + e.msg);
    }
    YAML::Node node = root["noise"] ? root["noise"] : root;
    return parse_noise(node, dim);
}

nlohmann::json config_echo(const ProblemSpec& spec) {
    nlohmann::json j;
    j["dimension"] = spec.dim();
    j["horizon"] = {0.0, 1.0};

    nlohmann::json u;
    if (const auto* fs = std::get_if<UncertaintySet::FiniteSet>(&spec.uncertainty.variant())) {
        u["type"] = "finite_set";
        nlohmann::json ms = nlohmann::json::array();
        for (const Matrix& m : fs->matrices) {
            nlohmann::json flat = nlohmann::json::array();
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
            ms.push_back(flat);
        }
        u["matrices"] = ms;
    } else if (const auto* iv =
                   std::get_if<UncertaintySet::ScalarInterval>(&spec.uncertainty.variant())) {
        u["type"] = "scalar_interval";
        u["sigma_lo"] = iv->sigma_lo;
        u["sigma_hi"] = iv->sigma_hi;
    } else {
        const auto& box = std::get<UncertaintySet::DiagonalBox>(spec.uncertainty.variant());
        u["type"] = "diagonal_box";
        u["lo"] = box.lo;
        u["hi"] = box.hi;
    }
    u["extreme_count"] = spec.uncertainty.extremes().size();
    u["sigma_max"] = spec.uncertainty.sigma_max();
    j["uncertainty"] = u;

    nlohmann::json n;
    n["description"] = spec.noise.describe();
    n["moment_tolerance"] = spec.noise.moment_tolerance();
    n["gaussian_law"] = spec.noise.gaussian_law();
    if (spec.noise.has_atoms()) n["atom_count"] = spec.noise.points().size();
    j["noise"] = n;

    j["payoff"] = spec.payoff.describe();
    j["domain_half_width"] = spec.default_half_width();
    return j;
}

}  // namespace gheat
