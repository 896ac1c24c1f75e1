#include "gheat/value_grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

namespace gheat {

const TimeSlice* ValueGrid::at_time(double t, double tol) const {
    for (const auto& s : slices)
        if (std::abs(s.t - t) <= tol) return &s;
    return nullptr;
}

bool FeedbackPolicy::valid() const {
    for (std::uint16_t i : indices_)
        if (i >= choice_count_) return false;
    return true;
}

void write_slice_csv(std::ostream& os, const SpatialGrid& grid, const TimeSlice& slice) {
    for (int a = 0; a < grid.dim(); ++a) os << "x" << a + 1 << ",";
    os << "value\n";
    double x[SpatialGrid::kMaxDim];
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        grid.node_coords(i, x);
        for (int a = 0; a < grid.dim(); ++a) os << x[a] << ",";
        os << slice.values[i] << "\n";
    }
}

namespace {

constexpr char kPolicyMagic[8] = {'G', 'H', 'P', 'O', 'L', '1', '\n', '\0'};

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw Error("policy file: truncated");
    return v;
}

}  // namespace

void save_policy(const std::string& path, const PolicyFile& data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("policy file: cannot open '" + path + "' for writing");
    os.write(kPolicyMagic, sizeof(kPolicyMagic));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(data.grid.dim()));
    for (int a = 0; a < data.grid.dim(); ++a) {
        put<std::uint32_t>(os, static_cast<std::uint32_t>(data.grid.axis_nodes(a)));
        put<double>(os, data.grid.half_width(a));
    }
    put<std::uint32_t>(os, static_cast<std::uint32_t>(data.policy.steps()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(data.policy.choice_count()));
    put<double>(os, data.value_at_origin);
    for (int j = 0; j < data.policy.steps(); ++j)
        os.write(reinterpret_cast<const char*>(data.policy.step_data(j)),
                 static_cast<std::streamsize>(data.policy.nodes() * sizeof(std::uint16_t)));
    if (!os) throw Error("policy file: write failed for '" + path + "'");
}

PolicyFile load_policy(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("policy file: cannot open '" + path + "'");
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kPolicyMagic, sizeof(magic)) != 0)
        throw Error("policy file: bad magic in '" + path + "'");
    const int dim = static_cast<int>(get<std::uint32_t>(is));
    if (dim < 1 || dim > SpatialGrid::kMaxDim) throw Error("policy file: bad dimension");
    std::array<double, SpatialGrid::kMaxDim> hw{};
    std::array<int, SpatialGrid::kMaxDim> nodes{};
    for (int a = 0; a < dim; ++a) {
        nodes[a] = static_cast<int>(get<std::uint32_t>(is));
        hw[a] = get<double>(is);
    }
    SpatialGrid grid(dim, hw, nodes);
    const int steps = static_cast<int>(get<std::uint32_t>(is));
    const int choices = static_cast<int>(get<std::uint32_t>(is));
    const double v0 = get<double>(is);
    FeedbackPolicy policy(steps, grid.node_count(), choices);
    for (int j = 0; j < steps; ++j) {
        is.read(reinterpret_cast<char*>(policy.step_data(j)),
                static_cast<std::streamsize>(grid.node_count() * sizeof(std::uint16_t)));
        if (!is) throw Error("policy file: truncated policy data");
    }
    if (!policy.valid()) throw Error("policy file: index out of range");
    return PolicyFile{grid, std::move(policy), v0};
}

}  // namespace gheat
