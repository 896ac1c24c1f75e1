#ifndef GHEAT_RNG_HPP
#define GHEAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gheat {

// splitmix64 step (Steele/Lea/Flood). Used both as a stream generator and
// as the seed mixer that derives independent per-path streams, so results
// do not depend on how paths are distributed over threads.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class PathRng {
public:
    // Stream derived from (seed, stream_index); streams with distinct
    // indices are statistically independent.
    PathRng(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = seed ^ (0x9e3779b97f4a7c15ULL + stream_index * 0xbf58476d1ce4e5b9ULL);
        std::uint64_t b = splitmix64(s);
        state_ = a ^ (b + 0x632be59bd9b4e019ULL + (stream_index << 1));
        splitmix64(state_);  // burn-in one step
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in (0,1); never returns 0 (safe for logs)
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; caches the second variate
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    double rademacher() { return (next_u64() & 1ULL) ? 1.0 : -1.0; }

    // index into a discrete law given cumulative weights (last entry ~1)
    int pick(const double* cumulative, int count) {
        const double u = uniform();
        for (int i = 0; i + 1 < count; ++i)
            if (u <= cumulative[i]) return i;
        return count - 1;
    }

private:
    std::uint64_t state_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace gheat

#endif  // GHEAT_RNG_HPP
