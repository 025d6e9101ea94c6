#ifndef PGB_RNG_HPP
#define PGB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>
#include <vector>

namespace pgb {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

// Combine a seed with a label/value into a new stream seed. Child streams are
// derived per (cell, stage) so reordering one stage does not shift the draws
// of another.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
    return detail::splitmix64(seed ^ detail::fnv1a(label));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
    return detail::splitmix64(seed ^ detail::splitmix64(value));
}

inline std::uint64_t mix_seed(std::uint64_t seed, double value) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    return mix_seed(seed, bits);
}

/// Deterministic random stream. All sampling goes through the raw 64-bit
/// engine output; none of the implementation-defined std:: distributions are
/// used, so a fixed seed reproduces the same draws everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : root_(seed), engine_(detail::splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1); safe as a log/inverse-CDF argument.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) { return n ? next_u64() % n : 0; }

    long uniform_int(long lo, long hi_inclusive) {
        return lo + static_cast<long>(
                        uniform_index(static_cast<std::uint64_t>(hi_inclusive - lo + 1)));
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Laplace(0, scale) via inverse CDF.
    double laplace(double scale) {
        if (scale <= 0.0) return 0.0;
        double u = uniform_open() - 0.5;
        return (u < 0.0 ? scale : -scale) * std::log1p(-2.0 * std::fabs(u));
    }

    /// Standard Gumbel, for max-trick sampling.
    double gumbel() { return -std::log(-std::log(uniform_open())); }

    /// Number of failures before the next success in Bernoulli(p) trials.
    /// p must be in (0, 1].
    std::uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        double g = std::floor(std::log(uniform_open()) / std::log1p(-p));
        if (g > 9.0e18) g = 9.0e18;
        return static_cast<std::uint64_t>(g);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// New independent stream; stable regardless of how many draws this
    /// stream has consumed.
    Rng derive(std::string_view label) const { return Rng(mix_seed(root_, label)); }
    Rng derive(std::uint64_t value) const { return Rng(mix_seed(root_, value)); }

    std::uint64_t root_seed() const { return root_; }

private:
    std::uint64_t root_;
    std::mt19937_64 engine_;
};

} // namespace pgb

#endif
