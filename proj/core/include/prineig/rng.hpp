#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace prineig {

/// splitmix64 step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seed for a named substream. Streams derived from the same
/// master seed with different ids are independent for practical purposes;
/// identical (seed, ids) always yield the identical stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id) {
    std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL + id * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id1, std::uint64_t id2) {
    return derive_seed(derive_seed(master, id1), id2);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id1, std::uint64_t id2,
                                 std::uint64_t id3) {
    return derive_seed(derive_seed(master, id1, id2), id3);
}

/// Seeded random stream with the distributions the library needs.
///
/// std::normal_distribution and friends are implementation-defined, so all
/// transforms here are written out explicitly; a given (seed, call sequence)
/// reproduces bit-identical draws on any platform with IEEE doubles and the
/// same libm. Standard-library engines are only used for the raw bit stream
/// (mt19937_64 is fully specified by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe to pass to log().
    double uniform01_open_left() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller, second value cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u = uniform01_open_left();
        const double v = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 6.283185307179586476925286766559 * v;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Student t with 8 degrees of freedom, scaled to unit variance.
    /// chi^2_8 = 2 * Gamma(4) and Gamma(4) = -log(u1 u2 u3 u4), so one
    /// normal plus four uniforms per draw. Var(t_8) = 8/6 = 4/3.
    double student_t8_standardized() {
        const double z = normal();
        const double p = uniform01_open_left() * uniform01_open_left() *
                         uniform01_open_left() * uniform01_open_left();
        const double chi2 = -2.0 * std::log(p);
        const double t = z / std::sqrt(chi2 / 8.0);
        return t / std::sqrt(4.0 / 3.0);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace prineig
