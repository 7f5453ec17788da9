#pragma once

#include <cstdint>
#include <random>

namespace mgarch {

/// Seedable generator with a fixed draw algorithm (mt19937_64 underneath,
/// uniforms and normals derived directly from its integer output), so
/// identical seeds give identical streams independent of the standard
/// library's distribution implementations. Substreams are derived with
/// `split`: series i of a simulation draws from split(seed, i).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (second draw cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
    double gamma(double shape);

    /// Chi-square with k > 2 degrees of freedom.
    double chi_squared(double k) { return 2.0 * gamma(k / 2.0); }

    static std::uint64_t split(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mgarch
