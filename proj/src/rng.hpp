#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ptkr {

/// One round of the splitmix64 mixer.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Stable substream derivation: every sweep cell (i, j) and every ensemble
/// trial (t, 0) draws from its own stream, independent of execution order.
inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ splitmix64(b ^ 0x6a09e667f3bcc909ull));
}

/// Seedable generator with portable output. std::mt19937_64 has a
/// standard-specified sequence; the uniform/normal mappings below are fixed
/// here rather than taken from <random> distributions, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ptkr
