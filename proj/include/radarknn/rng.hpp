#ifndef RADARKNN_RNG_HPP
#define RADARKNN_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace rknn {

// Deterministic xoshiro256++ stream, seeded through splitmix64.
//
// Every Monte Carlo trial derives its own stream from (master seed, domain,
// index), so results do not depend on thread count or evaluation order.
// Generation is self-contained (no std::normal_distribution) to keep byte
// reproducibility independent of the standard library implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) { seed_state(seed); }

    RngStream(std::uint64_t master, std::uint64_t domain, std::uint64_t index) {
        // Feed the three identifiers through splitmix so that nearby
        // (domain, index) pairs land on unrelated states.
        std::uint64_t x = master;
        x = mix(x + 0x9e3779b97f4a7c15ULL * (domain + 1));
        x = mix(x + 0x9e3779b97f4a7c15ULL * (index + 1));
        seed_state(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log argument.
    double next_double_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard real normal via Box-Muller; generates pairs, caches the spare.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_double_pos()));
        const double t = 6.283185307179586476925286766559 * next_double();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Standard complex normal with E|g|^2 = 1: (a + jb)/sqrt(2) for
    // independent real standard normals a, b.
    std::complex<double> next_cnormal() {
        const double r = std::sqrt(-std::log(next_double_pos()));
        const double t = 6.283185307179586476925286766559 * next_double();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void seed_state(std::uint64_t seed) {
        // splitmix64 expansion; guarantees a nonzero xoshiro state.
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            w = mix(x);
        }
    }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stream domains; keeps trial indices from colliding across phases.
namespace stream_domain {
inline constexpr std::uint64_t training = 0;
inline constexpr std::uint64_t pfa_trial = 1;
inline constexpr std::uint64_t pd_trial = 2;
inline constexpr std::uint64_t outer_trial = 3;
inline constexpr std::uint64_t brute_trial = 4;
inline constexpr std::uint64_t toy_trial = 5;
inline constexpr std::uint64_t calibrate_trial = 6;
inline constexpr std::uint64_t generic = 7;
} // namespace stream_domain

} // namespace rknn

#endif
