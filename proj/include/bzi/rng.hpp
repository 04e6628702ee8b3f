#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace bzi {

// Deterministic random source. Every generator is a pure function of a
// 64-bit key; derive() maps (key, label) to a fresh independent key, so
// sub-tasks can be given their own streams without consuming state from
// the parent. Replaying the same seed therefore reproduces every draw
// regardless of how the work is ordered or split.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(seed), eng_(mix(seed ^ kRootSalt)) {}

    // Independent child stream; does not advance this generator.
    Rng derive(std::uint64_t label) const { return Rng(mix(key_ + mix(label + 1))); }

    Rng derive(std::string_view label) const { return derive(fnv1a(label)); }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection keeps the distribution exact for any n.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; implemented by hand so draws do not
    // depend on the standard library's distribution internals.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // For std:: distributions that need a UniformRandomBitGenerator.
    std::mt19937_64& engine() { return eng_; }

  private:
    static constexpr std::uint64_t kRootSalt = 0x9e3779b97f4a7c15ull;

    // splitmix64 finalizer; good avalanche, cheap.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::uint64_t key_;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bzi
