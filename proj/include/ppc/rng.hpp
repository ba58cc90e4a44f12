#pragma once

#include <cmath>
#include <cstdint>

namespace ppc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed for index i. Used to keep randomized
// computations deterministic under any parallel schedule.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

// xoshiro256** with hand-rolled double conversion so that results are
// bit-reproducible across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) {
            x = splitmix64(x);
            w = x;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1): never returns an exact endpoint
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ppc
