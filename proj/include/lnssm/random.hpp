#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace lnssm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t key, std::uint64_t id) {
    std::uint64_t s = key ^ (0x9e3779b97f4a7c15ULL * (id + 0x632be59bd9b4e019ULL));
    std::uint64_t a = splitmix64(s);
    return a ^ splitmix64(s);
}

inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Deterministic splittable random stream (xoshiro256++ seeded via splitmix64).
//
// Every stream remembers the key it was derived from, so substream(id) is a
// pure function of (key, id) and independent of how many draws the parent has
// consumed. That is what makes per-particle / per-cell substreams reproducible
// regardless of evaluation order or thread count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : key_(seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = detail::splitmix64(s);
    }

    RandomStream substream(std::uint64_t id) const {
        return RandomStream(detail::mix_keys(key_, id));
    }

    RandomStream substream(std::string_view name) const {
        return substream(detail::fnv1a(name));
    }

    RandomStream substream(std::uint64_t a, std::uint64_t b) const {
        return substream(a).substream(b);
    }

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // (0, 1)
    double uniform_open() {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return u;
    }

    double uniform_range(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // 0 .. n-1, n > 0
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Marsaglia polar, spare variate discarded so the
    // stream state is a pure function of the number of draws requested.
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t key_;
    std::uint64_t state_[4];
};

}  // namespace lnssm
