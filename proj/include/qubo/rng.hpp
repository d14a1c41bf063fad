#ifndef QUBO_RNG_HPP
#define QUBO_RNG_HPP

#include <cstdint>
#include <cmath>
#include <string_view>

namespace qubo::rng {

// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t GOLDEN_GAMMA = 0x9e3779b97f4a7c15ULL;

// Key/token combiner used to derive independent child streams.
constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t token) {
    return mix(key + GOLDEN_GAMMA * (token + 0x632be59bd9b4e019ULL));
}

// FNV-1a over bytes, avalanched. Used for seed derivation from names.
constexpr std::uint64_t hash_bytes(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix(h);
}

// Counter-indexed SplitMix64 stream. Draw k of stream `key` is the k-th
// output of splitmix64 seeded with `key`; random access makes every draw a
// pure function of (key, counter), so parallel schedules cannot reorder a
// stream. Integer-only arithmetic: sequences are identical on every platform.
class CounterRng {
public:
    CounterRng() : key_(0) {}
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t key() const { return key_; }

    // Independent child stream labelled by an integer or name token.
    CounterRng child(std::uint64_t token) const { return CounterRng(combine(key_, token)); }
    CounterRng child(std::string_view name) const { return child(hash_bytes(name)); }

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * GOLDEN_GAMMA);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    bool coin(std::uint64_t counter) const { return bits(counter) >> 63; }

    // Uniform integer in [0, n). Fixed-point multiply; bias is at most n/2^64.
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(bits(counter)) * n) >> 64);
    }

    // Standard normal via Box-Muller; consumes counters c0 and c0+1.
    double gaussian(std::uint64_t c0) const {
        const double u1 = uniform(c0);
        const double u2 = uniform(c0 + 1);
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Exponential of mean 1; one counter.
    double exponential(std::uint64_t c0) const { return -std::log1p(-uniform(c0)); }

private:
    std::uint64_t key_;
};

// seed_base XOR hash(name, a, b): adding experiment sizes or replicas never
// reshuffles the seeds of existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t seed_base, std::string_view name,
                                    std::uint64_t a, std::uint64_t b) {
    return seed_base ^ combine(combine(hash_bytes(name), a), b);
}

}  // namespace qubo::rng

#endif
