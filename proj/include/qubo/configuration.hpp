#ifndef QUBO_CONFIGURATION_HPP
#define QUBO_CONFIGURATION_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qubo/rng.hpp"

namespace qubo {

// Binary vector eta in {0,1}^n, bit-packed, with the ones-count kept current.
class Configuration {
public:
    Configuration() : n_(0), ones_(0) {}
    explicit Configuration(std::uint32_t n)
        : words_((n + 63) / 64, 0), n_(n), ones_(0) {}

    // Each site i.i.d. Bernoulli(1/2); site i uses draw counter0 + i.
    static Configuration bernoulli_half(std::uint32_t n, const rng::CounterRng& r,
                                        std::uint64_t counter0 = 0) {
        Configuration c(n);
        for (std::uint32_t i = 0; i < n; ++i)
            if (r.coin(counter0 + i)) c.set(i, true);
        return c;
    }

    std::uint32_t size() const { return n_; }
    std::uint32_t ones() const { return ones_; }

    bool get(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::uint32_t i, bool v) {
        const std::uint64_t m = 1ULL << (i & 63);
        std::uint64_t& w = words_[i >> 6];
        if (v && !(w & m)) { w |= m; ++ones_; }
        else if (!v && (w & m)) { w &= ~m; --ones_; }
    }

    void flip(std::uint32_t i) {
        const std::uint64_t m = 1ULL << (i & 63);
        words_[i >> 6] ^= m;
        ones_ += (words_[i >> 6] & m) ? 1 : -1;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    // Direct word access for kernels writing whole words; call recount_ones()
    // afterwards. Bits at positions >= size() must stay zero.
    std::vector<std::uint64_t>& mutable_words() { return words_; }
    void recount_ones() {
        std::uint32_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
        ones_ = c;
    }

    std::uint32_t hamming(const Configuration& o) const {
        if (o.n_ != n_) throw std::invalid_argument("Configuration::hamming: size mismatch");
        std::uint32_t d = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            d += static_cast<std::uint32_t>(std::popcount(words_[w] ^ o.words_[w]));
        return d;
    }

    bool operator==(const Configuration& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }
    bool operator!=(const Configuration& o) const { return !(*this == o); }

    // Lexicographic on (eta_0, eta_1, ...): 0 sorts before 1 at the first
    // differing site. Used for deterministic tie-breaks.
    bool lex_less(const Configuration& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            const std::uint64_t x = words_[w] ^ o.words_[w];
            if (x) {
                const int b = std::countr_zero(x);
                return !((words_[w] >> b) & 1u);
            }
        }
        return false;
    }

    // Expand to 0.0/1.0 doubles (kernel input); out must hold size() entries.
    void to_doubles(double* out) const {
        for (std::uint32_t i = 0; i < n_; ++i) out[i] = get(i) ? 1.0 : 0.0;
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint32_t n_;
    std::uint32_t ones_;
};

}  // namespace qubo

#endif
