#ifndef QUBO_WELFORD_HPP
#define QUBO_WELFORD_HPP

#include <cmath>
#include <cstdint>

namespace qubo {

// Streaming mean/variance (Welford); merge() is Chan's parallel combination.
class Welford {
public:
    void add(double x) {
        ++count_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(count_);
        m2_ += d * (x - mean_);
    }

    void merge(const Welford& o) {
        if (o.count_ == 0) return;
        if (count_ == 0) { *this = o; return; }
        const double nc = static_cast<double>(count_ + o.count_);
        const double d = o.mean_ - mean_;
        m2_ += o.m2_ + d * d * static_cast<double>(count_) * static_cast<double>(o.count_) / nc;
        mean_ += d * static_cast<double>(o.count_) / nc;
        count_ += o.count_;
    }

    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }

    // Sample variance (n-1); 0 with fewer than two samples.
    double variance() const {
        return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
    }
    double stddev() const { return std::sqrt(variance()); }
    double std_error() const {
        return count_ < 1 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace qubo

#endif
