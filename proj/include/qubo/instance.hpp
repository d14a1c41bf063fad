#ifndef QUBO_INSTANCE_HPP
#define QUBO_INSTANCE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qubo/rng.hpp"

namespace qubo {

enum class DistKind { StandardGaussian, ShiftedExponential, UniformInteger, Diluted };

// Entry distribution for random coupling matrices. All kinds are centered;
// Diluted wraps another kind and zeroes each entry with probability
// 1 - N^(delta-2).
class CouplingDistribution {
public:
    static CouplingDistribution standard_gaussian();
    // X - 1 with X exponential of mean 1 (mean 0, variance 1).
    static CouplingDistribution shifted_exponential();
    // Uniform on the integers [lo, hi]; requires lo < 0 < hi.
    static CouplingDistribution uniform_integer(std::int64_t lo, std::int64_t hi);
    // delta in (1, 2]; expected density rho = N^(delta-2).
    static CouplingDistribution diluted(CouplingDistribution inner, double delta);

    DistKind kind() const { return kind_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    double delta() const { return delta_; }
    const CouplingDistribution& inner() const { return *inner_; }

    double mean() const;
    // Variance of the nonzero value (the inner variance for Diluted); this is
    // the Var(J_11) that enters the normalization constant.
    double variance() const;
    // Expected fraction of nonzero entries at size n.
    double density(std::uint32_t n) const;

    // Fixed number of RNG counters one entry consumes, so entry (i,j) owns
    // the counter block [entry_index * draws_per_entry, ...).
    std::uint64_t draws_per_entry() const;

    // Value of one entry from the counter block starting at c0. Not valid for
    // Diluted (the mask draw needs n; generate() owns it).
    double sample(const rng::CounterRng& r, std::uint64_t c0) const;

    std::string describe() const;

private:
    CouplingDistribution() = default;
    DistKind kind_ = DistKind::StandardGaussian;
    std::int64_t lo_ = 0, hi_ = 0;
    double delta_ = 0.0;
    std::shared_ptr<const CouplingDistribution> inner_;
};

// CSR storage for sparse couplings; column indices ascending within each row.
struct Csr {
    std::vector<std::uint64_t> row_ptr;  // size n+1
    std::vector<std::uint32_t> col;
    std::vector<double> val;
};

// The coupling matrix J with its normalization constant W. Immutable after
// construction; safe to share read-only across threads.
class CouplingMatrix {
public:
    static CouplingMatrix dense(std::uint32_t n, std::vector<double> row_major, double w,
                                bool symmetric, double density_hint = 1.0);
    static CouplingMatrix sparse(std::uint32_t n, Csr csr, double w, bool symmetric,
                                 double density_hint);

    std::uint32_t n() const { return n_; }
    double w() const { return w_; }
    void set_w(double w);
    bool symmetric() const { return symmetric_; }
    bool is_dense() const { return dense_storage_; }
    double density_hint() const { return density_hint_; }

    const std::vector<double>& dense_data() const { return dense_; }
    const Csr& csr() const { return csr_; }

    double entry(std::uint32_t i, std::uint32_t j) const;
    double diagonal(std::uint32_t i) const { return entry(i, i); }

    std::uint64_t nonzeros() const;
    double realized_density() const;

private:
    CouplingMatrix() = default;
    std::uint32_t n_ = 0;
    double w_ = 1.0;
    bool symmetric_ = false;
    bool dense_storage_ = true;
    double density_hint_ = 1.0;
    std::vector<double> dense_;  // row-major, n*n, when dense_storage_
    Csr csr_;                    // when !dense_storage_
};

// W such that W * sum_ij J_ij has variance n: 1/sqrt(rho * n * variance).
double normalization_constant(std::uint32_t n, double rho, double variance);

// I.i.d. entries from dist over all n^2 positions (diagonal included);
// deterministic in (n, dist, seed). Sparse storage below density 0.25.
CouplingMatrix generate(std::uint32_t n, const CouplingDistribution& dist, std::uint64_t seed);

// (J + J^T)/2 with the symmetric flag set; W, n and the density hint carry
// over. Sparse patterns are unioned.
CouplingMatrix symmetrize(const CouplingMatrix& j);

// Copy with J_ii = 0; off-diagonal entries and W unchanged.
CouplingMatrix zero_diagonal(const CouplingMatrix& j);

}  // namespace qubo

#endif
