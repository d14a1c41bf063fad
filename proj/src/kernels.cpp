#include "qubo/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qubo::kernels {

namespace {

inline double row_dot(const double* row, const double* x, std::uint32_t n) {
    double acc = 0.0;
    for (std::uint32_t j = 0; j < n; ++j) acc += row[j] * x[j];
    return acc;
}

inline double csr_row_dot(const Csr& a, std::uint32_t i, const double* x) {
    double acc = 0.0;
    for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
        acc += a.val[p] * x[a.col[p]];
    return acc;
}

// Row block of the batched product: k independent accumulators, j ascending,
// so column m reproduces the single matvec bit for bit.
inline void row_block(const double* row, std::uint32_t n, const double* e, std::uint32_t k,
                      double* out) {
    for (std::uint32_t m = 0; m < k; ++m) out[m] = 0.0;
    for (std::uint32_t j = 0; j < n; ++j) {
        const double aj = row[j];
        const double* ej = e + static_cast<std::size_t>(j) * k;
        for (std::uint32_t m = 0; m < k; ++m) out[m] += aj * ej[m];
    }
}

inline void csr_row_block(const Csr& a, std::uint32_t i, const double* e, std::uint32_t k,
                          double* out) {
    for (std::uint32_t m = 0; m < k; ++m) out[m] = 0.0;
    for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
        const double aj = a.val[p];
        const double* ej = e + static_cast<std::size_t>(a.col[p]) * k;
        for (std::uint32_t m = 0; m < k; ++m) out[m] += aj * ej[m];
    }
}

inline std::uint64_t sample_word(const double* h, std::uint32_t n, double beta, double q,
                                 std::uint64_t eta_word, std::uint32_t base,
                                 const rng::CounterRng& r, std::uint64_t counter0) {
    std::uint64_t out = 0;
    const std::uint32_t hi = std::min<std::uint32_t>(64, n - base);
    for (std::uint32_t b = 0; b < hi; ++b) {
        const std::uint32_t i = base + b;
        const double sgn = ((eta_word >> b) & 1u) ? -1.0 : 1.0;  // 1 - 2*eta_i
        const double p1 = 1.0 / (1.0 + std::exp(beta * h[i] + q * sgn));
        if (r.uniform(counter0 + i) < p1) out |= (1ULL << b);
    }
    return out;
}

}  // namespace

void matvec_serial(const double* a, std::uint32_t n, const double* x, double* out) {
    for (std::uint32_t i = 0; i < n; ++i)
        out[i] = row_dot(a + static_cast<std::size_t>(i) * n, x, n);
}

void matvec_omp(const double* a, std::uint32_t n, const double* x, double* out) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        out[i] = row_dot(a + static_cast<std::size_t>(i) * n, x, n);
}

void spmv_serial(const Csr& a, std::uint32_t n, const double* x, double* out) {
    for (std::uint32_t i = 0; i < n; ++i) out[i] = csr_row_dot(a, i, x);
}

void spmv_omp(const Csr& a, std::uint32_t n, const double* x, double* out) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        out[i] = csr_row_dot(a, static_cast<std::uint32_t>(i), x);
}

void matmul_serial(const double* a, std::uint32_t n, const double* e, std::uint32_t k,
                   double* out) {
    for (std::uint32_t i = 0; i < n; ++i)
        row_block(a + static_cast<std::size_t>(i) * n, n, e, k,
                  out + static_cast<std::size_t>(i) * k);
}

void matmul_omp(const double* a, std::uint32_t n, const double* e, std::uint32_t k,
                double* out) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        row_block(a + static_cast<std::size_t>(i) * n, n, e, k,
                  out + static_cast<std::size_t>(i) * k);
}

void sp_matmul_serial(const Csr& a, std::uint32_t n, const double* e, std::uint32_t k,
                      double* out) {
    for (std::uint32_t i = 0; i < n; ++i)
        csr_row_block(a, i, e, k, out + static_cast<std::size_t>(i) * k);
}

void sp_matmul_omp(const Csr& a, std::uint32_t n, const double* e, std::uint32_t k,
                   double* out) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        csr_row_block(a, static_cast<std::uint32_t>(i), e, k,
                      out + static_cast<std::size_t>(i) * k);
}

void pca_sample_serial(const double* h, std::uint32_t n, double beta, double q,
                       const Configuration& eta, const rng::CounterRng& r,
                       std::uint64_t counter0, Configuration& tau) {
    auto& words = tau.mutable_words();
    const std::size_t nw = words.size();
    for (std::size_t w = 0; w < nw; ++w)
        words[w] = sample_word(h, n, beta, q, eta.words()[w],
                               static_cast<std::uint32_t>(w) * 64, r, counter0);
    tau.recount_ones();
}

void pca_sample_omp(const double* h, std::uint32_t n, double beta, double q,
                    const Configuration& eta, const rng::CounterRng& r,
                    std::uint64_t counter0, Configuration& tau) {
    auto& words = tau.mutable_words();
    const std::int64_t nw = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < nw; ++w)
        words[w] = sample_word(h, n, beta, q, eta.words()[w],
                               static_cast<std::uint32_t>(w) * 64, r, counter0);
    tau.recount_ones();
}

double dot_bits(const double* x, const Configuration& eta) {
    double acc = 0.0;
    const auto& words = eta.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            acc += x[w * 64 + static_cast<std::uint32_t>(b)];
            bits &= bits - 1;
        }
    }
    return acc;
}

}  // namespace qubo::kernels
