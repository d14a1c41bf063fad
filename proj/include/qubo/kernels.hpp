#ifndef QUBO_KERNELS_HPP
#define QUBO_KERNELS_HPP

#include <cstdint>

#include "qubo/configuration.hpp"
#include "qubo/instance.hpp"
#include "qubo/rng.hpp"

// Hot loops, each in a serial and an OpenMP flavor. The OpenMP versions
// partition work so every output element is written by exactly one thread
// with the same per-element arithmetic as the serial code; results are
// bit-identical for any thread count. Serial versions stay as the reference
// the tests and the kernel benchmark compare against.
namespace qubo::kernels {

// out = A * x, A dense row-major n x n.
void matvec_serial(const double* a, std::uint32_t n, const double* x, double* out);
void matvec_omp(const double* a, std::uint32_t n, const double* x, double* out);

// out = A * x for CSR A.
void spmv_serial(const Csr& a, std::uint32_t n, const double* x, double* out);
void spmv_omp(const Csr& a, std::uint32_t n, const double* x, double* out);

// Batched: out[i*k+m] = sum_j a[i*n+j] * e[j*k+m]; e holds k configurations
// site-major so the inner loop runs over replicas and vectorizes.
void matmul_serial(const double* a, std::uint32_t n, const double* e, std::uint32_t k,
                   double* out);
void matmul_omp(const double* a, std::uint32_t n, const double* e, std::uint32_t k,
                double* out);
void sp_matmul_serial(const Csr& a, std::uint32_t n, const double* e, std::uint32_t k,
                      double* out);
void sp_matmul_omp(const Csr& a, std::uint32_t n, const double* e, std::uint32_t k,
                   double* out);

// One conditional update of all sites: tau_i = 1 with probability
// 1/(1 + exp(beta*h_i + q*(1-2 eta_i))), site i drawing rng counter
// counter0 + i. Word-blocked in the OpenMP flavor so bit writes never race.
void pca_sample_serial(const double* h, std::uint32_t n, double beta, double q,
                       const Configuration& eta, const rng::CounterRng& r,
                       std::uint64_t counter0, Configuration& tau);
void pca_sample_omp(const double* h, std::uint32_t n, double beta, double q,
                    const Configuration& eta, const rng::CounterRng& r,
                    std::uint64_t counter0, Configuration& tau);

// sum_i x_i over sites with eta_i = 1, accumulated in ascending site order.
double dot_bits(const double* x, const Configuration& eta);

}  // namespace qubo::kernels

#endif
