#include "qubo/energy.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qubo/kernels.hpp"

namespace qubo {

double energy(const CouplingMatrix& j, const Configuration& eta) {
    const std::uint32_t n = j.n();
    if (eta.size() != n) throw std::invalid_argument("energy: dimension mismatch");
    double acc = 0.0;
    if (j.is_dense()) {
        const double* a = j.dense_data().data();
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!eta.get(i)) continue;
            acc += kernels::dot_bits(a + static_cast<std::size_t>(i) * n, eta);
        }
    } else {
        const Csr& a = j.csr();
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!eta.get(i)) continue;
            double row = 0.0;
            for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
                if (eta.get(a.col[p])) row += a.val[p];
            acc += row;
        }
    }
    return j.w() * acc;
}

FieldVector local_fields(const CouplingMatrix& j_sym, const Configuration& eta) {
    const std::uint32_t n = j_sym.n();
    if (eta.size() != n) throw std::invalid_argument("local_fields: dimension mismatch");
    if (!j_sym.symmetric())
        throw std::invalid_argument("local_fields: matrix must be symmetrized first");
    std::vector<double> x(n);
    eta.to_doubles(x.data());
    FieldVector f;
    f.h.resize(n);
    if (j_sym.is_dense())
        kernels::matvec_omp(j_sym.dense_data().data(), n, x.data(), f.h.data());
    else
        kernels::spmv_omp(j_sym.csr(), n, x.data(), f.h.data());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint32_t i = 0; i < n; ++i) f.h[i] *= inv_sqrt_n;
    return f;
}

double delta_ones_flip(const CouplingMatrix& j_sym, const FieldVector& h,
                       const Configuration& eta, std::uint32_t i) {
    const std::uint32_t n = j_sym.n();
    if (i >= n) throw std::out_of_range("delta_ones_flip: index out of range");
    if (h.h.size() != n || eta.size() != n)
        throw std::invalid_argument("delta_ones_flip: dimension mismatch");
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double twice_field = 2.0 * sqrt_n * h.h[i];
    const double d = j_sym.diagonal(i);
    return eta.get(i) ? -j_sym.w() * (twice_field - d) : j_sym.w() * (twice_field + d);
}

void apply_flip_to_fields(const CouplingMatrix& j_sym, const Configuration& eta,
                          std::uint32_t i, FieldVector& h) {
    const std::uint32_t n = j_sym.n();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double s = eta.get(i) ? inv_sqrt_n : -inv_sqrt_n;
    if (j_sym.is_dense()) {
        // Column i of a symmetric matrix is row i.
        const double* row = j_sym.dense_data().data() + static_cast<std::size_t>(i) * n;
        for (std::uint32_t jx = 0; jx < n; ++jx) h.h[jx] += s * row[jx];
    } else {
        const Csr& a = j_sym.csr();
        for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            h.h[a.col[p]] += s * a.val[p];
    }
}

double exact_free_energy(const CouplingMatrix& j, double beta) {
    const std::uint32_t n = j.n();
    if (n > kMaxEnumerationSites)
        throw std::length_error("exact_free_energy: n exceeds the 2^n enumeration cap");
    if (beta == 0.0) throw std::invalid_argument("exact_free_energy: beta must be nonzero");

    // Symmetrize into a small dense buffer; energies are unchanged and the
    // Gray-code walk needs one field update per step.
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k < n; ++k)
            a[static_cast<std::size_t>(i) * n + k] = 0.5 * (j.entry(i, k) + j.entry(k, i));
    const double w = j.w();

    std::vector<double> f(n, 0.0);  // (Jsym * eta)_i for the current eta
    double e = 0.0;                 // H of the current eta

    // Online log-sum-exp over all 2^n energies.
    double shift = beta * e;  // eta = 0 state
    double sum = 1.0;

    const std::uint64_t total = 1ULL << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < total; ++k) {
        const std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(k));
        const std::uint64_t mask = 1ULL << b;
        const bool setting = !(gray & mask);
        gray ^= mask;
        const double diag = a[static_cast<std::size_t>(b) * n + b];
        e += setting ? w * (2.0 * f[b] + diag) : -w * (2.0 * f[b] - diag);
        const double s = setting ? 1.0 : -1.0;
        const double* row = a.data() + static_cast<std::size_t>(b) * n;
        for (std::uint32_t jx = 0; jx < n; ++jx) f[jx] += s * row[jx];

        const double t = beta * e;
        if (t > shift) {
            sum = sum * std::exp(shift - t) + 1.0;
            shift = t;
        } else {
            sum += std::exp(t - shift);
        }
    }
    return (shift + std::log(sum)) / beta;
}

}  // namespace qubo
