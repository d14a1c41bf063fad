#ifndef QUBO_ENERGY_HPP
#define QUBO_ENERGY_HPP

#include <cstdint>
#include <vector>

#include "qubo/configuration.hpp"
#include "qubo/instance.hpp"

namespace qubo {

// Local fields h_i = (1/sqrt(n)) * sum_j Jsym_ij eta_j for one configuration.
struct FieldVector {
    std::vector<double> h;
};

// H(J, eta) = W * sum_ij J_ij eta_i eta_j over all ordered pairs, diagonal
// included. Works for any J (symmetry not required).
double energy(const CouplingMatrix& j, const Configuration& eta);

// Requires j_sym.symmetric(); uses the OpenMP mat-vec.
FieldVector local_fields(const CouplingMatrix& j_sym, const Configuration& eta);

// Exact energy change if eta_i were flipped, from the current fields:
//   0 -> 1:  +W * (2*sqrt(n)*h_i + Jsym_ii)
//   1 -> 0:  -W * (2*sqrt(n)*h_i - Jsym_ii)
double delta_ones_flip(const CouplingMatrix& j_sym, const FieldVector& h,
                       const Configuration& eta, std::uint32_t i);

// After flipping site i (eta already updated), fold column i of Jsym into h.
void apply_flip_to_fields(const CouplingMatrix& j_sym, const Configuration& eta,
                          std::uint32_t i, FieldVector& h);

// F_beta = beta^-1 * log sum_eta exp(beta * H(J, eta)), log-sum-exp
// stabilized; enumerates all 2^n configurations, so n <= 24.
double exact_free_energy(const CouplingMatrix& j, double beta);

inline constexpr std::uint32_t kMaxEnumerationSites = 24;

}  // namespace qubo

#endif
