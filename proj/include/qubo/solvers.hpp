#ifndef QUBO_SOLVERS_HPP
#define QUBO_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qubo/configuration.hpp"
#include "qubo/energy.hpp"
#include "qubo/instance.hpp"
#include "qubo/rng.hpp"

namespace qubo {

enum class Objective { Minimize, Maximize };

inline const char* objective_name(Objective o) {
    return o == Objective::Minimize ? "min" : "max";
}

struct PcaParams {
    double beta = 2.0;
    double q = 1.0;
    std::uint32_t sweeps = 2000;
    std::optional<std::pair<double, double>> beta_ramp;  // linear start -> end
    std::optional<std::pair<double, double>> q_ramp;
    std::uint64_t seed = 0;
    bool record_trajectory = false;
};

struct TrajectoryPoint {
    std::uint32_t sweep;
    double energy;          // energy of the configuration entering this sweep
    std::uint32_t hamming;  // distance between eta and the sampled tau
    double best_so_far;
};

struct SolveResult {
    double best_energy = 0.0;
    Configuration best_config;
    Objective objective = Objective::Minimize;
    std::vector<TrajectoryPoint> trajectory;
    std::uint32_t sweeps_to_best = 0;
};

// One synchronous update: samples tau with every site conditionally
// independent, P(tau_i=1) = 1/(1 + exp(beta*h_i(eta) + q*(1-2*eta_i))).
// Site i consumes exactly the draw at counter0 + i of r, so the result does
// not depend on evaluation order.
Configuration pca_step(const CouplingMatrix& j_sym, const Configuration& eta, double beta,
                       double q, const rng::CounterRng& r, std::uint64_t counter0);

// Full heuristic run: symmetrizes J (negates it for Maximize), iterates
// pca_step for `sweeps` sweeps applying the ramps, and returns the best
// diagonal configuration seen. Deterministic in params.seed.
SolveResult pca_solve(const CouplingMatrix& j, const PcaParams& params, Objective objective);

// Replicas share the matrix product J * E across the batch; each element's
// result is bit-identical to a sequential pca_solve with the same params.
std::vector<SolveResult> pca_solve_batch(const CouplingMatrix& j,
                                         const std::vector<PcaParams>& params_list,
                                         Objective objective);

// Single-site-flip Metropolis baseline, n proposals per sweep, acceptance
// min(1, exp(-beta * delta)) with delta signed for the objective.
SolveResult metropolis_solve(const CouplingMatrix& j, double beta, std::uint32_t sweeps,
                             std::uint64_t seed, Objective objective);

// Exhaustive scan of all 2^n configurations (n <= 24) with Gray-code
// incremental energy updates; exact optimum, ties broken toward the
// lexicographically smallest bit pattern.
SolveResult brute_force(const CouplingMatrix& j, Objective objective);

}  // namespace qubo

#endif
