#ifndef QUBO_EXPERIMENTS_HPP
#define QUBO_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qubo/analysis.hpp"
#include "qubo/instance.hpp"
#include "qubo/solvers.hpp"

namespace qubo {

// Heuristic configuration for experiment runs: the best result over a
// (beta, q) grid is reported. With ramp_beta each grid point anneals beta
// linearly from beta to 2*beta over the run.
struct SolverConfig {
    std::vector<std::pair<double, double>> grid = {
        {1.0, 0.5}, {1.0, 1.0}, {1.0, 2.0}, {2.0, 0.5}, {2.0, 1.0},
        {2.0, 2.0}, {4.0, 0.5}, {4.0, 1.0}, {4.0, 2.0}};
    std::uint32_t sweeps = 2000;
    bool ramp_beta = true;

    static SolverConfig defaults() { return {}; }
};

// Best-over-grid solve for one objective; deterministic in (j, cfg, seed).
SolveResult solve_one(const CouplingMatrix& j, const SolverConfig& cfg, std::uint64_t seed,
                      Objective objective);

struct ReplicaSolves {
    SolveResult min_result;
    SolveResult max_result;
};

ReplicaSolves solve_both(const CouplingMatrix& j, const SolverConfig& cfg, std::uint64_t seed);

// One replica of the optimum-statistics pipeline: generate, solve both
// objectives, reduce. Seeds for the instance and for each grid run are
// derived from replica_seed.
OptimumStats run_optima_replica(std::uint32_t n, const CouplingDistribution& dist,
                                std::uint64_t replica_seed, const SolverConfig& cfg);

struct ConcentrationRow {
    std::uint32_t n;
    std::uint64_t replicas;
    double mean_m_min, se_m_min, var_m_min;
    double mean_m_max, se_m_max, var_m_max;
};

// Per-n sample mean and variance of the per-particle optima. The factory
// overload lets tests substitute a deterministic instance source.
std::vector<ConcentrationRow> concentration_experiment(
    const CouplingDistribution& dist, const std::vector<std::uint32_t>& n_list,
    std::uint32_t replicas, const SolverConfig& cfg, std::uint64_t seed_base);
std::vector<ConcentrationRow> concentration_experiment(
    const std::function<CouplingMatrix(std::uint32_t n, std::uint64_t seed)>& make_instance,
    const std::vector<std::uint32_t>& n_list, std::uint32_t replicas, const SolverConfig& cfg,
    std::uint64_t seed_base);

struct UniversalityRow {
    std::string dist_name;
    std::uint32_t n;
    std::uint64_t replicas;
    double mean_m;  // average of (m_min + m_max)/2 over replicas
    double std_error;
    double ci95_lo, ci95_hi;
};

std::vector<UniversalityRow> universality_experiment(
    const std::vector<std::pair<std::string, CouplingDistribution>>& dists, std::uint32_t n,
    std::uint32_t replicas, const SolverConfig& cfg, std::uint64_t seed_base);

// seed_base ^ hash(experiment, n, replica); shared by the CLI journal so
// reruns and extensions never reshuffle existing replicas.
std::uint64_t replica_seed(std::uint64_t seed_base, std::string_view experiment,
                           std::uint32_t n, std::uint32_t replica);

}  // namespace qubo

#endif
