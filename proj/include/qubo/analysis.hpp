#ifndef QUBO_ANALYSIS_HPP
#define QUBO_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qubo/configuration.hpp"
#include "qubo/instance.hpp"
#include "qubo/solvers.hpp"
#include "qubo/welford.hpp"

namespace qubo {

struct OptimumStats {
    std::uint32_t n;
    double m_min;      // -min H / n
    double m_max;      // max H / n
    double alpha_min;  // ones fraction of the minimizer
    double alpha_max;  // ones fraction of the maximizer
};

// Checks the results actually belong to j (shape and energy consistency).
OptimumStats optimum_stats(const CouplingMatrix& j, const SolveResult& min_result,
                           const SolveResult& max_result);

// I1 = {min=1,max=0}, I2 = {1,1}, I3 = {0,1}, I4 = {0,0}.
struct BlockPartition {
    std::array<std::vector<std::uint32_t>, 4> sets;
    std::vector<std::uint8_t> label;  // per index, 0..3
};

BlockPartition block_partition(const Configuration& min_config,
                               const Configuration& max_config);

struct BlockStats {
    std::uint32_t n = 0;
    std::uint64_t replica_count = 0;
    std::array<double, 4> alphas{};             // mean |I_k|/n over replicas
    std::array<std::array<double, 4>, 4> mu{};  // mean raw entry per block
    std::array<std::array<double, 4>, 4> sigma_tilde{};
    std::array<std::array<bool, 4>, 4> defined{};  // false where a block was empty
};

// One replica's contribution: set sizes and raw-entry sums per block. Kept
// separable so experiment journals can persist and replay replicas.
struct BlockReplica {
    std::array<std::uint64_t, 4> sizes{};
    std::array<std::array<double, 4>, 4> sums{};
};

BlockReplica block_replica_stats(const CouplingMatrix& j, const BlockPartition& p);

// Per-replica accumulation of raw-entry block statistics. sigma_tilde[k][l]
// is Var over replicas of the block entry sum divided by the mean block
// size: 1 for i.i.d. unit-variance entries, above/below 1 for positive/
// negative pairwise correlation.
class BlockAccumulator {
public:
    void add(const CouplingMatrix& j, const BlockPartition& p);
    void add_replica(std::uint32_t n, const BlockReplica& r);
    void merge(const BlockAccumulator& o);
    BlockStats finalize() const;
    std::uint64_t replicas() const { return replicas_; }

private:
    std::uint32_t n_ = 0;
    std::uint64_t replicas_ = 0;
    std::array<std::array<double, 4>, 4> entry_sum_{};
    std::array<std::array<std::uint64_t, 4>, 4> entry_count_{};
    std::array<std::array<Welford, 4>, 4> sum_over_replicas_{};
    std::array<Welford, 4> alpha_{};
};

struct OrderingCurve {
    std::vector<double> rank_centers;  // bin centers as fractions of n
    std::vector<double> p_min, p_max, p_joint;
    std::vector<double> ratio;        // p_joint / (p_min * p_max)
    std::vector<double> ratio_sigma;  // delta-method standard error
    std::vector<std::uint64_t> trials;
};

// One replica's bin counts: {trials, in-min, in-max, in-both} per bin.
struct OrderingReplica {
    std::vector<std::array<std::uint64_t, 4>> bins;
};

OrderingReplica ordering_replica_counts(const CouplingMatrix& j,
                                        const Configuration& min_config,
                                        const Configuration& max_config, std::uint32_t bins);

// Membership frequencies of row-sum-ranked indices. Rank r of n goes to bin
// r*bins/n; ranking is by ascending row sums of the symmetrized matrix with
// ties broken by index.
class OrderingAccumulator {
public:
    explicit OrderingAccumulator(std::uint32_t bins = 64);
    void add(const CouplingMatrix& j, const Configuration& min_config,
             const Configuration& max_config);
    void add_replica(const OrderingReplica& r);
    void merge(const OrderingAccumulator& o);
    OrderingCurve finalize() const;
    std::uint32_t bins() const { return bins_; }

private:
    std::uint32_t bins_;
    std::vector<std::uint64_t> trials_, cnt_min_, cnt_max_, cnt_joint_;
};

// I(x) = -x log x - (1-x) log(1-x), with 0 log 0 = 0.
double entropy(double x);

struct GaussianBoundConstants {
    double m_star;
    double alpha_star;
};

// Extremal m such that alpha -> I(alpha) - m^2/(2 alpha^2 (1-alpha)^2) has no
// zeros in (0,1): alpha scanned on a 1e-4 grid, m bisected to 1e-6. Returns
// (m, argmax alpha). The commonly quoted constants for this bound are
// (0.562, 0.644); see gaussian_bound_reference().
GaussianBoundConstants gaussian_bound_constants();

// The literature values reported alongside the computed pair.
constexpr GaussianBoundConstants gaussian_bound_reference() { return {0.562, 0.644}; }

}  // namespace qubo

#endif
