#include "qubo/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace qubo {

namespace {

std::vector<PcaParams> grid_params(const SolverConfig& cfg, std::uint64_t seed,
                                   Objective objective) {
    if (cfg.grid.empty()) throw std::invalid_argument("SolverConfig: grid must be nonempty");
    const std::uint64_t obj_token = objective == Objective::Maximize ? 1 : 0;
    std::vector<PcaParams> ps;
    ps.reserve(cfg.grid.size());
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
        PcaParams p;
        p.beta = cfg.grid[g].first;
        p.q = cfg.grid[g].second;
        p.sweeps = cfg.sweeps;
        if (cfg.ramp_beta) p.beta_ramp = {p.beta, 2.0 * p.beta};
        p.seed = rng::combine(rng::combine(seed, rng::hash_bytes("grid")),
                              2 * g + obj_token);
        ps.push_back(p);
    }
    return ps;
}

}  // namespace

SolveResult solve_one(const CouplingMatrix& j, const SolverConfig& cfg, std::uint64_t seed,
                      Objective objective) {
    const std::vector<SolveResult> rs =
        pca_solve_batch(j, grid_params(cfg, seed, objective), objective);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
        const bool better = objective == Objective::Minimize
                                ? rs[i].best_energy < rs[best].best_energy
                                : rs[i].best_energy > rs[best].best_energy;
        if (better) best = i;
    }
    return rs[best];
}

ReplicaSolves solve_both(const CouplingMatrix& j, const SolverConfig& cfg,
                         std::uint64_t seed) {
    return {solve_one(j, cfg, seed, Objective::Minimize),
            solve_one(j, cfg, seed, Objective::Maximize)};
}

OptimumStats run_optima_replica(std::uint32_t n, const CouplingDistribution& dist,
                                std::uint64_t replica_seed, const SolverConfig& cfg) {
    const std::uint64_t instance_seed =
        rng::combine(replica_seed, rng::hash_bytes("instance"));
    const CouplingMatrix j = generate(n, dist, instance_seed);
    const ReplicaSolves s = solve_both(j, cfg, replica_seed);
    return optimum_stats(j, s.min_result, s.max_result);
}

std::uint64_t replica_seed(std::uint64_t seed_base, std::string_view experiment,
                           std::uint32_t n, std::uint32_t replica) {
    return rng::derive_seed(seed_base, experiment, n, replica);
}

std::vector<ConcentrationRow> concentration_experiment(
    const std::function<CouplingMatrix(std::uint32_t, std::uint64_t)>& make_instance,
    const std::vector<std::uint32_t>& n_list, std::uint32_t replicas, const SolverConfig& cfg,
    std::uint64_t seed_base) {
    if (replicas < 30)
        throw std::invalid_argument("concentration_experiment: need at least 30 replicas per n");
    std::vector<ConcentrationRow> rows;
    for (const std::uint32_t n : n_list) {
        std::vector<OptimumStats> samples(replicas);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(replicas); ++r) {
            const std::uint64_t rs =
                replica_seed(seed_base, "concentration", n, static_cast<std::uint32_t>(r));
            const CouplingMatrix j =
                make_instance(n, rng::combine(rs, rng::hash_bytes("instance")));
            const ReplicaSolves s = solve_both(j, cfg, rs);
            samples[r] = optimum_stats(j, s.min_result, s.max_result);
        }
        Welford wmin, wmax;
        for (const OptimumStats& s : samples) {
            wmin.add(s.m_min);
            wmax.add(s.m_max);
        }
        rows.push_back({n, replicas, wmin.mean(), wmin.std_error(), wmin.variance(),
                        wmax.mean(), wmax.std_error(), wmax.variance()});
    }
    return rows;
}

std::vector<ConcentrationRow> concentration_experiment(
    const CouplingDistribution& dist, const std::vector<std::uint32_t>& n_list,
    std::uint32_t replicas, const SolverConfig& cfg, std::uint64_t seed_base) {
    return concentration_experiment(
        [&dist](std::uint32_t n, std::uint64_t seed) { return generate(n, dist, seed); },
        n_list, replicas, cfg, seed_base);
}

std::vector<UniversalityRow> universality_experiment(
    const std::vector<std::pair<std::string, CouplingDistribution>>& dists, std::uint32_t n,
    std::uint32_t replicas, const SolverConfig& cfg, std::uint64_t seed_base) {
    if (dists.size() < 2)
        throw std::invalid_argument("universality_experiment: need at least 2 distributions");
    std::vector<UniversalityRow> rows;
    for (const auto& [name, dist] : dists) {
        std::vector<double> m(replicas);
        const std::string exp_name = "universality/" + name;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(replicas); ++r) {
            const OptimumStats s = run_optima_replica(
                n, dist, replica_seed(seed_base, exp_name, n, static_cast<std::uint32_t>(r)),
                cfg);
            m[r] = 0.5 * (s.m_min + s.m_max);
        }
        Welford w;
        for (double x : m) w.add(x);
        const double se = w.std_error();
        rows.push_back({name, n, replicas, w.mean(), se, w.mean() - 1.96 * se,
                        w.mean() + 1.96 * se});
    }
    return rows;
}

}  // namespace qubo
