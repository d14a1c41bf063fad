#include "doctest.h"

#include <cmath>

#include <omp.h>

#include "qubo/experiments.hpp"

using namespace qubo;

namespace {

SolverConfig quick_cfg() {
    SolverConfig cfg;
    cfg.grid = {{2.0, 1.0}, {4.0, 2.0}};
    cfg.sweeps = 200;
    return cfg;
}

}  // namespace

TEST_CASE("solve_one and solve_both are deterministic and consistent") {
    const CouplingMatrix j = generate(24, CouplingDistribution::standard_gaussian(), 44);
    const SolverConfig cfg = quick_cfg();
    const ReplicaSolves a = solve_both(j, cfg, 7);
    const ReplicaSolves b = solve_both(j, cfg, 7);
    CHECK(a.min_result.best_energy == b.min_result.best_energy);
    CHECK(a.max_result.best_config == b.max_result.best_config);
    CHECK(a.min_result.best_energy <= 0.0);
    CHECK(a.max_result.best_energy >= 0.0);
}

TEST_CASE("replica seeds never reshuffle when the set grows") {
    const std::uint64_t s1 = replica_seed(5, "table1", 100, 7);
    CHECK(s1 == replica_seed(5, "table1", 100, 7));
    CHECK(s1 != replica_seed(5, "table1", 200, 7));
    CHECK(s1 != replica_seed(5, "blocks", 100, 7));
}

TEST_CASE("concentration experiment") {
    SUBCASE("degenerate all-zero instances have zero variance") {
        const auto zeros = [](std::uint32_t n, std::uint64_t) {
            return CouplingMatrix::dense(n, std::vector<double>(std::size_t(n) * n, 0.0), 1.0,
                                         true);
        };
        const auto rows = concentration_experiment(zeros, {12}, 30, quick_cfg(), 3);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].mean_m_max == 0.0);
        CHECK(rows[0].var_m_max == 0.0);
        CHECK(rows[0].var_m_min == 0.0);
        CHECK_THROWS_AS(concentration_experiment(zeros, {12}, 10, quick_cfg(), 3),
                        std::invalid_argument);
    }
    SUBCASE("gaussian variance shrinks with n (small smoke version)") {
        const auto rows =
            concentration_experiment(CouplingDistribution::standard_gaussian(), {16, 64}, 60,
                                     quick_cfg(), 11);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].n == 16);
        CHECK(rows[1].var_m_max < rows[0].var_m_max);
        CHECK(rows[1].mean_m_max > 0.3);
    }
}

TEST_CASE("configuration keeps its ones count in sync") {
    const rng::CounterRng r(6);
    Configuration c(130);
    std::uint32_t expected = 0;
    for (int step = 0; step < 2000; ++step) {
        const std::uint32_t i = static_cast<std::uint32_t>(r.below(step, 130));
        const bool was = c.get(i);
        c.flip(i);
        expected += was ? -1 : 1;
        REQUIRE(c.ones() == expected);
    }
    std::uint32_t pop = 0;
    for (std::uint32_t i = 0; i < 130; ++i) pop += c.get(i);
    CHECK(pop == c.ones());
}

TEST_CASE("diluted couplings reach the dense gaussian optimum level") {
    // delta = 1.8 at n = 1000 against dense gaussian at the same size; the
    // per-particle optima agree to well within 0.03.
    const std::uint32_t n = 1000;
    const int reps = 10;
    SolverConfig cfg;
    cfg.grid = {{2.0, 1.0}, {4.0, 2.0}};
    cfg.sweeps = 1000;
    const auto diluted =
        CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.8);
    const auto dense = CouplingDistribution::standard_gaussian();
    Welford md, mg;
    std::vector<double> vd(reps), vg(reps);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < reps; ++r) {
        const OptimumStats a =
            run_optima_replica(n, diluted, replica_seed(88, "dil", n, r), cfg);
        const OptimumStats b =
            run_optima_replica(n, dense, replica_seed(88, "den", n, r), cfg);
        vd[r] = 0.5 * (a.m_min + a.m_max);
        vg[r] = 0.5 * (b.m_min + b.m_max);
    }
    for (int r = 0; r < reps; ++r) {
        md.add(vd[r]);
        mg.add(vg[r]);
    }
    CHECK(std::abs(md.mean() - mg.mean()) <= 0.03);
    CHECK(mg.mean() > 0.38);
}

TEST_CASE("universality experiment self-consistency") {
    // The same distribution under two names and disjoint seed spaces agrees
    // within 3 joint standard errors.
    const std::vector<std::pair<std::string, CouplingDistribution>> dists = {
        {"gauss_a", CouplingDistribution::standard_gaussian()},
        {"gauss_b", CouplingDistribution::standard_gaussian()}};
    const auto rows = universality_experiment(dists, 48, 80, quick_cfg(), 21);
    REQUIRE(rows.size() == 2);
    const double d = std::abs(rows[0].mean_m - rows[1].mean_m);
    const double joint =
        std::sqrt(rows[0].std_error * rows[0].std_error + rows[1].std_error * rows[1].std_error);
    CHECK(d <= 3.0 * joint);
    CHECK_THROWS_AS(universality_experiment({dists[0]}, 16, 10, quick_cfg(), 1),
                    std::invalid_argument);
}

TEST_CASE("experiment results are bit-identical across thread counts") {
    omp_set_num_threads(1);
    const auto one = concentration_experiment(CouplingDistribution::standard_gaussian(), {16},
                                              30, quick_cfg(), 31);
    omp_set_num_threads(8);
    const auto eight = concentration_experiment(CouplingDistribution::standard_gaussian(),
                                                {16}, 30, quick_cfg(), 31);
    omp_set_num_threads(omp_get_num_procs());
    CHECK(one[0].mean_m_min == eight[0].mean_m_min);
    CHECK(one[0].var_m_max == eight[0].var_m_max);
}
