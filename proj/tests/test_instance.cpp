#include "doctest.h"

#include <cmath>

#include "qubo/energy.hpp"
#include "qubo/instance.hpp"

using namespace qubo;

TEST_CASE("generate is deterministic in (n, dist, seed)") {
    const auto d = CouplingDistribution::standard_gaussian();
    const CouplingMatrix a = generate(4, d, 12345);
    const CouplingMatrix b = generate(4, d, 12345);
    const CouplingMatrix c = generate(4, d, 12346);
    CHECK(a.dense_data() == b.dense_data());
    CHECK(a.dense_data() != c.dense_data());
    CHECK(a.w() == b.w());
}

TEST_CASE("normalization constant") {
    CHECK(normalization_constant(1, 1.0, 1.0) == 1.0);
    CHECK(normalization_constant(100, 1.0, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
    // Benchmark-family variance (201^2-1)/6 at n=3000, rho=0.5.
    CHECK(normalization_constant(3000, 0.5, (201.0 * 201.0 - 1.0) / 6.0) ==
          doctest::Approx(3.146583877637763e-4).epsilon(1e-9));
    CHECK_THROWS_AS(normalization_constant(10, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(10, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(10, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("moment checks on pooled entries") {
    const std::uint32_t n = 1000;  // 1e6 entries
    SUBCASE("gaussian") {
        const CouplingMatrix j = generate(n, CouplingDistribution::standard_gaussian(), 7);
        double s = 0, s2 = 0;
        for (double v : j.dense_data()) { s += v; s2 += v * v; }
        const double cnt = static_cast<double>(n) * n;
        const double mean = s / cnt;
        CHECK(std::abs(mean) < 4.0 / std::sqrt(cnt));
        CHECK(std::abs(s2 / cnt - mean * mean - 1.0) < 0.05);
    }
    SUBCASE("shifted exponential") {
        const CouplingMatrix j = generate(n, CouplingDistribution::shifted_exponential(), 8);
        double s = 0, s2 = 0, mn = 1e300;
        for (double v : j.dense_data()) { s += v; s2 += v * v; mn = std::min(mn, v); }
        const double cnt = static_cast<double>(n) * n;
        const double mean = s / cnt;
        CHECK(std::abs(mean) < 4.0 / std::sqrt(cnt));
        CHECK(std::abs(s2 / cnt - mean * mean - 1.0) < 0.05);
        CHECK(mn >= -1.0);  // support of X - 1
    }
    SUBCASE("uniform integers") {
        const auto d = CouplingDistribution::uniform_integer(-100, 100);
        const CouplingMatrix j = generate(n, d, 9);
        double s = 0, s2 = 0;
        for (double v : j.dense_data()) {
            REQUIRE(v == std::floor(v));
            REQUIRE(v >= -100);
            REQUIRE(v <= 100);
            s += v;
            s2 += v * v;
        }
        const double cnt = static_cast<double>(n) * n;
        const double mean = s / cnt;
        const double vard = d.variance();
        CHECK(std::abs(mean) < 4.0 * std::sqrt(vard / cnt));
        CHECK(std::abs((s2 / cnt - mean * mean) / vard - 1.0) < 0.05);
        CHECK(j.w() == doctest::Approx(1.0 / std::sqrt(n * vard)));
    }
}

TEST_CASE("uniform_integer parameter validation") {
    CHECK_THROWS_AS(CouplingDistribution::uniform_integer(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(CouplingDistribution::uniform_integer(-5, 0), std::invalid_argument);
    CHECK_THROWS_AS(
        CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 2.5),
        std::invalid_argument);
}

TEST_CASE("dilution density tracks N^(delta-2)") {
    SUBCASE("sparse regime, 4 binomial sigmas") {
        const std::uint32_t n = 2000;
        const double delta = 1.5;
        const auto d =
            CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), delta);
        const CouplingMatrix j = generate(n, d, 11);
        CHECK(!j.is_dense());
        const double p = std::pow(n, delta - 2.0);
        const double cnt = static_cast<double>(n) * n;
        const double sigma = std::sqrt(p * (1.0 - p) / cnt);
        CHECK(std::abs(j.realized_density() - p) < 4.0 * sigma);
        CHECK(j.w() == doctest::Approx(1.0 / std::sqrt(p * n)));
    }
    SUBCASE("n=4000 delta=1.3 lands on density 0.003") {
        const auto d =
            CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.3);
        const CouplingMatrix j = generate(4000, d, 12);
        const double p = std::pow(4000.0, -0.7);
        CHECK(std::abs(p - 0.003) < 5e-5);
        const double sigma = std::sqrt(p * (1.0 - p)) / 4000.0;
        CHECK(std::abs(j.realized_density() - p) < 3.0 * sigma);
    }
    SUBCASE("n=16000 delta=1.9 lands on density 0.3798 (dense storage)") {
        const auto d =
            CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.9);
        const CouplingMatrix j = generate(16000, d, 13);
        CHECK(j.is_dense());
        const double p = std::pow(16000.0, -0.1);
        CHECK(std::abs(p - 0.3798) < 5e-4);
        const double sigma = std::sqrt(p * (1.0 - p)) / 16000.0;
        CHECK(std::abs(j.realized_density() - p) < 4.0 * sigma);
    }
}

TEST_CASE("symmetrize") {
    SUBCASE("hand case") {
        const CouplingMatrix j = CouplingMatrix::dense(2, {0, 2, 0, 0}, 1.0, false);
        const CouplingMatrix s = symmetrize(j);
        CHECK(s.symmetric());
        CHECK(s.entry(0, 1) == 1.0);
        CHECK(s.entry(1, 0) == 1.0);
        CHECK(s.entry(0, 0) == 0.0);
        CHECK(s.w() == j.w());
    }
    SUBCASE("idempotent on symmetric input") {
        const CouplingMatrix j = generate(16, CouplingDistribution::standard_gaussian(), 3);
        const CouplingMatrix s = symmetrize(j);
        const CouplingMatrix s2 = symmetrize(s);
        CHECK(s.dense_data() == s2.dense_data());
    }
    SUBCASE("energy preserved for every configuration at n=8") {
        const CouplingMatrix j = generate(8, CouplingDistribution::standard_gaussian(), 4);
        const CouplingMatrix s = symmetrize(j);
        for (std::uint32_t mask = 0; mask < 256; ++mask) {
            Configuration eta(8);
            for (std::uint32_t i = 0; i < 8; ++i)
                if ((mask >> i) & 1) eta.set(i, true);
            CHECK(energy(j, eta) ==
                  doctest::Approx(energy(s, eta)).epsilon(1e-12));
        }
    }
    SUBCASE("sparse union of patterns") {
        Csr c;
        c.row_ptr = {0, 1, 1, 2};
        c.col = {2, 0};
        c.val = {4.0, 6.0};
        // J = [[0,0,4],[0,0,0],[6,0,0]] -> Jsym = [[0,0,5],[0,0,0],[5,0,0]]
        const CouplingMatrix j = CouplingMatrix::sparse(3, std::move(c), 1.0, false, 0.2);
        const CouplingMatrix s = symmetrize(j);
        CHECK(s.symmetric());
        CHECK(s.entry(0, 2) == 5.0);
        CHECK(s.entry(2, 0) == 5.0);
        CHECK(s.entry(0, 0) == 0.0);
        CHECK(s.density_hint() == j.density_hint());
    }
}

TEST_CASE("zero_diagonal clears the diagonal only") {
    const CouplingMatrix j = generate(10, CouplingDistribution::standard_gaussian(), 21);
    const CouplingMatrix z = zero_diagonal(j);
    for (std::uint32_t i = 0; i < 10; ++i) {
        CHECK(z.entry(i, i) == 0.0);
        for (std::uint32_t c = 0; c < 10; ++c)
            if (c != i) CHECK(z.entry(i, c) == j.entry(i, c));
    }
}
