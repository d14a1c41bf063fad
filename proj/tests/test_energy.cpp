#include "doctest.h"

#include <cmath>

#include "qubo/energy.hpp"
#include "qubo/instance.hpp"

using namespace qubo;

namespace {

// Hand instance: J = [[0,-1],[-1,0]], W = 1/sqrt(2). Energies: 0,0,0,-sqrt(2).
CouplingMatrix hand_2x2() {
    return CouplingMatrix::dense(2, {0.0, -1.0, -1.0, 0.0}, 1.0 / std::sqrt(2.0), true);
}

Configuration from_mask(std::uint32_t n, std::uint32_t mask) {
    Configuration c(n);
    for (std::uint32_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) c.set(i, true);
    return c;
}

// Independent oracle: flat triple loop over all ordered pairs.
double naive_energy(const CouplingMatrix& j, const Configuration& eta) {
    double acc = 0.0;
    for (std::uint32_t a = 0; a < j.n(); ++a)
        for (std::uint32_t b = 0; b < j.n(); ++b)
            acc += j.entry(a, b) * (eta.get(a) ? 1.0 : 0.0) * (eta.get(b) ? 1.0 : 0.0);
    return j.w() * acc;
}

}  // namespace

TEST_CASE("energy basics") {
    const CouplingMatrix j = hand_2x2();
    CHECK(energy(j, from_mask(2, 0)) == 0.0);
    CHECK(energy(j, from_mask(2, 3)) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

    const CouplingMatrix g = generate(10, CouplingDistribution::standard_gaussian(), 31);
    for (std::uint32_t mask : {0u, 5u, 1023u, 512u, 731u}) {
        const Configuration eta = from_mask(10, mask);
        CHECK(energy(g, eta) == doctest::Approx(naive_energy(g, eta)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(energy(g, Configuration(9)), std::invalid_argument);
}

TEST_CASE("local fields") {
    SUBCASE("zeros give zeros") {
        const CouplingMatrix j = symmetrize(
            generate(12, CouplingDistribution::standard_gaussian(), 5));
        const FieldVector f = local_fields(j, Configuration(12));
        for (double h : f.h) CHECK(h == 0.0);
    }
    SUBCASE("hand case") {
        const CouplingMatrix j = CouplingMatrix::dense(2, {0, 1, 1, 0}, 1.0, true);
        Configuration eta(2);
        eta.set(1, true);
        const FieldVector f = local_fields(j, eta);
        CHECK(f.h[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(f.h[1] == 0.0);
    }
    SUBCASE("requires symmetrized input") {
        const CouplingMatrix j = generate(6, CouplingDistribution::standard_gaussian(), 6);
        CHECK_THROWS_AS(local_fields(j, Configuration(6)), std::invalid_argument);
    }
    SUBCASE("sparse matches dense recomputation") {
        const auto dist =
            CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.2);
        const CouplingMatrix js = symmetrize(generate(16, dist, 7));
        REQUIRE(!js.is_dense());
        std::vector<double> dense(16 * 16);
        for (std::uint32_t i = 0; i < 16; ++i)
            for (std::uint32_t c = 0; c < 16; ++c)
                dense[i * 16 + c] = js.entry(i, c);
        const CouplingMatrix jd = CouplingMatrix::dense(16, std::move(dense), js.w(), true);
        const Configuration eta =
            Configuration::bernoulli_half(16, rng::CounterRng(8).child("init"));
        const FieldVector fs = local_fields(js, eta);
        const FieldVector fd = local_fields(jd, eta);
        for (std::uint32_t i = 0; i < 16; ++i)
            CHECK(fs.h[i] == doctest::Approx(fd.h[i]).epsilon(1e-12));
    }
    SUBCASE("invariant: matches a fresh recomputation to 1e-9 relative") {
        const CouplingMatrix j = symmetrize(
            generate(64, CouplingDistribution::standard_gaussian(), 9));
        const Configuration eta =
            Configuration::bernoulli_half(64, rng::CounterRng(10).child("init"));
        const FieldVector f = local_fields(j, eta);
        for (std::uint32_t i = 0; i < 64; ++i) {
            double s = 0.0;
            for (std::uint32_t c = 0; c < 64; ++c)
                if (eta.get(c)) s += j.entry(i, c);
            s /= std::sqrt(64.0);
            CHECK(f.h[i] == doctest::Approx(s).epsilon(1e-9));
        }
    }
}

TEST_CASE("delta_ones_flip") {
    const CouplingMatrix j = symmetrize(
        generate(12, CouplingDistribution::standard_gaussian(), 17));

    SUBCASE("hand case: flipping site 0 from (0,1) gives -sqrt(2)") {
        const CouplingMatrix h = hand_2x2();
        Configuration eta(2);
        eta.set(1, true);
        const FieldVector f = local_fields(h, eta);
        CHECK(delta_ones_flip(h, f, eta, 0) ==
              doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    }

    SUBCASE("two flips of the same site cancel") {
        Configuration eta = Configuration::bernoulli_half(12, rng::CounterRng(1).child("init"));
        FieldVector f = local_fields(j, eta);
        const double d1 = delta_ones_flip(j, f, eta, 5);
        eta.flip(5);
        apply_flip_to_fields(j, eta, 5, f);
        const double d2 = delta_ones_flip(j, f, eta, 5);
        CHECK(d1 + d2 == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("matches a full recomputation") {
        Configuration eta = Configuration::bernoulli_half(12, rng::CounterRng(2).child("init"));
        FieldVector f = local_fields(j, eta);
        const rng::CounterRng pick(33);
        for (int step = 0; step < 200; ++step) {
            const std::uint32_t i = static_cast<std::uint32_t>(pick.below(step, 12));
            const double before = energy(j, eta);
            const double d = delta_ones_flip(j, f, eta, i);
            eta.flip(i);
            apply_flip_to_fields(j, eta, i, f);
            const double after = energy(j, eta);
            CHECK(after - before == doctest::Approx(d).epsilon(1e-9));
        }
    }

    SUBCASE("incremental energy stays within 1e-9 relative over 1e4 flips") {
        const CouplingMatrix big = symmetrize(
            generate(64, CouplingDistribution::standard_gaussian(), 18));
        Configuration eta = Configuration::bernoulli_half(64, rng::CounterRng(3).child("init"));
        FieldVector f = local_fields(big, eta);
        double e = energy(big, eta);
        const rng::CounterRng pick(44);
        for (int step = 0; step < 10000; ++step) {
            const std::uint32_t i = static_cast<std::uint32_t>(pick.below(step, 64));
            e += delta_ones_flip(big, f, eta, i);
            eta.flip(i);
            apply_flip_to_fields(big, eta, i, f);
        }
        const double fresh = energy(big, eta);
        CHECK(std::abs(e - fresh) <= 1e-9 * (1.0 + std::abs(fresh)));
    }

    CHECK_THROWS_AS(
        delta_ones_flip(j, local_fields(j, Configuration(12)), Configuration(12), 12),
        std::out_of_range);
}

TEST_CASE("exact free energy") {
    SUBCASE("n=1 with J=0 gives log(2)/beta") {
        const CouplingMatrix j = CouplingMatrix::dense(1, {0.0}, 1.0, true);
        for (double beta : {1.0, 4.0, 16.0})
            CHECK(exact_free_energy(j, beta) ==
                  doctest::Approx(std::log(2.0) / beta).epsilon(1e-12));
    }
    SUBCASE("n=2 hand case at beta=1: three zero-energy states plus -sqrt(2)") {
        const CouplingMatrix j = hand_2x2();
        CHECK(exact_free_energy(j, 1.0) ==
              doctest::Approx(std::log(3.0 + std::exp(-std::sqrt(2.0)))).epsilon(1e-12));
    }
    SUBCASE("sandwich: 0 <= F - max H <= n log2 / beta") {
        for (int inst = 0; inst < 20; ++inst) {
            const std::uint32_t n = 4 + inst % 9;  // up to 12
            const CouplingMatrix j =
                generate(n, CouplingDistribution::standard_gaussian(), 100 + inst);
            double mx = -1e300;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
                mx = std::max(mx, energy(j, from_mask(n, mask)));
            for (double beta : {1.0, 4.0, 16.0}) {
                const double f = exact_free_energy(j, beta);
                CHECK(f >= mx - 1e-9);
                CHECK(f <= mx + n * std::log(2.0) / beta + 1e-9);
            }
        }
    }
    SUBCASE("capacity and parameter errors") {
        const CouplingMatrix j = CouplingMatrix::dense(1, {0.0}, 1.0, true);
        CHECK_THROWS_AS(exact_free_energy(j, 0.0), std::invalid_argument);
        const CouplingMatrix big = generate(25, CouplingDistribution::standard_gaussian(), 1);
        CHECK_THROWS_AS(exact_free_energy(big, 1.0), std::length_error);
    }
}
