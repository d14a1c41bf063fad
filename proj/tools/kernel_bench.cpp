// Times the serial reference kernels against their OpenMP counterparts and
// checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "qubo/configuration.hpp"
#include "qubo/instance.hpp"
#include "qubo/kernels.hpp"

using namespace qubo;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int iters) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int i = 0; i < iters; ++i) fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / iters;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    std::uint32_t n = 2048, k = 9;
    int iters = 20;
    int threads = 0;
    app.add_option("--n", n, "matrix size");
    app.add_option("--k", k, "batch width");
    app.add_option("--iters", iters, "timing iterations");
    app.add_option("--threads", threads, "OpenMP threads (default: all cores)");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    std::printf("n=%u k=%u iters=%d threads=%d\n", n, k, iters, omp_get_max_threads());

    const CouplingMatrix jd =
        symmetrize(generate(n, CouplingDistribution::standard_gaussian(), 1));
    const auto sparse_dist =
        CouplingDistribution::diluted(CouplingDistribution::standard_gaussian(), 1.5);
    const CouplingMatrix js = symmetrize(generate(n, sparse_dist, 2));

    const Configuration eta = Configuration::bernoulli_half(n, rng::CounterRng(3).child("init"));
    std::vector<double> x(n);
    eta.to_doubles(x.data());
    std::vector<double> e(static_cast<std::size_t>(n) * k);
    for (std::uint32_t m = 0; m < k; ++m)
        for (std::uint32_t i = 0; i < n; ++i)
            e[static_cast<std::size_t>(i) * k + m] =
                rng::CounterRng(m).coin(i) ? 1.0 : 0.0;

    std::vector<double> out_a(n), out_b(n);
    std::vector<double> big_a(static_cast<std::size_t>(n) * k);
    std::vector<double> big_b(big_a.size());

    struct Row {
        const char* name;
        double serial_ms, omp_ms;
        bool identical;
    };
    std::vector<Row> rows;

    {
        const double s = time_ms(
            [&] { kernels::matvec_serial(jd.dense_data().data(), n, x.data(), out_a.data()); },
            iters);
        const double p = time_ms(
            [&] { kernels::matvec_omp(jd.dense_data().data(), n, x.data(), out_b.data()); },
            iters);
        rows.push_back({"dense matvec", s, p, same_bits(out_a, out_b)});
    }
    {
        const double s =
            time_ms([&] { kernels::spmv_serial(js.csr(), n, x.data(), out_a.data()); }, iters);
        const double p =
            time_ms([&] { kernels::spmv_omp(js.csr(), n, x.data(), out_b.data()); }, iters);
        rows.push_back({"sparse matvec", s, p, same_bits(out_a, out_b)});
    }
    {
        const double s = time_ms(
            [&] {
                kernels::matmul_serial(jd.dense_data().data(), n, e.data(), k, big_a.data());
            },
            iters);
        const double p = time_ms(
            [&] { kernels::matmul_omp(jd.dense_data().data(), n, e.data(), k, big_b.data()); },
            iters);
        rows.push_back({"dense batched", s, p, same_bits(big_a, big_b)});
    }
    {
        const double s = time_ms(
            [&] { kernels::sp_matmul_serial(js.csr(), n, e.data(), k, big_a.data()); }, iters);
        const double p = time_ms(
            [&] { kernels::sp_matmul_omp(js.csr(), n, e.data(), k, big_b.data()); }, iters);
        rows.push_back({"sparse batched", s, p, same_bits(big_a, big_b)});
    }
    {
        std::vector<double> h(n);
        const rng::CounterRng hr(9);
        for (std::uint32_t i = 0; i < n; ++i) h[i] = hr.gaussian(2 * i);
        Configuration t1(n), t2(n);
        const rng::CounterRng r = rng::CounterRng(7).child("pca");
        const double s = time_ms(
            [&] { kernels::pca_sample_serial(h.data(), n, 2.0, 1.0, eta, r, 0, t1); }, iters);
        const double p = time_ms(
            [&] { kernels::pca_sample_omp(h.data(), n, 2.0, 1.0, eta, r, 0, t2); }, iters);
        rows.push_back({"pca sweep", s, p, t1 == t2});
    }

    const double flops = 2.0 * static_cast<double>(n) * n;
    std::printf("%-16s %12s %12s %9s %9s\n", "kernel", "serial(ms)", "omp(ms)", "speedup",
                "bits");
    for (const Row& r : rows) {
        std::printf("%-16s %12.3f %12.3f %8.2fx %9s\n", r.name, r.serial_ms, r.omp_ms,
                    r.serial_ms / r.omp_ms, r.identical ? "equal" : "DIFFER");
        if (!r.identical) return 1;
    }
    std::printf("dense matvec throughput: %.2f GFLOP/s serial, %.2f GFLOP/s omp\n",
                flops / rows[0].serial_ms / 1e6, flops / rows[0].omp_ms / 1e6);
    return 0;
}
