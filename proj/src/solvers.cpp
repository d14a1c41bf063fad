#include "qubo/solvers.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qubo/kernels.hpp"

namespace qubo {

namespace {

void validate(const PcaParams& p) {
    if (!(p.beta > 0.0)) throw std::invalid_argument("PcaParams: beta must be positive");
    if (!(p.q > 0.0)) throw std::invalid_argument("PcaParams: q must be positive");
    if (p.sweeps < 1) throw std::invalid_argument("PcaParams: sweeps must be >= 1");
    for (const auto& ramp : {p.beta_ramp, p.q_ramp})
        if (ramp && !(ramp->first > 0.0 && ramp->second > 0.0))
            throw std::invalid_argument("PcaParams: ramp endpoints must be positive");
}

double ramp_at(double constant, const std::optional<std::pair<double, double>>& ramp,
               std::uint32_t t, std::uint32_t sweeps) {
    if (!ramp) return constant;
    if (sweeps <= 1) return ramp->first;
    const double frac = static_cast<double>(t) / static_cast<double>(sweeps - 1);
    return ramp->first + (ramp->second - ramp->first) * frac;
}

// Dynamics for Maximize run on -Jsym; W is untouched.
CouplingMatrix effective_matrix(const CouplingMatrix& j, Objective obj) {
    CouplingMatrix s = j.symmetric() ? j : symmetrize(j);
    if (obj == Objective::Minimize) return s;
    if (s.is_dense()) {
        std::vector<double> a = s.dense_data();
        for (double& v : a) v = -v;
        return CouplingMatrix::dense(s.n(), std::move(a), s.w(), true, s.density_hint());
    }
    Csr c = s.csr();
    for (double& v : c.val) v = -v;
    return CouplingMatrix::sparse(s.n(), std::move(c), s.w(), true, s.density_hint());
}

// beta multiplier making the diagonal pair energy beta * H(eta) exact for any
// W: fields carry 1/sqrt(n) while H carries W. Snapped to 1 where W was built
// as 1/sqrt(n) so the standard dense case keeps beta bit-exact.
double field_scale(const CouplingMatrix& j) {
    const double s = j.w() * std::sqrt(static_cast<double>(j.n()));
    return std::abs(s - 1.0) < 1e-9 ? 1.0 : s;
}

}  // namespace

Configuration pca_step(const CouplingMatrix& j_sym, const Configuration& eta, double beta,
                       double q, const rng::CounterRng& r, std::uint64_t counter0) {
    const FieldVector f = local_fields(j_sym, eta);  // checks symmetry + shape
    Configuration tau(eta.size());
    kernels::pca_sample_omp(f.h.data(), eta.size(), beta, q, eta, r, counter0, tau);
    return tau;
}

std::vector<SolveResult> pca_solve_batch(const CouplingMatrix& j,
                                         const std::vector<PcaParams>& params_list,
                                         Objective objective) {
    if (params_list.empty())
        throw std::invalid_argument("pca_solve_batch: params list must be nonempty");
    for (const PcaParams& p : params_list) validate(p);

    const std::uint32_t n = j.n();
    const std::uint32_t k = static_cast<std::uint32_t>(params_list.size());
    const CouplingMatrix jeff = effective_matrix(j, objective);
    const double w = jeff.w();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double scale = field_scale(j);
    const double obj_sign = objective == Objective::Maximize ? -1.0 : 1.0;

    std::uint32_t max_sweeps = 0;
    std::vector<rng::CounterRng> sweep_rng;
    std::vector<Configuration> eta;
    sweep_rng.reserve(k);
    eta.reserve(k);
    for (const PcaParams& p : params_list) {
        const rng::CounterRng base(p.seed);
        eta.push_back(Configuration::bernoulli_half(n, base.child("init")));
        sweep_rng.push_back(base.child("pca"));
        max_sweeps = std::max(max_sweeps, p.sweeps);
    }

    // E mirrors the configurations as 0/1 doubles, site-major.
    std::vector<double> e(static_cast<std::size_t>(n) * k);
    for (std::uint32_t m = 0; m < k; ++m)
        for (std::uint32_t i = 0; i < n; ++i)
            e[static_cast<std::size_t>(i) * k + m] = eta[m].get(i) ? 1.0 : 0.0;

    std::vector<double> fields(static_cast<std::size_t>(n) * k);
    std::vector<double> f(n), h(n);
    Configuration tau(n);

    std::vector<SolveResult> results(k);
    std::vector<double> best(k, 0.0);
    std::vector<bool> has_best(k, false);
    for (std::uint32_t m = 0; m < k; ++m) {
        results[m].objective = objective;
        results[m].best_config = Configuration(n);
        if (params_list[m].record_trajectory)
            results[m].trajectory.reserve(params_list[m].sweeps);
    }

    for (std::uint32_t t = 0; t <= max_sweeps; ++t) {
        if (jeff.is_dense())
            kernels::matmul_omp(jeff.dense_data().data(), n, e.data(), k, fields.data());
        else
            kernels::sp_matmul_omp(jeff.csr(), n, e.data(), k, fields.data());

        for (std::uint32_t m = 0; m < k; ++m) {
            const PcaParams& p = params_list[m];
            if (t > p.sweeps) continue;

            for (std::uint32_t i = 0; i < n; ++i)
                f[i] = fields[static_cast<std::size_t>(i) * k + m];

            const double cur = w * kernels::dot_bits(f.data(), eta[m]);
            if (!has_best[m] || cur < best[m]) {
                best[m] = cur;
                has_best[m] = true;
                results[m].best_config = eta[m];
                results[m].sweeps_to_best = t;
            }
            if (t == p.sweeps) continue;  // final configuration only gets evaluated

            const double beta_t =
                scale * ramp_at(p.beta, p.beta_ramp, t, p.sweeps);
            const double q_t = ramp_at(p.q, p.q_ramp, t, p.sweeps);
            for (std::uint32_t i = 0; i < n; ++i) h[i] = f[i] * inv_sqrt_n;
            kernels::pca_sample_omp(h.data(), n, beta_t, q_t, eta[m], sweep_rng[m],
                                    static_cast<std::uint64_t>(t) * n, tau);

            if (p.record_trajectory)
                results[m].trajectory.push_back(
                    {t, obj_sign * cur, eta[m].hamming(tau), obj_sign * best[m]});

            eta[m] = tau;
            for (std::uint32_t i = 0; i < n; ++i)
                e[static_cast<std::size_t>(i) * k + m] = tau.get(i) ? 1.0 : 0.0;
        }
    }

    for (std::uint32_t m = 0; m < k; ++m)
        results[m].best_energy = energy(j, results[m].best_config);
    return results;
}

SolveResult pca_solve(const CouplingMatrix& j, const PcaParams& params, Objective objective) {
    return pca_solve_batch(j, {params}, objective).front();
}

SolveResult metropolis_solve(const CouplingMatrix& j, double beta, std::uint32_t sweeps,
                             std::uint64_t seed, Objective objective) {
    if (!(beta > 0.0)) throw std::invalid_argument("metropolis_solve: beta must be positive");
    const std::uint32_t n = j.n();
    const CouplingMatrix jeff = effective_matrix(j, objective);

    const rng::CounterRng base(seed);
    const rng::CounterRng walk = base.child("metropolis");
    Configuration eta = Configuration::bernoulli_half(n, base.child("init"));

    FieldVector fld = local_fields(jeff, eta);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double cur = jeff.w() * sqrt_n * kernels::dot_bits(fld.h.data(), eta);

    double best = cur;
    Configuration best_cfg = eta;
    std::uint32_t sweeps_to_best = 0;

    for (std::uint32_t t = 0; t < sweeps; ++t) {
        for (std::uint32_t s = 0; s < n; ++s) {
            const std::uint64_t c = 2 * (static_cast<std::uint64_t>(t) * n + s);
            const std::uint32_t i = static_cast<std::uint32_t>(walk.below(c, n));
            const double d = delta_ones_flip(jeff, fld, eta, i);
            if (d <= 0.0 || walk.uniform(c + 1) < std::exp(-beta * d)) {
                eta.flip(i);
                apply_flip_to_fields(jeff, eta, i, fld);
                cur += d;
                if (cur < best) {
                    best = cur;
                    best_cfg = eta;
                    sweeps_to_best = t + 1;
                }
            }
        }
    }

    SolveResult r;
    r.objective = objective;
    r.best_config = std::move(best_cfg);
    r.best_energy = energy(j, r.best_config);
    r.sweeps_to_best = sweeps_to_best;
    return r;
}

SolveResult brute_force(const CouplingMatrix& j, Objective objective) {
    const std::uint32_t n = j.n();
    if (n > kMaxEnumerationSites)
        throw std::length_error("brute_force: n exceeds the 2^n enumeration cap");

    // Small dense symmetrized copy, negated for Maximize.
    const double sgn = objective == Objective::Maximize ? -1.0 : 1.0;
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t c = 0; c < n; ++c)
            a[static_cast<std::size_t>(i) * n + c] =
                sgn * 0.5 * (j.entry(i, c) + j.entry(c, i));
    const double w = j.w();

    std::vector<double> f(n, 0.0);
    Configuration eta(n);
    double e = 0.0;

    double best = 0.0;  // the all-zeros start
    Configuration best_cfg = eta;

    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t kk = 1; kk < total; ++kk) {
        const std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(kk));
        const bool setting = !eta.get(b);
        const double diag = a[static_cast<std::size_t>(b) * n + b];
        e += setting ? w * (2.0 * f[b] + diag) : -w * (2.0 * f[b] - diag);
        eta.flip(b);
        const double s = setting ? 1.0 : -1.0;
        const double* row = a.data() + static_cast<std::size_t>(b) * n;
        for (std::uint32_t jx = 0; jx < n; ++jx) f[jx] += s * row[jx];

        if (e < best || (e == best && eta.lex_less(best_cfg))) {
            best = e;
            best_cfg = eta;
        }
    }

    SolveResult r;
    r.objective = objective;
    r.best_config = std::move(best_cfg);
    r.best_energy = energy(j, r.best_config);
    r.sweeps_to_best = 0;
    return r;
}

}  // namespace qubo
