#include "qubo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qubo/energy.hpp"

namespace qubo {

OptimumStats optimum_stats(const CouplingMatrix& j, const SolveResult& min_result,
                           const SolveResult& max_result) {
    const std::uint32_t n = j.n();
    if (min_result.best_config.size() != n || max_result.best_config.size() != n)
        throw std::invalid_argument("optimum_stats: results do not match the instance size");
    for (const SolveResult* r : {&min_result, &max_result}) {
        const double e = energy(j, r->best_config);
        if (std::abs(e - r->best_energy) > 1e-9 * (1.0 + std::abs(e)))
            throw std::invalid_argument("optimum_stats: result energy does not match instance");
    }
    const double dn = static_cast<double>(n);
    return {n, -min_result.best_energy / dn, max_result.best_energy / dn,
            static_cast<double>(min_result.best_config.ones()) / dn,
            static_cast<double>(max_result.best_config.ones()) / dn};
}

BlockPartition block_partition(const Configuration& min_config,
                               const Configuration& max_config) {
    const std::uint32_t n = min_config.size();
    if (max_config.size() != n)
        throw std::invalid_argument("block_partition: configurations differ in length");
    BlockPartition p;
    p.label.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const bool in_min = min_config.get(i);
        const bool in_max = max_config.get(i);
        const std::uint8_t k = in_min ? (in_max ? 1 : 0) : (in_max ? 2 : 3);
        p.label[i] = k;
        p.sets[k].push_back(i);
    }
    return p;
}

BlockReplica block_replica_stats(const CouplingMatrix& j, const BlockPartition& p) {
    const std::uint32_t n = j.n();
    if (p.label.size() != n)
        throw std::invalid_argument("block_replica_stats: partition does not match instance");
    BlockReplica r;
    for (int k = 0; k < 4; ++k) r.sizes[k] = p.sets[k].size();
    if (j.is_dense()) {
        const double* a = j.dense_data().data();
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint8_t li = p.label[i];
            const double* row = a + static_cast<std::size_t>(i) * n;
            std::array<double, 4> rs{};
            for (std::uint32_t c = 0; c < n; ++c) rs[p.label[c]] += row[c];
            for (int l = 0; l < 4; ++l) r.sums[li][l] += rs[l];
        }
    } else {
        const Csr& a = j.csr();
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint8_t li = p.label[i];
            for (std::uint64_t q = a.row_ptr[i]; q < a.row_ptr[i + 1]; ++q)
                r.sums[li][p.label[a.col[q]]] += a.val[q];
        }
    }
    return r;
}

void BlockAccumulator::add(const CouplingMatrix& j, const BlockPartition& p) {
    add_replica(j.n(), block_replica_stats(j, p));
}

void BlockAccumulator::add_replica(std::uint32_t n, const BlockReplica& r) {
    if (replicas_ == 0) n_ = n;
    else if (n_ != n)
        throw std::invalid_argument("BlockAccumulator: mixed instance sizes");
    for (int k = 0; k < 4; ++k) {
        alpha_[k].add(static_cast<double>(r.sizes[k]) / static_cast<double>(n));
        for (int l = 0; l < 4; ++l) {
            entry_sum_[k][l] += r.sums[k][l];
            entry_count_[k][l] += r.sizes[k] * r.sizes[l];
            sum_over_replicas_[k][l].add(r.sums[k][l]);
        }
    }
    ++replicas_;
}

void BlockAccumulator::merge(const BlockAccumulator& o) {
    if (o.replicas_ == 0) return;
    if (replicas_ == 0) { *this = o; return; }
    if (n_ != o.n_) throw std::invalid_argument("BlockAccumulator: mixed instance sizes");
    for (int k = 0; k < 4; ++k) {
        alpha_[k].merge(o.alpha_[k]);
        for (int l = 0; l < 4; ++l) {
            entry_sum_[k][l] += o.entry_sum_[k][l];
            entry_count_[k][l] += o.entry_count_[k][l];
            sum_over_replicas_[k][l].merge(o.sum_over_replicas_[k][l]);
        }
    }
    replicas_ += o.replicas_;
}

BlockStats BlockAccumulator::finalize() const {
    BlockStats b;
    b.n = n_;
    b.replica_count = replicas_;
    for (int k = 0; k < 4; ++k) {
        b.alphas[k] = alpha_[k].mean();
        for (int l = 0; l < 4; ++l) {
            const std::uint64_t c = entry_count_[k][l];
            if (c == 0 || replicas_ < 2) {
                b.defined[k][l] = false;
                b.mu[k][l] = 0.0;
                b.sigma_tilde[k][l] = 0.0;
                continue;
            }
            b.defined[k][l] = true;
            b.mu[k][l] = entry_sum_[k][l] / static_cast<double>(c);
            const double mean_count =
                static_cast<double>(c) / static_cast<double>(replicas_);
            b.sigma_tilde[k][l] = sum_over_replicas_[k][l].variance() / mean_count;
        }
    }
    return b;
}

OrderingAccumulator::OrderingAccumulator(std::uint32_t bins) : bins_(bins) {
    if (bins < 2) throw std::invalid_argument("OrderingAccumulator: bins must be >= 2");
    trials_.assign(bins, 0);
    cnt_min_.assign(bins, 0);
    cnt_max_.assign(bins, 0);
    cnt_joint_.assign(bins, 0);
}

OrderingReplica ordering_replica_counts(const CouplingMatrix& j,
                                        const Configuration& min_config,
                                        const Configuration& max_config, std::uint32_t bins) {
    const std::uint32_t n = j.n();
    if (min_config.size() != n || max_config.size() != n)
        throw std::invalid_argument("ordering_replica_counts: configuration size mismatch");

    // Row sums of the symmetrized matrix: (row_i(J) + col_i(J)) / 2.
    std::vector<double> rowsum(n, 0.0), colsum(n, 0.0);
    if (j.is_dense()) {
        const double* a = j.dense_data().data();
        for (std::uint32_t i = 0; i < n; ++i) {
            const double* row = a + static_cast<std::size_t>(i) * n;
            double s = 0.0;
            for (std::uint32_t c = 0; c < n; ++c) {
                s += row[c];
                colsum[c] += row[c];
            }
            rowsum[i] = s;
        }
    } else {
        const Csr& a = j.csr();
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint64_t q = a.row_ptr[i]; q < a.row_ptr[i + 1]; ++q) {
                rowsum[i] += a.val[q];
                colsum[a.col[q]] += a.val[q];
            }
    }
    std::vector<double> r(n);
    for (std::uint32_t i = 0; i < n; ++i) r[i] = 0.5 * (rowsum[i] + colsum[i]);

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return r[a] < r[b] || (r[a] == r[b] && a < b);
    });

    OrderingReplica out;
    out.bins.assign(bins, {0, 0, 0, 0});
    for (std::uint32_t rank = 0; rank < n; ++rank) {
        const std::uint32_t idx = order[rank];
        const std::uint32_t bin = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(rank) * bins / n);
        auto& cell = out.bins[bin];
        ++cell[0];
        const bool in_min = min_config.get(idx);
        const bool in_max = max_config.get(idx);
        cell[1] += in_min;
        cell[2] += in_max;
        cell[3] += in_min && in_max;
    }
    return out;
}

void OrderingAccumulator::add(const CouplingMatrix& j, const Configuration& min_config,
                              const Configuration& max_config) {
    add_replica(ordering_replica_counts(j, min_config, max_config, bins_));
}

void OrderingAccumulator::add_replica(const OrderingReplica& r) {
    if (r.bins.size() != bins_)
        throw std::invalid_argument("OrderingAccumulator: bin mismatch");
    for (std::uint32_t b = 0; b < bins_; ++b) {
        trials_[b] += r.bins[b][0];
        cnt_min_[b] += r.bins[b][1];
        cnt_max_[b] += r.bins[b][2];
        cnt_joint_[b] += r.bins[b][3];
    }
}

void OrderingAccumulator::merge(const OrderingAccumulator& o) {
    if (o.bins_ != bins_) throw std::invalid_argument("OrderingAccumulator: bin mismatch");
    for (std::uint32_t b = 0; b < bins_; ++b) {
        trials_[b] += o.trials_[b];
        cnt_min_[b] += o.cnt_min_[b];
        cnt_max_[b] += o.cnt_max_[b];
        cnt_joint_[b] += o.cnt_joint_[b];
    }
}

OrderingCurve OrderingAccumulator::finalize() const {
    OrderingCurve c;
    c.rank_centers.resize(bins_);
    c.p_min.resize(bins_);
    c.p_max.resize(bins_);
    c.p_joint.resize(bins_);
    c.ratio.resize(bins_);
    c.ratio_sigma.resize(bins_);
    c.trials = trials_;
    for (std::uint32_t b = 0; b < bins_; ++b) {
        c.rank_centers[b] = (static_cast<double>(b) + 0.5) / static_cast<double>(bins_);
        const double t = static_cast<double>(trials_[b]);
        if (trials_[b] == 0) {
            c.p_min[b] = c.p_max[b] = c.p_joint[b] = c.ratio[b] = c.ratio_sigma[b] = 0.0;
            continue;
        }
        c.p_min[b] = static_cast<double>(cnt_min_[b]) / t;
        c.p_max[b] = static_cast<double>(cnt_max_[b]) / t;
        c.p_joint[b] = static_cast<double>(cnt_joint_[b]) / t;

        // Haldane-Anscombe correction keeps the ratio and its delta-method
        // error defined when a count is zero.
        const bool corrected = cnt_min_[b] == 0 || cnt_max_[b] == 0 || cnt_joint_[b] == 0 ||
                               cnt_min_[b] == trials_[b] || cnt_max_[b] == trials_[b] ||
                               cnt_joint_[b] == trials_[b];
        const double add = corrected ? 0.5 : 0.0;
        const double tc = t + 2.0 * add;
        const double pj = (static_cast<double>(cnt_joint_[b]) + add) / tc;
        const double pm = (static_cast<double>(cnt_min_[b]) + add) / tc;
        const double px = (static_cast<double>(cnt_max_[b]) + add) / tc;
        const double ratio = pj / (pm * px);
        c.ratio[b] = ratio;
        const double var_log = (1.0 - pj) / (pj * tc) + (1.0 - pm) / (pm * tc) +
                               (1.0 - px) / (px * tc);
        c.ratio_sigma[b] = ratio * std::sqrt(var_log);
    }
    return c;
}

double entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("entropy: x must lie in [0, 1]");
    double s = 0.0;
    if (x > 0.0) s -= x * std::log(x);
    if (x < 1.0) s -= (1.0 - x) * std::log(1.0 - x);
    return s;
}

namespace {

// max over the alpha grid of I(alpha) - m^2/(2 alpha^2 (1-alpha)^2), with the
// maximizing alpha.
std::pair<double, double> grid_max(double m) {
    constexpr double kStep = 1e-4;
    double best = -1e300, best_alpha = 0.5;
    for (int k = 1; k < 10000; ++k) {
        const double a = static_cast<double>(k) * kStep;
        const double denom = 2.0 * a * a * (1.0 - a) * (1.0 - a);
        const double g = entropy(a) - m * m / denom;
        if (g > best) {
            best = g;
            best_alpha = a;
        }
    }
    return {best, best_alpha};
}

}  // namespace

GaussianBoundConstants gaussian_bound_constants() {
    double lo = 1e-3;  // zeros exist (g positive near alpha = 1/2)
    double hi = 1.0;   // no zeros
    for (int it = 0; it < 60 && hi - lo > 1e-7; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (grid_max(mid).first > 0.0) lo = mid;
        else hi = mid;
    }
    const double m_star = 0.5 * (lo + hi);
    return {m_star, grid_max(m_star).second};
}

}  // namespace qubo
