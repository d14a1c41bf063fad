#include "qubo/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qubo {

CouplingDistribution CouplingDistribution::standard_gaussian() {
    CouplingDistribution d;
    d.kind_ = DistKind::StandardGaussian;
    return d;
}

CouplingDistribution CouplingDistribution::shifted_exponential() {
    CouplingDistribution d;
    d.kind_ = DistKind::ShiftedExponential;
    return d;
}

CouplingDistribution CouplingDistribution::uniform_integer(std::int64_t lo, std::int64_t hi) {
    if (!(lo < 0 && 0 < hi))
        throw std::invalid_argument("uniform_integer: requires lo < 0 < hi");
    CouplingDistribution d;
    d.kind_ = DistKind::UniformInteger;
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

CouplingDistribution CouplingDistribution::diluted(CouplingDistribution inner, double delta) {
    if (inner.kind_ == DistKind::Diluted)
        throw std::invalid_argument("diluted: nested dilution not supported");
    if (!(delta > 1.0 && delta <= 2.0))
        throw std::invalid_argument("diluted: delta must lie in (1, 2]");
    CouplingDistribution d;
    d.kind_ = DistKind::Diluted;
    d.delta_ = delta;
    d.inner_ = std::make_shared<CouplingDistribution>(std::move(inner));
    return d;
}

double CouplingDistribution::mean() const {
    switch (kind_) {
        case DistKind::StandardGaussian:
        case DistKind::ShiftedExponential: return 0.0;
        case DistKind::UniformInteger: return 0.5 * (static_cast<double>(lo_) + static_cast<double>(hi_));
        case DistKind::Diluted: return inner_->mean();
    }
    return 0.0;
}

double CouplingDistribution::variance() const {
    switch (kind_) {
        case DistKind::StandardGaussian:
        case DistKind::ShiftedExponential: return 1.0;
        case DistKind::UniformInteger: {
            const double k = static_cast<double>(hi_ - lo_ + 1);
            return (k * k - 1.0) / 12.0;
        }
        case DistKind::Diluted: return inner_->variance();
    }
    return 1.0;
}

double CouplingDistribution::density(std::uint32_t n) const {
    if (kind_ == DistKind::Diluted) return std::pow(static_cast<double>(n), delta_ - 2.0);
    return 1.0;
}

std::uint64_t CouplingDistribution::draws_per_entry() const {
    switch (kind_) {
        case DistKind::StandardGaussian: return 2;  // Box-Muller
        case DistKind::ShiftedExponential: return 1;
        case DistKind::UniformInteger: return 1;
        case DistKind::Diluted: return 1 + inner_->draws_per_entry();
    }
    return 1;
}

double CouplingDistribution::sample(const rng::CounterRng& r, std::uint64_t c0) const {
    switch (kind_) {
        case DistKind::StandardGaussian: return r.gaussian(c0);
        case DistKind::ShiftedExponential: return r.exponential(c0) - 1.0;
        case DistKind::UniformInteger: {
            const std::uint64_t span = static_cast<std::uint64_t>(hi_ - lo_) + 1;
            return static_cast<double>(lo_ + static_cast<std::int64_t>(r.below(c0, span)));
        }
        case DistKind::Diluted:
            // The Bernoulli mask needs the size-dependent density; generate()
            // draws it and then samples the inner kind.
            throw std::logic_error("sample: Diluted entries are drawn by generate()");
    }
    return 0.0;
}

std::string CouplingDistribution::describe() const {
    switch (kind_) {
        case DistKind::StandardGaussian: return "gaussian";
        case DistKind::ShiftedExponential: return "expshift";
        case DistKind::UniformInteger:
            return "uniform[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
        case DistKind::Diluted:
            return "diluted(" + inner_->describe() + ",delta=" + std::to_string(delta_) + ")";
    }
    return "?";
}

CouplingMatrix CouplingMatrix::dense(std::uint32_t n, std::vector<double> row_major, double w,
                                     bool symmetric, double density_hint) {
    if (row_major.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("CouplingMatrix::dense: storage must hold n*n entries");
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("CouplingMatrix: W must be positive and finite");
    CouplingMatrix m;
    m.n_ = n;
    m.w_ = w;
    m.symmetric_ = symmetric;
    m.dense_storage_ = true;
    m.density_hint_ = density_hint;
    m.dense_ = std::move(row_major);
    return m;
}

CouplingMatrix CouplingMatrix::sparse(std::uint32_t n, Csr csr, double w, bool symmetric,
                                      double density_hint) {
    if (csr.row_ptr.size() != static_cast<std::size_t>(n) + 1 ||
        csr.col.size() != csr.val.size() || csr.row_ptr.back() != csr.val.size())
        throw std::invalid_argument("CouplingMatrix::sparse: inconsistent CSR shape");
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("CouplingMatrix: W must be positive and finite");
    CouplingMatrix m;
    m.n_ = n;
    m.w_ = w;
    m.symmetric_ = symmetric;
    m.dense_storage_ = false;
    m.density_hint_ = density_hint;
    m.csr_ = std::move(csr);
    return m;
}

void CouplingMatrix::set_w(double w) {
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("CouplingMatrix: W must be positive and finite");
    w_ = w;
}

double CouplingMatrix::entry(std::uint32_t i, std::uint32_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("CouplingMatrix::entry");
    if (dense_storage_) return dense_[static_cast<std::size_t>(i) * n_ + j];
    const auto b = csr_.col.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[i]);
    const auto e = csr_.col.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[i + 1]);
    const auto it = std::lower_bound(b, e, j);
    if (it != e && *it == j) return csr_.val[static_cast<std::size_t>(it - csr_.col.begin())];
    return 0.0;
}

std::uint64_t CouplingMatrix::nonzeros() const {
    if (!dense_storage_) {
        std::uint64_t c = 0;
        for (double v : csr_.val) c += (v != 0.0);
        return c;
    }
    std::uint64_t c = 0;
    for (double v : dense_) c += (v != 0.0);
    return c;
}

double CouplingMatrix::realized_density() const {
    return static_cast<double>(nonzeros()) / (static_cast<double>(n_) * n_);
}

double normalization_constant(std::uint32_t n, double rho, double variance) {
    if (n < 1) throw std::invalid_argument("normalization_constant: n must be positive");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("normalization_constant: rho must lie in (0, 1]");
    if (!(variance > 0.0))
        throw std::invalid_argument("normalization_constant: variance must be positive");
    return 1.0 / std::sqrt(rho * static_cast<double>(n) * variance);
}

namespace {
constexpr double kSparseThreshold = 0.25;
}

CouplingMatrix generate(std::uint32_t n, const CouplingDistribution& dist, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate: n must be positive");
    const rng::CounterRng r = rng::CounterRng(seed).child("couplings");
    const double rho = dist.density(n);
    const double w = normalization_constant(n, rho, dist.variance());
    const std::uint64_t stride = dist.draws_per_entry();
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n;

    if (dist.kind() == DistKind::Diluted) {
        const CouplingDistribution& inner = dist.inner();
        if (rho < kSparseThreshold) {
            Csr csr;
            csr.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
            csr.col.reserve(static_cast<std::size_t>(rho * static_cast<double>(total) * 1.1) + 16);
            csr.val.reserve(csr.col.capacity());
            for (std::uint32_t i = 0; i < n; ++i) {
                for (std::uint32_t j = 0; j < n; ++j) {
                    const std::uint64_t c0 = (static_cast<std::uint64_t>(i) * n + j) * stride;
                    if (r.uniform(c0) < rho) {
                        const double v = inner.sample(r, c0 + 1);
                        if (v != 0.0) {
                            csr.col.push_back(j);
                            csr.val.push_back(v);
                        }
                    }
                }
                csr.row_ptr[i + 1] = csr.col.size();
            }
            return CouplingMatrix::sparse(n, std::move(csr), w, false, rho);
        }
        std::vector<double> a(total, 0.0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const std::uint64_t c0 = idx * stride;
            if (r.uniform(c0) < rho) a[idx] = inner.sample(r, c0 + 1);
        }
        return CouplingMatrix::dense(n, std::move(a), w, false, rho);
    }

    std::vector<double> a(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) a[idx] = dist.sample(r, idx * stride);
    return CouplingMatrix::dense(n, std::move(a), w, false, 1.0);
}

CouplingMatrix symmetrize(const CouplingMatrix& j) {
    const std::uint32_t n = j.n();
    if (j.is_dense()) {
        const auto& a = j.dense_data();
        std::vector<double> out(a.size());
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t k = 0; k < n; ++k)
                out[static_cast<std::size_t>(i) * n + k] =
                    0.5 * (a[static_cast<std::size_t>(i) * n + k] +
                           a[static_cast<std::size_t>(k) * n + i]);
        return CouplingMatrix::dense(n, std::move(out), j.w(), true, j.density_hint());
    }

    // Sparse: (J + J^T)/2 over the union of patterns via a transpose pass.
    const Csr& in = j.csr();
    std::vector<std::uint64_t> tcount(n + 1, 0);
    for (std::uint32_t c : in.col) ++tcount[c + 1];
    for (std::uint32_t i = 0; i < n; ++i) tcount[i + 1] += tcount[i];
    std::vector<std::uint32_t> trow(in.col.size());
    std::vector<double> tval(in.col.size());
    {
        std::vector<std::uint64_t> cur(tcount.begin(), tcount.end() - 1);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint64_t p = in.row_ptr[i]; p < in.row_ptr[i + 1]; ++p) {
                const std::uint64_t q = cur[in.col[p]]++;
                trow[q] = i;
                tval[q] = in.val[p];
            }
    }
    Csr out;
    out.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    out.col.reserve(in.col.size() * 2);
    out.val.reserve(in.col.size() * 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint64_t p = in.row_ptr[i], pe = in.row_ptr[i + 1];
        std::uint64_t q = tcount[i], qe = tcount[i + 1];
        while (p < pe || q < qe) {
            const std::uint32_t cp = p < pe ? in.col[p] : n;
            const std::uint32_t cq = q < qe ? trow[q] : n;
            if (cp < cq) {
                out.col.push_back(cp);
                out.val.push_back(0.5 * (in.val[p] + 0.0));
                ++p;
            } else if (cq < cp) {
                out.col.push_back(cq);
                out.val.push_back(0.5 * (0.0 + tval[q]));
                ++q;
            } else {
                out.col.push_back(cp);
                out.val.push_back(0.5 * (in.val[p] + tval[q]));
                ++p;
                ++q;
            }
        }
        out.row_ptr[i + 1] = out.col.size();
    }
    return CouplingMatrix::sparse(n, std::move(out), j.w(), true, j.density_hint());
}

CouplingMatrix zero_diagonal(const CouplingMatrix& j) {
    const std::uint32_t n = j.n();
    if (j.is_dense()) {
        std::vector<double> a = j.dense_data();
        for (std::uint32_t i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 0.0;
        return CouplingMatrix::dense(n, std::move(a), j.w(), j.symmetric(), j.density_hint());
    }
    const Csr& in = j.csr();
    Csr out;
    out.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    out.col.reserve(in.col.size());
    out.val.reserve(in.val.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint64_t p = in.row_ptr[i]; p < in.row_ptr[i + 1]; ++p)
            if (in.col[p] != i) {
                out.col.push_back(in.col[p]);
                out.val.push_back(in.val[p]);
            }
        out.row_ptr[i + 1] = out.col.size();
    }
    return CouplingMatrix::sparse(n, std::move(out), j.w(), j.symmetric(), j.density_hint());
}

}  // namespace qubo
