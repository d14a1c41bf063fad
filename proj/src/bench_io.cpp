#include "qubo/bench_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "qubo/welford.hpp"

namespace qubo {

namespace {

bool blank_or_comment(const std::string& s) {
    for (char c : s) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

CouplingMatrix parse_instance(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    std::uint64_t n = 0, entries = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        std::istringstream ls(line);
        if (!(ls >> n >> entries) || n == 0)
            throw ParseError(lineno, "expected header 'N M' with N >= 1");
        std::string rest;
        if (ls >> rest) throw ParseError(lineno, "trailing tokens after header");
        have_header = true;
        break;
    }
    if (!have_header) throw ParseError(lineno, "missing header line");
    if (n > 0xffffffffULL) throw ParseError(lineno, "N too large");

    // Upper-triangle triplets, mirrored into full storage on return.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> trip;
    trip.reserve(entries);
    std::uint64_t seen = 0;
    while (seen < entries) {
        if (!std::getline(in, line))
            throw ParseError(lineno, "unexpected end of input: " + std::to_string(seen) +
                                         " of " + std::to_string(entries) + " entries read");
        ++lineno;
        if (blank_or_comment(line)) continue;
        std::istringstream ls(line);
        std::uint64_t i = 0, j = 0;
        double v = 0.0;
        if (!(ls >> i >> j >> v))
            throw ParseError(lineno, "expected entry 'i j v'");
        std::string rest;
        if (ls >> rest) throw ParseError(lineno, "trailing tokens after entry");
        if (i < 1 || j < 1 || i > n || j > n)
            throw ParseError(lineno, "index out of range");
        if (i > j) throw ParseError(lineno, "entries must satisfy i <= j");
        trip.emplace_back(static_cast<std::uint32_t>(i - 1),
                          static_cast<std::uint32_t>(j - 1), v);
        ++seen;
    }

    std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (std::size_t t = 1; t < trip.size(); ++t)
        if (std::get<0>(trip[t]) == std::get<0>(trip[t - 1]) &&
            std::get<1>(trip[t]) == std::get<1>(trip[t - 1]))
            throw ParseError(lineno, "duplicate entry (" +
                                         std::to_string(std::get<0>(trip[t]) + 1) + ", " +
                                         std::to_string(std::get<1>(trip[t]) + 1) + ")");

    const std::uint32_t nn = static_cast<std::uint32_t>(n);
    const std::uint64_t logical = 2 * trip.size();  // upper bound, diagonal counted twice
    const double density =
        static_cast<double>(logical) / (static_cast<double>(nn) * static_cast<double>(nn));

    if (density >= 0.25) {
        std::vector<double> a(static_cast<std::size_t>(nn) * nn, 0.0);
        for (const auto& [i, j, v] : trip) {
            a[static_cast<std::size_t>(i) * nn + j] = v;
            a[static_cast<std::size_t>(j) * nn + i] = v;
        }
        return CouplingMatrix::dense(nn, std::move(a), 1.0, true, density);
    }

    // Mirror into row buckets, then build CSR.
    std::vector<std::uint64_t> count(static_cast<std::size_t>(nn) + 1, 0);
    for (const auto& [i, j, v] : trip) {
        ++count[i + 1];
        if (i != j) ++count[j + 1];
    }
    for (std::uint32_t i = 0; i < nn; ++i) count[i + 1] += count[i];
    Csr csr;
    csr.row_ptr = count;
    csr.col.resize(count[nn]);
    csr.val.resize(count[nn]);
    std::vector<std::uint64_t> cur(count.begin(), count.end() - 1);
    for (const auto& [i, j, v] : trip) {
        csr.col[cur[i]] = j;
        csr.val[cur[i]] = v;
        ++cur[i];
        if (i != j) {
            csr.col[cur[j]] = i;
            csr.val[cur[j]] = v;
            ++cur[j];
        }
    }
    // Triplets were (i,j)-sorted, so each row received ascending columns from
    // the i-part; the mirrored j-part also arrives ascending. Merge by sort.
    for (std::uint32_t i = 0; i < nn; ++i) {
        const std::uint64_t b = csr.row_ptr[i], e = csr.row_ptr[i + 1];
        std::vector<std::pair<std::uint32_t, double>> row;
        row.reserve(e - b);
        for (std::uint64_t p = b; p < e; ++p) row.emplace_back(csr.col[p], csr.val[p]);
        std::sort(row.begin(), row.end());
        for (std::uint64_t p = b; p < e; ++p) {
            csr.col[p] = row[p - b].first;
            csr.val[p] = row[p - b].second;
        }
    }
    return CouplingMatrix::sparse(nn, std::move(csr), 1.0, true, density);
}

namespace {

std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_instance(const CouplingMatrix& j, std::ostream& out) {
    if (!j.symmetric())
        throw std::invalid_argument("write_instance: matrix must be symmetric");
    const std::uint32_t n = j.n();
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> trip;
    if (j.is_dense()) {
        const auto& a = j.dense_data();
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t c = i; c < n; ++c) {
                const double v = a[static_cast<std::size_t>(i) * n + c];
                if (v != 0.0) trip.emplace_back(i, c, v);
            }
    } else {
        const Csr& a = j.csr();
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
                if (a.col[p] >= i && a.val[p] != 0.0)
                    trip.emplace_back(i, a.col[p], a.val[p]);
    }
    out << n << ' ' << trip.size() << '\n';
    for (const auto& [i, c, v] : trip)
        out << (i + 1) << ' ' << (c + 1) << ' ' << format_value(v) << '\n';
}

double benchmark_w(std::uint32_t n, double rho) {
    if (n < 1 || !(rho > 0.0))
        throw std::invalid_argument("benchmark_w: arguments must be positive");
    return std::sqrt(6.0 / (rho * static_cast<double>(n) * (201.0 * 201.0 - 1.0)));
}

double m_from_best_known(std::uint32_t n, double rho, std::int64_t best_known) {
    return benchmark_w(n, rho) * static_cast<double>(best_known) / static_cast<double>(n);
}

std::string format_sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void emit_results(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "experiment,n,delta,dist,seed,objective,m,alpha,sweeps_to_best,wall_ms\n";

    struct Agg {
        Welford m, alpha, stb, wall;
    };
    // Group key -> aggregate over the values exactly as printed.
    std::vector<std::pair<std::string, Agg>> groups;
    auto group_of = [&](const ResultRow& r) -> Agg& {
        const std::string key = r.experiment + "," + std::to_string(r.n) + "," +
                                format_sig6(r.delta) + "," + r.dist + "," + r.objective;
        for (auto& [k, a] : groups)
            if (k == key) return a;
        groups.emplace_back(key, Agg{});
        return groups.back().second;
    };

    for (const ResultRow& r : rows) {
        const std::string m = format_sig6(r.m);
        const std::string alpha = format_sig6(r.alpha);
        const std::string stb = format_sig6(r.sweeps_to_best);
        const std::string wall = format_sig6(r.wall_ms);
        out << r.experiment << ',' << r.n << ',' << format_sig6(r.delta) << ',' << r.dist
            << ',' << r.seed << ',' << r.objective << ',' << m << ',' << alpha << ',' << stb
            << ',' << wall << '\n';
        Agg& a = group_of(r);
        a.m.add(std::strtod(m.c_str(), nullptr));
        a.alpha.add(std::strtod(alpha.c_str(), nullptr));
        a.stb.add(std::strtod(stb.c_str(), nullptr));
        a.wall.add(std::strtod(wall.c_str(), nullptr));
    }

    for (const auto& [key, a] : groups) {
        std::istringstream ks(key);
        std::string experiment, nstr, delta, dist, objective;
        std::getline(ks, experiment, ',');
        std::getline(ks, nstr, ',');
        std::getline(ks, delta, ',');
        std::getline(ks, dist, ',');
        std::getline(ks, objective, ',');
        out << experiment << ',' << nstr << ',' << delta << ',' << dist << ",AGG_MEAN,"
            << objective << ',' << format_sig6(a.m.mean()) << ',' << format_sig6(a.alpha.mean())
            << ',' << format_sig6(a.stb.mean()) << ',' << format_sig6(a.wall.mean()) << '\n';
        out << experiment << ',' << nstr << ',' << delta << ',' << dist << ",AGG_SE,"
            << objective << ',' << format_sig6(a.m.std_error()) << ','
            << format_sig6(a.alpha.std_error()) << ',' << format_sig6(a.stb.std_error()) << ','
            << format_sig6(a.wall.std_error()) << '\n';
    }
}

}  // namespace qubo
