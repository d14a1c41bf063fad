// qubolab: generate random QUBO instances, run solvers, and drive the
// replica experiments that produce the statistics tables.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "qubo/analysis.hpp"
#include "qubo/bench_io.hpp"
#include "qubo/energy.hpp"
#include "qubo/experiments.hpp"
#include "qubo/instance.hpp"
#include "qubo/solvers.hpp"

namespace fs = std::filesystem;
using namespace qubo;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string config_string(const Configuration& c) {
    std::string s(c.size(), '0');
    for (std::uint32_t i = 0; i < c.size(); ++i)
        if (c.get(i)) s[i] = '1';
    return s;
}

// ---------------------------------------------------------------- dist flags

struct DistFlags {
    std::string dist = "gaussian";
    std::string inner = "gaussian";
    double delta = 2.0;
    std::int64_t lo = -100, hi = 100;

    CouplingDistribution build() const {
        const auto base = [this](const std::string& kind) {
            if (kind == "gaussian") return CouplingDistribution::standard_gaussian();
            if (kind == "expshift") return CouplingDistribution::shifted_exponential();
            if (kind == "uniform") return CouplingDistribution::uniform_integer(lo, hi);
            throw CLI::ValidationError("--dist", "unknown distribution: " + kind);
        };
        if (dist == "diluted") return CouplingDistribution::diluted(base(inner), delta);
        return base(dist);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--dist", dist, "gaussian|expshift|uniform|diluted")
            ->default_val("gaussian");
        cmd->add_option("--inner", inner, "inner distribution for --dist diluted");
        cmd->add_option("--delta", delta, "dilution exponent in (1,2]");
        cmd->add_option("--lo", lo, "uniform integer lower bound (negative)");
        cmd->add_option("--hi", hi, "uniform integer upper bound (positive)");
    }
};

// ------------------------------------------------------------------- sidecar

void write_sidecar(const fs::path& path, const std::string& dist, double delta,
                   std::uint64_t seed, std::uint32_t n, double density, double w) {
    std::ofstream out(path);
    out << "dist=" << dist << " delta=" << fmt17(delta) << " seed=" << seed << " n=" << n
        << " realized_density=" << fmt17(density) << " w=" << fmt17(w) << "\n";
}

std::map<std::string, std::string> read_sidecar(const fs::path& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return kv;
}

// --------------------------------------------------------------- key=value

std::map<std::string, std::string> read_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notblank = line.find_first_not_of(" \t\r");
        if (notblank == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::string cfg_get(const std::map<std::string, std::string>& kv, const std::string& key,
                    const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    if (out.empty()) throw std::runtime_error("empty list: " + s);
    return out;
}

SolverConfig parse_solver_config(const std::map<std::string, std::string>& kv) {
    SolverConfig cfg;
    cfg.sweeps = static_cast<std::uint32_t>(std::stoul(cfg_get(kv, "sweeps", "2000")));
    cfg.ramp_beta = cfg_get(kv, "ramp_beta", "true") == "true";
    const std::string grid = cfg_get(kv, "grid", "default");
    if (grid != "default") {
        cfg.grid.clear();
        std::istringstream in(grid);
        std::string pair;
        while (std::getline(in, pair, ';')) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error("grid entries look like beta:q");
            cfg.grid.emplace_back(std::stod(pair.substr(0, colon)),
                                  std::stod(pair.substr(colon + 1)));
        }
        if (cfg.grid.empty()) throw std::runtime_error("empty grid");
    }
    return cfg;
}

CouplingDistribution parse_dist(const std::map<std::string, std::string>& kv) {
    DistFlags f;
    f.dist = cfg_get(kv, "dist", "gaussian");
    f.inner = cfg_get(kv, "inner", "gaussian");
    f.delta = std::stod(cfg_get(kv, "delta", "2.0"));
    f.lo = std::stoll(cfg_get(kv, "lo", "-100"));
    f.hi = std::stoll(cfg_get(kv, "hi", "100"));
    return f.build();
}

// ------------------------------------------------------------------ journal

class Journal {
public:
    explicit Journal(const fs::path& path) : path_(path) {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) done_.insert(line);
        out_.open(path_, std::ios::app);
    }

    bool contains(const std::string& key) const { return done_.count(key) != 0; }

    void mark(const std::string& key) {
        out_ << key << '\n';
        out_.flush();
    }

private:
    fs::path path_;
    std::set<std::string> done_;
    std::ofstream out_;
};

// Append-only per-replica record store keyed by "unit" strings.
class ReplicaStore {
public:
    ReplicaStore(const fs::path& path, const std::string& header) : path_(path) {
        const bool fresh = !fs::exists(path_);
        std::ifstream in(path_);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                first = false;
                continue;  // header
            }
            const auto comma = line.find(',');
            if (comma != std::string::npos)
                rows_[line.substr(0, comma)] = line.substr(comma + 1);
        }
        out_.open(path_, std::ios::app);
        if (fresh) {
            out_ << "unit," << header << '\n';
            out_.flush();
        }
    }

    const std::string* find(const std::string& unit) const {
        const auto it = rows_.find(unit);
        return it == rows_.end() ? nullptr : &it->second;
    }

    void append(const std::string& unit, const std::string& payload) {
        out_ << unit << ',' << payload << '\n';
        out_.flush();
        rows_[unit] = payload;
    }

private:
    fs::path path_;
    std::map<std::string, std::string> rows_;
    std::ofstream out_;
};

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

void progress(std::size_t done, std::size_t total) {
    if (total == 0) return;
    const std::size_t step = std::max<std::size_t>(1, total / 20);
    if (done % step == 0 || done == total)
        std::cerr << "\r" << done << "/" << total << " replicas" << std::flush;
    if (done == total) std::cerr << "\n";
}

// --------------------------------------------------------------- cmd: generate

int cmd_generate(std::uint32_t n, const DistFlags& flags, std::uint64_t seed,
                 const fs::path& out, bool zero_diag) {
    const CouplingDistribution dist = flags.build();
    CouplingMatrix j = generate(n, dist, seed);
    if (zero_diag) j = zero_diagonal(j);
    const double density = j.realized_density();
    const CouplingMatrix sym = symmetrize(j);

    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open " + out.string());
    write_instance(sym, f);
    write_sidecar(out.string() + ".meta", flags.dist,
                  flags.dist == "diluted" ? flags.delta : 2.0, seed, n, density, j.w());
    std::cout << "wrote " << out.string() << " (n=" << n << ", density="
              << format_sig6(density) << ", w=" << format_sig6(j.w()) << ")\n";
    return 0;
}

// ------------------------------------------------------------------ cmd: solve

int cmd_solve(const fs::path& instance, const std::string& solver, const std::string& objective,
              double w_flag, double bench_rho, const std::string& grid, double beta, double q,
              std::uint32_t sweeps, bool ramp, std::uint64_t seed, const fs::path& out_dir,
              bool timing) {
    std::ifstream in(instance);
    if (!in) throw std::runtime_error("cannot open instance " + instance.string());
    CouplingMatrix j = parse_instance(in);

    std::string dist_name = "file";
    double delta = 2.0;
    const auto meta = read_sidecar(instance.string() + ".meta");
    if (meta.count("dist")) dist_name = meta.at("dist");
    if (meta.count("delta")) delta = std::strtod(meta.at("delta").c_str(), nullptr);

    if (w_flag > 0.0) j.set_w(w_flag);
    else if (bench_rho > 0.0) j.set_w(benchmark_w(j.n(), bench_rho));
    else if (meta.count("w")) j.set_w(std::strtod(meta.at("w").c_str(), nullptr));
    else
        std::cerr << "warning: no --w, --bench-rho or sidecar; using W = 1\n";

    const Objective obj = objective == "max" ? Objective::Maximize : Objective::Minimize;
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<ResultRow> rows;
    std::vector<SolveResult> results;
    if (solver == "brute") {
        results.push_back(brute_force(j, obj));
    } else if (solver == "metropolis") {
        results.push_back(metropolis_solve(j, beta, sweeps, seed, obj));
    } else if (solver == "pca") {
        SolverConfig cfg;
        cfg.sweeps = sweeps;
        cfg.ramp_beta = ramp;
        if (grid == "none") cfg.grid = {{beta, q}};
        else if (grid != "default")
            throw std::runtime_error("--grid must be default or none");
        std::vector<PcaParams> ps;
        for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
            PcaParams p;
            p.beta = cfg.grid[g].first;
            p.q = cfg.grid[g].second;
            p.sweeps = cfg.sweeps;
            if (cfg.ramp_beta) p.beta_ramp = {p.beta, 2.0 * p.beta};
            p.seed = rng::combine(rng::combine(seed, rng::hash_bytes("grid")),
                                  2 * g + (obj == Objective::Maximize ? 1 : 0));
            ps.push_back(p);
        }
        results = pca_solve_batch(j, ps, obj);
    } else {
        throw std::runtime_error("--solver must be pca, metropolis or brute");
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();

    const SolveResult* best = &results.front();
    for (const SolveResult& r : results)
        if (obj == Objective::Minimize ? r.best_energy < best->best_energy
                                       : r.best_energy > best->best_energy)
            best = &r;

    for (const SolveResult& r : results) {
        ResultRow row;
        row.experiment = "solve-" + solver;
        row.n = j.n();
        row.delta = delta;
        row.dist = dist_name;
        row.seed = std::to_string(seed);
        row.objective = objective;
        row.m = (obj == Objective::Minimize ? -r.best_energy : r.best_energy) /
                static_cast<double>(j.n());
        row.alpha = static_cast<double>(r.best_config.ones()) / j.n();
        row.sweeps_to_best = r.sweeps_to_best;
        row.wall_ms = timing ? wall / static_cast<double>(results.size()) : 0.0;
        rows.push_back(row);
    }

    fs::create_directories(out_dir);
    std::ofstream csv(out_dir / "results.csv");
    emit_results(rows, csv);
    std::ofstream bc(out_dir / "best_config.txt");
    bc << config_string(best->best_config) << '\n';

    std::cout << "best " << objective << " energy " << fmt17(best->best_energy)
              << " (m=" << format_sig6((obj == Objective::Minimize ? -1.0 : 1.0) *
                                       best->best_energy / j.n())
              << ", alpha="
              << format_sig6(static_cast<double>(best->best_config.ones()) / j.n()) << ")\n";
    return 0;
}

// ------------------------------------------------------------- cmd: experiment

struct OptimaRecord {
    OptimumStats stats;
    double stb_min = 0.0, stb_max = 0.0;
};

// Shared journaled loop for the experiments built on per-replica optima.
// Returns one record per (n, replica); all solved units are persisted before
// the function returns.
std::vector<std::vector<OptimaRecord>> run_optima_units(
    const std::string& name, const std::vector<std::uint32_t>& n_list,
    std::uint32_t replicas, const CouplingDistribution& dist, const SolverConfig& cfg,
    std::uint64_t seed_base, const fs::path& out_dir,
    std::vector<std::vector<std::pair<Configuration, Configuration>>>* configs) {
    Journal journal(out_dir / (name + ".journal"));
    ReplicaStore store(out_dir / (name + "_replicas.csv"),
                       "m_min,m_max,alpha_min,alpha_max,stb_min,stb_max,cfg_min,cfg_max");

    struct Task {
        std::size_t n_idx;
        std::uint32_t n, replica;
    };
    std::vector<Task> pending;
    std::vector<std::vector<OptimaRecord>> records(n_list.size());
    if (configs) configs->resize(n_list.size());
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        records[ni].resize(replicas);
        if (configs) (*configs)[ni].resize(replicas);
        for (std::uint32_t r = 0; r < replicas; ++r)
            pending.push_back({ni, n_list[ni], r});
    }

    // Replay completed units.
    std::vector<Task> todo;
    for (const Task& t : pending) {
        const std::string unit =
            name + "/" + std::to_string(t.n) + "/" + std::to_string(t.replica);
        const std::string* payload = journal.contains(unit) ? store.find(unit) : nullptr;
        if (!payload) {
            todo.push_back(t);
            continue;
        }
        std::istringstream in(*payload);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(in, field, ',')) fields.push_back(field);
        if (fields.size() != 8) {
            todo.push_back(t);
            continue;
        }
        OptimaRecord rec;
        rec.stats.n = t.n;
        rec.stats.m_min = std::strtod(fields[0].c_str(), nullptr);
        rec.stats.m_max = std::strtod(fields[1].c_str(), nullptr);
        rec.stats.alpha_min = std::strtod(fields[2].c_str(), nullptr);
        rec.stats.alpha_max = std::strtod(fields[3].c_str(), nullptr);
        rec.stb_min = std::strtod(fields[4].c_str(), nullptr);
        rec.stb_max = std::strtod(fields[5].c_str(), nullptr);
        records[t.n_idx][t.replica] = rec;
        if (configs) {
            Configuration mn(t.n), mx(t.n);
            for (std::uint32_t i = 0; i < t.n; ++i) {
                if (fields[6][i] == '1') mn.set(i, true);
                if (fields[7][i] == '1') mx.set(i, true);
            }
            (*configs)[t.n_idx][t.replica] = {std::move(mn), std::move(mx)};
        }
    }

    std::size_t done = 0;
    const std::size_t total = todo.size();
    if (total > 0) std::cerr << name << ": " << total << " replicas to run\n";

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(todo.size()); ++idx) {
        const Task t = todo[idx];
        const std::uint64_t rs = replica_seed(seed_base, name, t.n, t.replica);
        const CouplingMatrix j =
            generate(t.n, dist, rng::combine(rs, rng::hash_bytes("instance")));
        const ReplicaSolves s = solve_both(j, cfg, rs);
        OptimaRecord rec;
        rec.stats = optimum_stats(j, s.min_result, s.max_result);
        rec.stb_min = s.min_result.sweeps_to_best;
        rec.stb_max = s.max_result.sweeps_to_best;

#pragma omp critical(journal_io)
        {
            records[t.n_idx][t.replica] = rec;
            if (configs)
                (*configs)[t.n_idx][t.replica] = {s.min_result.best_config,
                                                  s.max_result.best_config};
            const std::string unit =
                name + "/" + std::to_string(t.n) + "/" + std::to_string(t.replica);
            store.append(unit, fmt17(rec.stats.m_min) + "," + fmt17(rec.stats.m_max) + "," +
                                   fmt17(rec.stats.alpha_min) + "," +
                                   fmt17(rec.stats.alpha_max) + "," + fmt17(rec.stb_min) +
                                   "," + fmt17(rec.stb_max) + "," +
                                   config_string(s.min_result.best_config) + "," +
                                   config_string(s.max_result.best_config));
            journal.mark(unit);
            ++done;
            progress(done, total);
        }
    }
    return records;
}

int cmd_experiment(const fs::path& config_path, const fs::path& out_override,
                   std::optional<std::uint64_t> seed_override) {
    const auto kv = read_config(config_path);
    const std::string kind = cfg_get(kv, "experiment", "");
    if (kind.empty()) throw std::runtime_error("config needs experiment = ...");
    const fs::path out_dir =
        !out_override.empty() ? out_override : fs::path(cfg_get(kv, "out", "results"));
    fs::create_directories(out_dir);

    const std::uint64_t seed_base =
        seed_override ? *seed_override
                      : std::stoull(cfg_get(kv, "seed_base", "1"));
    const std::uint32_t replicas =
        static_cast<std::uint32_t>(std::stoul(cfg_get(kv, "replicas", "100")));
    const SolverConfig cfg = parse_solver_config(kv);
    const CouplingDistribution dist = parse_dist(kv);
    const double delta_meta =
        cfg_get(kv, "dist", "gaussian") == "diluted"
            ? std::stod(cfg_get(kv, "delta", "2.0"))
            : 2.0;
    const std::string dist_name = cfg_get(kv, "dist", "gaussian");

    if (kind == "table1" || kind == "concentration") {
        const auto n_list = parse_u32_list(cfg_get(kv, "n", "100"));
        const auto records =
            run_optima_units(kind, n_list, replicas, dist, cfg, seed_base, out_dir, nullptr);

        std::ofstream csv(out_dir / (kind + ".csv"));
        if (kind == "table1") {
            csv << "n,replicas,m_mean,m_se,alpha_mean,alpha_se,m_min_mean,m_max_mean,"
                   "alpha_min_mean,alpha_max_mean\n";
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                Welford m, a, mmin, mmax, amin, amax;
                for (const OptimaRecord& r : records[ni]) {
                    m.add(0.5 * (r.stats.m_min + r.stats.m_max));
                    a.add(0.5 * (r.stats.alpha_min + r.stats.alpha_max));
                    mmin.add(r.stats.m_min);
                    mmax.add(r.stats.m_max);
                    amin.add(r.stats.alpha_min);
                    amax.add(r.stats.alpha_max);
                }
                csv << n_list[ni] << ',' << replicas << ',' << format_sig6(m.mean()) << ','
                    << format_sig6(m.std_error()) << ',' << format_sig6(a.mean()) << ','
                    << format_sig6(a.std_error()) << ',' << format_sig6(mmin.mean()) << ','
                    << format_sig6(mmax.mean()) << ',' << format_sig6(amin.mean()) << ','
                    << format_sig6(amax.mean()) << '\n';
            }
        } else {
            csv << "n,replicas,m_min_mean,m_min_se,m_min_var,m_max_mean,m_max_se,m_max_var,"
                   "var_max_H,bound_3N\n";
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                Welford mn, mx;
                for (const OptimaRecord& r : records[ni]) {
                    mn.add(r.stats.m_min);
                    mx.add(r.stats.m_max);
                }
                const double nn = static_cast<double>(n_list[ni]);
                csv << n_list[ni] << ',' << replicas << ',' << format_sig6(mn.mean()) << ','
                    << format_sig6(mn.std_error()) << ',' << format_sig6(mn.variance()) << ','
                    << format_sig6(mx.mean()) << ',' << format_sig6(mx.std_error()) << ','
                    << format_sig6(mx.variance()) << ','
                    << format_sig6(nn * nn * mx.variance()) << ',' << format_sig6(3.0 * nn)
                    << '\n';
            }
        }
        std::cout << "wrote " << (out_dir / (kind + ".csv")).string() << "\n";
        return 0;
    }

    if (kind == "universality") {
        const std::uint32_t n = parse_u32_list(cfg_get(kv, "n", "512"))[0];
        // dists = name:dist;name:dist with per-name delta/lo/hi shared.
        std::vector<std::pair<std::string, CouplingDistribution>> dists;
        std::istringstream in(cfg_get(kv, "dists", "gaussian;expshift"));
        std::string item;
        while (std::getline(in, item, ';')) {
            auto kv2 = kv;
            kv2["dist"] = item;
            dists.emplace_back(item, parse_dist(kv2));
        }
        if (dists.size() < 2) throw std::runtime_error("universality needs >= 2 dists");

        std::ofstream csv(out_dir / "universality.csv");
        csv << "dist,n,replicas,m_mean,m_se,ci95_lo,ci95_hi\n";
        for (const auto& [dn, d] : dists) {
            const std::string name = "universality/" + dn;
            const auto records =
                run_optima_units(name, {n}, replicas, d, cfg, seed_base, out_dir, nullptr);
            Welford w;
            for (const OptimaRecord& r : records[0])
                w.add(0.5 * (r.stats.m_min + r.stats.m_max));
            csv << dn << ',' << n << ',' << replicas << ',' << format_sig6(w.mean()) << ','
                << format_sig6(w.std_error()) << ','
                << format_sig6(w.mean() - 1.96 * w.std_error()) << ','
                << format_sig6(w.mean() + 1.96 * w.std_error()) << '\n';
        }
        std::cout << "wrote " << (out_dir / "universality.csv").string() << "\n";
        return 0;
    }

    if (kind == "blocks" || kind == "ordering") {
        const std::uint32_t n = parse_u32_list(cfg_get(kv, "n", "256"))[0];
        const std::uint32_t bins =
            static_cast<std::uint32_t>(std::stoul(cfg_get(kv, "bins", "64")));
        std::vector<std::vector<std::pair<Configuration, Configuration>>> configs;
        const auto records = run_optima_units(kind, {n}, replicas, dist, cfg, seed_base,
                                              out_dir, &configs);

        if (kind == "blocks") {
            BlockAccumulator acc;
            for (std::uint32_t r = 0; r < replicas; ++r) {
                const std::uint64_t rs = replica_seed(seed_base, kind, n, r);
                const CouplingMatrix j =
                    generate(n, dist, rng::combine(rs, rng::hash_bytes("instance")));
                acc.add(j, block_partition(configs[0][r].first, configs[0][r].second));
            }
            const BlockStats b = acc.finalize();
            std::ofstream alpha_csv(out_dir / "blocks_alpha.csv");
            alpha_csv << "k,alpha_mean\n";
            for (int k = 0; k < 4; ++k)
                alpha_csv << (k + 1) << ',' << format_sig6(b.alphas[k]) << '\n';
            std::ofstream csv(out_dir / "blocks.csv");
            csv << "k,l,mu,sigma_tilde,defined\n";
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    csv << (k + 1) << ',' << (l + 1) << ',' << format_sig6(b.mu[k][l]) << ','
                        << format_sig6(b.sigma_tilde[k][l]) << ',' << (b.defined[k][l] ? 1 : 0)
                        << '\n';
            std::cout << "wrote " << (out_dir / "blocks.csv").string() << "\n";
        } else {
            OrderingAccumulator acc(bins);
            for (std::uint32_t r = 0; r < replicas; ++r) {
                const std::uint64_t rs = replica_seed(seed_base, kind, n, r);
                const CouplingMatrix j =
                    generate(n, dist, rng::combine(rs, rng::hash_bytes("instance")));
                acc.add(j, configs[0][r].first, configs[0][r].second);
            }
            const OrderingCurve c = acc.finalize();
            std::ofstream csv(out_dir / "ordering.csv");
            csv << "bin,rank_center,p_min,p_max,p_joint,ratio,ratio_sigma,trials\n";
            for (std::uint32_t b = 0; b < bins; ++b)
                csv << b << ',' << format_sig6(c.rank_centers[b]) << ','
                    << format_sig6(c.p_min[b]) << ',' << format_sig6(c.p_max[b]) << ','
                    << format_sig6(c.p_joint[b]) << ',' << format_sig6(c.ratio[b]) << ','
                    << format_sig6(c.ratio_sigma[b]) << ',' << c.trials[b] << '\n';
            std::cout << "wrote " << (out_dir / "ordering.csv").string() << "\n";
        }
        std::ofstream summary(out_dir / "optima_summary.csv");
        summary << "n,replicas,m_mean,m_se,alpha_mean,alpha_se\n";
        Welford m, a;
        for (const OptimaRecord& r : records[0]) {
            m.add(0.5 * (r.stats.m_min + r.stats.m_max));
            a.add(0.5 * (r.stats.alpha_min + r.stats.alpha_max));
        }
        summary << n << ',' << replicas << ',' << format_sig6(m.mean()) << ','
                << format_sig6(m.std_error()) << ',' << format_sig6(a.mean()) << ','
                << format_sig6(a.std_error()) << '\n';
        return 0;
    }

    throw std::runtime_error("unknown experiment kind: " + kind);
}

// ------------------------------------------------------------------ cmd: bench

int cmd_bench_table(const fs::path& table, const fs::path& out_dir) {
    std::ifstream in(table);
    if (!in) throw std::runtime_error("cannot open " + table.string());
    std::vector<BenchmarkRecord> recs;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line.rfind("instance_id", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::string id, nstr, rstr, bstr;
        if (!std::getline(ls, id, ',') || !std::getline(ls, nstr, ',') ||
            !std::getline(ls, rstr, ',') || !std::getline(ls, bstr, ','))
            throw std::runtime_error("bench table rows: instance_id,n,rho,best_known");
        BenchmarkRecord r;
        r.instance_id = id;
        r.n = static_cast<std::uint32_t>(std::stoul(nstr));
        r.rho = std::stod(rstr);
        r.best_known = std::stoll(bstr);
        r.m_n = m_from_best_known(r.n, r.rho, r.best_known);
        recs.push_back(r);
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        file.open(out_dir / "bench_table.csv");
        out = &file;
    }
    *out << "instance_id,n,rho,best_known,m_n\n";
    for (const BenchmarkRecord& r : recs)
        *out << r.instance_id << ',' << r.n << ',' << format_sig6(r.rho) << ','
             << r.best_known << ',' << format_sig6(r.m_n) << '\n';
    return 0;
}

int cmd_bench_solve(const fs::path& instance, double rho, std::uint32_t sweeps,
                    std::uint64_t seed, const std::string& objective) {
    std::ifstream in(instance);
    if (!in) throw std::runtime_error("cannot open " + instance.string());
    CouplingMatrix j = parse_instance(in);
    j.set_w(benchmark_w(j.n(), rho));
    SolverConfig cfg;
    cfg.sweeps = sweeps;
    const Objective obj = objective == "min" ? Objective::Minimize : Objective::Maximize;
    const SolveResult r = solve_one(j, cfg, seed, obj);
    const double m = (obj == Objective::Minimize ? -1.0 : 1.0) * r.best_energy / j.n();
    std::cout << "n=" << j.n() << " rho=" << format_sig6(rho) << " best_" << objective << '='
              << fmt17(r.best_energy) << " m=" << format_sig6(m)
              << " alpha=" << format_sig6(static_cast<double>(r.best_config.ones()) / j.n())
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-QUBO laboratory: instance generation, heuristic and exact solvers, "
                 "and replica statistics"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores)")
        ->envname("QUBOLAB_THREADS");

    // generate
    auto* gen = app.add_subcommand("generate", "write a random instance file plus sidecar");
    std::uint32_t gen_n = 0;
    std::uint64_t gen_seed = 1;
    fs::path gen_out = "instance.txt";
    bool zero_diag = false;
    DistFlags gen_dist;
    gen->add_option("--n", gen_n, "number of sites")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--out", gen_out, "output instance path");
    gen->add_flag("--zero-diagonal", zero_diag, "zero the diagonal entries");
    gen_dist.attach(gen);

    // solve
    auto* slv = app.add_subcommand("solve", "run a solver on an instance file");
    fs::path slv_instance;
    std::string slv_solver = "pca", slv_obj = "min", slv_grid = "default";
    double slv_w = 0.0, slv_rho = 0.0, slv_beta = 2.0, slv_q = 1.0;
    std::uint32_t slv_sweeps = 2000;
    bool slv_ramp = true, slv_timing = false;
    std::uint64_t slv_seed = 1;
    fs::path slv_out = "solve_out";
    slv->add_option("--instance", slv_instance, "instance file")->required();
    slv->add_option("--solver", slv_solver, "pca|metropolis|brute");
    slv->add_option("--objective", slv_obj, "min|max")
        ->check(CLI::IsMember({"min", "max"}));
    slv->add_option("--w", slv_w, "normalization constant W");
    slv->add_option("--bench-rho", slv_rho, "use the benchmark W at this density");
    slv->add_option("--grid", slv_grid, "default|none (pca)");
    slv->add_option("--beta", slv_beta, "beta (metropolis, or pca with --grid none)");
    slv->add_option("--q", slv_q, "q (pca with --grid none)");
    slv->add_option("--sweeps", slv_sweeps, "sweeps");
    slv->add_flag("!--no-ramp", slv_ramp, "disable the beta ramp");
    slv->add_flag("--timing", slv_timing, "record wall time in the CSV");
    slv->add_option("--seed", slv_seed, "solver seed");
    slv->add_option("--out", slv_out, "output directory");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a replica experiment from a config");
    fs::path exp_config, exp_out;
    std::uint64_t exp_seed = 0;
    exp->add_option("--config", exp_config, "key = value config file")->required();
    exp->add_option("--out", exp_out, "output directory (overrides config)");
    auto* exp_seed_opt = exp->add_option("--seed", exp_seed, "seed base (overrides config)");

    // bench
    auto* ben = app.add_subcommand("bench", "benchmark-table utilities");
    fs::path ben_table, ben_instance, ben_out;
    double ben_rho = 1.0;
    std::uint32_t ben_sweeps = 2000;
    std::uint64_t ben_seed = 1;
    std::string ben_obj = "max";
    ben->add_option("--table", ben_table, "CSV of instance_id,n,rho,best_known");
    ben->add_option("--instance", ben_instance, "instance file to solve");
    ben->add_option("--rho", ben_rho, "density used in the benchmark W");
    ben->add_option("--sweeps", ben_sweeps, "sweeps for --instance");
    ben->add_option("--seed", ben_seed, "seed for --instance");
    ben->add_option("--objective", ben_obj, "min|max")
        ->check(CLI::IsMember({"min", "max"}));
    ben->add_option("--out", ben_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*gen) return cmd_generate(gen_n, gen_dist, gen_seed, gen_out, zero_diag);
        if (*slv)
            return cmd_solve(slv_instance, slv_solver, slv_obj, slv_w, slv_rho, slv_grid,
                             slv_beta, slv_q, slv_sweeps, slv_ramp, slv_seed, slv_out,
                             slv_timing);
        if (*exp)
            return cmd_experiment(exp_config, exp_out,
                                  exp_seed_opt->count() ? std::optional<std::uint64_t>(exp_seed)
                                                        : std::nullopt);
        if (*ben) {
            if (!ben_table.empty()) return cmd_bench_table(ben_table, ben_out);
            if (!ben_instance.empty())
                return cmd_bench_solve(ben_instance, ben_rho, ben_sweeps, ben_seed, ben_obj);
            throw std::runtime_error("bench needs --table or --instance");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
