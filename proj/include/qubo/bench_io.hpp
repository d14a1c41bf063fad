#ifndef QUBO_BENCH_IO_HPP
#define QUBO_BENCH_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubo/instance.hpp"

namespace qubo {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    std::size_t line;
};

// Sparse triplet instance format:
//   N M
//   i j v        (M lines, 1-based, i <= j; the pair is mirrored on load)
// Blank lines and '#' comments are ignored; duplicates and i > j are errors.
// The result is symmetric with W = 1.0 until a normalization is applied.
CouplingMatrix parse_instance(std::istream& in);

// Canonical form: entries sorted by (i, j) with i <= j, one per line.
// Integer-valued entries print as integers, others at full precision.
// Requires a symmetric matrix.
void write_instance(const CouplingMatrix& j, std::ostream& out);

// W for the uniform-integer [-100,100] symmetric benchmark family:
// sqrt(6 / (rho * n * (201^2 - 1))).
double benchmark_w(std::uint32_t n, double rho);

// Per-particle value of a known optimum: benchmark_w(n, rho) * best / n.
double m_from_best_known(std::uint32_t n, double rho, std::int64_t best_known);

struct BenchmarkRecord {
    std::string instance_id;
    std::uint32_t n;
    double rho;
    std::int64_t best_known;
    double m_n;  // filled by m_from_best_known
};

struct ResultRow {
    std::string experiment;
    std::uint32_t n = 0;
    double delta = 0.0;  // 2.0 for dense
    std::string dist;
    std::string seed;  // replica seed, or AGG_MEAN / AGG_SE markers
    std::string objective;
    double m = 0.0;
    double alpha = 0.0;
    double sweeps_to_best = 0.0;
    double wall_ms = 0.0;
};

// CSV with header experiment,n,delta,dist,seed,objective,m,alpha,
// sweeps_to_best,wall_ms; floats at 6 significant digits. Each
// (experiment,n,delta,dist,objective) group is followed by AGG_MEAN and
// AGG_SE rows computed from the values as printed, so a reader averaging the
// replica rows reproduces AGG_MEAN exactly.
void emit_results(const std::vector<ResultRow>& rows, std::ostream& out);

// %.6g formatting used throughout the CSV output.
std::string format_sig6(double v);

}  // namespace qubo

#endif
