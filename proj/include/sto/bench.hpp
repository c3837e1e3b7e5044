#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sto/errors.hpp"
#include "sto/instances.hpp"
#include "sto/reach_oracle.hpp"
#include "sto/set_oracle.hpp"
#include "sto/sum_index.hpp"

namespace sto {

// One measured grid point. size_words and probe_mean are deterministic for a
// fixed seed; wall-clock fields are not.
struct BenchRow {
    std::string problem;
    std::string param_name;
    int64_t param_value = 0;
    int64_t n = 0;  // instance count parameter (m sets / array length / vertices)
    int64_t N = 0;  // instance size (total elements / k*n / edges)
    uint64_t size_words = 0;
    double build_ms = 0.0;
    double median_query_ns = 0.0;
    double p99_query_ns = 0.0;
    double probe_mean = 0.0;
    uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "problem,param_name,param_value,n,N,size_words,build_ms,median_query_ns,"
    "p99_query_ns,probe_mean,seed";

std::string rows_to_csv(const std::vector<BenchRow>& rows,
                        const std::vector<std::string>& skipped = {});
void write_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows,
               const std::vector<std::string>& skipped = {});

// Least-squares slope of log(y) against log(x). Needs >= 3 points, all
// positive; throws validation_error otherwise.
double fit_slope(const std::vector<std::pair<double, double>>& xy);
double fit_slope(const std::vector<BenchRow>& rows, const std::string& x_field,
                 const std::string& y_field);
// Named-column slope over a parsed CSV (the `fit` subcommand).
double fit_slope_csv(const std::filesystem::path& csv, const std::string& x_column,
                     const std::string& y_column);

struct VerifyReport {
    uint64_t queries = 0;
    uint64_t mismatches = 0;
};

// Oracle vs brute force on a shared random workload.
VerifyReport verify_set_disjointness(const SetFamily& family, int k, int64_t target_time,
                                     uint64_t queries, uint64_t seed,
                                     uint64_t word_budget = kDefaultWordBudget);
VerifyReport verify_set_intersection(const SetFamily& family, int64_t target_time,
                                     uint64_t queries, uint64_t seed,
                                     uint64_t word_budget = kDefaultWordBudget);
VerifyReport verify_sum_indexing(const SumInstance& instance, uint64_t queries, uint64_t seed,
                                 uint64_t word_budget = uint64_t{1} << 28);
VerifyReport verify_reachability(const Digraph& graph, int k, int64_t alpha, uint64_t queries,
                                 uint64_t seed, uint64_t word_budget = uint64_t{1} << 28);

// Sweep failure: a grid point whose answers disagree with brute force.
struct verification_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepResult {
    std::vector<BenchRow> rows;
    std::vector<std::string> skipped;          // budget-exceeded grid points
    std::vector<OracleSizeReport> reports;     // one per emitted row
    std::vector<int64_t> heavy_counts;         // reachability sweeps only
};

// Builds one oracle per grid point over the same instance, cross-checks
// every measured query against the brute oracle (verification_failure on
// any mismatch), and measures probe counts plus query latency.
//
// Set-oracle sweeps measure probes on query tuples drawn from the sets just
// below the large/small boundary: the curve's time axis is the worst-case
// query cost at the chosen space, and uniformly random tuples mostly hit
// far smaller sets.
SweepResult sweep_set_oracle(const SetFamily& family, int k,
                             const std::vector<int64_t>& f_grid, uint64_t queries,
                             uint64_t seed, uint64_t word_budget = kDefaultWordBudget,
                             uint64_t timed_repetitions = 10000);
SweepResult sweep_reach(const Digraph& graph, int k, const std::vector<int64_t>& alpha_grid,
                        uint64_t queries, uint64_t seed,
                        uint64_t word_budget = uint64_t{1} << 28,
                        uint64_t timed_repetitions = 10000);
// Grid is the two modes; param_value 0 = full_table, 1 = linear.
SweepResult sweep_sum(const SumInstance& instance, uint64_t queries, uint64_t seed,
                      uint64_t word_budget = uint64_t{1} << 28,
                      uint64_t timed_repetitions = 10000);

}  // namespace sto
