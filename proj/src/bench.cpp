#include "sto/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sto/rng.hpp"

namespace sto {

namespace {

using clock_type = std::chrono::steady_clock;

double now_ms() {
    return std::chrono::duration<double, std::milli>(clock_type::now().time_since_epoch())
        .count();
}

struct LatencySummary {
    double median_ns = 0.0;
    double p99_ns = 0.0;
};

LatencySummary summarize(std::vector<double>& samples) {
    if (samples.empty()) return {};
    std::sort(samples.begin(), samples.end());
    LatencySummary s;
    s.median_ns = samples[samples.size() / 2];
    s.p99_ns = samples[std::min(samples.size() - 1,
                                static_cast<size_t>(static_cast<double>(samples.size()) * 0.99))];
    return s;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string rows_to_csv(const std::vector<BenchRow>& rows,
                        const std::vector<std::string>& skipped) {
    std::ostringstream os;
    os << kCsvHeader << "\n";
    for (const auto& r : rows) {
        os << r.problem << ',' << r.param_name << ',' << r.param_value << ',' << r.n << ','
           << r.N << ',' << r.size_words << ',' << format_double(r.build_ms) << ','
           << format_double(r.median_query_ns) << ',' << format_double(r.p99_query_ns) << ','
           << format_double(r.probe_mean) << ',' << r.seed << "\n";
    }
    for (const auto& s : skipped) os << "# skipped: " << s << "\n";
    return os.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows,
               const std::vector<std::string>& skipped) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    out << rows_to_csv(rows, skipped);
}

double fit_slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 3)
        throw validation_error("fit_slope: need at least 3 points, got " +
                               std::to_string(xy.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        if (x <= 0.0 || y <= 0.0)
            throw validation_error("fit_slope: all values must be positive for a log-log fit");
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double count = static_cast<double>(xy.size());
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) <= 1e-9 * std::max(1.0, count * sxx))
        throw validation_error("fit_slope: degenerate x values");
    return (count * sxy - sx * sy) / denom;
}

namespace {

double field_value(const BenchRow& r, const std::string& field) {
    if (field == "param_value") return static_cast<double>(r.param_value);
    if (field == "n") return static_cast<double>(r.n);
    if (field == "N") return static_cast<double>(r.N);
    if (field == "size_words") return static_cast<double>(r.size_words);
    if (field == "build_ms") return r.build_ms;
    if (field == "median_query_ns") return r.median_query_ns;
    if (field == "p99_query_ns") return r.p99_query_ns;
    if (field == "probe_mean") return r.probe_mean;
    if (field == "N_over_param") return static_cast<double>(r.N) / static_cast<double>(r.param_value);
    throw validation_error("fit_slope: unknown field " + field);
}

}  // namespace

double fit_slope(const std::vector<BenchRow>& rows, const std::string& x_field,
                 const std::string& y_field) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(rows.size());
    for (const auto& r : rows) xy.emplace_back(field_value(r, x_field), field_value(r, y_field));
    return fit_slope(xy);
}

double fit_slope_csv(const std::filesystem::path& csv, const std::string& x_column,
                     const std::string& y_column) {
    std::ifstream in(csv);
    if (!in) throw parse_error(csv.string() + ": cannot open for reading");
    std::string line;
    if (!std::getline(in, line)) throw parse_error(csv.string() + ": empty file");
    std::vector<std::string> header;
    {
        std::stringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw validation_error(csv.string() + ": no column named " + name);
        return static_cast<size_t>(it - header.begin());
    };
    const size_t xi = col(x_column), yi = col(y_column);
    std::vector<std::pair<double, double>> xy;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw parse_error(csv.string() + ": ragged row \"" + line + "\"");
        xy.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
    }
    return fit_slope(xy);
}

// ----------------------------------------------------------------- verify

VerifyReport verify_set_disjointness(const SetFamily& family, int k, int64_t target_time,
                                     uint64_t queries, uint64_t seed, uint64_t word_budget) {
    const SetOracle oracle = SetOracle::build(family, k, target_time,
                                              SetOracleMode::disjointness, word_budget);
    Rng rng(seed);
    VerifyReport rep;
    std::vector<int32_t> ids(static_cast<size_t>(k));
    for (uint64_t q = 0; q < queries; ++q) {
        for (auto& id : ids)
            id = static_cast<int32_t>(rng.below(static_cast<uint64_t>(family.size())));
        ++rep.queries;
        if (oracle.query_disjoint(ids) != brute_disjoint(family, ids)) ++rep.mismatches;
    }
    return rep;
}

VerifyReport verify_set_intersection(const SetFamily& family, int64_t target_time,
                                     uint64_t queries, uint64_t seed, uint64_t word_budget) {
    const SetOracle oracle =
        SetOracle::build(family, 2, target_time, SetOracleMode::intersection, word_budget);
    Rng rng(seed);
    VerifyReport rep;
    for (uint64_t q = 0; q < queries; ++q) {
        const int32_t i = static_cast<int32_t>(rng.below(static_cast<uint64_t>(family.size())));
        const int32_t j = static_cast<int32_t>(rng.below(static_cast<uint64_t>(family.size())));
        ++rep.queries;
        if (oracle.enumerate_intersection(i, j) != brute_intersection(family, i, j))
            ++rep.mismatches;
    }
    return rep;
}

VerifyReport verify_sum_indexing(const SumInstance& instance, uint64_t queries, uint64_t seed,
                                 uint64_t word_budget) {
    std::optional<SumIndex> table;
    try {
        table = SumIndex::build(instance, SumIndexMode::full_table, word_budget);
    } catch (const budget_error&) {
        // Verify the linear extreme alone when the table does not fit.
    }
    const SumIndex linear = SumIndex::build(instance, SumIndexMode::linear, word_budget);
    Rng rng(seed);
    VerifyReport rep;
    const int64_t spread =
        2 * static_cast<int64_t>(instance.k()) * std::max<int64_t>(instance.value_bound, 1);
    for (uint64_t q = 0; q < queries; ++q) {
        const int64_t z = rng.range(-spread, spread);
        const bool expected = brute_sum(instance, z).has_value();
        ++rep.queries;
        bool ok = linear.query(z).has_value() == expected;
        if (table) ok = ok && table->query(z).has_value() == expected;
        if (!ok) ++rep.mismatches;
    }
    return rep;
}

VerifyReport verify_reachability(const Digraph& graph, int k, int64_t alpha, uint64_t queries,
                                 uint64_t seed, uint64_t word_budget) {
    const ReachOracle oracle = ReachOracle::build(graph, k, alpha, word_budget);
    Rng rng(seed);
    VerifyReport rep;
    if (graph.n < 2) return rep;
    for (uint64_t q = 0; q < queries; ++q) {
        int64_t u = static_cast<int64_t>(rng.below(static_cast<uint64_t>(graph.n)));
        int64_t v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(graph.n)));
        if (u == v) v = (v + 1) % graph.n;
        ++rep.queries;
        if (oracle.query(u, v) != brute_reach(graph, u, v, k)) ++rep.mismatches;
    }
    return rep;
}

// ------------------------------------------------------------------ sweeps

namespace {

template <typename QueryFn>
LatencySummary time_queries(QueryFn&& run_query, size_t workload_size,
                            uint64_t timed_repetitions) {
    if (workload_size == 0) return {};
    // Warmup pass.
    for (size_t i = 0; i < workload_size; ++i) run_query(i);
    std::vector<double> samples;
    samples.reserve(timed_repetitions);
    size_t cursor = 0;
    while (samples.size() < timed_repetitions) {
        const auto begin = clock_type::now();
        run_query(cursor);
        const auto end = clock_type::now();
        samples.push_back(std::chrono::duration<double, std::nano>(end - begin).count());
        cursor = (cursor + 1) % workload_size;
    }
    return summarize(samples);
}

}  // namespace

SweepResult sweep_set_oracle(const SetFamily& family, int k,
                             const std::vector<int64_t>& f_grid, uint64_t queries,
                             uint64_t seed, uint64_t word_budget, uint64_t timed_repetitions) {
    if (f_grid.empty()) throw validation_error("sweep: empty grid");
    SweepResult result;
    const int64_t m = static_cast<int64_t>(family.size());
    const int64_t n_total = family.total_size;

    // Sets ordered by size (desc, ties to lower id): boundary rank r is the
    // r-th largest. Query ids for probe measurement come from ranks
    // [f, min(2f, m)), the largest sets that still take the probe path.
    std::vector<int32_t> by_size(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i) by_size[static_cast<size_t>(i)] = static_cast<int32_t>(i);
    std::stable_sort(by_size.begin(), by_size.end(), [&](int32_t a, int32_t b) {
        return family.set(static_cast<size_t>(a)).size() >
               family.set(static_cast<size_t>(b)).size();
    });

    for (int64_t f : f_grid) {
        if (f < k || f > m) {
            result.skipped.push_back("f=" + std::to_string(f) + " outside [k, m]");
            continue;
        }
        const int64_t target_time = std::max<int64_t>(
            1, (static_cast<int64_t>(k) * n_total + f - 1) / f);
        const double t0 = now_ms();
        SetOracle oracle;
        try {
            oracle = SetOracle::build(family, k, target_time, SetOracleMode::disjointness,
                                      word_budget);
        } catch (const budget_error& e) {
            result.skipped.push_back("f=" + std::to_string(f) + " needs " +
                                     std::to_string(e.required_words) + " words, budget " +
                                     std::to_string(e.budget_words));
            continue;
        }
        const double build_ms = now_ms() - t0;

        Rng rng(seed ^ static_cast<uint64_t>(f));
        // Correctness workload: uniform tuples, all cross-checked.
        std::vector<int32_t> ids(static_cast<size_t>(k));
        for (uint64_t q = 0; q < queries; ++q) {
            for (auto& id : ids) id = static_cast<int32_t>(rng.below(static_cast<uint64_t>(m)));
            if (oracle.query_disjoint(ids) != brute_disjoint(family, ids))
                throw verification_failure("set-oracle sweep: mismatch at f=" +
                                           std::to_string(f));
        }

        // Probe workload near the boundary, also cross-checked.
        const int64_t f_built = oracle.large_count();
        const int64_t band_begin = std::min<int64_t>(f_built, m - 1);
        const int64_t band_end = std::min<int64_t>(m, std::max<int64_t>(2 * f_built, band_begin + 1));
        std::vector<std::vector<int32_t>> workload;
        for (uint64_t q = 0; q < std::max<uint64_t>(queries, 64); ++q) {
            std::vector<int32_t> tuple(static_cast<size_t>(k));
            for (auto& id : tuple)
                id = by_size[static_cast<size_t>(
                    band_begin + static_cast<int64_t>(rng.below(
                                     static_cast<uint64_t>(band_end - band_begin))))];
            if (oracle.query_disjoint(tuple) != brute_disjoint(family, tuple))
                throw verification_failure("set-oracle sweep: boundary mismatch at f=" +
                                           std::to_string(f));
            workload.push_back(std::move(tuple));
        }
        oracle.reset_probes();
        uint64_t small_path_queries = 0;
        for (const auto& tuple : workload) {
            bool all_large = true;
            for (int32_t id : tuple) all_large = all_large && oracle.is_large(id);
            if (all_large) continue;
            ++small_path_queries;
            oracle.query_disjoint(tuple);
        }
        const double probe_mean =
            small_path_queries == 0
                ? 0.0
                : static_cast<double>(oracle.probes()) / static_cast<double>(small_path_queries);

        auto latency = time_queries(
            [&](size_t i) { oracle.query_disjoint(workload[i]); }, workload.size(),
            timed_repetitions);

        BenchRow row;
        row.problem = "set_disjointness_k" + std::to_string(k);
        row.param_name = "f";
        row.param_value = f_built;
        row.n = m;
        row.N = n_total;
        row.size_words = oracle.size_words().total_words;
        row.build_ms = build_ms;
        row.median_query_ns = latency.median_ns;
        row.p99_query_ns = latency.p99_ns;
        row.probe_mean = probe_mean;
        row.seed = seed;
        result.rows.push_back(std::move(row));
        result.reports.push_back(oracle.size_words());
    }
    return result;
}

SweepResult sweep_reach(const Digraph& graph, int k, const std::vector<int64_t>& alpha_grid,
                        uint64_t queries, uint64_t seed, uint64_t word_budget,
                        uint64_t timed_repetitions) {
    if (alpha_grid.empty()) throw validation_error("sweep: empty grid");
    if (graph.n < 2) throw validation_error("sweep: graph too small");
    SweepResult result;
    for (int64_t alpha : alpha_grid) {
        const double t0 = now_ms();
        ReachOracle oracle;
        try {
            oracle = ReachOracle::build(graph, k, alpha, word_budget);
        } catch (const budget_error& e) {
            result.skipped.push_back("alpha=" + std::to_string(alpha) + " needs " +
                                     std::to_string(e.required_words) + " words, budget " +
                                     std::to_string(e.budget_words));
            continue;
        }
        const double build_ms = now_ms() - t0;

        Rng rng(seed ^ static_cast<uint64_t>(alpha));
        std::vector<std::pair<int64_t, int64_t>> workload;
        workload.reserve(queries);
        for (uint64_t q = 0; q < queries; ++q) {
            int64_t u = static_cast<int64_t>(rng.below(static_cast<uint64_t>(graph.n)));
            int64_t v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(graph.n)));
            if (u == v) v = (v + 1) % graph.n;
            workload.emplace_back(u, v);
        }
        oracle.reset_probes();
        for (const auto& [u, v] : workload) {
            if (oracle.query(u, v) != brute_reach(graph, u, v, k))
                throw verification_failure("reach sweep: mismatch at alpha=" +
                                           std::to_string(alpha));
        }
        const double probe_mean = workload.empty()
                                      ? 0.0
                                      : static_cast<double>(oracle.probes()) /
                                            static_cast<double>(workload.size());
        auto latency = time_queries(
            [&](size_t i) { oracle.query(workload[i].first, workload[i].second); },
            workload.size(), timed_repetitions);

        BenchRow row;
        row.problem = "reachability_k" + std::to_string(k);
        row.param_name = "alpha";
        row.param_value = alpha;
        row.n = graph.n;
        row.N = static_cast<int64_t>(graph.edge_count());
        row.size_words = oracle.size_words().total_words;
        row.build_ms = build_ms;
        row.median_query_ns = latency.median_ns;
        row.p99_query_ns = latency.p99_ns;
        row.probe_mean = probe_mean;
        row.seed = seed;
        result.rows.push_back(std::move(row));
        result.reports.push_back(oracle.size_words());
        result.heavy_counts.push_back(oracle.heavy_count());
    }
    return result;
}

SweepResult sweep_sum(const SumInstance& instance, uint64_t queries, uint64_t seed,
                      uint64_t word_budget, uint64_t timed_repetitions) {
    SweepResult result;
    const int64_t spread =
        2 * static_cast<int64_t>(instance.k()) * std::max<int64_t>(instance.value_bound, 1);
    for (int mode_value = 0; mode_value < 2; ++mode_value) {
        const SumIndexMode mode =
            mode_value == 0 ? SumIndexMode::full_table : SumIndexMode::linear;
        const double t0 = now_ms();
        SumIndex index;
        try {
            index = SumIndex::build(instance, mode, word_budget);
        } catch (const budget_error& e) {
            result.skipped.push_back("mode=" + std::to_string(mode_value) + " needs " +
                                     std::to_string(e.required_words) + " words, budget " +
                                     std::to_string(e.budget_words));
            continue;
        }
        const double build_ms = now_ms() - t0;

        Rng rng(seed ^ static_cast<uint64_t>(mode_value));
        std::vector<int64_t> workload;
        workload.reserve(queries);
        for (uint64_t q = 0; q < queries; ++q) workload.push_back(rng.range(-spread, spread));
        index.reset_probes();
        for (int64_t z : workload) {
            if (index.query(z).has_value() != brute_sum(instance, z).has_value())
                throw verification_failure("sum sweep: mismatch at mode=" +
                                           std::to_string(mode_value));
        }
        const double probe_mean = workload.empty()
                                      ? 0.0
                                      : static_cast<double>(index.probes()) /
                                            static_cast<double>(workload.size());
        auto latency = time_queries([&](size_t i) { index.query(workload[i]); },
                                    workload.size(), timed_repetitions);

        BenchRow row;
        row.problem = "sum_indexing_k" + std::to_string(instance.k());
        row.param_name = "mode";
        row.param_value = mode_value;
        row.n = static_cast<int64_t>(instance.n());
        row.N = static_cast<int64_t>(instance.k() * instance.n());
        row.size_words = index.size_words().total_words;
        row.build_ms = build_ms;
        row.median_query_ns = latency.median_ns;
        row.p99_query_ns = latency.p99_ns;
        row.probe_mean = probe_mean;
        row.seed = seed;
        result.rows.push_back(std::move(row));
        result.reports.push_back(index.size_words());
    }
    return result;
}

}  // namespace sto
