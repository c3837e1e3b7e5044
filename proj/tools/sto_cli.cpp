// Command-line harness: instance generation, oracle building, correctness
// verification, tradeoff sweeps and log-log slope fits.
//
// Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 word budget
// exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sto/bench.hpp"
#include "sto/instances.hpp"
#include "sto/reach_oracle.hpp"
#include "sto/reductions.hpp"
#include "sto/set_oracle.hpp"
#include "sto/sum_index.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitBudget = 3;

json report_to_json(const sto::OracleSizeReport& report) {
    json parts = json::array();
    for (const auto& [name, words] : report.parts)
        parts.push_back(json{{"component", name}, {"words", words}});
    return json{{"parts", parts}, {"total_words", report.total_words}};
}

struct GenOptions {
    std::string type;
    std::string out;
    uint64_t seed = 0;
    int64_t m = 8, universe = 64, target_n = 64;
    double skew = 0.0;
    int64_t k = 2, n = 16, value_bound = 1000, planted = 0;
    int64_t vertices = 16, edges = 32;
};

int run_gen(const GenOptions& opt) {
    if (opt.type == "set_family") {
        auto family = sto::gen_set_family(opt.m, opt.universe, opt.target_n, opt.skew, opt.seed);
        sto::write_instance(opt.out, family);
    } else if (opt.type == "sum_instance") {
        auto [instance, targets] =
            sto::gen_sum_instance(opt.k, opt.n, opt.value_bound, opt.planted, opt.seed);
        sto::write_instance(opt.out, instance);
        if (!targets.empty()) {
            json side{{"planted_targets", targets}};
            std::cout << side.dump() << "\n";
        }
    } else if (opt.type == "digraph") {
        sto::write_instance(opt.out, sto::gen_digraph(opt.vertices, opt.edges, opt.seed));
    } else {
        std::cerr << "unknown instance type: " << opt.type << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

std::vector<int64_t> parse_grid(const std::string& grid) {
    std::vector<int64_t> values;
    size_t pos = 0;
    while (pos < grid.size()) {
        size_t comma = grid.find(',', pos);
        if (comma == std::string::npos) comma = grid.size();
        values.push_back(std::stoll(grid.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space/time tradeoff oracles and reductions"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string out_path;
    uint64_t word_budget = sto::kDefaultWordBudget;
    bool as_json = false;
    bool as_csv = false;
    app.add_option("--seed", seed, "generator / workload seed")->capture_default_str();
    app.add_option("--out", out_path, "output path");
    app.add_option("--word-budget", word_budget, "max words a build may allocate")
        ->capture_default_str();
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--csv", as_csv, "CSV output");

    // gen
    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a random instance file");
    cmd_gen->add_option("--type", gen.type, "set_family | sum_instance | digraph")->required();
    cmd_gen->add_option("--m", gen.m, "number of sets");
    cmd_gen->add_option("--universe", gen.universe, "universe size");
    cmd_gen->add_option("--target-n", gen.target_n, "target total size N");
    cmd_gen->add_option("--skew", gen.skew, "set size skew in [0,1]");
    cmd_gen->add_option("--k", gen.k, "arrays in a sum instance");
    cmd_gen->add_option("--n", gen.n, "array length");
    cmd_gen->add_option("--value-bound", gen.value_bound, "max |value|");
    cmd_gen->add_option("--planted", gen.planted, "planted query targets");
    cmd_gen->add_option("--vertices", gen.vertices, "digraph vertex count");
    cmd_gen->add_option("--edges", gen.edges, "digraph edge count");

    // build
    std::string build_in, build_problem = "set_disjointness";
    int build_k = 2;
    int64_t build_target_t = 1, build_alpha = 8;
    std::string build_mode = "full_table";
    auto* cmd_build = app.add_subcommand("build", "build an oracle, print its size report");
    cmd_build->add_option("--in", build_in, "instance file")->required();
    cmd_build
        ->add_option("--problem", build_problem,
                     "set_disjointness | set_intersection | sum_indexing | reachability")
        ->capture_default_str();
    cmd_build->add_option("--k", build_k, "arity / max hops")->capture_default_str();
    cmd_build->add_option("--target-t", build_target_t, "target query time (set oracle)")
        ->capture_default_str();
    cmd_build->add_option("--alpha", build_alpha, "heavy degree threshold")
        ->capture_default_str();
    cmd_build->add_option("--mode", build_mode, "full_table | linear")->capture_default_str();

    // verify
    std::string verify_in, verify_problem = "set_disjointness";
    int verify_k = 2;
    int64_t verify_target_t = 0, verify_alpha = 8;
    uint64_t verify_queries = 1000;
    auto* cmd_verify = app.add_subcommand("verify", "cross-check an oracle against brute force");
    cmd_verify->add_option("--in", verify_in, "instance file")->required();
    cmd_verify
        ->add_option("--problem", verify_problem,
                     "set_disjointness | set_intersection | sum_indexing | reachability")
        ->capture_default_str();
    cmd_verify->add_option("--k", verify_k, "arity / max hops")->capture_default_str();
    cmd_verify->add_option("--target-t", verify_target_t, "target query time (0 = N)")
        ->capture_default_str();
    cmd_verify->add_option("--alpha", verify_alpha, "heavy degree threshold")
        ->capture_default_str();
    cmd_verify->add_option("--queries", verify_queries, "query count")->capture_default_str();

    // sweep
    std::string sweep_in, sweep_problem = "set_oracle", sweep_grid = "4,8,16,32";
    int sweep_k = 2;
    uint64_t sweep_queries = 256;
    auto* cmd_sweep = app.add_subcommand("sweep", "trace a space/time tradeoff curve");
    cmd_sweep->add_option("--in", sweep_in, "instance file")->required();
    cmd_sweep->add_option("--problem", sweep_problem, "set_oracle | reachability | sum_indexing")
        ->capture_default_str();
    cmd_sweep->add_option("--grid", sweep_grid, "comma-separated tradeoff parameter values")
        ->capture_default_str();
    cmd_sweep->add_option("--k", sweep_k, "arity / max hops")->capture_default_str();
    cmd_sweep->add_option("--queries", sweep_queries, "cross-checked queries per point")
        ->capture_default_str();

    // reduce
    std::string reduce_in, reduce_to = "3sum_indexing", reduce_out;
    int reduce_k = 2;
    double reduce_gamma = 0.5, reduce_delta = 0.25;
    auto* cmd_reduce = app.add_subcommand("reduce", "transform an instance between problems");
    cmd_reduce->add_option("--in", reduce_in, "source instance file")->required();
    cmd_reduce
        ->add_option("--to", reduce_to,
                     "3sum_indexing | ksum_indexing | 2reach | set_disjointness_from_graph | "
                     "hashed_sd | hashed_si")
        ->capture_default_str();
    cmd_reduce->add_option("--k", reduce_k, "arity for ksum_indexing")->capture_default_str();
    cmd_reduce->add_option("--gamma", reduce_gamma, "bucket exponent")->capture_default_str();
    cmd_reduce->add_option("--delta", reduce_delta, "reporting variant exponent")
        ->capture_default_str();

    // fit
    std::string fit_in, fit_x = "param_value", fit_y = "size_words";
    auto* cmd_fit = app.add_subcommand("fit", "least-squares slope of log(y) vs log(x)");
    cmd_fit->add_option("--in", fit_in, "sweep CSV")->required();
    cmd_fit->add_option("--x", fit_x, "x column")->capture_default_str();
    cmd_fit->add_option("--y", fit_y, "y column")->capture_default_str();

    // Let --seed/--out/--word-budget appear after the subcommand too.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) {
            if (out_path.empty()) {
                std::cerr << "gen: --out is required\n";
                return kExitUsage;
            }
            gen.out = out_path;
            gen.seed = seed;
            return run_gen(gen);
        }

        if (cmd_build->parsed()) {
            sto::OracleSizeReport report;
            if (build_problem == "set_disjointness" || build_problem == "set_intersection") {
                auto family = sto::read_set_family(build_in);
                const auto mode = build_problem == "set_intersection"
                                      ? sto::SetOracleMode::intersection
                                      : sto::SetOracleMode::disjointness;
                int64_t t = build_target_t > 0 ? build_target_t
                                               : std::max<int64_t>(1, family.total_size);
                report = sto::SetOracle::build(family, build_k, t, mode, word_budget)
                             .size_words();
            } else if (build_problem == "sum_indexing") {
                auto instance = sto::read_sum_instance(build_in);
                const auto mode = build_mode == "linear" ? sto::SumIndexMode::linear
                                                         : sto::SumIndexMode::full_table;
                report = sto::SumIndex::build(instance, mode, word_budget).size_words();
            } else if (build_problem == "reachability") {
                auto graph = sto::read_digraph(build_in);
                report = sto::ReachOracle::build(graph, build_k, build_alpha, word_budget)
                             .size_words();
            } else {
                std::cerr << "unknown problem: " << build_problem << "\n";
                return kExitUsage;
            }
            std::cout << report_to_json(report).dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            sto::VerifyReport report;
            if (verify_problem == "set_disjointness") {
                auto family = sto::read_set_family(verify_in);
                int64_t t = verify_target_t > 0 ? verify_target_t
                                                : std::max<int64_t>(1, family.total_size);
                report = sto::verify_set_disjointness(family, verify_k, t, verify_queries, seed,
                                                      word_budget);
            } else if (verify_problem == "set_intersection") {
                auto family = sto::read_set_family(verify_in);
                int64_t t = verify_target_t > 0 ? verify_target_t
                                                : std::max<int64_t>(1, family.total_size);
                report = sto::verify_set_intersection(family, t, verify_queries, seed,
                                                      word_budget);
            } else if (verify_problem == "sum_indexing") {
                auto instance = sto::read_sum_instance(verify_in);
                report = sto::verify_sum_indexing(instance, verify_queries, seed, word_budget);
            } else if (verify_problem == "reachability") {
                auto graph = sto::read_digraph(verify_in);
                report = sto::verify_reachability(graph, verify_k, verify_alpha, verify_queries,
                                                  seed, word_budget);
            } else {
                std::cerr << "unknown problem: " << verify_problem << "\n";
                return kExitUsage;
            }
            std::cout << json{{"queries", report.queries}, {"mismatches", report.mismatches}}
                             .dump()
                      << "\n";
            return report.mismatches == 0 ? kExitOk : kExitVerification;
        }

        if (cmd_sweep->parsed()) {
            sto::SweepResult result;
            auto grid = parse_grid(sweep_grid);
            if (sweep_problem == "set_oracle") {
                auto family = sto::read_set_family(sweep_in);
                result = sto::sweep_set_oracle(family, sweep_k, grid, sweep_queries, seed,
                                               word_budget);
            } else if (sweep_problem == "reachability") {
                auto graph = sto::read_digraph(sweep_in);
                result = sto::sweep_reach(graph, sweep_k, grid, sweep_queries, seed, word_budget);
            } else if (sweep_problem == "sum_indexing") {
                auto instance = sto::read_sum_instance(sweep_in);
                result = sto::sweep_sum(instance, sweep_queries, seed, word_budget);
            } else {
                std::cerr << "unknown problem: " << sweep_problem << "\n";
                return kExitUsage;
            }
            const std::string csv = sto::rows_to_csv(result.rows, result.skipped);
            if (!out_path.empty())
                sto::write_csv(out_path, result.rows, result.skipped);
            else
                std::cout << csv;
            for (const auto& s : result.skipped) std::cerr << "skipped: " << s << "\n";
            return kExitOk;
        }

        if (cmd_reduce->parsed()) {
            if (out_path.empty()) {
                std::cerr << "reduce: --out is required\n";
                return kExitUsage;
            }
            json provenance{{"seed", seed}};
            if (reduce_to == "3sum_indexing" || reduce_to == "ksum_indexing") {
                auto family = sto::read_set_family(reduce_in);
                auto red = reduce_to == "3sum_indexing"
                               ? sto::sd_to_3sumi(family)
                               : sto::ksd_to_k1sumi(family, reduce_k);
                sto::write_instance(out_path, red.instance);
                provenance["source_type"] = "set_family";
                provenance["params"] = {{"k", red.layout.k},
                                        {"value_bits", red.layout.value_bits},
                                        {"id_bits", red.layout.id_bits},
                                        {"total_bits", red.layout.total_bits},
                                        {"max_value", red.layout.max_value}};
            } else if (reduce_to == "2reach") {
                auto family = sto::read_set_family(reduce_in);
                auto red = sto::sd_to_2reach(family);
                sto::write_instance(out_path, red.graph);
                provenance["source_type"] = "set_family";
                provenance["params"] = {{"set_count", red.set_count}};
            } else if (reduce_to == "set_disjointness_from_graph") {
                auto graph = sto::read_digraph(reduce_in);
                auto red = sto::tworeach_to_sd(graph);
                sto::write_instance(out_path, red.family);
                provenance["source_type"] = "digraph";
                provenance["params"] = {{"vertex_count", red.vertex_count}};
            } else if (reduce_to == "hashed_sd" || reduce_to == "hashed_si") {
                auto instance = sto::read_sum_instance(reduce_in);
                auto red = reduce_to == "hashed_sd"
                               ? sto::threesumi_to_sd(instance, reduce_gamma, seed)
                               : sto::threesumi_to_si(instance, reduce_gamma, reduce_delta,
                                                      seed);
                sto::write_instance(out_path, red.shifted);
                provenance["source_type"] = "sum_instance";
                provenance["params"] = {{"gamma", reduce_gamma},
                                        {"R", red.R},
                                        {"Q", red.Q},
                                        {"rounds", red.h2_list.size()}};
                if (reduce_to == "hashed_si") provenance["params"]["delta"] = reduce_delta;
            } else {
                std::cerr << "unknown reduction target: " << reduce_to << "\n";
                return kExitUsage;
            }
            std::ofstream side(out_path + ".prov.json");
            side << provenance.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_fit->parsed()) {
            const double slope = sto::fit_slope_csv(fit_in, fit_x, fit_y);
            if (as_json)
                std::cout << json{{"x", fit_x}, {"y", fit_y}, {"slope", slope}}.dump() << "\n";
            else
                std::cout << slope << "\n";
            return kExitOk;
        }
    } catch (const sto::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << " (required " << e.required_words
                  << ", budget " << e.budget_words << ")\n";
        return kExitBudget;
    } catch (const sto::verification_failure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const sto::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const sto::validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
    (void)as_csv;
    return kExitOk;
}
