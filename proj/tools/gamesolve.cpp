/*
 * Copyright 2026 The rsgames authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rsg/rsg.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rsg::GameError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rsg::GameError("cannot write '" + path + "'");
    out << content;
}

void print_node_set(std::ostream& os, const char* name, const rsg::NodeSet& s) {
    os << name << ':';
    for (rsg::NodeId v : s) os << ' ' << v;
    os << '\n';
}

void print_strategies(std::ostream& os, const rsg::GameSpec& spec) {
    // Strategies come from the rank function of the reach orientation.
    rsg::NodeSet reach_target = spec.objective == rsg::Objective::Reach
                                    ? spec.target
                                    : spec.target.complement(spec.arena.num_nodes());
    rsg::RankTable ranks = rsg::compute_ranks(spec.arena, reach_target);
    rsg::StrategyPair strategies = rsg::extract_strategies(spec.arena, ranks);
    os << "strategy reach:\n";
    for (const auto& [v, w] : strategies.reach_choice) os << v << " -> " << w << '\n';
    os << "strategy safe:\n";
    for (const auto& [v, w] : strategies.safe_choice) os << v << " -> " << w << '\n';
}

int cmd_solve(const std::string& file, const std::string& engine_name,
              std::optional<std::size_t> threshold, bool with_strategy) {
    rsg::GameSpec spec = rsg::parse_arena(read_file(file));
    rsg::Engine engine = rsg::engine_from_string(engine_name);
    std::optional<rsg::MpConfig> cfg;
    if (threshold) cfg = rsg::MpConfig{*threshold};
    rsg::SolveResult result = rsg::solve_via_duality(spec, engine, cfg);
    print_node_set(std::cout, "win_reach", result.win_reach);
    print_node_set(std::cout, "win_safe", result.win_safe);
    if (with_strategy) print_strategies(std::cout, spec);
    return 0;
}

int cmd_generate(std::size_t nodes, std::size_t edges, bool self_loops, bool allow_isolated,
                 std::uint64_t seed, double target_ratio, const std::string& objective,
                 const std::string& out_path) {
    rsg::GenConfig cfg;
    cfg.num_nodes = nodes;
    cfg.num_edges = edges;
    cfg.self_loops = self_loops;
    cfg.isolated_nodes = allow_isolated;
    cfg.seed = rsg::stream_seed(seed, 0);
    rsg::Arena arena = rsg::generate_arena(cfg);

    std::size_t target_size = static_cast<std::size_t>(static_cast<double>(nodes) * target_ratio);
    rsg::Rng target_rng(rsg::stream_seed(seed, 0, 1));
    rsg::NodeSet target = rsg::sample_node_subset(nodes, target_size, target_rng);
    rsg::Objective obj = objective == "safe" ? rsg::Objective::Safe : rsg::Objective::Reach;

    std::string text = "# seed " + std::to_string(seed) + " k 0\n" +
                       rsg::serialize_arena(rsg::GameSpec(std::move(arena), std::move(target), obj));
    write_output(out_path, text);
    return 0;
}

int cmd_bench(const rsg::ExperimentParams& params, const rsg::BatteryOptions& opts,
              const std::string& format, const std::string& out_path) {
    auto records = rsg::run_experiment_battery(params, opts);
    rsg::TableFormat fmt = format == "markdown" ? rsg::TableFormat::Markdown : rsg::TableFormat::Csv;
    write_output(out_path, rsg::emit_table(records, fmt));
    return 0;
}

int cmd_verify(const std::string& file) {
    rsg::GameSpec spec = rsg::parse_arena(read_file(file));
    std::size_t n = spec.arena.num_nodes();

    rsg::NodeSet reach_target =
        spec.objective == rsg::Objective::Reach ? spec.target : spec.target.complement(n);
    rsg::NodeSet expect_reach = rsg::oracle_attractor(spec.arena, reach_target);
    rsg::NodeSet expect_safe = expect_reach.complement(n);
    print_node_set(std::cout, "win_reach", expect_reach);
    print_node_set(std::cout, "win_safe", expect_safe);

    bool ok = true;
    for (rsg::Engine engine : {rsg::Engine::ForwardNaive, rsg::Engine::BackwardNaive,
                               rsg::Engine::BackwardImproved, rsg::Engine::MultiplePerspective}) {
        rsg::SolveResult r = rsg::solve_via_duality(spec, engine);
        bool agree = r.win_reach == expect_reach && r.win_safe == expect_safe;
        ok = ok && agree;
        std::cout << rsg::engine_name(engine) << ": " << (agree ? "agree" : "MISMATCH") << '\n';
    }
    if (n <= 14) {
        bool agree = true;
        for (rsg::NodeId v = 0; v < n; ++v) {
            rsg::Verdict verdict = rsg::oracle_game_tree(spec.arena, reach_target, v);
            if ((verdict == rsg::Verdict::ReachWins) != expect_reach.contains(v)) agree = false;
        }
        ok = ok && agree;
        std::cout << "oracle-game-tree: " << (agree ? "agree" : "MISMATCH") << " (" << n
                  << " starts)\n";
    } else {
        std::cout << "oracle-game-tree: skipped (more than 14 nodes)\n";
    }
    std::cout << "verdict: " << (ok ? "OK" : "MISMATCH") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvers, generators and benchmarks for reachability and safety games on graphs"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve a game from an arena file");
    std::string solve_file, solve_engine = "mp";
    std::optional<std::size_t> solve_threshold;
    bool solve_strategy = false;
    solve->add_option("arena-file", solve_file, "arena file")->required();
    solve->add_option("--engine", solve_engine, "fw, bw, bw-improved or mp")
        ->check(CLI::IsMember({"fw", "bw", "bw-improved", "mp"}));
    solve->add_option("--threshold", solve_threshold, "multiple-perspective switch threshold");
    solve->add_flag("--strategy", solve_strategy, "also print the memoryless strategies");

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a seeded random arena file");
    std::size_t gen_nodes = 0, gen_edges = 0;
    std::uint64_t gen_seed = 0;
    bool gen_self_loops = false, gen_allow_isolated = false;
    double gen_ratio = 0.0;
    std::string gen_objective = "reach", gen_out;
    gen->add_option("--nodes", gen_nodes, "number of nodes")->required();
    gen->add_option("--edges", gen_edges, "expected number of edges")->required();
    gen->add_flag("--self-loops", gen_self_loops, "allow self-loops");
    gen->add_flag("--allow-isolated", gen_allow_isolated, "skip the isolated-node repair");
    gen->add_option("--seed", gen_seed, "rng seed")->required();
    gen->add_option("--target-ratio", gen_ratio, "target size as a fraction of the nodes")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--objective", gen_objective, "reach or safe")
        ->check(CLI::IsMember({"reach", "safe"}));
    gen->add_option("-o,--output", gen_out, "output file ('-' for stdout)")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run a battery of timed experiments");
    rsg::ExperimentParams params;
    rsg::BatteryOptions opts;
    std::optional<std::size_t> bench_threshold;
    std::string bench_format = "csv", bench_out;
    bench->add_option("--nodes-min", params.num_nodes_min)->required();
    bench->add_option("--nodes-max", params.num_nodes_max)->required();
    bench->add_option("--edges-per-node-min", params.avg_edges_per_node_min)->required();
    bench->add_option("--edges-per-node-max", params.avg_edges_per_node_max)->required();
    bench->add_option("--ratio-min", params.target_safe_ratio_min)->required();
    bench->add_option("--ratio-max", params.target_safe_ratio_max)->required();
    bench->add_option("--experiments", params.experiments)->required();
    bench->add_option("--seed", params.seed)->required();
    bench->add_option("--format", bench_format)->check(CLI::IsMember({"csv", "markdown"}));
    bench->add_option("--repeats", opts.repeats, "timed runs per solver; the median is reported");
    bench->add_option("--threshold", bench_threshold, "multiple-perspective switch threshold");
    bench->add_flag("--include-bw-improved", opts.include_backward_improved,
                    "also run and check the improved backward solver");
    bench->add_option("-o,--output", bench_out, "output file ('-' for stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "Check all solvers and oracles against each other");
    std::string verify_file;
    verify->add_option("arena-file", verify_file, "arena file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_file, solve_engine, solve_threshold, solve_strategy);
        if (*gen)
            return cmd_generate(gen_nodes, gen_edges, gen_self_loops, gen_allow_isolated, gen_seed,
                                gen_ratio, gen_objective, gen_out);
        if (*bench) {
            opts.threshold = bench_threshold;
            return cmd_bench(params, opts, bench_format, bench_out);
        }
        if (*verify) return cmd_verify(verify_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
