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

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsg/arena.hpp"
#include "rsg/format.hpp"
#include "rsg/generator.hpp"
#include "rsg/solvers.hpp"

namespace rsg {

/// One benchmark row: arena statistics, wall times for the three benchmarked
/// solvers (monotonic clock), and the multiple-perspective solver's relative
/// savings against each naive baseline.
struct ExperimentRecord {
    std::size_t experiment_label = 0;
    std::size_t total_nodes = 0;
    std::size_t total_edges = 0;
    std::size_t target_nodes = 0;
    std::size_t safety_nodes = 0;
    std::size_t reachability_nodes = 0;
    double fw_time_s = 0.0;
    double bw_time_s = 0.0;
    double mp_time_s = 0.0;
    double saving_wrt_fw_pct = 0.0;
    double saving_wrt_bw_pct = 0.0;
};

/// Relative time saving in percent: (1 - mp/base) * 100. Negative when the
/// multiple-perspective run was slower; never clamped.
inline double compute_saving(double base_time_s, double mp_time_s) {
    if (base_time_s <= 0.0) throw ZeroBase("baseline time must be positive");
    return (1.0 - mp_time_s / base_time_s) * 100.0;
}

struct BatteryOptions {
    /// Timed runs per solver per arena; the record keeps the median.
    std::size_t repeats = 1;
    /// Multiple-perspective threshold; half the node count when unset.
    std::optional<std::size_t> threshold;
    /// Also run the improved backward solver and check its answer (its time
    /// is reported on the debug trace only; the record columns are fixed).
    bool include_backward_improved = false;
};

namespace detail {

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2.0;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Guards compute_saving against a sub-resolution measurement.
inline double at_least_one_tick(double seconds) { return std::max(seconds, 1e-9); }

} // namespace detail

/// Runs the three benchmarked solvers on one arena under the fairness rule:
/// every solver starts from the straight graph and the safety target. The
/// backward solver pays for complementing the target into a reach objective
/// inside its timed region; the multiple-perspective solver pays for building
/// the transpose graph inside its. The three winning sets must agree or the
/// experiment is void (ResultMismatch, with the arena dumped for triage).
inline ExperimentRecord run_single_experiment(std::size_t label, const Arena& arena,
                                              const NodeSet& target_safe,
                                              const BatteryOptions& opts = {}) {
    std::size_t n = arena.num_nodes();
    std::size_t repeats = std::max<std::size_t>(1, opts.repeats);
    MpConfig mp_cfg{opts.threshold ? *opts.threshold : default_mp_threshold(n)};
    GameSpec safe_spec(arena, target_safe, Objective::Safe);

    std::vector<double> fw_times, bw_times, mp_times;
    NodeSet fw_win, bw_win, mp_win;
    for (std::size_t i = 0; i < repeats; ++i) {
        {
            auto t0 = std::chrono::steady_clock::now();
            SolveResult res = solve_forward_naive(safe_spec);
            fw_times.push_back(detail::seconds_since(t0));
            fw_win = std::move(res.win_safe);
        }
        {
            auto t0 = std::chrono::steady_clock::now();
            NodeSet reach_target = target_safe.complement(n);
            GameSpec reach_spec(arena, std::move(reach_target), Objective::Reach);
            SolveResult res = solve_backward_naive(reach_spec);
            bw_times.push_back(detail::seconds_since(t0));
            bw_win = std::move(res.win_safe);
        }
        {
            // Straight half staged off the clock; the ticking region covers
            // the transpose construction plus the solve.
            std::vector<Owner> owners = arena.owners_copy();
            std::vector<NodeSet> succ = arena.succ_copy();
            auto t0 = std::chrono::steady_clock::now();
            Arena rebuilt(std::move(owners), std::move(succ));
            GameSpec mp_spec(std::move(rebuilt), target_safe, Objective::Safe);
            SolveResult res = solve_multiple_perspective(mp_spec, mp_cfg);
            mp_times.push_back(detail::seconds_since(t0));
            mp_win = std::move(res.win_safe);
        }
    }

    bool agree = fw_win == bw_win && bw_win == mp_win;
    if (agree && opts.include_backward_improved) {
        auto t0 = std::chrono::steady_clock::now();
        SolveResult res = solve_via_duality(safe_spec, Engine::BackwardImproved);
        double t = detail::seconds_since(t0);
        trace_iteration("bench/bw-improved", label, "time_us",
                        static_cast<std::size_t>(t * 1e6));
        agree = res.win_safe == fw_win;
    }
    if (!agree) {
        std::string dump = "mismatch-experiment-" + std::to_string(label) + ".arena";
        std::ofstream(dump) << serialize_arena(safe_spec);
        throw ResultMismatch("solvers disagree on experiment " + std::to_string(label) +
                             "; arena dumped to " + dump);
    }

    ExperimentRecord rec;
    rec.experiment_label = label;
    rec.total_nodes = n;
    rec.total_edges = arena.num_edges();
    rec.target_nodes = target_safe.size();
    rec.safety_nodes = arena.nodes_of(Owner::Safety).size();
    rec.reachability_nodes = arena.nodes_of(Owner::Reachability).size();
    rec.fw_time_s = detail::at_least_one_tick(detail::median(fw_times));
    rec.bw_time_s = detail::at_least_one_tick(detail::median(bw_times));
    rec.mp_time_s = detail::at_least_one_tick(detail::median(mp_times));
    rec.saving_wrt_fw_pct = compute_saving(rec.fw_time_s, rec.mp_time_s);
    rec.saving_wrt_bw_pct = compute_saving(rec.bw_time_s, rec.mp_time_s);
    return rec;
}

/// Generates and runs one arena per experiment index. Arena generation and
/// target sampling happen off the clock; see run_single_experiment for what
/// each solver's region includes.
inline std::vector<ExperimentRecord> run_experiment_battery(const ExperimentParams& params,
                                                            const BatteryOptions& opts = {}) {
    std::vector<ExperimentRecord> records;
    records.reserve(params.experiments);
    for (std::size_t k = 0; k < params.experiments; ++k) {
        SampledExperiment sampled = sample_experiment(params, k);
        Arena arena = generate_arena(sampled.config);
        Rng target_rng(sampled.target_seed);
        NodeSet target = sample_node_subset(arena.num_nodes(), sampled.target_safe_size, target_rng);
        records.push_back(run_single_experiment(k + 1, arena, target, opts));
    }
    return records;
}

enum class TableFormat : std::uint8_t { Csv, Markdown };

inline constexpr std::string_view kTableHeader =
    "experiment_label,total_nodes,total_edges,target_nodes,safety_nodes,reachability_nodes,"
    "fw_time_s,bw_time_s,mp_time_s,saving_wrt_fw_pct,saving_wrt_bw_pct";

/// Renders records as CSV or a markdown table. Times carry 4 decimal places,
/// percentages 2.
inline std::string emit_table(std::span<const ExperimentRecord> records, TableFormat format) {
    auto fields = [](const ExperimentRecord& r) {
        char buf[64];
        std::vector<std::string> out;
        out.push_back(std::to_string(r.experiment_label));
        out.push_back(std::to_string(r.total_nodes));
        out.push_back(std::to_string(r.total_edges));
        out.push_back(std::to_string(r.target_nodes));
        out.push_back(std::to_string(r.safety_nodes));
        out.push_back(std::to_string(r.reachability_nodes));
        for (double t : {r.fw_time_s, r.bw_time_s, r.mp_time_s}) {
            std::snprintf(buf, sizeof buf, "%.4f", t);
            out.emplace_back(buf);
        }
        for (double p : {r.saving_wrt_fw_pct, r.saving_wrt_bw_pct}) {
            std::snprintf(buf, sizeof buf, "%.2f", p);
            out.emplace_back(buf);
        }
        return out;
    };

    std::string out;
    if (format == TableFormat::Csv) {
        out += kTableHeader;
        out += '\n';
        for (const auto& r : records) {
            auto fs = fields(r);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (i) out += ',';
                out += fs[i];
            }
            out += '\n';
        }
        return out;
    }

    std::vector<std::string> headers;
    {
        std::string_view rest = kTableHeader;
        while (!rest.empty()) {
            std::size_t comma = rest.find(',');
            headers.emplace_back(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    auto row = [&out](const std::vector<std::string>& cells) {
        out += '|';
        for (const auto& c : cells) {
            out += ' ';
            out += c;
            out += " |";
        }
        out += '\n';
    };
    row(headers);
    out += '|';
    for (std::size_t i = 0; i < headers.size(); ++i) out += " --- |";
    out += '\n';
    for (const auto& r : records) row(fields(r));
    return out;
}

/// Parses a CSV produced by emit_table back into records (at the printed
/// precision).
inline std::vector<ExperimentRecord> parse_table_csv(std::string_view text) {
    std::vector<ExperimentRecord> records;
    std::size_t pos = 0, line_no = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kTableHeader) throw SyntaxError(line_no, "unexpected CSV header");
            saw_header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::string_view rest = line;
        while (true) {
            std::size_t comma = rest.find(',');
            cells.emplace_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (cells.size() != 11) throw SyntaxError(line_no, "expected 11 CSV fields");
        ExperimentRecord r;
        try {
            r.experiment_label = std::stoull(cells[0]);
            r.total_nodes = std::stoull(cells[1]);
            r.total_edges = std::stoull(cells[2]);
            r.target_nodes = std::stoull(cells[3]);
            r.safety_nodes = std::stoull(cells[4]);
            r.reachability_nodes = std::stoull(cells[5]);
            r.fw_time_s = std::stod(cells[6]);
            r.bw_time_s = std::stod(cells[7]);
            r.mp_time_s = std::stod(cells[8]);
            r.saving_wrt_fw_pct = std::stod(cells[9]);
            r.saving_wrt_bw_pct = std::stod(cells[10]);
        } catch (const std::exception&) {
            throw SyntaxError(line_no, "malformed CSV field");
        }
        records.push_back(r);
    }
    if (!saw_header) throw SyntaxError(1, "missing CSV header");
    return records;
}

} // namespace rsg
