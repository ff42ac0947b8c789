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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "rsg/arena.hpp"

namespace rsg {

/// Work counters filled in by the solvers, so the cost claims behind each
/// optimization are testable rather than folklore.
struct InstrumentationCounters {
    /// Transpose edges walked by the frontier-based backward reach force.
    std::uint64_t edges_examined_reach_backward = 0;
    /// Successor-subset tests performed by the safety force checks.
    std::uint64_t edges_examined_safe_check = 0;
    /// Nodes examined by per-iteration sweeps (naive scans, forward steps).
    std::uint64_t nodes_visited = 0;
    /// Direction changes in a multiple-perspective run; at most one, since
    /// the winning set only shrinks.
    std::uint64_t perspective_switches = 0;
};

/// Winning partition plus run statistics. win_reach and win_safe partition
/// the node set: the determinacy theorem guarantees every node is won by
/// exactly one player.
struct SolveResult {
    NodeSet win_reach;
    NodeSet win_safe;
    std::size_t iterations = 0;
    InstrumentationCounters counters;
};

/// Multiple-perspective tuning: iterate forward while |Win| <= threshold,
/// backward otherwise.
struct MpConfig {
    std::size_t threshold = 0;
};

inline std::size_t default_mp_threshold(std::size_t num_nodes) { return num_nodes / 2; }

// Set GAMES_LOG=debug for per-iteration set-size traces on stderr.
inline bool debug_log_enabled() {
    static const bool enabled = [] {
        const char* v = std::getenv("GAMES_LOG");
        return v != nullptr && std::string_view(v) == "debug";
    }();
    return enabled;
}

inline void trace_iteration(const char* solver, std::size_t iter, const char* set_name, std::size_t size) {
    if (debug_log_enabled())
        std::fprintf(stderr, "[%s] iteration %zu |%s|=%zu\n", solver, iter, set_name, size);
}

namespace detail {

inline void check_in_range(const NodeSet& x, std::size_t n, const char* what) {
    for (NodeId v : x)
        if (v >= n) throw NodeOutOfRange(std::string(what) + " contains node " + std::to_string(v) +
                                         " out of range");
}

} // namespace detail

/// One-step force operator for the reachability player, evaluated literally
/// from its definition over the straight graph: reachability nodes with some
/// successor in x, plus safety nodes whose successors all lie in x. This is
/// the in-codebase semantic reference; the fast forces below must agree with
/// it on every input.
///
/// A safety node with no successors is never forced: a halted play reaches
/// nothing, so dead ends belong to the safety player whatever their owner.
inline NodeSet force_r(const Arena& arena, const NodeSet& x) {
    std::size_t n = arena.num_nodes();
    detail::check_in_range(x, n, "force set");
    NodeSet out;
    for (NodeId v = 0; v < n; ++v) {
        const NodeSet& s = arena.succ(v);
        if (arena.owner(v) == Owner::Reachability) {
            if (s.intersects(x)) out.insert(v);
        } else {
            if (!s.empty() && s.is_subset_of(x)) out.insert(v);
        }
    }
    return out;
}

/// Unoptimized reach force: double loop over q x V_R, testing every
/// reachability node against every target member. A node joins the result
/// iff it has an edge into q. nodes_visited counts one per inner-loop test.
inline NodeSet naive_force_reach(const Arena& arena, const NodeSet& q,
                                 InstrumentationCounters* counters = nullptr) {
    detail::check_in_range(q, arena.num_nodes(), "target set");
    NodeSet f;
    const NodeSet& vr = arena.nodes_of(Owner::Reachability);
    for (NodeId u : q) {
        for (NodeId v : vr) {
            if (counters) ++counters->nodes_visited;
            if (arena.succ(v).contains(u)) f.insert(v);
        }
    }
    return f;
}

/// Frontier-based reach force: walks only the transpose edges leaving the
/// current set c and keeps the reachability-owned endpoints. Each transpose
/// edge walked bumps edges_examined_reach_backward.
inline NodeSet force_reach(const Arena& arena, const NodeSet& c,
                           InstrumentationCounters* counters = nullptr) {
    NodeSet f;
    const NodeSet& vr = arena.nodes_of(Owner::Reachability);
    for (NodeId u : c) {
        const NodeSet& in = arena.pred(u);
        if (counters) counters->edges_examined_reach_backward += in.size();
        f |= in & vr;
    }
    return f;
}

/// Hybrid safety force: candidates are found through the transpose graph
/// (safety predecessors of q), then confirmed with a successor-subset test
/// on the straight graph. Candidates necessarily have an edge into q, so
/// dead ends never appear here. One subset test per candidate encounter.
inline NodeSet force_safe(const Arena& arena, const NodeSet& q,
                          InstrumentationCounters* counters = nullptr) {
    NodeSet f;
    const NodeSet& vs = arena.nodes_of(Owner::Safety);
    for (NodeId u : q) {
        NodeSet candidates = arena.pred(u) & vs;
        for (NodeId v : candidates) {
            if (counters) ++counters->edges_examined_safe_check;
            if (arena.succ(v).is_subset_of(q)) f.insert(v);
        }
    }
    return f;
}

/// Safety force over the losing set with the processed-list memo: a safety
/// predecessor reached from several losing nodes is subset-tested once.
/// Disabling the memo (debug mode) re-tests repeat candidates; the result
/// set is identical, only the subset-test counter grows.
inline NodeSet force_safe_backward(const Arena& arena, const NodeSet& lose,
                                   InstrumentationCounters* counters = nullptr,
                                   bool use_processed_list = true) {
    NodeSet f;
    NodeSet processed;
    const NodeSet& vs = arena.nodes_of(Owner::Safety);
    for (NodeId u : lose) {
        NodeSet candidates = arena.pred(u) & vs;
        for (NodeId v : candidates) {
            if (lose.contains(v)) continue;
            if (use_processed_list && processed.contains(v)) continue;
            if (counters) ++counters->edges_examined_safe_check;
            if (arena.succ(v).is_subset_of(lose)) f.insert(v);
            if (use_processed_list) processed.insert(v);
        }
    }
    return f;
}

/// One forward sweep over the candidate winning set, from the safety
/// player's point of view: keeps safety nodes that can stay in win (or have
/// nowhere to go at all) and reachability nodes that cannot leave it. The
/// caller intersects win with the result.
inline NodeSet step_forward(const Arena& arena, const NodeSet& win,
                            InstrumentationCounters* counters = nullptr) {
    NodeSet f;
    for (NodeId u : win) {
        if (counters) ++counters->nodes_visited;
        const NodeSet& out = arena.succ(u);
        if (arena.owner(u) == Owner::Safety) {
            if (out.empty() || out.intersects(win)) f.insert(u);
        } else {
            if (out.is_subset_of(win)) f.insert(u);
        }
    }
    return f;
}

/// One backward sweep from the reachability player's point of view: the
/// reach component walks transpose edges out of last_force_reach only, the
/// safety component is force_safe_backward over the whole losing set.
/// Requires last_force_reach to be a subset of lose. The caller moves the
/// result from win to lose.
inline NodeSet step_backward(const Arena& arena, const NodeSet& lose, const NodeSet& last_force_reach,
                             InstrumentationCounters* counters = nullptr) {
    NodeSet f = force_reach(arena, last_force_reach, counters);
    f |= force_safe_backward(arena, lose, counters);
    return f;
}

namespace detail {

// The theory bounds every fixpoint here by |V| stages; blowing through the
// valve means the implementation is broken, not the input.
inline void iteration_valve(std::size_t iterations, std::size_t num_nodes, const char* solver) {
    if (iterations >= num_nodes + 2)
        throw InternalError(std::string(solver) + " exceeded " + std::to_string(num_nodes + 2) +
                            " iterations");
}

} // namespace detail

/// Purely forward safety solver: greatest fixpoint of Win -> Win ∩ F(Win),
/// where F is one forward sweep. Win only shrinks, so comparing cardinalities
/// detects the fixpoint exactly.
inline SolveResult solve_forward_naive(const GameSpec& spec) {
    if (spec.objective != Objective::Safe)
        throw ObjectiveMismatch("forward solver is native to safety games; use solve_via_duality for reach");
    const Arena& arena = spec.arena;
    std::size_t n = arena.num_nodes();
    SolveResult r;
    NodeSet win = spec.target;
    for (;;) {
        detail::iteration_valve(r.iterations, n, "solve_forward_naive");
        ++r.iterations;
        NodeSet f = step_forward(arena, win, &r.counters);
        NodeSet next = win & f;
        trace_iteration("forward", r.iterations, "Win", next.size());
        if (next.size() == win.size()) break;
        win = std::move(next);
    }
    r.win_safe = std::move(win);
    r.win_reach = r.win_safe.complement(n);
    return r;
}

/// Purely backward reach solver without any of the optimizations: grows the
/// attractor with the unoptimized reach force (full q x V_R rescans) and a
/// full safety sweep every round.
inline SolveResult solve_backward_naive(const GameSpec& spec) {
    if (spec.objective != Objective::Reach)
        throw ObjectiveMismatch("backward solver is native to reach games; use solve_via_duality for safety");
    const Arena& arena = spec.arena;
    std::size_t n = arena.num_nodes();
    SolveResult r;
    NodeSet q = spec.target;
    for (;;) {
        detail::iteration_valve(r.iterations, n, "solve_backward_naive");
        ++r.iterations;
        NodeSet f = naive_force_reach(arena, q, &r.counters);
        for (NodeId v : arena.nodes_of(Owner::Safety)) {
            ++r.counters.nodes_visited;
            ++r.counters.edges_examined_safe_check;
            const NodeSet& out = arena.succ(v);
            if (!out.empty() && out.is_subset_of(q)) f.insert(v);
        }
        NodeSet grown = q | f;
        trace_iteration("backward", r.iterations, "Q", grown.size());
        if (grown.size() == q.size()) break;
        q = std::move(grown);
    }
    r.win_reach = std::move(q);
    r.win_safe = r.win_reach.complement(n);
    return r;
}

/// Backward reach solver with the transpose-graph and current-set
/// optimizations. The frontier passed to force_reach is the set of nodes
/// added in the previous round, so every transpose edge is walked at most
/// once over the whole run: edges_examined_reach_backward <= |E|.
inline SolveResult solve_backward_improved(const GameSpec& spec) {
    if (spec.objective != Objective::Reach)
        throw ObjectiveMismatch("backward solver is native to reach games; use solve_via_duality for safety");
    const Arena& arena = spec.arena;
    std::size_t n = arena.num_nodes();
    SolveResult r;
    NodeSet q = spec.target;
    NodeSet current = spec.target;
    for (;;) {
        detail::iteration_valve(r.iterations, n, "solve_backward_improved");
        ++r.iterations;
        NodeSet f = force_reach(arena, current, &r.counters);
        f |= force_safe(arena, q, &r.counters);
        NodeSet grown = q | f;
        trace_iteration("backward-improved", r.iterations, "Q", grown.size());
        if (grown.size() == q.size()) break;
        current = grown - q;
        q = std::move(grown);
    }
    r.win_reach = std::move(q);
    r.win_safe = r.win_reach.complement(n);
    return r;
}

/// The threshold-switched solver: starts from the safety player's candidate
/// winning set and, each iteration, either shrinks Win with a forward sweep
/// (|Win| <= threshold) or grows Lose with a frontier backward sweep. Win
/// never grows, so the point of view switches at most once per run.
inline SolveResult solve_multiple_perspective(const GameSpec& spec, const MpConfig& cfg) {
    if (spec.objective != Objective::Safe)
        throw ObjectiveMismatch("multiple-perspective solver starts from the safety side; "
                                "use solve_via_duality for reach");
    const Arena& arena = spec.arena;
    std::size_t n = arena.num_nodes();
    if (cfg.threshold > n)
        throw ConfigInvalid("threshold " + std::to_string(cfg.threshold) + " exceeds node count " +
                            std::to_string(n));
    SolveResult r;
    NodeSet win = spec.target;
    NodeSet lose = win.complement(n);
    NodeSet last_force_reach = lose;
    enum class Dir { Unset, Forward, Backward };
    Dir last = Dir::Unset;
    for (;;) {
        detail::iteration_valve(r.iterations, n, "solve_multiple_perspective");
        ++r.iterations;
        std::size_t win_before = win.size();
        if (win.size() <= cfg.threshold) {
            if (last == Dir::Backward) ++r.counters.perspective_switches;
            last = Dir::Forward;
            NodeSet f = step_forward(arena, win, &r.counters);
            NodeSet removed = win - f;
            win &= f;
            lose |= removed;
            trace_iteration("mp/forward", r.iterations, "Win", win.size());
        } else {
            if (last == Dir::Forward) ++r.counters.perspective_switches;
            last = Dir::Backward;
            NodeSet f = step_backward(arena, lose, last_force_reach, &r.counters);
            NodeSet newly_lost = f - lose;
            win -= f;
            lose |= f;
            last_force_reach = std::move(newly_lost);
            trace_iteration("mp/backward", r.iterations, "Win", win.size());
        }
        if (win.size() == win_before) break;
    }
    r.win_safe = std::move(win);
    r.win_reach = r.win_safe.complement(n);
    return r;
}

inline SolveResult solve_multiple_perspective(const GameSpec& spec) {
    return solve_multiple_perspective(spec, MpConfig{default_mp_threshold(spec.arena.num_nodes())});
}

enum class Engine : std::uint8_t { ForwardNaive, BackwardNaive, BackwardImproved, MultiplePerspective };

inline Engine engine_from_string(std::string_view name) {
    if (name == "fw") return Engine::ForwardNaive;
    if (name == "bw") return Engine::BackwardNaive;
    if (name == "bw-improved") return Engine::BackwardImproved;
    if (name == "mp") return Engine::MultiplePerspective;
    throw UnknownEngine("unknown engine '" + std::string(name) + "' (expected fw, bw, bw-improved, mp)");
}

inline const char* engine_name(Engine e) {
    switch (e) {
        case Engine::ForwardNaive: return "fw";
        case Engine::BackwardNaive: return "bw";
        case Engine::BackwardImproved: return "bw-improved";
        case Engine::MultiplePerspective: return "mp";
    }
    return "?";
}

inline Objective native_objective(Engine e) {
    return (e == Engine::ForwardNaive || e == Engine::MultiplePerspective) ? Objective::Safe
                                                                           : Objective::Reach;
}

/// Solves spec with any engine, routing through the reachability/safety
/// duality when the engine's native orientation differs: the flipped
/// objective on the complemented target describes the same game with the
/// players' roles exchanged, so the winning partition carries over as-is.
inline SolveResult solve_via_duality(const GameSpec& spec, Engine engine,
                                     std::optional<MpConfig> cfg = std::nullopt) {
    auto run_native = [&](const GameSpec& s) -> SolveResult {
        switch (engine) {
            case Engine::ForwardNaive: return solve_forward_naive(s);
            case Engine::BackwardNaive: return solve_backward_naive(s);
            case Engine::BackwardImproved: return solve_backward_improved(s);
            case Engine::MultiplePerspective:
                return cfg ? solve_multiple_perspective(s, *cfg) : solve_multiple_perspective(s);
        }
        throw UnknownEngine("invalid engine id");
    };
    if (spec.objective == native_objective(engine)) return run_native(spec);
    GameSpec dual(spec.arena, spec.target.complement(spec.arena.num_nodes()),
                  spec.objective == Objective::Safe ? Objective::Reach : Objective::Safe);
    return run_native(dual);
}

} // namespace rsg
