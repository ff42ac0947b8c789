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
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rsg/arena.hpp"

namespace rsg {

/// Attractor stage of a node: the round at which it became attracted, or
/// infinity if it never does. Infinity is a distinct state, not a sentinel
/// integer, so comparisons cannot overflow or wrap.
class Rank {
public:
    static Rank finite(std::uint32_t stage) { return Rank(stage); }
    static Rank infinite() { return Rank(); }

    bool is_finite() const noexcept { return stage_.has_value(); }
    std::uint32_t stage() const { return stage_.value(); }

    /// Finite ranks order by stage; infinity is above every finite rank.
    friend bool operator<(const Rank& a, const Rank& b) noexcept {
        if (!a.stage_) return false;              // inf < x never
        if (!b.stage_) return true;               // finite < inf
        return *a.stage_ < *b.stage_;
    }
    friend bool operator==(const Rank& a, const Rank& b) noexcept { return a.stage_ == b.stage_; }

private:
    Rank() = default;
    explicit Rank(std::uint32_t stage) : stage_(stage) {}
    std::optional<std::uint32_t> stage_;
};

using RankTable = std::vector<Rank>;

/// Memoryless choice functions extracted from a rank table, one per player.
/// reach_choice covers reachability nodes inside the attractor but outside
/// the target and always steps down in rank; safe_choice covers safety nodes
/// outside the attractor (with at least one move) and always stays at rank
/// infinity.
struct StrategyPair {
    std::map<NodeId, NodeId> reach_choice;
    std::map<NodeId, NodeId> safe_choice;
};

/// Stage at which each node enters the attractor of `target` for the
/// reachability player; infinity outside. The finite-rank set equals the
/// reach winning region.
inline RankTable compute_ranks(const Arena& arena, const NodeSet& target) {
    std::size_t n = arena.num_nodes();
    RankTable ranks(n, Rank::infinite());
    NodeSet attr = target;
    for (NodeId v : target) {
        if (v >= n) throw NodeOutOfRange("target node out of range");
        ranks[v] = Rank::finite(0);
    }
    for (std::uint32_t stage = 1;; ++stage) {
        NodeSet added;
        for (NodeId v = 0; v < n; ++v) {
            if (attr.contains(v)) continue;
            const NodeSet& out = arena.succ(v);
            bool in;
            if (arena.owner(v) == Owner::Reachability) {
                in = out.intersects(attr);
            } else {
                in = !out.empty() && out.is_subset_of(attr);
            }
            if (in) {
                added.insert(v);
                ranks[v] = Rank::finite(stage);
            }
        }
        if (added.empty()) return ranks;
        attr |= added;
    }
}

/// Extracts the two memoryless strategies from a rank table. Ties among
/// successors of equal rank break toward the smallest node id, so extraction
/// is deterministic.
inline StrategyPair extract_strategies(const Arena& arena, const RankTable& ranks) {
    StrategyPair out;
    std::size_t n = arena.num_nodes();
    for (NodeId v = 0; v < n; ++v) {
        const Rank& rv = ranks[v];
        if (arena.owner(v) == Owner::Reachability) {
            if (!rv.is_finite() || rv.stage() == 0) continue;
            // pick the successor of minimal rank; iteration order breaks ties
            std::optional<NodeId> best;
            for (NodeId w : arena.succ(v)) {
                if (!best || ranks[w] < ranks[*best]) best = w;
            }
            if (!best || !(ranks[*best] < rv))
                throw MissingWitness("no rank-decreasing successor for node " + std::to_string(v));
            out.reach_choice.emplace(v, *best);
        } else {
            if (rv.is_finite() || arena.succ(v).empty()) continue;
            std::optional<NodeId> pick;
            for (NodeId w : arena.succ(v)) {
                if (!ranks[w].is_finite()) { pick = w; break; }
            }
            if (!pick)
                throw MissingWitness("no infinite-rank successor for node " + std::to_string(v));
            out.safe_choice.emplace(v, *pick);
        }
    }
    return out;
}

enum class PlayStatus : std::uint8_t {
    ReachedTarget,  ///< the token entered the target set
    Halted,         ///< the node to move had no successors, outside the target
    Undecided,      ///< max_steps elapsed without either of the above
};

struct PlayOutcome {
    PlayStatus status = PlayStatus::Undecided;
    std::vector<NodeId> trace;           ///< visited positions, starting node first
    std::size_t steps_to_target = 0;     ///< valid when status == ReachedTarget
};

/// A move choice for the adversary's nodes: a successor, or nullopt to halt
/// (legal only where no successor exists).
using AdversaryPolicy = std::function<std::optional<NodeId>(NodeId)>;

/// Plays out one game: the protagonist's side follows the strategy pair
/// (falling back to the smallest successor off the maps' domains), the
/// adversary_side follows the supplied policy. The play ends on target
/// entry, on a dead end, or after max_steps moves.
inline PlayOutcome simulate_play(const Arena& arena, const NodeSet& target, NodeId start,
                                 const StrategyPair& protagonist, Owner adversary_side,
                                 const AdversaryPolicy& adversary, std::size_t max_steps) {
    if (start >= arena.num_nodes()) throw NodeOutOfRange("start node out of range");
    PlayOutcome out;
    NodeId v = start;
    out.trace.push_back(v);
    for (std::size_t step = 0;; ++step) {
        if (target.contains(v)) {
            out.status = PlayStatus::ReachedTarget;
            out.steps_to_target = step;
            return out;
        }
        if (step == max_steps) {
            out.status = PlayStatus::Undecided;
            return out;
        }
        const NodeSet& moves = arena.succ(v);
        std::optional<NodeId> next;
        if (arena.owner(v) == adversary_side) {
            next = adversary(v);
            if (!next && !moves.empty())
                throw IllegalMove("adversary halted at node " + std::to_string(v) +
                                  " which has successors");
        } else {
            const auto& choice = arena.owner(v) == Owner::Reachability ? protagonist.reach_choice
                                                                       : protagonist.safe_choice;
            auto it = choice.find(v);
            if (it != choice.end()) next = it->second;
            else if (!moves.empty()) next = *moves.begin();
        }
        if (!next) {
            out.status = PlayStatus::Halted;
            return out;
        }
        if (!moves.contains(*next))
            throw IllegalMove("policy moved " + std::to_string(v) + " -> " + std::to_string(*next) +
                              " which is not an edge");
        v = *next;
        out.trace.push_back(v);
    }
}

} // namespace rsg
