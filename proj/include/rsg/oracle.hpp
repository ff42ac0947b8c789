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
#include <vector>

#include "rsg/arena.hpp"

namespace rsg {

// Slow, definition-literal solvers. These are the ground truth the fast
// solvers are tested against, so they deliberately share no code with them:
// no transpose adjacency, no frontier, no early exit.

/// Attractor of `target` for the reachability player, computed by
/// re-evaluating the one-step recurrence over every node at every stage
/// until the sequence stops growing.
///
/// A node with no successors is never attracted regardless of owner: a
/// reachability node has no move into the target, and a halted play never
/// reaches anything, so the safety side wins every dead end.
inline NodeSet oracle_attractor(const Arena& arena, const NodeSet& target) {
    std::size_t n = arena.num_nodes();
    NodeSet attr = target;
    for (;;) {
        NodeSet next = attr;
        for (NodeId v = 0; v < n; ++v) {
            const NodeSet& out = arena.succ(v);
            if (arena.owner(v) == Owner::Reachability) {
                if (out.intersects(attr)) next.insert(v);
            } else {
                if (!out.empty() && out.is_subset_of(attr)) next.insert(v);
            }
        }
        if (next == attr) return attr;
        attr = next;
    }
}

enum class Verdict : std::uint8_t { ReachWins, SafeWins };

/// Second, independent oracle: bounded game-tree search. The reachability
/// player wins from `start` iff it can force the target within |V| steps;
/// the |V| horizon is sound because attractor stages are bounded by |V| and
/// strategies are memoryless.
///
/// Exponential; refuses arenas with more than 14 nodes.
inline Verdict oracle_game_tree(const Arena& arena, const NodeSet& target, NodeId start) {
    std::size_t n = arena.num_nodes();
    if (n > 14) throw TooLarge("game-tree oracle is limited to 14 nodes");
    if (start >= n) throw NodeOutOfRange("start node out of range");

    // memo[v][d]: can the reachability player force the target from v in <= d
    // steps? -1 unknown, else 0/1.
    std::vector<std::vector<signed char>> memo(n, std::vector<signed char>(n + 1, -1));

    auto search = [&](auto&& self, NodeId v, std::size_t depth) -> bool {
        if (target.contains(v)) return true;
        if (depth == 0) return false;
        signed char& slot = memo[v][depth];
        if (slot != -1) return slot != 0;
        const NodeSet& out = arena.succ(v);
        bool won;
        if (out.empty()) {
            won = false; // play halts outside the target
        } else if (arena.owner(v) == Owner::Reachability) {
            won = false;
            for (NodeId w : out)
                if (self(self, w, depth - 1)) { won = true; break; }
        } else {
            won = true;
            for (NodeId w : out)
                if (!self(self, w, depth - 1)) { won = false; break; }
        }
        slot = won ? 1 : 0;
        return won;
    };

    return search(search, start, n) ? Verdict::ReachWins : Verdict::SafeWins;
}

} // namespace rsg
