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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "rsg/arena.hpp"
#include "rsg/random.hpp"

namespace rsg {

/// Random-arena parameters. num_edges is the expected edge count: every
/// admissible ordered pair receives an edge independently with probability
/// num_edges / #admissible-pairs. isolated_nodes=false runs the repair pass
/// afterwards.
struct GenConfig {
    std::size_t num_nodes = 0;
    std::size_t num_edges = 0;
    bool self_loops = false;
    bool isolated_nodes = true;
    std::uint64_t seed = 0;
};

/// Ranges an experiment battery samples from: node count in [a, b], average
/// out-degree in [c, d), safety-target ratio in [e, f).
struct ExperimentParams {
    std::size_t num_nodes_min = 1;
    std::size_t num_nodes_max = 1;
    double avg_edges_per_node_min = 0.0;
    double avg_edges_per_node_max = 0.0;
    double target_safe_ratio_min = 0.0;
    double target_safe_ratio_max = 0.0;
    std::size_t experiments = 0;
    std::uint64_t seed = 0;
};

/// Adds one edge touching every fully isolated node (empty adjacency row AND
/// column): draw a partner j != i uniformly, flip a fair coin for the edge's
/// direction, rescan until no isolated node remains. Each pass strictly
/// shrinks the isolated set, so this terminates. Works on the straight
/// adjacency in place; templated on the rng so tests can stub the draws.
template <class AnyRng>
void repair_isolated(std::vector<NodeSet>& succ, AnyRng& rng) {
    std::size_t n = succ.size();
    if (n < 2) return;
    auto has_incoming = [&](NodeId i) {
        for (NodeId u = 0; u < n; ++u)
            if (succ[u].contains(i)) return true;
        return false;
    };
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (NodeId i = 0; i < n; ++i) {
            if (!succ[i].empty() || has_incoming(i)) continue;
            auto j = static_cast<NodeId>(rng.rand_int(0, n - 2));
            if (j >= i) ++j; // skip i itself
            if (rng.coin()) succ[i].insert(j);
            else succ[j].insert(i);
            dirty = true;
        }
    }
}

/// Generates a seeded random arena: owners are a shuffled near-even split
/// (the safety player gets the extra node when n is odd), then each
/// admissible ordered pair is drawn independently. Deterministic per seed.
inline Arena generate_arena(const GenConfig& cfg) {
    std::size_t n = cfg.num_nodes;
    if (n < 1) throw ConfigInvalid("num_nodes must be at least 1");
    std::size_t admissible = cfg.self_loops ? n * n : n * (n - 1);
    if (cfg.num_edges > admissible)
        throw ConfigInvalid("num_edges " + std::to_string(cfg.num_edges) + " exceeds the " +
                            std::to_string(admissible) + " admissible pairs");
    if (!cfg.isolated_nodes && n == 1)
        throw ConfigInvalid("a single node cannot be de-isolated without a self-loop");

    Rng rng(cfg.seed);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t i = n; i > 1; --i) { // Fisher-Yates
        std::size_t j = rng.rand_int(0, i - 1);
        std::swap(order[i - 1], order[j]);
    }
    std::vector<Owner> owners(n, Owner::Reachability);
    std::size_t safety_count = (n + 1) / 2;
    for (std::size_t i = 0; i < safety_count; ++i) owners[order[i]] = Owner::Safety;

    double p = admissible == 0 ? 0.0 : static_cast<double>(cfg.num_edges) / static_cast<double>(admissible);
    std::vector<NodeSet> succ(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i == j && !cfg.self_loops) continue;
            if (rng.bernoulli(p)) succ[i].insert(j);
        }
    }

    if (!cfg.isolated_nodes) repair_isolated(succ, rng);
    return Arena(std::move(owners), std::move(succ));
}

/// Uniform random subset of {0..n-1} with exactly `size` members.
inline NodeSet sample_node_subset(std::size_t n, std::size_t size, Rng& rng) {
    if (size > n) throw ConfigInvalid("subset larger than the universe");
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    NodeSet out;
    for (std::size_t i = 0; i < size; ++i) { // partial Fisher-Yates
        std::size_t j = rng.rand_int(i, n - 1);
        std::swap(pool[i], pool[j]);
        out.insert(pool[i]);
    }
    return out;
}

/// One sampled battery row: the arena configuration plus how large the
/// safety target set should be and the seed its members are drawn from.
struct SampledExperiment {
    GenConfig config;
    std::size_t target_safe_size = 0;
    std::uint64_t target_seed = 0;
};

namespace detail {
// Per-row stream salts: parameter draws, arena edges, target members.
inline constexpr std::uint64_t kSampleSalt = 0x73616d706c65ULL;
inline constexpr std::uint64_t kArenaSalt = 0x6172656e61ULL;
inline constexpr std::uint64_t kTargetSalt = 0x746172676574ULL;
} // namespace detail

/// Samples row k of a battery. All draws derive from (params.seed, k), so a
/// single row can be regenerated without replaying the rows before it.
/// Battery arenas allow self-loops (the edge draw covers the full n x n
/// matrix) and run the isolated-node repair.
inline SampledExperiment sample_experiment(const ExperimentParams& params, std::size_t k) {
    if (k >= params.experiments) throw ConfigInvalid("experiment index out of range");
    if (params.num_nodes_min > params.num_nodes_max ||
        params.avg_edges_per_node_min > params.avg_edges_per_node_max ||
        params.target_safe_ratio_min > params.target_safe_ratio_max)
        throw ConfigInvalid("min exceeds max in experiment ranges");
    if (params.target_safe_ratio_min < 0.0 || params.target_safe_ratio_max > 1.0)
        throw ConfigInvalid("target ratio outside [0, 1]");

    Rng rng(stream_seed(params.seed, k, detail::kSampleSalt));
    SampledExperiment out;
    std::size_t n = rng.rand_int(params.num_nodes_min, params.num_nodes_max);
    double avg_edges = rng.rand_float(params.avg_edges_per_node_min, params.avg_edges_per_node_max);
    double ratio = rng.rand_float(params.target_safe_ratio_min, params.target_safe_ratio_max);
    out.config.num_nodes = n;
    // expected edges, capped at the number of pairs (edge probability one)
    out.config.num_edges = std::min(
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * avg_edges)), n * n);
    out.config.self_loops = true;
    out.config.isolated_nodes = false;
    out.config.seed = stream_seed(params.seed, k, detail::kArenaSalt);
    out.target_safe_size = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio));
    out.target_seed = stream_seed(params.seed, k, detail::kTargetSalt);
    return out;
}

} // namespace rsg
