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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rsg/errors.hpp"

namespace rsg {

/// Node identifiers are dense indices 0..n-1 within an arena.
using NodeId = std::uint32_t;

/// Which player controls a node. The reachability player tries to drive the
/// token into the target set, the safety player tries to keep it out forever.
enum class Owner : std::uint8_t { Safety, Reachability };

enum class Objective : std::uint8_t { Reach, Safe };

enum class Direction : std::uint8_t { Straight, Transpose };

/// A set of node identifiers, the working currency of every fixpoint
/// computation in this library. Backed by a bit vector; all bulk operations
/// (union, intersection, difference, subset test) run word-wise. Iteration
/// yields members in ascending id order, which makes every tie-break in the
/// solvers and the strategy extraction deterministic.
class NodeSet {
public:
    NodeSet() = default;

    NodeSet(std::initializer_list<NodeId> ids) {
        for (NodeId v : ids) insert(v);
    }

    /// The full set {0, ..., n-1}.
    static NodeSet full(std::size_t n) {
        NodeSet s;
        if (n == 0) return s;
        s.words_.assign((n + 63) / 64, ~std::uint64_t{0});
        std::size_t extra = s.words_.size() * 64 - n;
        if (extra > 0) s.words_.back() >>= extra;
        s.count_ = n;
        return s;
    }

    bool contains(NodeId v) const noexcept {
        std::size_t w = v >> 6;
        return w < words_.size() && (words_[w] >> (v & 63)) & 1u;
    }

    /// Returns true if v was not already present.
    bool insert(NodeId v) {
        std::size_t w = v >> 6;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (words_[w] & bit) return false;
        words_[w] |= bit;
        ++count_;
        return true;
    }

    /// Returns true if v was present.
    bool erase(NodeId v) {
        std::size_t w = v >> 6;
        if (w >= words_.size()) return false;
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (!(words_[w] & bit)) return false;
        words_[w] &= ~bit;
        --count_;
        shrink();
        return true;
    }

    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    void clear() {
        words_.clear();
        count_ = 0;
    }

    bool is_subset_of(const NodeSet& other) const noexcept {
        if (words_.size() > other.words_.size()) {
            for (std::size_t w = other.words_.size(); w < words_.size(); ++w)
                if (words_[w] != 0) return false;
        }
        std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t w = 0; w < n; ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    bool intersects(const NodeSet& other) const noexcept {
        std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t w = 0; w < n; ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    NodeSet& operator|=(const NodeSet& other) {
        if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
        for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
        recount();
        return *this;
    }

    NodeSet& operator&=(const NodeSet& other) {
        if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        shrink();
        recount();
        return *this;
    }

    NodeSet& operator-=(const NodeSet& other) {
        std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t w = 0; w < n; ++w) words_[w] &= ~other.words_[w];
        shrink();
        recount();
        return *this;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    /// {0..n-1} \ *this. Members >= n are dropped.
    NodeSet complement(std::size_t n) const {
        NodeSet out = full(n);
        out -= *this;
        return out;
    }

    friend bool operator==(const NodeSet& a, const NodeSet& b) noexcept {
        // Trailing zero words are trimmed, so word-wise comparison is exact.
        return a.words_ == b.words_;
    }

    /// Forward iterator over members in ascending order.
    class const_iterator {
    public:
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;

        const_iterator() = default;
        const_iterator(const std::vector<std::uint64_t>* words, std::size_t word, std::uint64_t rest)
            : words_(words), word_(word), rest_(rest) {
            advance();
        }

        NodeId operator*() const noexcept {
            return static_cast<NodeId>(word_ * 64 + std::countr_zero(rest_));
        }

        const_iterator& operator++() {
            rest_ &= rest_ - 1; // drop lowest set bit
            advance();
            return *this;
        }

        const_iterator operator++(int) {
            const_iterator tmp = *this;
            ++(*this);
            return tmp;
        }

        friend bool operator==(const const_iterator& a, const const_iterator& b) noexcept {
            return a.word_ == b.word_ && a.rest_ == b.rest_;
        }

    private:
        void advance() {
            while (rest_ == 0 && words_ && word_ + 1 < words_->size())
                rest_ = (*words_)[++word_];
            if (rest_ == 0) word_ = words_ ? words_->size() : 0;
        }

        const std::vector<std::uint64_t>* words_ = nullptr;
        std::size_t word_ = 0;
        std::uint64_t rest_ = 0;
    };

    const_iterator begin() const {
        if (words_.empty()) return end();
        return const_iterator(&words_, 0, words_[0]);
    }

    const_iterator end() const { return const_iterator(&words_, words_.size(), 0); }

    std::vector<NodeId> to_vector() const {
        std::vector<NodeId> out;
        out.reserve(count_);
        for (NodeId v : *this) out.push_back(v);
        return out;
    }

private:
    void shrink() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    void recount() {
        count_ = 0;
        for (std::uint64_t w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
    }

    std::vector<std::uint64_t> words_;
    std::size_t count_ = 0;
};

/// Immutable directed game graph: owner partition plus straight and transpose
/// adjacency. Both directions are built at construction; v in succ(u) iff
/// u in pred(v). Copies share the underlying storage, so an Arena is cheap to
/// pass by value and safe to read from any number of threads.
class Arena {
public:
    Arena() : data_(std::make_shared<const Data>()) {}

    /// Takes the owner map and straight adjacency; derives the transpose.
    Arena(std::vector<Owner> owners, std::vector<NodeSet> succ) {
        auto d = std::make_shared<Data>();
        d->owner = std::move(owners);
        d->succ = std::move(succ);
        std::size_t n = d->owner.size();
        if (d->succ.size() != n)
            throw DanglingNode("owner map and adjacency disagree on node count");
        d->pred.assign(n, NodeSet{});
        d->num_edges = 0;
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v : d->succ[u]) {
                if (v >= n) throw EdgeOutOfRange("edge endpoint " + std::to_string(v) + " out of range");
                d->pred[v].insert(u);
                ++d->num_edges;
            }
        }
        for (NodeId v = 0; v < n; ++v) {
            if (d->owner[v] == Owner::Safety) d->safety.insert(v);
            else d->reach.insert(v);
        }
        data_ = std::move(d);
    }

    std::size_t num_nodes() const noexcept { return data_->owner.size(); }
    std::size_t num_edges() const noexcept { return data_->num_edges; }

    Owner owner(NodeId v) const {
        check(v);
        return data_->owner[v];
    }

    const NodeSet& succ(NodeId v) const {
        check(v);
        return data_->succ[v];
    }

    const NodeSet& pred(NodeId v) const {
        check(v);
        return data_->pred[v];
    }

    /// V_S or V_R as a set.
    const NodeSet& nodes_of(Owner o) const noexcept {
        return o == Owner::Safety ? data_->safety : data_->reach;
    }

    NodeSet all_nodes() const { return NodeSet::full(num_nodes()); }

    /// Copies of the straight half, for callers that need to rebuild the
    /// transpose on their own clock (see the benchmark fairness rule).
    std::vector<Owner> owners_copy() const { return data_->owner; }
    std::vector<NodeSet> succ_copy() const { return data_->succ; }

    friend bool operator==(const Arena& a, const Arena& b) {
        return a.data_ == b.data_ ||
               (a.data_->owner == b.data_->owner && a.data_->succ == b.data_->succ);
    }

private:
    struct Data {
        std::vector<Owner> owner;
        std::vector<NodeSet> succ;
        std::vector<NodeSet> pred;
        NodeSet safety;
        NodeSet reach;
        std::size_t num_edges = 0;
    };

    void check(NodeId v) const {
        if (v >= data_->owner.size())
            throw NodeOutOfRange("node " + std::to_string(v) + " out of range");
    }

    std::shared_ptr<const Data> data_;
};

/// Validating constructor from explicit node/edge lists. The two owner lists
/// must partition 0..n-1 exactly.
inline Arena build_arena(const std::vector<NodeId>& safety_nodes,
                         const std::vector<NodeId>& reach_nodes,
                         const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::size_t n = safety_nodes.size() + reach_nodes.size();
    std::vector<int> seen(n, 0);
    std::vector<Owner> owners(n, Owner::Safety);
    auto claim = [&](NodeId v, Owner o) {
        if (v >= n) throw DanglingNode("node id " + std::to_string(v) + " leaves a gap in 0.." +
                                       std::to_string(n == 0 ? 0 : n - 1));
        if (seen[v]) throw OverlappingOwnership("node " + std::to_string(v) + " declared twice");
        seen[v] = 1;
        owners[v] = o;
    };
    for (NodeId v : safety_nodes) claim(v, Owner::Safety);
    for (NodeId v : reach_nodes) claim(v, Owner::Reachability);

    std::vector<NodeSet> succ(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw EdgeOutOfRange("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        succ[u].insert(v); // duplicates collapse; adjacency is a set
    }
    return Arena(std::move(owners), std::move(succ));
}

/// The pseudographic Neighbors(v, G) / Neighbors(v, G^T) primitive.
inline const NodeSet& neighbors(const Arena& arena, NodeId v, Direction dir) {
    return dir == Direction::Straight ? arena.succ(v) : arena.pred(v);
}

/// An arena together with a target set and an objective. For Reach the
/// reachability player tries to enter the target; for Safe the safety player
/// tries to stay inside it forever.
struct GameSpec {
    GameSpec(Arena a, NodeSet t, Objective o)
        : arena(std::move(a)), target(std::move(t)), objective(o) {
        for (NodeId v : target)
            if (v >= arena.num_nodes())
                throw NodeOutOfRange("target node " + std::to_string(v) + " out of range");
    }

    Arena arena;
    NodeSet target;
    Objective objective;

    friend bool operator==(const GameSpec& a, const GameSpec& b) {
        return a.objective == b.objective && a.target == b.target && a.arena == b.arena;
    }
};

} // namespace rsg
