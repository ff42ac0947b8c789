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
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rsg/arena.hpp"

namespace rsg {

// Line-oriented arena file format ('#' starts a comment line):
//
//   arena <num_nodes>
//   owner <id> <S|R>          (one line per node)
//   edge <u> <v>              (zero or more)
//   target <id> <id> ...      (exactly one; may be empty after the keyword)
//   objective <reach|safe>    (exactly one)
//
// Node labels in a file may be sparse; the parser remaps them onto dense ids
// 0..n-1 in ascending label order. serialize_arena always emits the dense
// canonical form (nodes and edges in ascending numeric order) and can record
// a label mapping in comments.

namespace detail {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        Line l;
        l.number = line_no;
        std::istringstream ss{std::string(line)};
        std::string tok;
        while (ss >> tok) l.tokens.push_back(tok);
        if (l.tokens.empty()) continue; // blank line
        out.push_back(std::move(l));
    }
    return out;
}

inline std::int64_t parse_label(const std::string& tok, std::size_t line) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw SyntaxError(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw SyntaxError(line, "expected an integer, got '" + tok + "'");
    if (value < 0) throw SyntaxError(line, "node labels must be non-negative");
    return value;
}

} // namespace detail

/// Parses the arena file format. If labels_out is given, it receives the
/// original label of each dense node id.
inline GameSpec parse_arena(std::string_view text, std::vector<std::int64_t>* labels_out = nullptr) {
    auto lines = detail::tokenize(text);
    std::size_t idx = 0;
    std::size_t last_line = lines.empty() ? 1 : lines.back().number + 1;
    auto expect_more = [&](const char* what) -> const detail::Line& {
        if (idx >= lines.size()) throw SyntaxError(last_line, std::string("missing ") + what);
        return lines[idx];
    };

    // header
    {
        const auto& l = expect_more("'arena <num_nodes>' header");
        if (l.tokens[0] != "arena")
            throw SyntaxError(l.number, "expected 'arena <num_nodes>', got '" + l.tokens[0] + "'");
        if (l.tokens.size() != 2) throw SyntaxError(l.number, "'arena' takes exactly one count");
        ++idx;
    }
    std::size_t declared = 0;
    {
        const auto& l = lines[idx - 1];
        std::int64_t v = detail::parse_label(l.tokens[1], l.number);
        declared = static_cast<std::size_t>(v);
    }

    // owner declarations, arbitrary labels
    std::map<std::int64_t, Owner> owner_by_label;
    while (idx < lines.size() && lines[idx].tokens[0] == "owner") {
        const auto& l = lines[idx];
        if (l.tokens.size() != 3) throw SyntaxError(l.number, "'owner' takes a node and S or R");
        std::int64_t label = detail::parse_label(l.tokens[1], l.number);
        Owner o;
        if (l.tokens[2] == "S") o = Owner::Safety;
        else if (l.tokens[2] == "R") o = Owner::Reachability;
        else throw SyntaxError(l.number, "owner must be S or R, got '" + l.tokens[2] + "'");
        if (owner_by_label.count(label))
            throw SemanticError("node " + std::to_string(label) + " has two owner declarations");
        owner_by_label.emplace(label, o);
        ++idx;
    }
    if (owner_by_label.size() != declared)
        throw SemanticError("header declares " + std::to_string(declared) + " nodes but " +
                            std::to_string(owner_by_label.size()) + " are owned");

    // dense remap in ascending label order
    std::map<std::int64_t, NodeId> dense;
    std::vector<std::int64_t> labels;
    std::vector<Owner> owners;
    for (const auto& [label, o] : owner_by_label) {
        dense.emplace(label, static_cast<NodeId>(labels.size()));
        labels.push_back(label);
        owners.push_back(o);
    }
    auto lookup = [&](std::int64_t label, std::size_t line, const char* what) -> NodeId {
        auto it = dense.find(label);
        if (it == dense.end())
            throw SemanticError(std::string(what) + " refers to undeclared node " +
                                std::to_string(label) + " (line " + std::to_string(line) + ")");
        return it->second;
    };

    // edges
    std::vector<NodeSet> succ(owners.size());
    while (idx < lines.size() && lines[idx].tokens[0] == "edge") {
        const auto& l = lines[idx];
        if (l.tokens.size() != 3) throw SyntaxError(l.number, "'edge' takes two nodes");
        NodeId u = lookup(detail::parse_label(l.tokens[1], l.number), l.number, "edge");
        NodeId v = lookup(detail::parse_label(l.tokens[2], l.number), l.number, "edge");
        succ[u].insert(v);
        ++idx;
    }

    // target
    NodeSet target;
    {
        const auto& l = expect_more("'target' line");
        if (l.tokens[0] != "target")
            throw SyntaxError(l.number, "expected 'target', got '" + l.tokens[0] + "'");
        for (std::size_t i = 1; i < l.tokens.size(); ++i)
            target.insert(lookup(detail::parse_label(l.tokens[i], l.number), l.number, "target"));
        ++idx;
    }

    // objective
    Objective objective;
    {
        const auto& l = expect_more("'objective' line");
        if (l.tokens[0] != "objective")
            throw SyntaxError(l.number, "expected 'objective', got '" + l.tokens[0] + "'");
        if (l.tokens.size() != 2) throw SyntaxError(l.number, "'objective' takes one keyword");
        if (l.tokens[1] == "reach") objective = Objective::Reach;
        else if (l.tokens[1] == "safe") objective = Objective::Safe;
        else throw SemanticError("unknown objective '" + l.tokens[1] + "' (expected reach or safe)");
        ++idx;
    }

    if (idx < lines.size())
        throw SyntaxError(lines[idx].number, "unexpected '" + lines[idx].tokens[0] +
                                              "' after the objective line");

    if (labels_out) *labels_out = std::move(labels);
    return GameSpec(Arena(std::move(owners), std::move(succ)), std::move(target), objective);
}

/// Emits the canonical form: nodes and edges ascending, one target line, one
/// objective line. When `labels` is given (from a sparse parse), the original
/// labels are recorded as comments.
inline std::string serialize_arena(const GameSpec& spec,
                                   const std::vector<std::int64_t>* labels = nullptr) {
    const Arena& a = spec.arena;
    std::size_t n = a.num_nodes();
    std::ostringstream out;
    if (labels) {
        for (NodeId v = 0; v < n; ++v)
            if ((*labels)[v] != static_cast<std::int64_t>(v))
                out << "# node " << v << " was label " << (*labels)[v] << "\n";
    }
    out << "arena " << n << "\n";
    for (NodeId v = 0; v < n; ++v)
        out << "owner " << v << ' ' << (a.owner(v) == Owner::Safety ? 'S' : 'R') << "\n";
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : a.succ(u)) out << "edge " << u << ' ' << v << "\n";
    out << "target";
    for (NodeId v : spec.target) out << ' ' << v;
    out << "\n";
    out << "objective " << (spec.objective == Objective::Reach ? "reach" : "safe") << "\n";
    return out.str();
}

} // namespace rsg
