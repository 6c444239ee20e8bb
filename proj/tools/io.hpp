/*
 * Copyright 2026 The rsynth Authors
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

#include "rsynth/apt.hpp"
#include "rsynth/equilibria.hpp"
#include "rsynth/lattice.hpp"
#include "rsynth/latticed.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsynth::io {

using nlohmann::json;

/** Malformed or inconsistent input; the message starts with "<source>:<location>: ". */
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Read-only view of a JSON value that knows where it came from. */
class Node {
public:
    Node(const json& j, std::string source, std::string path = "")
        : j_(&j), source_(std::move(source)), path_(std::move(path))
    {
    }

    Node operator[](const std::string& key) const;
    std::optional<Node> find(const std::string& key) const;
    Node operator[](std::size_t i) const;
    std::size_t size() const;   // arrays only
    std::vector<std::string> keys() const;   // objects only, sorted

    bool is_string() const { return j_->is_string(); }
    bool is_object() const { return j_->is_object(); }
    bool is_array() const { return j_->is_array(); }

    std::string str() const;
    int integer() const;
    std::vector<std::string> strings() const;
    const json& raw() const { return *j_; }
    const std::string& source() const { return source_; }

    [[noreturn]] void fail(const std::string& msg) const;

private:
    const json* j_;
    std::string source_;
    std::string path_;
};

/** A loaded document: a file path, "-" for stdin, or "fixture:<name>". */
struct Document {
    json value;
    std::string source;

    Node root() const { return Node(value, source); }
};

/**
 * Resolves `spec` as a document of the given kind ("arena", "profile",
 * "objectives", "history", "lattice", "latticed-game", "latticed-objectives",
 * "apt", "tree"). Fixtures are compiled in and listed by fixture_names.
 */
Document load_document(const std::string& spec, const std::string& kind);
std::vector<std::string> fixture_names(const std::string& kind);
/** Name of the objectives fixture that goes with an arena fixture, if any. */
std::optional<std::string> default_objectives(const std::string& arena_spec);

/** "fnv1a64:<hex>" of the compact dump; stable across runs, not cryptographic. */
std::string digest(const json& j);

Arena read_arena(const Document& d);
json write_arena(const Arena& a);

Strategy read_strategy(const Node& n, const Arena& a, int owner);
json write_strategy(const Arena& a, const Strategy& s);
Profile read_profile(const Document& d, const Arena& a);
json write_profile(const Arena& a, const Profile& p);

std::vector<std::string> read_objectives(const Document& d, const Arena& a);
json write_objectives(const std::vector<std::string>& formulas);

History read_history(const Document& d, const Arena& a);
json write_history(const Arena& a, const History& h);

json write_lasso(const Arena& a, const Lasso& l);
json write_verdict(const Arena& a, const Verdict& v);

/** Element names, strict order pairs and negation pairs of a lattice document. */
struct LatticeOrder {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> leq;
    std::vector<std::pair<std::string, std::string>> neg;
};
LatticeOrder read_lattice_order(const Node& n);
/** Inline lattice object or a "fixture:<name>" string. */
LatticePtr read_lattice(const Node& n);
json write_lattice(const Lattice& l);

LatticedGame read_latticed_game(const Document& d);
json write_latticed_game(const LatticedGame& g);
json write_latticed_strategy(const LatticedGame& g, const LatticedStrategy& s);
/** "u v (w x)": prefix vertices, then the cycle in parentheses. */
VertexLasso parse_vertex_lasso(const LatticedGame& g, const std::string& text);

Ldbw read_ldbw(const Node& n);
json write_ldbw(const Ldbw& a);
LatticedObjectives read_latticed_objectives(const Document& d, const Arena& a);
json write_latticed_objectives(const LatticedObjectives& objs);

Apt read_apt(const Document& d);
json write_apt(const Apt& a);
RegularTree read_tree(const Document& d, const Apt* against = nullptr);
json write_tree(const RegularTree& t, int num_directions);

} // namespace rsynth::io
