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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rsynth {

/** Set of atomic propositions as a bitmask over an ordered universe (at most 64). */
using Props = std::uint64_t;
/** One action index per player. */
using Tuple = std::vector<int>;

class ArenaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IllegalActionError : public ArenaError {
public:
    IllegalActionError(int player, const std::string& msg) : ArenaError(msg), player(player) {}
    int player;
};

/**
 * Finite concurrent arena. delta[v] is indexed by the local tuple code at v:
 * the mixed-radix number over the positions of each player's action in
 * available[i][v], player 0 most significant.
 */
struct Arena {
    std::vector<std::string> vertices;
    int initial = 0;
    std::vector<std::string> players;
    std::vector<std::vector<std::string>> actions;
    std::vector<std::vector<std::vector<int>>> available;   // [player][vertex], sorted
    std::vector<std::vector<int>> delta;                    // [vertex][code], -1 = missing
    std::vector<std::string> props;
    std::vector<Props> labels;                              // [vertex]
    std::vector<std::vector<Props>> action_props;           // [player][action]
    bool variable = false;                                  // built by arena_from_variables

    int num_players() const { return static_cast<int>(players.size()); }
    int num_vertices() const { return static_cast<int>(vertices.size()); }

    int num_tuples(int v) const;
    Tuple decode(int v, int code) const;
    /** -1 when some action is unavailable at v. */
    int encode(int v, const Tuple& t) const;
    /** Code over the full action alphabets (independent of the vertex). */
    int joint_code(const Tuple& t) const;
    int num_joint_codes() const;
    Tuple joint_decode(int code) const;

    Props letter(int v, const Tuple& t) const;

    int vertex_index(const std::string& name) const;
    int player_index(const std::string& name) const;
    int action_index(int player, const std::string& name) const;
    int prop_index(const std::string& name) const;
    std::string props_to_string(Props p) const;
    std::string tuple_to_string(const Tuple& t) const;
};

struct ArenaReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

ArenaReport validate_arena(const Arena& a);

/** delta(v, t); throws IllegalActionError naming the first offending player. */
int successor(const Arena& a, int v, const Tuple& t);

/** One-vertex arena whose actions are the subsets of each X_i; throws on overlap. */
Arena arena_from_variables(const std::vector<std::vector<std::string>>& partition,
                           const std::vector<std::string>& player_names = {});

/** Name-based construction helper used by fixtures, tests and the JSON reader. */
class ArenaBuilder {
public:
    ArenaBuilder& propositions(const std::vector<std::string>& ps);
    ArenaBuilder& vertex(const std::string& name, const std::vector<std::string>& label = {});
    ArenaBuilder& player(const std::string& name, const std::vector<std::string>& actions);
    ArenaBuilder& initial(const std::string& v);
    /** Actions of `player` at `vertex`; vertices never mentioned get the player's default. */
    ArenaBuilder& available(const std::string& player, const std::string& vertex,
                            const std::vector<std::string>& actions);
    ArenaBuilder& default_action(const std::string& player, const std::string& action);
    ArenaBuilder& edge(const std::string& from, const std::vector<std::string>& tuple, const std::string& to);
    ArenaBuilder& action_label(const std::string& player, const std::string& action,
                               const std::vector<std::string>& props);
    /** Throws ArenaError on unknown names; does not require totality (see validate_arena). */
    Arena build() const;

private:
    std::vector<std::string> props_;
    std::vector<std::pair<std::string, std::vector<std::string>>> vertices_;
    std::vector<std::pair<std::string, std::vector<std::string>>> players_;
    std::string initial_;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> avail_;
    std::map<std::string, std::string> default_;
    std::vector<std::tuple<std::string, std::vector<std::string>, std::string>> edges_;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> action_labels_;
};

} // namespace rsynth
