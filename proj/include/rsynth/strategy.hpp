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

#include "rsynth/arena.hpp"

#include <string>
#include <vector>

namespace rsynth {

enum class InputKind { Vertices, Actions };

/**
 * Mealy strategy. At a position with vertex v the strategy in memory m plays
 * output[m][v]; leaving the position it moves to update[m][s], where s is v
 * (Vertices) or the joint code of the tuple just played (Actions). The memory
 * at step k therefore summarises the first k positions of the play.
 */
struct Strategy {
    int owner = 0;
    InputKind input = InputKind::Vertices;
    int memory = 1;
    int initial = 0;
    std::vector<std::vector<int>> update;   // [m][symbol]
    std::vector<std::vector<int>> output;   // [m][vertex]
    std::vector<std::string> memory_names;

    int num_symbols(const Arena& a) const;
    int symbol(const Arena& a, int v, const Tuple& t) const;

    /** One memory state, playing actions[v] at v. */
    static Strategy memoryless(int owner, const std::vector<int>& actions);
};

/** profile[i] is the strategy of player i. */
using Profile = std::vector<Strategy>;

class StrategyError : public ArenaError {
public:
    StrategyError(int player, std::vector<int> history, const std::string& msg)
        : ArenaError(msg), player(player), history(std::move(history))
    {
    }
    int player;
    std::vector<int> history;
};

struct Position {
    int vertex = 0;
    Tuple tuple;
    bool operator==(const Position&) const = default;
};

/** Ultimately periodic play: prefix then cycle repeated forever. */
struct Lasso {
    std::vector<Position> prefix;
    std::vector<Position> cycle;

    std::size_t size() const { return prefix.size() + cycle.size(); }
    /** Position k of the infinite play. */
    const Position& at(std::size_t k) const;
};

struct LassoWord {
    std::vector<Props> prefix;
    std::vector<Props> cycle;

    std::size_t size() const { return prefix.size() + cycle.size(); }
    Props at(std::size_t k) const;
};

/**
 * Finite history. Vertex arenas may leave tuples empty; the smallest tuple
 * consistent with each step is then used for the position letters.
 */
struct History {
    std::vector<int> vertices;
    std::vector<Tuple> tuples;
};

/** Structure, owners and input kinds; with `eager` also every output against availability. */
ArenaReport validate_profile(const Arena& a, const Profile& p, bool eager = false);
ArenaReport validate_strategy(const Arena& a, const Strategy& s, bool eager = false);

/** Joint memory of a profile. */
using Memories = std::vector<int>;

Memories initial_memories(const Profile& p);
/** Actions at (v, mem); throws StrategyError with `history` as witness when unavailable. */
Tuple profile_actions(const Arena& a, const Profile& p, int v, const Memories& mem,
                      const std::vector<int>& history = {});
Memories advance(const Arena& a, const Profile& p, const Memories& mem, int v, const Tuple& t);

Lasso outcome(const Arena& a, const Profile& p);
/** Play from vertex v with the given joint memory, folded at the first repeated configuration. */
Lasso outcome_from(const Arena& a, const Profile& p, int v, const Memories& mem,
                   const std::vector<int>& history_so_far = {});

/** Checks the history and fills in missing tuples; throws ArenaError when inconsistent. */
History complete_history(const Arena& a, const History& h);
Memories memories_after(const Arena& a, const Profile& p, const History& h);
Lasso shifted_outcome(const Arena& a, const Profile& p, const History& h);

LassoWord word_of(const Arena& a, const Lasso& l);

std::string lasso_to_string(const Arena& a, const Lasso& l);
std::string history_to_string(const Arena& a, const History& h);

} // namespace rsynth
