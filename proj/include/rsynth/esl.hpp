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
#include "rsynth/arena.hpp"
#include "rsynth/equilibria.hpp"
#include "rsynth/ltl.hpp"
#include "rsynth/strategy.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsynth {

class EslError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** A player, either concrete or the agent index bound by an agent conjunction. */
struct PlayerRef {
    int index = 0;
    bool agent = false;
    bool operator==(const PlayerRef&) const = default;
};

enum class Cover { All, Except, Only };

/**
 * Strategy variables of one family for a set of players: y (All), z_{-i}
 * (Except {i}), z_i (Only {i}).
 */
struct Slots {
    char family = 'y';
    Cover cover = Cover::All;
    std::vector<PlayerRef> players;
};

enum class EslKind { Base, Not, Or, And, Implies, Exists, Forall, ExistsHistory, ForallHistory, AndAgents };

struct EslNode;
using Esl = std::shared_ptr<const EslNode>;

/**
 * Formula node. Base reads objective `objective` (or `payload` when set) on
 * the profile given by `slots`, after history `history` when nonempty.
 * Strategy quantifiers bind `slots[0]` (cover All or Only); history
 * quantifiers bind `history`.
 */
struct EslNode {
    EslKind kind = EslKind::Base;
    PlayerRef objective;
    Ltl payload;
    std::string payload_text;
    std::vector<Slots> slots;
    std::string history;
    std::vector<Esl> kids;
};

Esl esl_base(PlayerRef objective, std::vector<Slots> slots, std::string history = {});
Esl esl_payload(Ltl psi, std::string text, std::vector<Slots> slots, std::string history = {});
Esl esl_not(Esl a);
Esl esl_or(Esl a, Esl b);
Esl esl_and(Esl a, Esl b);
Esl esl_implies(Esl a, Esl b);
Esl esl_exists(Slots vars, Esl body);
Esl esl_forall(Slots vars, Esl body);
Esl esl_exists_history(std::string h, Esl body);
Esl esl_forall_history(std::string h, Esl body);
/** Conjunction over the agents i in 1..n-1 of `body`, which may mention i. */
Esl esl_and_agents(Esl body);

/** Solution concept body Ψ^γ(y) in schematic form. */
Esl solution_body(Concept gamma);
/** Φ^γ = ∃y.(φ_0(y) ∧ Ψ^γ(y)). */
Esl build_solution_formula(Concept gamma);

std::string esl_to_string(const Esl& f);

/**
 * Instantiates the agent conjunctions and family quantifiers for n players:
 * every strategy variable becomes a single player's variable (y_0, z_1, ...).
 */
Esl esl_expand(const Esl& f, int num_players);

/** Strategy variable names y_j and history variable names; only for expanded formulas. */
std::set<std::string> esl_free_variables(const Esl& f);
int esl_alternation_depth(const Esl& f);

/** Name of the strategy variable of `family` for player j, e.g. "z_1". */
std::string strategy_variable(char family, int player);

struct EslAssignment {
    std::map<std::string, Strategy> strategies;
    std::map<std::string, History> histories;
};

struct EslBounds {
    int memory = 1;
    int history = 1;
    /** Cap on the strategies enumerated per quantifier. */
    std::int64_t max_strategies = 200000;
};

struct EslResult {
    bool value = false;
    EslBounds bounds;
};

/**
 * Truth of `f` (expanded first if schematic) with strategy quantifiers over
 * Mealy machines of memory <= bounds.memory and history quantifiers over
 * legal histories of at most bounds.history vertices. Base formulas are
 * exact; the quantifiers under-approximate the full semantics.
 */
EslResult esl_eval_bounded(const Esl& f, const Arena& a, const std::vector<Ltl>& objectives,
                           const EslAssignment& assignment, const EslBounds& bounds);

/** All strategies of `player` with memory <= k (input kind follows the arena kind). */
std::vector<Strategy> bounded_strategies(const Arena& a, int player, int k, std::int64_t cap);
/** Legal histories from the initial vertex with at most `max_vertices` vertices. */
std::vector<History> bounded_histories(const Arena& a, int max_vertices);

/**
 * Tree automaton for an expanded formula over strategy-history trees whose
 * labels carry one component per free variable, in the order of `free`.
 * Quantifiers go through projection and are limited by `limits`.
 */
Apt esl_to_apt(const Esl& f, const Arena& a, const std::vector<Ltl>& objectives,
               const std::vector<std::string>& free, const AptLimits& limits = {});

} // namespace rsynth
