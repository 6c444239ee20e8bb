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

#include "rsynth/equilibria.hpp"
#include "rsynth/lattice.hpp"
#include "rsynth/synthesis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rsynth {

struct LatticedEdge {
    int to = 0;
    Elem value = 0;
};

/**
 * Lattice-valued Büchi game. Edges are explicit and bottom is an ordinary
 * value: a bottom edge at a ∨ vertex gives up everything not yet secured, a
 * bottom edge at a ∧ vertex concedes nothing.
 */
struct LatticedGame {
    LatticePtr lattice;
    std::vector<std::string> vertices;
    std::vector<char> or_vertex;                      // 1 = ∨-player, 0 = ∧-player
    int initial = 0;
    std::vector<std::vector<LatticedEdge>> edges;     // [u], sorted by target, no duplicates
    std::vector<Elem> accept;                         // F

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    /** Value of the edge u -> v, or nullopt when absent. */
    std::optional<Elem> edge_value(int u, int v) const;
};

/** Every vertex needs an outgoing edge; targets and values must be in range. */
ArenaReport validate_latticed_game(const LatticedGame& g);

/** Play as a vertex lasso; cycle.back() -> cycle.front() must be an edge. */
struct VertexLasso {
    std::vector<int> prefix;
    std::vector<int> cycle;
};

/** Relinquishment trackers (x, y) after moving from u to v. */
std::pair<Elem, Elem> tracker_step(const LatticedGame& g, int u, int v, Elem x, Elem y);

/**
 * Join of the join-irreducibles j with j <= lim y, or j <= lim x while F >= j
 * recurs. Throws ArenaError when the lasso does not follow the edges.
 */
Elem play_value(const LatticedGame& g, const VertexLasso& play);

/** Two-player Boolean game with a generalized Büchi condition for the ∨-player. */
struct BuchiGame {
    std::vector<char> or_vertex;
    std::vector<std::vector<int>> succ;
    int initial = 0;
    std::vector<std::vector<char>> accepting;   // the family; empty means every play wins

    int size() const { return static_cast<int>(succ.size()); }
};

/** ∨-player strategy with memory = index of the set currently aimed at. */
struct BuchiStrategy {
    int memory = 1;
    int initial = 0;
    /** move[v][m]: successor index at ∨ vertex v; -1 elsewhere. */
    std::vector<std::vector<int>> move;
    /** Memory after arriving at v with memory m. */
    std::vector<std::vector<int>> next;
};

struct BuchiSolution {
    std::vector<char> winning;   // ∨ wins from v
    bool or_wins = false;        // from the initial vertex
    std::optional<BuchiStrategy> strategy;
};

/** Nested fixpoint; the returned strategy is re-verified against every ∧ behaviour. */
BuchiSolution solve_generalized_buchi(const BuchiGame& g);
/** Every play from the initial vertex consistent with s visits every set infinitely often. */
bool buchi_strategy_wins(const BuchiGame& g, const BuchiStrategy& s);

/** G_l restricted to the part reachable from (v0, top, bottom). */
struct SimplifiedGame {
    BuchiGame game;
    std::vector<int> vertex;   // component u of each node
    std::vector<Elem> x;
    std::vector<Elem> y;
    std::vector<Elem> targets;   // X_l, one acceptance set each
};

SimplifiedGame simplify_game(const LatticedGame& g, Elem l);

/**
 * Finite-memory ∨ strategy on a latticed game. Memory m at vertex u moves to
 * choice[m][u]; arriving at v the memory becomes update[m][v].
 */
struct LatticedStrategy {
    int memory = 1;
    std::vector<std::vector<int>> choice;   // -1 at ∧ vertices
    std::vector<std::vector<int>> update;
};

struct EnsureResult {
    bool ensured = false;
    std::optional<LatticedStrategy> witness;
};

EnsureResult can_ensure(const LatticedGame& g, Elem l);

/** Maximal elements among the values the ∨-player can ensure with one strategy. */
std::vector<Elem> achievable_values(const LatticedGame& g);

/** Deterministic lattice-valued Büchi automaton over subsets of `props`. */
struct Ldbw {
    LatticePtr lattice;
    std::vector<std::string> props;
    int num_states = 1;
    int initial = 0;
    std::vector<std::vector<int>> delta;    // [q][letter], letter < 2^|props|
    std::vector<std::vector<Elem>> value;   // [q][letter]
    std::vector<Elem> accept;               // [q]

    int num_letters() const { return 1 << props.size(); }
};

ArenaReport validate_ldbw(const Ldbw& a);

/** Meet of the transition values met with the join of acceptance values recurring on the run. */
Elem ldbw_payoff(const Ldbw& a, const LassoWord& w);

/** Boolean objective of an LDBW over the 2-element lattice (top transitions kept, acceptance top). */
Objective ldbw_to_objective(const Ldbw& a);

using LatticedObjectives = std::vector<Ldbw>;

/**
 * For each deviator i and each join-irreducible j not below i's payoff, no
 * deviation of i (others fixed) reaches payoff >= j. The witness deviation is
 * an accepting lasso of arena x memories x automaton restricted to
 * transitions of value >= j with acceptance >= j recurring.
 */
Verdict check_latticed_nash(const Arena& a, const LatticedObjectives& objs, const Profile& p,
                            const Deviators& deviators = {});

struct LatticedSynthesisResult {
    std::optional<Profile> profile;
    bool exhaustive = true;
    std::int64_t candidates = 0;
    std::string note;
};

/** Profile of memory <= k with payoff_0 >= threshold that is a latticed Nash equilibrium for agents 1..n. */
LatticedSynthesisResult latticed_synthesize_bounded(const Arena& a, const LatticedObjectives& objs, Elem threshold,
                                                    int k, std::int64_t max_candidates = 2'000'000);

} // namespace rsynth
