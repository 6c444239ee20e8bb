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
#include "rsynth/ltl.hpp"
#include "rsynth/strategy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rsynth {

/**
 * Boolean objective. `pos` accepts exactly the words satisfying it and `neg`
 * exactly the words violating it; `formula` is kept when the objective came
 * from LTL and is then used for direct evaluation.
 */
struct Objective {
    Ltl formula;
    Nbw pos;
    Nbw neg;

    static Objective from_ltl(const Ltl& f);
    static Objective from_automata(Nbw pos, Nbw neg);
    bool holds(const LassoWord& w) const;
};

using Objectives = std::vector<Objective>;

/** Parses one formula per player over the arena's propositions. */
Objectives parse_objectives(const Arena& a, const std::vector<std::string>& formulas);

enum class Concept { Nash, Spe, Dominant };

std::string concept_name(Concept c);

/**
 * Result of a check. When `holds` is false, `player` deviates profitably
 * after `history`; `deviation` is the full deviating play and `conforming` the
 * play it is compared with (the profile's own shifted outcome for Nash and SPE,
 * the play where `player` keeps its strategy against the same opponents for DS).
 */
struct Verdict {
    bool holds = true;
    int player = -1;
    History history;
    Lasso deviation;
    Lasso conforming;
};

bool agent_payoff(const Arena& a, const Profile& p, const Objective& obj);

/**
 * A play that follows h, then lets every player except i follow its strategy
 * while i moves freely, and whose whole word satisfies obj. Exact over all
 * deviations: the deviator faces arena x memories x automaton, so a deviation
 * exists iff that product has an accepting lasso.
 */
std::optional<Lasso> best_deviation(const Arena& a, const Profile& p, int i, const Objective& obj,
                                    const History& h);

/** Players to test; empty means every player. */
using Deviators = std::vector<int>;

Verdict check_nash(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators = {});
/**
 * Nash condition after every history, quotiented by (vertex, memories, automaton
 * state sets of the prefix). The witness history is the first failing one in
 * breadth-first order over legal tuples.
 */
Verdict check_spe(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators = {});
/**
 * π_i is not dominant iff opponents and a deviation exist such that the
 * deviating play satisfies φ_i while the play keeping π_i violates it. Both
 * plays share their history until it first differs; afterwards opponents may
 * react independently, so each continuation is an existential search.
 */
Verdict check_dominant(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators = {});

Verdict check(Concept c, const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators = {});

std::string verdict_to_string(const Arena& a, const Verdict& v);

} // namespace rsynth
