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
#include "rsynth/strategy.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsynth {

class LtlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LtlOp { True, False, Atom, Not, And, Or, Next, Until, Release };

struct LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

/** Atoms are indices into a proposition universe. */
struct LtlNode {
    LtlOp op;
    int atom = -1;
    Ltl lhs;
    Ltl rhs;
};

Ltl ltl_true();
Ltl ltl_false();
Ltl ltl_atom(int p);
Ltl ltl_not(Ltl a);
Ltl ltl_and(Ltl a, Ltl b);
Ltl ltl_or(Ltl a, Ltl b);
Ltl ltl_next(Ltl a);
Ltl ltl_until(Ltl a, Ltl b);
Ltl ltl_release(Ltl a, Ltl b);
Ltl ltl_eventually(Ltl a);   // true U a
Ltl ltl_always(Ltl a);       // false R a

/**
 * Parses G F X U R & | ! ( ), true, false and identifiers. U and R are right
 * associative and bind tighter than &, which binds tighter than |. A word made
 * only of F, G and X that is not a proposition reads as stacked operators.
 */
Ltl parse_ltl(const std::string& text, const std::vector<std::string>& universe);
std::string ltl_to_string(const Ltl& f, const std::vector<std::string>& universe);

/** Nesting depth of the syntax tree; atoms and constants have depth 0. */
int ltl_depth(const Ltl& f);
/** Highest atom index + 1 (0 when there are no atoms). */
int ltl_atom_bound(const Ltl& f);

/** Truth at position 0 of an ultimately periodic word, by per-subformula fixpoints. */
bool eval_lasso(const Ltl& f, const LassoWord& w);

/** Edge guard: all `pos` propositions present and no `neg` proposition present. */
struct NbwEdge {
    Props pos = 0;
    Props neg = 0;
    int to = 0;
    bool matches(Props letter) const { return (letter & pos) == pos && (letter & neg) == 0; }
};

/** Nondeterministic Büchi word automaton over proposition sets. */
struct Nbw {
    int num_states = 0;
    std::vector<int> initial;
    std::vector<std::vector<NbwEdge>> edges;
    std::vector<char> accepting;

    /** Sorted set of successors of `from` on `letter`. */
    std::vector<int> post(const std::vector<int>& from, Props letter) const;
};

/** Tableau expansion into a transition-based generalized Büchi automaton, then degeneralization. */
Nbw ltl_to_nbw(const Ltl& f);
bool nbw_accepts_lasso(const Nbw& a, const LassoWord& w);
/** Acceptance from a set of start states instead of the initial states. */
bool nbw_accepts_lasso_from(const Nbw& a, const std::vector<int>& start, const LassoWord& w);

} // namespace rsynth
