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

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsynth {

class AptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Raised instead of truncating when a construction would exceed its state ceiling. */
class AptCeilingError : public AptError {
public:
    using AptError::AptError;
};

enum class PbfKind { True, False, Atom, And, Or };

struct PbfNode;
/** Positive Boolean formula over atoms (direction, state); direction -1 in initial conditions. */
using Pbf = std::shared_ptr<const PbfNode>;

struct PbfNode {
    PbfKind kind = PbfKind::True;
    int dir = -1;
    int state = -1;
    std::vector<Pbf> kids;
};

Pbf pbf_true();
Pbf pbf_false();
Pbf pbf_atom(int dir, int state);
/** Constant-folding connectives; an empty conjunction is true, an empty disjunction false. */
Pbf pbf_and(std::vector<Pbf> kids);
Pbf pbf_or(std::vector<Pbf> kids);
Pbf pbf_and(Pbf a, Pbf b);
Pbf pbf_or(Pbf a, Pbf b);
/** Swaps ∧/∨ and true/false. */
Pbf pbf_dual(const Pbf& f);
Pbf pbf_shift_states(const Pbf& f, int offset);

using PbfAtom = std::pair<int, int>;
/**
 * Minimal satisfying atom sets, each sorted; empty result means unsatisfiable.
 * Throws AptCeilingError when an intermediate expansion exceeds `limit` sets.
 */
std::vector<std::vector<PbfAtom>> pbf_models(const Pbf& f, std::size_t limit = static_cast<std::size_t>(-1));

/** Atoms print as (d,q) or, with direction -1, as q; states print by name. */
std::string pbf_to_string(const Pbf& f, const std::vector<std::string>& states);
/** Inverse of pbf_to_string; directions are numbers, states names. Throws AptError. */
Pbf parse_pbf(const std::string& text, const std::vector<std::string>& states);

/**
 * Alternating parity tree automaton with min-even acceptance. Letters are
 * mixed-radix numbers over the label components, component 0 least
 * significant; directions are 0..num_directions-1.
 */
struct Apt {
    std::vector<std::string> components;
    std::vector<int> dims;
    int num_directions = 0;
    std::vector<std::string> states;
    std::vector<int> priority;
    Pbf initial = pbf_true();
    std::vector<std::vector<Pbf>> delta;   // [state][letter]

    int num_states() const { return static_cast<int>(states.size()); }
    int num_letters() const;
    int letter(const std::vector<int>& parts) const;
    std::vector<int> letter_parts(int letter) const;
};

std::vector<std::string> validate_apt(const Apt& a);

/** Labeled tree with finitely many distinct subtrees. Labels are letters of the reading automaton. */
struct RegularTree {
    int initial = 0;
    std::vector<std::vector<int>> succ;   // [state][direction]
    std::vector<int> label;

    int num_states() const { return static_cast<int>(succ.size()); }
};

std::vector<std::string> validate_tree(const RegularTree& t, int num_directions, int num_letters);

/** Membership by solving the parity game over (tree state, automaton state). */
bool apt_run_regular_tree(const Apt& a, const RegularTree& t);

struct AptLimits {
    /** Largest number of states an alternation-removal construction may create. */
    std::int64_t max_states = 20000;
};

Apt apt_complement(const Apt& a);
Apt apt_union(const Apt& a, const Apt& b);
Apt apt_intersection(const Apt& a, const Apt& b);

/** True when every transition model sends at most one copy per direction and δ₀ picks one state. */
bool apt_is_nondeterministic(const Apt& a);
/** Equivalent nondeterministic automaton (Safra trees over the bad-thread automaton). */
Apt apt_remove_alternation(const Apt& a, const AptLimits& limits = {});
/** Erases label component `component`: accepts t iff some extension of t is accepted. */
Apt apt_project(const Apt& a, int component, const AptLimits& limits = {});
/**
 * Reads a richer alphabet: letter x of the result is read as view[x] by `a`.
 * Directions are unchanged.
 */
Apt apt_lift(const Apt& a, const std::vector<std::string>& components, const std::vector<int>& dims,
             const std::vector<int>& view);

enum class ComposeKind { Union, Intersection, Complement, Project };
Apt apt_compose(ComposeKind kind, const std::vector<Apt>& operands, int component = -1,
                const AptLimits& limits = {});

/** Some accepted regular tree, or nullopt when the language is empty. */
std::optional<RegularTree> apt_emptiness(const Apt& a, const AptLimits& limits = {});

// Strategy-history trees over an arena: directions are joint codes, the label
// has one component per player (its action) and a final mark component (1 = ⊤).

/**
 * Accepts a strategy-history tree iff its ⊤ marks form one finite path from the
 * root (an unmarked root counts as the empty mark path) and the outcome of the
 * labelled profile after that history satisfies ψ. The tracker copies are the
 * four-state history/future automaton; the ψ part follows only the designated
 * path (history, then the obedient continuation).
 */
Apt apt_base(const Ltl& psi, const Arena& a);
/** Same trackers, but ψ is required on every path of the tree. */
Apt apt_base_verbatim(const Ltl& psi, const Arena& a);
/** ψ(z) without a history: the designated path is the obedient path from the root; marks are ignored. */
Apt apt_base_root(const Ltl& psi, const Arena& a);

/** Accepts exactly the trees whose ⊤ marks form one finite path from the root (possibly empty). */
Apt apt_legal_marks(const Arena& a);

/** Letter of a strategy-history tree node. */
int strategy_tree_letter(const Arena& a, const Tuple& actions, bool marked);

/**
 * Tree of `p` with history `h` marked ⊤. Directions illegal at a node's vertex
 * lead to a sink whose labels repeat the first legal tuple.
 */
RegularTree strategy_history_tree(const Arena& a, const Profile& p, const History& h);

/**
 * Direct semantics of a strategy-history tree: the ⊤-marked path if it is
 * a legal finite path, then ψ on the shifted outcome of the labels. Used as
 * the reference for apt_base.
 */
bool strategy_tree_satisfies(const Arena& a, const RegularTree& t, const Ltl& psi);

} // namespace rsynth
