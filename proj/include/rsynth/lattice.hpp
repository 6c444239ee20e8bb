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

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsynth {

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Index of a lattice element inside its Lattice. */
using Elem = int;

/**
 * Raw extensional tables as they come from a document or a builder.
 * Entries equal to -1 are missing. Tables are indexed by element index.
 */
struct LatticeTables {
    std::vector<std::string> names;
    std::vector<std::vector<char>> leq;      // leq[a][b] = 1 iff a <= b
    std::vector<std::vector<Elem>> join;
    std::vector<std::vector<Elem>> meet;
    std::vector<Elem> neg;
};

struct LawViolation {
    std::string law;
    std::vector<std::string> witness;
};

struct LatticeReport {
    std::vector<std::string> malformed;   // missing or out-of-range table entries
    std::vector<LawViolation> violations;

    bool ok() const { return malformed.empty() && violations.empty(); }
};

/** Checks every order, lattice, distributivity and De Morgan law; malformed tables stop the law checks. */
LatticeReport validate_lattice(const LatticeTables& t);

/** Immutable finite distributive De Morgan lattice. */
class Lattice {
public:
    /** Builds from tables; throws LatticeError unless validate_lattice passes. */
    explicit Lattice(LatticeTables t);

    /**
     * Builds from an order relation. leq is closed reflexively and transitively,
     * join and meet are derived and rejected when a lub or glb is not unique.
     */
    static Lattice from_order(const std::vector<std::string>& names,
                              const std::vector<std::pair<std::string, std::string>>& leq,
                              const std::vector<std::pair<std::string, std::string>>& neg);
    /** Derives tables without validating the laws (used to report on bad candidates). */
    static LatticeTables tables_from_order(const std::vector<std::string>& names,
                                           const std::vector<std::pair<std::string, std::string>>& leq,
                                           const std::vector<std::pair<std::string, std::string>>& neg);

    static Lattice boolean();
    static Lattice chain(int n);   // 0 < 1 < ... < n-1, neg reverses
    static Lattice diamond();      // bot < a,b < top, neg a = b
    static Lattice powerset(int k);

    int size() const { return static_cast<int>(t_.names.size()); }
    const std::string& name(Elem a) const { return t_.names.at(a); }
    Elem index(const std::string& n) const;
    std::optional<Elem> find(const std::string& n) const;

    bool leq(Elem a, Elem b) const { return t_.leq[a][b] != 0; }
    Elem join(Elem a, Elem b) const { return t_.join[a][b]; }
    Elem meet(Elem a, Elem b) const { return t_.meet[a][b]; }
    Elem neg(Elem a) const { return t_.neg[a]; }
    Elem top() const { return top_; }
    Elem bottom() const { return bottom_; }

    Elem join_all(const std::vector<Elem>& xs) const;
    Elem meet_all(const std::vector<Elem>& xs) const;

    /** Join-irreducible elements in index order. */
    const std::vector<Elem>& join_irreducibles() const { return ji_; }
    /** X_l: join-irreducibles below l. */
    std::vector<Elem> ji_below(Elem l) const;

    const LatticeTables& tables() const { return t_; }

private:
    LatticeTables t_;
    Elem top_ = 0;
    Elem bottom_ = 0;
    std::vector<Elem> ji_;
};

enum class LatticeOp { Join, Meet, Neg };

/** Checked table lookup; b must be absent exactly for Neg. */
Elem lattice_algebra(const Lattice& l, LatticeOp op, Elem a, std::optional<Elem> b = std::nullopt);

using LatticePtr = std::shared_ptr<const Lattice>;

} // namespace rsynth
