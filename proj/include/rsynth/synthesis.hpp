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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace rsynth {

/** Player 0 is the system; players 1..n are the agents whose strategies must form a solution. */
struct SynthesisInstance {
    Arena arena;
    Objectives objectives;
    Concept solution = Concept::Nash;
    int memory = 1;
    /** Upper bound on profiles examined by exhaustive enumeration. */
    std::int64_t max_candidates = 2'000'000;
};

struct SynthesisResult {
    std::optional<Profile> profile;
    /** True when every profile within the memory bound was examined (or excluded up front). */
    bool exhaustive = true;
    std::int64_t candidates = 0;
    std::string note;
};

/**
 * Profiles with per-player memory <= k such that the outcome satisfies φ0 and
 * the agents' strategies solve the game for the concept with deviators 1..n.
 * Memory bounds are tried in increasing order; the system's strategy varies
 * slowest. A returned profile has been re-checked before it is returned.
 */
SynthesisResult synthesize_bounded(const SynthesisInstance& inst);

/** Whether some play of the arena satisfies the objective. */
bool objective_satisfiable(const Arena& a, const Objective& obj);

struct EnumerationStats {
    bool found = false;
    bool exhaustive = true;
    std::int64_t candidates = 0;
};

/** A conjunction of automata. */
using Guide = std::vector<const Nbw*>;

/**
 * Enumerates profiles of per-player memory <= k, by increasing largest memory,
 * until `accept` returns true. A memory level whose space does not fit in the
 * remaining candidate budget is replaced by profiles that walk one of the
 * `seeds`, and the result is then marked non-exhaustive.
 */
EnumerationStats enumerate_profiles(const Arena& a, int k, std::int64_t max_candidates,
                                    const std::vector<Lasso>& seeds,
                                    const std::function<bool(const Profile&)>& accept);

/** A play of the arena accepted by every automaton of the guide. */
std::optional<Lasso> arena_lasso(const Arena& a, const Guide& guide);

} // namespace rsynth
