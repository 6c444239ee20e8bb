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

#include <vector>

namespace rsynth {

/**
 * Two-player parity game, min-even: a play is won by player 0 iff the least
 * priority seen infinitely often is even. Every node needs a successor.
 */
struct ParityGame {
    std::vector<int> owner;                  // 0 or 1
    std::vector<int> priority;
    std::vector<std::vector<int>> succ;

    int size() const { return static_cast<int>(succ.size()); }
    int add_node(int who, int prio)
    {
        owner.push_back(who);
        priority.push_back(prio);
        succ.emplace_back();
        return size() - 1;
    }
};

struct ParitySolution {
    std::vector<int> winner;     // 0 or 1 per node
    /** Index into succ[v] for the winner's own nodes; -1 elsewhere. */
    std::vector<int> strategy;
};

/** Zielonka's recursive algorithm with positional strategies for both players. */
ParitySolution solve_parity(const ParityGame& g);

} // namespace rsynth
