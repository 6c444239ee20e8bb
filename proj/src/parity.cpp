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

#include "rsynth/parity.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsynth {

namespace {

struct Solver {
    const ParityGame& g;
    std::vector<std::vector<int>> pred;
    std::vector<int> strategy;   // successor index, filled for the eventual winner

    explicit Solver(const ParityGame& game) : g(game), pred(game.size()), strategy(game.size(), -1)
    {
        for (int v = 0; v < g.size(); ++v)
            for (int w : g.succ[v]) pred[w].push_back(v);
    }

    /**
     * Attractor for `player` to `target` inside `alive`; records attractor moves
     * for the player's nodes into `moves`.
     */
    std::vector<char> attractor(const std::vector<char>& alive, const std::vector<char>& target, int player,
                                std::vector<int>& moves)
    {
        const int n = g.size();
        std::vector<char> in(n, 0);
        std::vector<int> count(n, 0), queue;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (target[v]) {
                in[v] = 1;
                queue.push_back(v);
            }
            for (int w : g.succ[v]) count[v] += alive[w] ? 1 : 0;
        }
        for (std::size_t k = 0; k < queue.size(); ++k) {
            const int w = queue[k];
            for (int v : pred[w]) {
                if (!alive[v] || in[v]) continue;
                if (g.owner[v] == player) {
                    in[v] = 1;
                    auto it = std::find(g.succ[v].begin(), g.succ[v].end(), w);
                    moves[v] = static_cast<int>(it - g.succ[v].begin());
                    queue.push_back(v);
                } else if (--count[v] == 0) {
                    in[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        return in;
    }

    /** Returns the winner per alive node (-1 for dead ones); fills `moves` for winners' nodes. */
    std::vector<int> solve(const std::vector<char>& alive, std::vector<int>& moves)
    {
        const int n = g.size();
        std::vector<int> win(n, -1);
        int p = -1;
        for (int v = 0; v < n; ++v)
            if (alive[v] && (p < 0 || g.priority[v] < p)) p = g.priority[v];
        if (p < 0) return win;
        const int me = p % 2;

        std::vector<char> top(n, 0);
        for (int v = 0; v < n; ++v) top[v] = alive[v] && g.priority[v] == p;
        std::vector<int> attr_moves(n, -1);
        std::vector<char> a = attractor(alive, top, me, attr_moves);
        std::vector<char> rest(n, 0);
        for (int v = 0; v < n; ++v) rest[v] = alive[v] && !a[v];
        std::vector<int> sub_moves(n, -1);
        std::vector<int> sub = solve(rest, sub_moves);

        bool opponent_wins_some = false;
        for (int v = 0; v < n; ++v)
            if (rest[v] && sub[v] == 1 - me) opponent_wins_some = true;

        if (!opponent_wins_some) {
            for (int v = 0; v < n; ++v) {
                if (!alive[v]) continue;
                win[v] = me;
                if (g.owner[v] != me) continue;
                if (rest[v]) moves[v] = sub_moves[v];
                else if (attr_moves[v] >= 0) moves[v] = attr_moves[v];
                else
                    for (std::size_t e = 0; e < g.succ[v].size(); ++e)
                        if (alive[g.succ[v][e]]) {
                            moves[v] = static_cast<int>(e);
                            break;
                        }
            }
            return win;
        }

        std::vector<char> lost(n, 0);
        for (int v = 0; v < n; ++v) lost[v] = rest[v] && sub[v] == 1 - me;
        std::vector<int> b_moves(n, -1);
        std::vector<char> b = attractor(alive, lost, 1 - me, b_moves);
        std::vector<char> rest2(n, 0);
        for (int v = 0; v < n; ++v) rest2[v] = alive[v] && !b[v];
        std::vector<int> sub2_moves(n, -1);
        std::vector<int> sub2 = solve(rest2, sub2_moves);
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (b[v]) {
                win[v] = 1 - me;
                if (g.owner[v] == 1 - me) moves[v] = lost[v] ? sub_moves[v] : b_moves[v];
            } else {
                win[v] = sub2[v];
                if (g.owner[v] == sub2[v]) moves[v] = sub2_moves[v];
            }
        }
        return win;
    }
};

} // namespace

ParitySolution solve_parity(const ParityGame& g)
{
    for (int v = 0; v < g.size(); ++v)
        if (g.succ[v].empty()) throw std::invalid_argument("parity game node without successor");
    Solver s(g);
    std::vector<char> alive(g.size(), 1);
    std::vector<int> moves(g.size(), -1);
    ParitySolution out;
    out.winner = s.solve(alive, moves);
    out.strategy = std::move(moves);
    return out;
}

} // namespace rsynth
