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

// Brute-force oracles for the equilibrium checks. Strategies are enumerated as
// Mealy machines with lazily filled tables: a table entry is chosen only when a
// simulation first reads it, and fresh memory states are numbered in order of
// first use so isomorphic machines are not revisited.

#pragma once

#include "rsynth/equilibria.hpp"
#include "rsynth/graph.hpp"

#include <functional>
#include <map>
#include <optional>

namespace rsynth::oracle {

struct LazyMealy {
    std::vector<int> players;   // controlled players; outputs are joint choices among them
    int bound = 1;
    int used = 1;
    std::vector<std::vector<int>> out;   // [m][vertex] mixed-radix choice index, -1 = open
    std::vector<std::vector<int>> upd;   // [m][symbol], -1 = open

    LazyMealy(const Arena& a, std::vector<int> controlled, int bound) : players(std::move(controlled)), bound(bound)
    {
        out.assign(bound, std::vector<int>(a.num_vertices(), -1));
        int syms = a.variable ? a.num_joint_codes() : a.num_vertices();
        upd.assign(bound, std::vector<int>(syms, -1));
    }

    int choices(const Arena& a, int v) const
    {
        int n = 1;
        for (int j : players) n *= static_cast<int>(a.available[j][v].size());
        return n;
    }

    /** Action of player j under joint choice x at v. */
    int action(const Arena& a, int v, int x, int j) const
    {
        for (auto it = players.rbegin(); it != players.rend(); ++it) {
            const auto& av = a.available[*it][v];
            int r = static_cast<int>(av.size());
            if (*it == j) return av[x % r];
            x /= r;
        }
        return -1;
    }
};

/** An open table entry requested by a simulation. */
struct Need {
    int machine = -1;
    bool output = false;
    int m = 0;
    int x = 0;
    int vertex = 0;
};

/** A simulation either finishes with a verdict or asks for one open entry. */
struct Step {
    std::optional<Need> need;
    bool value = false;
};

using Simulation = std::function<Step(const std::vector<LazyMealy>&)>;
/** Returns true when no completion of the current partial tables can succeed. */
using Prune = std::function<bool(const std::vector<LazyMealy>&)>;

/** True iff some completion of the open entries makes the simulation return true. */
inline bool exists(const Arena& a, std::vector<LazyMealy>& ms, const Simulation& sim, const Prune& prune = nullptr)
{
    if (prune && prune(ms)) return false;
    Step s = sim(ms);
    if (!s.need) return s.value;
    const Need n = *s.need;
    LazyMealy& M = ms[n.machine];
    if (n.output) {
        for (int act = 0; act < M.choices(a, n.vertex); ++act) {
            M.out[n.m][n.x] = act;
            bool ok = exists(a, ms, sim, prune);
            M.out[n.m][n.x] = -1;
            if (ok) return true;
        }
        return false;
    }
    const int hi = std::min(M.used, M.bound - 1);
    for (int t = 0; t <= hi; ++t) {
        const bool fresh = t == M.used;
        if (fresh) ++M.used;
        M.upd[n.m][n.x] = t;
        bool ok = exists(a, ms, sim, prune);
        M.upd[n.m][n.x] = -1;
        if (fresh) --M.used;
        if (ok) return true;
    }
    return false;
}

inline int symbol_of(const Arena& a, int v, const Tuple& t) { return a.variable ? a.joint_code(t) : v; }

/**
 * Plays from vertex v with fixed strategies for everyone except the players
 * owning a lazy machine. Returns the continuation as a lasso or the first open entry.
 */
struct Run {
    std::optional<Need> need;
    Lasso play;
};

inline Run simulate(const Arena& a, const Profile& fixed, Memories mem, const std::vector<LazyMealy>& ms,
                    const std::vector<int>& machine_of, int v)
{
    // machine_of[i] = index into ms when player i is lazy, else -1; lazy memories live in mem too,
    // and players sharing a machine carry identical copies of its memory
    StateIndex seen;
    std::vector<Position> path;
    while (true) {
        std::vector<int> key = mem;
        key.push_back(v);
        auto [id, fresh] = seen.intern(key);
        if (!fresh) {
            Run r;
            r.play.prefix.assign(path.begin(), path.begin() + id);
            r.play.cycle.assign(path.begin() + id, path.end());
            return r;
        }
        Tuple t(a.num_players());
        for (int i = 0; i < a.num_players(); ++i) {
            if (machine_of[i] < 0) {
                t[i] = fixed[i].output[mem[i]][v];
                continue;
            }
            const LazyMealy& M = ms[machine_of[i]];
            int x = M.out[mem[i]][v];
            if (x < 0) return {Need{machine_of[i], true, mem[i], v, v}, {}};
            t[i] = M.action(a, v, x, i);
        }
        Memories next(mem.size());
        for (int i = 0; i < a.num_players(); ++i) {
            int s = symbol_of(a, v, t);
            if (machine_of[i] < 0) {
                next[i] = fixed[i].update[mem[i]][s];
                continue;
            }
            int x = ms[machine_of[i]].upd[mem[i]][s];
            if (x < 0) return {Need{machine_of[i], false, mem[i], s, v}, {}};
            next[i] = x;
        }
        path.push_back({v, t});
        v = a.delta[v][a.encode(v, t)];
        mem = std::move(next);
    }
}

/**
 * Over-approximation used only for pruning: can some play from v0, where
 * players without a lazy machine follow `fixed` from memories `mem0` and each
 * lazy machine plays its assigned entries and anything at open entries, drive
 * n from some state in q0 to acceptance?
 */
inline bool relaxed_accepting(const Arena& a, const Nbw& n, const std::vector<LazyMealy>& ms, const Profile& fixed,
                              const Memories& mem0, int v0, const std::vector<int>& q0)
{
    const int nm = static_cast<int>(ms.size()), np = a.num_players();
    std::vector<int> owner(np, -1);
    for (int j = 0; j < nm; ++j)
        for (int pl : ms[j].players) owner[pl] = j;
    // key: vertex, memory of each machine, memory of each fixed player (0 if lazy), automaton state
    StateIndex idx;
    Digraph g;
    std::vector<int> init;
    for (int q : q0) {
        std::vector<int> k{v0};
        for (int j = 0; j < nm; ++j) k.push_back(0);
        for (int pl = 0; pl < np; ++pl) k.push_back(owner[pl] < 0 ? mem0[pl] : 0);
        k.push_back(q);
        auto [id, fresh] = idx.intern(k);
        if (fresh) g.add_node();
        init.push_back(id);
    }
    for (int id = 0; id < idx.size(); ++id) {
        const std::vector<int> key = idx.key(id);
        const int v = key[0], q = key.back();
        auto fmem = [&](int pl) { return key[1 + nm + pl]; };
        for (int c = 0; c < a.num_tuples(v); ++c) {
            Tuple t = a.decode(v, c);
            bool ok = true;
            for (int pl = 0; pl < np && ok; ++pl)
                if (owner[pl] < 0) ok = t[pl] == fixed[pl].output[fmem(pl)][v];
            for (int j = 0; j < nm && ok; ++j) {
                int x = ms[j].out[key[1 + j]][v];
                if (x < 0) continue;
                for (int pl : ms[j].players) ok = ok && ms[j].action(a, v, x, pl) == t[pl];
            }
            if (!ok) continue;
            const int sym = symbol_of(a, v, t);
            // successor memories: assigned entries are fixed, open ones may go anywhere
            std::vector<std::vector<int>> opts(nm);
            for (int j = 0; j < nm; ++j) {
                int x = ms[j].upd[key[1 + j]][sym];
                if (x >= 0) opts[j] = {x};
                else
                    for (int y = 0; y < ms[j].bound; ++y) opts[j].push_back(y);
            }
            std::vector<int> fnext(np, 0);
            for (int pl = 0; pl < np; ++pl)
                if (owner[pl] < 0) fnext[pl] = fixed[pl].update[fmem(pl)][sym];
            const Props letter = a.letter(v, t);
            std::vector<int> pick(nm, 0);
            while (true) {
                for (const auto& e : n.edges[q]) {
                    if (!e.matches(letter)) continue;
                    std::vector<int> k{a.delta[v][c]};
                    for (int j = 0; j < nm; ++j) k.push_back(opts[j][pick[j]]);
                    k.insert(k.end(), fnext.begin(), fnext.end());
                    k.push_back(e.to);
                    auto [to, fresh] = idx.intern(k);
                    if (fresh) g.add_node();
                    g.succ[id].push_back({to, 0});
                }
                int j = 0;
                while (j < nm && ++pick[j] == static_cast<int>(opts[j].size())) pick[j++] = 0;
                if (j == nm) break;
            }
        }
    }
    std::vector<char> acc(idx.size());
    for (int id = 0; id < idx.size(); ++id) acc[id] = n.accepting[idx.key(id).back()];
    return find_accepting_lasso(g, init, acc).has_value();
}

inline LassoWord word_after(const Arena& a, const History& full, const Lasso& tail)
{
    Lasso l;
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k) l.prefix.push_back({full.vertices[k], full.tuples[k]});
    l.prefix.insert(l.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    l.cycle = tail.cycle;
    return word_of(a, l);
}

/** Some deviation of player i with memory <= k, started fresh after h, satisfies obj. */
inline bool deviation_exists(const Arena& a, const Profile& p, int i, const Objective& obj, const History& full, int k)
{
    Memories mem = memories_after(a, p, full);
    mem[i] = 0;
    std::vector<int> machine_of(a.num_players(), -1);
    machine_of[i] = 0;
    std::vector<LazyMealy> ms{LazyMealy(a, {i}, k)};
    Simulation sim = [&](const std::vector<LazyMealy>& cur) -> Step {
        Run r = simulate(a, p, mem, cur, machine_of, full.vertices.back());
        if (r.need) return {r.need, false};
        return {std::nullopt, obj.holds(word_after(a, full, r.play))};
    };
    std::vector<int> q0 = obj.pos.initial;
    for (std::size_t k2 = 0; k2 + 1 < full.vertices.size(); ++k2)
        q0 = obj.pos.post(q0, a.letter(full.vertices[k2], full.tuples[k2]));
    Prune prune = [&](const std::vector<LazyMealy>& cur) {
        return !relaxed_accepting(a, obj.pos, cur, p, mem, full.vertices.back(), q0);
    };
    return exists(a, ms, sim, prune);
}

inline bool nash(const Arena& a, const Objectives& objs, const Profile& p, int k)
{
    const History h0{{a.initial}, {}};
    const LassoWord w = word_of(a, outcome(a, p));
    for (int i = 0; i < a.num_players(); ++i)
        if (!objs[i].holds(w) && deviation_exists(a, p, i, objs[i], h0, k)) return false;
    return true;
}

/**
 * Every history with at most `max_len` vertices. For vertex-input profiles and
 * letters without action propositions only the vertex sequence matters, so one
 * history per vertex sequence is visited.
 */
inline bool spe(const Arena& a, const Objectives& objs, const Profile& p, int k, int max_len)
{
    std::function<bool(History&)> visit = [&](History& h) -> bool {
        const LassoWord w = word_of(a, shifted_outcome(a, p, h));
        for (int i = 0; i < a.num_players(); ++i)
            if (!objs[i].holds(w) && deviation_exists(a, p, i, objs[i], h, k)) return false;
        if (static_cast<int>(h.vertices.size()) >= max_len) return true;
        const int v = h.vertices.back();
        std::map<int, int> first_code;   // successor -> smallest tuple code reaching it
        for (int c = 0; c < a.num_tuples(v); ++c) first_code.emplace(a.delta[v][c], c);
        for (auto [w2, c] : first_code) {
            h.vertices.push_back(w2);
            h.tuples.push_back(a.decode(v, c));
            bool ok = visit(h);
            h.vertices.pop_back();
            h.tuples.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    History h{{a.initial}, {}};
    return visit(h);
}

/**
 * Some opponent coalition machine and some deviation, both with memory <= k,
 * such that the deviating play satisfies obj while the play where i keeps p[i]
 * violates it. Both plays run against the same coalition machine. A coalition
 * machine splits into one copy per opponent, so every violation found here is
 * a violation by individual opponent strategies of memory <= k.
 */
inline bool dominance_violated(const Arena& a, const Objective& obj, const Strategy& s, int k)
{
    const int np = a.num_players(), i = s.owner;
    std::vector<int> conforming_of(np, 0), deviating_of(np, 0);
    std::vector<int> opponents;
    for (int j = 0; j < np; ++j)
        if (j != i) opponents.push_back(j);
    std::vector<LazyMealy> ms{LazyMealy(a, opponents, k), LazyMealy(a, {i}, k)};
    conforming_of[i] = -1;
    deviating_of[i] = 1;
    Profile fixed(np);
    fixed[i] = s;
    Memories m0(np, 0);
    m0[i] = s.initial;
    const History h0{{a.initial}, {}};
    Simulation sim = [&](const std::vector<LazyMealy>& cur) -> Step {
        Run ra = simulate(a, fixed, m0, cur, conforming_of, a.initial);
        if (ra.need) return {ra.need, false};
        if (obj.holds(word_of(a, ra.play))) return {std::nullopt, false};
        Run rb = simulate(a, fixed, Memories(np, 0), cur, deviating_of, a.initial);
        if (rb.need) return {rb.need, false};
        return {std::nullopt, obj.holds(word_of(a, rb.play))};
    };
    // relaxations of the two plays separately; they only cut hopeless branches
    Prune prune = [&](const std::vector<LazyMealy>& cur) {
        std::vector<LazyMealy> opp{cur[0]};
        return !relaxed_accepting(a, obj.neg, opp, fixed, m0, a.initial, obj.neg.initial) ||
               !relaxed_accepting(a, obj.pos, cur, fixed, Memories(np, 0), a.initial, obj.pos.initial);
    };
    return exists(a, ms, sim, prune);
}

inline bool dominant(const Arena& a, const Objectives& objs, const Profile& p, int k)
{
    for (int i = 0; i < a.num_players(); ++i)
        if (dominance_violated(a, objs[i], p[i], k)) return false;
    return true;
}

/**
 * Replays a deviation witness: the play starts with h, every player other
 * than `player` follows its strategy from the end of h on, and obj holds.
 */
inline bool deviation_replays(const Arena& a, const Profile& p, int player, const Objective& obj, const History& h,
                              const Lasso& dev)
{
    History full = complete_history(a, h);
    if (dev.cycle.empty()) return false;
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k)
        if (!(dev.at(k) == Position{full.vertices[k], full.tuples[k]})) return false;
    if (dev.at(full.vertices.size() - 1).vertex != full.vertices.back()) return false;
    // unroll until the joint memory at the cycle start repeats
    Memories mem = initial_memories(p);
    std::size_t bound = dev.size();
    for (const auto& s : p) bound *= static_cast<std::size_t>(s.memory);
    bound += dev.size();
    for (std::size_t k = 0; k < bound; ++k) {
        const Position& x = dev.at(k);
        if (a.encode(x.vertex, x.tuple) < 0) return false;
        if (dev.at(k + 1).vertex != a.delta[x.vertex][a.encode(x.vertex, x.tuple)]) return false;
        for (int j = 0; j < a.num_players() && k + 1 >= full.vertices.size(); ++j)
            if (j != player && p[j].output[mem[j]][x.vertex] != x.tuple[j]) return false;
        mem = advance(a, p, mem, x.vertex, x.tuple);
    }
    return obj.holds(word_of(a, dev));
}

} // namespace rsynth::oracle
