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

#include "gen.hpp"
#include "rsynth/graph.hpp"
#include "rsynth/latticed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

namespace rsynth::gen {

/** Out-degree 1..3, values biased towards top, acceptance values uniform. */
inline LatticedGame random_latticed_game(Rng& r, const LatticePtr& L, int max_vertices)
{
    LatticedGame g;
    g.lattice = L;
    const int n = uniform(r, 1, max_vertices);
    for (int u = 0; u < n; ++u) {
        g.vertices.push_back("u" + std::to_string(u));
        g.or_vertex.push_back(static_cast<char>(uniform(r, 0, 1)));
        g.accept.push_back(uniform(r, 0, L->size() - 1));
        std::vector<int> targets(n);
        for (int v = 0; v < n; ++v) targets[v] = v;
        std::shuffle(targets.begin(), targets.end(), r);
        targets.resize(uniform(r, 1, std::min(3, n)));
        std::sort(targets.begin(), targets.end());
        std::vector<LatticedEdge> es;
        for (int v : targets) {
            Elem val = uniform(r, 0, 1) ? L->top() : uniform(r, 0, L->size() - 1);
            if (!g.or_vertex[u] && uniform(r, 0, 1)) val = L->bottom();
            es.push_back({v, val});
        }
        g.edges.push_back(es);
    }
    g.initial = 0;
    return g;
}

inline Ldbw random_ldbw(Rng& r, const LatticePtr& L, const std::vector<std::string>& props, int max_states)
{
    Ldbw a;
    a.lattice = L;
    a.props = props;
    a.num_states = uniform(r, 1, max_states);
    for (int q = 0; q < a.num_states; ++q) {
        std::vector<int> d;
        std::vector<Elem> val;
        for (int c = 0; c < a.num_letters(); ++c) {
            d.push_back(uniform(r, 0, a.num_states - 1));
            val.push_back(uniform(r, 0, 3) ? L->top() : uniform(r, 0, L->size() - 1));
        }
        a.delta.push_back(d);
        a.value.push_back(val);
        a.accept.push_back(uniform(r, 0, L->size() - 1));
    }
    return a;
}

} // namespace rsynth::gen

namespace rsynth::loracle {

/** Tracker update written out from the lattice tables. */
inline std::pair<Elem, Elem> step(const LatticedGame& g, int u, int v, Elem x, Elem y)
{
    const auto& t = g.lattice->tables();
    Elem e = -1;
    for (const auto& ed : g.edges[u])
        if (ed.to == v) e = ed.value;
    if (g.or_vertex[u]) return {t.meet[x][t.join[e][y]], y};
    return {x, t.join[y][t.meet[e][x]]};
}

/**
 * Every play consistent with the ∨ strategy has value >= l. Checked per
 * join-irreducible j <= l: trackers are constant on cycles, so a play below j
 * exists iff some reachable cycle stays where y is not above j and either x
 * is not above j or F is not above j.
 */
inline bool ensures(const LatticedGame& g, const LatticedStrategy& s, Elem l)
{
    const Lattice& L = *g.lattice;
    StateIndex idx;
    Digraph d;
    auto add = [&](std::vector<int> k) {
        auto [id, fresh] = idx.intern(k);
        if (fresh) d.add_node();
        return id;
    };
    add({g.initial, 0, L.top(), L.bottom()});
    for (int id = 0; id < idx.size(); ++id) {
        auto key = idx.key(id);
        const int u = key[0], m = key[1];
        std::vector<int> moves;
        if (g.or_vertex[u]) {
            if (s.choice[m][u] < 0 || !g.edge_value(u, s.choice[m][u])) return false;
            moves.push_back(s.choice[m][u]);
        } else {
            for (const auto& e : g.edges[u]) moves.push_back(e.to);
        }
        for (int v : moves) {
            auto [x, y] = step(g, u, v, key[2], key[3]);
            int t = add({v, s.update[m][v], x, y});
            d.succ[id].push_back({t, 0});
        }
    }
    for (Elem j : L.ji_below(l)) {
        std::vector<char> alive(idx.size());
        for (int id = 0; id < idx.size(); ++id) {
            const auto& k = idx.key(id);
            alive[id] = !L.leq(j, k[3]) && (!L.leq(j, k[2]) || !L.leq(j, g.accept[k[0]]));
        }
        Sccs c = strongly_connected(d, &alive);
        for (int id = 0; id < idx.size(); ++id)
            if (alive[id] && c.nontrivial[c.comp[id]]) return false;
    }
    return true;
}

/**
 * Some ∨ strategy with at most `bound` memory states ensures l. Tables are
 * filled on first use (fresh states numbered in order); a partial strategy is
 * dropped as soon as its fully determined part already contains a bad cycle.
 */
inline bool brute_force_ensures(const LatticedGame& g, Elem l, int bound)
{
    const Lattice& L = *g.lattice;
    const int n = g.num_vertices();
    const std::vector<Elem> targets = L.ji_below(l);
    struct Partial {
        std::vector<std::vector<int>> choice, update;
        int used = 1;
    };
    Partial p;
    p.choice.assign(bound, std::vector<int>(n, -1));
    p.update.assign(bound, std::vector<int>(n, -1));

    // returns 1 = ensures, 0 = bad cycle already, -1 = needs entry (out), with the entry
    std::function<bool(Partial&)> search = [&](Partial& cur) -> bool {
        StateIndex idx;
        Digraph d;
        std::vector<char> open;
        auto add = [&](std::vector<int> k) {
            auto [id, fresh] = idx.intern(k);
            if (fresh) {
                d.add_node();
                open.push_back(0);
            }
            return id;
        };
        int need_kind = -1, need_m = -1, need_u = -1;
        add({g.initial, 0, L.top(), L.bottom()});
        for (int id = 0; id < idx.size(); ++id) {
            auto key = idx.key(id);
            const int u = key[0], m = key[1];
            std::vector<int> moves;
            if (g.or_vertex[u]) {
                if (cur.choice[m][u] < 0) {
                    open[id] = 1;
                    if (need_kind < 0) need_kind = 0, need_m = m, need_u = u;
                    continue;
                }
                moves.push_back(cur.choice[m][u]);
            } else {
                for (const auto& e : g.edges[u]) moves.push_back(e.to);
            }
            for (int v : moves) {
                if (cur.update[m][v] < 0) {
                    open[id] = 1;
                    if (need_kind < 0) need_kind = 1, need_m = m, need_u = v;
                    continue;
                }
                auto [x, y] = step(g, u, v, key[2], key[3]);
                int t = add({v, cur.update[m][v], x, y});
                d.succ[id].push_back({t, 0});
            }
        }
        for (Elem j : targets) {
            std::vector<char> alive(idx.size());
            for (int id = 0; id < idx.size(); ++id) {
                const auto& k = idx.key(id);
                alive[id] = !L.leq(j, k[3]) && (!L.leq(j, k[2]) || !L.leq(j, g.accept[k[0]]));
            }
            Sccs c = strongly_connected(d, &alive);
            for (int id = 0; id < idx.size(); ++id)
                if (alive[id] && c.nontrivial[c.comp[id]]) return false;
        }
        if (need_kind < 0) return true;
        if (need_kind == 0) {
            for (const auto& e : g.edges[need_u]) {
                cur.choice[need_m][need_u] = e.to;
                if (search(cur)) return true;
            }
            cur.choice[need_m][need_u] = -1;
            return false;
        }
        const int limit = std::min(cur.used + 1, bound);
        for (int t = 0; t < limit; ++t) {
            const int saved = cur.used;
            if (t == cur.used) ++cur.used;
            cur.update[need_m][need_u] = t;
            bool ok = search(cur);
            cur.used = saved;
            if (ok) return true;
        }
        cur.update[need_m][need_u] = -1;
        return false;
    };
    return search(p);
}

/** Classical Büchi game: repeatedly remove the ∧-attractor of what ∨ cannot bring back to F. */
inline std::vector<char> classical_buchi_winning(const std::vector<char>& or_vertex,
                                                 const std::vector<std::vector<int>>& succ,
                                                 const std::vector<char>& accepting)
{
    const int n = static_cast<int>(succ.size());
    std::vector<char> alive(n, 1);
    auto attractor = [&](std::vector<char> target, bool for_or) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int v = 0; v < n; ++v) {
                if (!alive[v] || target[v]) continue;
                bool mine = static_cast<bool>(or_vertex[v]) == for_or;
                bool any = false, all = true;
                for (int w : succ[v]) {
                    if (!alive[w]) continue;
                    any = any || target[w];
                    all = all && target[w];
                }
                if (mine ? any : all) {
                    target[v] = 1;
                    grew = true;
                }
            }
        }
        return target;
    };
    while (true) {
        std::vector<char> f(n, 0);
        for (int v = 0; v < n; ++v) f[v] = alive[v] && accepting[v];
        // vertices from which ∨ can force a visit to F in at least one step: μY. Cpre(F ∪ Y)
        std::vector<char> reach(n, 0);
        for (bool grew = true; grew;) {
            grew = false;
            for (int v = 0; v < n; ++v) {
                if (!alive[v] || reach[v]) continue;
                bool any = false, all = true;
                for (int w : succ[v]) {
                    if (!alive[w]) continue;
                    const bool in = f[w] || reach[w];
                    any = any || in;
                    all = all && in;
                }
                if (or_vertex[v] ? any : all) reach[v] = grew = true;
            }
        }
        std::vector<char> lose(n, 0);
        bool some = false;
        for (int v = 0; v < n; ++v)
            if (alive[v] && !reach[v]) lose[v] = some = 1;
        if (!some) return alive;
        lose = attractor(lose, false);
        for (int v = 0; v < n; ++v)
            if (lose[v]) alive[v] = 0;
    }
}

/**
 * Classical reading of a game over the 2-element lattice: a bottom edge taken
 * by ∨ loses, a top edge taken by ∧ wins (whichever comes first), otherwise
 * Büchi on F = top. Vertices n and n+1 are the winning and losing sinks.
 */
struct ClassicalGame {
    std::vector<char> or_vertex;
    std::vector<std::vector<int>> succ;
    std::vector<char> accepting;
};

inline ClassicalGame classical_of(const LatticedGame& g)
{
    const Lattice& L = *g.lattice;
    const int n = g.num_vertices();
    ClassicalGame c;
    c.or_vertex = g.or_vertex;
    c.or_vertex.push_back(1);
    c.or_vertex.push_back(1);
    for (int u = 0; u < n; ++u) {
        std::vector<int> s;
        for (const auto& e : g.edges[u]) {
            if (g.or_vertex[u] && e.value == L.bottom()) s.push_back(n + 1);
            else if (!g.or_vertex[u] && e.value == L.top()) s.push_back(n);
            else s.push_back(e.to);
        }
        c.succ.push_back(s);
        c.accepting.push_back(g.accept[u] == L.top());
    }
    c.succ.push_back({n});
    c.succ.push_back({n + 1});
    c.accepting.push_back(1);
    c.accepting.push_back(0);
    return c;
}

/** Classical value of a vertex lasso under the same reading. */
inline bool classical_play_wins(const LatticedGame& g, const VertexLasso& play)
{
    const Lattice& L = *g.lattice;
    std::vector<int> seq = play.prefix;
    for (int k = 0; k < 2; ++k) seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
    seq.push_back(play.cycle.front());
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const int u = seq[k];
        const Elem e = *g.edge_value(u, seq[k + 1]);
        if (g.or_vertex[u] && e == L.bottom()) return false;
        if (!g.or_vertex[u] && e == L.top()) return true;
    }
    for (int v : play.cycle)
        if (g.accept[v] == L.top()) return true;
    return false;
}

/** Deterministic Büchi acceptance over the 2-element lattice by direct simulation. */
inline bool classical_dbw_accepts(const Ldbw& a, const LassoWord& w)
{
    const Elem top = a.lattice->top();
    int q = a.initial;
    for (Props p : w.prefix) {
        if (a.value[q][p] != top) return false;
        q = a.delta[q][p];
    }
    std::map<int, int> seen;
    std::vector<char> acc_turn;
    while (!seen.count(q)) {
        seen[q] = static_cast<int>(acc_turn.size());
        bool acc = false;
        for (Props p : w.cycle) {
            if (a.accept[q] == top) acc = true;
            if (a.value[q][p] != top) return false;
            q = a.delta[q][p];
        }
        acc_turn.push_back(acc);
    }
    for (std::size_t t = seen[q]; t < acc_turn.size(); ++t)
        if (acc_turn[t]) return true;
    return false;
}

/**
 * Best payoff deviator i reaches over deviation lassos with at most `max_len`
 * positions (others follow p), as the set of join-irreducibles some lasso
 * reaches. Brute force over position sequences and loop points.
 */
inline std::vector<Elem> deviation_reach(const Arena& a, const Ldbw& aut, const Profile& p, int i, int max_len)
{
    const Lattice& L = *aut.lattice;
    std::vector<Elem> reached;
    std::vector<std::vector<int>> configs;   // (v, memories)
    std::vector<Position> path;
    std::function<void(std::vector<int>)> dfs = [&](std::vector<int> cfg) {
        const int v = cfg[0];
        configs.push_back(cfg);
        for (int c = 0; c < a.num_tuples(v); ++c) {
            const Tuple t = a.decode(v, c);
            bool follows = true;
            for (int j = 0; j < a.num_players(); ++j)
                if (j != i && p[j].output[cfg[1 + j]][v] != t[j]) follows = false;
            if (!follows || a.delta[v][c] < 0) continue;
            std::vector<int> next{a.delta[v][c]};
            for (int j = 0; j < a.num_players(); ++j)
                next.push_back(j == i ? 0 : p[j].update[cfg[1 + j]][p[j].symbol(a, v, t)]);
            path.push_back({v, t});
            for (std::size_t k = 0; k < configs.size(); ++k)
                if (configs[k] == next) {
                    Lasso l;
                    l.prefix.assign(path.begin(), path.begin() + static_cast<long>(k));
                    l.cycle.assign(path.begin() + static_cast<long>(k), path.end());
                    Elem val = ldbw_payoff(aut, word_of(a, l));
                    for (Elem j : L.join_irreducibles())
                        if (L.leq(j, val) && std::find(reached.begin(), reached.end(), j) == reached.end())
                            reached.push_back(j);
                }
            if (static_cast<int>(path.size()) < max_len) dfs(next);
            path.pop_back();
        }
        configs.pop_back();
    };
    std::vector<int> init{a.initial};
    for (int j = 0; j < a.num_players(); ++j) init.push_back(j == i ? 0 : p[j].initial);
    dfs(init);
    return reached;
}

/** Latticed Nash by deviation-lasso brute force. */
inline bool latticed_nash(const Arena& a, const LatticedObjectives& objs, const Profile& p, int max_len)
{
    const LassoWord w = word_of(a, outcome(a, p));
    for (int i = 0; i < a.num_players(); ++i) {
        const Lattice& L = *objs[i].lattice;
        const Elem have = ldbw_payoff(objs[i], w);
        for (Elem j : deviation_reach(a, objs[i], p, i, max_len))
            if (!L.leq(j, have)) return false;
    }
    return true;
}

} // namespace rsynth::loracle
