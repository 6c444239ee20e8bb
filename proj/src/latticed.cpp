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

#include "rsynth/latticed.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>
#include <map>

namespace rsynth {

std::optional<Elem> LatticedGame::edge_value(int u, int v) const
{
    for (const auto& e : edges[u])
        if (e.to == v) return e.value;
    return std::nullopt;
}

ArenaReport validate_latticed_game(const LatticedGame& g)
{
    ArenaReport r;
    if (!g.lattice) {
        r.errors.push_back("latticed game has no lattice");
        return r;
    }
    const int n = g.num_vertices();
    const int nl = g.lattice->size();
    if (n == 0) r.errors.push_back("latticed game has no vertices");
    if (static_cast<int>(g.or_vertex.size()) != n || static_cast<int>(g.edges.size()) != n ||
        static_cast<int>(g.accept.size()) != n) {
        r.errors.push_back("vertex tables do not match the vertex count");
        return r;
    }
    if (g.initial < 0 || g.initial >= n) r.errors.push_back("initial vertex out of range");
    for (int u = 0; u < n; ++u) {
        if (g.accept[u] < 0 || g.accept[u] >= nl) r.errors.push_back("acceptance value out of range at " + g.vertices[u]);
        if (g.edges[u].empty()) r.errors.push_back("vertex " + g.vertices[u] + " has no outgoing edge");
        for (std::size_t k = 0; k < g.edges[u].size(); ++k) {
            const auto& e = g.edges[u][k];
            if (e.to < 0 || e.to >= n) r.errors.push_back("edge target out of range at " + g.vertices[u]);
            else if (k > 0 && g.edges[u][k - 1].to >= e.to)
                r.errors.push_back("edges of " + g.vertices[u] + " are not sorted by distinct targets");
            if (e.value < 0 || e.value >= nl) r.errors.push_back("edge value out of range at " + g.vertices[u]);
        }
    }
    return r;
}

std::pair<Elem, Elem> tracker_step(const LatticedGame& g, int u, int v, Elem x, Elem y)
{
    const Lattice& L = *g.lattice;
    auto e = g.edge_value(u, v);
    if (!e) throw ArenaError("no edge " + g.vertices[u] + " -> " + g.vertices[v]);
    if (g.or_vertex[u]) return {L.meet(x, L.join(*e, y)), y};
    return {x, L.join(y, L.meet(*e, x))};
}

namespace {

/** Join of the join-irreducibles secured by limit trackers and the recurring acceptance values. */
Elem limit_value(const Lattice& L, Elem x, Elem y, const std::vector<Elem>& recurring)
{
    Elem out = L.bottom();
    for (Elem j : L.join_irreducibles()) {
        bool ok = L.leq(j, y);
        if (!ok && L.leq(j, x))
            for (Elem f : recurring) ok = ok || L.leq(j, f);
        if (ok) out = L.join(out, j);
    }
    return out;
}

} // namespace

Elem play_value(const LatticedGame& g, const VertexLasso& play)
{
    if (play.cycle.empty()) throw ArenaError("play has an empty cycle");
    std::vector<int> seq = play.prefix;
    seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
    for (int v : seq)
        if (v < 0 || v >= g.num_vertices()) throw ArenaError("play vertex out of range");
    Elem x = g.lattice->top(), y = g.lattice->bottom();
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) std::tie(x, y) = tracker_step(g, seq[k], seq[k + 1], x, y);
    // trackers are monotone, so a full turn that leaves them unchanged leaves every position unchanged
    while (true) {
        auto [nx, ny] = tracker_step(g, play.cycle.back(), play.cycle.front(), x, y);
        for (std::size_t k = 0; k + 1 < play.cycle.size(); ++k)
            std::tie(nx, ny) = tracker_step(g, play.cycle[k], play.cycle[k + 1], nx, ny);
        if (nx == x && ny == y) break;
        x = nx;
        y = ny;
    }
    std::vector<Elem> recurring;
    for (int v : play.cycle) recurring.push_back(g.accept[v]);
    return limit_value(*g.lattice, x, y, recurring);
}

namespace {

/** Cpre for the ∨-player: some successor (∨) or every successor (∧) in `set`. */
bool cpre(const BuchiGame& g, int v, const std::vector<char>& set)
{
    if (g.or_vertex[v]) {
        for (int w : g.succ[v])
            if (set[w]) return true;
        return false;
    }
    for (int w : g.succ[v])
        if (!set[w]) return false;
    return true;
}

/** ∨-attractor of `target`, with the round in which each vertex joined (-1 outside). */
std::vector<int> attractor_ranks(const BuchiGame& g, const std::vector<char>& target)
{
    const int n = g.size();
    std::vector<int> rank(n, -1);
    std::vector<char> in(n, 0);
    for (int v = 0; v < n; ++v)
        if (target[v]) {
            rank[v] = 0;
            in[v] = 1;
        }
    for (int round = 1;; ++round) {
        std::vector<int> added;
        for (int v = 0; v < n; ++v)
            if (!in[v] && cpre(g, v, in)) added.push_back(v);
        if (added.empty()) break;
        for (int v : added) {
            in[v] = 1;
            rank[v] = round;
        }
    }
    return rank;
}

std::vector<std::vector<char>> family_of(const BuchiGame& g)
{
    if (!g.accepting.empty()) return g.accepting;
    return {std::vector<char>(g.size(), 1)};
}

} // namespace

BuchiSolution solve_generalized_buchi(const BuchiGame& g)
{
    const int n = g.size();
    const auto family = family_of(g);
    const int k = static_cast<int>(family.size());
    std::vector<char> z(n, 1);
    std::vector<std::vector<int>> ranks(k);
    while (true) {
        std::vector<char> nz(n, 1);
        for (int j = 0; j < k; ++j) {
            std::vector<char> target(n, 0);
            for (int v = 0; v < n; ++v) target[v] = family[j][v] && z[v] && cpre(g, v, z);
            ranks[j] = attractor_ranks(g, target);
            for (int v = 0; v < n; ++v) nz[v] = nz[v] && ranks[j][v] >= 0;
        }
        if (nz == z) break;
        z = std::move(nz);
    }

    BuchiSolution sol;
    sol.winning = z;
    sol.or_wins = n > 0 && z[g.initial];
    if (!sol.or_wins) return sol;

    BuchiStrategy s;
    s.memory = k;
    s.move.assign(n, std::vector<int>(k, -1));
    s.next.assign(n, std::vector<int>(k, 0));
    for (int v = 0; v < n; ++v)
        for (int m = 0; m < k; ++m) {
            s.next[v][m] = family[m][v] ? (m + 1) % k : m;
            if (!g.or_vertex[v] || !z[v]) continue;
            const auto& r = ranks[m];
            for (std::size_t e = 0; e < g.succ[v].size() && s.move[v][m] < 0; ++e) {
                int w = g.succ[v][e];
                if (r[v] == 0 ? z[w] != 0 : (r[w] >= 0 && r[w] < r[v])) s.move[v][m] = static_cast<int>(e);
            }
        }
    s.initial = s.next[g.initial][0];
    if (!buchi_strategy_wins(g, s)) throw std::logic_error("generalized Buchi strategy failed its own check");
    sol.strategy = std::move(s);
    return sol;
}

bool buchi_strategy_wins(const BuchiGame& g, const BuchiStrategy& s)
{
    const auto family = family_of(g);
    StateIndex idx;
    Digraph d;
    auto add = [&](int v, int m) {
        auto [id, fresh] = idx.intern({v, m});
        if (fresh) d.add_node();
        return id;
    };
    add(g.initial, s.initial);
    for (int id = 0; id < idx.size(); ++id) {
        const int v = idx.key(id)[0], m = idx.key(id)[1];
        if (g.or_vertex[v]) {
            const int e = s.move[v][m];
            if (e < 0 || e >= static_cast<int>(g.succ[v].size())) return false;
            const int w = g.succ[v][e];
            int t = add(w, s.next[w][m]);
            d.succ[id].push_back({t, 0});
        } else {
            for (int w : g.succ[v]) {
                int t = add(w, s.next[w][m]);
                d.succ[id].push_back({t, 0});
            }
        }
        if (d.succ[id].empty()) return false;
    }
    for (const auto& f : family) {
        std::vector<char> alive(idx.size());
        for (int id = 0; id < idx.size(); ++id) alive[id] = !f[idx.key(id)[0]];
        Sccs c = strongly_connected(d, &alive);
        for (int id = 0; id < idx.size(); ++id)
            if (alive[id] && c.nontrivial[c.comp[id]]) return false;
    }
    return true;
}

SimplifiedGame simplify_game(const LatticedGame& g, Elem l)
{
    const Lattice& L = *g.lattice;
    SimplifiedGame s;
    s.targets = L.ji_below(l);
    StateIndex idx;
    auto add = [&](int u, Elem x, Elem y) {
        auto [id, fresh] = idx.intern({u, x, y});
        if (fresh) {
            s.vertex.push_back(u);
            s.x.push_back(x);
            s.y.push_back(y);
            s.game.or_vertex.push_back(g.or_vertex[u]);
            s.game.succ.emplace_back();
        }
        return id;
    };
    add(g.initial, L.top(), L.bottom());
    for (int id = 0; id < idx.size(); ++id) {
        const int u = s.vertex[id];
        for (const auto& e : g.edges[u]) {
            auto [x, y] = tracker_step(g, u, e.to, s.x[id], s.y[id]);
            int t = add(e.to, x, y);
            s.game.succ[id].push_back(t);
        }
    }
    s.game.initial = 0;
    for (Elem j : s.targets) {
        std::vector<char> f(idx.size(), 0);
        for (int id = 0; id < idx.size(); ++id)
            f[id] = L.leq(j, s.y[id]) || (L.leq(j, g.accept[s.vertex[id]]) && L.leq(j, s.x[id]));
        s.game.accepting.push_back(std::move(f));
    }
    return s;
}

EnsureResult can_ensure(const LatticedGame& g, Elem l)
{
    SimplifiedGame s = simplify_game(g, l);
    BuchiSolution sol = solve_generalized_buchi(s.game);
    EnsureResult r;
    r.ensured = sol.or_wins;
    if (!r.ensured) return r;

    // pulled back: memory = (node of G_l, target index); the node fixes the trackers
    const BuchiStrategy& bs = *sol.strategy;
    const int n = g.num_vertices();
    StateIndex idx;
    LatticedStrategy out;
    auto add = [&](int node, int m) {
        auto [id, fresh] = idx.intern({node, m});
        if (fresh) {
            out.choice.emplace_back(n, -1);
            out.update.emplace_back(n, 0);
        }
        return id;
    };
    add(s.game.initial, bs.initial);
    for (int id = 0; id < idx.size(); ++id) {
        const int node = idx.key(id)[0], m = idx.key(id)[1];
        const int u = s.vertex[node];
        if (g.or_vertex[u]) out.choice[id][u] = s.vertex[s.game.succ[node][bs.move[node][m]]];
        for (int w : s.game.succ[node]) {
            int t = add(w, bs.next[w][m]);
            out.update[id][s.vertex[w]] = t;
        }
    }
    out.memory = idx.size();
    r.witness = std::move(out);
    return r;
}

std::vector<Elem> achievable_values(const LatticedGame& g)
{
    const Lattice& L = *g.lattice;
    std::vector<Elem> ok;
    for (Elem l = 0; l < L.size(); ++l)
        if (can_ensure(g, l).ensured) ok.push_back(l);
    std::vector<Elem> out;
    for (Elem l : ok) {
        bool maximal = true;
        for (Elem m : ok)
            if (m != l && L.leq(l, m)) maximal = false;
        if (maximal) out.push_back(l);
    }
    return out;
}

ArenaReport validate_ldbw(const Ldbw& a)
{
    ArenaReport r;
    if (!a.lattice) {
        r.errors.push_back("automaton has no lattice");
        return r;
    }
    if (a.props.size() > 16) r.errors.push_back("too many propositions for an explicit alphabet");
    if (a.num_states < 1) r.errors.push_back("automaton needs at least one state");
    if (a.initial < 0 || a.initial >= a.num_states) r.errors.push_back("initial state out of range");
    if (static_cast<int>(a.delta.size()) != a.num_states || static_cast<int>(a.value.size()) != a.num_states ||
        static_cast<int>(a.accept.size()) != a.num_states) {
        r.errors.push_back("state tables do not match the state count");
        return r;
    }
    const int nl = a.lattice->size();
    for (int q = 0; q < a.num_states; ++q) {
        if (a.accept[q] < 0 || a.accept[q] >= nl) r.errors.push_back("acceptance value out of range");
        if (static_cast<int>(a.delta[q].size()) != a.num_letters() ||
            static_cast<int>(a.value[q].size()) != a.num_letters()) {
            r.errors.push_back("transition map of state " + std::to_string(q) + " is not total");
            continue;
        }
        for (int c = 0; c < a.num_letters(); ++c) {
            if (a.delta[q][c] < 0 || a.delta[q][c] >= a.num_states) r.errors.push_back("transition target out of range");
            if (a.value[q][c] < 0 || a.value[q][c] >= nl) r.errors.push_back("transition value out of range");
        }
    }
    return r;
}

namespace {

int letter_index(const Ldbw& a, Props p)
{
    if (p >= static_cast<Props>(a.num_letters())) throw ArenaError("letter outside the automaton alphabet");
    return static_cast<int>(p);
}

} // namespace

Elem ldbw_payoff(const Ldbw& a, const LassoWord& w)
{
    if (w.cycle.empty()) throw ArenaError("word has an empty cycle");
    const Lattice& L = *a.lattice;
    Elem meet = L.top();
    int q = a.initial;
    for (Props p : w.prefix) {
        int c = letter_index(a, p);
        meet = L.meet(meet, a.value[q][c]);
        q = a.delta[q][c];
    }
    std::map<int, int> turn_of;   // state at the start of a turn -> turn number
    std::vector<int> starts;
    while (!turn_of.count(q)) {
        turn_of[q] = static_cast<int>(starts.size());
        starts.push_back(q);
        for (Props p : w.cycle) {
            int c = letter_index(a, p);
            meet = L.meet(meet, a.value[q][c]);
            q = a.delta[q][c];
        }
    }
    Elem acc = L.bottom();
    for (std::size_t t = turn_of[q]; t < starts.size(); ++t) {
        int r = starts[t];
        for (Props p : w.cycle) {
            acc = L.join(acc, a.accept[r]);
            r = a.delta[r][letter_index(a, p)];
        }
    }
    return L.meet(meet, acc);
}

Objective ldbw_to_objective(const Ldbw& a)
{
    const Lattice& L = *a.lattice;
    if (L.size() != 2) throw LatticeError("only automata over the 2-element lattice have a Boolean objective");
    const Props mask = static_cast<Props>(a.num_letters() - 1);
    auto guard = [&](int c, int to) { return NbwEdge{static_cast<Props>(c), mask & ~static_cast<Props>(c), to}; };
    const int n = a.num_states;
    auto top = [&](Elem e) { return e == L.top(); };

    Nbw pos;
    pos.num_states = n;
    pos.initial = {a.initial};
    pos.edges.resize(n);
    pos.accepting.resize(n);
    for (int q = 0; q < n; ++q) {
        pos.accepting[q] = top(a.accept[q]);
        for (int c = 0; c < a.num_letters(); ++c)
            if (top(a.value[q][c])) pos.edges[q].push_back(guard(c, a.delta[q][c]));
    }

    // complement: a bottom transition, or from some point on only non-accepting states
    Nbw neg;
    const int sink = 2 * n;
    neg.num_states = 2 * n + 1;
    neg.edges.resize(neg.num_states);
    neg.accepting.assign(neg.num_states, 0);
    neg.accepting[sink] = 1;
    neg.initial = {a.initial};
    if (!top(a.accept[a.initial])) neg.initial.push_back(n + a.initial);
    for (int c = 0; c < a.num_letters(); ++c) neg.edges[sink].push_back(guard(c, sink));
    for (int q = 0; q < n; ++q) {
        if (!top(a.accept[q])) neg.accepting[n + q] = 1;
        for (int c = 0; c < a.num_letters(); ++c) {
            const int t = a.delta[q][c];
            if (!top(a.value[q][c])) {
                neg.edges[q].push_back(guard(c, sink));
                if (!top(a.accept[q])) neg.edges[n + q].push_back(guard(c, sink));
                continue;
            }
            neg.edges[q].push_back(guard(c, t));
            if (!top(a.accept[t])) {
                neg.edges[q].push_back(guard(c, n + t));
                if (!top(a.accept[q])) neg.edges[n + q].push_back(guard(c, n + t));
            }
        }
    }
    return Objective::from_automata(std::move(pos), std::move(neg));
}

namespace {

void check_latticed_inputs(const Arena& a, const LatticedObjectives& objs, const Profile& p)
{
    if (static_cast<int>(objs.size()) != a.num_players())
        throw ArenaError("expected " + std::to_string(a.num_players()) + " objectives, got " +
                         std::to_string(objs.size()));
    for (const auto& o : objs) {
        ArenaReport r = validate_ldbw(o);
        if (!r.ok()) throw ArenaError("invalid automaton: " + r.errors.front());
        if (o.props != a.props) throw ArenaError("automaton propositions differ from the arena's");
    }
    ArenaReport r = validate_profile(a, p);
    if (!r.ok()) throw ArenaError(r.errors.front());
}

/** Arena x LDBW product with edge values, optionally constrained by every strategy except `free_player`. */
struct ValuedProduct {
    StateIndex idx;
    Digraph g;
    std::vector<std::vector<Elem>> values;   // parallel to g.succ
};

/** key: (v, q, memories of the constrained players) */
ValuedProduct build_valued(const Arena& a, const Ldbw& aut, const Profile* p, int free_player)
{
    ValuedProduct pr;
    auto add = [&](const std::vector<int>& key) {
        auto [id, fresh] = pr.idx.intern(key);
        if (fresh) {
            pr.g.add_node();
            pr.values.emplace_back();
        }
        return id;
    };
    std::vector<int> init{a.initial, aut.initial};
    if (p)
        for (const auto& s : *p) init.push_back(s.owner == free_player ? 0 : s.initial);
    add(init);
    for (int id = 0; id < pr.idx.size(); ++id) {
        const std::vector<int> key = pr.idx.key(id);
        const int v = key[0], q = key[1];
        for (int c = 0; c < a.num_tuples(v); ++c) {
            const int w = a.delta[v][c];
            if (w < 0) continue;
            const Tuple t = a.decode(v, c);
            std::vector<int> next{w, 0};
            bool follows = true;
            if (p)
                for (int i = 0; i < a.num_players(); ++i) {
                    if (i == free_player) {
                        next.push_back(0);
                        continue;
                    }
                    const Strategy& s = (*p)[i];
                    const int m = key[2 + i];
                    if (s.output[m][v] != t[i]) {
                        follows = false;
                        break;
                    }
                    next.push_back(s.update[m][s.symbol(a, v, t)]);
                }
            if (!follows) continue;
            const int letter = letter_index(aut, a.letter(v, t));
            next[1] = aut.delta[q][letter];
            int to = add(next);
            pr.g.succ[id].push_back({to, c});
            pr.values[id].push_back(aut.value[q][letter]);
        }
    }
    if (p)
        for (int i = 0; i < a.num_players(); ++i) {
            if (i == free_player) continue;
            for (int id = 0; id < pr.idx.size(); ++id) {
                const auto& key = pr.idx.key(id);
                const auto& av = a.available[i][key[0]];
                const int act = (*p)[i].output[key[2 + i]][key[0]];
                if (!std::binary_search(av.begin(), av.end(), act))
                    throw StrategyError(i, {key[0]}, "strategy of " + a.players[i] + " plays unavailable action at " +
                                                       a.vertices[key[0]]);
            }
        }
    return pr;
}

/** A lasso of the product whose transitions are all >= `floor` and that recurs through acceptance >= each target. */
std::optional<Lasso> valued_lasso(const Arena& a, const Ldbw& aut, const ValuedProduct& pr, Elem floor,
                                  const std::vector<Elem>& targets)
{
    const Lattice& L = *aut.lattice;
    Digraph d;
    d.ensure(pr.g.size());
    for (int id = 0; id < pr.g.size(); ++id)
        for (std::size_t e = 0; e < pr.g.succ[id].size(); ++e)
            if (L.leq(floor, pr.values[id][e])) d.succ[id].push_back(pr.g.succ[id][e]);
    std::vector<std::vector<char>> fair;
    for (Elem j : targets) {
        std::vector<char> f(pr.g.size());
        for (int id = 0; id < pr.g.size(); ++id) f[id] = L.leq(j, aut.accept[pr.idx.key(id)[1]]);
        fair.push_back(std::move(f));
    }
    if (fair.empty()) fair.push_back(std::vector<char>(pr.g.size(), 1));
    auto nl = find_fair_lasso(d, {0}, fair);
    if (!nl) return std::nullopt;
    Lasso l;
    for (auto [n, c] : nl->prefix) l.prefix.push_back({pr.idx.key(n)[0], a.decode(pr.idx.key(n)[0], c)});
    for (auto [n, c] : nl->cycle) l.cycle.push_back({pr.idx.key(n)[0], a.decode(pr.idx.key(n)[0], c)});
    return l;
}

} // namespace

Verdict check_latticed_nash(const Arena& a, const LatticedObjectives& objs, const Profile& p,
                            const Deviators& deviators)
{
    check_latticed_inputs(a, objs, p);
    Deviators who = deviators;
    if (who.empty())
        for (int i = 0; i < a.num_players(); ++i) who.push_back(i);
    const Lasso out = outcome(a, p);
    const LassoWord w = word_of(a, out);
    for (int i : who) {
        if (i < 0 || i >= a.num_players()) throw ArenaError("deviator out of range");
        const Ldbw& aut = objs[i];
        const Lattice& L = *aut.lattice;
        const Elem have = ldbw_payoff(aut, w);
        std::optional<ValuedProduct> pr;
        for (Elem j : L.join_irreducibles()) {
            if (L.leq(j, have)) continue;
            if (!pr) pr = build_valued(a, aut, &p, i);
            if (auto dev = valued_lasso(a, aut, *pr, j, {j})) {
                Verdict v;
                v.holds = false;
                v.player = i;
                v.history = History{{a.initial}, {}};
                v.deviation = std::move(*dev);
                v.conforming = out;
                return v;
            }
        }
    }
    return {};
}

LatticedSynthesisResult latticed_synthesize_bounded(const Arena& a, const LatticedObjectives& objs, Elem threshold,
                                                    int k, std::int64_t max_candidates)
{
    if (static_cast<int>(objs.size()) != a.num_players() || objs.empty())
        throw ArenaError("expected one automaton per player");
    if (k < 1) throw ArenaError("memory bound must be at least 1");
    for (const auto& o : objs)
        if (o.props != a.props) throw ArenaError("automaton propositions differ from the arena's");
    const Ldbw& sys = objs[0];
    const Lattice& L = *sys.lattice;
    if (threshold < 0 || threshold >= L.size()) throw LatticeError("threshold out of range");

    LatticedSynthesisResult r;
    // payoff_0 >= v iff every transition is >= v and each join-irreducible below v recurs in acceptance
    ValuedProduct free = build_valued(a, sys, nullptr, -1);
    std::optional<Lasso> seed = valued_lasso(a, sys, free, threshold, L.ji_below(threshold));
    if (!seed) {
        r.note = "no play gives the system a payoff of at least " + L.name(threshold);
        return r;
    }

    Deviators agents;
    for (int i = 1; i < a.num_players(); ++i) agents.push_back(i);
    auto solves = [&](const Profile& p) {
        if (!L.leq(threshold, ldbw_payoff(sys, word_of(a, outcome(a, p))))) return false;
        return agents.empty() || check_latticed_nash(a, objs, p, agents).holds;
    };
    std::optional<Profile> found;
    EnumerationStats st = enumerate_profiles(a, k, max_candidates, {*seed}, [&](const Profile& p) {
        if (!solves(p)) return false;
        found = p;
        return true;
    });
    r.candidates = st.candidates;
    r.exhaustive = st.exhaustive;
    if (found) {
        if (!validate_profile(a, *found, true).ok() || !solves(*found))
            throw std::logic_error("synthesized profile failed its own certification");
        r.profile = std::move(found);
        r.note = "profile certified by re-checking the system payoff and the latticed Nash condition";
    } else if (st.exhaustive) {
        r.note = "no profile with memory <= " + std::to_string(k) + " exists";
    } else {
        r.note = "no profile found; the search space exceeded the candidate budget, so absence is not proven";
    }
    return r;
}

} // namespace rsynth
