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

#include "rsynth/equilibria.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>
#include <map>

namespace rsynth {

Objective Objective::from_ltl(const Ltl& f)
{
    Objective o;
    o.formula = f;
    o.pos = ltl_to_nbw(f);
    o.neg = ltl_to_nbw(ltl_not(f));
    return o;
}

Objective Objective::from_automata(Nbw pos, Nbw neg)
{
    Objective o;
    o.pos = std::move(pos);
    o.neg = std::move(neg);
    return o;
}

bool Objective::holds(const LassoWord& w) const
{
    return formula ? eval_lasso(formula, w) : nbw_accepts_lasso(pos, w);
}

Objectives parse_objectives(const Arena& a, const std::vector<std::string>& formulas)
{
    if (static_cast<int>(formulas.size()) != a.num_players())
        throw LtlError("expected " + std::to_string(a.num_players()) + " objectives, got " +
                       std::to_string(formulas.size()));
    Objectives out;
    for (const auto& f : formulas) out.push_back(Objective::from_ltl(parse_ltl(f, a.props)));
    return out;
}

std::string concept_name(Concept c)
{
    switch (c) {
    case Concept::Nash: return "nash";
    case Concept::Spe: return "spe";
    case Concept::Dominant: return "ds";
    }
    return "?";
}

bool agent_payoff(const Arena& a, const Profile& p, const Objective& obj)
{
    return obj.holds(word_of(a, outcome(a, p)));
}

namespace {

struct Product {
    StateIndex idx;
    Digraph g;
    std::vector<int> init;

    int add(const std::vector<int>& key)
    {
        auto [id, fresh] = idx.intern(key);
        if (fresh) g.add_node();
        return id;
    }

    /** expand(key, emit) is called once per node in discovery order; emit(key', label) adds an edge. */
    template <class Expand>
    void explore(Expand expand)
    {
        for (int s = 0; s < idx.size(); ++s) {
            const std::vector<int> key = idx.key(s);
            expand(key, [&](const std::vector<int>& to, int label) {
                int t = add(to);
                g.succ[s].push_back({t, label});
            });
        }
    }
};

/** Action of player j's strategy at (m, v), checked against availability. */
int strategy_action(const Arena& a, const Strategy& s, int m, int v)
{
    int act = s.output[m][v];
    const auto& av = a.available[s.owner][v];
    if (!std::binary_search(av.begin(), av.end(), act))
        throw StrategyError(s.owner, {v},
                            "strategy of " + a.players[s.owner] + " plays an unavailable action at " + a.vertices[v]);
    return act;
}

/** Legal tuple codes at v where every player except `free_player` follows its strategy. */
std::vector<int> constrained_codes(const Arena& a, const Profile& p, int v, const Memories& mem, int free_player)
{
    std::vector<int> want(a.num_players(), -1);
    for (int j = 0; j < a.num_players(); ++j)
        if (j != free_player) want[j] = strategy_action(a, p[j], mem[j], v);
    std::vector<int> out;
    for (int c = 0; c < a.num_tuples(v); ++c) {
        Tuple t = a.decode(v, c);
        bool ok = true;
        for (int j = 0; j < a.num_players() && ok; ++j) ok = want[j] < 0 || t[j] == want[j];
        if (ok) out.push_back(c);
    }
    return out;
}

Position position_at(const Arena& a, int v, int code) { return {v, a.decode(v, code)}; }

std::vector<int> prefix_states(const Arena& a, const Nbw& n, const History& full)
{
    std::vector<int> s = n.initial;
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k) s = n.post(s, a.letter(full.vertices[k], full.tuples[k]));
    return s;
}

/**
 * Accepting lasso for player i's free play against the others from (v, mem),
 * with the automaton started in any state of `start`. Positions only.
 */
std::optional<Lasso> deviation_from(const Arena& a, const Profile& p, int i, const Nbw& n, int v, Memories mem,
                                    const std::vector<int>& start)
{
    mem[i] = 0;
    Product pr;
    for (int q : start) {
        std::vector<int> key = mem;
        key.insert(key.begin(), v);
        key.push_back(q);
        pr.init.push_back(pr.add(key));
    }
    const int np = a.num_players();
    pr.explore([&](const std::vector<int>& key, auto emit) {
        int u = key[0];
        Memories m(key.begin() + 1, key.begin() + 1 + np);
        int q = key.back();
        for (int c : constrained_codes(a, p, u, m, i)) {
            Tuple t = a.decode(u, c);
            Memories m2 = advance(a, p, m, u, t);
            m2[i] = 0;
            int w = a.delta[u][c];
            for (const auto& e : n.edges[q]) {
                if (!e.matches(a.letter(u, t))) continue;
                std::vector<int> to = m2;
                to.insert(to.begin(), w);
                to.push_back(e.to);
                emit(to, c);
            }
        }
    });
    std::vector<char> acc(pr.idx.size());
    for (int s = 0; s < pr.idx.size(); ++s) acc[s] = n.accepting[pr.idx.key(s).back()];
    auto nl = find_accepting_lasso(pr.g, pr.init, acc);
    if (!nl) return std::nullopt;
    Lasso l;
    for (auto [s, c] : nl->prefix) l.prefix.push_back(position_at(a, pr.idx.key(s)[0], c));
    for (auto [s, c] : nl->cycle) l.cycle.push_back(position_at(a, pr.idx.key(s)[0], c));
    return l;
}

Lasso prepend(const History& full, Lasso tail)
{
    Lasso l;
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k) l.prefix.push_back({full.vertices[k], full.tuples[k]});
    l.prefix.insert(l.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    l.cycle = std::move(tail.cycle);
    return l;
}

Deviators resolve(const Arena& a, const Deviators& d)
{
    Deviators out = d;
    if (out.empty())
        for (int i = 0; i < a.num_players(); ++i) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int i : out)
        if (i < 0 || i >= a.num_players()) throw ArenaError("deviator out of range");
    return out;
}

void check_inputs(const Arena& a, const Objectives& objs, const Profile& p)
{
    if (static_cast<int>(objs.size()) != a.num_players()) throw ArenaError("one objective per player is required");
    ArenaReport r = validate_profile(a, p);
    if (!r.ok()) throw ArenaError(r.errors.front());
}

} // namespace

std::optional<Lasso> best_deviation(const Arena& a, const Profile& p, int i, const Objective& obj, const History& h)
{
    History full = complete_history(a, h);
    Memories mem = memories_after(a, p, full);
    auto tail = deviation_from(a, p, i, obj.pos, full.vertices.back(), mem, prefix_states(a, obj.pos, full));
    if (!tail) return std::nullopt;
    return prepend(full, std::move(*tail));
}

Verdict check_nash(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators)
{
    check_inputs(a, objs, p);
    const History h0{{a.initial}, {}};
    const Lasso out = outcome(a, p);
    const LassoWord w = word_of(a, out);
    for (int i : resolve(a, deviators)) {
        if (objs[i].holds(w)) continue;
        if (auto d = best_deviation(a, p, i, objs[i], h0)) {
            Verdict v;
            v.holds = false;
            v.player = i;
            v.history = h0;
            v.deviation = std::move(*d);
            v.conforming = out;
            return v;
        }
    }
    return {};
}

Verdict check_spe(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators)
{
    check_inputs(a, objs, p);
    const Deviators devs = resolve(a, deviators);
    const int np = a.num_players();

    // key: vertex, memories, then per deviator |S| followed by the sorted set S
    auto make_key = [&](int v, const Memories& m, const std::vector<std::vector<int>>& sets) {
        std::vector<int> k{v};
        k.insert(k.end(), m.begin(), m.end());
        for (const auto& s : sets) {
            k.push_back(static_cast<int>(s.size()));
            k.insert(k.end(), s.begin(), s.end());
        }
        return k;
    };
    auto split_key = [&](const std::vector<int>& k, int& v, Memories& m, std::vector<std::vector<int>>& sets) {
        v = k[0];
        m.assign(k.begin() + 1, k.begin() + 1 + np);
        sets.clear();
        std::size_t pos = 1 + np;
        for (std::size_t d = 0; d < devs.size(); ++d) {
            int len = k[pos++];
            sets.emplace_back(k.begin() + pos, k.begin() + pos + len);
            pos += len;
        }
    };

    StateIndex idx;
    std::vector<std::pair<int, int>> parent;   // (config, tuple code)
    {
        std::vector<std::vector<int>> sets;
        for (int i : devs) sets.push_back(objs[i].pos.initial);
        idx.intern(make_key(a.initial, initial_memories(p), sets));
        parent.push_back({-1, -1});
    }
    std::map<std::vector<int>, bool> dev_cache;

    for (int s = 0; s < idx.size(); ++s) {
        const std::vector<int> key = idx.key(s);
        int v;
        Memories mem;
        std::vector<std::vector<int>> sets;
        split_key(key, v, mem, sets);

        const LassoWord cont = word_of(a, outcome_from(a, p, v, mem));
        for (std::size_t d = 0; d < devs.size(); ++d) {
            const int i = devs[d];
            if (nbw_accepts_lasso_from(objs[i].pos, sets[d], cont)) continue;
            std::vector<int> ck{i, v};
            for (int j = 0; j < np; ++j) ck.push_back(j == i ? 0 : mem[j]);
            ck.insert(ck.end(), sets[d].begin(), sets[d].end());
            auto it = dev_cache.find(ck);
            if (it == dev_cache.end())
                it = dev_cache.emplace(ck, deviation_from(a, p, i, objs[i].pos, v, mem, sets[d]).has_value()).first;
            if (!it->second) continue;

            History h;
            for (int c = s; c >= 0; c = parent[c].first) {
                h.vertices.push_back(idx.key(c)[0]);
                if (parent[c].first >= 0) {
                    int pv = idx.key(parent[c].first)[0];
                    h.tuples.push_back(a.decode(pv, parent[c].second));
                }
            }
            std::reverse(h.vertices.begin(), h.vertices.end());
            std::reverse(h.tuples.begin(), h.tuples.end());
            Verdict out;
            out.holds = false;
            out.player = i;
            out.history = h;
            out.deviation = *best_deviation(a, p, i, objs[i], h);
            out.conforming = shifted_outcome(a, p, h);
            return out;
        }

        for (int c = 0; c < a.num_tuples(v); ++c) {
            Tuple t = a.decode(v, c);
            Props letter = a.letter(v, t);
            std::vector<std::vector<int>> next;
            for (std::size_t d = 0; d < devs.size(); ++d) next.push_back(objs[devs[d]].pos.post(sets[d], letter));
            auto [id, fresh] = idx.intern(make_key(a.delta[v][c], advance(a, p, mem, v, t), next));
            if (fresh) parent.push_back({s, c});
        }
    }
    return {};
}

namespace {

/** Nodes (v, q) of the unconstrained product from which some play satisfies the automaton. */
struct FreeProduct {
    Product pr;
    std::vector<char> acc;
    std::vector<char> good;
};

FreeProduct build_free(const Arena& a, const Nbw& n, const std::vector<std::vector<int>>& seeds)
{
    FreeProduct f;
    for (const auto& k : seeds) f.pr.add(k);
    f.pr.explore([&](const std::vector<int>& key, auto emit) {
        int v = key[0], q = key[1];
        for (int c = 0; c < a.num_tuples(v); ++c) {
            Props l = a.letter(v, a.decode(v, c));
            for (const auto& e : n.edges[q])
                if (e.matches(l)) emit({a.delta[v][c], e.to}, c);
        }
    });
    f.acc.resize(f.pr.idx.size());
    for (int s = 0; s < f.pr.idx.size(); ++s) f.acc[s] = n.accepting[f.pr.idx.key(s)[1]];
    f.good = fair_lasso_sources(f.pr.g, {f.acc});
    return f;
}

/** Nodes (v, m, q) where player i follows s and everyone else is free. */
FreeProduct build_constrained(const Arena& a, const Strategy& s, const Nbw& n, const std::vector<std::vector<int>>& seeds)
{
    FreeProduct f;
    for (const auto& k : seeds) f.pr.add(k);
    const int i = s.owner;
    f.pr.explore([&](const std::vector<int>& key, auto emit) {
        int v = key[0], m = key[1], q = key[2];
        int act = strategy_action(a, s, m, v);
        for (int c = 0; c < a.num_tuples(v); ++c) {
            Tuple t = a.decode(v, c);
            if (t[i] != act) continue;
            int m2 = s.update[m][s.symbol(a, v, t)];
            Props l = a.letter(v, t);
            for (const auto& e : n.edges[q])
                if (e.matches(l)) emit({a.delta[v][c], m2, e.to}, c);
        }
    });
    f.acc.resize(f.pr.idx.size());
    for (int k = 0; k < f.pr.idx.size(); ++k) f.acc[k] = n.accepting[f.pr.idx.key(k)[2]];
    f.good = fair_lasso_sources(f.pr.g, {f.acc});
    return f;
}

Lasso lasso_from(const Arena& a, const FreeProduct& f, const std::vector<int>& start)
{
    int s = *f.pr.idx.find(start);
    auto nl = find_accepting_lasso(f.pr.g, {s}, f.acc);
    Lasso l;
    for (auto [n, c] : nl->prefix) l.prefix.push_back(position_at(a, f.pr.idx.key(n)[0], c));
    for (auto [n, c] : nl->cycle) l.cycle.push_back(position_at(a, f.pr.idx.key(n)[0], c));
    return l;
}

struct Split {
    int node;
    int label;
    std::vector<std::vector<int>> b_targets;   // (v, q_phi)
    std::vector<std::vector<int>> a_targets;   // (v, m, q_negphi)
};

std::optional<Verdict> dominance_violation(const Arena& a, const Objective& obj, const Strategy& s)
{
    const int i = s.owner;
    const int ni = static_cast<int>(a.actions[i].size());
    const Nbw& pos = obj.pos;
    const Nbw& neg = obj.neg;

    // joint phase: (v, m_i, q_phi on the deviating play, q_negphi on the conforming play);
    // label = conforming tuple code * |actions_i| + deviating action
    Product j;
    for (int q1 : pos.initial)
        for (int q2 : neg.initial) j.init.push_back(j.add({a.initial, s.initial, q1, q2}));
    std::vector<Split> splits;
    j.explore([&](const std::vector<int>& key, auto emit) {
        int v = key[0], m = key[1], q1 = key[2], q2 = key[3];
        int act = strategy_action(a, s, m, v);
        for (int c = 0; c < a.num_tuples(v); ++c) {
            Tuple ta = a.decode(v, c);
            if (ta[i] != act) continue;
            int wa = a.delta[v][c];
            int m2 = s.update[m][s.symbol(a, v, ta)];
            Props la = a.letter(v, ta);
            for (int dev : a.available[i][v]) {
                Tuple tb = ta;
                tb[i] = dev;
                int wb = a.delta[v][a.encode(v, tb)];
                Props lb = a.letter(v, tb);
                int label = c * ni + dev;
                bool together = a.variable ? dev == act : wa == wb;
                if (together) {
                    for (int r1 : pos.post({q1}, lb))
                        for (int r2 : neg.post({q2}, la)) emit({wa, m2, r1, r2}, label);
                    continue;
                }
                Split sp{j.idx.find(key).value(), label, {}, {}};
                for (int r1 : pos.post({q1}, lb)) sp.b_targets.push_back({wb, r1});
                for (int r2 : neg.post({q2}, la)) sp.a_targets.push_back({wa, m2, r2});
                splits.push_back(std::move(sp));
            }
        }
    });

    std::vector<std::vector<int>> bseeds, aseeds;
    for (const auto& sp : splits) {
        bseeds.insert(bseeds.end(), sp.b_targets.begin(), sp.b_targets.end());
        aseeds.insert(aseeds.end(), sp.a_targets.begin(), sp.a_targets.end());
    }
    FreeProduct fb = build_free(a, pos, bseeds);
    FreeProduct fa = build_constrained(a, s, neg, aseeds);

    auto decode_label = [&](int v, int label, Position& pa, Position& pb) {
        pa = position_at(a, v, label / ni);
        pb = pa;
        pb.tuple[i] = label % ni;
    };

    Verdict out;
    out.holds = false;
    out.player = i;
    for (const auto& sp : splits) {
        const std::vector<int>* bt = nullptr;
        const std::vector<int>* at = nullptr;
        for (const auto& k : sp.b_targets)
            if (!bt && fb.good[*fb.pr.idx.find(k)]) bt = &k;
        for (const auto& k : sp.a_targets)
            if (!at && fa.good[*fa.pr.idx.find(k)]) at = &k;
        if (!bt || !at) continue;

        auto path = shortest_path(j.g, j.init, [&](int n) { return n == sp.node; });
        path->back().second = sp.label;
        Lasso la, lb;
        for (auto [n, lab] : *path) {
            Position pa, pb;
            decode_label(j.idx.key(n)[0], lab, pa, pb);
            la.prefix.push_back(pa);
            lb.prefix.push_back(pb);
            out.history.vertices.push_back(pa.vertex);
        }
        for (std::size_t k = 0; k + 1 < la.prefix.size(); ++k) out.history.tuples.push_back(la.prefix[k].tuple);
        Lasso ta = lasso_from(a, fa, *at), tb = lasso_from(a, fb, *bt);
        la.prefix.insert(la.prefix.end(), ta.prefix.begin(), ta.prefix.end());
        la.cycle = ta.cycle;
        lb.prefix.insert(lb.prefix.end(), tb.prefix.begin(), tb.prefix.end());
        lb.cycle = tb.cycle;
        out.conforming = std::move(la);
        out.deviation = std::move(lb);
        return out;
    }

    // the plays never separate: one lasso must satisfy phi on one word and not phi on the other
    std::vector<char> acc1(j.idx.size()), acc2(j.idx.size());
    for (int n = 0; n < j.idx.size(); ++n) {
        acc1[n] = pos.accepting[j.idx.key(n)[2]];
        acc2[n] = neg.accepting[j.idx.key(n)[3]];
    }
    auto nl = find_fair_lasso(j.g, j.init, {acc1, acc2});
    if (!nl) return std::nullopt;
    auto fill = [&](const std::vector<std::pair<int, int>>& seg, std::vector<Position>& pa, std::vector<Position>& pb) {
        for (auto [n, lab] : seg) {
            Position x, y;
            decode_label(j.idx.key(n)[0], lab, x, y);
            pa.push_back(x);
            pb.push_back(y);
        }
    };
    fill(nl->prefix, out.conforming.prefix, out.deviation.prefix);
    fill(nl->cycle, out.conforming.cycle, out.deviation.cycle);
    out.history = {{a.initial}, {}};
    return out;
}

} // namespace

Verdict check_dominant(const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators)
{
    check_inputs(a, objs, p);
    for (int i : resolve(a, deviators))
        if (auto v = dominance_violation(a, objs[i], p[i])) return *v;
    return {};
}

Verdict check(Concept c, const Arena& a, const Objectives& objs, const Profile& p, const Deviators& deviators)
{
    switch (c) {
    case Concept::Nash: return check_nash(a, objs, p, deviators);
    case Concept::Spe: return check_spe(a, objs, p, deviators);
    case Concept::Dominant: return check_dominant(a, objs, p, deviators);
    }
    return {};
}

std::string verdict_to_string(const Arena& a, const Verdict& v)
{
    if (v.holds) return "holds";
    return "fails: " + a.players[v.player] + " deviates after " + history_to_string(a, v.history) +
           "\n  deviation:  " + lasso_to_string(a, v.deviation) + "\n  conforming: " + lasso_to_string(a, v.conforming);
}

} // namespace rsynth
