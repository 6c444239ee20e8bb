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

#include "rsynth/apt.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace rsynth {

namespace {

enum Tracker { His = 0, Fut = 1, Acc = 2, Rej = 3, Top = 4 };
enum Mode { OnPath = 0, Off = 1, Future = 2, Everywhere = 3 };

struct Skeleton {
    Apt apt;
    const Arena& arena;
    Nbw bad;   // NBW of the negated objective
    std::map<std::tuple<int, int, int>, int> copies;
    std::vector<std::tuple<int, int, int>> copy_of;   // per state, (q, v, mode) or q = -1

    Skeleton(const Ltl& psi, const Arena& a) : arena(a), bad(ltl_to_nbw(ltl_not(psi)))
    {
        for (int i = 0; i < a.num_players(); ++i) {
            apt.components.push_back(a.players[i]);
            apt.dims.push_back(static_cast<int>(a.actions[i].size()));
        }
        apt.components.push_back("mark");
        apt.dims.push_back(2);
        apt.num_directions = a.num_joint_codes();
    }

    int add(const std::string& name, int prio, std::tuple<int, int, int> tag)
    {
        apt.states.push_back(name);
        apt.priority.push_back(prio);
        copy_of.push_back(tag);
        return apt.num_states() - 1;
    }

    void add_trackers()
    {
        add("his", 1, {-1, His, 0});
        add("fut", 0, {-1, Fut, 0});
        add("acc", 0, {-1, Acc, 0});
        add("rej", 1, {-1, Rej, 0});
        add("top", 0, {-1, Top, 0});
    }

    int copy(int q, int v, int mode)
    {
        auto [it, fresh] = copies.emplace(std::make_tuple(q, v, mode), apt.num_states());
        if (fresh) {
            static const char* tag[] = {"H", "O", "F", "A"};
            int prio = 1;
            if (mode == Future || mode == Everywhere) prio = bad.accepting[q] ? 1 : 2;
            add("u" + std::to_string(q) + "." + arena.vertices[v] + "." + tag[mode], prio, {q, v, mode});
        }
        return it->second;
    }

    /** Copies of every successor of q after reading direction d at v; true when d is illegal there. */
    Pbf up(int q, int v, int d, int mode)
    {
        const Tuple t = arena.joint_decode(d);
        const int code = arena.encode(v, t);
        if (code < 0) return pbf_true();
        const int w = arena.delta[v][code];
        std::vector<Pbf> kids;
        for (int q2 : bad.post({q}, arena.letter(v, t))) kids.push_back(pbf_atom(d, copy(q2, w, mode)));
        return pbf_and(std::move(kids));
    }

    Pbf all_directions(int state)
    {
        std::vector<Pbf> kids;
        for (int d = 0; d < apt.num_directions; ++d) kids.push_back(pbf_atom(d, state));
        return pbf_and(std::move(kids));
    }

    Pbf tracker(int which, int sigma, bool marked)
    {
        const int nd = apt.num_directions;
        switch (which) {
        case His:
            if (!marked) return all_directions(Fut);
            {
                std::vector<Pbf> options;
                for (int d = 0; d < nd; ++d) {
                    std::vector<Pbf> kids{pbf_atom(d, His)};
                    for (int d2 = 0; d2 < nd; ++d2)
                        if (d2 != d) kids.push_back(pbf_atom(d2, Acc));
                    options.push_back(pbf_and(std::move(kids)));
                }
                return pbf_or(std::move(options));
            }
        case Fut:
            if (marked) return all_directions(Rej);
            {
                std::vector<Pbf> kids;
                for (int d = 0; d < nd; ++d) kids.push_back(pbf_atom(d, d == sigma ? Fut : Acc));
                return pbf_and(std::move(kids));
            }
        case Acc: return all_directions(Acc);
        case Rej: return all_directions(Rej);
        default: return marked ? pbf_true() : pbf_false();
        }
    }

    Pbf guided(int q, int v, int mode, int sigma, bool marked)
    {
        if (mode == Future) return marked ? pbf_true() : up(q, v, sigma, Future);
        if (!marked) return mode == OnPath ? up(q, v, sigma, Future) : pbf_true();
        // On the mark path: either it continues obediently or some other child carries it.
        std::vector<Pbf> via{up(q, v, sigma, OnPath)};
        std::vector<Pbf> off;
        for (int d = 0; d < apt.num_directions; ++d) {
            if (d == sigma) continue;
            via.push_back(pbf_atom(d, Top));
            off.push_back(up(q, v, d, Off));
        }
        off.push_back(pbf_or(std::move(via)));
        return pbf_and(std::move(off));
    }

    Pbf everywhere(int q, int v)
    {
        std::vector<Pbf> kids;
        for (int d = 0; d < apt.num_directions; ++d) kids.push_back(up(q, v, d, Everywhere));
        return pbf_and(std::move(kids));
    }

    Pbf initial_copies(int mode)
    {
        std::vector<Pbf> kids;
        for (int q0 : bad.initial) kids.push_back(pbf_atom(-1, copy(q0, arena.initial, mode)));
        return pbf_and(std::move(kids));
    }

    /** Fills the transition rows of all states, including copies created on the way. */
    void finish(bool ignore_marks)
    {
        const int nl = apt.num_letters();
        for (int s = 0; s < apt.num_states(); ++s) {
            std::vector<Pbf> row;
            for (int x = 0; x < nl; ++x) {
                std::vector<int> parts = apt.letter_parts(x);
                const bool marked = !ignore_marks && parts.back() == 1;
                parts.pop_back();
                const int sigma = arena.joint_code(parts);
                auto [q, v, mode] = copy_of[s];
                if (q < 0) row.push_back(tracker(v, sigma, marked));
                else if (mode == Everywhere) row.push_back(everywhere(q, v));
                else row.push_back(guided(q, v, mode, sigma, marked));
            }
            apt.delta.push_back(std::move(row));
        }
    }
};

} // namespace

Apt apt_base(const Ltl& psi, const Arena& a)
{
    Skeleton k(psi, a);
    k.add_trackers();
    k.apt.initial = pbf_and(k.initial_copies(OnPath), pbf_atom(-1, His));
    k.finish(false);
    return k.apt;
}

Apt apt_base_verbatim(const Ltl& psi, const Arena& a)
{
    Skeleton k(psi, a);
    k.add_trackers();
    k.apt.initial = pbf_and(k.initial_copies(Everywhere), pbf_atom(-1, His));
    k.finish(false);
    return k.apt;
}

Apt apt_base_root(const Ltl& psi, const Arena& a)
{
    Skeleton k(psi, a);
    k.apt.initial = k.initial_copies(Future);
    k.finish(true);
    return k.apt;
}

Apt apt_legal_marks(const Arena& a)
{
    Skeleton k(ltl_true(), a);
    k.add("path", 1, {-1, His, 0});
    k.add("rest", 0, {-1, Fut, 0});
    const int nd = k.apt.num_directions;
    k.apt.initial = pbf_atom(-1, 0);
    for (int s = 0; s < 2; ++s) {
        std::vector<Pbf> row;
        for (int x = 0; x < k.apt.num_letters(); ++x) {
            const bool marked = k.apt.letter_parts(x).back() == 1;
            if (s == 1 || !marked) {
                row.push_back(marked ? pbf_false() : k.all_directions(1));
                continue;
            }
            std::vector<Pbf> options;
            for (int d = 0; d < nd; ++d) {
                std::vector<Pbf> kids{pbf_atom(d, 0)};
                for (int d2 = 0; d2 < nd; ++d2)
                    if (d2 != d) kids.push_back(pbf_atom(d2, 1));
                options.push_back(pbf_and(std::move(kids)));
            }
            row.push_back(pbf_or(std::move(options)));
        }
        k.apt.delta.push_back(std::move(row));
    }
    return k.apt;
}

int strategy_tree_letter(const Arena& a, const Tuple& actions, bool marked)
{
    int x = 0, stride = 1;
    for (int i = 0; i < a.num_players(); ++i) {
        x += actions[i] * stride;
        stride *= static_cast<int>(a.actions[i].size());
    }
    return x + (marked ? stride : 0);
}

RegularTree strategy_history_tree(const Arena& a, const Profile& p, const History& h)
{
    const History full = complete_history(a, h);
    const int steps = static_cast<int>(full.tuples.size());
    const int nd = a.num_joint_codes();
    RegularTree t;
    t.succ.emplace_back(nd, 0);
    t.label.push_back(strategy_tree_letter(a, Tuple(a.num_players(), 0), false));
    StateIndex index;
    std::vector<std::vector<int>> keys;   // (k, v, memories...)
    auto visit = [&](const std::vector<int>& key) {
        auto [id, fresh] = index.intern(key);
        if (fresh) {
            keys.push_back(key);
            t.succ.emplace_back(nd, 0);
            t.label.push_back(0);
        }
        return id + 1;
    };
    std::vector<int> root{0, a.initial};
    for (int m : initial_memories(p)) root.push_back(m);
    t.initial = visit(root);
    for (std::size_t s = 0; s < keys.size(); ++s) {
        const std::vector<int> key = keys[s];
        const int k = key[0], v = key[1];
        const Memories mem(key.begin() + 2, key.end());
        const Tuple sigma = profile_actions(a, p, v, mem);
        t.label[s + 1] = strategy_tree_letter(a, sigma, k >= 0);
        for (int d = 0; d < nd; ++d) {
            const Tuple tu = a.joint_decode(d);
            const int code = a.encode(v, tu);
            if (code < 0) continue;
            std::vector<int> next{-1, a.delta[v][code]};
            if (k >= 0 && k < steps && tu == full.tuples[k]) next[0] = k + 1;
            for (int m : advance(a, p, mem, v, tu)) next.push_back(m);
            const int child = visit(next);
            t.succ[s + 1][d] = child;
        }
    }
    return t;
}

bool strategy_tree_satisfies(const Arena& a, const RegularTree& t, const Ltl& psi)
{
    const int n = a.num_players();
    int stride = 1;
    for (int i = 0; i < n; ++i) stride *= static_cast<int>(a.actions[i].size());
    auto marked = [&](int s) { return t.label[s] >= stride; };
    auto actions = [&](int s) {
        Tuple tu(n);
        int x = t.label[s] % stride;
        for (int i = 0; i < n; ++i) {
            const int r = static_cast<int>(a.actions[i].size());
            tu[i] = x % r;
            x /= r;
        }
        return tu;
    };
    const int nd = a.num_joint_codes();

    // The marked path from the root, with the directions it takes.
    std::vector<int> path_states{t.initial}, path_vertices{a.initial}, path_dirs;
    std::vector<int> off;
    if (marked(t.initial)) {
        std::set<std::pair<int, int>> seen{{t.initial, a.initial}};
        while (true) {
            const int s = path_states.back(), v = path_vertices.back();
            int next = -1;
            for (int d = 0; d < nd; ++d) {
                if (!marked(t.succ[s][d])) {
                    off.push_back(t.succ[s][d]);
                    continue;
                }
                if (next >= 0) return false;
                next = d;
            }
            if (next < 0) break;
            const int code = a.encode(v, a.joint_decode(next));
            if (code < 0) throw AptError("marked path takes a direction illegal at " + a.vertices[v]);
            const int s2 = t.succ[s][next], v2 = a.delta[v][code];
            if (!seen.insert({s2, v2}).second) return false;
            path_dirs.push_back(next);
            path_states.push_back(s2);
            path_vertices.push_back(v2);
        }
    } else {
        for (int d = 0; d < nd; ++d) off.push_back(t.succ[t.initial][d]);
    }
    std::vector<char> reach(t.num_states(), 0);
    for (std::size_t k = 0; k < off.size(); ++k) {
        const int s = off[k];
        if (reach[s]) continue;
        reach[s] = 1;
        if (marked(s)) return false;
        for (int d = 0; d < nd; ++d) off.push_back(t.succ[s][d]);
    }

    LassoWord w;
    for (std::size_t k = 0; k < path_dirs.size(); ++k)
        w.prefix.push_back(a.letter(path_vertices[k], a.joint_decode(path_dirs[k])));
    std::map<std::pair<int, int>, int> at;
    std::vector<Props> tail;
    int s = path_states.back(), v = path_vertices.back();
    while (true) {
        auto [it, fresh] = at.emplace(std::make_pair(s, v), static_cast<int>(tail.size()));
        if (!fresh) {
            w.prefix.insert(w.prefix.end(), tail.begin(), tail.begin() + it->second);
            w.cycle.assign(tail.begin() + it->second, tail.end());
            break;
        }
        const Tuple sigma = actions(s);
        const int code = a.encode(v, sigma);
        if (code < 0) throw AptError("tree label plays an unavailable action at " + a.vertices[v]);
        tail.push_back(a.letter(v, sigma));
        s = t.succ[s][a.joint_code(sigma)];
        v = a.delta[v][code];
    }
    return eval_lasso(psi, w);
}

} // namespace rsynth
