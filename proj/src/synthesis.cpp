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

#include "rsynth/synthesis.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace rsynth {

namespace {

constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t sat_mul(std::int64_t x, std::int64_t y)
{
    if (x == 0 || y == 0) return 0;
    if (x > kSaturated / y) return kSaturated;
    return x * y;
}

std::int64_t sat_add(std::int64_t x, std::int64_t y) { return std::min(kSaturated, x + y); }

InputKind input_kind(const Arena& a) { return a.variable ? InputKind::Actions : InputKind::Vertices; }

std::vector<int> reachable_vertices(const Arena& a)
{
    std::vector<char> seen(a.num_vertices(), 0);
    std::vector<int> order{a.initial};
    seen[a.initial] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int w : a.delta[order[k]])
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
    std::sort(order.begin(), order.end());
    return order;
}

/**
 * All machines of one player with exactly `memory` states, indexed by a mixed
 * radix over the output entries of reachable vertices, then the update entries
 * of symbols that can occur. Other entries are fixed to the first choice.
 */
struct MachineSpace {
    const Arena* a = nullptr;
    int owner = 0;
    int memory = 1;
    InputKind input = InputKind::Vertices;
    std::vector<std::pair<int, int>> out_slots;   // (m, v)
    std::vector<std::pair<int, int>> upd_slots;   // (m, symbol)
    std::int64_t count = 1;

    MachineSpace(const Arena& arena, int i, int m, const std::vector<int>& verts) : a(&arena), owner(i), memory(m)
    {
        input = input_kind(arena);
        std::vector<int> symbols;
        if (input == InputKind::Vertices) symbols = verts;
        else {
            std::set<int> codes;
            for (int v : verts)
                for (int c = 0; c < arena.num_tuples(v); ++c) codes.insert(arena.joint_code(arena.decode(v, c)));
            symbols.assign(codes.begin(), codes.end());
        }
        for (int s = 0; s < m; ++s) {
            for (int v : verts) {
                out_slots.push_back({s, v});
                count = sat_mul(count, static_cast<std::int64_t>(arena.available[i][v].size()));
            }
            if (m > 1)
                for (int y : symbols) {
                    upd_slots.push_back({s, y});
                    count = sat_mul(count, m);
                }
        }
    }

    Strategy decode(std::int64_t index) const
    {
        const Arena& ar = *a;
        Strategy s;
        s.owner = owner;
        s.input = input;
        s.memory = memory;
        const int nsym = input == InputKind::Vertices ? ar.num_vertices() : ar.num_joint_codes();
        s.update.assign(memory, std::vector<int>(nsym, 0));
        s.output.assign(memory, std::vector<int>(ar.num_vertices(), 0));
        for (int m = 0; m < memory; ++m)
            for (int v = 0; v < ar.num_vertices(); ++v)
                s.output[m][v] = ar.available[owner][v].empty() ? 0 : ar.available[owner][v].front();
        for (auto [m, v] : out_slots) {
            const auto& av = ar.available[owner][v];
            const auto n = static_cast<std::int64_t>(av.size());
            s.output[m][v] = av[index % n];
            index /= n;
        }
        for (auto [m, y] : upd_slots) {
            s.update[m][y] = static_cast<int>(index % memory);
            index /= memory;
        }
        return s;
    }
};

/** Machines with an unreachable memory state behave like smaller ones, which were tried already. */
bool all_memory_reachable(const Strategy& s)
{
    if (s.memory == 1) return true;
    std::vector<char> seen(s.memory, 0);
    std::vector<int> stack{s.initial};
    seen[s.initial] = 1;
    int count = 1;
    while (!stack.empty()) {
        int m = stack.back();
        stack.pop_back();
        for (int t : s.update[m])
            if (!seen[t]) {
                seen[t] = 1;
                ++count;
                stack.push_back(t);
            }
    }
    return count == s.memory;
}

/** Mixed-radix counter; returns false after the last combination. */
bool next_index(std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& radix)
{
    for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < radix[k]) return true;
        idx[k] = 0;
    }
    return false;
}

bool distinct_vertices(const Lasso& l)
{
    std::set<int> seen;
    for (std::size_t j = 0; j < l.size(); ++j)
        if (!seen.insert(l.at(j).vertex).second) return false;
    return true;
}

/** Memory needed by fitted_profiles for this lasso. */
int fitted_memory(const Lasso& l) { return distinct_vertices(l) ? 1 : static_cast<int>(l.size()); }

/**
 * Profiles in which every player walks the lasso. When no vertex repeats the
 * vertex alone tells the position and one memory state suffices; otherwise
 * there is one memory state per position and off-lasso inputs either keep the
 * memory, restart it, or advance it as if the expected input had been read.
 */
std::vector<Profile> fitted_profiles(const Arena& a, const Lasso& l)
{
    if (distinct_vertices(l)) {
        Profile p;
        for (int i = 0; i < a.num_players(); ++i) {
            std::vector<int> acts(a.num_vertices());
            for (int v = 0; v < a.num_vertices(); ++v)
                acts[v] = a.available[i][v].empty() ? 0 : a.available[i][v].front();
            for (std::size_t j = 0; j < l.size(); ++j) acts[l.at(j).vertex] = l.at(j).tuple[i];
            Strategy s = Strategy::memoryless(i, acts);
            s.input = input_kind(a);
            s.update.assign(1, std::vector<int>(s.num_symbols(a), 0));
            p.push_back(std::move(s));
        }
        return {p};
    }
    const int n = static_cast<int>(l.size());
    const int loop = static_cast<int>(l.prefix.size());
    const InputKind input = input_kind(a);
    auto next = [&](int j) { return j + 1 < n ? j + 1 : loop; };
    std::vector<Profile> out;
    for (int variant = 0; variant < 3; ++variant) {
        Profile p;
        for (int i = 0; i < a.num_players(); ++i) {
            Strategy s;
            s.owner = i;
            s.input = input;
            s.memory = n;
            const int nsym = s.num_symbols(a);
            s.output.assign(n, std::vector<int>(a.num_vertices(), 0));
            s.update.assign(n, std::vector<int>(nsym, 0));
            for (int j = 0; j < n; ++j) {
                const Position& pos = l.at(j);
                for (int v = 0; v < a.num_vertices(); ++v)
                    s.output[j][v] = a.available[i][v].empty() ? 0 : a.available[i][v].front();
                s.output[j][pos.vertex] = pos.tuple[i];
                for (int y = 0; y < nsym; ++y) s.update[j][y] = variant == 0 ? j : variant == 1 ? 0 : next(j);
                s.update[j][s.symbol(a, pos.vertex, pos.tuple)] = next(j);
            }
            p.push_back(std::move(s));
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

std::optional<Lasso> arena_lasso(const Arena& a, const Guide& guide)
{
    // node key: (v, q_1 .. q_n); label: tuple code at v
    StateIndex idx;
    Digraph g;
    auto add = [&](const std::vector<int>& key) {
        auto [id, fresh] = idx.intern(key);
        if (fresh) g.add_node();
        return id;
    };
    std::vector<std::vector<int>> starts{{a.initial}};
    for (const Nbw* n : guide) {
        std::vector<std::vector<int>> grown;
        for (const auto& s : starts)
            for (int q : n->initial) {
                grown.push_back(s);
                grown.back().push_back(q);
            }
        starts = std::move(grown);
    }
    std::vector<int> init;
    for (const auto& s : starts) init.push_back(add(s));
    for (int s = 0; s < idx.size(); ++s) {
        const std::vector<int> key = idx.key(s);
        const int v = key[0];
        for (int c = 0; c < a.num_tuples(v); ++c) {
            const int w = a.delta[v][c];
            if (w < 0) continue;
            const Props letter = a.letter(v, a.decode(v, c));
            std::vector<std::vector<int>> succ{{w}};
            for (std::size_t k = 0; k < guide.size(); ++k) {
                std::vector<std::vector<int>> grown;
                for (const auto& e : guide[k]->edges[key[k + 1]])
                    if (e.matches(letter))
                        for (const auto& x : succ) {
                            grown.push_back(x);
                            grown.back().push_back(e.to);
                        }
                succ = std::move(grown);
            }
            for (const auto& x : succ) {
                int t = add(x);
                g.succ[s].push_back({t, c});
            }
        }
    }
    std::vector<std::vector<char>> fair;
    for (std::size_t k = 0; k < guide.size(); ++k) {
        std::vector<char> f(idx.size(), 0);
        for (int s = 0; s < idx.size(); ++s) f[s] = guide[k]->accepting[idx.key(s)[k + 1]];
        fair.push_back(std::move(f));
    }
    auto nl = find_fair_lasso(g, init, fair);
    if (!nl) return std::nullopt;
    Lasso l;
    for (auto [node, c] : nl->prefix) l.prefix.push_back({idx.key(node)[0], a.decode(idx.key(node)[0], c)});
    for (auto [node, c] : nl->cycle) l.cycle.push_back({idx.key(node)[0], a.decode(idx.key(node)[0], c)});
    return l;
}

bool objective_satisfiable(const Arena& a, const Objective& obj) { return arena_lasso(a, {&obj.pos}).has_value(); }

EnumerationStats enumerate_profiles(const Arena& a, int k, std::int64_t max_candidates,
                                    const std::vector<Lasso>& seeds,
                                    const std::function<bool(const Profile&)>& accept)
{
    EnumerationStats st;
    const int np = a.num_players();
    const std::vector<int> verts = reachable_vertices(a);
    std::vector<std::vector<MachineSpace>> spaces(np);
    for (int i = 0; i < np; ++i)
        for (int m = 1; m <= k; ++m) spaces[i].emplace_back(a, i, m, verts);

    std::vector<char> fitted(seeds.size(), 0);

    auto try_profile = [&](const Profile& p) {
        ++st.candidates;
        if (accept(p)) st.found = true;
        return st.found;
    };

    for (int level = 1; level <= k; ++level) {
        // memory vectors with largest entry == level, player 0 slowest
        std::vector<std::vector<int>> mems;
        {
            std::vector<std::int64_t> idx(np, 0), radix(np, level);
            do {
                std::vector<int> m(np);
                for (int i = 0; i < np; ++i) m[i] = static_cast<int>(idx[i]) + 1;
                if (*std::max_element(m.begin(), m.end()) == level) mems.push_back(m);
            } while (np > 0 && next_index(idx, radix));
        }
        std::int64_t total = 0;
        for (const auto& m : mems) {
            std::int64_t c = 1;
            for (int i = 0; i < np; ++i) c = sat_mul(c, spaces[i][m[i] - 1].count);
            total = sat_add(total, c);
        }

        if (total <= max_candidates - st.candidates) {
            for (const auto& m : mems) {
                std::vector<std::int64_t> idx(np, 0), radix(np);
                for (int i = 0; i < np; ++i) radix[i] = spaces[i][m[i] - 1].count;
                std::vector<Strategy> cache(np);
                std::vector<std::int64_t> cached(np, -1);
                do {
                    Profile p(np);
                    bool minimal = true;
                    for (int i = 0; i < np && minimal; ++i) {
                        if (cached[i] != idx[i]) {
                            cache[i] = spaces[i][m[i] - 1].decode(idx[i]);
                            cached[i] = idx[i];
                        }
                        minimal = all_memory_reachable(cache[i]);
                        p[i] = cache[i];
                    }
                    if (minimal && try_profile(p)) return st;
                } while (next_index(idx, radix));
            }
            continue;
        }

        st.exhaustive = false;
        for (std::size_t g = 0; g < seeds.size(); ++g) {
            if (fitted[g] || fitted_memory(seeds[g]) > level) continue;
            fitted[g] = 1;
            for (const Profile& p : fitted_profiles(a, seeds[g]))
                if (try_profile(p)) return st;
        }
    }
    return st;
}

SynthesisResult synthesize_bounded(const SynthesisInstance& inst)
{
    const Arena& a = inst.arena;
    const Objectives& objs = inst.objectives;
    if (static_cast<int>(objs.size()) != a.num_players())
        throw ArenaError("expected " + std::to_string(a.num_players()) + " objectives, got " +
                         std::to_string(objs.size()));
    if (a.num_players() == 0) throw ArenaError("arena has no players");
    if (inst.memory < 1) throw ArenaError("memory bound must be at least 1");

    SynthesisResult r;
    if (!objective_satisfiable(a, objs[0])) {
        r.note = "the system objective is not satisfied by any play of the arena";
        return r;
    }

    Deviators agents;
    for (int i = 1; i < a.num_players(); ++i) agents.push_back(i);
    auto solves = [&](const Profile& p) {
        if (!agent_payoff(a, p, objs[0])) return false;
        return agents.empty() || check(inst.solution, a, objs, p, agents).holds;
    };

    std::vector<Lasso> seeds;
    Guide all;
    for (const auto& o : objs) all.push_back(&o.pos);
    if (auto l = arena_lasso(a, all)) seeds.push_back(*l);
    if (auto l = arena_lasso(a, {&objs[0].pos})) seeds.push_back(*l);

    std::optional<Profile> found;
    EnumerationStats st = enumerate_profiles(a, inst.memory, inst.max_candidates, seeds, [&](const Profile& p) {
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
        r.note = "profile certified by re-checking the outcome and the " + concept_name(inst.solution) + " condition";
    } else if (st.exhaustive) {
        r.note = "no profile with memory <= " + std::to_string(inst.memory) + " exists";
    } else {
        r.note = "no profile found; the search space exceeded the candidate budget, so absence is not proven";
    }
    return r;
}

} // namespace rsynth
