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

#include "rsynth/strategy.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>

namespace rsynth {

int Strategy::num_symbols(const Arena& a) const
{
    return input == InputKind::Vertices ? a.num_vertices() : a.num_joint_codes();
}

int Strategy::symbol(const Arena& a, int v, const Tuple& t) const
{
    return input == InputKind::Vertices ? v : a.joint_code(t);
}

Strategy Strategy::memoryless(int owner, const std::vector<int>& actions)
{
    Strategy s;
    s.owner = owner;
    s.memory = 1;
    s.initial = 0;
    s.output = {actions};
    s.update = {std::vector<int>(actions.size(), 0)};
    return s;
}

const Position& Lasso::at(std::size_t k) const
{
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
}

Props LassoWord::at(std::size_t k) const
{
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
}

ArenaReport validate_strategy(const Arena& a, const Strategy& s, bool eager)
{
    ArenaReport r;
    auto err = [&](std::string m) { r.errors.push_back("strategy of player " + std::to_string(s.owner) + ": " + m); };
    if (s.owner < 0 || s.owner >= a.num_players()) {
        err("owner out of range");
        return r;
    }
    if (s.memory < 1) err("memory must have at least one state");
    if (s.initial < 0 || s.initial >= s.memory) err("initial memory out of range");
    if (s.input == InputKind::Actions && !a.variable && a.num_vertices() > 1)
        err("action-input strategies are only allowed on variable-partition arenas");
    if (static_cast<int>(s.update.size()) != s.memory || static_cast<int>(s.output.size()) != s.memory) {
        err("tables do not match the memory size");
        return r;
    }
    const int ns = s.num_symbols(a);
    for (int m = 0; m < s.memory; ++m) {
        if (static_cast<int>(s.update[m].size()) != ns) err("update row " + std::to_string(m) + " has wrong size");
        else
            for (int x : s.update[m])
                if (x < 0 || x >= s.memory) err("update target out of range in row " + std::to_string(m));
        if (static_cast<int>(s.output[m].size()) != a.num_vertices()) {
            err("output row " + std::to_string(m) + " has wrong size");
            continue;
        }
        for (int v = 0; v < a.num_vertices(); ++v) {
            int act = s.output[m][v];
            if (act < 0 || act >= static_cast<int>(a.actions[s.owner].size())) {
                err("output action out of range at memory " + std::to_string(m));
                continue;
            }
            const auto& av = a.available[s.owner][v];
            if (eager && !std::binary_search(av.begin(), av.end(), act))
                err("memory " + std::to_string(m) + " plays unavailable " + a.actions[s.owner][act] + " at " +
                    a.vertices[v]);
        }
    }
    return r;
}

ArenaReport validate_profile(const Arena& a, const Profile& p, bool eager)
{
    ArenaReport r;
    if (static_cast<int>(p.size()) != a.num_players()) {
        r.errors.push_back("profile has " + std::to_string(p.size()) + " strategies for " +
                           std::to_string(a.num_players()) + " players");
        return r;
    }
    for (int i = 0; i < a.num_players(); ++i) {
        if (p[i].owner != i) r.errors.push_back("strategy " + std::to_string(i) + " is owned by another player");
        ArenaReport s = validate_strategy(a, p[i], eager);
        r.errors.insert(r.errors.end(), s.errors.begin(), s.errors.end());
    }
    return r;
}

Memories initial_memories(const Profile& p)
{
    Memories m;
    for (const auto& s : p) m.push_back(s.initial);
    return m;
}

Tuple profile_actions(const Arena& a, const Profile& p, int v, const Memories& mem, const std::vector<int>& history)
{
    Tuple t(a.num_players());
    for (int i = 0; i < a.num_players(); ++i) {
        int act = p[i].output[mem[i]][v];
        const auto& av = a.available[i][v];
        if (!std::binary_search(av.begin(), av.end(), act)) {
            std::vector<int> h = history;
            h.push_back(v);
            std::string name = (act >= 0 && act < static_cast<int>(a.actions[i].size())) ? a.actions[i][act] : "?";
            throw StrategyError(i, h, "strategy of " + a.players[i] + " plays unavailable action " + name + " at " +
                                          a.vertices[v]);
        }
        t[i] = act;
    }
    return t;
}

Memories advance(const Arena& a, const Profile& p, const Memories& mem, int v, const Tuple& t)
{
    Memories out(mem.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].update[mem[i]][p[i].symbol(a, v, t)];
    return out;
}

Lasso outcome_from(const Arena& a, const Profile& p, int v, const Memories& mem0, const std::vector<int>& history_so_far)
{
    StateIndex seen;
    std::vector<Position> path;
    std::vector<int> hist = history_so_far;
    Memories mem = mem0;
    while (true) {
        std::vector<int> key = mem;
        key.push_back(v);
        auto [id, fresh] = seen.intern(key);
        if (!fresh) {
            Lasso l;
            l.prefix.assign(path.begin(), path.begin() + id);
            l.cycle.assign(path.begin() + id, path.end());
            return l;
        }
        Tuple t = profile_actions(a, p, v, mem, hist);
        path.push_back({v, t});
        hist.push_back(v);
        Memories next = advance(a, p, mem, v, t);
        v = a.delta[v][a.encode(v, t)];
        mem = std::move(next);
    }
}

Lasso outcome(const Arena& a, const Profile& p)
{
    return outcome_from(a, p, a.initial, initial_memories(p));
}

History complete_history(const Arena& a, const History& h)
{
    if (h.vertices.empty()) throw ArenaError("history is empty");
    if (h.vertices.front() != a.initial) throw ArenaError("history does not start at the initial vertex");
    if (!h.tuples.empty() && h.tuples.size() + 1 != h.vertices.size())
        throw ArenaError("history needs one tuple per step");
    History out = h;
    out.tuples.clear();
    for (std::size_t k = 0; k + 1 < h.vertices.size(); ++k) {
        int v = h.vertices[k], w = h.vertices[k + 1];
        if (v < 0 || v >= a.num_vertices() || w < 0 || w >= a.num_vertices())
            throw ArenaError("history vertex out of range");
        if (!h.tuples.empty()) {
            int code = a.encode(v, h.tuples[k]);
            if (code < 0 || a.delta[v][code] != w)
                throw ArenaError("history step " + std::to_string(k) + " is not consistent with the arena");
            out.tuples.push_back(h.tuples[k]);
            continue;
        }
        int found = -1;
        for (int c = 0; c < a.num_tuples(v) && found < 0; ++c)
            if (a.delta[v][c] == w) found = c;
        if (found < 0)
            throw ArenaError("history step " + a.vertices[v] + " -> " + a.vertices[w] + " is not consistent");
        out.tuples.push_back(a.decode(v, found));
    }
    return out;
}

Memories memories_after(const Arena& a, const Profile& p, const History& h)
{
    History full = complete_history(a, h);
    for (const auto& s : p)
        if (s.input == InputKind::Actions && h.tuples.empty() && h.vertices.size() > 1)
            throw ArenaError("action-input strategies need a history with tuples");
    Memories mem = initial_memories(p);
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k) mem = advance(a, p, mem, full.vertices[k], full.tuples[k]);
    return mem;
}

Lasso shifted_outcome(const Arena& a, const Profile& p, const History& h)
{
    History full = complete_history(a, h);
    Memories mem = memories_after(a, p, full);
    std::vector<int> prior(full.vertices.begin(), full.vertices.end() - 1);
    Lasso tail = outcome_from(a, p, full.vertices.back(), mem, prior);
    Lasso out;
    for (std::size_t k = 0; k + 1 < full.vertices.size(); ++k) out.prefix.push_back({full.vertices[k], full.tuples[k]});
    out.prefix.insert(out.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    out.cycle = std::move(tail.cycle);
    return out;
}

LassoWord word_of(const Arena& a, const Lasso& l)
{
    LassoWord w;
    for (const auto& p : l.prefix) w.prefix.push_back(a.letter(p.vertex, p.tuple));
    for (const auto& p : l.cycle) w.cycle.push_back(a.letter(p.vertex, p.tuple));
    return w;
}

std::string lasso_to_string(const Arena& a, const Lasso& l)
{
    auto pos = [&](const Position& p) { return a.vertices[p.vertex] + a.tuple_to_string(p.tuple); };
    std::string r;
    for (const auto& p : l.prefix) r += pos(p) + " ";
    r += "(";
    for (std::size_t k = 0; k < l.cycle.size(); ++k) r += (k ? " " : "") + pos(l.cycle[k]);
    return r + ")^w";
}

std::string history_to_string(const Arena& a, const History& h)
{
    std::string r;
    for (std::size_t k = 0; k < h.vertices.size(); ++k) r += (k ? "." : "") + a.vertices[h.vertices[k]];
    return r;
}

} // namespace rsynth
