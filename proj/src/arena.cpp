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

#include "rsynth/arena.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace rsynth {

int Arena::num_tuples(int v) const
{
    int n = 1;
    for (int i = 0; i < num_players(); ++i) n *= static_cast<int>(available[i][v].size());
    return n;
}

Tuple Arena::decode(int v, int code) const
{
    Tuple t(num_players());
    for (int i = num_players() - 1; i >= 0; --i) {
        int r = static_cast<int>(available[i][v].size());
        t[i] = available[i][v][code % r];
        code /= r;
    }
    return t;
}

int Arena::encode(int v, const Tuple& t) const
{
    if (static_cast<int>(t.size()) != num_players()) return -1;
    int code = 0;
    for (int i = 0; i < num_players(); ++i) {
        const auto& av = available[i][v];
        auto it = std::lower_bound(av.begin(), av.end(), t[i]);
        if (it == av.end() || *it != t[i]) return -1;
        code = code * static_cast<int>(av.size()) + static_cast<int>(it - av.begin());
    }
    return code;
}

int Arena::joint_code(const Tuple& t) const
{
    int code = 0;
    for (int i = 0; i < num_players(); ++i) code = code * static_cast<int>(actions[i].size()) + t[i];
    return code;
}

int Arena::num_joint_codes() const
{
    int n = 1;
    for (const auto& a : actions) n *= static_cast<int>(a.size());
    return n;
}

Tuple Arena::joint_decode(int code) const
{
    Tuple t(num_players());
    for (int i = num_players() - 1; i >= 0; --i) {
        int r = static_cast<int>(actions[i].size());
        t[i] = code % r;
        code /= r;
    }
    return t;
}

Props Arena::letter(int v, const Tuple& t) const
{
    Props p = labels[v];
    for (int i = 0; i < num_players(); ++i) p |= action_props[i][t[i]];
    return p;
}

namespace {

template <class V>
int find_name(const V& names, const std::string& n, const char* what)
{
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw ArenaError(std::string("unknown ") + what + " '" + n + "'");
    return static_cast<int>(it - names.begin());
}

} // namespace

int Arena::vertex_index(const std::string& n) const { return find_name(vertices, n, "vertex"); }
int Arena::player_index(const std::string& n) const { return find_name(players, n, "player"); }
int Arena::action_index(int p, const std::string& n) const { return find_name(actions.at(p), n, "action"); }
int Arena::prop_index(const std::string& n) const { return find_name(props, n, "proposition"); }

std::string Arena::props_to_string(Props p) const
{
    std::string r = "{";
    for (std::size_t i = 0; i < props.size(); ++i)
        if (p >> i & 1) r += (r.size() > 1 ? "," : "") + props[i];
    return r + "}";
}

std::string Arena::tuple_to_string(const Tuple& t) const
{
    std::string r = "<";
    for (int i = 0; i < num_players(); ++i) r += (i ? "," : "") + actions[i][t[i]];
    return r + ">";
}

ArenaReport validate_arena(const Arena& a)
{
    ArenaReport r;
    auto err = [&](std::string s) { r.errors.push_back(std::move(s)); };
    const int nv = a.num_vertices(), np = a.num_players();
    if (nv == 0) err("arena has no vertices");
    if (np == 0) err("arena has no players");
    if (a.props.size() > 64) err("more than 64 propositions");
    if (a.initial < 0 || a.initial >= nv) err("initial vertex out of range");
    if (static_cast<int>(a.actions.size()) != np || static_cast<int>(a.available.size()) != np ||
        static_cast<int>(a.action_props.size()) != np)
        err("per-player tables do not match the player count");
    if (static_cast<int>(a.delta.size()) != nv || static_cast<int>(a.labels.size()) != nv)
        err("per-vertex tables do not match the vertex count");
    if (!r.ok()) return r;

    const Props universe = a.props.size() >= 64 ? ~Props(0) : ((Props(1) << a.props.size()) - 1);
    for (int i = 0; i < np; ++i) {
        if (static_cast<int>(a.available[i].size()) != nv) {
            err("availability of " + a.players[i] + " does not cover every vertex");
            continue;
        }
        if (a.action_props[i].size() != a.actions[i].size())
            err("action labels of " + a.players[i] + " do not match its actions");
        for (Props p : a.action_props[i])
            if (p & ~universe) err("action label of " + a.players[i] + " outside the proposition universe");
        for (int v = 0; v < nv; ++v) {
            const auto& av = a.available[i][v];
            if (av.empty()) err(a.players[i] + " has no action at " + a.vertices[v]);
            for (int x : av)
                if (x < 0 || x >= static_cast<int>(a.actions[i].size()))
                    err("unknown action id for " + a.players[i] + " at " + a.vertices[v]);
            if (!std::is_sorted(av.begin(), av.end()) || std::adjacent_find(av.begin(), av.end()) != av.end())
                err("availability of " + a.players[i] + " at " + a.vertices[v] + " is not a sorted set");
        }
    }
    if (!r.ok()) return r;
    for (int v = 0; v < nv; ++v) {
        if (a.labels[v] & ~universe) err("label of " + a.vertices[v] + " outside the proposition universe");
        const int nt = a.num_tuples(v);
        if (static_cast<int>(a.delta[v].size()) != nt) {
            err("transition row of " + a.vertices[v] + " has wrong size");
            continue;
        }
        for (int c = 0; c < nt; ++c) {
            int w = a.delta[v][c];
            if (w < 0) err("missing transition at " + a.vertices[v] + " for " + a.tuple_to_string(a.decode(v, c)));
            else if (w >= nv) err("transition target out of range at " + a.vertices[v]);
        }
    }
    return r;
}

int successor(const Arena& a, int v, const Tuple& t)
{
    if (v < 0 || v >= a.num_vertices()) throw ArenaError("vertex out of range");
    if (static_cast<int>(t.size()) != a.num_players()) throw ArenaError("tuple has wrong arity");
    for (int i = 0; i < a.num_players(); ++i) {
        const auto& av = a.available[i][v];
        if (!std::binary_search(av.begin(), av.end(), t[i])) {
            std::string act = (t[i] >= 0 && t[i] < static_cast<int>(a.actions[i].size())) ? a.actions[i][t[i]]
                                                                                            : std::to_string(t[i]);
            throw IllegalActionError(i, "illegal action " + act + " for player " + a.players[i] + " at " +
                                            a.vertices[v]);
        }
    }
    int w = a.delta[v][a.encode(v, t)];
    if (w < 0) throw ArenaError("missing transition at " + a.vertices[v]);
    return w;
}

Arena arena_from_variables(const std::vector<std::vector<std::string>>& partition,
                           const std::vector<std::string>& player_names)
{
    Arena a;
    std::set<std::string> seen;
    for (const auto& xs : partition)
        for (const auto& x : xs) {
            if (!seen.insert(x).second) throw ArenaError("variable '" + x + "' appears in two sets");
            a.props.push_back(x);
        }
    if (a.props.size() > 64) throw ArenaError("more than 64 variables");
    const int np = static_cast<int>(partition.size());
    a.vertices = {"v"};
    a.initial = 0;
    a.labels = {0};
    int base = 0;
    for (int i = 0; i < np; ++i) {
        a.players.push_back(i < static_cast<int>(player_names.size()) ? player_names[i] : "agent" + std::to_string(i));
        const auto& xs = partition[i];
        const int k = static_cast<int>(xs.size());
        if (k > 16) throw ArenaError("too many variables for one agent");
        std::vector<std::string> names;
        std::vector<Props> lab;
        std::vector<int> all;
        for (int s = 0; s < (1 << k); ++s) {
            std::string n = "{";
            Props p = 0;
            for (int b = 0; b < k; ++b)
                if (s >> b & 1) {
                    n += (n.size() > 1 ? "," : "") + xs[b];
                    p |= Props(1) << (base + b);
                }
            names.push_back(n + "}");
            lab.push_back(p);
            all.push_back(s);
        }
        a.actions.push_back(names);
        a.action_props.push_back(lab);
        a.available.push_back({all});
        base += k;
    }
    a.delta = {std::vector<int>(a.num_tuples(0), 0)};
    a.variable = true;
    return a;
}

ArenaBuilder& ArenaBuilder::propositions(const std::vector<std::string>& ps)
{
    props_ = ps;
    return *this;
}

ArenaBuilder& ArenaBuilder::vertex(const std::string& name, const std::vector<std::string>& label)
{
    vertices_.push_back({name, label});
    if (initial_.empty()) initial_ = name;
    return *this;
}

ArenaBuilder& ArenaBuilder::player(const std::string& name, const std::vector<std::string>& actions)
{
    players_.push_back({name, actions});
    return *this;
}

ArenaBuilder& ArenaBuilder::initial(const std::string& v)
{
    initial_ = v;
    return *this;
}

ArenaBuilder& ArenaBuilder::available(const std::string& player, const std::string& vertex,
                                      const std::vector<std::string>& actions)
{
    avail_[{player, vertex}] = actions;
    return *this;
}

ArenaBuilder& ArenaBuilder::default_action(const std::string& player, const std::string& action)
{
    default_[player] = action;
    return *this;
}

ArenaBuilder& ArenaBuilder::edge(const std::string& from, const std::vector<std::string>& tuple, const std::string& to)
{
    edges_.emplace_back(from, tuple, to);
    return *this;
}

ArenaBuilder& ArenaBuilder::action_label(const std::string& player, const std::string& action,
                                         const std::vector<std::string>& props)
{
    action_labels_[{player, action}] = props;
    return *this;
}

Arena ArenaBuilder::build() const
{
    Arena a;
    a.props = props_;
    auto prop_mask = [&](const std::vector<std::string>& ps) {
        Props m = 0;
        for (const auto& p : ps) m |= Props(1) << a.prop_index(p);
        return m;
    };
    for (const auto& [n, lab] : vertices_) {
        if (std::find(a.vertices.begin(), a.vertices.end(), n) != a.vertices.end())
            throw ArenaError("duplicate vertex '" + n + "'");
        a.vertices.push_back(n);
        a.labels.push_back(prop_mask(lab));
    }
    for (const auto& [n, acts] : players_) {
        a.players.push_back(n);
        a.actions.push_back(acts);
    }
    const int nv = a.num_vertices(), np = a.num_players();
    a.initial = initial_.empty() ? 0 : a.vertex_index(initial_);
    a.available.assign(np, std::vector<std::vector<int>>(nv));
    a.action_props.assign(np, {});
    for (int i = 0; i < np; ++i) {
        a.action_props[i].assign(a.actions[i].size(), 0);
        for (int v = 0; v < nv; ++v) {
            auto it = avail_.find({a.players[i], a.vertices[v]});
            std::vector<int> ids;
            if (it != avail_.end()) {
                for (const auto& s : it->second) ids.push_back(a.action_index(i, s));
            } else if (auto d = default_.find(a.players[i]); d != default_.end()) {
                ids.push_back(a.action_index(i, d->second));
            } else {
                for (int x = 0; x < static_cast<int>(a.actions[i].size()); ++x) ids.push_back(x);
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            a.available[i][v] = ids;
        }
    }
    for (const auto& [key, ps] : action_labels_) {
        int i = a.player_index(key.first);
        a.action_props[i][a.action_index(i, key.second)] = prop_mask(ps);
    }
    for (const auto& [n, acts] : avail_) {
        a.player_index(n.first);
        a.vertex_index(n.second);
    }
    a.delta.assign(nv, {});
    for (int v = 0; v < nv; ++v) a.delta[v].assign(a.num_tuples(v), -1);
    for (const auto& [from, names, to] : edges_) {
        int v = a.vertex_index(from);
        if (static_cast<int>(names.size()) != np) throw ArenaError("edge tuple has wrong arity at " + from);
        Tuple t(np);
        for (int i = 0; i < np; ++i) t[i] = a.action_index(i, names[i]);
        int code = a.encode(v, t);
        if (code < 0) throw ArenaError("edge uses an unavailable action at " + from);
        a.delta[v][code] = a.vertex_index(to);
    }
    return a;
}

} // namespace rsynth
