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

#include "rsynth/graph.hpp"

#include <algorithm>
#include <deque>

namespace rsynth {

namespace {

bool is_alive(const std::vector<char>* alive, int v) { return !alive || (*alive)[v]; }

/** BFS over edges leaving `from` (at least one edge is taken). */
std::optional<std::vector<std::pair<int, int>>> nonempty_path(const Digraph& g, int from,
                                                              const std::function<bool(int)>& target,
                                                              const std::vector<char>* alive)
{
    const int n = g.size();
    std::vector<int> parent(n, -2), plabel(n, -1);
    std::deque<int> q;
    for (const Edge& e : g.succ[from]) {
        if (!is_alive(alive, e.to) || parent[e.to] != -2) continue;
        parent[e.to] = -1;
        plabel[e.to] = e.label;
        q.push_back(e.to);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (target(v)) {
            std::vector<std::pair<int, int>> rev;
            int cur = v, lab = -1;
            while (true) {
                rev.push_back({cur, lab});
                lab = plabel[cur];
                if (parent[cur] == -1) break;
                cur = parent[cur];
            }
            rev.push_back({from, lab});
            std::reverse(rev.begin(), rev.end());
            return rev;
        }
        for (const Edge& e : g.succ[v]) {
            if (!is_alive(alive, e.to) || parent[e.to] != -2) continue;
            parent[e.to] = v;
            plabel[e.to] = e.label;
            q.push_back(e.to);
        }
    }
    return std::nullopt;
}

} // namespace

Sccs strongly_connected(const Digraph& g, const std::vector<char>* alive)
{
    const int n = g.size();
    Sccs r;
    r.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on(n, 0);
    int counter = 0;
    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (!is_alive(alive, root) || index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            int v = f.v;
            if (f.edge < g.succ[v].size()) {
                int w = g.succ[v][f.edge++].to;
                if (!is_alive(alive, w)) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int c = r.count++;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on[w] = 0;
                    r.comp[w] = c;
                    if (w == v) break;
                }
            }
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    r.nontrivial.assign(r.count, 0);
    for (int v = 0; v < n; ++v) {
        if (r.comp[v] < 0) continue;
        for (const Edge& e : g.succ[v])
            if (r.comp[e.to] == r.comp[v]) r.nontrivial[r.comp[v]] = 1;
    }
    return r;
}

std::vector<int> reachable(const Digraph& g, const std::vector<int>& init, const std::vector<char>* alive)
{
    std::vector<char> seen(g.size(), 0);
    std::vector<int> order;
    for (int s : init) {
        if (!is_alive(alive, s) || seen[s]) continue;
        seen[s] = 1;
        order.push_back(s);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (const Edge& e : g.succ[order[k]]) {
            if (!is_alive(alive, e.to) || seen[e.to]) continue;
            seen[e.to] = 1;
            order.push_back(e.to);
        }
    }
    return order;
}

std::optional<std::vector<std::pair<int, int>>> shortest_path(const Digraph& g, const std::vector<int>& sources,
                                                              const std::function<bool(int)>& target,
                                                              const std::vector<char>* alive)
{
    const int n = g.size();
    std::vector<int> parent(n, -2), plabel(n, -1);
    std::deque<int> q;
    for (int s : sources) {
        if (!is_alive(alive, s) || parent[s] != -2) continue;
        parent[s] = -1;
        q.push_back(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (target(v)) {
            std::vector<std::pair<int, int>> rev;
            int cur = v, lab = -1;
            while (true) {
                rev.push_back({cur, lab});
                if (parent[cur] == -1) break;
                lab = plabel[cur];
                cur = parent[cur];
            }
            std::reverse(rev.begin(), rev.end());
            return rev;
        }
        for (const Edge& e : g.succ[v]) {
            if (!is_alive(alive, e.to) || parent[e.to] != -2) continue;
            parent[e.to] = v;
            plabel[e.to] = e.label;
            q.push_back(e.to);
        }
    }
    return std::nullopt;
}

std::optional<NodeLasso> find_fair_lasso(const Digraph& g, const std::vector<int>& init,
                                         const std::vector<std::vector<char>>& fair, const std::vector<char>* alive)
{
    std::vector<int> order = reachable(g, init, alive);
    if (order.empty()) return std::nullopt;
    std::vector<char> live(g.size(), 0);
    for (int v : order) live[v] = 1;
    Sccs s = strongly_connected(g, &live);

    std::vector<std::vector<char>> has(fair.size(), std::vector<char>(s.count, 0));
    for (int v : order)
        for (std::size_t k = 0; k < fair.size(); ++k)
            if (fair[k][v]) has[k][s.comp[v]] = 1;

    int entry = -1;
    for (int v : order) {
        int c = s.comp[v];
        if (!s.nontrivial[c]) continue;
        bool ok = true;
        for (std::size_t k = 0; k < fair.size() && ok; ++k) ok = has[k][c];
        if (ok) {
            entry = v;
            break;
        }
    }
    if (entry < 0) return std::nullopt;

    const int c = s.comp[entry];
    std::vector<char> in_c(g.size(), 0);
    for (int v : order)
        if (s.comp[v] == c) in_c[v] = 1;

    NodeLasso out;
    auto pre = shortest_path(g, init, [&](int v) { return v == entry; }, &live);
    out.prefix.assign(pre->begin(), pre->end() - 1);

    int cur = entry;
    std::vector<std::pair<int, int>> cyc;
    auto append = [&](const std::vector<std::pair<int, int>>& seg) {
        // seg starts at cur (label set) and ends at the new cur with label -1
        for (std::size_t k = 0; k + 1 < seg.size(); ++k) cyc.push_back(seg[k]);
        cur = seg.back().first;
    };
    for (const auto& set : fair) {
        if (set[cur]) continue;
        auto seg = shortest_path(g, {cur}, [&](int v) { return set[v] != 0; }, &in_c);
        append(*seg);
    }
    auto back = nonempty_path(g, cur, [&](int v) { return v == entry; }, &in_c);
    append(*back);
    out.cycle = std::move(cyc);
    return out;
}

std::vector<char> fair_lasso_sources(const Digraph& g, const std::vector<std::vector<char>>& fair)
{
    const int n = g.size();
    Sccs s = strongly_connected(g);
    std::vector<std::vector<char>> has(fair.size(), std::vector<char>(s.count, 0));
    for (int v = 0; v < n; ++v)
        for (std::size_t k = 0; k < fair.size(); ++k)
            if (fair[k][v]) has[k][s.comp[v]] = 1;
    std::vector<std::vector<int>> pred(n);
    for (int v = 0; v < n; ++v)
        for (const Edge& e : g.succ[v]) pred[e.to].push_back(v);
    std::vector<char> out(n, 0);
    std::vector<int> todo;
    for (int v = 0; v < n; ++v) {
        int c = s.comp[v];
        bool ok = s.nontrivial[c];
        for (std::size_t k = 0; k < fair.size() && ok; ++k) ok = has[k][c];
        if (ok) {
            out[v] = 1;
            todo.push_back(v);
        }
    }
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int u : pred[v])
            if (!out[u]) {
                out[u] = 1;
                todo.push_back(u);
            }
    }
    return out;
}

std::optional<NodeLasso> find_accepting_lasso(const Digraph& g, const std::vector<int>& init,
                                              const std::vector<char>& accepting, const std::vector<char>* alive)
{
    return find_fair_lasso(g, init, {accepting}, alive);
}

} // namespace rsynth
