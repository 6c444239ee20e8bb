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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace rsynth {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/** Interns vector keys as dense node ids in discovery order. */
class StateIndex {
public:
    /** Returns {id, inserted}. */
    std::pair<int, bool> intern(const std::vector<int>& key)
    {
        auto [it, ins] = ids_.emplace(key, static_cast<int>(keys_.size()));
        if (ins) keys_.push_back(key);
        return {it->second, ins};
    }
    std::optional<int> find(const std::vector<int>& key) const
    {
        auto it = ids_.find(key);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }
    const std::vector<int>& key(int id) const { return keys_[id]; }
    int size() const { return static_cast<int>(keys_.size()); }

private:
    std::unordered_map<std::vector<int>, int, VecHash> ids_;
    std::vector<std::vector<int>> keys_;
};

struct Edge {
    int to;
    int label;
};

/** Edge-labelled digraph; edges of a node are kept in insertion order. */
struct Digraph {
    std::vector<std::vector<Edge>> succ;

    int add_node()
    {
        succ.emplace_back();
        return static_cast<int>(succ.size()) - 1;
    }
    void ensure(int n)
    {
        if (static_cast<int>(succ.size()) < n) succ.resize(n);
    }
    int size() const { return static_cast<int>(succ.size()); }
};

/** A path as (node, label of the edge leaving it); cycle's last edge returns to cycle.front(). */
struct NodeLasso {
    std::vector<std::pair<int, int>> prefix;
    std::vector<std::pair<int, int>> cycle;
};

/** Strongly connected components; comp[v] = -1 for nodes outside `alive`. */
struct Sccs {
    std::vector<int> comp;
    std::vector<char> nontrivial;   // has at least one internal edge
    int count = 0;
};

Sccs strongly_connected(const Digraph& g, const std::vector<char>* alive = nullptr);

/** Nodes reachable from init, in BFS order. */
std::vector<int> reachable(const Digraph& g, const std::vector<int>& init, const std::vector<char>* alive = nullptr);

/**
 * Lasso from some init node that visits every set in `fair` infinitely often
 * (a single set gives Büchi). Deterministic: the first qualifying SCC in BFS
 * order is used and all paths are BFS-shortest.
 */
std::optional<NodeLasso> find_fair_lasso(const Digraph& g, const std::vector<int>& init,
                                         const std::vector<std::vector<char>>& fair,
                                         const std::vector<char>* alive = nullptr);

std::optional<NodeLasso> find_accepting_lasso(const Digraph& g, const std::vector<int>& init,
                                              const std::vector<char>& accepting,
                                              const std::vector<char>* alive = nullptr);

/** Marks every node from which some fair lasso (as in find_fair_lasso) starts. */
std::vector<char> fair_lasso_sources(const Digraph& g, const std::vector<std::vector<char>>& fair);

/** BFS-shortest path from any source to any node satisfying target; edges labelled as in NodeLasso. */
std::optional<std::vector<std::pair<int, int>>> shortest_path(const Digraph& g, const std::vector<int>& sources,
                                                              const std::function<bool(int)>& target,
                                                              const std::vector<char>* alive = nullptr);

} // namespace rsynth
