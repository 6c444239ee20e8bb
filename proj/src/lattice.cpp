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

#include "rsynth/lattice.hpp"

#include <algorithm>
#include <map>

namespace rsynth {

namespace {

bool in_range(Elem e, int n) { return e >= 0 && e < n; }

void check_total(const LatticeTables& t, LatticeReport& r)
{
    const int n = static_cast<int>(t.names.size());
    auto bad = [&](const std::string& what) { r.malformed.push_back(what); };
    if (static_cast<int>(t.leq.size()) != n) bad("leq: expected " + std::to_string(n) + " rows");
    if (static_cast<int>(t.join.size()) != n) bad("join: expected " + std::to_string(n) + " rows");
    if (static_cast<int>(t.meet.size()) != n) bad("meet: expected " + std::to_string(n) + " rows");
    if (static_cast<int>(t.neg.size()) != n) bad("neg: expected " + std::to_string(n) + " entries");
    if (!r.malformed.empty()) return;
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(t.leq[a].size()) != n) bad("leq row " + t.names[a] + " incomplete");
        if (static_cast<int>(t.join[a].size()) != n) bad("join row " + t.names[a] + " incomplete");
        if (static_cast<int>(t.meet[a].size()) != n) bad("meet row " + t.names[a] + " incomplete");
        if (!in_range(t.neg[a], n)) bad("neg(" + t.names[a] + ") missing");
    }
    if (!r.malformed.empty()) return;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!in_range(t.join[a][b], n)) bad("join(" + t.names[a] + "," + t.names[b] + ") missing");
            if (!in_range(t.meet[a][b], n)) bad("meet(" + t.names[a] + "," + t.names[b] + ") missing");
        }
    }
}

} // namespace

LatticeReport validate_lattice(const LatticeTables& t)
{
    LatticeReport r;
    check_total(t, r);
    if (!r.malformed.empty()) return r;

    const int n = static_cast<int>(t.names.size());
    if (n == 0) {
        r.violations.push_back({"nonempty", {}});
        return r;
    }
    const auto& N = t.names;
    auto le = [&](int a, int b) { return t.leq[a][b] != 0; };
    auto add = [&](std::string law, std::vector<int> w) {
        std::vector<std::string> names;
        for (int x : w) names.push_back(N[x]);
        r.violations.push_back({std::move(law), std::move(names)});
    };

    for (int a = 0; a < n; ++a)
        if (!le(a, a)) add("reflexivity", {a});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && le(a, b) && le(b, a)) add("antisymmetry", {a, b});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (le(a, b) && le(b, c) && !le(a, c)) add("transitivity", {a, b, c});

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int j = t.join[a][b];
            int m = t.meet[a][b];
            bool lub = le(a, j) && le(b, j);
            bool glb = le(m, a) && le(m, b);
            for (int c = 0; c < n && (lub || glb); ++c) {
                if (le(a, c) && le(b, c) && !le(j, c)) lub = false;
                if (le(c, a) && le(c, b) && !le(c, m)) glb = false;
            }
            if (!lub) add("join is least upper bound", {a, b, j});
            if (!glb) add("meet is greatest lower bound", {a, b, m});
        }
    }

    int tops = 0, bots = 0;
    for (int a = 0; a < n; ++a) {
        bool is_top = true, is_bot = true;
        for (int b = 0; b < n; ++b) {
            if (!le(b, a)) is_top = false;
            if (!le(a, b)) is_bot = false;
        }
        tops += is_top;
        bots += is_bot;
    }
    if (tops != 1) r.violations.push_back({"unique top", {}});
    if (bots != 1) r.violations.push_back({"unique bottom", {}});

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int lhs = t.meet[a][t.join[b][c]];
                int rhs = t.join[t.meet[a][b]][t.meet[a][c]];
                if (lhs != rhs) add("distributivity", {a, b, c});
            }

    for (int a = 0; a < n; ++a)
        if (t.neg[t.neg[a]] != a) add("involution", {a});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (t.neg[t.join[a][b]] != t.meet[t.neg[a]][t.neg[b]]) add("de morgan", {a, b});
            if (le(a, b) && !le(t.neg[b], t.neg[a])) add("antitone", {a, b});
        }
    return r;
}

LatticeTables Lattice::tables_from_order(const std::vector<std::string>& names,
                                         const std::vector<std::pair<std::string, std::string>>& leq,
                                         const std::vector<std::pair<std::string, std::string>>& neg)
{
    const int n = static_cast<int>(names.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) {
        if (!idx.emplace(names[i], i).second) throw LatticeError("duplicate element '" + names[i] + "'");
    }
    auto at = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end()) throw LatticeError("unknown element '" + s + "'");
        return it->second;
    };

    LatticeTables t;
    t.names = names;
    t.leq.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) t.leq[i][i] = 1;
    for (const auto& [a, b] : leq) t.leq[at(a)][at(b)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (t.leq[i][k] && t.leq[k][j]) t.leq[i][j] = 1;

    t.join.assign(n, std::vector<Elem>(n, -1));
    t.meet.assign(n, std::vector<Elem>(n, -1));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::vector<int> ub, lb;
            for (int c = 0; c < n; ++c) {
                if (t.leq[a][c] && t.leq[b][c]) ub.push_back(c);
                if (t.leq[c][a] && t.leq[c][b]) lb.push_back(c);
            }
            auto least = [&](const std::vector<int>& s, bool up) {
                int found = -1, count = 0;
                for (int c : s) {
                    bool ext = true;
                    for (int d : s) ext = ext && (up ? t.leq[c][d] : t.leq[d][c]);
                    if (ext) {
                        found = c;
                        ++count;
                    }
                }
                return count == 1 ? found : -1;
            };
            t.join[a][b] = least(ub, true);
            t.meet[a][b] = least(lb, false);
            if (t.join[a][b] < 0)
                throw LatticeError("no unique least upper bound for " + names[a] + "," + names[b]);
            if (t.meet[a][b] < 0)
                throw LatticeError("no unique greatest lower bound for " + names[a] + "," + names[b]);
        }
    }
    t.neg.assign(n, -1);
    for (const auto& [a, b] : neg) t.neg[at(a)] = at(b);
    return t;
}

Lattice Lattice::from_order(const std::vector<std::string>& names,
                            const std::vector<std::pair<std::string, std::string>>& leq,
                            const std::vector<std::pair<std::string, std::string>>& neg)
{
    return Lattice(tables_from_order(names, leq, neg));
}

Lattice::Lattice(LatticeTables t) : t_(std::move(t))
{
    LatticeReport r = validate_lattice(t_);
    if (!r.malformed.empty()) throw LatticeError("malformed lattice table: " + r.malformed.front());
    if (!r.violations.empty()) {
        const auto& v = r.violations.front();
        std::string w;
        for (const auto& s : v.witness) w += (w.empty() ? "" : ",") + s;
        throw LatticeError("lattice law violated: " + v.law + " (" + w + ")");
    }
    const int n = size();
    for (int a = 0; a < n; ++a) {
        bool is_top = true, is_bot = true;
        for (int b = 0; b < n; ++b) {
            is_top = is_top && leq(b, a);
            is_bot = is_bot && leq(a, b);
        }
        if (is_top) top_ = a;
        if (is_bot) bottom_ = a;
    }
    // x is join-irreducible iff x != bottom and x <= y v z forces x <= y or x <= z.
    for (int x = 0; x < n; ++x) {
        if (x == bottom_) continue;
        bool irreducible = true;
        for (int y = 0; y < n && irreducible; ++y)
            for (int z = 0; z < n && irreducible; ++z)
                if (leq(x, join(y, z)) && !leq(x, y) && !leq(x, z)) irreducible = false;
        if (irreducible) ji_.push_back(x);
    }
}

Elem Lattice::index(const std::string& n) const
{
    auto e = find(n);
    if (!e) throw LatticeError("unknown element '" + n + "'");
    return *e;
}

std::optional<Elem> Lattice::find(const std::string& n) const
{
    for (int i = 0; i < size(); ++i)
        if (t_.names[i] == n) return i;
    return std::nullopt;
}

Elem Lattice::join_all(const std::vector<Elem>& xs) const
{
    Elem r = bottom_;
    for (Elem x : xs) r = join(r, x);
    return r;
}

Elem Lattice::meet_all(const std::vector<Elem>& xs) const
{
    Elem r = top_;
    for (Elem x : xs) r = meet(r, x);
    return r;
}

std::vector<Elem> Lattice::ji_below(Elem l) const
{
    if (l < 0 || l >= size()) throw LatticeError("unknown element index " + std::to_string(l));
    std::vector<Elem> out;
    for (Elem x : ji_)
        if (leq(x, l)) out.push_back(x);
    return out;
}

Lattice Lattice::boolean() { return chain(2); }

Lattice Lattice::chain(int n)
{
    if (n < 1) throw LatticeError("chain needs at least one element");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    if (n == 2) names = {"bot", "top"};
    if (n == 3) names = {"0", "half", "1"};
    std::vector<std::pair<std::string, std::string>> le, ng;
    for (int i = 0; i + 1 < n; ++i) le.push_back({names[i], names[i + 1]});
    for (int i = 0; i < n; ++i) ng.push_back({names[i], names[n - 1 - i]});
    return from_order(names, le, ng);
}

Lattice Lattice::diamond()
{
    return from_order({"bot", "a", "b", "top"},
                      {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}},
                      {{"bot", "top"}, {"top", "bot"}, {"a", "b"}, {"b", "a"}});
}

Lattice Lattice::powerset(int k)
{
    if (k < 0 || k > 6) throw LatticeError("powerset size out of range");
    const int n = 1 << k;
    auto nm = [&](int s) {
        std::string r = "{";
        for (int i = 0; i < k; ++i)
            if (s >> i & 1) r += (r.size() > 1 ? "," : "") + std::to_string(i);
        return r + "}";
    };
    std::vector<std::string> names;
    for (int s = 0; s < n; ++s) names.push_back(nm(s));
    std::vector<std::pair<std::string, std::string>> le, ng;
    for (int s = 0; s < n; ++s)
        for (int i = 0; i < k; ++i)
            if (!(s >> i & 1)) le.push_back({names[s], names[s | 1 << i]});
    for (int s = 0; s < n; ++s) ng.push_back({names[s], names[(n - 1) ^ s]});
    return from_order(names, le, ng);
}

Elem lattice_algebra(const Lattice& l, LatticeOp op, Elem a, std::optional<Elem> b)
{
    auto check = [&](Elem e) {
        if (e < 0 || e >= l.size()) throw LatticeError("unknown element index " + std::to_string(e));
    };
    check(a);
    if (op == LatticeOp::Neg) {
        if (b) throw LatticeError("neg takes one operand");
        return l.neg(a);
    }
    if (!b) throw LatticeError("join/meet take two operands");
    check(*b);
    return op == LatticeOp::Join ? l.join(a, *b) : l.meet(a, *b);
}

} // namespace rsynth
