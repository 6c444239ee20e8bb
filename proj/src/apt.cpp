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
#include "rsynth/parity.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace rsynth {

// ---------------------------------------------------------------- formulas

namespace {

Pbf make(PbfKind k, int dir = -1, int state = -1, std::vector<Pbf> kids = {})
{
    auto n = std::make_shared<PbfNode>();
    n->kind = k;
    n->dir = dir;
    n->state = state;
    n->kids = std::move(kids);
    return n;
}

Pbf junction(PbfKind k, std::vector<Pbf> kids)
{
    const PbfKind unit = k == PbfKind::And ? PbfKind::True : PbfKind::False;
    const PbfKind zero = k == PbfKind::And ? PbfKind::False : PbfKind::True;
    std::vector<Pbf> flat;
    for (auto& c : kids) {
        if (c->kind == zero) return c;
        if (c->kind == unit) continue;
        if (c->kind == k) flat.insert(flat.end(), c->kids.begin(), c->kids.end());
        else flat.push_back(std::move(c));
    }
    if (flat.empty()) return make(unit);
    if (flat.size() == 1) return flat.front();
    return make(k, -1, -1, std::move(flat));
}

} // namespace

Pbf pbf_true()
{
    static const Pbf t = make(PbfKind::True);
    return t;
}

Pbf pbf_false()
{
    static const Pbf f = make(PbfKind::False);
    return f;
}

Pbf pbf_atom(int dir, int state) { return make(PbfKind::Atom, dir, state); }
Pbf pbf_and(std::vector<Pbf> kids) { return junction(PbfKind::And, std::move(kids)); }
Pbf pbf_or(std::vector<Pbf> kids) { return junction(PbfKind::Or, std::move(kids)); }
Pbf pbf_and(Pbf a, Pbf b) { return pbf_and(std::vector<Pbf>{std::move(a), std::move(b)}); }
Pbf pbf_or(Pbf a, Pbf b) { return pbf_or(std::vector<Pbf>{std::move(a), std::move(b)}); }

Pbf pbf_dual(const Pbf& f)
{
    switch (f->kind) {
    case PbfKind::True: return pbf_false();
    case PbfKind::False: return pbf_true();
    case PbfKind::Atom: return f;
    case PbfKind::And:
    case PbfKind::Or: {
        std::vector<Pbf> kids;
        for (const auto& c : f->kids) kids.push_back(pbf_dual(c));
        return f->kind == PbfKind::And ? pbf_or(std::move(kids)) : pbf_and(std::move(kids));
    }
    }
    return f;
}

Pbf pbf_shift_states(const Pbf& f, int offset)
{
    if (offset == 0) return f;
    switch (f->kind) {
    case PbfKind::Atom: return pbf_atom(f->dir, f->state + offset);
    case PbfKind::And:
    case PbfKind::Or: {
        std::vector<Pbf> kids;
        for (const auto& c : f->kids) kids.push_back(pbf_shift_states(c, offset));
        return make(f->kind, -1, -1, std::move(kids));
    }
    default: return f;
    }
}

namespace {

using Model = std::vector<PbfAtom>;

void minimize(std::vector<Model>& ms)
{
    std::sort(ms.begin(), ms.end(), [](const Model& x, const Model& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Model> keep;
    for (auto& m : ms) {
        bool covered = false;
        for (const auto& k : keep)
            if (std::includes(m.begin(), m.end(), k.begin(), k.end())) {
                covered = true;
                break;
            }
        if (!covered) keep.push_back(std::move(m));
    }
    ms = std::move(keep);
}

} // namespace

std::vector<std::vector<PbfAtom>> pbf_models(const Pbf& f, std::size_t limit)
{
    auto check = [&](std::size_t n) {
        if (n > limit)
            throw AptCeilingError("formula expansion exceeds the ceiling of " + std::to_string(limit) + " models");
    };
    switch (f->kind) {
    case PbfKind::True: return {{}};
    case PbfKind::False: return {};
    case PbfKind::Atom: return {{{f->dir, f->state}}};
    case PbfKind::Or: {
        std::vector<Model> out;
        for (const auto& c : f->kids) {
            auto m = pbf_models(c, limit);
            out.insert(out.end(), m.begin(), m.end());
            check(out.size());
        }
        minimize(out);
        return out;
    }
    case PbfKind::And: {
        std::vector<Model> acc{{}};
        for (const auto& c : f->kids) {
            auto m = pbf_models(c, limit);
            check(acc.size() * m.size());
            std::vector<Model> next;
            for (const auto& x : acc)
                for (const auto& y : m) {
                    Model z;
                    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
                    next.push_back(std::move(z));
                }
            minimize(next);
            acc = std::move(next);
            if (acc.empty()) break;
        }
        return acc;
    }
    }
    return {};
}

std::string pbf_to_string(const Pbf& f, const std::vector<std::string>& states)
{
    switch (f->kind) {
    case PbfKind::True: return "true";
    case PbfKind::False: return "false";
    case PbfKind::Atom: {
        const std::string q = f->state >= 0 && f->state < static_cast<int>(states.size())
                                  ? states[f->state]
                                  : "#" + std::to_string(f->state);
        return f->dir < 0 ? q : "(" + std::to_string(f->dir) + "," + q + ")";
    }
    case PbfKind::And:
    case PbfKind::Or: {
        std::string r;
        for (std::size_t k = 0; k < f->kids.size(); ++k) {
            std::string s = pbf_to_string(f->kids[k], states);
            if (f->kind == PbfKind::And && f->kids[k]->kind == PbfKind::Or) s = "(" + s + ")";
            r += (k ? (f->kind == PbfKind::And ? " & " : " | ") : "") + s;
        }
        return r;
    }
    }
    return "";
}

namespace {

class PbfParser {
public:
    PbfParser(const std::string& text, const std::vector<std::string>& states) : s_(text), states_(states)
    {
        for (std::size_t k = 0; k < states.size(); ++k) index_[states[k]] = static_cast<int>(k);
    }

    Pbf parse()
    {
        Pbf f = disjunction();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
        return f;
    }

private:
    static bool name_char(char c)
    {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '&' && c != '|' &&
               c != ',';
    }
    [[noreturn]] void fail(const std::string& m) const
    {
        throw AptError("formula '" + s_ + "': " + m + " at offset " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string name()
    {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
        if (b == pos_) fail("expected a name");
        return s_.substr(b, pos_ - b);
    }
    int state(const std::string& n) const
    {
        auto it = index_.find(n);
        if (it == index_.end()) throw AptError("formula '" + s_ + "': unknown state " + n);
        return it->second;
    }
    Pbf disjunction()
    {
        std::vector<Pbf> kids{conjunction()};
        while (eat('|')) kids.push_back(conjunction());
        return pbf_or(std::move(kids));
    }
    Pbf conjunction()
    {
        std::vector<Pbf> kids{factor()};
        while (eat('&')) kids.push_back(factor());
        return pbf_and(std::move(kids));
    }
    Pbf factor()
    {
        if (eat('(')) {
            const std::size_t save = pos_;
            skip();
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ > b && eat(',')) {
                int d = std::stoi(s_.substr(b, pos_ - b));
                Pbf a = pbf_atom(d, state(name()));
                if (!eat(')')) fail("expected ')'");
                return a;
            }
            pos_ = save;
            Pbf f = disjunction();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        std::string n = name();
        if (n == "true") return pbf_true();
        if (n == "false") return pbf_false();
        return pbf_atom(-1, state(n));
    }

    const std::string& s_;
    const std::vector<std::string>& states_;
    std::map<std::string, int> index_;
    std::size_t pos_ = 0;
};

void check_atoms(const Pbf& f, int dirs, int states, bool initial, const std::string& where,
                 std::vector<std::string>& errors)
{
    if (f->kind == PbfKind::Atom) {
        if (f->state < 0 || f->state >= states) errors.push_back(where + ": state out of range");
        if (initial ? f->dir != -1 : (f->dir < 0 || f->dir >= dirs)) errors.push_back(where + ": bad direction");
        return;
    }
    for (const auto& c : f->kids) check_atoms(c, dirs, states, initial, where, errors);
}

} // namespace

Pbf parse_pbf(const std::string& text, const std::vector<std::string>& states)
{
    return PbfParser(text, states).parse();
}

// ---------------------------------------------------------------- automata

int Apt::num_letters() const
{
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

int Apt::letter(const std::vector<int>& parts) const
{
    int x = 0, stride = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        x += parts[k] * stride;
        stride *= dims[k];
    }
    return x;
}

std::vector<int> Apt::letter_parts(int letter) const
{
    std::vector<int> parts(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        parts[k] = letter % dims[k];
        letter /= dims[k];
    }
    return parts;
}

std::vector<std::string> validate_apt(const Apt& a)
{
    std::vector<std::string> errors;
    if (a.components.size() != a.dims.size()) errors.push_back("components and dims differ in length");
    for (int d : a.dims)
        if (d < 1) errors.push_back("label component with no values");
    if (a.num_directions < 1) errors.push_back("no directions");
    if (static_cast<int>(a.priority.size()) != a.num_states()) errors.push_back("priority map has wrong size");
    for (int p : a.priority)
        if (p < 0) errors.push_back("negative priority");
    if (!errors.empty()) return errors;
    if (static_cast<int>(a.delta.size()) != a.num_states()) {
        errors.push_back("transition table has wrong size");
        return errors;
    }
    check_atoms(a.initial, a.num_directions, a.num_states(), true, "initial condition", errors);
    for (int q = 0; q < a.num_states(); ++q) {
        if (static_cast<int>(a.delta[q].size()) != a.num_letters()) {
            errors.push_back("state " + a.states[q] + ": transition row has wrong size");
            continue;
        }
        for (int x = 0; x < a.num_letters(); ++x)
            check_atoms(a.delta[q][x], a.num_directions, a.num_states(), false, "state " + a.states[q], errors);
    }
    return errors;
}

std::vector<std::string> validate_tree(const RegularTree& t, int num_directions, int num_letters)
{
    std::vector<std::string> errors;
    if (t.num_states() == 0) errors.push_back("tree has no states");
    if (t.initial < 0 || t.initial >= t.num_states()) errors.push_back("initial tree state out of range");
    if (static_cast<int>(t.label.size()) != t.num_states()) errors.push_back("label map has wrong size");
    for (int s = 0; s < t.num_states(); ++s) {
        if (static_cast<int>(t.succ[s].size()) != num_directions)
            errors.push_back("tree state " + std::to_string(s) + " is not total over the directions");
        for (int x : t.succ[s])
            if (x < 0 || x >= t.num_states()) errors.push_back("tree successor out of range");
        if (s < static_cast<int>(t.label.size()) && (t.label[s] < 0 || t.label[s] >= num_letters))
            errors.push_back("tree label out of range");
    }
    return errors;
}

namespace {

void require_valid(const Apt& a)
{
    auto e = validate_apt(a);
    if (!e.empty()) throw AptError("invalid automaton: " + e.front());
}

void require_compatible(const Apt& a, const Apt& b)
{
    if (a.dims != b.dims || a.num_directions != b.num_directions)
        throw AptError("automata read different alphabets or directions");
}

int max_priority(const Apt& a)
{
    int m = 1;
    for (int p : a.priority) m = std::max(m, p);
    return m;
}

} // namespace

bool apt_run_regular_tree(const Apt& a, const RegularTree& t)
{
    require_valid(a);
    auto te = validate_tree(t, a.num_directions, a.num_letters());
    if (!te.empty()) throw AptError("invalid tree: " + te.front());

    ParityGame g;
    const int neutral = max_priority(a) + 1;
    const int win = g.add_node(0, 0), lose = g.add_node(0, 1);
    g.succ[win] = {win};
    g.succ[lose] = {lose};
    std::vector<int> node(static_cast<std::size_t>(t.num_states()) * a.num_states(), -1);
    std::vector<std::pair<int, int>> work;
    auto state_node = [&](int s, int q) {
        int& n = node[static_cast<std::size_t>(s) * a.num_states() + q];
        if (n < 0) {
            n = g.add_node(0, a.priority[q]);
            work.push_back({s, q});
        }
        return n;
    };
    std::function<int(const Pbf&, int)> build = [&](const Pbf& f, int s) -> int {
        switch (f->kind) {
        case PbfKind::True: return win;
        case PbfKind::False: return lose;
        case PbfKind::Atom: return state_node(f->dir < 0 ? s : t.succ[s][f->dir], f->state);
        default: {
            std::vector<int> kids;
            for (const auto& c : f->kids) kids.push_back(build(c, s));
            int n = g.add_node(f->kind == PbfKind::And ? 1 : 0, neutral);
            g.succ[n] = std::move(kids);
            return n;
        }
        }
    };
    const int root = build(a.initial, t.initial);
    while (!work.empty()) {
        auto [s, q] = work.back();
        work.pop_back();
        const int n = node[static_cast<std::size_t>(s) * a.num_states() + q];
        const int next = build(a.delta[q][t.label[s]], s);
        g.succ[n] = {next};
    }
    return solve_parity(g).winner[root] == 0;
}

Apt apt_complement(const Apt& a)
{
    require_valid(a);
    Apt c = a;
    c.initial = pbf_dual(a.initial);
    for (auto& row : c.delta)
        for (auto& f : row) f = pbf_dual(f);
    for (auto& p : c.priority) ++p;
    return c;
}

namespace {

Apt disjoint_union(const Apt& a, const Apt& b, bool conjunctive)
{
    require_valid(a);
    require_valid(b);
    require_compatible(a, b);
    Apt c;
    c.components = a.components;
    c.dims = a.dims;
    c.num_directions = a.num_directions;
    for (const auto& s : a.states) c.states.push_back("1." + s);
    for (const auto& s : b.states) c.states.push_back("2." + s);
    c.priority = a.priority;
    c.priority.insert(c.priority.end(), b.priority.begin(), b.priority.end());
    c.delta = a.delta;
    for (const auto& row : b.delta) {
        std::vector<Pbf> shifted;
        for (const auto& f : row) shifted.push_back(pbf_shift_states(f, a.num_states()));
        c.delta.push_back(std::move(shifted));
    }
    Pbf bi = pbf_shift_states(b.initial, a.num_states());
    c.initial = conjunctive ? pbf_and(a.initial, bi) : pbf_or(a.initial, bi);
    return c;
}

} // namespace

Apt apt_union(const Apt& a, const Apt& b) { return disjoint_union(a, b, false); }
Apt apt_intersection(const Apt& a, const Apt& b) { return disjoint_union(a, b, true); }

Apt apt_lift(const Apt& a, const std::vector<std::string>& components, const std::vector<int>& dims,
             const std::vector<int>& view)
{
    require_valid(a);
    Apt c = a;
    c.components = components;
    c.dims = dims;
    if (static_cast<int>(view.size()) != c.num_letters()) throw AptError("lift view has wrong size");
    for (int x : view)
        if (x < 0 || x >= a.num_letters()) throw AptError("lift view maps outside the alphabet");
    for (int q = 0; q < a.num_states(); ++q) {
        c.delta[q].clear();
        for (int x : view) c.delta[q].push_back(a.delta[q][x]);
    }
    return c;
}

namespace {

/** At most one atom per direction in a conjunction of atoms. */
bool one_per_direction(const Pbf& f)
{
    if (f->kind != PbfKind::And) return f->kind != PbfKind::Or;
    std::vector<int> dirs;
    for (const auto& c : f->kids) {
        if (c->kind != PbfKind::Atom) return false;
        dirs.push_back(c->dir);
    }
    std::sort(dirs.begin(), dirs.end());
    return std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end();
}

/** Disjunction of one_per_direction terms; decided on the syntax. */
bool nondeterministic_shape(const Pbf& f)
{
    if (f->kind != PbfKind::Or) return one_per_direction(f);
    return std::all_of(f->kids.begin(), f->kids.end(), one_per_direction);
}

} // namespace

bool apt_is_nondeterministic(const Apt& a)
{
    const Pbf& i = a.initial;
    if (i->kind == PbfKind::And) return false;
    if (i->kind == PbfKind::Or)
        for (const auto& c : i->kids)
            if (c->kind != PbfKind::Atom) return false;
    for (const auto& row : a.delta)
        for (const auto& f : row)
            if (!nondeterministic_shape(f)) return false;
    return true;
}

// ---------------------------------------------------------------- alternation removal

namespace {

/** Safra tree with compact names: node i has name i+1, parents and older siblings come first. */
struct SafraTree {
    std::vector<int> parent;
    std::vector<std::vector<int>> label;

    bool empty() const { return parent.empty(); }
    std::vector<int> key() const
    {
        std::vector<int> k;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            k.push_back(parent[i]);
            k.push_back(static_cast<int>(label[i].size()));
            k.insert(k.end(), label[i].begin(), label[i].end());
        }
        return k;
    }
};

std::vector<int> sorted_union(const std::vector<int>& x, const std::vector<int>& y)
{
    std::vector<int> z;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
    return z;
}

/**
 * One deterministic step of the Safra construction with Piterman's compact
 * naming. Returns the successor tree and the min-even priority of the step
 * (2i when node i turns green, 2i-1 when node i disappears, else 2n+1).
 */
std::pair<SafraTree, int> safra_step(const SafraTree& t, const std::function<std::vector<int>(int)>& post,
                                     const std::vector<char>& accepting, int max_names)
{
    struct Work {
        int parent;
        std::vector<int> label;
        bool alive = true;
        bool green = false;
    };
    std::vector<Work> w;
    for (std::size_t i = 0; i < t.parent.size(); ++i) w.push_back({t.parent[i], t.label[i]});
    const int old = static_cast<int>(w.size());
    for (int i = 0; i < old; ++i) {
        std::vector<int> f;
        for (int b : w[i].label)
            if (accepting[b]) f.push_back(b);
        if (!f.empty()) w.push_back({i, std::move(f)});
    }
    std::map<int, std::vector<int>> memo;
    for (auto& n : w) {
        std::vector<int> next;
        for (int b : n.label) {
            auto it = memo.find(b);
            if (it == memo.end()) it = memo.emplace(b, post(b)).first;
            next = sorted_union(next, it->second);
        }
        n.label = std::move(next);
    }
    // Horizontal merge: a state stays only in the oldest branch holding it.
    std::vector<std::vector<int>> claimed(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int p = w[i].parent;
        if (p >= 0) {
            std::vector<int> keep;
            if (w[p].alive)
                std::set_intersection(w[i].label.begin(), w[i].label.end(), w[p].label.begin(), w[p].label.end(),
                                      std::back_inserter(keep));
            std::vector<int> rest;
            std::set_difference(keep.begin(), keep.end(), claimed[p].begin(), claimed[p].end(),
                                std::back_inserter(rest));
            w[i].label = std::move(rest);
            claimed[p] = sorted_union(claimed[p], w[i].label);
        }
        if (w[i].label.empty()) w[i].alive = false;
    }
    // Vertical merge: a node covered by its children absorbs them and turns green.
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].alive) continue;
        std::vector<int> below;
        bool any = false;
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[j].alive && w[j].parent == static_cast<int>(i)) {
                below = sorted_union(below, w[j].label);
                any = true;
            }
        if (!any || below != w[i].label) continue;
        w[i].green = true;
        std::vector<char> under(w.size(), 0);
        under[i] = 1;
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[j].parent >= 0 && under[w[j].parent]) {
                under[j] = 1;
                w[j].alive = false;
            }
    }
    int prio = 2 * max_names + 1;
    for (int i = 0; i < old; ++i) {
        if (!w[i].alive) prio = std::min(prio, 2 * (i + 1) - 1);
        else if (w[i].green) prio = std::min(prio, 2 * (i + 1));
    }
    SafraTree out;
    if (!w[0].alive) return {out, prio};
    std::vector<int> rename(w.size(), -1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].alive) continue;
        rename[i] = static_cast<int>(out.parent.size());
        out.parent.push_back(w[i].parent < 0 ? -1 : rename[w[i].parent]);
        out.label.push_back(std::move(w[i].label));
    }
    return {out, prio};
}

} // namespace

Apt apt_remove_alternation(const Apt& a, const AptLimits& limits)
{
    require_valid(a);
    // Bad-thread automaton B: state (q, m); m = 0 waits, m > 0 commits to the
    // odd priority odd[m-1] being the least one seen from now on.
    std::vector<int> odd;
    for (int p : a.priority)
        if (p % 2 == 1) odd.push_back(p);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    const int modes = static_cast<int>(odd.size()) + 1;
    const int nb = a.num_states() * modes;
    std::vector<char> b_acc(nb, 0);
    for (int q = 0; q < a.num_states(); ++q)
        for (int m = 1; m < modes; ++m) b_acc[q * modes + m] = a.priority[q] == odd[m - 1];
    auto enter = [&](int q, std::vector<int>& out) {
        out.push_back(q * modes);
        for (int m = 1; m < modes; ++m)
            if (a.priority[q] >= odd[m - 1]) out.push_back(q * modes + m);
    };

    Apt n;
    n.components = a.components;
    n.dims = a.dims;
    n.num_directions = a.num_directions;
    const int initial_prio = 2 * nb + 2;
    std::map<std::vector<int>, int> index;
    std::vector<SafraTree> trees;
    auto intern = [&](const SafraTree& t, int prio) {
        std::vector<int> k = t.key();
        k.push_back(prio);
        auto [it, fresh] = index.emplace(std::move(k), static_cast<int>(trees.size()));
        if (fresh) {
            if (static_cast<std::int64_t>(trees.size()) >= limits.max_states)
                throw AptCeilingError("alternation removal exceeds the ceiling of " +
                                      std::to_string(limits.max_states) + " states");
            trees.push_back(t);
            n.states.push_back("s" + std::to_string(it->second));
            n.priority.push_back(prio);
        }
        return it->second;
    };

    std::vector<Pbf> init;
    for (const auto& m : pbf_models(a.initial, static_cast<std::size_t>(limits.max_states))) {
        if (m.empty()) {
            init = {pbf_true()};
            break;
        }
        std::vector<int> root;
        for (const auto& [d, q] : m) enter(q, root);
        std::sort(root.begin(), root.end());
        root.erase(std::unique(root.begin(), root.end()), root.end());
        SafraTree t;
        t.parent = {-1};
        t.label = {root};
        init.push_back(pbf_atom(-1, intern(t, initial_prio)));
    }
    n.initial = pbf_or(std::move(init));

    std::map<std::pair<int, int>, std::vector<Model>> model_cache;
    const std::int64_t choice_cap = std::max<std::int64_t>(limits.max_states, 1000);
    for (std::size_t s = 0; s < trees.size(); ++s) {
        const SafraTree t = trees[s];
        std::vector<int> active;
        for (int b : t.label[0]) active.push_back(b / modes);
        active.erase(std::unique(active.begin(), active.end()), active.end());
        std::vector<Pbf> row;
        for (int x = 0; x < a.num_letters(); ++x) {
            std::vector<const std::vector<Model>*> options;
            std::int64_t count = 1;
            for (int q : active) {
                auto it = model_cache.find({q, x});
                if (it == model_cache.end())
                    it = model_cache
                             .emplace(std::make_pair(q, x),
                                      pbf_models(a.delta[q][x], static_cast<std::size_t>(choice_cap)))
                             .first;
                options.push_back(&it->second);
                count *= static_cast<std::int64_t>(it->second.size());
                if (count > choice_cap)
                    throw AptCeilingError("alternation removal exceeds the ceiling of " + std::to_string(choice_cap) +
                                          " local choices");
            }
            std::vector<Pbf> disjuncts;
            std::set<std::vector<std::pair<int, int>>> seen;
            std::vector<std::size_t> pick(active.size(), 0);
            for (std::int64_t c = 0; c < count; ++c) {
                // rel[d][k]: successors of active[k] in direction d
                std::vector<std::vector<std::vector<int>>> rel(a.num_directions,
                                                               std::vector<std::vector<int>>(active.size()));
                for (std::size_t k = 0; k < active.size(); ++k)
                    for (const auto& [d, q2] : (*options[k])[pick[k]]) rel[d][k].push_back(q2);
                std::vector<std::pair<int, int>> atoms;
                for (int d = 0; d < a.num_directions; ++d) {
                    auto post = [&](int b) {
                        const int q = b / modes, m = b % modes;
                        const std::size_t k = std::lower_bound(active.begin(), active.end(), q) - active.begin();
                        std::vector<int> out;
                        for (int q2 : rel[d][k]) {
                            if (m == 0) enter(q2, out);
                            else if (a.priority[q2] >= odd[m - 1]) out.push_back(q2 * modes + m);
                        }
                        std::sort(out.begin(), out.end());
                        out.erase(std::unique(out.begin(), out.end()), out.end());
                        return out;
                    };
                    auto [next, prio] = safra_step(t, post, b_acc, nb);
                    if (next.empty()) continue;
                    atoms.push_back({d, intern(next, prio + 1)});
                }
                if (seen.insert(atoms).second) {
                    std::vector<Pbf> conj;
                    for (const auto& [d, id] : atoms) conj.push_back(pbf_atom(d, id));
                    disjuncts.push_back(pbf_and(std::move(conj)));
                }
                for (std::size_t k = 0; k < pick.size(); ++k) {
                    if (++pick[k] < options[k]->size()) break;
                    pick[k] = 0;
                }
            }
            row.push_back(pbf_or(std::move(disjuncts)));
        }
        n.delta.push_back(std::move(row));
    }
    return n;
}

Apt apt_project(const Apt& a, int component, const AptLimits& limits)
{
    require_valid(a);
    if (component < 0 || component >= static_cast<int>(a.dims.size())) throw AptError("no such label component");
    Apt n = apt_is_nondeterministic(a) ? a : apt_remove_alternation(a, limits);
    Apt p;
    p.components = n.components;
    p.dims = n.dims;
    p.components.erase(p.components.begin() + component);
    p.dims.erase(p.dims.begin() + component);
    p.num_directions = n.num_directions;
    p.states = n.states;
    p.priority = n.priority;
    p.initial = n.initial;
    for (int q = 0; q < n.num_states(); ++q) {
        std::vector<Pbf> row;
        for (int x = 0; x < p.num_letters(); ++x) {
            std::vector<int> parts = p.letter_parts(x);
            parts.insert(parts.begin() + component, 0);
            std::vector<Pbf> options;
            for (int c = 0; c < n.dims[component]; ++c) {
                parts[component] = c;
                options.push_back(n.delta[q][n.letter(parts)]);
            }
            row.push_back(pbf_or(std::move(options)));
        }
        p.delta.push_back(std::move(row));
    }
    return p;
}

Apt apt_compose(ComposeKind kind, const std::vector<Apt>& operands, int component, const AptLimits& limits)
{
    auto need = [&](std::size_t k) {
        if (operands.size() != k)
            throw AptError("compose expects " + std::to_string(k) + " operand" + (k == 1 ? "" : "s"));
    };
    switch (kind) {
    case ComposeKind::Complement: need(1); return apt_complement(operands[0]);
    case ComposeKind::Project: need(1); return apt_project(operands[0], component, limits);
    case ComposeKind::Union:
    case ComposeKind::Intersection: {
        if (operands.empty()) throw AptError("compose needs operands");
        Apt acc = operands[0];
        for (std::size_t k = 1; k < operands.size(); ++k)
            acc = kind == ComposeKind::Union ? apt_union(acc, operands[k]) : apt_intersection(acc, operands[k]);
        return acc;
    }
    }
    throw AptError("unknown compose kind");
}

// ---------------------------------------------------------------- emptiness

std::optional<RegularTree> apt_emptiness(const Apt& a, const AptLimits& limits)
{
    require_valid(a);
    const Apt n = apt_is_nondeterministic(a) ? a : apt_remove_alternation(a, limits);

    // Player 0 picks a letter and a model at automaton states, the pathfinder a direction.
    ParityGame g;
    const int neutral = max_priority(n) + 1;
    const int win = g.add_node(0, 0), lose = g.add_node(0, 1);
    g.succ[win] = {win};
    g.succ[lose] = {lose};
    const int base = g.size();
    for (int q = 0; q < n.num_states(); ++q) g.add_node(0, n.priority[q]);
    struct Choice {
        int letter;
        Model model;
    };
    std::vector<std::vector<Choice>> choices(n.num_states());
    for (int q = 0; q < n.num_states(); ++q) {
        std::vector<int> out;
        for (int x = 0; x < n.num_letters(); ++x)
            for (auto& m : pbf_models(n.delta[q][x])) {
                int c = g.add_node(1, neutral);
                if (m.empty()) g.succ[c] = {win};
                for (const auto& [d, q2] : m) g.succ[c].push_back(base + q2);
                choices[q].push_back({x, std::move(m)});
                out.push_back(c);
            }
        g.succ[base + q] = out.empty() ? std::vector<int>{lose} : out;
    }
    const ParitySolution sol = solve_parity(g);

    RegularTree t;
    const auto init_models = pbf_models(n.initial);
    int start = -1;
    for (const auto& m : init_models) {
        if (m.empty()) {
            t.initial = 0;
            t.succ = {std::vector<int>(n.num_directions, 0)};
            t.label = {0};
            start = -2;
            break;
        }
        if (sol.winner[base + m[0].second] == 0) {
            start = m[0].second;
            break;
        }
    }
    if (start == -1) return std::nullopt;
    if (start >= 0) {
        // Tree state 0 is an unconstrained filler for directions no copy is sent to.
        std::map<int, int> id;
        std::vector<int> order;
        t.succ = {std::vector<int>(n.num_directions, 0)};
        t.label = {0};
        auto visit = [&](int q) {
            auto [it, fresh] = id.emplace(q, t.num_states());
            if (fresh) {
                t.succ.emplace_back(n.num_directions, 0);
                t.label.push_back(0);
                order.push_back(q);
            }
            return it->second;
        };
        t.initial = visit(start);
        for (std::size_t k = 0; k < order.size(); ++k) {
            const int q = order[k];
            const int s = id[q];
            const Choice& c = choices[q][sol.strategy[base + q]];
            t.label[s] = c.letter;
            for (const auto& [d, q2] : c.model) {
                const int child = visit(q2);
                t.succ[s][d] = child;
            }
        }
    }
    if (!apt_run_regular_tree(a, t)) throw std::logic_error("emptiness witness rejected by the membership check");
    return t;
}

} // namespace rsynth
