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

#include "rsynth/ltl.hpp"

#include "rsynth/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace rsynth {

namespace {

Ltl mk(LtlOp op, int atom = -1, Ltl l = nullptr, Ltl r = nullptr)
{
    return std::make_shared<const LtlNode>(LtlNode{op, atom, std::move(l), std::move(r)});
}

} // namespace

Ltl ltl_true() { return mk(LtlOp::True); }
Ltl ltl_false() { return mk(LtlOp::False); }
Ltl ltl_atom(int p) { return mk(LtlOp::Atom, p); }
Ltl ltl_not(Ltl a) { return mk(LtlOp::Not, -1, std::move(a)); }
Ltl ltl_and(Ltl a, Ltl b) { return mk(LtlOp::And, -1, std::move(a), std::move(b)); }
Ltl ltl_or(Ltl a, Ltl b) { return mk(LtlOp::Or, -1, std::move(a), std::move(b)); }
Ltl ltl_next(Ltl a) { return mk(LtlOp::Next, -1, std::move(a)); }
Ltl ltl_until(Ltl a, Ltl b) { return mk(LtlOp::Until, -1, std::move(a), std::move(b)); }
Ltl ltl_release(Ltl a, Ltl b) { return mk(LtlOp::Release, -1, std::move(a), std::move(b)); }
Ltl ltl_eventually(Ltl a) { return ltl_until(ltl_true(), std::move(a)); }
Ltl ltl_always(Ltl a) { return ltl_release(ltl_false(), std::move(a)); }

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

struct Token {
    enum Kind { LParen, RParen, Not, And, Or, Ident, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            out.push_back({Token::LParen, "(", i++});
        } else if (c == ')') {
            out.push_back({Token::RParen, ")", i++});
        } else if (c == '!') {
            out.push_back({Token::Not, "!", i++});
        } else if (c == '&') {
            out.push_back({Token::And, "&", i});
            i += (i + 1 < s.size() && s[i + 1] == '&') ? 2 : 1;
        } else if (c == '|') {
            out.push_back({Token::Or, "|", i});
            i += (i + 1 < s.size() && s[i + 1] == '|') ? 2 : 1;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
        } else {
            throw LtlError("unexpected character '" + std::string(1, c) + "' at " + std::to_string(i));
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& u) : toks_(tokenize(s)), universe_(u) {}

    Ltl run()
    {
        Ltl f = parse_or();
        if (peek().kind != Token::End) fail("trailing input");
        return f;
    }

private:
    std::vector<Token> toks_;
    const std::vector<std::string>& universe_;
    std::size_t k_ = 0;

    const Token& peek() const { return toks_[k_]; }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw LtlError(what + " at " + std::to_string(peek().pos));
    }
    bool is_word(const char* w) const { return peek().kind == Token::Ident && peek().text == w; }
    int prop(const std::string& n) const
    {
        auto it = std::find(universe_.begin(), universe_.end(), n);
        return it == universe_.end() ? -1 : static_cast<int>(it - universe_.begin());
    }
    bool is_op_stack(const std::string& t) const
    {
        if (prop(t) >= 0) return false;
        return std::all_of(t.begin(), t.end(), [](char c) { return c == 'F' || c == 'G' || c == 'X'; });
    }

    Ltl parse_or()
    {
        Ltl f = parse_and();
        while (peek().kind == Token::Or) {
            ++k_;
            f = ltl_or(f, parse_and());
        }
        return f;
    }
    Ltl parse_and()
    {
        Ltl f = parse_binary();
        while (peek().kind == Token::And) {
            ++k_;
            f = ltl_and(f, parse_binary());
        }
        return f;
    }
    Ltl parse_binary()
    {
        Ltl f = parse_unary();
        if (is_word("U")) {
            ++k_;
            return ltl_until(f, parse_binary());
        }
        if (is_word("R")) {
            ++k_;
            return ltl_release(f, parse_binary());
        }
        return f;
    }
    Ltl parse_unary()
    {
        const Token& t = peek();
        if (t.kind == Token::Not) {
            ++k_;
            return ltl_not(parse_unary());
        }
        if (t.kind == Token::Ident && is_op_stack(t.text)) {
            std::string ops = t.text;
            ++k_;
            Ltl f = parse_unary();
            for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
                if (*it == 'F') f = ltl_eventually(f);
                else if (*it == 'G') f = ltl_always(f);
                else f = ltl_next(f);
            }
            return f;
        }
        return parse_primary();
    }
    Ltl parse_primary()
    {
        const Token t = peek();
        if (t.kind == Token::LParen) {
            ++k_;
            Ltl f = parse_or();
            if (peek().kind != Token::RParen) fail("expected ')'");
            ++k_;
            return f;
        }
        if (t.kind != Token::Ident) fail("expected a formula");
        if (t.text == "U" || t.text == "R") fail("binary operator without left operand");
        ++k_;
        if (t.text == "true") return ltl_true();
        if (t.text == "false") return ltl_false();
        int p = prop(t.text);
        if (p < 0) throw LtlError("atom '" + t.text + "' outside proposition universe");
        return ltl_atom(p);
    }
};

} // namespace

Ltl parse_ltl(const std::string& text, const std::vector<std::string>& universe)
{
    return Parser(text, universe).run();
}

std::string ltl_to_string(const Ltl& f, const std::vector<std::string>& u)
{
    switch (f->op) {
    case LtlOp::True: return "true";
    case LtlOp::False: return "false";
    case LtlOp::Atom:
        return f->atom < static_cast<int>(u.size()) ? u[f->atom] : "p" + std::to_string(f->atom);
    case LtlOp::Not: return "!" + ltl_to_string(f->lhs, u);
    case LtlOp::And: return "(" + ltl_to_string(f->lhs, u) + " & " + ltl_to_string(f->rhs, u) + ")";
    case LtlOp::Or: return "(" + ltl_to_string(f->lhs, u) + " | " + ltl_to_string(f->rhs, u) + ")";
    case LtlOp::Next: return "X " + ltl_to_string(f->lhs, u);
    case LtlOp::Until:
        if (f->lhs->op == LtlOp::True) return "F " + ltl_to_string(f->rhs, u);
        return "(" + ltl_to_string(f->lhs, u) + " U " + ltl_to_string(f->rhs, u) + ")";
    case LtlOp::Release:
        if (f->lhs->op == LtlOp::False) return "G " + ltl_to_string(f->rhs, u);
        return "(" + ltl_to_string(f->lhs, u) + " R " + ltl_to_string(f->rhs, u) + ")";
    }
    return "?";
}

int ltl_depth(const Ltl& f)
{
    switch (f->op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Atom: return 0;
    case LtlOp::Not:
    case LtlOp::Next: return 1 + ltl_depth(f->lhs);
    case LtlOp::Until:
        if (f->lhs->op == LtlOp::True) return 1 + ltl_depth(f->rhs);
        return 1 + std::max(ltl_depth(f->lhs), ltl_depth(f->rhs));
    case LtlOp::Release:
        if (f->lhs->op == LtlOp::False) return 1 + ltl_depth(f->rhs);
        return 1 + std::max(ltl_depth(f->lhs), ltl_depth(f->rhs));
    default: return 1 + std::max(ltl_depth(f->lhs), ltl_depth(f->rhs));
    }
}

int ltl_atom_bound(const Ltl& f)
{
    int r = f->op == LtlOp::Atom ? f->atom + 1 : 0;
    if (f->lhs) r = std::max(r, ltl_atom_bound(f->lhs));
    if (f->rhs) r = std::max(r, ltl_atom_bound(f->rhs));
    return r;
}

// ---------------------------------------------------------------------------
// Direct lasso evaluation

namespace {

using Vals = std::vector<char>;

Vals eval_vals(const Ltl& f, const LassoWord& w, std::unordered_map<const LtlNode*, Vals>& memo)
{
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    const std::size_t n = w.size(), p = w.prefix.size();
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : p; };
    Vals v(n, 0);
    switch (f->op) {
    case LtlOp::True: std::fill(v.begin(), v.end(), 1); break;
    case LtlOp::False: break;
    case LtlOp::Atom:
        for (std::size_t i = 0; i < n; ++i) v[i] = (w.at(i) >> f->atom) & 1;
        break;
    case LtlOp::Not: {
        Vals a = eval_vals(f->lhs, w, memo);
        for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
        break;
    }
    case LtlOp::And:
    case LtlOp::Or: {
        Vals a = eval_vals(f->lhs, w, memo), b = eval_vals(f->rhs, w, memo);
        for (std::size_t i = 0; i < n; ++i) v[i] = f->op == LtlOp::And ? (a[i] && b[i]) : (a[i] || b[i]);
        break;
    }
    case LtlOp::Next: {
        Vals a = eval_vals(f->lhs, w, memo);
        for (std::size_t i = 0; i < n; ++i) v[i] = a[succ(i)];
        break;
    }
    case LtlOp::Until:
    case LtlOp::Release: {
        Vals a = eval_vals(f->lhs, w, memo), b = eval_vals(f->rhs, w, memo);
        const bool until = f->op == LtlOp::Until;
        // least fixpoint from false for U, greatest from true for R
        std::fill(v.begin(), v.end(), until ? 0 : 1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = n; k-- > 0;) {
                char nv = until ? (b[k] || (a[k] && v[succ(k)])) : (b[k] && (a[k] || v[succ(k)]));
                if (nv != v[k]) {
                    v[k] = nv;
                    changed = true;
                }
            }
        }
        break;
    }
    }
    memo.emplace(f.get(), v);
    return v;
}

} // namespace

bool eval_lasso(const Ltl& f, const LassoWord& w)
{
    if (w.cycle.empty()) throw LtlError("lasso word has an empty cycle");
    std::unordered_map<const LtlNode*, Vals> memo;
    return eval_vals(f, w, memo)[0] != 0;
}

// ---------------------------------------------------------------------------
// Tableau translation

namespace {

/** Hash-consed negation normal form; Not only wraps atoms (stored in `atom`). */
class NnfTable {
public:
    struct F {
        LtlOp op;
        int atom;
        int l;
        int r;
    };

    int make(LtlOp op, int atom = -1, int l = -1, int r = -1)
    {
        auto key = std::make_tuple(static_cast<int>(op), atom, l, r);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(fs_.size());
        fs_.push_back({op, atom, l, r});
        ids_.emplace(key, id);
        return id;
    }

    int nnf(const Ltl& f, bool neg)
    {
        switch (f->op) {
        case LtlOp::True: return make(neg ? LtlOp::False : LtlOp::True);
        case LtlOp::False: return make(neg ? LtlOp::True : LtlOp::False);
        case LtlOp::Atom: return make(neg ? LtlOp::Not : LtlOp::Atom, f->atom);
        case LtlOp::Not: return nnf(f->lhs, !neg);
        case LtlOp::And:
            return make(neg ? LtlOp::Or : LtlOp::And, -1, nnf(f->lhs, neg), nnf(f->rhs, neg));
        case LtlOp::Or:
            return make(neg ? LtlOp::And : LtlOp::Or, -1, nnf(f->lhs, neg), nnf(f->rhs, neg));
        case LtlOp::Next: return make(LtlOp::Next, -1, nnf(f->lhs, neg));
        case LtlOp::Until:
            return make(neg ? LtlOp::Release : LtlOp::Until, -1, nnf(f->lhs, neg), nnf(f->rhs, neg));
        case LtlOp::Release:
            return make(neg ? LtlOp::Until : LtlOp::Release, -1, nnf(f->lhs, neg), nnf(f->rhs, neg));
        }
        return -1;
    }

    const F& at(int id) const { return fs_[id]; }
    int size() const { return static_cast<int>(fs_.size()); }

private:
    std::vector<F> fs_;
    std::map<std::tuple<int, int, int, int>, int> ids_;
};

struct Branch {
    Props pos = 0;
    Props neg = 0;
    std::vector<int> next;        // sorted
    std::uint64_t postponed = 0;  // bit k: until number k deferred on this transition

    bool operator<(const Branch& o) const
    {
        return std::tie(pos, neg, next, postponed) < std::tie(o.pos, o.neg, o.next, o.postponed);
    }
};

class Expander {
public:
    Expander(const NnfTable& t, const std::map<int, int>& until_no) : t_(t), until_no_(until_no) {}

    std::vector<Branch> expand(const std::vector<int>& obligations)
    {
        out_.clear();
        std::vector<int> todo(obligations.rbegin(), obligations.rend());
        std::set<int> done;
        std::set<int> next;
        go(todo, done, Branch{}, next);
        std::vector<Branch> res(out_.begin(), out_.end());
        return res;
    }

private:
    const NnfTable& t_;
    const std::map<int, int>& until_no_;
    std::set<Branch> out_;

    void go(std::vector<int> todo, std::set<int> done, Branch b, std::set<int> next)
    {
        while (!todo.empty()) {
            int id = todo.back();
            todo.pop_back();
            if (!done.insert(id).second) continue;
            const auto& f = t_.at(id);
            switch (f.op) {
            case LtlOp::True: break;
            case LtlOp::False: return;
            case LtlOp::Atom:
                b.pos |= Props(1) << f.atom;
                if (b.pos & b.neg) return;
                break;
            case LtlOp::Not:
                b.neg |= Props(1) << f.atom;
                if (b.pos & b.neg) return;
                break;
            case LtlOp::And:
                todo.push_back(f.r);
                todo.push_back(f.l);
                break;
            case LtlOp::Or: {
                auto t2 = todo;
                t2.push_back(f.r);
                go(t2, done, b, next);
                todo.push_back(f.l);
                break;
            }
            case LtlOp::Next: next.insert(f.l); break;
            case LtlOp::Until: {
                auto t2 = todo;
                t2.push_back(f.l);
                auto b2 = b;
                b2.postponed |= std::uint64_t(1) << until_no_.at(id);
                auto n2 = next;
                n2.insert(id);
                go(t2, done, b2, n2);
                todo.push_back(f.r);
                break;
            }
            case LtlOp::Release: {
                auto t2 = todo;
                t2.push_back(f.r);
                auto n2 = next;
                n2.insert(id);
                go(t2, done, b, n2);
                todo.push_back(f.r);
                todo.push_back(f.l);
                break;
            }
            }
        }
        b.next.assign(next.begin(), next.end());
        out_.insert(b);
    }
};

} // namespace

std::vector<int> Nbw::post(const std::vector<int>& from, Props letter) const
{
    std::vector<int> out;
    for (int q : from)
        for (const auto& e : edges[q])
            if (e.matches(letter)) out.push_back(e.to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Nbw ltl_to_nbw(const Ltl& f)
{
    NnfTable t;
    const int root = t.nnf(f, false);
    std::map<int, int> until_no;
    for (int id = 0; id < t.size(); ++id)
        if (t.at(id).op == LtlOp::Until) until_no.emplace(id, static_cast<int>(until_no.size()));
    const int n = static_cast<int>(until_no.size());
    if (n > 63) throw LtlError("formula has too many until subformulas");

    Expander ex(t, until_no);
    std::map<std::vector<int>, std::vector<Branch>> cache;
    auto branches = [&](const std::vector<int>& s) -> const std::vector<Branch>& {
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, ex.expand(s)).first;
        return it->second;
    };

    // degeneralized state: obligations, then the count of until sets satisfied in the current round
    StateIndex idx;
    Nbw a;
    std::vector<int> start{root};
    std::vector<int> k0 = start;
    k0.push_back(0);
    idx.intern(k0);
    a.initial = {0};
    for (int s = 0; s < idx.size(); ++s) {
        std::vector<int> key = idx.key(s);
        int level = key.back();
        key.pop_back();
        std::vector<NbwEdge> out;
        for (const Branch& b : branches(key)) {
            // advance past every until set this branch satisfies; reaching n accepts
            int j = (level == n) ? 0 : level;
            while (j < n && !(b.postponed >> j & 1)) ++j;
            std::vector<int> nk = b.next;
            nk.push_back(j);
            int to = idx.intern(nk).first;
            out.push_back({b.pos, b.neg, to});
        }
        a.edges.resize(idx.size());
        a.edges[s] = std::move(out);
    }
    a.num_states = idx.size();
    a.edges.resize(a.num_states);
    a.accepting.assign(a.num_states, 0);
    for (int s = 0; s < a.num_states; ++s) a.accepting[s] = (idx.key(s).back() == n);
    return a;
}

bool nbw_accepts_lasso_from(const Nbw& a, const std::vector<int>& start, const LassoWord& w)
{
    if (w.cycle.empty()) throw LtlError("lasso word has an empty cycle");
    const int n = static_cast<int>(w.size()), p = static_cast<int>(w.prefix.size());
    StateIndex idx;
    Digraph g;
    std::vector<int> init;
    for (int q : start) {
        auto [id, fresh] = idx.intern({q, 0});
        if (fresh) g.add_node();
        init.push_back(id);
    }
    for (int s = 0; s < idx.size(); ++s) {
        auto key = idx.key(s);
        int q = key[0], i = key[1];
        int ni = i + 1 < n ? i + 1 : p;
        for (const auto& e : a.edges[q]) {
            if (!e.matches(w.at(i))) continue;
            auto [id, fresh] = idx.intern({e.to, ni});
            if (fresh) g.add_node();
            g.succ[s].push_back({id, 0});
        }
    }
    std::vector<char> acc(idx.size(), 0);
    for (int s = 0; s < idx.size(); ++s) acc[s] = a.accepting[idx.key(s)[0]];
    return find_accepting_lasso(g, init, acc).has_value();
}

bool nbw_accepts_lasso(const Nbw& a, const LassoWord& w) { return nbw_accepts_lasso_from(a, a.initial, w); }

} // namespace rsynth
