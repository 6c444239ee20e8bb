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

#include "rsynth/esl.hpp"

#include <algorithm>
#include <functional>

namespace rsynth {

namespace {

std::shared_ptr<EslNode> node(EslKind k) { auto n = std::make_shared<EslNode>(); n->kind = k; return n; }

Esl quantifier(EslKind k, Slots vars, Esl body)
{
    if (vars.cover == Cover::Except) throw EslError("a quantifier binds a whole family or one player's variable");
    auto n = node(k);
    n->slots = {std::move(vars)};
    n->kids = {std::move(body)};
    return n;
}

Esl binary(EslKind k, Esl a, Esl b)
{
    auto n = node(k);
    n->kids = {std::move(a), std::move(b)};
    return n;
}

const PlayerRef agent_i{0, true};
PlayerRef player(int j) { return {j, false}; }

std::string ref_string(const PlayerRef& p) { return p.agent ? "i" : std::to_string(p.index); }

std::string slots_string(const Slots& s)
{
    const std::string f(1, s.family);
    switch (s.cover) {
    case Cover::All: return f;
    case Cover::Only: return f + "_" + ref_string(s.players.at(0));
    case Cover::Except: {
        if (s.players.size() == 1) return f + "_{-" + ref_string(s.players[0]) + "}";
        std::string r = f + "_{-{";
        for (std::size_t k = 0; k < s.players.size(); ++k) r += (k ? "," : "") + ref_string(s.players[k]);
        return r + "}}";
    }
    }
    return f;
}

bool covers(const Slots& s, int j, int agent)
{
    auto is = [&](const PlayerRef& p) { return (p.agent ? agent : p.index) == j; };
    const bool listed = std::any_of(s.players.begin(), s.players.end(), is);
    switch (s.cover) {
    case Cover::All: return true;
    case Cover::Only: return listed;
    case Cover::Except: return !listed;
    }
    return false;
}

} // namespace

namespace {

void check_history_name(const std::string& h)
{
    if (h.find('_') != std::string::npos) throw EslError("history variable " + h + " must not contain '_'");
}

} // namespace

Esl esl_base(PlayerRef objective, std::vector<Slots> slots, std::string history)
{
    check_history_name(history);
    auto n = node(EslKind::Base);
    n->objective = objective;
    n->slots = std::move(slots);
    n->history = std::move(history);
    return n;
}

Esl esl_payload(Ltl psi, std::string text, std::vector<Slots> slots, std::string history)
{
    check_history_name(history);
    auto n = node(EslKind::Base);
    n->payload = std::move(psi);
    n->payload_text = std::move(text);
    n->slots = std::move(slots);
    n->history = std::move(history);
    return n;
}

Esl esl_not(Esl a)
{
    auto n = node(EslKind::Not);
    n->kids = {std::move(a)};
    return n;
}

Esl esl_or(Esl a, Esl b) { return binary(EslKind::Or, std::move(a), std::move(b)); }
Esl esl_and(Esl a, Esl b) { return binary(EslKind::And, std::move(a), std::move(b)); }
Esl esl_implies(Esl a, Esl b) { return binary(EslKind::Implies, std::move(a), std::move(b)); }
Esl esl_exists(Slots vars, Esl body) { return quantifier(EslKind::Exists, std::move(vars), std::move(body)); }
Esl esl_forall(Slots vars, Esl body) { return quantifier(EslKind::Forall, std::move(vars), std::move(body)); }

Esl esl_exists_history(std::string h, Esl body)
{
    check_history_name(h);
    auto n = node(EslKind::ExistsHistory);
    n->history = std::move(h);
    n->kids = {std::move(body)};
    return n;
}

Esl esl_forall_history(std::string h, Esl body)
{
    check_history_name(h);
    auto n = node(EslKind::ForallHistory);
    n->history = std::move(h);
    n->kids = {std::move(body)};
    return n;
}

Esl esl_and_agents(Esl body)
{
    auto n = node(EslKind::AndAgents);
    n->kids = {std::move(body)};
    return n;
}

Esl solution_body(Concept gamma)
{
    const Slots y{'y', Cover::All, {}};
    const Slots yi{'y', Cover::Only, {agent_i}};
    const Slots y0{'y', Cover::Only, {player(0)}};
    const Slots zi{'z', Cover::Only, {agent_i}};
    switch (gamma) {
    case Concept::Dominant:
        return esl_and_agents(esl_forall(
            {'z', Cover::All, {}},
            esl_implies(esl_base(agent_i, {{'z', Cover::Except, {player(0)}}, y0}),
                        esl_base(agent_i, {{'z', Cover::Except, {agent_i, player(0)}}, yi, y0}))));
    case Concept::Nash:
        return esl_and_agents(
            esl_forall(zi, esl_implies(esl_base(agent_i, {{'y', Cover::Except, {agent_i}}, zi}), esl_base(agent_i, {y}))));
    case Concept::Spe:
        return esl_forall_history(
            "h", esl_and_agents(esl_forall(zi, esl_implies(esl_base(agent_i, {{'y', Cover::Except, {agent_i}}, zi}, "h"),
                                                           esl_base(agent_i, {y}, "h")))));
    }
    throw EslError("unknown solution concept");
}

Esl build_solution_formula(Concept gamma)
{
    const Slots y{'y', Cover::All, {}};
    return esl_exists(y, esl_and(esl_base(player(0), {y}), solution_body(gamma)));
}

std::string esl_to_string(const Esl& f)
{
    switch (f->kind) {
    case EslKind::Base: {
        std::string r = f->payload ? f->payload_text : "phi_" + ref_string(f->objective);
        r += "(";
        for (std::size_t k = 0; k < f->slots.size(); ++k) r += (k ? ", " : "") + slots_string(f->slots[k]);
        if (!f->history.empty()) r += (f->slots.empty() ? "" : ", ") + f->history;
        return r + ")";
    }
    case EslKind::Not: return "!" + esl_to_string(f->kids[0]);
    case EslKind::Or: return "(" + esl_to_string(f->kids[0]) + " | " + esl_to_string(f->kids[1]) + ")";
    case EslKind::And: return "(" + esl_to_string(f->kids[0]) + " & " + esl_to_string(f->kids[1]) + ")";
    case EslKind::Implies: return "(" + esl_to_string(f->kids[0]) + " -> " + esl_to_string(f->kids[1]) + ")";
    case EslKind::Exists: return "exists " + slots_string(f->slots[0]) + ". " + esl_to_string(f->kids[0]);
    case EslKind::Forall: return "forall " + slots_string(f->slots[0]) + ". " + esl_to_string(f->kids[0]);
    case EslKind::ExistsHistory: return "exists " + f->history + ". " + esl_to_string(f->kids[0]);
    case EslKind::ForallHistory: return "forall " + f->history + ". " + esl_to_string(f->kids[0]);
    case EslKind::AndAgents: return "AND_{i in I-0} " + esl_to_string(f->kids[0]);
    }
    return "";
}

std::string strategy_variable(char family, int player) { return std::string(1, family) + "_" + std::to_string(player); }

namespace {

Esl expand(const Esl& f, int n, int agent)
{
    auto resolve = [&](const PlayerRef& p) {
        if (p.agent && agent < 0) throw EslError("agent index used outside an agent conjunction");
        const int j = p.agent ? agent : p.index;
        if (j < 0 || j >= n) throw EslError("player " + std::to_string(j) + " out of range");
        return j;
    };
    switch (f->kind) {
    case EslKind::Base: {
        auto b = std::make_shared<EslNode>(*f);
        b->objective = player(resolve(f->objective));
        b->slots.clear();
        for (int j = 0; j < n; ++j) {
            const Slots* owner = nullptr;
            for (const auto& s : f->slots) {
                for (const auto& p : s.players) resolve(p);
                if (!covers(s, j, agent)) continue;
                if (owner) throw EslError("player " + std::to_string(j) + " has two strategy variables");
                owner = &s;
            }
            if (!owner) throw EslError("player " + std::to_string(j) + " has no strategy variable");
            b->slots.push_back({owner->family, Cover::Only, {player(j)}});
        }
        return b;
    }
    case EslKind::Exists:
    case EslKind::Forall: {
        Esl body = expand(f->kids[0], n, agent);
        const Slots& s = f->slots[0];
        if (s.cover == Cover::Only) return quantifier(f->kind, {s.family, Cover::Only, {player(resolve(s.players[0]))}}, body);
        for (int j = n - 1; j >= 0; --j) body = quantifier(f->kind, {s.family, Cover::Only, {player(j)}}, body);
        return body;
    }
    case EslKind::AndAgents: {
        if (agent >= 0) throw EslError("nested agent conjunctions");
        if (n < 2) throw EslError("an agent conjunction needs at least one agent");
        Esl acc = expand(f->kids[0], n, 1);
        for (int i = 2; i < n; ++i) acc = esl_and(acc, expand(f->kids[0], n, i));
        return acc;
    }
    default: {
        auto c = std::make_shared<EslNode>(*f);
        for (auto& k : c->kids) k = expand(k, n, agent);
        return c;
    }
    }
}

bool expanded(const Esl& f)
{
    if (f->kind == EslKind::AndAgents) return false;
    for (const auto& s : f->slots)
        if (s.cover != Cover::Only || s.players.size() != 1 || s.players[0].agent) return false;
    if (f->kind == EslKind::Base && f->objective.agent) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), expanded);
}

std::string bound_name(const EslNode& n)
{
    if (n.kind == EslKind::ExistsHistory || n.kind == EslKind::ForallHistory) return n.history;
    return strategy_variable(n.slots[0].family, n.slots[0].players[0].index);
}

} // namespace

Esl esl_expand(const Esl& f, int num_players) { return expand(f, num_players, -1); }

std::set<std::string> esl_free_variables(const Esl& f)
{
    if (!expanded(f)) throw EslError("free variables need an expanded formula");
    std::set<std::string> out;
    switch (f->kind) {
    case EslKind::Base:
        for (const auto& s : f->slots) out.insert(strategy_variable(s.family, s.players[0].index));
        if (!f->history.empty()) out.insert(f->history);
        return out;
    case EslKind::Exists:
    case EslKind::Forall:
    case EslKind::ExistsHistory:
    case EslKind::ForallHistory:
        out = esl_free_variables(f->kids[0]);
        out.erase(bound_name(*f));
        return out;
    default:
        for (const auto& k : f->kids) {
            auto s = esl_free_variables(k);
            out.insert(s.begin(), s.end());
        }
        return out;
    }
}

int esl_alternation_depth(const Esl& f)
{
    // Quantifiers seen through negations and implication premises flip.
    std::function<int(const Esl&, bool, int, int)> walk = [&](const Esl& g, bool negated, int last, int switches) {
        switch (g->kind) {
        case EslKind::Base: return 0;
        case EslKind::Not: return walk(g->kids[0], !negated, last, switches);
        case EslKind::Implies:
            return std::max(walk(g->kids[0], !negated, last, switches), walk(g->kids[1], negated, last, switches));
        case EslKind::Or:
        case EslKind::And: return std::max(walk(g->kids[0], negated, last, switches), walk(g->kids[1], negated, last, switches));
        case EslKind::AndAgents: return walk(g->kids[0], negated, last, switches);
        default: {
            const bool universal = g->kind == EslKind::Forall || g->kind == EslKind::ForallHistory;
            const int kind = universal != negated ? 1 : 0;
            const int s = switches + (last >= 0 && last != kind ? 1 : 0);
            return std::max(s, walk(g->kids[0], negated, kind, s));
        }
        }
    };
    return walk(f, false, -1, 0);
}

std::vector<Strategy> bounded_strategies(const Arena& a, int player, int k, std::int64_t cap)
{
    const InputKind input = a.variable ? InputKind::Actions : InputKind::Vertices;
    const int nv = a.num_vertices();
    const int ns = input == InputKind::Actions ? a.num_joint_codes() : nv;
    std::vector<Strategy> out;
    for (int m = 1; m <= k; ++m) {
        // Digits: outputs (memory-major) then updates.
        std::vector<int> radix;
        for (int x = 0; x < m; ++x)
            for (int v = 0; v < nv; ++v) radix.push_back(static_cast<int>(a.available[player][v].size()));
        for (int x = 0; x < m * ns; ++x) radix.push_back(m);
        double total = 1;
        for (int r : radix) total *= r;
        if (total + static_cast<double>(out.size()) > static_cast<double>(cap))
            throw EslError("more than " + std::to_string(cap) + " strategies of memory <= " + std::to_string(k) +
                           " for player " + a.players[player]);
        std::vector<int> digit(radix.size(), 0);
        while (true) {
            Strategy s;
            s.owner = player;
            s.input = input;
            s.memory = m;
            std::size_t at = 0;
            for (int x = 0; x < m; ++x) {
                std::vector<int> row;
                for (int v = 0; v < nv; ++v) row.push_back(a.available[player][v][digit[at++]]);
                s.output.push_back(row);
            }
            for (int x = 0; x < m; ++x) s.update.emplace_back(digit.begin() + at + x * ns, digit.begin() + at + (x + 1) * ns);
            // Machines with unreachable memory repeat smaller ones.
            std::vector<char> seen(m, 0);
            std::vector<int> stack{0};
            seen[0] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : s.update[x])
                    if (!seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
            if (std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) out.push_back(std::move(s));
            std::size_t p = 0;
            while (p < digit.size() && ++digit[p] == radix[p]) digit[p++] = 0;
            if (p == digit.size()) break;
        }
    }
    return out;
}

std::vector<History> bounded_histories(const Arena& a, int max_vertices)
{
    std::vector<History> out;
    if (max_vertices < 1) return out;
    History root;
    root.vertices = {a.initial};
    out.push_back(root);
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (static_cast<int>(out[k].vertices.size()) >= max_vertices) continue;
        const int v = out[k].vertices.back();
        for (int c = 0; c < a.num_tuples(v); ++c) {
            if (a.delta[v][c] < 0) continue;
            History h = out[k];
            h.tuples.push_back(a.decode(v, c));
            h.vertices.push_back(a.delta[v][c]);
            out.push_back(std::move(h));
        }
    }
    return out;
}

namespace {

struct Evaluator {
    const Arena& a;
    const std::vector<Ltl>& objectives;
    const EslBounds& bounds;
    EslAssignment env;
    std::map<int, std::vector<Strategy>> strategies;
    std::vector<History> histories;

    const std::vector<Strategy>& of(int j)
    {
        auto it = strategies.find(j);
        if (it == strategies.end())
            it = strategies.emplace(j, bounded_strategies(a, j, bounds.memory, bounds.max_strategies)).first;
        return it->second;
    }

    Ltl objective(const EslNode& n) const
    {
        if (n.payload) return n.payload;
        if (n.objective.index >= static_cast<int>(objectives.size()))
            throw EslError("no objective for player " + std::to_string(n.objective.index));
        return objectives[n.objective.index];
    }

    bool eval(const Esl& f)
    {
        switch (f->kind) {
        case EslKind::Base: {
            Profile p;
            for (const auto& s : f->slots) {
                const std::string var = strategy_variable(s.family, s.players[0].index);
                auto it = env.strategies.find(var);
                if (it == env.strategies.end()) throw EslError("unbound strategy variable " + var);
                if (it->second.owner != s.players[0].index)
                    throw EslError("variable " + var + " holds a strategy of another player");
                p.push_back(it->second);
            }
            Lasso l;
            if (f->history.empty()) l = outcome(a, p);
            else {
                auto it = env.histories.find(f->history);
                if (it == env.histories.end()) throw EslError("unbound history variable " + f->history);
                l = shifted_outcome(a, p, it->second);
            }
            return eval_lasso(objective(*f), word_of(a, l));
        }
        case EslKind::Not: return !eval(f->kids[0]);
        case EslKind::Or: return eval(f->kids[0]) || eval(f->kids[1]);
        case EslKind::And: return eval(f->kids[0]) && eval(f->kids[1]);
        case EslKind::Implies: return !eval(f->kids[0]) || eval(f->kids[1]);
        case EslKind::Exists:
        case EslKind::Forall: {
            const bool want = f->kind == EslKind::Exists;
            const int j = f->slots[0].players[0].index;
            const std::string var = strategy_variable(f->slots[0].family, j);
            auto saved = env.strategies.find(var) == env.strategies.end() ? std::optional<Strategy>{}
                                                                          : std::optional<Strategy>{env.strategies[var]};
            bool result = !want;
            for (const auto& s : of(j)) {
                env.strategies[var] = s;
                if (eval(f->kids[0]) == want) {
                    result = want;
                    break;
                }
            }
            if (saved) env.strategies[var] = *saved;
            else env.strategies.erase(var);
            return result;
        }
        case EslKind::ExistsHistory:
        case EslKind::ForallHistory: {
            const bool want = f->kind == EslKind::ExistsHistory;
            if (histories.empty()) histories = bounded_histories(a, bounds.history);
            auto saved = env.histories.find(f->history) == env.histories.end()
                             ? std::optional<History>{}
                             : std::optional<History>{env.histories[f->history]};
            bool result = !want;
            for (const auto& h : histories) {
                env.histories[f->history] = h;
                if (eval(f->kids[0]) == want) {
                    result = want;
                    break;
                }
            }
            if (saved) env.histories[f->history] = *saved;
            else env.histories.erase(f->history);
            return result;
        }
        case EslKind::AndAgents: throw EslError("formula is not expanded");
        }
        return false;
    }
};

} // namespace

EslResult esl_eval_bounded(const Esl& f, const Arena& a, const std::vector<Ltl>& objectives,
                           const EslAssignment& assignment, const EslBounds& bounds)
{
    if (bounds.memory < 1 || bounds.history < 1) throw EslError("bounds must be positive");
    const Esl g = expanded(f) ? f : esl_expand(f, a.num_players());
    for (const auto& v : esl_free_variables(g))
        if (!assignment.strategies.count(v) && !assignment.histories.count(v))
            throw EslError("free variable " + v + " is not assigned");
    Evaluator e{a, objectives, bounds, assignment, {}, {}};
    return {e.eval(g), bounds};
}

// ---------------------------------------------------------------- automata

namespace {

struct Compiler {
    const Arena& a;
    const std::vector<Ltl>& objectives;
    const AptLimits& limits;

    bool is_history(const std::string& var) const { return var.find('_') == std::string::npos; }

    int dim(const std::string& var) const
    {
        if (is_history(var)) return 2;
        const int j = std::stoi(var.substr(var.find('_') + 1));
        return static_cast<int>(a.actions.at(j).size());
    }

    std::vector<int> dims(const std::vector<std::string>& ctx) const
    {
        std::vector<int> d;
        for (const auto& v : ctx) d.push_back(dim(v));
        return d;
    }

    /** Lifts an automaton over (player actions..., mark) to the context alphabet. */
    Apt lift(const Apt& base, const std::vector<std::string>& ctx, const std::vector<std::string>& reads) const
    {
        Apt shell;
        shell.dims = dims(ctx);
        std::vector<int> view;
        for (int x = 0; x < shell.num_letters(); ++x) {
            const std::vector<int> parts = shell.letter_parts(x);
            std::vector<int> bparts;
            for (const auto& var : reads) {
                if (var.empty()) {
                    bparts.push_back(0);
                    continue;
                }
                auto it = std::find(ctx.begin(), ctx.end(), var);
                if (it == ctx.end()) throw EslError("unbound variable " + var);
                bparts.push_back(parts[it - ctx.begin()]);
            }
            view.push_back(base.letter(bparts));
        }
        return apt_lift(base, ctx, shell.dims, view);
    }

    Apt base(const EslNode& n, const std::vector<std::string>& ctx) const
    {
        const Ltl psi = n.payload ? n.payload : objectives.at(n.objective.index);
        std::vector<std::string> reads;
        for (const auto& s : n.slots) reads.push_back(strategy_variable(s.family, s.players[0].index));
        reads.push_back(n.history);
        return lift(n.history.empty() ? apt_base_root(psi, a) : apt_base(psi, a), ctx, reads);
    }

    /** Markings of history variable h that form one finite path. */
    Apt legal(const std::string& h, const std::vector<std::string>& ctx) const
    {
        std::vector<std::string> reads(a.num_players() + 1);
        reads.back() = h;
        return lift(apt_legal_marks(a), ctx, reads);
    }

    Apt exists(const Esl& body, const std::string& var, std::vector<std::string> ctx, bool negate_body) const
    {
        ctx.push_back(var);
        Apt inner = compile(body, ctx);
        if (negate_body) inner = apt_complement(inner);
        if (is_history(var)) inner = apt_intersection(legal(var, ctx), inner);
        return apt_project(inner, static_cast<int>(ctx.size()) - 1, limits);
    }

    Apt compile(const Esl& f, const std::vector<std::string>& ctx) const
    {
        switch (f->kind) {
        case EslKind::Base: return base(*f, ctx);
        case EslKind::Not: return apt_complement(compile(f->kids[0], ctx));
        case EslKind::Or: return apt_union(compile(f->kids[0], ctx), compile(f->kids[1], ctx));
        case EslKind::And: return apt_intersection(compile(f->kids[0], ctx), compile(f->kids[1], ctx));
        case EslKind::Implies:
            return apt_union(apt_complement(compile(f->kids[0], ctx)), compile(f->kids[1], ctx));
        case EslKind::Exists:
        case EslKind::ExistsHistory: return exists(f->kids[0], bound_name(*f), ctx, false);
        case EslKind::Forall:
        case EslKind::ForallHistory: return apt_complement(exists(f->kids[0], bound_name(*f), ctx, true));
        case EslKind::AndAgents: throw EslError("formula is not expanded");
        }
        throw EslError("unknown formula kind");
    }
};

} // namespace

Apt esl_to_apt(const Esl& f, const Arena& a, const std::vector<Ltl>& objectives,
               const std::vector<std::string>& free, const AptLimits& limits)
{
    if (!expanded(f)) throw EslError("compile an expanded formula");
    for (const auto& v : esl_free_variables(f))
        if (std::find(free.begin(), free.end(), v) == free.end()) throw EslError("free variable " + v + " not listed");
    Compiler c{a, objectives, limits};
    return c.compile(f, free);
}

} // namespace rsynth
