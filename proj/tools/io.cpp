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

#include "io.hpp"

#include "rsynth/fixtures.hpp"
#include "rsynth/ltl.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace rsynth::io {

namespace {

std::string format_of(const std::string& kind) { return "rsynth." + kind + "/1"; }

json names_of(const std::vector<std::string>& all, const std::vector<int>& ids)
{
    json out = json::array();
    for (int i : ids) out.push_back(all[i]);
    return out;
}

json props_json(const std::vector<std::string>& props, Props p)
{
    json out = json::array();
    for (std::size_t k = 0; k < props.size(); ++k)
        if (p >> k & 1) out.push_back(props[k]);
    return out;
}

Props props_mask(const Node& n, const std::vector<std::string>& props)
{
    Props m = 0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        const std::string s = n[k].str();
        auto it = std::find(props.begin(), props.end(), s);
        if (it == props.end()) n[k].fail("unknown proposition '" + s + "'");
        m |= Props(1) << (it - props.begin());
    }
    return m;
}

int lookup(const Node& n, const std::vector<std::string>& names, const std::string& what)
{
    const std::string s = n.str();
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) n.fail("unknown " + what + " '" + s + "'");
    return static_cast<int>(it - names.begin());
}

Elem element(const Node& n, const Lattice& l)
{
    const std::string s = n.str();
    auto e = l.find(s);
    if (!e) n.fail("unknown lattice element '" + s + "'");
    return *e;
}

std::string line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < text.size() && k + 1 < byte; ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

// Small latticed fixtures, built in code so that they go through the writers.

LatticedGame diamond_choice_game()
{
    // The ∨-player picks a side at s; the ∧-player at each side may leave for
    // a sink worth only that side's element.
    LatticedGame g;
    g.lattice = std::make_shared<const Lattice>(Lattice::diamond());
    const Lattice& l = *g.lattice;
    const Elem bot = l.index("bot"), a = l.index("a"), b = l.index("b"), top = l.index("top");
    g.vertices = {"s", "l", "r", "sink"};
    g.or_vertex = {1, 0, 0, 1};
    g.initial = 0;
    g.accept = {top, a, b, bot};
    g.edges = {{{1, top}, {2, top}}, {{0, bot}, {3, a}}, {{0, bot}, {3, b}}, {{3, bot}}};
    return g;
}

Ldbw recurring_letter(const LatticePtr& l, const std::vector<std::string>& props, int own, Elem low)
{
    // Value top when the own letter recurs, `low` otherwise.
    Ldbw a;
    a.lattice = l;
    a.props = props;
    a.num_states = 2;
    a.initial = 0;
    a.delta.assign(2, std::vector<int>(a.num_letters()));
    a.value.assign(2, std::vector<Elem>(a.num_letters(), l->top()));
    for (int q = 0; q < 2; ++q)
        for (int x = 0; x < a.num_letters(); ++x) a.delta[q][x] = (x >> own & 1) ? 1 : 0;
    a.accept = {low, l->top()};
    return a;
}

LatticedObjectives fig1_chain3()
{
    const Arena a = fig1_arena();
    auto l = std::make_shared<const Lattice>(Lattice::chain(3));
    LatticedObjectives out;
    for (int i = 0; i < 3; ++i) out.push_back(recurring_letter(l, a.props, i, l->index("half")));
    return out;
}

using Maker = std::function<json()>;

const std::map<std::string, std::map<std::string, Maker>>& fixtures()
{
    static const std::map<std::string, std::map<std::string, Maker>> all{
        {"arena", {{"fig1", [] { return write_arena(fig1_arena()); }}, {"p2p", [] { return write_arena(p2p_arena()); }}}},
        {"profile",
         {{"fig1-dotted", [] { return write_profile(fig1_arena(), fig1_dotted()); }},
          {"fig1-dashed", [] { return write_profile(fig1_arena(), fig1_dashed()); }},
          {"titfortat", [] { return write_profile(p2p_arena(), tit_for_tat_profile(p2p_arena())); }}}},
        {"objectives",
         {{"fig1-F", [] { return write_objectives(fig1_objectives_f()); }},
          {"fig1-GF", [] { return write_objectives(fig1_objectives_gf()); }},
          {"p2p", [] { return write_objectives(p2p_objectives()); }}}},
        {"lattice",
         {{"boolean", [] { return write_lattice(Lattice::boolean()); }},
          {"chain3", [] { return write_lattice(Lattice::chain(3)); }},
          {"diamond", [] { return write_lattice(Lattice::diamond()); }},
          {"powerset2", [] { return write_lattice(Lattice::powerset(2)); }},
          {"powerset3", [] { return write_lattice(Lattice::powerset(3)); }}}},
        {"latticed-game", {{"diamond-choice", [] { return write_latticed_game(diamond_choice_game()); }}}},
        {"latticed-objectives", {{"fig1-chain3", [] { return write_latticed_objectives(fig1_chain3()); }}}},
    };
    return all;
}

} // namespace

Node Node::operator[](const std::string& key) const
{
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing field '" + key + "'");
    return Node(*it, source_, path_ + "/" + key);
}

std::optional<Node> Node::find(const std::string& key) const
{
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) return std::nullopt;
    return Node(*it, source_, path_ + "/" + key);
}

Node Node::operator[](std::size_t i) const
{
    if (!j_->is_array()) fail("expected an array");
    if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
    return Node((*j_)[i], source_, path_ + "/" + std::to_string(i));
}

std::size_t Node::size() const
{
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
}

std::vector<std::string> Node::keys() const
{
    if (!j_->is_object()) fail("expected an object");
    std::vector<std::string> out;
    for (auto it = j_->begin(); it != j_->end(); ++it) out.push_back(it.key());
    return out;
}

std::string Node::str() const
{
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
}

int Node::integer() const
{
    if (!j_->is_number_integer()) fail("expected an integer");
    const auto v = j_->get<std::int64_t>();
    if (v < -(1 << 30) || v > (1 << 30)) fail("integer out of range");
    return static_cast<int>(v);
}

std::vector<std::string> Node::strings() const
{
    std::vector<std::string> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back((*this)[k].str());
    return out;
}

void Node::fail(const std::string& msg) const
{
    throw InputError(source_ + ":" + (path_.empty() ? "/" : path_) + ": " + msg);
}

std::vector<std::string> fixture_names(const std::string& kind)
{
    std::vector<std::string> out;
    auto it = fixtures().find(kind);
    if (it != fixtures().end())
        for (const auto& [name, make] : it->second) out.push_back(name);
    return out;
}

std::optional<std::string> default_objectives(const std::string& arena_spec)
{
    if (arena_spec == "fixture:fig1") return "fixture:fig1-F";
    if (arena_spec == "fixture:p2p") return "fixture:p2p";
    return std::nullopt;
}

Document load_document(const std::string& spec, const std::string& kind)
{
    Document d;
    d.source = spec;
    if (spec.rfind("fixture:", 0) == 0) {
        const std::string name = spec.substr(8);
        const auto& byname = fixtures().at(kind);
        auto it = byname.find(name);
        if (it == byname.end()) {
            std::string known;
            for (const auto& [n, make] : byname) known += (known.empty() ? "" : ", ") + n;
            throw InputError(spec + ": unknown " + kind + " fixture (known: " + known + ")");
        }
        d.value = it->second();
    } else {
        std::string text;
        if (spec == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(spec, std::ios::binary);
            if (!in) throw InputError(spec + ": cannot open file");
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        try {
            d.value = json::parse(text);
        } catch (const json::parse_error& e) {
            throw InputError(spec + ":" + line_column(text, e.byte) + ": malformed JSON: " + e.what());
        }
    }
    const Node root = d.root();
    if (!root.is_object()) root.fail("expected a " + kind + " document object");
    const std::string fmt = root["format"].str();
    if (fmt != format_of(kind)) root["format"].fail("expected format \"" + format_of(kind) + "\", got \"" + fmt + "\"");
    return d;
}

std::string digest(const json& j)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

// ---- arenas ----

Arena read_arena(const Document& d)
{
    const Node root = d.root();
    if (auto vars = root.find("variables")) {
        std::vector<std::vector<std::string>> partition;
        for (std::size_t i = 0; i < vars->size(); ++i) partition.push_back((*vars)[i].strings());
        std::vector<std::string> names;
        if (auto ps = root.find("players")) names = ps->strings();
        if (!names.empty() && names.size() != partition.size()) root["players"].fail("one name per variable set");
        try {
            return arena_from_variables(partition, names);
        } catch (const ArenaError& e) {
            vars->fail(e.what());
        }
    }

    ArenaBuilder b;
    std::vector<std::string> props;
    if (auto ps = root.find("propositions")) props = ps->strings();
    b.propositions(props);
    std::set<std::string> seen;
    std::vector<std::string> vnames;
    const Node vs = root["vertices"];
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const std::string name = vs[k]["name"].str();
        if (!seen.insert(name).second) vs[k]["name"].fail("duplicate vertex '" + name + "'");
        std::vector<std::string> label;
        if (auto lab = vs[k].find("label")) {
            props_mask(*lab, props);
            label = lab->strings();
        }
        vnames.push_back(name);
        b.vertex(name, label);
    }
    if (vnames.empty()) vs.fail("an arena needs at least one vertex");
    const Node init = root["initial"];
    lookup(init, vnames, "vertex");
    b.initial(init.str());

    std::vector<std::string> pnames;
    std::vector<std::vector<std::string>> acts;
    const Node ps = root["players"];
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string name = ps[i]["name"].str();
        if (std::find(pnames.begin(), pnames.end(), name) != pnames.end()) ps[i]["name"].fail("duplicate player");
        pnames.push_back(name);
        acts.push_back(ps[i]["actions"].strings());
        if (acts.back().empty()) ps[i]["actions"].fail("a player needs at least one action");
        b.player(name, acts.back());
        if (auto def = ps[i].find("default")) {
            lookup(*def, acts.back(), "action");
            b.default_action(name, def->str());
        }
    }
    if (auto av = root.find("available")) {
        for (const auto& player : av->keys()) {
            const Node row = (*av)[player];
            auto pit = std::find(pnames.begin(), pnames.end(), player);
            if (pit == pnames.end()) row.fail("unknown player '" + player + "'");
            const auto& pa = acts[pit - pnames.begin()];
            for (const auto& vertex : row.keys()) {
                const Node cell = row[vertex];
                if (std::find(vnames.begin(), vnames.end(), vertex) == vnames.end())
                    cell.fail("unknown vertex '" + vertex + "'");
                for (std::size_t k = 0; k < cell.size(); ++k) lookup(cell[k], pa, "action");
                b.available(player, vertex, cell.strings());
            }
        }
    }
    if (auto al = root.find("action_labels")) {
        for (const auto& player : al->keys()) {
            const Node row = (*al)[player];
            auto pit = std::find(pnames.begin(), pnames.end(), player);
            if (pit == pnames.end()) row.fail("unknown player '" + player + "'");
            for (const auto& action : row.keys()) {
                if (std::find(acts[pit - pnames.begin()].begin(), acts[pit - pnames.begin()].end(), action) ==
                    acts[pit - pnames.begin()].end())
                    row[action].fail("unknown action '" + action + "'");
                props_mask(row[action], props);
                b.action_label(player, action, row[action].strings());
            }
        }
    }
    const Node ts = root["transitions"];
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Node t = ts[k];
        lookup(t["from"], vnames, "vertex");
        lookup(t["to"], vnames, "vertex");
        const Node tup = t["tuple"];
        if (tup.size() != pnames.size()) tup.fail("tuple needs one action per player");
        for (std::size_t i = 0; i < tup.size(); ++i) lookup(tup[i], acts[i], "action");
        b.edge(t["from"].str(), tup.strings(), t["to"].str());
    }
    try {
        Arena a = b.build();
        // Duplicate transitions silently overwrite in the builder.
        std::set<std::pair<int, int>> edges;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const int v = a.vertex_index(ts[k]["from"].str());
            Tuple t;
            for (std::size_t i = 0; i < pnames.size(); ++i) t.push_back(a.action_index(int(i), ts[k]["tuple"][i].str()));
            if (!edges.insert({v, a.encode(v, t)}).second) ts[k].fail("duplicate transition");
        }
        return a;
    } catch (const ArenaError& e) {
        root.fail(e.what());
    }
}

json write_arena(const Arena& a)
{
    json out;
    out["format"] = format_of("arena");
    if (a.variable) {
        json parts = json::array();
        for (int i = 0; i < a.num_players(); ++i) {
            Props all = 0;
            for (Props p : a.action_props[i]) all |= p;
            parts.push_back(props_json(a.props, all));
        }
        out["variables"] = parts;
        out["players"] = a.players;
        return out;
    }
    out["propositions"] = a.props;
    json vs = json::array();
    for (int v = 0; v < a.num_vertices(); ++v) vs.push_back({{"name", a.vertices[v]}, {"label", props_json(a.props, a.labels[v])}});
    out["vertices"] = vs;
    out["initial"] = a.vertices[a.initial];
    json ps = json::array(), av = json::object(), al = json::object();
    for (int i = 0; i < a.num_players(); ++i) {
        ps.push_back({{"name", a.players[i]}, {"actions", a.actions[i]}});
        for (int v = 0; v < a.num_vertices(); ++v) av[a.players[i]][a.vertices[v]] = names_of(a.actions[i], a.available[i][v]);
        for (std::size_t x = 0; x < a.actions[i].size(); ++x)
            if (a.action_props[i][x]) al[a.players[i]][a.actions[i][x]] = props_json(a.props, a.action_props[i][x]);
    }
    out["players"] = ps;
    out["available"] = av;
    out["action_labels"] = al;
    json ts = json::array();
    for (int v = 0; v < a.num_vertices(); ++v)
        for (int c = 0; c < a.num_tuples(v); ++c) {
            if (a.delta[v][c] < 0) continue;
            const Tuple t = a.decode(v, c);
            json names = json::array();
            for (int i = 0; i < a.num_players(); ++i) names.push_back(a.actions[i][t[i]]);
            ts.push_back({{"from", a.vertices[v]}, {"tuple", names}, {"to", a.vertices[a.delta[v][c]]}});
        }
    out["transitions"] = ts;
    return out;
}

// ---- strategies and profiles ----

Strategy read_strategy(const Node& n, const Arena& a, int owner)
{
    Strategy s;
    s.owner = owner;
    const std::string input = n.find("input") ? n["input"].str() : "vertices";
    if (input == "vertices") s.input = InputKind::Vertices;
    else if (input == "actions") s.input = InputKind::Actions;
    else n["input"].fail("expected \"vertices\" or \"actions\"");
    if (s.input == InputKind::Actions && !a.variable && a.num_vertices() > 1)
        n["input"].fail("action-input strategies need a variable-partition arena");
    s.memory = n["memory"].integer();
    if (s.memory < 1) n["memory"].fail("memory must be at least 1");
    s.initial = n.find("initial") ? n["initial"].integer() : 0;
    if (s.initial < 0 || s.initial >= s.memory) n["initial"].fail("initial memory out of range");
    if (auto mn = n.find("memory_names")) {
        s.memory_names = mn->strings();
        if (static_cast<int>(s.memory_names.size()) != s.memory) mn->fail("one name per memory state");
    }
    const Node out = n["output"], upd = n["update"];
    if (static_cast<int>(out.size()) != s.memory) out.fail("one output row per memory state");
    if (static_cast<int>(upd.size()) != s.memory) upd.fail("one update row per memory state");
    auto memory_target = [&](const Node& x) {
        const int m = x.integer();
        if (m < 0 || m >= s.memory) x.fail("memory state out of range");
        return m;
    };
    for (int m = 0; m < s.memory; ++m) {
        const Node row = out[m];
        for (const auto& k : row.keys())
            if (std::find(a.vertices.begin(), a.vertices.end(), k) == a.vertices.end()) row[k].fail("unknown vertex '" + k + "'");
        std::vector<int> acts;
        for (int v = 0; v < a.num_vertices(); ++v) acts.push_back(lookup(row[a.vertices[v]], a.actions[owner], "action"));
        s.output.push_back(acts);
        const Node urow = upd[m];
        std::vector<int> next;
        if (s.input == InputKind::Vertices) {
            for (const auto& k : urow.keys())
                if (std::find(a.vertices.begin(), a.vertices.end(), k) == a.vertices.end()) urow[k].fail("unknown vertex '" + k + "'");
            for (int v = 0; v < a.num_vertices(); ++v) next.push_back(memory_target(urow[a.vertices[v]]));
        } else {
            if (static_cast<int>(urow.size()) != a.num_joint_codes()) urow.fail("one entry per joint action code");
            for (int c = 0; c < a.num_joint_codes(); ++c) next.push_back(memory_target(urow[c]));
        }
        s.update.push_back(next);
    }
    return s;
}

json write_strategy(const Arena& a, const Strategy& s)
{
    json out;
    out["player"] = a.players[s.owner];
    out["input"] = s.input == InputKind::Vertices ? "vertices" : "actions";
    out["memory"] = s.memory;
    out["initial"] = s.initial;
    if (!s.memory_names.empty()) out["memory_names"] = s.memory_names;
    json rows = json::array(), urows = json::array();
    for (int m = 0; m < s.memory; ++m) {
        json row = json::object();
        for (int v = 0; v < a.num_vertices(); ++v) row[a.vertices[v]] = a.actions[s.owner][s.output[m][v]];
        rows.push_back(row);
        if (s.input == InputKind::Vertices) {
            json u = json::object();
            for (int v = 0; v < a.num_vertices(); ++v) u[a.vertices[v]] = s.update[m][v];
            urows.push_back(u);
        } else {
            urows.push_back(s.update[m]);
        }
    }
    out["output"] = rows;
    out["update"] = urows;
    return out;
}

Profile read_profile(const Document& d, const Arena& a)
{
    const Node ss = d.root()["strategies"];
    if (static_cast<int>(ss.size()) != a.num_players())
        ss.fail("expected " + std::to_string(a.num_players()) + " strategies, one per player");
    Profile p(a.num_players());
    std::vector<char> done(a.num_players(), 0);
    for (std::size_t k = 0; k < ss.size(); ++k) {
        const int i = lookup(ss[k]["player"], a.players, "player");
        if (done[i]) ss[k]["player"].fail("second strategy for " + a.players[i]);
        done[i] = 1;
        p[i] = read_strategy(ss[k], a, i);
    }
    return p;
}

json write_profile(const Arena& a, const Profile& p)
{
    json ss = json::array();
    for (const auto& s : p) ss.push_back(write_strategy(a, s));
    return {{"format", format_of("profile")}, {"strategies", ss}};
}

// ---- objectives, histories, plays ----

std::vector<std::string> read_objectives(const Document& d, const Arena& a)
{
    const Node os = d.root()["objectives"];
    std::vector<std::string> out(a.num_players());
    auto parse = [&](const Node& n) {
        try {
            parse_ltl(n.str(), a.props);
        } catch (const LtlError& e) {
            n.fail(e.what());
        }
        return n.str();
    };
    if (os.is_object()) {
        std::vector<char> done(a.num_players(), 0);
        for (const auto& k : os.keys()) {
            auto it = std::find(a.players.begin(), a.players.end(), k);
            if (it == a.players.end()) os[k].fail("unknown player '" + k + "'");
            out[it - a.players.begin()] = parse(os[k]);
            done[it - a.players.begin()] = 1;
        }
        for (int i = 0; i < a.num_players(); ++i)
            if (!done[i]) os.fail("no objective for " + a.players[i]);
        return out;
    }
    if (static_cast<int>(os.size()) != a.num_players())
        os.fail("expected " + std::to_string(a.num_players()) + " formulas, one per player");
    for (int i = 0; i < a.num_players(); ++i) out[i] = parse(os[i]);
    return out;
}

json write_objectives(const std::vector<std::string>& formulas)
{
    return {{"format", format_of("objectives")}, {"objectives", formulas}};
}

History read_history(const Document& d, const Arena& a)
{
    const Node root = d.root();
    History h;
    const Node vs = root["vertices"];
    for (std::size_t k = 0; k < vs.size(); ++k) h.vertices.push_back(lookup(vs[k], a.vertices, "vertex"));
    if (auto ts = root.find("tuples")) {
        for (std::size_t k = 0; k < ts->size(); ++k) {
            const Node t = (*ts)[k];
            if (static_cast<int>(t.size()) != a.num_players()) t.fail("tuple needs one action per player");
            Tuple tup;
            for (int i = 0; i < a.num_players(); ++i) tup.push_back(lookup(t[i], a.actions[i], "action"));
            h.tuples.push_back(tup);
        }
    }
    try {
        return complete_history(a, h);
    } catch (const ArenaError& e) {
        root.fail(e.what());
    }
}

json write_history(const Arena& a, const History& h)
{
    json vs = json::array(), ts = json::array();
    for (int v : h.vertices) vs.push_back(a.vertices[v]);
    for (const auto& t : h.tuples) {
        json names = json::array();
        for (int i = 0; i < a.num_players(); ++i) names.push_back(a.actions[i][t[i]]);
        ts.push_back(names);
    }
    return {{"format", format_of("history")}, {"vertices", vs}, {"tuples", ts}};
}

json write_lasso(const Arena& a, const Lasso& l)
{
    auto pos = [&](const Position& p) {
        json names = json::array();
        for (int i = 0; i < a.num_players(); ++i) names.push_back(a.actions[i][p.tuple[i]]);
        return json{{"vertex", a.vertices[p.vertex]}, {"tuple", names}};
    };
    json pre = json::array(), cyc = json::array();
    for (const auto& p : l.prefix) pre.push_back(pos(p));
    for (const auto& p : l.cycle) cyc.push_back(pos(p));
    return {{"prefix", pre}, {"cycle", cyc}};
}

json write_verdict(const Arena& a, const Verdict& v)
{
    json out{{"holds", v.holds}};
    if (v.holds) return out;
    out["player"] = a.players[v.player];
    out["history"] = write_history(a, v.history);
    out["deviation"] = write_lasso(a, v.deviation);
    out["conforming"] = write_lasso(a, v.conforming);
    return out;
}

// ---- lattices ----

LatticeOrder read_lattice_order(const Node& n)
{
    LatticeOrder o;
    o.names = n["elements"].strings();
    std::set<std::string> seen;
    for (std::size_t k = 0; k < o.names.size(); ++k)
        if (!seen.insert(o.names[k]).second) n["elements"][k].fail("duplicate element '" + o.names[k] + "'");
    const Node le = n["leq"];
    for (std::size_t k = 0; k < le.size(); ++k) {
        if (le[k].size() != 2) le[k].fail("expected a pair [lower, upper]");
        lookup(le[k][0], o.names, "element");
        lookup(le[k][1], o.names, "element");
        o.leq.push_back({le[k][0].str(), le[k][1].str()});
    }
    const Node ng = n["neg"];
    for (const auto& k : ng.keys()) {
        if (!seen.count(k)) ng[k].fail("unknown element '" + k + "'");
        lookup(ng[k], o.names, "element");
        o.neg.push_back({k, ng[k].str()});
    }
    return o;
}

LatticePtr read_lattice(const Node& n)
{
    if (n.is_string()) {
        const std::string spec = n.str();
        if (spec.rfind("fixture:", 0) != 0) n.fail("expected an inline lattice or \"fixture:<name>\"");
        try {
            return read_lattice(load_document(spec, "lattice").root());
        } catch (const InputError& e) {
            n.fail(e.what());
        }
    }
    const LatticeOrder o = read_lattice_order(n);
    try {
        return std::make_shared<const Lattice>(Lattice::from_order(o.names, o.leq, o.neg));
    } catch (const LatticeError& e) {
        n.fail(e.what());
    }
}

json write_lattice(const Lattice& l)
{
    json le = json::array(), ng = json::object();
    for (Elem x = 0; x < l.size(); ++x) {
        for (Elem y = 0; y < l.size(); ++y)
            if (x != y && l.leq(x, y)) le.push_back({l.name(x), l.name(y)});
        ng[l.name(x)] = l.name(l.neg(x));
    }
    return {{"format", format_of("lattice")}, {"elements", l.tables().names}, {"leq", le}, {"neg", ng}};
}

// ---- latticed games ----

LatticedGame read_latticed_game(const Document& d)
{
    const Node root = d.root();
    LatticedGame g;
    g.lattice = read_lattice(root["lattice"]);
    const Lattice& l = *g.lattice;
    const Node vs = root["vertices"];
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const std::string name = vs[k]["name"].str();
        if (std::find(g.vertices.begin(), g.vertices.end(), name) != g.vertices.end())
            vs[k]["name"].fail("duplicate vertex '" + name + "'");
        g.vertices.push_back(name);
        const std::string owner = vs[k]["owner"].str();
        if (owner != "or" && owner != "and") vs[k]["owner"].fail("expected \"or\" or \"and\"");
        g.or_vertex.push_back(owner == "or");
        g.accept.push_back(vs[k].find("accept") ? element(vs[k]["accept"], l) : l.bottom());
    }
    if (g.vertices.empty()) vs.fail("a game needs at least one vertex");
    g.initial = lookup(root["initial"], g.vertices, "vertex");
    g.edges.assign(g.vertices.size(), {});
    const Node es = root["edges"];
    for (std::size_t k = 0; k < es.size(); ++k) {
        const int u = lookup(es[k]["from"], g.vertices, "vertex");
        const int v = lookup(es[k]["to"], g.vertices, "vertex");
        for (const auto& e : g.edges[u])
            if (e.to == v) es[k].fail("duplicate edge");
        g.edges[u].push_back({v, element(es[k]["value"], l)});
    }
    for (auto& row : g.edges)
        std::sort(row.begin(), row.end(), [](const LatticedEdge& x, const LatticedEdge& y) { return x.to < y.to; });
    const ArenaReport r = validate_latticed_game(g);
    if (!r.ok()) root.fail(r.errors.front());
    return g;
}

json write_latticed_game(const LatticedGame& g)
{
    const Lattice& l = *g.lattice;
    json vs = json::array(), es = json::array();
    for (int u = 0; u < g.num_vertices(); ++u) {
        vs.push_back({{"name", g.vertices[u]}, {"owner", g.or_vertex[u] ? "or" : "and"}, {"accept", l.name(g.accept[u])}});
        for (const auto& e : g.edges[u])
            es.push_back({{"from", g.vertices[u]}, {"to", g.vertices[e.to]}, {"value", l.name(e.value)}});
    }
    json lat = write_lattice(l);
    lat.erase("format");
    return {{"format", format_of("latticed-game")}, {"lattice", lat}, {"vertices", vs},
            {"initial", g.vertices[g.initial]}, {"edges", es}};
}

json write_latticed_strategy(const LatticedGame& g, const LatticedStrategy& s)
{
    json choice = json::array(), update = json::array();
    for (int m = 0; m < s.memory; ++m) {
        json c = json::object(), u = json::object();
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (g.or_vertex[v] && s.choice[m][v] >= 0) c[g.vertices[v]] = g.vertices[s.choice[m][v]];
            u[g.vertices[v]] = s.update[m][v];
        }
        choice.push_back(c);
        update.push_back(u);
    }
    return {{"memory", s.memory}, {"choice", choice}, {"update", update}};
}

VertexLasso parse_vertex_lasso(const LatticedGame& g, const std::string& text)
{
    VertexLasso l;
    std::string spaced;
    for (char c : text) {
        if (c == '(' || c == ')') spaced += std::string(" ") + c + " ";
        else spaced += c;
    }
    std::istringstream in(spaced);
    std::string tok;
    int stage = 0;   // 0 prefix, 1 cycle, 2 done
    while (in >> tok) {
        if (tok == "(") {
            if (stage != 0) throw InputError("--play: unexpected '('");
            stage = 1;
            continue;
        }
        if (tok == ")") {
            if (stage != 1) throw InputError("--play: unexpected ')'");
            stage = 2;
            continue;
        }
        if (stage == 2) throw InputError("--play: nothing may follow the cycle");
        auto it = std::find(g.vertices.begin(), g.vertices.end(), tok);
        if (it == g.vertices.end()) throw InputError("--play: unknown vertex '" + tok + "'");
        (stage == 0 ? l.prefix : l.cycle).push_back(static_cast<int>(it - g.vertices.begin()));
    }
    if (stage != 2 || l.cycle.empty()) throw InputError("--play: expected \"prefix... (cycle...)\" with a nonempty cycle");
    return l;
}

// ---- lattice automata ----

Ldbw read_ldbw(const Node& n)
{
    Ldbw a;
    a.lattice = read_lattice(n["lattice"]);
    const Lattice& l = *a.lattice;
    a.props = n["propositions"].strings();
    if (a.props.size() > 16) n["propositions"].fail("at most 16 propositions");
    const Node ss = n["states"];
    std::vector<std::string> names;
    for (std::size_t k = 0; k < ss.size(); ++k) {
        const std::string name = ss[k]["name"].str();
        if (std::find(names.begin(), names.end(), name) != names.end()) ss[k]["name"].fail("duplicate state");
        names.push_back(name);
        a.accept.push_back(ss[k].find("accept") ? element(ss[k]["accept"], l) : l.bottom());
    }
    if (names.empty()) ss.fail("an automaton needs at least one state");
    a.num_states = static_cast<int>(names.size());
    a.initial = lookup(n["initial"], names, "state");
    a.delta.assign(a.num_states, std::vector<int>(a.num_letters(), -1));
    a.value.assign(a.num_states, std::vector<Elem>(a.num_letters(), l.bottom()));
    const Node ts = n["transitions"];
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const int q = lookup(ts[k]["from"], names, "state");
        const int x = static_cast<int>(props_mask(ts[k]["letter"], a.props));
        if (a.delta[q][x] >= 0) ts[k].fail("second transition for the same state and letter");
        a.delta[q][x] = lookup(ts[k]["to"], names, "state");
        a.value[q][x] = element(ts[k]["value"], l);
    }
    for (int q = 0; q < a.num_states; ++q)
        for (int x = 0; x < a.num_letters(); ++x)
            if (a.delta[q][x] < 0) ts.fail("no transition from " + names[q] + " on letter " + std::to_string(x));
    const ArenaReport r = validate_ldbw(a);
    if (!r.ok()) n.fail(r.errors.front());
    return a;
}

json write_ldbw(const Ldbw& a)
{
    const Lattice& l = *a.lattice;
    auto qn = [](int q) { return "q" + std::to_string(q); };
    json ss = json::array(), ts = json::array();
    for (int q = 0; q < a.num_states; ++q) {
        ss.push_back({{"name", qn(q)}, {"accept", l.name(a.accept[q])}});
        for (int x = 0; x < a.num_letters(); ++x)
            ts.push_back({{"from", qn(q)}, {"letter", props_json(a.props, Props(x))}, {"to", qn(a.delta[q][x])},
                          {"value", l.name(a.value[q][x])}});
    }
    json lat = write_lattice(l);
    lat.erase("format");
    return {{"format", format_of("ldbw")}, {"lattice", lat}, {"propositions", a.props},
            {"states", ss}, {"initial", qn(a.initial)}, {"transitions", ts}};
}

LatticedObjectives read_latticed_objectives(const Document& d, const Arena& a)
{
    const Node as = d.root()["automata"];
    if (static_cast<int>(as.size()) != a.num_players())
        as.fail("expected " + std::to_string(a.num_players()) + " automata, one per player");
    LatticedObjectives out;
    for (int i = 0; i < a.num_players(); ++i) {
        out.push_back(read_ldbw(as[i]));
        if (out.back().props != a.props) as[i]["propositions"].fail("propositions must equal the arena's");
    }
    return out;
}

json write_latticed_objectives(const LatticedObjectives& objs)
{
    json as = json::array();
    for (const auto& o : objs) as.push_back(write_ldbw(o));
    return {{"format", format_of("latticed-objectives")}, {"automata", as}};
}

// ---- tree automata ----

Apt read_apt(const Document& d)
{
    const Node root = d.root();
    Apt a;
    if (auto cs = root.find("components")) a.components = cs->strings();
    if (auto ds = root.find("dims")) {
        for (std::size_t k = 0; k < ds->size(); ++k) {
            a.dims.push_back((*ds)[k].integer());
            if (a.dims.back() < 1) (*ds)[k].fail("dimension must be positive");
        }
    }
    if (a.components.size() != a.dims.size()) root.fail("components and dims differ in length");
    if (a.num_letters() > 1 << 16) root["dims"].fail("alphabet too large");
    a.num_directions = root["directions"].integer();
    if (a.num_directions < 1) root["directions"].fail("need at least one direction");
    const Node ss = root["states"];
    for (std::size_t k = 0; k < ss.size(); ++k) {
        const std::string name = ss[k]["name"].str();
        if (std::find(a.states.begin(), a.states.end(), name) != a.states.end()) ss[k]["name"].fail("duplicate state");
        a.states.push_back(name);
        a.priority.push_back(ss[k]["priority"].integer());
        if (a.priority.back() < 0) ss[k]["priority"].fail("priorities are nonnegative");
    }
    auto pbf = [&](const Node& n) {
        try {
            return parse_pbf(n.str(), a.states);
        } catch (const AptError& e) {
            n.fail(e.what());
        }
    };
    a.initial = pbf(root["initial"]);
    const Node ts = root["transitions"];
    if (static_cast<int>(ts.size()) != a.num_states()) ts.fail("one transition row per state");
    for (int q = 0; q < a.num_states(); ++q) {
        const Node row = ts[q];
        if (static_cast<int>(row.size()) != a.num_letters()) row.fail("one formula per letter");
        std::vector<Pbf> fs;
        for (int x = 0; x < a.num_letters(); ++x) fs.push_back(pbf(row[x]));
        a.delta.push_back(fs);
    }
    const auto errs = validate_apt(a);
    if (!errs.empty()) root.fail(errs.front());
    return a;
}

json write_apt(const Apt& a)
{
    json ss = json::array(), ts = json::array();
    for (int q = 0; q < a.num_states(); ++q) {
        ss.push_back({{"name", a.states[q]}, {"priority", a.priority[q]}});
        json row = json::array();
        for (const auto& f : a.delta[q]) row.push_back(pbf_to_string(f, a.states));
        ts.push_back(row);
    }
    return {{"format", format_of("apt")}, {"components", a.components}, {"dims", a.dims},
            {"directions", a.num_directions}, {"states", ss}, {"initial", pbf_to_string(a.initial, a.states)},
            {"transitions", ts}};
}

RegularTree read_tree(const Document& d, const Apt* against)
{
    const Node root = d.root();
    RegularTree t;
    const int nd = root["directions"].integer();
    t.initial = root["initial"].integer();
    const Node ns = root["nodes"];
    for (std::size_t k = 0; k < ns.size(); ++k) {
        t.label.push_back(ns[k]["label"].integer());
        const Node s = ns[k]["succ"];
        if (static_cast<int>(s.size()) != nd) s.fail("one successor per direction");
        std::vector<int> row;
        for (int x = 0; x < nd; ++x) row.push_back(s[x].integer());
        t.succ.push_back(row);
    }
    if (against && nd != against->num_directions)
        root["directions"].fail("the automaton reads " + std::to_string(against->num_directions) + " directions");
    const auto errs = validate_tree(t, nd, against ? against->num_letters() : 1 << 30);
    if (!errs.empty()) root.fail(errs.front());
    return t;
}

json write_tree(const RegularTree& t, int num_directions)
{
    json ns = json::array();
    for (int s = 0; s < t.num_states(); ++s) ns.push_back({{"label", t.label[s]}, {"succ", t.succ[s]}});
    return {{"format", format_of("tree")}, {"directions", num_directions}, {"initial", t.initial}, {"nodes", ns}};
}

} // namespace rsynth::io
