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

// Command-line front end. Exit codes: 0 holds / succeeded, 1 fails / no
// solution (the report carries the witness), 2 input error, 3 resource
// ceiling or internal error.

#include "io.hpp"

#include "rsynth/apt.hpp"
#include "rsynth/esl.hpp"
#include "rsynth/ltl.hpp"
#include "rsynth/synthesis.hpp"

#include "apt_gen.hpp"
#include "gen.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace rsynth;
using io::json;

enum Exit { Holds = 0, Fails = 1, BadInput = 2, Ceiling = 3 };

struct Options {
    std::string arena, profile, objectives, lattice, game, tree, history, output;
    std::vector<std::string> apts, deviators;
    std::string concept_name = "nash", op, formula, play, threshold, variant = "repaired", engine = "bounded";
    std::string kind, name;
    int memory = 1;
    int history_bound = 3;
    int state_ceiling = 20000;
    int component = -1;
    int players = 0;
    int count = 200;
    std::int64_t max_candidates = 2'000'000;
    std::uint64_t seed = 1;
    bool json = false;
};

struct Outcome {
    int code = Holds;
    json result = json::object();
    std::string text;
};

/** Loaded inputs, recorded with their digests for the report. */
class Inputs {
public:
    io::Document load(const std::string& flag, const std::string& spec, const std::string& kind)
    {
        if (spec.empty()) throw io::InputError("--" + flag + " is required");
        io::Document d = io::load_document(spec, kind);
        record_[flag] = {{"source", spec}, {"digest", io::digest(d.value)}};
        return d;
    }
    const json& recorded() const { return record_; }

private:
    json record_ = json::object();
};

Concept parse_concept(const std::string& s)
{
    if (s == "nash") return Concept::Nash;
    if (s == "spe") return Concept::Spe;
    if (s == "ds") return Concept::Dominant;
    throw io::InputError("--concept: expected nash, spe or ds");
}

Arena load_arena(Inputs& in, const Options& o)
{
    const io::Document d = in.load("arena", o.arena, "arena");
    Arena a = io::read_arena(d);
    const ArenaReport r = validate_arena(a);
    if (!r.ok()) throw io::InputError(o.arena + ": " + r.errors.front());
    return a;
}

Profile load_profile(Inputs& in, const Options& o, const Arena& a)
{
    Profile p = io::read_profile(in.load("profile", o.profile, "profile"), a);
    const ArenaReport r = validate_profile(a, p);
    if (!r.ok()) throw io::InputError(o.profile + ": " + r.errors.front());
    return p;
}

std::vector<std::string> load_formulas(Inputs& in, const Options& o, const Arena& a)
{
    std::string spec = o.objectives;
    if (spec.empty()) {
        auto def = io::default_objectives(o.arena);
        if (!def) throw io::InputError("--objectives is required for this arena");
        spec = *def;
    }
    return io::read_objectives(in.load("objectives", spec, "objectives"), a);
}

Deviators load_deviators(const Options& o, const Arena& a)
{
    Deviators out;
    for (const auto& n : o.deviators) {
        auto it = std::find(a.players.begin(), a.players.end(), n);
        if (it == a.players.end()) throw io::InputError("--deviators: unknown player '" + n + "'");
        out.push_back(static_cast<int>(it - a.players.begin()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Deviators agents(const Arena& a)
{
    Deviators out;
    for (int i = 1; i < a.num_players(); ++i) out.push_back(i);
    return out;
}

std::vector<Ltl> ltl_objectives(const Arena& a, const std::vector<std::string>& fs)
{
    std::vector<Ltl> out;
    for (const auto& f : fs) out.push_back(parse_ltl(f, a.props));
    return out;
}

void write_file(const std::string& path, const json& doc)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io::InputError(path + ": cannot write file");
    out << doc.dump(2) << "\n";
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ---- Boolean games ----

Outcome cmd_validate(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = io::read_arena(in.load("arena", o.arena, "arena"));
    json errors = json::array(), warnings = json::array();
    for (const auto& e : validate_arena(a).errors) errors.push_back("arena: " + e);
    if (errors.empty() && !o.profile.empty()) {
        const Profile p = io::read_profile(in.load("profile", o.profile, "profile"), a);
        for (const auto& e : validate_profile(a, p).errors) errors.push_back(e);
        // Unavailable outputs only matter once a play reaches them.
        if (errors.empty())
            for (const auto& e : validate_profile(a, p, true).errors) warnings.push_back(e);
    }
    if (errors.empty() && !o.objectives.empty())
        io::read_objectives(in.load("objectives", o.objectives, "objectives"), a);
    r.code = errors.empty() ? Holds : Fails;
    r.result = {{"valid", errors.empty()}, {"errors", errors}, {"warnings", warnings}};
    r.text = errors.empty() ? "valid\n" : "invalid\n";
    for (const auto& e : errors) r.text += "  error: " + e.get<std::string>() + "\n";
    for (const auto& w : warnings) r.text += "  warning: " + w.get<std::string>() + "\n";
    return r;
}

Outcome cmd_outcome(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = load_arena(in, o);
    const Profile p = load_profile(in, o, a);
    Lasso l;
    if (!o.history.empty()) {
        const History h = io::read_history(in.load("history", o.history, "history"), a);
        l = shifted_outcome(a, p, h);
        r.result["history"] = io::write_history(a, h);
    } else {
        l = outcome(a, p);
    }
    r.result["outcome"] = io::write_lasso(a, l);
    r.text = lasso_to_string(a, l) + "\n";
    if (!o.objectives.empty() || io::default_objectives(o.arena)) {
        const auto fs = load_formulas(in, o, a);
        const auto objs = ltl_objectives(a, fs);
        const LassoWord w = word_of(a, l);
        json sat = json::object();
        for (int i = 0; i < a.num_players(); ++i) {
            const bool ok = eval_lasso(objs[i], w);
            sat[a.players[i]] = ok;
            r.text += "  " + a.players[i] + " (" + fs[i] + "): " + (ok ? "satisfied" : "violated") + "\n";
        }
        r.result["satisfied"] = sat;
    }
    return r;
}

Outcome cmd_check(Inputs& in, const Options& o)
{
    Outcome r;
    const Concept c = parse_concept(o.concept_name);
    const Arena a = load_arena(in, o);
    const Profile p = load_profile(in, o, a);
    const Objectives objs = parse_objectives(a, load_formulas(in, o, a));
    const Verdict v = check(c, a, objs, p, load_deviators(o, a));
    r.code = v.holds ? Holds : Fails;
    r.result = io::write_verdict(a, v);
    r.result["concept"] = concept_name(c);
    r.text = concept_name(c) + ": " + verdict_to_string(a, v) + "\n";
    return r;
}

Outcome cmd_synthesize(Inputs& in, const Options& o)
{
    Outcome r;
    SynthesisInstance inst;
    inst.solution = parse_concept(o.concept_name);
    inst.arena = load_arena(in, o);
    inst.objectives = parse_objectives(inst.arena, load_formulas(in, o, inst.arena));
    inst.memory = o.memory;
    inst.max_candidates = o.max_candidates;
    if (inst.memory < 1) throw io::InputError("--memory must be at least 1");
    const SynthesisResult s = synthesize_bounded(inst);
    const Arena& a = inst.arena;
    r.result = {{"concept", concept_name(inst.solution)}, {"memory", o.memory}, {"exhaustive", s.exhaustive},
                {"candidates", s.candidates}, {"note", s.note}};
    if (!s.profile) {
        r.code = Fails;
        r.result["found"] = false;
        r.text = "no profile with memory <= " + std::to_string(o.memory) +
                 (s.exhaustive ? " (search exhaustive)\n" : " (search not exhaustive: " + s.note + ")\n");
        return r;
    }
    // Certify independently of the search before anything is emitted.
    const bool phi0 = agent_payoff(a, *s.profile, inst.objectives[0]);
    const Verdict v = check(inst.solution, a, inst.objectives, *s.profile, agents(a));
    if (!phi0 || !v.holds) throw std::logic_error("synthesized profile failed its certification");
    const json doc = io::write_profile(a, *s.profile);
    if (!o.output.empty()) write_file(o.output, doc);
    r.result["found"] = true;
    r.result["profile"] = doc;
    r.result["certification"] = {{"outcome_satisfies_objective_0", phi0}, {"solution_check_holds", v.holds}};
    r.text = "found a " + concept_name(inst.solution) + " profile (certified)\n" + lasso_to_string(a, outcome(a, *s.profile)) +
             "\n" + (o.output.empty() ? dump(doc) : "profile written to " + o.output + "\n");
    return r;
}

// ---- ESL ----

Outcome cmd_esl_print(Inputs&, const Options& o)
{
    Outcome r;
    const Concept c = parse_concept(o.concept_name);
    const Esl phi = build_solution_formula(c);
    r.result = {{"concept", concept_name(c)}, {"formula", esl_to_string(phi)},
                {"body", esl_to_string(solution_body(c))}, {"alternation_depth", esl_alternation_depth(phi)}};
    r.text = esl_to_string(phi) + "\nalternation depth: " + std::to_string(esl_alternation_depth(phi)) + "\n";
    if (o.players > 0) {
        const std::string e = esl_to_string(esl_expand(phi, o.players));
        r.result["expanded"] = e;
        r.result["players"] = o.players;
        r.text += "expanded for " + std::to_string(o.players) + " players: " + e + "\n";
    }
    return r;
}

Outcome cmd_esl_eval(Inputs& in, const Options& o)
{
    Outcome r;
    const Concept c = parse_concept(o.concept_name);
    const Arena a = load_arena(in, o);
    const auto objs = ltl_objectives(a, load_formulas(in, o, a));
    if (a.num_players() < 2) throw io::InputError(o.arena + ": the formula needs a system and at least one agent");
    const Esl phi = esl_expand(build_solution_formula(c), a.num_players());
    bool value = false;
    r.result = {{"concept", concept_name(c)}, {"formula", esl_to_string(phi)}, {"engine", o.engine}};
    if (o.engine == "bounded") {
        if (o.memory < 1 || o.history_bound < 1) throw io::InputError("--memory and --history-bound must be positive");
        const EslResult e = esl_eval_bounded(phi, a, objs, {}, {o.memory, o.history_bound});
        value = e.value;
        r.result["memory"] = e.bounds.memory;
        r.result["history_bound"] = e.bounds.history;
        r.result["exact"] = false;
    } else if (o.engine == "tree") {
        const AptLimits limits{o.state_ceiling};
        value = apt_emptiness(esl_to_apt(phi, a, objs, {}, limits), limits).has_value();
        r.result["state_ceiling"] = o.state_ceiling;
        r.result["exact"] = true;
    } else {
        throw io::InputError("--engine: expected bounded or tree");
    }
    r.code = value ? Holds : Fails;
    r.result["value"] = value;
    r.text = esl_to_string(phi) + "\n" + (value ? "true" : "false") +
             (o.engine == "bounded" ? " (memory <= " + std::to_string(o.memory) + ", histories <= " +
                                          std::to_string(o.history_bound) + " vertices)\n"
                                    : " (tree automaton)\n");
    return r;
}

// ---- tree automata ----

AptLimits limits_of(const Options& o)
{
    if (o.state_ceiling < 1) throw io::InputError("--state-ceiling must be positive");
    return AptLimits{o.state_ceiling};
}

Outcome cmd_apt_run(Inputs& in, const Options& o)
{
    Outcome r;
    if (o.apts.size() != 1) throw io::InputError("--apt: exactly one automaton expected");
    const Apt a = io::read_apt(in.load("apt", o.apts[0], "apt"));
    const RegularTree t = io::read_tree(in.load("tree", o.tree, "tree"), &a);
    const bool ok = apt_run_regular_tree(a, t);
    r.code = ok ? Holds : Fails;
    r.result = {{"accepted", ok}};
    r.text = ok ? "accepted\n" : "rejected\n";
    return r;
}

Outcome cmd_apt_empty(Inputs& in, const Options& o)
{
    Outcome r;
    if (o.apts.size() != 1) throw io::InputError("--apt: exactly one automaton expected");
    const Apt a = io::read_apt(in.load("apt", o.apts[0], "apt"));
    const auto w = apt_emptiness(a, limits_of(o));
    r.code = w ? Fails : Holds;
    r.result = {{"empty", !w.has_value()}};
    r.text = w ? "nonempty; witness tree:\n" : "empty\n";
    if (w) {
        r.result["witness"] = io::write_tree(*w, a.num_directions);
        r.text += dump(r.result["witness"]);
    }
    return r;
}

Outcome cmd_apt_compose(Inputs& in, const Options& o)
{
    Outcome r;
    static const std::map<std::string, std::pair<ComposeKind, std::size_t>> ops{
        {"union", {ComposeKind::Union, 2}},
        {"intersection", {ComposeKind::Intersection, 2}},
        {"complement", {ComposeKind::Complement, 1}},
        {"project", {ComposeKind::Project, 1}}};
    auto it = ops.find(o.op);
    if (it == ops.end()) throw io::InputError("--op: expected union, intersection, complement or project");
    if (o.apts.size() != it->second.second)
        throw io::InputError("--apt: " + o.op + " takes " + std::to_string(it->second.second) + " automata");
    std::vector<Apt> operands;
    for (std::size_t k = 0; k < o.apts.size(); ++k)
        operands.push_back(io::read_apt(in.load("apt" + std::to_string(k), o.apts[k], "apt")));
    if (it->second.first == ComposeKind::Project &&
        (o.component < 0 || o.component >= static_cast<int>(operands[0].dims.size())))
        throw io::InputError("--component: out of range for the automaton");
    try {
        const Apt c = apt_compose(it->second.first, operands, o.component, limits_of(o));
        const json doc = io::write_apt(c);
        if (!o.output.empty()) write_file(o.output, doc);
        r.result = {{"op", o.op}, {"states", c.num_states()}, {"apt", doc}};
        r.text = o.output.empty() ? dump(doc) : o.op + ": " + std::to_string(c.num_states()) + " states written to " + o.output + "\n";
    } catch (const AptCeilingError&) {
        throw;
    } catch (const AptError& e) {
        throw io::InputError(std::string("--apt: ") + e.what());
    }
    return r;
}

Outcome cmd_apt_base(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = load_arena(in, o);
    if (o.formula.empty()) throw io::InputError("--formula is required");
    Ltl psi;
    try {
        psi = parse_ltl(o.formula, a.props);
    } catch (const LtlError& e) {
        throw io::InputError(std::string("--formula: ") + e.what());
    }
    Apt t;
    if (o.variant == "repaired") t = apt_base(psi, a);
    else if (o.variant == "verbatim") t = apt_base_verbatim(psi, a);
    else if (o.variant == "root") t = apt_base_root(psi, a);
    else throw io::InputError("--variant: expected repaired, verbatim or root");
    const json doc = io::write_apt(t);
    if (!o.output.empty()) write_file(o.output, doc);
    r.result = {{"variant", o.variant}, {"states", t.num_states()}, {"apt", doc}};
    r.text = o.output.empty() ? dump(doc) : std::to_string(t.num_states()) + " states written to " + o.output + "\n";
    return r;
}

Outcome cmd_apt_tree(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = load_arena(in, o);
    const Profile p = load_profile(in, o, a);
    History h{{a.initial}, {}};
    if (!o.history.empty()) h = io::read_history(in.load("history", o.history, "history"), a);
    const RegularTree t = strategy_history_tree(a, p, h);
    const json doc = io::write_tree(t, a.num_joint_codes());
    if (!o.output.empty()) write_file(o.output, doc);
    r.result = {{"nodes", t.num_states()}, {"tree", doc}};
    r.text = o.output.empty() ? dump(doc) : std::to_string(t.num_states()) + " nodes written to " + o.output + "\n";
    return r;
}

// ---- lattices ----

Outcome cmd_lattice_validate(Inputs& in, const Options& o)
{
    Outcome r;
    const io::Document d = in.load("lattice", o.lattice, "lattice");
    const io::LatticeOrder ord = io::read_lattice_order(d.root());
    const LatticeReport rep = validate_lattice(Lattice::tables_from_order(ord.names, ord.leq, ord.neg));
    json malformed = rep.malformed, violations = json::array();
    for (const auto& v : rep.violations) violations.push_back({{"law", v.law}, {"witness", v.witness}});
    r.code = rep.ok() ? Holds : Fails;
    r.result = {{"valid", rep.ok()}, {"malformed", malformed}, {"violations", violations}};
    r.text = rep.ok() ? "valid distributive De Morgan lattice\n" : "invalid\n";
    for (const auto& m : rep.malformed) r.text += "  malformed: " + m + "\n";
    for (const auto& v : rep.violations) {
        r.text += "  violates " + v.law + ":";
        for (const auto& w : v.witness) r.text += " " + w;
        r.text += "\n";
    }
    return r;
}

LatticedGame load_game(Inputs& in, const Options& o)
{
    return io::read_latticed_game(in.load("game", o.game, "latticed-game"));
}

Elem threshold_of(const Options& o, const Lattice& l)
{
    if (o.threshold.empty()) throw io::InputError("--threshold is required");
    auto e = l.find(o.threshold);
    if (!e) throw io::InputError("--threshold: unknown lattice element '" + o.threshold + "'");
    return *e;
}

LatticedObjectives load_latticed(Inputs& in, const Options& o, const Arena& a)
{
    return io::read_latticed_objectives(in.load("objectives", o.objectives, "latticed-objectives"), a);
}

Outcome cmd_lattice_value(Inputs& in, const Options& o)
{
    Outcome r;
    if (!o.game.empty()) {
        const LatticedGame g = load_game(in, o);
        if (o.play.empty()) throw io::InputError("--play is required with --game");
        const VertexLasso l = io::parse_vertex_lasso(g, o.play);
        Elem v;
        try {
            v = play_value(g, l);
        } catch (const ArenaError& e) {
            throw io::InputError(std::string("--play: ") + e.what());
        }
        r.result = {{"play", o.play}, {"value", g.lattice->name(v)}};
        r.text = g.lattice->name(v) + "\n";
        return r;
    }
    const Arena a = load_arena(in, o);
    const Profile p = load_profile(in, o, a);
    const LatticedObjectives objs = load_latticed(in, o, a);
    const Lasso l = outcome(a, p);
    const LassoWord w = word_of(a, l);
    json payoffs = json::object();
    r.text = lasso_to_string(a, l) + "\n";
    for (int i = 0; i < a.num_players(); ++i) {
        const std::string v = objs[i].lattice->name(ldbw_payoff(objs[i], w));
        payoffs[a.players[i]] = v;
        r.text += "  " + a.players[i] + ": " + v + "\n";
    }
    r.result = {{"outcome", io::write_lasso(a, l)}, {"payoffs", payoffs}};
    return r;
}

Outcome cmd_lattice_ensure(Inputs& in, const Options& o)
{
    Outcome r;
    const LatticedGame g = load_game(in, o);
    const Elem l = threshold_of(o, *g.lattice);
    const EnsureResult e = can_ensure(g, l);
    r.code = e.ensured ? Holds : Fails;
    r.result = {{"threshold", g.lattice->name(l)}, {"ensured", e.ensured}};
    r.text = std::string(e.ensured ? "the or-player ensures " : "the or-player cannot ensure ") + g.lattice->name(l) + "\n";
    if (e.witness) {
        r.result["strategy"] = io::write_latticed_strategy(g, *e.witness);
        r.text += dump(r.result["strategy"]);
    }
    return r;
}

Outcome cmd_lattice_achievable(Inputs& in, const Options& o)
{
    Outcome r;
    const LatticedGame g = load_game(in, o);
    json vals = json::array();
    for (Elem e : achievable_values(g)) {
        vals.push_back(g.lattice->name(e));
        r.text += g.lattice->name(e) + "\n";
    }
    r.result = {{"maximal", vals}};
    return r;
}

Outcome cmd_lattice_check_nash(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = load_arena(in, o);
    const Profile p = load_profile(in, o, a);
    const LatticedObjectives objs = load_latticed(in, o, a);
    const Verdict v = check_latticed_nash(a, objs, p, load_deviators(o, a));
    r.code = v.holds ? Holds : Fails;
    r.result = io::write_verdict(a, v);
    r.text = "latticed nash: " + verdict_to_string(a, v) + "\n";
    return r;
}

Outcome cmd_lattice_synthesize(Inputs& in, const Options& o)
{
    Outcome r;
    const Arena a = load_arena(in, o);
    const LatticedObjectives objs = load_latticed(in, o, a);
    const Elem th = threshold_of(o, *objs[0].lattice);
    if (o.memory < 1) throw io::InputError("--memory must be at least 1");
    const LatticedSynthesisResult s = latticed_synthesize_bounded(a, objs, th, o.memory, o.max_candidates);
    r.result = {{"threshold", o.threshold}, {"memory", o.memory}, {"exhaustive", s.exhaustive},
                {"candidates", s.candidates}, {"note", s.note}};
    if (!s.profile) {
        r.code = Fails;
        r.result["found"] = false;
        r.text = "no profile with memory <= " + std::to_string(o.memory) +
                 (s.exhaustive ? " (search exhaustive)\n" : " (search not exhaustive: " + s.note + ")\n");
        return r;
    }
    const Elem pay = ldbw_payoff(objs[0], word_of(a, outcome(a, *s.profile)));
    const bool reached = objs[0].lattice->leq(th, pay);
    const Verdict v = check_latticed_nash(a, objs, *s.profile, agents(a));
    if (!reached || !v.holds) throw std::logic_error("synthesized profile failed its certification");
    const json doc = io::write_profile(a, *s.profile);
    if (!o.output.empty()) write_file(o.output, doc);
    r.result["found"] = true;
    r.result["profile"] = doc;
    r.result["certification"] = {{"payoff_0", objs[0].lattice->name(pay)}, {"latticed_nash_holds", v.holds}};
    r.text = "found a latticed nash profile with payoff " + objs[0].lattice->name(pay) + " (certified)\n" +
             (o.output.empty() ? dump(doc) : "profile written to " + o.output + "\n");
    return r;
}

// ---- fixtures and the randomized driver ----

Outcome cmd_fixture(Inputs& in, const Options& o)
{
    Outcome r;
    static const std::vector<std::string> kinds{"arena", "profile", "objectives", "lattice", "latticed-game",
                                                "latticed-objectives"};
    if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end())
        throw io::InputError("fixture: unknown kind '" + o.kind + "'");
    if (o.name.empty()) {
        r.result = {{"kind", o.kind}, {"names", io::fixture_names(o.kind)}};
        for (const auto& n : io::fixture_names(o.kind)) r.text += n + "\n";
        return r;
    }
    const io::Document d = in.load("fixture", "fixture:" + o.name, o.kind);
    r.result = {{"kind", o.kind}, {"document", d.value}};
    r.text = dump(d.value);
    return r;
}

/** Random round-trip and dual-path properties; the first counterexample is reported. */
Outcome cmd_selftest(Inputs&, const Options& o)
{
    Outcome r;
    gen::Rng rng(o.seed);
    int failures = 0;
    json first = nullptr;
    auto fail = [&](const std::string& what, int k) {
        if (!failures++) first = {{"property", what}, {"instance", k}};
    };
    for (int k = 0; k < o.count; ++k) {
        const Ltl f = gen::random_ltl(rng, 3, 2);
        const LassoWord w = gen::random_word(rng, 4, 2);
        if (eval_lasso(f, w) != nbw_accepts_lasso(ltl_to_nbw(f), w)) fail("ltl dual path", k);

        const Arena a = gen::random_arena(rng, gen::uniform(rng, 1, 3), gen::uniform(rng, 1, 3), 2, 2);
        const Profile p = gen::random_profile(rng, a, 2);
        const json ad = io::write_arena(a), pd = io::write_profile(a, p);
        const Arena a2 = io::read_arena({ad, "generated"});
        if (io::write_arena(a2) != ad || io::write_profile(a2, io::read_profile({pd, "generated"}, a2)) != pd)
            fail("json round trip", k);

        const Apt t = gen::random_apt(rng, {2}, 2, gen::uniform(rng, 1, 3), 3);
        const RegularTree tree = gen::random_tree(rng, gen::uniform(rng, 1, 3), 2, 2);
        if (apt_run_regular_tree(t, tree) == apt_run_regular_tree(apt_complement(t), tree)) fail("apt duality", k);
        if (io::write_apt(io::read_apt({io::write_apt(t), "generated"})) != io::write_apt(t)) fail("json round trip", k);
    }
    r.code = failures ? Fails : Holds;
    r.result = {{"seed", o.seed}, {"count", o.count}, {"failures", failures}, {"first_failure", first}};
    r.text = std::to_string(o.count) + " instances, " + std::to_string(failures) + " failures (seed " +
             std::to_string(o.seed) + ")\n";
    return r;
}

using Command = std::function<Outcome(Inputs&, const Options&)>;

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Rational synthesis toolkit: equilibria, strategy logic, tree automata and latticed games"};
    app.require_subcommand(1);
    Command chosen;
    std::string path;

    auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help, Command cmd,
                   const std::string& full) {
        CLI::App* s = parent->add_subcommand(name, help);
        s->add_flag("--json", o.json, "Machine-readable report on stdout");
        s->callback([&, cmd, full] {
            chosen = cmd;
            path = full;
        });
        return s;
    };
    auto flag_arena = [&](CLI::App* s) { s->add_option("--arena", o.arena, "Arena document or fixture:<name>"); };
    auto flag_profile = [&](CLI::App* s) { s->add_option("--profile", o.profile, "Profile document or fixture:<name>"); };
    auto flag_objectives = [&](CLI::App* s) {
        s->add_option("--objectives", o.objectives, "Objectives document or fixture:<name>");
    };
    auto flag_concept = [&](CLI::App* s) { s->add_option("--concept", o.concept_name, "nash, spe or ds")->capture_default_str(); };
    auto flag_deviators = [&](CLI::App* s) {
        s->add_option("--deviators", o.deviators, "Players to test (default: all)")->delimiter(',');
    };

    auto* v = sub(&app, "validate", "Check an arena and optionally a profile and objectives", cmd_validate, "validate");
    flag_arena(v);
    flag_profile(v);
    flag_objectives(v);

    auto* out = sub(&app, "outcome", "Play a profile, optionally after a history", cmd_outcome, "outcome");
    flag_arena(out);
    flag_profile(out);
    flag_objectives(out);
    out->add_option("--history", o.history, "History document");

    auto* chk = sub(&app, "check", "Decide whether a profile is a solution", cmd_check, "check");
    flag_concept(chk);
    flag_arena(chk);
    flag_profile(chk);
    flag_objectives(chk);
    flag_deviators(chk);

    auto* syn = sub(&app, "synthesize", "Search profiles of bounded memory for a solution", cmd_synthesize, "synthesize");
    flag_concept(syn);
    flag_arena(syn);
    flag_objectives(syn);
    syn->add_option("--memory", o.memory, "Memory bound per player")->capture_default_str();
    syn->add_option("--max-candidates", o.max_candidates, "Enumeration budget")->capture_default_str();
    syn->add_option("--output", o.output, "Write the profile document here");

    auto* esl = app.add_subcommand("esl", "Strategy-logic solution formulas");
    esl->require_subcommand(1);
    auto* ep = sub(esl, "print", "Print the solution formula of a concept", cmd_esl_print, "esl print");
    flag_concept(ep);
    ep->add_option("--players", o.players, "Also print the expansion for this many players");
    auto* ee = sub(esl, "eval", "Evaluate the rational-synthesis formula of a concept", cmd_esl_eval, "esl eval");
    flag_concept(ee);
    flag_arena(ee);
    flag_objectives(ee);
    ee->add_option("--engine", o.engine, "bounded or tree")->capture_default_str();
    ee->add_option("--memory", o.memory, "Strategy memory bound (bounded engine)")->capture_default_str();
    ee->add_option("--history-bound", o.history_bound, "History length bound in vertices (bounded engine)")->capture_default_str();
    ee->add_option("--state-ceiling", o.state_ceiling, "Automaton size ceiling (tree engine)")->capture_default_str();

    auto* apt = app.add_subcommand("apt", "Alternating parity tree automata");
    apt->require_subcommand(1);
    auto* ar = sub(apt, "run", "Membership of a regular tree", cmd_apt_run, "apt run");
    ar->add_option("--apt", o.apts, "Automaton document");
    ar->add_option("--tree", o.tree, "Tree document");
    auto* ae = sub(apt, "empty", "Emptiness, with a witness tree when nonempty", cmd_apt_empty, "apt empty");
    ae->add_option("--apt", o.apts, "Automaton document");
    ae->add_option("--state-ceiling", o.state_ceiling, "Automaton size ceiling")->capture_default_str();
    auto* ac = sub(apt, "compose", "Union, intersection, complement or projection", cmd_apt_compose, "apt compose");
    ac->add_option("--op", o.op, "union, intersection, complement or project")->required();
    ac->add_option("--apt", o.apts, "Operand documents (repeat for two)");
    ac->add_option("--component", o.component, "Label component to project away");
    ac->add_option("--state-ceiling", o.state_ceiling, "Automaton size ceiling")->capture_default_str();
    ac->add_option("--output", o.output, "Write the automaton here");
    auto* ab = sub(apt, "base", "Automaton for an LTL formula over strategy-history trees", cmd_apt_base, "apt base");
    flag_arena(ab);
    ab->add_option("--formula", o.formula, "LTL formula over the arena's propositions");
    ab->add_option("--variant", o.variant, "repaired, verbatim or root")->capture_default_str();
    ab->add_option("--output", o.output, "Write the automaton here");
    auto* at = sub(apt, "tree", "Strategy-history tree of a profile", cmd_apt_tree, "apt tree");
    flag_arena(at);
    flag_profile(at);
    at->add_option("--history", o.history, "History document marking the tree");
    at->add_option("--output", o.output, "Write the tree here");

    auto* lat = app.add_subcommand("lattice", "Lattice-valued games and objectives");
    lat->require_subcommand(1);
    auto* lv = sub(lat, "validate", "Check the lattice laws", cmd_lattice_validate, "lattice validate");
    lv->add_option("--lattice", o.lattice, "Lattice document or fixture:<name>");
    auto* lval = sub(lat, "value", "Value of a play or the payoffs of a profile", cmd_lattice_value, "lattice value");
    lval->add_option("--game", o.game, "Latticed game document");
    lval->add_option("--play", o.play, "Play as \"u v (w x)\"");
    flag_arena(lval);
    flag_profile(lval);
    flag_objectives(lval);
    auto* len = sub(lat, "ensure", "Can the or-player ensure the threshold", cmd_lattice_ensure, "lattice ensure");
    len->add_option("--game", o.game, "Latticed game document");
    len->add_option("--threshold", o.threshold, "Lattice element");
    auto* lach = sub(lat, "achievable", "Maximal values ensurable by one strategy", cmd_lattice_achievable,
                     "lattice achievable");
    lach->add_option("--game", o.game, "Latticed game document");
    auto* lcn = sub(lat, "check-nash", "Latticed Nash check of a profile", cmd_lattice_check_nash, "lattice check-nash");
    flag_arena(lcn);
    flag_profile(lcn);
    flag_objectives(lcn);
    flag_deviators(lcn);
    auto* lsy = sub(lat, "synthesize", "Bounded latticed rational synthesis", cmd_lattice_synthesize,
                    "lattice synthesize");
    flag_arena(lsy);
    flag_objectives(lsy);
    lsy->add_option("--threshold", o.threshold, "Lower bound on the system's payoff");
    lsy->add_option("--memory", o.memory, "Memory bound per player")->capture_default_str();
    lsy->add_option("--max-candidates", o.max_candidates, "Enumeration budget")->capture_default_str();
    lsy->add_option("--output", o.output, "Write the profile document here");

    auto* fx = sub(&app, "fixture", "List or print compiled-in fixtures", cmd_fixture, "fixture");
    fx->add_option("kind", o.kind, "arena, profile, objectives, lattice, latticed-game or latticed-objectives")->required();
    fx->add_option("name", o.name, "Fixture name (omit to list)");

    auto* st = sub(&app, "selftest", "Randomized property checks", cmd_selftest, "selftest");
    st->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    st->add_option("--count", o.count, "Number of instances")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }

    json args = json::array();
    for (int k = 1; k < argc; ++k) args.push_back(argv[k]);
    Inputs inputs;
    Outcome res;
    std::string error_kind;
    const auto start = std::chrono::steady_clock::now();
    try {
        res = chosen(inputs, o);
    } catch (const io::InputError& e) {
        res = {BadInput, {{"message", e.what()}}, std::string("error: ") + e.what() + "\n"};
        error_kind = "input";
    } catch (const StrategyError& e) {
        res = {BadInput, {{"message", e.what()}}, std::string("error: ") + e.what() + "\n"};
        error_kind = "strategy";
    } catch (const AptCeilingError& e) {
        res = {Ceiling, {{"message", e.what()}}, std::string("ceiling exceeded: ") + e.what() + "\n"};
        error_kind = "ceiling";
    } catch (const EslError& e) {
        // Built-in formulas are well formed; what remains is the enumeration cap.
        res = {Ceiling, {{"message", e.what()}}, std::string("limit exceeded: ") + e.what() + "\n"};
        error_kind = "ceiling";
    } catch (const EslError& e) {
        // Built-in formulas are well formed; what remains is the enumeration cap.
        res = {Ceiling, {{"message", e.what()}}, std::string("limit exceeded: ") + e.what() + "\n"};
        error_kind = "ceiling";
    } catch (const LtlError& e) {
        res = {BadInput, {{"message", e.what()}}, std::string("error: ") + e.what() + "\n"};
        error_kind = "input";
    } catch (const ArenaError& e) {
        res = {BadInput, {{"message", e.what()}}, std::string("error: ") + e.what() + "\n"};
        error_kind = "input";
    } catch (const LatticeError& e) {
        res = {BadInput, {{"message", e.what()}}, std::string("error: ") + e.what() + "\n"};
        error_kind = "input";
    } catch (const std::exception& e) {
        res = {Ceiling, {{"message", e.what()}}, std::string("internal error: ") + e.what() + "\n"};
        error_kind = "internal";
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::string text;
    if (o.json) {
        json report{{"format", "rsynth.report/1"}, {"command", path},     {"arguments", args},
                    {"inputs", inputs.recorded()}, {"exit", res.code},    {"duration_ms", std::round(ms * 1000) / 1000}};
        if (error_kind.empty()) report["result"] = res.result;
        else report["error"] = {{"kind", error_kind}, {"message", res.result["message"]}};
        text = report.dump(2) + "\n";
    } else {
        text = res.text;
    }
    // One write per invocation.
    std::ostream& os = (!o.json && !error_kind.empty()) ? std::cerr : std::cout;
    os << text << std::flush;
    return res.code;
}
