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

#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"
#include "rsynth/equilibria.hpp"
#include "rsynth/fixtures.hpp"

using namespace rsynth;

namespace {

struct Fig1 {
    Arena a = fig1_arena();
    Objectives f = parse_objectives(a, fig1_objectives_f());
    Objectives gf = parse_objectives(a, fig1_objectives_gf());
    int alice = a.player_index("Alice"), bob = a.player_index("Bob"), charlie = a.player_index("Charlie");
};

bool dominant(const Fig1& x, const Objectives& o, const Profile& p, int who)
{
    return check_dominant(x.a, o, p, {who}).holds;
}

} // namespace

TEST_CASE("agent payoffs on fig1")
{
    Fig1 x;
    CHECK(agent_payoff(x.a, fig1_dotted(), x.gf[x.alice]));
    CHECK_FALSE(agent_payoff(x.a, fig1_dotted(), x.gf[x.charlie]));
    CHECK(agent_payoff(x.a, fig1_dotted(), Objective::from_ltl(ltl_true())));
}

TEST_CASE("best deviation primitive")
{
    Fig1 x;
    const History h0{{x.a.initial}, {}};
    CHECK_FALSE(best_deviation(x.a, fig1_dotted(), x.charlie, x.f[x.charlie], h0).has_value());
    CHECK(best_deviation(x.a, fig1_dotted(), x.charlie, Objective::from_ltl(ltl_true()), h0).has_value());

    Arena q = p2p_arena();
    Objectives po = parse_objectives(q, p2p_objectives());
    Profile tft = tit_for_tat_profile(q);
    CHECK(agent_payoff(q, tft, po[1]));
    CHECK(best_deviation(q, tft, 1, po[1], h0).has_value());
}

TEST_CASE("fig1 with eventually objectives")
{
    Fig1 x;
    CHECK(check_nash(x.a, x.f, fig1_dotted()).holds);
    CHECK(check_spe(x.a, x.f, fig1_dotted()).holds);
    CHECK(check_nash(x.a, x.f, fig1_dashed()).holds);

    Verdict v = check_spe(x.a, x.f, fig1_dashed());
    REQUIRE_FALSE(v.holds);
    CHECK(v.player == x.bob);
    CHECK(history_to_string(x.a, v.history) == "n0.n2");
    const Position& dev = v.deviation.at(v.history.vertices.size() - 1);
    CHECK(x.a.actions[x.bob][dev.tuple[x.bob]] == "b1");
    CHECK(oracle::deviation_replays(x.a, fig1_dashed(), v.player, x.f[v.player], v.history, v.deviation));
    CHECK_FALSE(x.f[v.player].holds(word_of(x.a, v.conforming)));

    for (const char* a1 : {"a1", "a2"})
        for (const char* c1 : {"c1", "c2"}) {
            CHECK(dominant(x, x.f, fig1_profile(a1, "b1", c1), x.bob));
            CHECK_FALSE(dominant(x, x.f, fig1_profile(a1, "b2", c1), x.bob));
            CHECK_FALSE(dominant(x, x.f, fig1_profile(a1, "b1", c1), x.alice));
            CHECK(dominant(x, x.f, fig1_profile(a1, "b1", c1), x.charlie));
        }
}

TEST_CASE("fig1 with infinitely-often objectives")
{
    Fig1 x;
    CHECK(check_nash(x.a, x.gf, fig1_dotted()).holds);
    CHECK(check_spe(x.a, x.gf, fig1_dotted()).holds);
    CHECK(check_nash(x.a, x.gf, fig1_dashed()).holds);
    CHECK(check_spe(x.a, x.gf, fig1_dashed()).holds);
    CHECK_FALSE(dominant(x, x.gf, fig1_dotted(), x.bob));
    CHECK_FALSE(dominant(x, x.gf, fig1_dotted(), x.charlie));
    CHECK_FALSE(dominant(x, x.gf, fig1_profile("a1", "b1", "c2"), x.charlie));
    CHECK_FALSE(dominant(x, x.gf, fig1_dotted(), x.alice));
    CHECK_FALSE(dominant(x, x.gf, fig1_dashed(), x.alice));
}

TEST_CASE("tit-for-tat")
{
    Arena q = p2p_arena();
    Objectives po = parse_objectives(q, p2p_objectives());
    Profile tft = tit_for_tat_profile(q);
    LassoWord w = word_of(q, outcome(q, tft));
    CHECK(po[0].holds(w));
    CHECK(po[1].holds(w));
    CHECK(check_nash(q, po, tft).holds);

    Verdict s = check_spe(q, po, tft);
    REQUIRE_FALSE(s.holds);
    CHECK(oracle::deviation_replays(q, tft, s.player, po[s.player], s.history, s.deviation));
}

TEST_CASE("trivial objectives always give equilibria")
{
    Fig1 x;
    Objectives t(3, Objective::from_ltl(ltl_true()));
    for (Concept c : {Concept::Nash, Concept::Spe, Concept::Dominant}) {
        CHECK(check(c, x.a, t, fig1_dashed()).holds);
        CHECK(check(c, x.a, t, fig1_dotted()).holds);
    }
}

TEST_CASE("input errors")
{
    Fig1 x;
    CHECK_THROWS_AS(check_nash(x.a, Objectives(2, x.f[0]), fig1_dotted()), ArenaError);
    CHECK_THROWS_AS(check_nash(x.a, x.f, fig1_dotted(), {5}), ArenaError);
    CHECK_THROWS_AS(parse_objectives(x.a, {"F a"}), LtlError);
}

TEST_CASE("random instances: exact checks agree with bounded brute force")
{
    gen::Rng r(23);
    int failing = 0;
    for (int n = 0; n < 60; ++n) {
        gen::GameInstance g = gen::random_game(r, 3, 3, 2, 2, 3);
        Objectives o;
        for (const auto& f : g.objectives) o.push_back(Objective::from_ltl(f));
        Verdict nash = check_nash(g.arena, o, g.profile);
        Verdict spe = check_spe(g.arena, o, g.profile);
        Verdict ds = check_dominant(g.arena, o, g.profile);
        CHECK(nash.holds == oracle::nash(g.arena, o, g.profile, 2));
        CHECK(spe.holds == oracle::spe(g.arena, o, g.profile, 2, 6));
        CHECK(ds.holds == oracle::dominant(g.arena, o, g.profile, 2));
        CHECK((!spe.holds || nash.holds));
        CHECK((!ds.holds || nash.holds));
        for (const Verdict* v : {&nash, &spe}) {
            if (v->holds) continue;
            ++failing;
            CHECK(oracle::deviation_replays(g.arena, g.profile, v->player, o[v->player], v->history, v->deviation));
            CHECK_FALSE(o[v->player].holds(word_of(g.arena, v->conforming)));
        }
        if (!ds.holds) {
            CHECK(o[ds.player].holds(word_of(g.arena, ds.deviation)));
            CHECK_FALSE(o[ds.player].holds(word_of(g.arena, ds.conforming)));
        }
    }
    CHECK(failing > 5);
}

TEST_CASE("a dominance counterexample that needs three opponent memory states")
{
    gen::Rng r(20260301);
    gen::GameInstance g;
    for (int n = 0; n <= 615; ++n) g = gen::random_game(r, 3, 3, 2, 2, 3);
    Objectives o;
    for (const auto& f : g.objectives) o.push_back(Objective::from_ltl(f));
    const Verdict v = check_dominant(g.arena, o, g.profile);
    REQUIRE_FALSE(v.holds);
    CHECK(o[v.player].holds(word_of(g.arena, v.deviation)));
    CHECK_FALSE(o[v.player].holds(word_of(g.arena, v.conforming)));
    // Bounded search sees the violation only from memory 3 on.
    CHECK(oracle::dominant(g.arena, o, g.profile, 2));
    CHECK_FALSE(oracle::dominant(g.arena, o, g.profile, 3));
}
