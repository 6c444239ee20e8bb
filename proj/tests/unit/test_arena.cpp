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
#include "rsynth/arena.hpp"
#include "rsynth/fixtures.hpp"

using namespace rsynth;

TEST_CASE("fig1 fixture is valid")
{
    Arena a = fig1_arena();
    CHECK(validate_arena(a).ok());
    CHECK(a.num_vertices() == 6);
    CHECK(a.props_to_string(a.labels[a.vertex_index("gAB")]) == "{a,b}");
}

TEST_CASE("fig1 successors")
{
    Arena a = fig1_arena();
    auto t = [&](const char* x, const char* y, const char* z) {
        return Tuple{a.action_index(0, x), a.action_index(1, y), a.action_index(2, z)};
    };
    CHECK(a.vertices[successor(a, a.vertex_index("n0"), t("a2", "-", "-"))] == "n2");
    CHECK(a.vertices[successor(a, a.vertex_index("n2"), t("-", "b1", "-"))] == "gAB");
    try {
        successor(a, a.vertex_index("n2"), t("a1", "b1", "-"));
        FAIL("expected an illegal action");
    } catch (const IllegalActionError& e) {
        CHECK(e.player == 0);
    }
    CHECK_THROWS_AS(successor(a, a.vertex_index("n1"), t("-", "-", "-")), IllegalActionError);
}

TEST_CASE("self-loop arena")
{
    Arena a = ArenaBuilder().vertex("v").player("P", {"x", "y"}).edge("v", {"x"}, "v").edge("v", {"y"}, "v").build();
    CHECK(validate_arena(a).ok());
    CHECK(successor(a, 0, {1}) == 0);
}

TEST_CASE("missing transition is reported with its tuple")
{
    Arena a = ArenaBuilder().vertex("v").player("P", {"x", "y"}).edge("v", {"x"}, "v").build();
    auto r = validate_arena(a);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0] == "missing transition at v for <y>");
}

TEST_CASE("builder rejects unknown names")
{
    CHECK_THROWS_AS(ArenaBuilder().vertex("v").player("P", {"x"}).edge("v", {"z"}, "v").build(), ArenaError);
    CHECK_THROWS_AS(ArenaBuilder().vertex("v", {"q"}).build(), ArenaError);
    CHECK_THROWS_AS(ArenaBuilder().vertex("v").vertex("v").build(), ArenaError);
}

TEST_CASE("tuple codes round-trip")
{
    Arena a = fig1_arena();
    for (int v = 0; v < a.num_vertices(); ++v)
        for (int c = 0; c < a.num_tuples(v); ++c) CHECK(a.encode(v, a.decode(v, c)) == c);
    for (int c = 0; c < a.num_joint_codes(); ++c) CHECK(a.joint_code(a.joint_decode(c)) == c);
}

TEST_CASE("variable partition arenas")
{
    Arena a = p2p_arena();
    CHECK(validate_arena(a).ok());
    CHECK(a.num_vertices() == 1);
    CHECK(a.actions[0].size() == 4);
    CHECK(a.actions[1].size() == 4);
    CHECK(a.actions[0][3] == "{u0,d0}");

    Arena e = arena_from_variables({{"x"}, {}});
    CHECK(e.actions[1].size() == 1);
    CHECK(e.actions[1][0] == "{}");

    Arena three = arena_from_variables({{"x"}, {"y"}, {"z"}});
    CHECK(three.num_tuples(0) == 8);

    CHECK_THROWS_AS(arena_from_variables({{"x"}, {"x"}}), ArenaError);
}

TEST_CASE("variable arena letters are the joint assignment")
{
    Arena a = arena_from_variables({{"x", "y"}, {"z"}});
    for (int c = 0; c < a.num_tuples(0); ++c) {
        Tuple t = a.decode(0, c);
        Props p = a.letter(0, t);
        std::string expect = "{";
        for (const char* n : {"x", "y", "z"})
            if (p >> a.prop_index(n) & 1) expect += std::string(expect.size() > 1 ? "," : "") + n;
        CHECK(a.props_to_string(p) == expect + "}");
        CHECK(static_cast<int>((p & 3)) == t[0]);
        CHECK(static_cast<int>(p >> 2) == t[1]);
    }
}
