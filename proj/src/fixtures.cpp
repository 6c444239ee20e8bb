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

#include "rsynth/fixtures.hpp"

namespace rsynth {

Arena fig1_arena()
{
    ArenaBuilder b;
    b.propositions({"a", "b", "c"})
        .vertex("n0")
        .vertex("n1")
        .vertex("n2")
        .vertex("gAC", {"a", "c"})
        .vertex("gC", {"c"})
        .vertex("gAB", {"a", "b"})
        .player("Alice", {"a1", "a2", "-"})
        .player("Bob", {"b1", "b2", "-"})
        .player("Charlie", {"c1", "c2", "-"})
        .default_action("Alice", "-")
        .default_action("Bob", "-")
        .default_action("Charlie", "-")
        .available("Alice", "n0", {"a1", "a2"})
        .available("Charlie", "n1", {"c1", "c2"})
        .available("Bob", "n2", {"b1", "b2"})
        .edge("n0", {"a1", "-", "-"}, "n1")
        .edge("n0", {"a2", "-", "-"}, "n2")
        .edge("n1", {"-", "-", "c1"}, "gAC")
        .edge("n1", {"-", "-", "c2"}, "gC")
        .edge("n2", {"-", "b1", "-"}, "gAB")
        .edge("n2", {"-", "b2", "-"}, "gC");
    for (const char* leaf : {"gAC", "gC", "gAB"}) b.edge(leaf, {"-", "-", "-"}, "n0");
    return b.build();
}

Profile fig1_profile(const std::string& alice, const std::string& bob, const std::string& charlie)
{
    const Arena a = fig1_arena();
    const std::string choice[3] = {alice, bob, charlie};
    const int home[3] = {a.vertex_index("n0"), a.vertex_index("n2"), a.vertex_index("n1")};
    Profile p;
    for (int i = 0; i < 3; ++i) {
        std::vector<int> out(a.num_vertices(), a.action_index(i, "-"));
        out[home[i]] = a.action_index(i, choice[i]);
        p.push_back(Strategy::memoryless(i, out));
    }
    return p;
}

Profile fig1_dotted() { return fig1_profile("a2", "b1", "c2"); }
Profile fig1_dashed() { return fig1_profile("a1", "b2", "c1"); }

std::vector<std::string> fig1_objectives_f() { return {"F a", "F b", "F c"}; }
std::vector<std::string> fig1_objectives_gf() { return {"G F a", "G F b", "G F c"}; }

Arena p2p_arena() { return arena_from_variables({{"u0", "d0"}, {"u1", "d1"}}, {"agent0", "agent1"}); }

std::vector<std::string> p2p_objectives() { return {"G F (d0 & u1)", "G F (d1 & u0)"}; }

Strategy tit_for_tat(const Arena& a, int i)
{
    const int other = 1 - i;
    const std::string me = std::to_string(i), them = std::to_string(other);
    const int up = a.action_index(i, "{u" + me + ",d" + me + "}");
    const int noup = a.action_index(i, "{d" + me + "}");
    const Props their_u = Props(1) << a.prop_index("u" + them);

    Strategy s;
    s.owner = i;
    s.input = InputKind::Actions;
    s.memory = 2;
    s.initial = 0;
    s.memory_names = {"up", "noup"};
    s.output = {{up}, {noup}};
    s.update.assign(2, std::vector<int>(a.num_joint_codes()));
    for (int c = 0; c < a.num_joint_codes(); ++c) {
        Tuple t = a.joint_decode(c);
        int next = (a.action_props[other][t[other]] & their_u) ? 0 : 1;
        s.update[0][c] = s.update[1][c] = next;
    }
    return s;
}

Profile tit_for_tat_profile(const Arena& a) { return {tit_for_tat(a, 0), tit_for_tat(a, 1)}; }

} // namespace rsynth
