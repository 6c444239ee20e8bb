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

// Runs the rsynth binary and checks exit codes and reports.

#include "io.hpp"

#include "rsynth/fixtures.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using rsynth::io::json;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    Run r;
    const std::string cmd = std::string(RSYNTH_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json report(const std::string& args, int expected)
{
    const Run r = run(args + " --json");
    CHECK(r.code == expected);
    json j = json::parse(r.out);
    CHECK(j["exit"] == expected);
    j.erase("duration_ms");
    return j;
}

std::string scratch(const std::string& name, const std::string& content = {})
{
    std::filesystem::create_directories(RSYNTH_SCRATCH);
    const std::string path = std::string(RSYNTH_SCRATCH) + "/" + name;
    if (!content.empty()) std::ofstream(path) << content;
    return path;
}

const std::string fig1 = "--arena fixture:fig1 --objectives fixture:fig1-F";

} // namespace

TEST_CASE("the documented check examples")
{
    CHECK(run("check --concept spe " + fig1 + " --profile fixture:fig1-dotted").code == 0);
    CHECK(run("check --concept nash --arena fixture:p2p --profile fixture:titfortat").code == 0);

    const json j = report("check --concept spe " + fig1 + " --profile fixture:fig1-dashed", 1);
    const json& r = j["result"];
    CHECK(r["holds"] == false);
    CHECK(r["player"] == "Bob");
    CHECK(r["history"]["vertices"].back() == "n2");
    CHECK(r["deviation"]["prefix"][1]["tuple"][1] == "b1");
}

TEST_CASE("the witness history feeds back into outcome")
{
    const json j = report("check --concept spe " + fig1 + " --profile fixture:fig1-dashed", 1);
    const std::string h = scratch("witness.json", j["result"]["history"].dump());
    const json o = report("outcome " + fig1 + " --profile fixture:fig1-dashed --history " + h, 0);
    CHECK(o["result"]["outcome"]["prefix"][1]["vertex"] == "n2");
    CHECK(o["result"]["satisfied"]["Bob"] == false);
}

TEST_CASE("reports are deterministic")
{
    for (const std::string args : {"check --concept ds " + fig1 + " --profile fixture:fig1-dotted",
                                   std::string("synthesize --concept nash --arena fixture:p2p --memory 2")}) {
        const Run a = run(args + " --json"), b = run(args + " --json");
        json ja = json::parse(a.out), jb = json::parse(b.out);
        ja.erase("duration_ms");
        jb.erase("duration_ms");
        CHECK(ja == jb);
    }
}

TEST_CASE("input errors exit 2 with a location")
{
    Run r = run("check --arena fixture:nope --profile fixture:fig1-dotted --json");
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["error"]["message"].get<std::string>().find("fixture:nope") != std::string::npos);

    const std::string broken = scratch("broken.json", "{\"format\": \"rsynth.arena/1\",\n  \"vertices\": [");
    r = run("validate --arena " + broken + " --json");
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["error"]["message"].get<std::string>().find(":2:") != std::string::npos);

    const std::string bad = scratch("schema.json", R"({"format": "rsynth.arena/1", "vertices": [{"name": "v"}],
        "initial": "v", "players": [{"name": "p", "actions": ["x"]}],
        "transitions": [{"from": "v", "tuple": ["y"], "to": "v"}]})");
    r = run("validate --arena " + bad + " --json");
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["error"]["message"].get<std::string>().find("/transitions/0/tuple/0") != std::string::npos);

    const std::string wrong = scratch("wrongformat.json", R"({"format": "rsynth.profile/1", "strategies": []})");
    CHECK(run("validate --arena " + wrong).code == 2);
    CHECK(run("check --concept nope " + fig1 + " --profile fixture:fig1-dotted").code == 2);
    CHECK(run("check --bogus-flag").code == 2);
}

TEST_CASE("validate separates ill-formed from invalid")
{
    const std::string partial = scratch("partial.json", R"({"format": "rsynth.arena/1",
        "vertices": [{"name": "v"}, {"name": "w"}], "initial": "v",
        "players": [{"name": "p", "actions": ["x"]}],
        "transitions": [{"from": "v", "tuple": ["x"], "to": "w"}]})");
    const json j = report("validate --arena " + partial, 1);
    CHECK(j["result"]["valid"] == false);
    CHECK(run("validate --arena fixture:fig1 --profile fixture:fig1-dashed --objectives fixture:fig1-GF").code == 0);
}

TEST_CASE("every fixture round-trips through its reader")
{
    for (const std::string kind : {"arena", "profile", "objectives", "lattice", "latticed-game", "latticed-objectives"}) {
        const json list = report("fixture " + kind, 0);
        CHECK(!list["result"]["names"].empty());
        for (const auto& name : list["result"]["names"]) {
            const std::string spec = "fixture:" + name.get<std::string>();
            const rsynth::io::Document d = rsynth::io::load_document(spec, kind);
            CHECK(json::parse(d.value.dump()) == d.value);
            if (kind == "arena") CHECK(rsynth::io::write_arena(rsynth::io::read_arena(d)) == d.value);
            if (kind == "lattice") CHECK(rsynth::io::write_lattice(*rsynth::io::read_lattice(d.root())) == d.value);
            if (kind == "latticed-game")
                CHECK(rsynth::io::write_latticed_game(rsynth::io::read_latticed_game(d)) == d.value);
            // The printed document is accepted as a file.
            const Run shown = run("fixture " + kind + " " + name.get<std::string>());
            CHECK(json::parse(shown.out) == d.value);
        }
    }
    const rsynth::Arena a = rsynth::fig1_arena();
    for (const std::string p : {"fixture:fig1-dotted", "fixture:fig1-dashed"}) {
        const rsynth::io::Document d = rsynth::io::load_document(p, "profile");
        CHECK(rsynth::io::write_profile(a, rsynth::io::read_profile(d, a)) == d.value);
    }
    const rsynth::Arena p2p = rsynth::p2p_arena();
    const rsynth::io::Document tft = rsynth::io::load_document("fixture:titfortat", "profile");
    CHECK(rsynth::io::write_profile(p2p, rsynth::io::read_profile(tft, p2p)) == tft.value);
}

TEST_CASE("synthesized profiles are certified and check again")
{
    const std::string out = scratch("p2p_profile.json");
    std::filesystem::remove(out);
    const json j = report("synthesize --concept nash --arena fixture:p2p --memory 2 --output " + out, 0);
    CHECK(j["result"]["certification"]["solution_check_holds"] == true);
    CHECK(j["result"]["certification"]["outcome_satisfies_objective_0"] == true);
    CHECK(run("check --concept nash --arena fixture:p2p --profile " + out).code == 0);
    CHECK(run("synthesize --concept spe " + fig1 + " --memory 1").code == 0);
}

TEST_CASE("solution formulas and their evaluation")
{
    const json j = report("esl print --concept nash", 0);
    CHECK(j["result"]["formula"] == "exists y. (phi_0(y) & AND_{i in I-0} forall z_i. (phi_i(y_{-i}, z_i) -> phi_i(y)))");
    CHECK(j["result"]["alternation_depth"] == 1);
    CHECK(run("esl eval --concept nash " + fig1 + " --memory 1 --history-bound 2").code == 0);
    // The compiled SPE formula does not fit under a small ceiling.
    CHECK(run("esl eval --concept spe " + fig1 + " --engine tree --state-ceiling 300").code == 3);
}

TEST_CASE("tree automata commands compose")
{
    const std::string base = scratch("base.json"), tree = scratch("tree.json"), comp = scratch("comp.json");
    const std::string both = scratch("both.json");
    REQUIRE(run("apt base --arena fixture:fig1 --formula \"F b\" --output " + base).code == 0);
    // Dotted: Alice goes to n2 and Bob plays b1, so b is visited.
    REQUIRE(run("apt tree --arena fixture:fig1 --profile fixture:fig1-dotted --output " + tree).code == 0);
    REQUIRE(run("apt compose --op complement --apt " + base + " --output " + comp).code == 0);
    CHECK(run("apt run --apt " + base + " --tree " + tree).code == 0);
    CHECK(run("apt run --apt " + comp + " --tree " + tree).code == 1);
    REQUIRE(run("apt compose --op intersection --apt " + base + " --apt " + comp + " --output " + both).code == 0);
    CHECK(run("apt run --apt " + both + " --tree " + tree).code == 1);

    const std::string t = scratch("true.json", R"J({"format": "rsynth.apt/1", "components": ["x"], "dims": [2],
        "directions": 2, "states": [{"name": "q", "priority": 0}], "initial": "q",
        "transitions": [["(0,q) & (1,q)", "false"]]})J");
    const json e = report("apt empty --apt " + t, 1);
    CHECK(e["result"]["empty"] == false);
    const std::string w = scratch("witness_tree.json", e["result"]["witness"].dump());
    CHECK(run("apt run --apt " + t + " --tree " + w).code == 0);
    CHECK(run("apt compose --op project --component 0 --apt " + t).code == 0);
    CHECK(run("apt compose --op project --component 3 --apt " + t).code == 2);
}

TEST_CASE("lattice commands")
{
    CHECK(run("lattice validate --lattice fixture:powerset3").code == 0);
    // M3 is modular but not distributive.
    const std::string m3 = scratch("m3.json", R"({"format": "rsynth.lattice/1",
        "elements": ["bot", "x", "y", "z", "top"],
        "leq": [["bot", "x"], ["bot", "y"], ["bot", "z"], ["x", "top"], ["y", "top"], ["z", "top"]],
        "neg": {"bot": "top", "top": "bot", "x": "x", "y": "z", "z": "y"}})");
    const json v = report("lattice validate --lattice " + m3, 1);
    CHECK(!v["result"]["violations"].empty());

    const std::string g = "--game fixture:diamond-choice";
    CHECK(run("lattice ensure " + g + " --threshold a").code == 0);
    CHECK(run("lattice ensure " + g + " --threshold top").code == 1);
    CHECK(report("lattice achievable " + g, 0)["result"]["maximal"] == json::array({"a", "b"}));
    CHECK(report("lattice value " + g + " --play \"s (l s)\"", 0)["result"]["value"] == "top");
    CHECK(run("lattice value " + g + " --play \"s (l)\"").code == 2);

    const std::string lat = "--arena fixture:fig1 --objectives fixture:fig1-chain3";
    const json pay = report("lattice value " + lat + " --profile fixture:fig1-dotted", 0);
    CHECK(pay["result"]["payoffs"]["Charlie"] == "half");
    CHECK(run("lattice check-nash " + lat + " --profile fixture:fig1-dotted").code == 0);
    CHECK(run("lattice synthesize " + lat + " --threshold 1 --memory 1").code == 0);
}

TEST_CASE("randomized self test")
{
    const json j = report("selftest --seed 11 --count 60", 0);
    CHECK(j["result"]["failures"] == 0);
}
