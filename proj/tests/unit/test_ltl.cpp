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
#include "rsynth/fixtures.hpp"
#include "rsynth/ltl.hpp"

using namespace rsynth;

namespace {

// Oracle: textbook recursive semantics on a lasso, scanning at most one full
// unrolling for U and R.
bool naive(const Ltl& f, const LassoWord& w, std::size_t i)
{
    const std::size_t n = w.size(), p = w.prefix.size();
    auto norm = [&](std::size_t k) { return k < n ? k : p + (k - p) % w.cycle.size(); };
    i = norm(i);
    switch (f->op) {
    case LtlOp::True: return true;
    case LtlOp::False: return false;
    case LtlOp::Atom: return (w.at(i) >> f->atom) & 1;
    case LtlOp::Not: return !naive(f->lhs, w, i);
    case LtlOp::And: return naive(f->lhs, w, i) && naive(f->rhs, w, i);
    case LtlOp::Or: return naive(f->lhs, w, i) || naive(f->rhs, w, i);
    case LtlOp::Next: return naive(f->lhs, w, i + 1);
    case LtlOp::Until:
        for (std::size_t j = i; j < i + n + 1; ++j) {
            if (naive(f->rhs, w, j)) return true;
            if (!naive(f->lhs, w, j)) return false;
        }
        return false;
    case LtlOp::Release:
        for (std::size_t j = i; j < i + n + 1; ++j) {
            if (!naive(f->rhs, w, j)) return false;
            if (naive(f->lhs, w, j)) return true;
        }
        return true;
    }
    return false;
}

const std::vector<std::string> U = {"a", "b", "c"};

LassoWord word(std::vector<Props> pre, std::vector<Props> cyc) { return {std::move(pre), std::move(cyc)}; }

} // namespace

TEST_CASE("parser precedence and sugar")
{
    CHECK(ltl_to_string(parse_ltl("a | b & c", U), U) == "(a | (b & c))");
    CHECK(ltl_to_string(parse_ltl("a U b U c", U), U) == "(a U (b U c))");
    CHECK(ltl_to_string(parse_ltl("GF a", U), U) == "G F a");
    CHECK(ltl_to_string(parse_ltl("G F (a & !b)", U), U) == "G F (a & !b)");
    CHECK(ltl_to_string(parse_ltl("!a U b", U), U) == "(!a U b)");
    CHECK(ltl_to_string(parse_ltl("X a & b", U), U) == "(X a & b)");
    CHECK(ltl_to_string(parse_ltl("a R b", U), U) == "(a R b)");
    CHECK(ltl_to_string(parse_ltl("true", U), U) == "true");
    CHECK(ltl_depth(parse_ltl("G F a", U)) == 2);
    CHECK(ltl_atom_bound(parse_ltl("F c", U)) == 3);
}

TEST_CASE("parser errors")
{
    CHECK_THROWS_AS(parse_ltl("F z", U), LtlError);
    CHECK_THROWS_AS(parse_ltl("(a", U), LtlError);
    CHECK_THROWS_AS(parse_ltl("a b", U), LtlError);
    CHECK_THROWS_AS(parse_ltl("U a", U), LtlError);
    CHECK_THROWS_AS(parse_ltl("a # b", U), LtlError);
    CHECK_THROWS_AS(parse_ltl("", U), LtlError);
}

TEST_CASE("a proposition named like an operator stack is an atom")
{
    std::vector<std::string> u = {"FG", "a"};
    Ltl f = parse_ltl("FG & a", u);
    CHECK(f->op == LtlOp::And);
    CHECK(f->lhs->op == LtlOp::Atom);
}

TEST_CASE("eval_lasso on fig1 outcomes")
{
    Arena a = fig1_arena();
    LassoWord dotted = word_of(a, outcome(a, fig1_dotted()));
    LassoWord dashed = word_of(a, outcome(a, fig1_dashed()));
    const auto& P = a.props;
    CHECK(eval_lasso(parse_ltl("GF a", P), dotted));
    CHECK_FALSE(eval_lasso(parse_ltl("GF c", P), dotted));
    CHECK(eval_lasso(parse_ltl("GF b", P), dotted));
    CHECK(nbw_accepts_lasso(ltl_to_nbw(parse_ltl("GF a", P)), dashed));
    CHECK_FALSE(nbw_accepts_lasso(ltl_to_nbw(parse_ltl("GF b", P)), dashed));
}

TEST_CASE("trivial evaluations")
{
    LassoWord w = word({0, 2}, {0});
    CHECK_FALSE(eval_lasso(parse_ltl("F a", U), w));
    CHECK(eval_lasso(parse_ltl("G true", U), w));
    CHECK(eval_lasso(parse_ltl("X b", U), w));
    CHECK(eval_lasso(parse_ltl("F G !b", U), w));
    CHECK_THROWS_AS(eval_lasso(ltl_true(), word({1}, {})), LtlError);
}

TEST_CASE("atom translates to two states and the empty language is empty")
{
    Nbw a = ltl_to_nbw(parse_ltl("a", U));
    CHECK(a.num_states == 2);
    Nbw empty = ltl_to_nbw(parse_ltl("false", U));
    CHECK_FALSE(nbw_accepts_lasso(empty, word({}, {1})));
    Nbw contra = ltl_to_nbw(parse_ltl("F (a & !a)", U));
    CHECK_FALSE(nbw_accepts_lasso(contra, word({1, 0}, {1, 3})));
}

TEST_CASE("GF and its negation against the direct evaluator")
{
    gen::Rng r(11);
    Ltl gf = parse_ltl("G F a", U);
    Ltl fg = parse_ltl("F G !a", U);
    Nbw agf = ltl_to_nbw(gf), afg = ltl_to_nbw(fg), aneg = ltl_to_nbw(ltl_not(gf));
    for (int k = 0; k < 50; ++k) {
        LassoWord w = gen::random_word(r, 8, 2);
        bool expect = eval_lasso(gf, w);
        CHECK(nbw_accepts_lasso(agf, w) == expect);
        CHECK(nbw_accepts_lasso(afg, w) == !expect);
        CHECK(nbw_accepts_lasso(aneg, w) == !expect);
        CHECK(eval_lasso(fg, w) == !expect);
    }
}

TEST_CASE("random formulas: evaluator, naive oracle and automaton agree")
{
    gen::Rng r(5);
    for (int k = 0; k < 300; ++k) {
        Ltl f = gen::random_ltl(r, 4, 3);
        Nbw a = ltl_to_nbw(f);
        Nbw na = ltl_to_nbw(ltl_not(f));
        for (int j = 0; j < 4; ++j) {
            LassoWord w = gen::random_word(r, 8, 3);
            bool e = eval_lasso(f, w);
            INFO(ltl_to_string(f, U));
            CHECK(e == naive(f, w, 0));
            CHECK(e == nbw_accepts_lasso(a, w));
            CHECK(!e == nbw_accepts_lasso(na, w));
            CHECK(!e == eval_lasso(ltl_not(f), w));
        }
    }
}

TEST_CASE("unrolling the cycle once does not change truth")
{
    gen::Rng r(9);
    for (int k = 0; k < 200; ++k) {
        Ltl f = gen::random_ltl(r, 3, 2);
        LassoWord w = gen::random_word(r, 6, 2);
        LassoWord u = w;
        u.prefix.insert(u.prefix.end(), w.cycle.begin(), w.cycle.end());
        CHECK(eval_lasso(f, w) == eval_lasso(f, u));
    }
}

TEST_CASE("post computes sorted successor sets")
{
    Nbw a = ltl_to_nbw(parse_ltl("a U b", U));
    auto s = a.post(a.initial, 2);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK_FALSE(s.empty());
    CHECK(a.post(a.initial, 4).empty());
}
