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

#pragma once

#include "rsynth/arena.hpp"
#include "rsynth/strategy.hpp"

#include <string>
#include <vector>

namespace rsynth {

/**
 * Three-player example arena. Alice moves at n0, Charlie at n1, Bob at n2;
 * everyone else plays the dummy action "-". Players are ordered Alice, Bob,
 * Charlie and the leaves gAC, gC, gAB return to n0.
 */
Arena fig1_arena();
/** Memoryless profile on fig1 choosing the given actions for Alice, Bob and Charlie. */
Profile fig1_profile(const std::string& alice, const std::string& bob, const std::string& charlie);
Profile fig1_dotted();   // a2, b1, c2
Profile fig1_dashed();   // a1, b2, c1
/** "Eventually visit your letter" objectives F a, F b, F c. */
std::vector<std::string> fig1_objectives_f();
/** "Visit your letter infinitely often" objectives GF a, GF b, GF c. */
std::vector<std::string> fig1_objectives_gf();

/** Two agents; agent i owns the upload bit u_i and the download bit d_i. */
Arena p2p_arena();
/** GF(d0 & u1), GF(d1 & u0). */
std::vector<std::string> p2p_objectives();
/** Agent i uploads first and afterwards uploads iff the other agent uploaded in the previous step; d_i is always set. */
Strategy tit_for_tat(const Arena& p2p, int i);
Profile tit_for_tat_profile(const Arena& p2p);

} // namespace rsynth
