#pragma once

#include "robusteq/game.hpp"

namespace robusteq::testing {

// Two states, two players, actions {x, y}. From s0, the move (x,x) stays,
// anything else goes to s1; s1 is an all-move sink. Weights: player 0 gets 1
// on s0, player 1 gets 1 on s1.
inline ConcurrentGame two_state_game() {
    ConcurrentGame g;
    g.players = {"A1", "A2"};
    g.actions = {"x", "y"};
    g.states = {"s0", "s1"};
    g.initial = 0;
    g.weights = {{1, 0}, {0, 1}};
    g.rules.resize(2);
    g.rules[0].push_back({{0, 0}, 0});
    g.rules[0].push_back({{kAnyAction, kAnyAction}, 1});
    g.rules[1].push_back({{kAnyAction, kAnyAction}, 1});
    g.finalize();
    return g;
}

inline StrategyMachine constant_profile(const ConcurrentGame& g, const MoveVector& move) {
    StrategyMachine m;
    m.memory = {"m0"};
    m.initial_memory = 0;
    m.owners = full_set(g.player_count());
    for (int s = 0; s < g.state_count(); ++s) m.outputs.push_back({0, s, move});
    m.updates.push_back({0, kAnyState, MoveVector(g.player_count(), kAnyAction), 0});
    return m;
}

// Fragment of a file server interacting with two clients. Each client waits
// (w) or tries to connect (ch/ct, a matching-pennies split used to break
// simultaneous connections). States are named by the connection table plus
// which client is currently being served; the half of the full model where
// client 2 connects first is folded into catch-all rules back to idle.
inline ConcurrentGame server_fragment() {
    ConcurrentGame g;
    g.players = {"A1", "A2"};
    g.actions = {"w", "ch", "ct"};
    g.states = {"idle",     "serve1",   "serve1q2", "first2",   "race21",
                "handoff2", "serve2",   "serve2q1", "serve2q2", "serve1b"};
    // idle     = [0,0]                 handoff2 = [0,2] before serving 2
    // serve1   = [1,0] send(1)         serve2   = [0,2] send(2)
    // serve1q2 = [1,2] send(1)         serve2q1 = [1,2] send(2)
    // first2   = [2,0] send(2)         serve2q2 = [2,2] send(2)
    // race21   = [2,1] send(2)         serve1b  = [2,1] send(1)
    // first2/race21 start the symmetric half where client 2 is served first;
    // that half is folded into catch-all rules back to idle.
    g.initial = 0;
    int const w = 0, ch = 1, ct = 2;
    g.weights.assign(10, {0, 0});
    g.weights[1] = {1, 0};
    g.weights[2] = {1, 0};
    g.weights[3] = {0, 1};
    g.weights[4] = {0, 1};
    g.weights[6] = {0, 1};
    g.weights[7] = {0, 1};
    g.weights[8] = {0, 1};
    g.weights[9] = {1, 0};
    g.rules.resize(10);
    auto any = [&] { return MoveVector{kAnyAction, kAnyAction}; };
    // idle: who connects first (simultaneous attempts race on ch/ct)
    g.rules[0].push_back({{w, w}, 0});
    g.rules[0].push_back({{ch, w}, 1});
    g.rules[0].push_back({{ct, w}, 1});
    g.rules[0].push_back({{ch, ct}, 2});
    g.rules[0].push_back({{ct, ch}, 2});
    g.rules[0].push_back({{w, ct}, 3});
    g.rules[0].push_back({{w, ch}, 3});
    g.rules[0].push_back({{ch, ch}, 4});
    g.rules[0].push_back({{ct, ct}, 4});
    // serve1: client 2 may queue up, otherwise service ends back to idle
    g.rules[1].push_back({{kAnyAction, ch}, 5});
    g.rules[1].push_back({{kAnyAction, ct}, 5});
    g.rules[1].push_back({{kAnyAction, w}, 0});
    // serve1q2: client 1 finishes, client 2 is next
    g.rules[2].push_back({any(), 5});
    // handoff2: connection race for the slot after client 2
    g.rules[5].push_back({{w, w}, 6});
    g.rules[5].push_back({{ch, w}, 7});
    g.rules[5].push_back({{ct, w}, 7});
    g.rules[5].push_back({{ch, ct}, 7});
    g.rules[5].push_back({{ct, ch}, 7});
    g.rules[5].push_back({{w, ct}, 8});
    g.rules[5].push_back({{w, ch}, 8});
    g.rules[5].push_back({{ch, ch}, 9});
    g.rules[5].push_back({{ct, ct}, 9});
    // completions
    g.rules[6].push_back({any(), 0});  // serve2 done
    g.rules[7].push_back({any(), 1});  // serve2q1: client 1 is next
    g.rules[8].push_back({any(), 3});  // serve2q2: client 2 again
    g.rules[9].push_back({any(), 3});  // serve1b: client 2 again
    // omitted symmetric half
    g.rules[3].push_back({any(), 0});
    g.rules[4].push_back({any(), 0});
    g.finalize();
    return g;
}

}  // namespace robusteq::testing
