#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "robusteq/rational.hpp"

namespace robusteq {

// Players are indexed by their position in ConcurrentGame::players; a set of
// players is a bitmask over those indices.
using PlayerSet = std::uint32_t;

constexpr int kMaxPlayers = 24;

inline bool contains(PlayerSet set, int player) { return (set >> player) & 1u; }
inline PlayerSet with_player(PlayerSet set, int player) { return set | (PlayerSet{1} << player); }
inline PlayerSet full_set(int count) { return (PlayerSet{1} << count) - 1; }
int set_size(PlayerSet set);
std::vector<int> players_of(PlayerSet set);
std::string format_player_set(PlayerSet set, const std::vector<std::string>& names);

// One action index per player, in player order.
using MoveVector = std::vector<int>;

// Sparse transition rule: moves[p] is an action index or kAnyAction. The
// first rule that matches a move vector decides the successor.
constexpr int kAnyAction = -1;

struct MoveRule {
    MoveVector moves;
    int to = 0;
};

struct ConcurrentGame {
    std::vector<std::string> players;
    std::vector<std::string> actions;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<std::vector<long long>> weights;  // [state][player]
    std::vector<std::vector<MoveRule>> rules;     // [state], first match wins

    // Filled by finalize(); the game is immutable afterwards.
    std::vector<std::vector<int>> table;  // [state][move code]
    std::vector<PlayerSet> supports;      // players whose action can affect the successor
    long long weight_bound = 0;
    long long move_total = 0;

    int player_count() const { return static_cast<int>(players.size()); }
    int action_count() const { return static_cast<int>(actions.size()); }
    int state_count() const { return static_cast<int>(states.size()); }

    // Validates shapes, expands rules into the dense table (rejecting games
    // whose table would not fit), and caches weight_bound and supports.
    void finalize();

    long long encode_move(std::span<const int> move) const;
    MoveVector decode_move(long long code) const;
    // Encodes an assignment of actions to a subset of players, all other
    // players playing action 0.
    long long encode_partial(std::span<const int> subset, std::span<const int> choice) const;

    int step(int state, long long code) const { return table[state][code]; }
    int step(int state, const MoveVector& move) const;
    long long weight(int state, int player) const { return weights[state][player]; }
};

// Advances a mixed-radix counter over action indices; returns false after the
// last assignment wraps back to all zeros.
bool next_assignment(std::vector<int>& assignment, int action_count);

struct LassoStep {
    int state = 0;
    MoveVector move;
    bool operator==(const LassoStep&) const = default;
};

// The infinite play prefix . cycle . cycle . ...; cycle is nonempty and the
// step after the last cycle element returns to the first.
struct LassoPlay {
    std::vector<LassoStep> prefix;
    std::vector<LassoStep> cycle;
};

// Throws StructureError naming the first inconsistent step.
void validate_lasso(const ConcurrentGame& game, const LassoPlay& lasso);

// Unique representative of the infinite play: primitive cycle, shortest prefix.
LassoPlay canonical_lasso(const LassoPlay& lasso);
bool same_play(const LassoPlay& a, const LassoPlay& b);

Rational lasso_payoff(const ConcurrentGame& game, const LassoPlay& lasso, int player);
std::vector<Rational> lasso_payoffs(const ConcurrentGame& game, const LassoPlay& lasso);

PlayerSet deviators_move(const MoveVector& played, const MoveVector& prescribed);

// Deterministic finite-memory strategy for the players in `owners`. Output
// rules are exact; update rules match in order, with kAnyAction wildcards in
// `observed` and state kAnyState matching every state.
constexpr int kAnyState = -1;

struct OutputRule {
    int memory = 0;
    int state = 0;
    std::vector<int> choice;  // actions for owners, ascending player index
};

struct UpdateRule {
    int memory = 0;
    int state = kAnyState;
    MoveVector observed;  // kAnyAction entries match anything
    int next_memory = 0;
};

struct StrategyMachine {
    std::vector<std::string> memory;
    int initial_memory = 0;
    PlayerSet owners = 0;
    std::vector<OutputRule> outputs;
    std::vector<UpdateRule> updates;

    int memory_count() const { return static_cast<int>(memory.size()); }
    const std::vector<int>& output(int mem, int state) const;
    int update(int mem, int state, const MoveVector& observed) const;
};

LassoPlay outcome(const ConcurrentGame& game, const StrategyMachine& profile);

// Runs the profile with the coalition's actions overridden by `deviation`
// (whose owners must equal `coalition`).
LassoPlay coalition_outcome(const ConcurrentGame& game, const StrategyMachine& profile,
                            const StrategyMachine& deviation, PlayerSet coalition);

PlayerSet deviators_of_lasso(const ConcurrentGame& game, const LassoPlay& lasso,
                             const StrategyMachine& profile);

// Step-counting machine replaying the lasso's moves for the given players.
// Meaningful when the coalition covers deviators_of_lasso(lasso, profile):
// composing it with that profile then reproduces the lasso exactly.
StrategyMachine lasso_replay_machine(const ConcurrentGame& game, const LassoPlay& lasso,
                                     PlayerSet coalition);

}  // namespace robusteq
