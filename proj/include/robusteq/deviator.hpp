#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "robusteq/game.hpp"
#include "robusteq/rational.hpp"

namespace robusteq {

// Game state annotated with the set of players seen deviating so far.
struct DeviatorState {
    int base = 0;
    PlayerSet devs = 0;
    auto operator<=>(const DeviatorState&) const = default;
};

// Two-sided view of a concurrent game: one side proposes a full move, the
// other answers with the move actually played, and the annotation grows by
// the players whose action was altered. Transitions are computed on demand;
// nothing is materialized up front.
class DeviatorGame {
public:
    explicit DeviatorGame(const ConcurrentGame& game) : game_(&game) {}

    const ConcurrentGame& base() const { return *game_; }
    DeviatorState initial() const { return {game_->initial, 0}; }
    DeviatorState step(const DeviatorState& from, const MoveVector& proposed,
                       const MoveVector& actual) const;

private:
    const ConcurrentGame* game_;
};

DeviatorGame build_deviator(const ConcurrentGame& game);

// One step of an annotated play: position, proposed move, played move.
struct DeviatorStep {
    DeviatorState state;
    MoveVector proposed;
    MoveVector actual;
    bool operator==(const DeviatorStep&) const = default;
};

struct DeviatorLasso {
    std::vector<DeviatorStep> prefix;
    std::vector<DeviatorStep> cycle;
};

// Throws StructureError naming the first inconsistent step.
void validate_deviator_lasso(const ConcurrentGame& game, const DeviatorLasso& lasso);

// Annotation shared by every cycle step. It can only grow along a play, so a
// consistent cycle carries a single value; a non-constant cycle means the
// lasso was corrupted and raises StructureError.
PlayerSet limit_deviators(const DeviatorLasso& lasso);

// Drop the annotations and proposals, keeping states and played moves.
LassoPlay project_lasso(const DeviatorLasso& lasso);

// All reachable annotated states in (state, annotation) order. Refuses to
// enumerate more than max_states of them; the default bound is
// |states| * 2^|players|, itself capped.
std::vector<DeviatorState> reachable_deviator_states(const DeviatorGame& dgame,
                                                     std::size_t max_states = 0);

// Explicit concurrent game over the reachable annotated states: each player
// is split into a proposing copy and a playing copy (primed name), and states
// are named "base@{A1,A3}". Subject to the same enumeration bound.
ConcurrentGame deviator_to_game(const DeviatorGame& dgame, std::size_t max_states = 0);

// Proposal-side strategy obtained from a full profile: outputs whatever the
// profile outputs on the projected history and advances the profile's memory
// on played moves.
class EveStrategyMachine {
public:
    explicit EveStrategyMachine(const StrategyMachine& profile) : profile_(&profile) {}

    int initial_memory() const { return profile_->initial_memory; }
    const std::vector<int>& output(int mem, const DeviatorState& at) const {
        return profile_->output(mem, at.base);
    }
    int update(int mem, const DeviatorState& at, const MoveVector& played) const {
        return profile_->update(mem, at.base, played);
    }

private:
    const StrategyMachine* profile_;
};

EveStrategyMachine lift_profile(const StrategyMachine& profile);

// Annotated lasso played when the proposal side follows the profile and the
// answering side applies the coalition's deviation on top of it.
DeviatorLasso deviator_outcome(const ConcurrentGame& game, const StrategyMachine& profile,
                               const StrategyMachine& deviation, PlayerSet coalition);

// Re-annotate a plain lasso against a profile, recovering proposals and
// deviator sets step by step.
DeviatorLasso annotate_lasso(const ConcurrentGame& game, const LassoPlay& lasso,
                             const StrategyMachine& profile);

// Rational interval with optional endpoints, each open or closed. An empty
// interval (e.g. lower > upper) is allowed and contains nothing.
struct Interval {
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    bool lower_open = false;
    bool upper_open = false;

    bool member(const Rational& x) const;
};

// True when the annotation escapes `within`, or the projected payoff of the
// player lands in the goal.
bool objective_omega(const ConcurrentGame& game, const DeviatorLasso& lasso, PlayerSet within,
                     int player, const Interval& goal);

// Deviation count above k wins outright; exactly k caps the deviators'
// payoffs at p; below k caps everyone's.
bool resilience_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int k,
                    const std::vector<Rational>& p);

// Deviation count above t wins outright; otherwise every non-deviator must
// keep at least p - r.
bool immunity_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int t,
                  const Rational& r, const std::vector<Rational>& p);

bool robustness_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int k, int t,
                    const Rational& r, const std::vector<Rational>& p);

}  // namespace robusteq
