#pragma once

#include <map>
#include <vector>

#include "robusteq/meanpayoff.hpp"

namespace robusteq {

/// Target of an off-proposal answer: the state reached and the grown
/// deviator set.
struct CoalitionExit {
    int state = 0;
    PlayerSet devs = 0;
    auto operator<=>(const CoalitionExit&) const = default;
};

/// Every (state, set) pair reachable by a single answer in which some player
/// outside `devs` departs from the proposal, over all states and proposals.
/// Sorted and deduplicated. These are the solves a fixed deviator set
/// depends on.
std::vector<CoalitionExit> coalition_exits(const ConcurrentGame& game, PlayerSet devs);

/// Winning states of the proposal game against a given threshold, computed
/// one deviator set at a time. Exits to already-solved sets are folded in:
/// exits the proposer wins are dropped (the opponents gain nothing there),
/// and any losing exit becomes an edge to a sink below every bound. Each
/// set is then decided on an arena of game states plus that sink.
class CoalitionValue {
public:
    /// The bound needs one entry per weight dimension. Entries below the
    /// negated weight cap are raised to it; no play can fall under the cap,
    /// so the answers are unchanged.
    CoalitionValue(const ConcurrentGame& game, const MultiWeightSpec& spec,
                   std::vector<Rational> bound,
                   unsigned long long spoiler_budget = kDefaultSpoilerBudget);

    /// Per-state winning set when the deviators so far are exactly `devs`.
    /// Solves the sets it depends on first and caches every result. Throws
    /// BudgetError when some set needs more spoilers than the budget.
    const std::vector<bool>& winning(PlayerSet devs);

    /// Winning from the initial state with no deviators yet.
    bool initial();

private:
    const ConcurrentGame* game_;
    const MultiWeightSpec* spec_;
    std::vector<Rational> bound_;
    unsigned long long budget_;
    std::map<PlayerSet, std::vector<bool>> memo_;
};

}  // namespace robusteq
