#pragma once

#include <utility>
#include <vector>

#include "robusteq/digraph.hpp"
#include "robusteq/solver.hpp"

namespace robusteq {

/// Joint behavior graph of the game and a full profile when the coalition
/// plays freely and everyone else follows the profile. One weight dimension
/// per player, so cycle means are the payoffs of eventual plays.
struct DeviationProduct {
    WeightedDigraph graph;
    std::vector<std::pair<int, int>> vertices;  // (state, memory) per vertex
};

/// Reachable part of the product, starting from the initial state and
/// memory. The profile must own every player.
DeviationProduct deviation_product(const ConcurrentGame& game, const StrategyMachine& profile,
                                   PlayerSet coalition);

/// One way a profile fails a robustness query: the coalition whose play
/// breaks the bound, the player whose payoff breaks it, the payoff reached,
/// and the (state, memory) cycle realizing it.
struct RobustnessBreach {
    enum class Kind { Resilience, Immunity };
    Kind kind = Kind::Resilience;
    PlayerSet coalition = 0;
    int player = 0;
    Rational achieved;
    std::vector<std::pair<int, int>> cycle;
};

struct VerifyReport {
    bool robust = false;
    std::vector<Rational> payoff;  // what the profile itself earns
    std::vector<RobustnessBreach> breaches;
};

/// Checks a full profile against a robustness query by scanning coalition
/// products: deviating coalitions must not push a member's mean above its
/// payoff (nor anyone's when smaller coalitions remain in scope), and no
/// in-scope coalition may push a bystander more than the radius below.
VerifyReport verify_profile(const ConcurrentGame& game, const StrategyMachine& profile,
                            const RobustnessQuery& query);

}  // namespace robusteq
