#pragma once

#include "robusteq/coalition.hpp"

namespace robusteq {

/// What to decide about a game's equilibria.
struct RobustnessQuery {
    int resilience = 0;   // toleration of deviating coalitions up to this size
    int immunity = 0;     // bystanders survive coalitions up to this size
    Rational radius = 0;  // payoff drop bystanders are asked to absorb
};

/// Decides whether the game admits an equilibrium meeting the query, and
/// reports its payoff on a yes. The candidate payoffs are the realized ones
/// (absorbing states, reachable simple cycles) plus the grid of vectors with
/// denominators dividing `config.denominator_bound` (default: the number of
/// reachable deviator states), so a "no" rules out exactly that family.
SearchOutcome solve_robustness(const ConcurrentGame& game, const RobustnessQuery& query,
                               const SearchConfig& config = {});

}  // namespace robusteq
