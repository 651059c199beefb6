#include "robusteq/solver.hpp"

#include <algorithm>

#include "robusteq/errors.hpp"

namespace robusteq {

SearchOutcome solve_robustness(const ConcurrentGame& game, const RobustnessQuery& query,
                               const SearchConfig& config) {
    if (query.radius < 0) throw StructureError("immunity radius must be nonnegative");
    int n = game.player_count();
    // Coalitions never exceed the player count, so larger bounds are
    // equivalent: one past it for resilience (every size then counts as
    // small), the count itself for immunity.
    int k = std::min(query.resilience, n + 1);
    int t = std::min(query.immunity, n);
    MultiWeightSpec spec = build_weights(game, k, t);
    LinearSystem system = robust_constraints(n, query.radius);
    EnsureOracle oracle = [&](const std::vector<Rational>& bound) {
        CoalitionValue value(game, spec, bound, config.choice_budget);
        return value.initial();
    };
    return polyhedron_query(game, spec, system, config, oracle);
}

}  // namespace robusteq
