#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robusteq/deviator.hpp"
#include "robusteq/digraph.hpp"
#include "robusteq/game.hpp"
#include "robusteq/lp.hpp"
#include "robusteq/rational.hpp"

namespace robusteq {

// Weight vectors over annotated states encoding one robustness query as 4n
// mean-payoff dimensions (n = player count). For player i:
//   dim i        what immunity protects: w_i while the deviator set stays
//                small enough and i is not in it;
//   dim n+i      what resilience caps, negated: -w_i while the deviator set
//                is at most the resilience bound (and contains i when the
//                bound is met exactly);
//   dims 2n+i, 3n+i   w_i and -w_i on deviation-free plays, pinning their
//                payoff from both sides.
// Dimensions whose case does not apply get the weight cap W, which makes
// them vacuous against any threshold drawn from [-W, W].
class MultiWeightSpec {
public:
    MultiWeightSpec(const ConcurrentGame& game, int resilience_bound, int immunity_bound);

    const ConcurrentGame& game() const { return *game_; }
    int player_arity() const;
    int dims() const { return 4 * player_arity(); }
    long long cap() const { return game_->weight_bound; }
    int resilience_bound() const { return k_; }
    int immunity_bound() const { return t_; }

    // Dimensions read as liminf (blocks 1 and 3) and limsup (blocks 2 and 4)
    // of the running averages.
    std::vector<int> inf_dims() const;
    std::vector<int> sup_dims() const;

    std::vector<long long> weight_vector(int state, PlayerSet devs) const;

private:
    const ConcurrentGame* game_;
    int k_;
    int t_;
};

MultiWeightSpec build_weights(const ConcurrentGame& game, int resilience_bound,
                              int immunity_bound);

// Per-dimension cycle mean of an annotated lasso. For ultimately periodic
// plays the liminf and limsup of running averages both equal the cycle mean,
// so this is the play's value in every dimension at once.
std::vector<Rational> lasso_dimension_means(const MultiWeightSpec& spec,
                                            const DeviatorLasso& lasso);

// Threshold profile over a multi-dimensional graph: liminf of the running
// averages must reach bound[i] for i in inf_dims, limsup must reach bound[j]
// for j in sup_dims. Dimensions listed in neither are unconstrained.
struct ThresholdQuery {
    std::vector<int> inf_dims;
    std::vector<int> sup_dims;
    std::vector<Rational> bound;  // indexed by dimension, arity = graph dims
};

// Witness that some play from the start meets a threshold query: a reachable
// strongly connected component, a unit conservative flow on its internal
// edges whose means meet every inf bound, and one further such flow per sup
// dimension that additionally meets that dimension's bound. Flows are indexed
// by edge of the full graph and vanish outside the component.
struct FlowCertificate {
    std::vector<int> component;
    std::vector<Rational> base_flow;
    std::vector<std::pair<int, std::vector<Rational>>> sup_flows;
};

std::optional<FlowCertificate> one_player_achievable(const WeightedDigraph& g,
                                                     const ThresholdQuery& query);

// Turn-based arena with vertex weights: at each vertex the ensurer commits to
// an option and the spoiler resolves it to one of the option's choices, which
// names the next vertex. Every vertex needs at least one option and every
// option at least one choice, so plays never get stuck.
struct TwoPlayerGame {
    int start = 0;
    std::vector<std::vector<long long>> weights;       // [vertex][dim]
    std::vector<std::vector<std::vector<int>>> moves;  // [vertex][option][choice] -> vertex

    int vertex_count() const { return static_cast<int>(weights.size()); }
    int dims() const { return weights.empty() ? 0 : static_cast<int>(weights[0].size()); }
    void validate() const;
};

inline constexpr unsigned long long kDefaultSpoilerBudget = 1ull << 20;

// Decides whether the threshold is achievable from the start against every
// positional spoiler. Two shapes are decided directly: arenas whose cycles
// are all self-loops (backward induction) and arenas where the ensurer never
// has a choice (min-mean cycle checks). Anything else enumerates the
// positional spoilers, deduplicating choices that lead to the same vertex,
// and raises BudgetError with the spoiler count when it exceeds the budget.
bool value_ensure(const TwoPlayerGame& game, const ThresholdQuery& query,
                  unsigned long long budget = kDefaultSpoilerBudget);

// Same decision for every start vertex at once.
std::vector<bool> value_ensure_states(const TwoPlayerGame& game, const ThresholdQuery& query,
                                      unsigned long long budget = kDefaultSpoilerBudget);

// Ties thresholds to a payoff vector: over variables p_1..p_n followed by
// u_1..u_4n, emits u_i = p_i - r, u_{n+i} = -p_i, u_{2n+i} = p_i and
// u_{3n+i} = -p_i, each equality as a pair of >= rows. Extra rows can be
// added on top to constrain the payoff further.
LinearSystem robust_constraints(int n, const Rational& r);

// Explicit arena over the reachable annotated states of the game: options
// are the proposable move vectors (merged when they admit the same answers),
// choices the resulting successors, weights from the spec.
struct DeviatorArena {
    TwoPlayerGame arena;
    std::vector<DeviatorState> vertices;  // arena vertex -> annotated state
};

DeviatorArena materialize_deviator_game(const ConcurrentGame& game, const MultiWeightSpec& spec,
                                        std::size_t max_states = 0);

enum class Decision { Yes, No, Inconclusive };

struct SearchConfig {
    // Grid payoffs use denominators dividing this bound; 0 selects the
    // number of reachable annotated states as a default.
    long long denominator_bound = 0;
    // Refuse to enumerate more payoff candidates than this; an exhausted
    // budget downgrades "no" to "inconclusive".
    unsigned long long candidate_budget = 1ull << 18;
    // Mode B: bound on spoiler strategies times component assignments.
    unsigned long long choice_budget = 1ull << 16;
    int workers = 1;
};

struct SearchOutcome {
    Decision decision = Decision::Inconclusive;
    std::vector<Rational> payoff;     // filled on yes
    std::vector<Rational> threshold;  // filled on yes, after clamping
    std::string note;                 // reason when inconclusive
};

// Callback deciding whether a clamped threshold vector is ensurable.
using EnsureOracle = std::function<bool(const std::vector<Rational>&)>;

// Candidate-payoff search: tries absorbing-state payoffs, then reachable
// simple-cycle means, then the grid of rational vectors over [-W, W]^n with
// denominators dividing the bound. Each candidate is substituted into the
// system; a feasible threshold witness is clamped below at -W per dimension
// and handed to the oracle. The first accepted candidate in stage order
// wins. "No" means the full grid was enumerated without success, which is
// conclusive whenever some achievable payoff fits the grid. Games whose
// reachable cycles are all self-loops skip the grid outright: their plays
// settle on a self-looping state, so the realized payoffs are the only
// achievable ones and rejecting them all is a conclusive "no".
SearchOutcome polyhedron_query(const ConcurrentGame& game, const MultiWeightSpec& spec,
                               const LinearSystem& system, const SearchConfig& config,
                               const EnsureOracle& ensure);

// Exhaustive search over an explicit arena: for every positional spoiler and
// every assignment of a reachable component to each of them, one exact
// feasibility problem over payoff, thresholds and flow variables. Complete,
// but only tractable on tiny arenas; larger ones yield "inconclusive".
SearchOutcome polyhedron_query_lp(const TwoPlayerGame& arena, int payoff_arity,
                                  const std::vector<int>& inf_dims,
                                  const std::vector<int>& sup_dims, const LinearSystem& system,
                                  const SearchConfig& config);

}  // namespace robusteq
