#include "robusteq/meanpayoff.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "robusteq/errors.hpp"

namespace robusteq {

MultiWeightSpec::MultiWeightSpec(const ConcurrentGame& game, int resilience_bound,
                                 int immunity_bound)
    : game_(&game), k_(resilience_bound), t_(immunity_bound) {
    if (k_ < 0 || t_ < 0) throw StructureError("robustness bounds must be nonnegative");
}

int MultiWeightSpec::player_arity() const { return game_->player_count(); }

std::vector<int> MultiWeightSpec::inf_dims() const {
    int n = player_arity();
    std::vector<int> dims;
    dims.reserve(2 * n);
    for (int i = 0; i < n; ++i) dims.push_back(i);
    for (int i = 0; i < n; ++i) dims.push_back(2 * n + i);
    return dims;
}

std::vector<int> MultiWeightSpec::sup_dims() const {
    int n = player_arity();
    std::vector<int> dims;
    dims.reserve(2 * n);
    for (int i = 0; i < n; ++i) dims.push_back(n + i);
    for (int i = 0; i < n; ++i) dims.push_back(3 * n + i);
    return dims;
}

std::vector<long long> MultiWeightSpec::weight_vector(int state, PlayerSet devs) const {
    const ConcurrentGame& g = *game_;
    int n = g.player_count();
    int deviators = set_size(devs);
    std::vector<long long> v(4 * n, g.weight_bound);
    for (int i = 0; i < n; ++i) {
        long long w = g.weight(state, i);
        if (deviators <= t_ && !contains(devs, i)) v[i] = w;
        if (deviators < k_ || (deviators == k_ && contains(devs, i))) v[n + i] = -w;
        if (devs == 0) {
            v[2 * n + i] = w;
            v[3 * n + i] = -w;
        }
    }
    return v;
}

MultiWeightSpec build_weights(const ConcurrentGame& game, int resilience_bound,
                              int immunity_bound) {
    return MultiWeightSpec(game, resilience_bound, immunity_bound);
}

std::vector<Rational> lasso_dimension_means(const MultiWeightSpec& spec,
                                            const DeviatorLasso& lasso) {
    validate_deviator_lasso(spec.game(), lasso);
    int dims = spec.dims();
    std::vector<long long> total(dims, 0);
    for (const DeviatorStep& step : lasso.cycle) {
        auto w = spec.weight_vector(step.state.base, step.state.devs);
        for (int d = 0; d < dims; ++d) total[d] += w[d];
    }
    std::vector<Rational> means(dims);
    auto len = static_cast<long long>(lasso.cycle.size());
    for (int d = 0; d < dims; ++d) means[d] = Rational(total[d], len);
    return means;
}

namespace {

void check_query_dims(const WeightedDigraph& g, const ThresholdQuery& query) {
    if (static_cast<int>(query.bound.size()) != g.dims)
        throw StructureError("threshold bound arity does not match the graph");
    for (int d : query.inf_dims)
        if (d < 0 || d >= g.dims) throw StructureError("liminf dimension out of range");
    for (int d : query.sup_dims)
        if (d < 0 || d >= g.dims) throw StructureError("limsup dimension out of range");
}

// Unit conservative flow on the component's internal edges whose mean meets
// the bound on every dimension in `need`, if one exists.
std::optional<std::vector<Rational>> component_flow(const WeightedDigraph& g,
                                                    const std::vector<int>& component,
                                                    const std::vector<int>& internal,
                                                    const std::vector<int>& need,
                                                    const std::vector<Rational>& bound) {
    int m = static_cast<int>(internal.size());
    LinearSystem sys(m);
    sys.add(std::vector<Rational>(m, Rational(1)), Rel::Eq, Rational(1));
    for (int v : component) {
        std::vector<Rational> row(m, Rational(0));
        for (int idx = 0; idx < m; ++idx) {
            const Edge& e = g.edges[internal[idx]];
            if (e.from == v) row[idx] += 1;
            if (e.to == v) row[idx] -= 1;
        }
        sys.add(std::move(row), Rel::Eq, Rational(0));
    }
    for (int dim : need) {
        std::vector<Rational> row(m);
        for (int idx = 0; idx < m; ++idx) row[idx] = g.edges[internal[idx]].w[dim];
        sys.add(std::move(row), Rel::Ge, bound[dim]);
    }
    return lp_feasible(sys, std::vector<bool>(m, true));
}

}  // namespace

std::optional<FlowCertificate> one_player_achievable(const WeightedDigraph& g,
                                                     const ThresholdQuery& query) {
    check_query_dims(g, query);
    SccPartition part = sccs(g);
    std::vector<bool> reach = reachable_set(g, g.start);
    std::vector<std::vector<int>> internal(part.components.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int c = part.component_of[g.edges[e].from];
        if (c == part.component_of[g.edges[e].to]) internal[c].push_back(static_cast<int>(e));
    }
    for (size_t c = 0; c < part.components.size(); ++c) {
        if (part.trivial[c] || !reach[part.components[c][0]]) continue;
        auto expand = [&](const std::vector<Rational>& x) {
            std::vector<Rational> full(g.edges.size(), Rational(0));
            for (size_t idx = 0; idx < internal[c].size(); ++idx) full[internal[c][idx]] = x[idx];
            return full;
        };
        auto base = component_flow(g, part.components[c], internal[c], query.inf_dims,
                                   query.bound);
        if (!base) continue;
        FlowCertificate cert;
        cert.component = part.components[c];
        cert.base_flow = expand(*base);
        bool complete = true;
        for (int j : query.sup_dims) {
            std::vector<int> need = query.inf_dims;
            need.push_back(j);
            auto flow = component_flow(g, part.components[c], internal[c], need, query.bound);
            if (!flow) {
                complete = false;
                break;
            }
            cert.sup_flows.emplace_back(j, expand(*flow));
        }
        if (complete) return cert;
    }
    return std::nullopt;
}

namespace {

// Option/choice table with duplicates removed: choices that lead to the same
// vertex are interchangeable for both sides, and so are options admitting the
// same answer set.
struct ArenaSlots {
    std::vector<std::vector<std::vector<int>>> options;
    std::vector<std::pair<int, int>> multi;  // slots where the spoiler picks
};

ArenaSlots dedup_arena(const TwoPlayerGame& game) {
    ArenaSlots slots;
    slots.options.resize(game.vertex_count());
    for (int v = 0; v < game.vertex_count(); ++v) {
        std::set<std::vector<int>> seen;
        for (const auto& option : game.moves[v]) {
            std::vector<int> choice = option;
            std::sort(choice.begin(), choice.end());
            choice.erase(std::unique(choice.begin(), choice.end()), choice.end());
            if (seen.insert(choice).second) slots.options[v].push_back(std::move(choice));
        }
        for (size_t o = 0; o < slots.options[v].size(); ++o)
            if (slots.options[v][o].size() > 1)
                slots.multi.emplace_back(v, static_cast<int>(o));
    }
    return slots;
}

void check_arena_query(const TwoPlayerGame& game, const ThresholdQuery& query) {
    game.validate();
    if (static_cast<int>(query.bound.size()) != game.dims())
        throw StructureError("threshold bound arity does not match the arena");
    for (int d : query.inf_dims)
        if (d < 0 || d >= game.dims()) throw StructureError("liminf dimension out of range");
    for (int d : query.sup_dims)
        if (d < 0 || d >= game.dims()) throw StructureError("limsup dimension out of range");
}

// Graph of every transition the arena admits; edge weights come from the
// source vertex.
WeightedDigraph full_transition_graph(const TwoPlayerGame& game, const ArenaSlots& slots) {
    WeightedDigraph g;
    g.vertex_count = game.vertex_count();
    g.dims = game.dims();
    g.start = game.start;
    for (int v = 0; v < game.vertex_count(); ++v)
        for (const auto& option : slots.options[v])
            for (int to : option) g.add_edge(v, to, game.weights[v]);
    return g;
}

// Per-vertex decision of the one-player threshold problem: a vertex wins
// when it can reach a component carrying the required flows.
std::vector<bool> ensure_from_all(const WeightedDigraph& g, const ThresholdQuery& query) {
    SccPartition part = sccs(g);
    std::vector<std::vector<int>> internal(part.components.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int c = part.component_of[g.edges[e].from];
        if (c == part.component_of[g.edges[e].to]) internal[c].push_back(static_cast<int>(e));
    }
    std::vector<int> queue;
    for (size_t c = 0; c < part.components.size(); ++c) {
        if (part.trivial[c]) continue;
        auto base = component_flow(g, part.components[c], internal[c], query.inf_dims,
                                   query.bound);
        if (!base) continue;
        bool complete = true;
        for (int j : query.sup_dims) {
            std::vector<int> need = query.inf_dims;
            need.push_back(j);
            if (!component_flow(g, part.components[c], internal[c], need, query.bound)) {
                complete = false;
                break;
            }
        }
        if (complete)
            for (int v : part.components[c]) queue.push_back(v);
    }
    std::vector<bool> win(g.vertex_count, false);
    std::vector<std::vector<int>> rev(g.vertex_count);
    for (const Edge& e : g.edges) rev[e.to].push_back(e.from);
    for (int v : queue) win[v] = true;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int from : rev[v])
            if (!win[from]) {
                win[from] = true;
                queue.push_back(from);
            }
    }
    return win;
}

// Backward induction over arenas whose only cycles are self-loops: a
// self-loop answer pins the play at the vertex (prefixes never move a mean),
// so it counts as winning exactly when the vertex's own weights meet every
// constrained bound, and any other answer must lead to a winning vertex.
std::vector<bool> sink_dag_states(const TwoPlayerGame& game, const ArenaSlots& slots,
                                  const SccPartition& part, const ThresholdQuery& query) {
    std::vector<int> constrained = query.inf_dims;
    constrained.insert(constrained.end(), query.sup_dims.begin(), query.sup_dims.end());
    std::vector<bool> win(game.vertex_count(), false);
    for (auto it = part.components.rbegin(); it != part.components.rend(); ++it) {
        int v = (*it)[0];
        bool self_ok = true;
        for (int d : constrained)
            if (Rational(game.weights[v][d]) < query.bound[d]) self_ok = false;
        for (const auto& option : slots.options[v]) {
            bool all = true;
            for (int to : option)
                if (to == v ? !self_ok : !win[to]) {
                    all = false;
                    break;
                }
            if (all) {
                win[v] = true;
                break;
            }
        }
    }
    return win;
}

// Arenas where the ensurer never has a choice: the spoiler steers the play
// onto any reachable simple cycle, so a vertex wins exactly when no cycle
// below some constrained bound is reachable from it.
std::vector<bool> spoiled_walk_states(const TwoPlayerGame& game, const WeightedDigraph& all,
                                      const SccPartition& part, const ThresholdQuery& query) {
    std::vector<int> constrained = query.inf_dims;
    constrained.insert(constrained.end(), query.sup_dims.begin(), query.sup_dims.end());
    std::vector<int> bad;
    for (size_t c = 0; c < part.components.size(); ++c) {
        if (part.trivial[c]) continue;
        const auto& comp = part.components[c];
        std::vector<int> local(all.vertex_count, -1);
        for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
        WeightedDigraph sub;
        sub.vertex_count = static_cast<int>(comp.size());
        sub.dims = all.dims;
        sub.start = 0;
        for (const Edge& e : all.edges)
            if (local[e.from] >= 0 && local[e.to] >= 0)
                sub.add_edge(local[e.from], local[e.to], e.w);
        bool is_bad = false;
        for (int d : constrained) {
            auto low = extreme_mean_cycle(sub, d, Sense::Min);
            if (low && low->value < query.bound[d]) {
                is_bad = true;
                break;
            }
        }
        if (is_bad)
            for (int v : comp) bad.push_back(v);
    }
    std::vector<bool> doomed(game.vertex_count(), false);
    std::vector<std::vector<int>> rev(game.vertex_count());
    for (const Edge& e : all.edges) rev[e.to].push_back(e.from);
    std::vector<int> queue = bad;
    for (int v : queue) doomed[v] = true;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int from : rev[v])
            if (!doomed[from]) {
                doomed[from] = true;
                queue.push_back(from);
            }
    }
    std::vector<bool> win(game.vertex_count());
    for (int v = 0; v < game.vertex_count(); ++v) win[v] = !doomed[v];
    return win;
}

// Runs fn on the one-player graph induced by each positional spoiler until
// fn asks to stop. Throws BudgetError before enumerating too many.
void for_each_spoiler_graph(const TwoPlayerGame& game, const ArenaSlots& slots,
                            unsigned long long budget,
                            const std::function<bool(const WeightedDigraph&)>& fn) {
    unsigned long long count = 1;
    for (const auto& [v, o] : slots.multi) {
        auto width = static_cast<unsigned long long>(slots.options[v][o].size());
        if (count > (1ull << 62) / width) {
            count = 1ull << 63;
            break;
        }
        count *= width;
    }
    if (count > budget) throw BudgetError("positional spoilers exceed the budget", count);
    std::vector<size_t> pick(slots.multi.size(), 0);
    while (true) {
        WeightedDigraph induced;
        induced.vertex_count = game.vertex_count();
        induced.dims = game.dims();
        induced.start = game.start;
        size_t slot = 0;
        for (int v = 0; v < game.vertex_count(); ++v) {
            std::set<int> targets;
            for (const auto& option : slots.options[v]) {
                if (option.size() == 1)
                    targets.insert(option[0]);
                else
                    targets.insert(option[pick[slot++]]);
            }
            for (int to : targets) induced.add_edge(v, to, game.weights[v]);
        }
        if (!fn(induced)) return;
        size_t carry = 0;
        while (carry < pick.size()) {
            auto [v, o] = slots.multi[carry];
            if (++pick[carry] < slots.options[v][o].size()) break;
            pick[carry] = 0;
            ++carry;
        }
        if (carry == pick.size()) return;
    }
}

}  // namespace

std::vector<bool> value_ensure_states(const TwoPlayerGame& game, const ThresholdQuery& query,
                                      unsigned long long budget) {
    check_arena_query(game, query);
    ArenaSlots slots = dedup_arena(game);
    WeightedDigraph all = full_transition_graph(game, slots);
    SccPartition part = sccs(all);

    bool sink_dag = true;
    for (size_t c = 0; c < part.components.size(); ++c)
        if (!part.trivial[c] && part.components[c].size() > 1) {
            sink_dag = false;
            break;
        }
    if (sink_dag) return sink_dag_states(game, slots, part, query);

    bool choiceless = true;
    for (int v = 0; v < game.vertex_count(); ++v)
        if (slots.options[v].size() > 1) choiceless = false;
    if (choiceless) return spoiled_walk_states(game, all, part, query);

    std::vector<bool> acc(game.vertex_count(), true);
    for_each_spoiler_graph(game, slots, budget, [&](const WeightedDigraph& induced) {
        auto win = ensure_from_all(induced, query);
        bool any = false;
        for (int v = 0; v < game.vertex_count(); ++v) {
            acc[v] = acc[v] && win[v];
            any = any || acc[v];
        }
        return any;
    });
    return acc;
}

bool value_ensure(const TwoPlayerGame& game, const ThresholdQuery& query,
                  unsigned long long budget) {
    check_arena_query(game, query);
    ArenaSlots slots = dedup_arena(game);
    WeightedDigraph all = full_transition_graph(game, slots);
    SccPartition part = sccs(all);

    bool sink_dag = true;
    for (size_t c = 0; c < part.components.size(); ++c)
        if (!part.trivial[c] && part.components[c].size() > 1) {
            sink_dag = false;
            break;
        }
    if (sink_dag) return sink_dag_states(game, slots, part, query)[game.start];

    bool choiceless = true;
    for (int v = 0; v < game.vertex_count(); ++v)
        if (slots.options[v].size() > 1) choiceless = false;
    if (choiceless) return spoiled_walk_states(game, all, part, query)[game.start];

    bool held = true;
    for_each_spoiler_graph(game, slots, budget, [&](const WeightedDigraph& induced) {
        held = ensure_from_all(induced, query)[game.start];
        return held;
    });
    return held;
}

void TwoPlayerGame::validate() const {
    if (weights.empty()) throw StructureError("arena has no vertices");
    if (moves.size() != weights.size()) throw StructureError("arena move table size mismatch");
    if (start < 0 || start >= vertex_count()) throw StructureError("arena start out of range");
    int d = dims();
    for (int v = 0; v < vertex_count(); ++v) {
        if (static_cast<int>(weights[v].size()) != d)
            throw StructureError("arena weight arity mismatch");
        if (moves[v].empty()) throw StructureError("arena vertex without options");
        for (const auto& option : moves[v]) {
            if (option.empty()) throw StructureError("arena option without choices");
            for (int to : option)
                if (to < 0 || to >= vertex_count())
                    throw StructureError("arena successor out of range");
        }
    }
}

LinearSystem robust_constraints(int n, const Rational& r) {
    if (n <= 0) throw StructureError("payoff arity must be positive");
    LinearSystem sys(5 * n);
    // u = sign * p + shift, expressed as a pair of >= rows.
    auto tie = [&](int u_index, int p_index, int sign, const Rational& shift) {
        std::vector<Rational> row(5 * n, Rational(0));
        row[n + u_index] = 1;
        row[p_index] = -sign;
        sys.add(row, Rel::Ge, shift);
        for (Rational& c : row) c = -c;
        sys.add(std::move(row), Rel::Ge, -shift);
    };
    for (int i = 0; i < n; ++i) {
        tie(i, i, 1, -r);
        tie(n + i, i, -1, Rational(0));
        tie(2 * n + i, i, 1, Rational(0));
        tie(3 * n + i, i, -1, Rational(0));
    }
    return sys;
}

DeviatorArena materialize_deviator_game(const ConcurrentGame& game, const MultiWeightSpec& spec,
                                        std::size_t max_states) {
    if (&spec.game() != &game) throw StructureError("weight spec built for a different game");
    DeviatorGame dgame(game);
    DeviatorArena out;
    out.vertices = reachable_deviator_states(dgame, max_states);
    auto index_of = [&](const DeviatorState& s) {
        auto it = std::lower_bound(out.vertices.begin(), out.vertices.end(), s);
        return static_cast<int>(it - out.vertices.begin());
    };
    long long total = game.move_total;
    auto pairs = static_cast<unsigned long long>(total) * static_cast<unsigned long long>(total);
    if (out.vertices.size() > (1ull << 24) / pairs)
        throw SizeError("materialized arena would be too large");

    std::vector<MoveVector> decoded(total);
    for (long long code = 0; code < total; ++code) decoded[code] = game.decode_move(code);

    TwoPlayerGame& arena = out.arena;
    arena.start = index_of(dgame.initial());
    arena.weights.reserve(out.vertices.size());
    arena.moves.reserve(out.vertices.size());
    for (const DeviatorState& at : out.vertices) {
        arena.weights.push_back(spec.weight_vector(at.base, at.devs));
        std::vector<std::vector<int>> options;
        std::set<std::vector<int>> seen;
        for (long long pc = 0; pc < total; ++pc) {
            std::vector<int> succs;
            succs.reserve(total);
            for (long long ac = 0; ac < total; ++ac)
                succs.push_back(index_of(dgame.step(at, decoded[pc], decoded[ac])));
            std::sort(succs.begin(), succs.end());
            succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
            if (seen.insert(succs).second) options.push_back(std::move(succs));
        }
        arena.moves.push_back(std::move(options));
    }
    arena.validate();
    return out;
}

namespace {

// Payoffs the game realizes outright: absorbing states first, then means of
// simple cycles reachable from the initial state, capped in number. Trying
// these before any grid point reports realized equilibria with their exact
// payoffs instead of the first grid value that happens to work.
//
// When every reachable cycle is a self-loop the list is marked complete:
// every play eventually settles on one self-looping state, so its payoff is
// that state's weight vector and nothing outside the list can occur.
struct RealizedPayoffs {
    std::vector<std::vector<Rational>> payoffs;
    bool complete = false;
};

RealizedPayoffs realized_payoffs(const ConcurrentGame& game, std::size_t cycle_cap) {
    int ns = game.state_count();
    int n = game.player_count();
    std::vector<std::vector<int>> succ(ns);
    for (int s = 0; s < ns; ++s) {
        std::set<int> to;
        for (long long code = 0; code < game.move_total; ++code) to.insert(game.step(s, code));
        succ[s].assign(to.begin(), to.end());
    }
    std::vector<bool> reach(ns, false);
    std::vector<int> queue{game.initial};
    reach[game.initial] = true;
    while (!queue.empty()) {
        int s = queue.back();
        queue.pop_back();
        for (int to : succ[s])
            if (!reach[to]) {
                reach[to] = true;
                queue.push_back(to);
            }
    }

    WeightedDigraph skeleton;
    skeleton.vertex_count = ns;
    skeleton.dims = 0;
    skeleton.start = game.initial;
    for (int s = 0; s < ns; ++s) {
        if (!reach[s]) continue;
        for (int to : succ[s]) skeleton.add_edge(s, to, {});
    }
    SccPartition part = sccs(skeleton);
    RealizedPayoffs result;
    result.complete = true;
    for (size_t c = 0; c < part.components.size(); ++c)
        if (!part.trivial[c] && part.components[c].size() > 1) result.complete = false;

    std::vector<std::vector<Rational>>& out = result.payoffs;
    if (result.complete) {
        for (int s = 0; s < ns; ++s) {
            if (!reach[s] ||
                !std::binary_search(succ[s].begin(), succ[s].end(), s))
                continue;
            std::vector<Rational> payoff(n);
            for (int i = 0; i < n; ++i) payoff[i] = game.weights[s][i];
            out.push_back(std::move(payoff));
        }
        return result;
    }

    for (int s = 0; s < ns; ++s) {
        if (!reach[s] || succ[s] != std::vector<int>{s}) continue;
        std::vector<Rational> payoff(n);
        for (int i = 0; i < n; ++i) payoff[i] = game.weights[s][i];
        out.push_back(std::move(payoff));
    }

    std::size_t cap = out.size() + cycle_cap;
    std::vector<bool> onpath(ns, false);
    std::vector<int> path;
    std::function<void(int, int)> dfs = [&](int root, int v) {
        for (int to : succ[v]) {
            if (out.size() >= cap) return;
            if (to == root) {
                std::vector<long long> sum(n, 0);
                for (int s : path)
                    for (int i = 0; i < n; ++i) sum[i] += game.weights[s][i];
                std::vector<Rational> mean(n);
                for (int i = 0; i < n; ++i)
                    mean[i] = Rational(sum[i]) / static_cast<long long>(path.size());
                out.push_back(std::move(mean));
            } else if (to > root && !onpath[to]) {
                onpath[to] = true;
                path.push_back(to);
                dfs(root, to);
                path.pop_back();
                onpath[to] = false;
            }
        }
    };
    for (int root = 0; root < ns && out.size() < cap; ++root) {
        if (!reach[root]) continue;
        onpath[root] = true;
        path.assign(1, root);
        dfs(root, root);
        onpath[root] = false;
    }
    return result;
}

// Substitutes a candidate payoff into the system and extracts the threshold
// part of a witness, with dimensions below the weight floor raised to it
// (no play can fall under the floor, so the bounds are equivalent).
std::optional<std::vector<Rational>> candidate_threshold(const LinearSystem& system, int n,
                                                         long long cap,
                                                         const std::vector<Rational>& cand) {
    LinearSystem pinned = system;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> row(system.arity, Rational(0));
        row[i] = 1;
        pinned.add(std::move(row), Rel::Eq, cand[i]);
    }
    auto witness = lp_feasible(pinned, std::vector<bool>(system.arity, false));
    if (!witness) return std::nullopt;
    std::vector<Rational> u(witness->begin() + n, witness->end());
    for (Rational& x : u)
        if (x < -cap) x = Rational(-cap);
    return u;
}

// One feasibility problem for a fixed component per spoiler: the system rows
// over (payoff, threshold) plus, for every distinct chosen component, flows
// establishing each liminf bound jointly and each limsup bound separately.
std::optional<std::vector<Rational>> joint_feasible(
    const TwoPlayerGame& arena, int payoff_arity, const std::vector<int>& inf_dims,
    const std::vector<int>& sup_dims, const LinearSystem& system,
    const std::vector<std::vector<std::pair<int, int>>>& blocks, const std::vector<int>& chosen) {
    int dims = arena.dims();
    int head = payoff_arity + dims;
    int total = head;
    std::vector<int> offset;
    int flows = 1 + static_cast<int>(sup_dims.size());
    for (int b : chosen) {
        offset.push_back(total);
        total += flows * static_cast<int>(blocks[b].size());
    }
    LinearSystem sys(total);
    for (const LinearConstraint& row : system.rows) {
        std::vector<Rational> a(total, Rational(0));
        std::copy(row.a.begin(), row.a.end(), a.begin());
        sys.add(std::move(a), row.rel, row.b);
    }
    for (std::size_t c = 0; c < chosen.size(); ++c) {
        const auto& edges = blocks[chosen[c]];
        std::set<int> verts;
        for (auto [from, to] : edges) {
            verts.insert(from);
            verts.insert(to);
        }
        for (int f = 0; f < flows; ++f) {
            int base = offset[c] + f * static_cast<int>(edges.size());
            std::vector<Rational> unit(total, Rational(0));
            for (std::size_t e = 0; e < edges.size(); ++e) unit[base + e] = 1;
            sys.add(std::move(unit), Rel::Eq, Rational(1));
            for (int v : verts) {
                std::vector<Rational> balance(total, Rational(0));
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    if (edges[e].first == v) balance[base + e] += 1;
                    if (edges[e].second == v) balance[base + e] -= 1;
                }
                sys.add(std::move(balance), Rel::Eq, Rational(0));
            }
            std::vector<int> need = inf_dims;
            if (f > 0) need.push_back(sup_dims[f - 1]);
            for (int d : need) {
                std::vector<Rational> row(total, Rational(0));
                for (std::size_t e = 0; e < edges.size(); ++e)
                    row[base + e] = arena.weights[edges[e].first][d];
                row[payoff_arity + d] -= 1;
                sys.add(std::move(row), Rel::Ge, Rational(0));
            }
        }
    }
    std::vector<bool> nonneg(total, true);
    for (int i = 0; i < head; ++i) nonneg[i] = false;
    return lp_feasible(sys, nonneg);
}

}  // namespace

SearchOutcome polyhedron_query(const ConcurrentGame& game, const MultiWeightSpec& spec,
                               const LinearSystem& system, const SearchConfig& config,
                               const EnsureOracle& ensure) {
    if (&spec.game() != &game) throw StructureError("weight spec built for a different game");
    int n = spec.player_arity();
    if (system.arity != 5 * n)
        throw StructureError("system arity must be payoffs plus threshold dimensions");
    long long cap = spec.cap();

    RealizedPayoffs realized = realized_payoffs(game, 2048);
    std::vector<std::vector<Rational>> candidates;
    std::set<std::vector<Rational>> dedup;
    for (auto& cand : realized.payoffs)
        if (dedup.insert(cand).second) candidates.push_back(std::move(cand));

    // A complete list makes the grid pointless: no play realizes a payoff
    // outside it, so rejecting every entry already refutes the query.
    bool grid_skipped = false;
    if (!realized.complete) {
        long long den = config.denominator_bound;
        if (den <= 0)
            den = static_cast<long long>(reachable_deviator_states(DeviatorGame(game)).size());
        BigInt per_dim = BigInt(2) * cap * den + 1;
        BigInt grid_size = 1;
        for (int i = 0; i < n; ++i) grid_size *= per_dim;
        if (grid_size > BigInt(config.candidate_budget)) {
            grid_skipped = true;
        } else {
            std::vector<long long> digit(n, -cap * den);
            while (true) {
                std::vector<Rational> cand(n);
                for (int i = 0; i < n; ++i) cand[i] = Rational(digit[i]) / den;
                if (dedup.insert(cand).second) candidates.push_back(std::move(cand));
                int at = n - 1;
                while (at >= 0 && digit[at] == cap * den) digit[at--] = -cap * den;
                if (at < 0) break;
                ++digit[at];
            }
        }
    }

    // Workers claim indexes in order and the lowest success wins, so the
    // outcome is independent of the worker count. Indexes above a recorded
    // success are skipped; everything below it is always evaluated.
    std::size_t total = candidates.size();
    std::vector<std::vector<Rational>> thresholds(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{total};
    std::atomic<bool> oracle_starved{false};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    auto scan = [&]() {
        try {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= total || i > best.load()) return;
                auto u = candidate_threshold(system, n, cap, candidates[i]);
                if (!u) continue;
                bool ok = false;
                try {
                    ok = ensure(*u);
                } catch (const BudgetError&) {
                    oracle_starved.store(true);
                    continue;
                }
                if (ok) {
                    thresholds[i] = std::move(*u);
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    int workers = std::max(1, config.workers);
    if (workers == 1 || total <= 1) {
        scan();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(scan);
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(failure);

    SearchOutcome out;
    if (best.load() < total) {
        out.decision = Decision::Yes;
        out.payoff = candidates[best.load()];
        out.threshold = thresholds[best.load()];
    } else if (grid_skipped || oracle_starved.load()) {
        out.decision = Decision::Inconclusive;
        out.note = grid_skipped ? "payoff grid exceeds the candidate budget"
                                : "value oracle ran out of budget";
    } else {
        out.decision = Decision::No;
    }
    return out;
}

SearchOutcome polyhedron_query_lp(const TwoPlayerGame& arena, int payoff_arity,
                                  const std::vector<int>& inf_dims,
                                  const std::vector<int>& sup_dims, const LinearSystem& system,
                                  const SearchConfig& config) {
    arena.validate();
    int dims = arena.dims();
    if (payoff_arity <= 0) throw StructureError("payoff arity must be positive");
    for (int d : inf_dims)
        if (d < 0 || d >= dims) throw StructureError("liminf dimension out of range");
    for (int d : sup_dims)
        if (d < 0 || d >= dims) throw StructureError("limsup dimension out of range");
    if (system.arity != payoff_arity + dims)
        throw StructureError("system arity must be payoffs plus threshold dimensions");

    ArenaSlots slots = dedup_arena(arena);
    SearchOutcome out;

    // Component menu per spoiler, interned by edge set so that repeated
    // components share one flow block later.
    std::map<std::vector<std::pair<int, int>>, int> block_ids;
    std::vector<std::vector<std::pair<int, int>>> blocks;
    std::vector<std::vector<int>> menus;
    try {
        for_each_spoiler_graph(arena, slots, config.choice_budget,
                               [&](const WeightedDigraph& induced) {
                                   SccPartition part = sccs(induced);
                                   std::vector<bool> reach =
                                       reachable_set(induced, induced.start);
                                   std::vector<int> menu;
                                   for (std::size_t c = 0; c < part.components.size(); ++c) {
                                       if (part.trivial[c] || !reach[part.components[c][0]])
                                           continue;
                                       std::vector<std::pair<int, int>> sig;
                                       for (const Edge& e : induced.edges)
                                           if (part.component_of[e.from] == static_cast<int>(c) &&
                                               part.component_of[e.to] == static_cast<int>(c))
                                               sig.emplace_back(e.from, e.to);
                                       std::sort(sig.begin(), sig.end());
                                       auto [it, fresh] =
                                           block_ids.try_emplace(sig, static_cast<int>(blocks.size()));
                                       if (fresh) blocks.push_back(std::move(sig));
                                       menu.push_back(it->second);
                                   }
                                   std::sort(menu.begin(), menu.end());
                                   menus.push_back(std::move(menu));
                                   return true;
                               });
    } catch (const BudgetError&) {
        out.decision = Decision::Inconclusive;
        out.note = "too many spoilers for the joint search";
        return out;
    }

    std::sort(menus.begin(), menus.end());
    menus.erase(std::unique(menus.begin(), menus.end()), menus.end());
    // A menu containing another is redundant: whatever the smaller menu
    // settles on serves the larger one through the shared block.
    std::vector<std::vector<int>> kept;
    for (const auto& menu : menus) {
        bool covered = false;
        for (const auto& other : menus) {
            if (other.size() < menu.size() &&
                std::includes(menu.begin(), menu.end(), other.begin(), other.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) kept.push_back(menu);
    }
    menus = std::move(kept);

    unsigned long long assignments = 1;
    for (const auto& menu : menus) {
        auto width = static_cast<unsigned long long>(menu.size());
        if (assignments > (1ull << 62) / width) {
            assignments = 1ull << 63;
            break;
        }
        assignments *= width;
    }
    if (assignments > config.choice_budget) {
        out.decision = Decision::Inconclusive;
        out.note = "too many component assignments for the joint search";
        return out;
    }

    std::set<std::vector<int>> tried;
    std::vector<std::size_t> pick(menus.size(), 0);
    while (true) {
        std::vector<int> chosen;
        for (std::size_t s = 0; s < menus.size(); ++s) chosen.push_back(menus[s][pick[s]]);
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        if (tried.insert(chosen).second) {
            auto witness = joint_feasible(arena, payoff_arity, inf_dims, sup_dims, system,
                                          blocks, chosen);
            if (witness) {
                out.decision = Decision::Yes;
                out.payoff.assign(witness->begin(), witness->begin() + payoff_arity);
                out.threshold.assign(witness->begin() + payoff_arity,
                                     witness->begin() + payoff_arity + dims);
                return out;
            }
        }
        std::size_t carry = 0;
        while (carry < pick.size() && ++pick[carry] == menus[carry].size()) pick[carry++] = 0;
        if (carry == pick.size()) break;
    }
    out.decision = Decision::No;
    return out;
}

}  // namespace robusteq
