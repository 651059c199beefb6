#include "robusteq/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "robusteq/errors.hpp"

namespace robusteq {

DeviationProduct deviation_product(const ConcurrentGame& game, const StrategyMachine& profile,
                                   PlayerSet coalition) {
    int n = game.player_count();
    if (profile.owners != full_set(n)) throw StructureError("profile must own every player");
    if ((coalition & ~full_set(n)) != 0)
        throw StructureError("coalition names unknown players");

    std::vector<int> free = players_of(coalition);
    DeviationProduct out;
    out.graph.dims = n;
    std::map<std::pair<int, int>, int> index;
    auto vertex = [&](int state, int mem) {
        auto [it, fresh] =
            index.try_emplace({state, mem}, static_cast<int>(out.vertices.size()));
        if (fresh) out.vertices.emplace_back(state, mem);
        return it->second;
    };
    out.graph.start = vertex(game.initial, profile.initial_memory);
    for (std::size_t at = 0; at < out.vertices.size(); ++at) {
        auto [state, mem] = out.vertices[at];
        MoveVector move(profile.output(mem, state));
        std::set<std::pair<int, int>> targets;
        std::vector<int> assign(free.size(), 0);
        do {
            for (std::size_t i = 0; i < free.size(); ++i) move[free[i]] = assign[i];
            targets.emplace(game.step(state, move), profile.update(mem, state, move));
        } while (next_assignment(assign, game.action_count()));
        for (auto [to_state, to_mem] : targets) {
            int to = vertex(to_state, to_mem);
            out.graph.vertex_count = static_cast<int>(out.vertices.size());
            out.graph.add_edge(static_cast<int>(at), to,
                               std::vector<long long>(game.weights[state]));
        }
    }
    out.graph.vertex_count = static_cast<int>(out.vertices.size());
    return out;
}

VerifyReport verify_profile(const ConcurrentGame& game, const StrategyMachine& profile,
                            const RobustnessQuery& query) {
    if (query.radius < 0) throw StructureError("immunity radius must be nonnegative");
    if (query.resilience < 0 || query.immunity < 0)
        throw StructureError("coalition bounds must be nonnegative");
    int n = game.player_count();
    VerifyReport report;
    report.payoff = lasso_payoffs(game, outcome(game, profile));

    auto breach_cycle = [](const DeviationProduct& prod, const MeanCycle& mc) {
        std::vector<std::pair<int, int>> cycle;
        for (int v : mc.vertices) cycle.push_back(prod.vertices[v]);
        return cycle;
    };
    auto for_coalitions = [&](int size, const std::function<void(PlayerSet)>& fn) {
        if (size < 0 || size > n) return;
        if (size == 0) {
            fn(0);
            return;
        }
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            PlayerSet set = 0;
            for (int i : idx) set = with_player(set, i);
            fn(set);
            int at = size - 1;
            while (at >= 0 && idx[at] == n - size + at) --at;
            if (at < 0) break;
            ++idx[at];
            for (int j = at + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    auto check_gain = [&](PlayerSet coalition, bool everyone) {
        DeviationProduct prod = deviation_product(game, profile, coalition);
        for (int a = 0; a < n; ++a) {
            if (!everyone && !contains(coalition, a)) continue;
            auto mc = extreme_mean_cycle(prod.graph, a, Sense::Max);
            if (mc && mc->value > report.payoff[a])
                report.breaches.push_back({RobustnessBreach::Kind::Resilience, coalition, a,
                                           mc->value, breach_cycle(prod, *mc)});
        }
    };
    auto check_harm = [&](PlayerSet coalition) {
        DeviationProduct prod = deviation_product(game, profile, coalition);
        for (int a = 0; a < n; ++a) {
            if (contains(coalition, a)) continue;
            auto mc = extreme_mean_cycle(prod.graph, a, Sense::Min);
            if (mc && mc->value < report.payoff[a] - query.radius)
                report.breaches.push_back({RobustnessBreach::Kind::Immunity, coalition, a,
                                           mc->value, breach_cycle(prod, *mc)});
        }
    };

    // Deviating coalitions of exactly the bound may only be held to their own
    // payoffs; any smaller deviator set leaves the whole profile bounded, and
    // products one short of the bound cover every such set.
    if (query.resilience > 0) {
        if (query.resilience <= n) {
            for_coalitions(query.resilience, [&](PlayerSet c) { check_gain(c, false); });
            for_coalitions(query.resilience - 1, [&](PlayerSet c) { check_gain(c, true); });
        } else {
            check_gain(full_set(n), true);
        }
    }
    // A bystander never deviates, so products avoiding each player cover
    // every in-scope coalition even past the player count.
    for_coalitions(std::min(query.immunity, n - 1), [&](PlayerSet c) { check_harm(c); });

    report.robust = report.breaches.empty();
    return report;
}

}  // namespace robusteq
