#include "robusteq/deviator.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "robusteq/errors.hpp"

namespace robusteq {

DeviatorState DeviatorGame::step(const DeviatorState& from, const MoveVector& proposed,
                                 const MoveVector& actual) const {
    return {game_->step(from.base, actual), from.devs | deviators_move(actual, proposed)};
}

DeviatorGame build_deviator(const ConcurrentGame& game) { return DeviatorGame(game); }

namespace {

std::string describe(const ConcurrentGame& game, const DeviatorState& ds) {
    return game.states[ds.base] + format_player_set(ds.devs, game.players);
}

void check_step(const ConcurrentGame& game, const DeviatorGame& dgame, const DeviatorStep& step,
                const DeviatorState& expect, const char* part, std::size_t index) {
    std::string where = std::string(part) + " step " + std::to_string(index);
    if (step.state.base < 0 || step.state.base >= game.state_count())
        throw StructureError(where + ": state out of range");
    DeviatorState next = dgame.step(step.state, step.proposed, step.actual);
    if (next != expect)
        throw StructureError(where + ": move leads to " + describe(game, next) +
                             ", lasso expects " + describe(game, expect));
}

}  // namespace

void validate_deviator_lasso(const ConcurrentGame& game, const DeviatorLasso& lasso) {
    if (lasso.cycle.empty()) throw StructureError("lasso cycle is empty");
    DeviatorGame dgame(game);
    for (std::size_t i = 0; i < lasso.prefix.size(); ++i) {
        const DeviatorState& next =
            i + 1 < lasso.prefix.size() ? lasso.prefix[i + 1].state : lasso.cycle[0].state;
        check_step(game, dgame, lasso.prefix[i], next, "prefix", i);
    }
    for (std::size_t i = 0; i < lasso.cycle.size(); ++i) {
        const DeviatorState& next =
            i + 1 < lasso.cycle.size() ? lasso.cycle[i + 1].state : lasso.cycle[0].state;
        check_step(game, dgame, lasso.cycle[i], next, "cycle", i);
    }
}

PlayerSet limit_deviators(const DeviatorLasso& lasso) {
    if (lasso.cycle.empty()) throw StructureError("lasso cycle is empty");
    PlayerSet devs = lasso.cycle[0].state.devs;
    for (const DeviatorStep& step : lasso.cycle)
        if (step.state.devs != devs) throw StructureError("deviator set changes along the cycle");
    return devs;
}

LassoPlay project_lasso(const DeviatorLasso& lasso) {
    LassoPlay out;
    out.prefix.reserve(lasso.prefix.size());
    out.cycle.reserve(lasso.cycle.size());
    for (const DeviatorStep& step : lasso.prefix)
        out.prefix.push_back({step.state.base, step.actual});
    for (const DeviatorStep& step : lasso.cycle) out.cycle.push_back({step.state.base, step.actual});
    return out;
}

std::vector<DeviatorState> reachable_deviator_states(const DeviatorGame& dgame,
                                                     std::size_t max_states) {
    const ConcurrentGame& g = dgame.base();
    constexpr std::size_t kMaxExplicit = std::size_t{1} << 21;
    if (max_states == 0) {
        std::size_t bound = static_cast<std::size_t>(g.state_count()) << g.player_count();
        if (bound > kMaxExplicit)
            throw SizeError("deviator game too large to enumerate explicitly");
        max_states = bound;
    }

    std::set<DeviatorState> seen;
    std::vector<DeviatorState> queue;
    auto push = [&](DeviatorState ds) {
        if (!seen.insert(ds).second) return;
        if (seen.size() > max_states)
            throw SizeError("deviator state enumeration exceeds the configured bound");
        queue.push_back(ds);
    };

    push(dgame.initial());
    PlayerSet all = full_set(g.player_count());
    // With a second action available every player can be made to differ from
    // the proposal, so any growth of the annotation can be realized.
    bool can_deviate = g.action_count() >= 2;
    for (std::size_t next = 0; next < queue.size(); ++next) {
        DeviatorState at = queue[next];
        for (long long code = 0; code < g.move_total; ++code) {
            int to = g.step(at.base, code);
            if (!can_deviate) {
                push({to, at.devs});
                continue;
            }
            PlayerSet room = all & ~at.devs;
            PlayerSet extra = room;
            while (true) {
                push({to, at.devs | extra});
                if (extra == 0) break;
                extra = (extra - 1) & room;
            }
        }
    }
    return {seen.begin(), seen.end()};
}

ConcurrentGame deviator_to_game(const DeviatorGame& dgame, std::size_t max_states) {
    const ConcurrentGame& g = dgame.base();
    std::vector<DeviatorState> reached = reachable_deviator_states(dgame, max_states);
    if (2 * g.player_count() > kMaxPlayers)
        throw SizeError("too many players to split into proposing and playing copies");
    unsigned long long per_state = 1;
    for (int p = 0; p < 2 * g.player_count(); ++p) {
        per_state *= static_cast<unsigned long long>(g.action_count());
        if (per_state * reached.size() > (1ull << 24))
            throw SizeError("explicit deviator game table too large");
    }

    std::map<DeviatorState, int> index;
    for (std::size_t i = 0; i < reached.size(); ++i)
        index[reached[i]] = static_cast<int>(i);

    ConcurrentGame out;
    out.players = g.players;
    for (const std::string& name : g.players) out.players.push_back(name + "'");
    out.actions = g.actions;
    for (const DeviatorState& ds : reached)
        out.states.push_back(g.states[ds.base] + "@" + format_player_set(ds.devs, g.players));
    out.initial = index.at(dgame.initial());
    out.weights.assign(reached.size(), std::vector<long long>(out.players.size(), 0));
    for (std::size_t i = 0; i < reached.size(); ++i)
        for (int p = 0; p < g.player_count(); ++p)
            out.weights[i][p] = g.weight(reached[i].base, p);
    out.rules.resize(reached.size());
    for (std::size_t i = 0; i < reached.size(); ++i) {
        for (long long pcode = 0; pcode < g.move_total; ++pcode) {
            MoveVector proposed = g.decode_move(pcode);
            for (long long acode = 0; acode < g.move_total; ++acode) {
                MoveVector actual = g.decode_move(acode);
                int to = index.at(dgame.step(reached[i], proposed, actual));
                MoveVector combined = proposed;
                combined.insert(combined.end(), actual.begin(), actual.end());
                out.rules[i].push_back({std::move(combined), to});
            }
        }
    }
    out.finalize();
    return out;
}

EveStrategyMachine lift_profile(const StrategyMachine& profile) {
    return EveStrategyMachine(profile);
}

DeviatorLasso deviator_outcome(const ConcurrentGame& game, const StrategyMachine& profile,
                               const StrategyMachine& deviation, PlayerSet coalition) {
    if (profile.owners != full_set(game.player_count()))
        throw StructureError("deviator_outcome requires a full strategy profile");
    if (deviation.owners != coalition)
        throw StructureError("coalition strategy owners do not match the coalition");
    EveStrategyMachine eve = lift_profile(profile);
    std::vector<int> owner_list = players_of(coalition);
    DeviatorGame dgame(game);

    std::map<std::tuple<DeviatorState, int, int>, std::size_t> seen;
    std::vector<DeviatorStep> walk;
    DeviatorState at = dgame.initial();
    int prof_mem = eve.initial_memory(), dev_mem = deviation.initial_memory;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_tuple(at, prof_mem, dev_mem), walk.size());
        if (!fresh) {
            DeviatorLasso out;
            out.prefix.assign(walk.begin(), walk.begin() + it->second);
            out.cycle.assign(walk.begin() + it->second, walk.end());
            return out;
        }
        MoveVector proposed = eve.output(prof_mem, at);
        const std::vector<int>& choice = deviation.output(dev_mem, at.base);
        if (choice.size() != owner_list.size())
            throw StructureError("coalition strategy choice arity mismatch");
        MoveVector actual = proposed;
        for (std::size_t i = 0; i < owner_list.size(); ++i) actual[owner_list[i]] = choice[i];
        walk.push_back({at, proposed, actual});
        prof_mem = eve.update(prof_mem, at, actual);
        dev_mem = deviation.update(dev_mem, at.base, actual);
        at = dgame.step(at, proposed, actual);
    }
}

DeviatorLasso annotate_lasso(const ConcurrentGame& game, const LassoPlay& lasso,
                             const StrategyMachine& profile) {
    if (profile.owners != full_set(game.player_count()))
        throw StructureError("annotate_lasso requires a full strategy profile");
    validate_lasso(game, lasso);

    std::vector<DeviatorStep> walk;
    PlayerSet devs = 0;
    int mem = profile.initial_memory;
    auto emit = [&](const LassoStep& step) {
        const MoveVector& proposed = profile.output(mem, step.state);
        walk.push_back({{step.state, devs}, proposed, step.move});
        devs |= deviators_move(step.move, proposed);
        mem = profile.update(mem, step.state, step.move);
    };
    for (const LassoStep& step : lasso.prefix) emit(step);

    // The deviator set only grows and the profile memory is finite, so some
    // pass over the cycle repeats an earlier (deviators, memory) pair; the
    // annotated steps between the two visits form the cycle.
    std::map<std::pair<PlayerSet, int>, std::size_t> starts;
    while (true) {
        auto [it, fresh] = starts.emplace(std::make_pair(devs, mem), walk.size());
        if (!fresh) {
            DeviatorLasso out;
            out.prefix.assign(walk.begin(), walk.begin() + it->second);
            out.cycle.assign(walk.begin() + it->second, walk.end());
            return out;
        }
        for (const LassoStep& step : lasso.cycle) emit(step);
    }
}

bool Interval::member(const Rational& x) const {
    if (lower && (x < *lower || (lower_open && x == *lower))) return false;
    if (upper && (x > *upper || (upper_open && x == *upper))) return false;
    return true;
}

bool objective_omega(const ConcurrentGame& game, const DeviatorLasso& lasso, PlayerSet within,
                     int player, const Interval& goal) {
    if ((limit_deviators(lasso) & ~within) != 0) return true;
    return goal.member(lasso_payoff(game, project_lasso(lasso), player));
}

namespace {

void check_payoff_arity(const ConcurrentGame& game, const std::vector<Rational>& p) {
    if (p.size() != static_cast<std::size_t>(game.player_count()))
        throw StructureError("payoff vector arity mismatch");
}

}  // namespace

bool resilience_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int k,
                    const std::vector<Rational>& p) {
    check_payoff_arity(game, p);
    PlayerSet devs = limit_deviators(lasso);
    int count = set_size(devs);
    if (count > k) return true;
    std::vector<Rational> payoffs = lasso_payoffs(game, project_lasso(lasso));
    if (count == k) {
        for (int a : players_of(devs))
            if (payoffs[a] > p[a]) return false;
        return true;
    }
    for (int a = 0; a < game.player_count(); ++a)
        if (payoffs[a] > p[a]) return false;
    return true;
}

bool immunity_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int t,
                  const Rational& r, const std::vector<Rational>& p) {
    check_payoff_arity(game, p);
    PlayerSet devs = limit_deviators(lasso);
    if (set_size(devs) > t) return true;
    std::vector<Rational> payoffs = lasso_payoffs(game, project_lasso(lasso));
    for (int a = 0; a < game.player_count(); ++a)
        if (!contains(devs, a) && payoffs[a] < p[a] - r) return false;
    return true;
}

bool robustness_obj(const ConcurrentGame& game, const DeviatorLasso& lasso, int k, int t,
                    const Rational& r, const std::vector<Rational>& p) {
    return resilience_obj(game, lasso, k, p) && immunity_obj(game, lasso, t, r, p);
}

}  // namespace robusteq
