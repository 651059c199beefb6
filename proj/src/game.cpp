#include "robusteq/game.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "robusteq/errors.hpp"

namespace robusteq {

namespace {

constexpr long long kMaxMoveTotal = 1ll << 22;
constexpr long long kMaxTableEntries = 1ll << 24;

std::string describe_move(const ConcurrentGame& game, const MoveVector& move) {
    std::string out = "(";
    for (size_t i = 0; i < move.size(); ++i) {
        if (i) out += ",";
        out += game.actions[move[i]];
    }
    return out + ")";
}

bool rule_matches(const MoveRule& rule, const MoveVector& move) {
    for (size_t i = 0; i < move.size(); ++i)
        if (rule.moves[i] != kAnyAction && rule.moves[i] != move[i]) return false;
    return true;
}

}  // namespace

int set_size(PlayerSet set) { return std::popcount(set); }

std::vector<int> players_of(PlayerSet set) {
    std::vector<int> out;
    for (int p = 0; p < kMaxPlayers; ++p)
        if (contains(set, p)) out.push_back(p);
    return out;
}

std::string format_player_set(PlayerSet set, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (int p : players_of(set)) {
        if (!first) out += ",";
        first = false;
        out += names[p];
    }
    return out + "}";
}

bool next_assignment(std::vector<int>& assignment, int action_count) {
    for (int& digit : assignment) {
        if (++digit < action_count) return true;
        digit = 0;
    }
    return false;
}

void ConcurrentGame::finalize() {
    int n = player_count();
    if (n < 1 || n > kMaxPlayers) throw StructureError("unsupported player count");
    if (actions.empty()) throw StructureError("no actions");
    if (states.empty()) throw StructureError("no states");
    if (initial < 0 || initial >= state_count()) throw StructureError("initial state out of range");
    if (static_cast<int>(weights.size()) != state_count())
        throw StructureError("weights must cover every state");
    for (const auto& row : weights)
        if (static_cast<int>(row.size()) != n)
            throw StructureError("weights must cover every player");
    if (static_cast<int>(rules.size()) != state_count())
        throw StructureError("transition rules must cover every state");

    move_total = 1;
    for (int i = 0; i < n; ++i) {
        move_total *= action_count();
        if (move_total > kMaxMoveTotal) throw SizeError("move table too large");
    }
    if (move_total * state_count() > kMaxTableEntries) throw SizeError("transition table too large");

    for (int s = 0; s < state_count(); ++s)
        for (const MoveRule& rule : rules[s]) {
            if (static_cast<int>(rule.moves.size()) != n)
                throw StructureError("transition rule arity mismatch at state " + states[s]);
            for (int a : rule.moves)
                if (a != kAnyAction && (a < 0 || a >= action_count()))
                    throw StructureError("transition rule action out of range at state " + states[s]);
            if (rule.to < 0 || rule.to >= state_count())
                throw StructureError("transition rule target out of range at state " + states[s]);
        }

    table.assign(state_count(), std::vector<int>(move_total, -1));
    MoveVector move(n, 0);
    do {
        long long code = encode_move(move);
        for (int s = 0; s < state_count(); ++s) {
            for (const MoveRule& rule : rules[s]) {
                if (rule_matches(rule, move)) {
                    table[s][code] = rule.to;
                    break;
                }
            }
            if (table[s][code] < 0)
                throw StructureError("state " + states[s] + " has no transition rule for move " +
                                     describe_move(*this, move) + "; a catch-all rule is required");
        }
    } while (next_assignment(move, action_count()));

    weight_bound = 0;
    for (const auto& row : weights)
        for (long long w : row) weight_bound = std::max(weight_bound, w < 0 ? -w : w);

    supports.assign(state_count(), 0);
    for (int s = 0; s < state_count(); ++s) {
        long long stride = 1;
        for (int p = 0; p < n; ++p, stride *= action_count()) {
            bool matters = false;
            for (long long code = 0; code < move_total && !matters; ++code) {
                if ((code / stride) % action_count() != 0) continue;
                int base = table[s][code];
                for (int a = 1; a < action_count(); ++a)
                    if (table[s][code + a * stride] != base) {
                        matters = true;
                        break;
                    }
            }
            if (matters) supports[s] = with_player(supports[s], p);
        }
    }
}

long long ConcurrentGame::encode_move(std::span<const int> move) const {
    if (static_cast<int>(move.size()) != player_count())
        throw StructureError("move vector arity mismatch");
    long long code = 0, stride = 1;
    for (int a : move) {
        if (a < 0 || a >= action_count()) throw StructureError("action index out of range");
        code += a * stride;
        stride *= action_count();
    }
    return code;
}

MoveVector ConcurrentGame::decode_move(long long code) const {
    MoveVector move(player_count());
    for (int& a : move) {
        a = static_cast<int>(code % action_count());
        code /= action_count();
    }
    return move;
}

long long ConcurrentGame::encode_partial(std::span<const int> subset,
                                         std::span<const int> choice) const {
    if (subset.size() != choice.size()) throw StructureError("partial move arity mismatch");
    long long code = 0;
    for (size_t i = 0; i < subset.size(); ++i) {
        long long stride = 1;
        for (int p = 0; p < subset[i]; ++p) stride *= action_count();
        code += choice[i] * stride;
    }
    return code;
}

int ConcurrentGame::step(int state, const MoveVector& move) const {
    return table[state][encode_move(move)];
}

namespace {

void check_step(const ConcurrentGame& game, const LassoStep& step, int next_state,
                const char* part, size_t index) {
    if (step.state < 0 || step.state >= game.state_count())
        throw StructureError(std::string(part) + " step " + std::to_string(index) +
                             ": state out of range");
    int got = game.step(step.state, step.move);
    if (got != next_state)
        throw StructureError(std::string(part) + " step " + std::to_string(index) +
                             ": move leads to " + game.states[got] + ", lasso expects " +
                             game.states[next_state]);
}

}  // namespace

void validate_lasso(const ConcurrentGame& game, const LassoPlay& lasso) {
    if (lasso.cycle.empty()) throw StructureError("lasso cycle is empty");
    for (size_t i = 0; i < lasso.prefix.size(); ++i) {
        int next = i + 1 < lasso.prefix.size() ? lasso.prefix[i + 1].state : lasso.cycle[0].state;
        check_step(game, lasso.prefix[i], next, "prefix", i);
    }
    for (size_t i = 0; i < lasso.cycle.size(); ++i) {
        int next = i + 1 < lasso.cycle.size() ? lasso.cycle[i + 1].state : lasso.cycle[0].state;
        check_step(game, lasso.cycle[i], next, "cycle", i);
    }
}

LassoPlay canonical_lasso(const LassoPlay& lasso) {
    if (lasso.cycle.empty()) throw StructureError("lasso cycle is empty");
    LassoPlay out = lasso;
    int len = static_cast<int>(out.cycle.size());
    for (int period = 1; period <= len; ++period) {
        if (len % period != 0) continue;
        bool repeats = true;
        for (int i = period; i < len && repeats; ++i)
            repeats = out.cycle[i] == out.cycle[i - period];
        if (repeats) {
            out.cycle.resize(period);
            break;
        }
    }
    while (!out.prefix.empty() && out.prefix.back() == out.cycle.back()) {
        out.cycle.insert(out.cycle.begin(), out.cycle.back());
        out.cycle.pop_back();
        out.prefix.pop_back();
    }
    return out;
}

bool same_play(const LassoPlay& a, const LassoPlay& b) {
    LassoPlay ca = canonical_lasso(a), cb = canonical_lasso(b);
    return ca.prefix == cb.prefix && ca.cycle == cb.cycle;
}

Rational lasso_payoff(const ConcurrentGame& game, const LassoPlay& lasso, int player) {
    validate_lasso(game, lasso);
    long long total = 0;
    for (const LassoStep& step : lasso.cycle) total += game.weight(step.state, player);
    return Rational(total, static_cast<long long>(lasso.cycle.size()));
}

std::vector<Rational> lasso_payoffs(const ConcurrentGame& game, const LassoPlay& lasso) {
    validate_lasso(game, lasso);
    std::vector<Rational> out;
    out.reserve(game.player_count());
    for (int p = 0; p < game.player_count(); ++p) {
        long long total = 0;
        for (const LassoStep& step : lasso.cycle) total += game.weight(step.state, p);
        out.push_back(Rational(total, static_cast<long long>(lasso.cycle.size())));
    }
    return out;
}

PlayerSet deviators_move(const MoveVector& played, const MoveVector& prescribed) {
    if (played.size() != prescribed.size()) throw StructureError("move vector arity mismatch");
    PlayerSet out = 0;
    for (size_t p = 0; p < played.size(); ++p)
        if (played[p] != prescribed[p]) out = with_player(out, static_cast<int>(p));
    return out;
}

const std::vector<int>& StrategyMachine::output(int mem, int state) const {
    for (const OutputRule& rule : outputs)
        if (rule.memory == mem && rule.state == state) return rule.choice;
    throw StructureError("no output rule for memory " + std::to_string(mem) + ", state " +
                         std::to_string(state));
}

int StrategyMachine::update(int mem, int state, const MoveVector& observed) const {
    for (const UpdateRule& rule : updates) {
        if (rule.memory != mem) continue;
        if (rule.state != kAnyState && rule.state != state) continue;
        if (rule.observed.size() != observed.size())
            throw StructureError("update rule observed-move arity mismatch");
        bool match = true;
        for (size_t p = 0; p < observed.size() && match; ++p)
            match = rule.observed[p] == kAnyAction || rule.observed[p] == observed[p];
        if (match) return rule.next_memory;
    }
    throw StructureError("no update rule for memory " + std::to_string(mem) + ", state " +
                         std::to_string(state));
}

namespace {

MoveVector realized_move(const StrategyMachine& profile, const StrategyMachine& deviation,
                         const std::vector<int>& owner_list, int state, int prof_mem,
                         int dev_mem) {
    MoveVector move = profile.output(prof_mem, state);
    const std::vector<int>& choice = deviation.output(dev_mem, state);
    if (choice.size() != owner_list.size())
        throw StructureError("coalition strategy choice arity mismatch");
    for (size_t i = 0; i < owner_list.size(); ++i) move[owner_list[i]] = choice[i];
    return move;
}

LassoPlay split_walk(std::vector<LassoStep> walk, size_t loop_start) {
    LassoPlay out;
    out.prefix.assign(walk.begin(), walk.begin() + loop_start);
    out.cycle.assign(walk.begin() + loop_start, walk.end());
    return out;
}

}  // namespace

LassoPlay outcome(const ConcurrentGame& game, const StrategyMachine& profile) {
    if (profile.owners != full_set(game.player_count()))
        throw StructureError("outcome requires a full strategy profile");
    std::map<std::pair<int, int>, size_t> seen;
    std::vector<LassoStep> walk;
    int state = game.initial, mem = profile.initial_memory;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_pair(state, mem), walk.size());
        if (!fresh) return split_walk(std::move(walk), it->second);
        MoveVector move = profile.output(mem, state);
        walk.push_back({state, move});
        mem = profile.update(mem, state, move);
        state = game.step(state, move);
    }
}

LassoPlay coalition_outcome(const ConcurrentGame& game, const StrategyMachine& profile,
                            const StrategyMachine& deviation, PlayerSet coalition) {
    if (profile.owners != full_set(game.player_count()))
        throw StructureError("coalition_outcome requires a full strategy profile");
    if (deviation.owners != coalition)
        throw StructureError("coalition strategy owners do not match the coalition");
    std::vector<int> owner_list = players_of(coalition);
    std::map<std::tuple<int, int, int>, size_t> seen;
    std::vector<LassoStep> walk;
    int state = game.initial, prof_mem = profile.initial_memory,
        dev_mem = deviation.initial_memory;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_tuple(state, prof_mem, dev_mem), walk.size());
        if (!fresh) return split_walk(std::move(walk), it->second);
        MoveVector move = realized_move(profile, deviation, owner_list, state, prof_mem, dev_mem);
        walk.push_back({state, move});
        prof_mem = profile.update(prof_mem, state, move);
        dev_mem = deviation.update(dev_mem, state, move);
        state = game.step(state, move);
    }
}

PlayerSet deviators_of_lasso(const ConcurrentGame& game, const LassoPlay& lasso,
                             const StrategyMachine& profile) {
    if (profile.owners != full_set(game.player_count()))
        throw StructureError("deviators_of_lasso requires a full strategy profile");
    validate_lasso(game, lasso);
    PlayerSet devs = 0;
    int mem = profile.initial_memory;
    for (const LassoStep& step : lasso.prefix) {
        devs |= deviators_move(step.move, profile.output(mem, step.state));
        mem = profile.update(mem, step.state, step.move);
    }
    std::set<std::pair<int, PlayerSet>> seen_at_start;
    while (seen_at_start.insert({mem, devs}).second) {
        for (const LassoStep& step : lasso.cycle) {
            devs |= deviators_move(step.move, profile.output(mem, step.state));
            mem = profile.update(mem, step.state, step.move);
        }
    }
    return devs;
}

StrategyMachine lasso_replay_machine(const ConcurrentGame& game, const LassoPlay& lasso,
                                     PlayerSet coalition) {
    validate_lasso(game, lasso);
    std::vector<int> owner_list = players_of(coalition);
    int prefix_len = static_cast<int>(lasso.prefix.size());
    int total = prefix_len + static_cast<int>(lasso.cycle.size());
    StrategyMachine m;
    m.owners = coalition;
    m.initial_memory = 0;
    for (int i = 0; i < total; ++i) {
        m.memory.push_back("t" + std::to_string(i));
        const LassoStep& step =
            i < prefix_len ? lasso.prefix[i] : lasso.cycle[i - prefix_len];
        std::vector<int> choice;
        for (int p : owner_list) choice.push_back(step.move[p]);
        m.outputs.push_back({i, step.state, std::move(choice)});
        int next = i + 1 < total ? i + 1 : prefix_len;
        m.updates.push_back({i, kAnyState, MoveVector(game.player_count(), kAnyAction), next});
    }
    return m;
}

}  // namespace robusteq
