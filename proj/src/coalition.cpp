#include "robusteq/coalition.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "robusteq/errors.hpp"

namespace robusteq {

std::vector<CoalitionExit> coalition_exits(const ConcurrentGame& game, PlayerSet devs) {
    int n = game.player_count();
    if ((devs & ~full_set(n)) != 0) throw StructureError("deviator set names unknown players");
    std::vector<int> free_players;
    for (int p = 0; p < n; ++p)
        if (!contains(devs, p)) free_players.push_back(p);

    std::vector<MoveVector> decoded(game.move_total);
    for (long long code = 0; code < game.move_total; ++code)
        decoded[code] = game.decode_move(code);

    std::set<CoalitionExit> out;
    for (int s = 0; s < game.state_count(); ++s) {
        std::vector<int> alpha(free_players.size(), 0);
        do {
            for (long long code = 0; code < game.move_total; ++code) {
                PlayerSet grown = devs;
                for (std::size_t i = 0; i < free_players.size(); ++i)
                    if (decoded[code][free_players[i]] != alpha[i])
                        grown = with_player(grown, free_players[i]);
                if (grown != devs) out.insert({game.step(s, code), grown});
            }
        } while (next_assignment(alpha, game.action_count()));
    }
    return {out.begin(), out.end()};
}

CoalitionValue::CoalitionValue(const ConcurrentGame& game, const MultiWeightSpec& spec,
                               std::vector<Rational> bound, unsigned long long spoiler_budget)
    : game_(&game), spec_(&spec), bound_(std::move(bound)), budget_(spoiler_budget) {
    if (&spec.game() != &game) throw StructureError("weight spec built for a different game");
    if (static_cast<int>(bound_.size()) != spec.dims())
        throw StructureError("threshold bound arity does not match the weights");
    for (Rational& b : bound_)
        if (b < -spec.cap()) b = Rational(-spec.cap());
}

const std::vector<bool>& CoalitionValue::winning(PlayerSet devs) {
    if (auto it = memo_.find(devs); it != memo_.end()) return it->second;
    int n = game_->player_count();
    if ((devs & ~full_set(n)) != 0) throw StructureError("deviator set names unknown players");
    int ns = game_->state_count();
    long long cap = spec_->cap();

    int size = set_size(devs);
    if (size > std::max(spec_->resilience_bound(), spec_->immunity_bound())) {
        // Every dimension carries the cap from here on, whatever anyone does.
        bool ok = true;
        for (const Rational& b : bound_)
            if (b > cap) ok = false;
        return memo_.emplace(devs, std::vector<bool>(ns, ok)).first->second;
    }

    int sink = ns;
    TwoPlayerGame arena;
    arena.start = 0;
    arena.weights.resize(ns + 1);
    arena.moves.resize(ns + 1);
    for (int s = 0; s < ns; ++s) arena.weights[s] = spec_->weight_vector(s, devs);
    arena.weights[sink].assign(spec_->dims(), -cap - 1);
    arena.moves[sink] = {{sink}};

    for (int s = 0; s < ns; ++s) {
        // Split the players three ways per state: free players whose action
        // can move the state (their proposals matter twice over), deviators
        // in the support (they pick the answer), and free players outside it
        // (any nonempty subset of them can join the deviators without
        // steering the play). Everyone else is irrelevant here.
        std::vector<int> sup_free, sup_dev, idle_free;
        for (int p = 0; p < n; ++p) {
            if (contains(game_->supports[s], p))
                (contains(devs, p) ? sup_dev : sup_free).push_back(p);
            else if (!contains(devs, p))
                idle_free.push_back(p);
        }
        std::vector<PlayerSet> joiners(std::size_t{1} << idle_free.size(), 0);
        for (std::size_t m = 1; m < joiners.size(); ++m)
            for (std::size_t i = 0; i < idle_free.size(); ++i)
                if (m & (std::size_t{1} << i))
                    joiners[m] = with_player(joiners[m], idle_free[i]);

        std::vector<std::vector<int>> options;
        std::set<std::vector<int>> seen;
        MoveVector move(n, 0);
        std::vector<int> alpha(sup_free.size(), 0);
        do {
            std::set<int> choices;
            std::vector<int> beta(sup_dev.size(), 0);
            do {
                for (std::size_t i = 0; i < sup_free.size(); ++i) move[sup_free[i]] = alpha[i];
                for (std::size_t i = 0; i < sup_dev.size(); ++i) move[sup_dev[i]] = beta[i];
                choices.insert(game_->step(s, move));
            } while (next_assignment(beta, game_->action_count()));

            bool exit_lost = false;
            if (game_->action_count() > 1) {
                std::vector<int> gamma(sup_free.size(), 0);
                do {
                    PlayerSet steering = devs;
                    for (std::size_t i = 0; i < sup_free.size(); ++i) {
                        move[sup_free[i]] = gamma[i];
                        if (gamma[i] != alpha[i])
                            steering = with_player(steering, sup_free[i]);
                    }
                    beta.assign(sup_dev.size(), 0);
                    do {
                        for (std::size_t i = 0; i < sup_dev.size(); ++i)
                            move[sup_dev[i]] = beta[i];
                        int to = game_->step(s, move);
                        for (PlayerSet extra : joiners) {
                            PlayerSet grown = steering | extra;
                            if (grown != devs && !winning(grown)[to]) {
                                exit_lost = true;
                                break;
                            }
                        }
                        if (exit_lost) break;
                    } while (next_assignment(beta, game_->action_count()));
                    if (exit_lost) break;
                } while (next_assignment(gamma, game_->action_count()));
            }

            std::vector<int> option(choices.begin(), choices.end());
            if (exit_lost) option.push_back(sink);
            if (seen.insert(option).second) options.push_back(std::move(option));
        } while (next_assignment(alpha, game_->action_count()));

        // An option containing another only hands the opponents extra
        // answers; keep the minimal ones.
        std::vector<std::vector<int>> kept;
        for (const auto& option : options) {
            bool covered = false;
            for (const auto& other : options) {
                if (other.size() < option.size() &&
                    std::includes(option.begin(), option.end(), other.begin(), other.end())) {
                    covered = true;
                    break;
                }
            }
            if (!covered) kept.push_back(option);
        }
        arena.moves[s] = std::move(kept);
    }

    std::vector<bool> win;
    try {
        win = value_ensure_states(arena, {spec_->inf_dims(), spec_->sup_dims(), bound_},
                                  budget_);
    } catch (const BudgetError& e) {
        throw BudgetError(std::string(e.what()) + " for a coalition of " +
                              std::to_string(size) + " deviators",
                          e.count);
    }
    win.resize(ns);
    return memo_.emplace(devs, std::move(win)).first->second;
}

bool CoalitionValue::initial() { return winning(0)[game_->initial]; }

}  // namespace robusteq
