#include "robusteq/solver.hpp"

#include <random>

#include "robusteq/errors.hpp"

#include "doctest.h"
#include "fixtures.hpp"
#include "random_games.hpp"

using namespace robusteq;
using namespace robusteq::testing;

namespace {

// One player who can idle on a worthless loop or move to a valuable sink.
ConcurrentGame drift_game() {
    ConcurrentGame g;
    g.players = {"A1"};
    g.actions = {"stay", "go"};
    g.states = {"low", "high"};
    g.initial = 0;
    g.weights = {{0}, {1}};
    g.rules.resize(2);
    g.rules[0].push_back({{0}, 0});
    g.rules[0].push_back({{kAnyAction}, 1});
    g.rules[1].push_back({{kAnyAction}, 1});
    g.finalize();
    return g;
}

// Matching pennies with absorbing outcomes: the matcher scores on equal
// actions, the evader on distinct ones. No profile survives a lone deviator.
ConcurrentGame pennies_game() {
    ConcurrentGame g;
    g.players = {"A1", "A2"};
    g.actions = {"h", "t"};
    g.states = {"toss", "win1", "win2"};
    g.initial = 0;
    g.weights = {{0, 0}, {1, 0}, {0, 1}};
    g.rules.resize(3);
    g.rules[0].push_back({{0, 0}, 1});
    g.rules[0].push_back({{1, 1}, 1});
    g.rules[0].push_back({{kAnyAction, kAnyAction}, 2});
    g.rules[1].push_back({{kAnyAction, kAnyAction}, 1});
    g.rules[2].push_back({{kAnyAction, kAnyAction}, 2});
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("drift game keeps only the sink payoff against a deviator") {
    ConcurrentGame g = drift_game();
    SearchOutcome out = solve_robustness(g, {1, 0, Rational(0)});
    REQUIRE(out.decision == Decision::Yes);
    CHECK(out.payoff == std::vector<Rational>{Rational(1)});

    // Without deviations to deter, the idle loop comes first in the scan.
    SearchOutcome loose = solve_robustness(g, {0, 0, Rational(0)});
    REQUIRE(loose.decision == Decision::Yes);
    CHECK(loose.payoff == std::vector<Rational>{Rational(0)});

    CHECK_THROWS_AS(solve_robustness(g, {0, 0, Rational(-1)}), StructureError);
    CHECK_THROWS_AS(solve_robustness(g, {-1, 0, Rational(0)}), StructureError);
}

TEST_CASE("matching pennies admits no single-deviator equilibrium") {
    ConcurrentGame g = pennies_game();
    SearchOutcome out = solve_robustness(g, {1, 0, Rational(0)});
    CHECK(out.decision == Decision::No);

    // Both sinks are refuted and the game has no other cycle, so the "no"
    // stands even when the budget leaves no room for the payoff grid.
    SearchConfig tight;
    tight.candidate_budget = 2;
    SearchOutcome stuck = solve_robustness(g, {1, 0, Rational(0)}, tight);
    CHECK(stuck.decision == Decision::No);
    CHECK(stuck.note.empty());

    // A detour state turns toss into a real cycle. Paying the evader on the
    // detour keeps it from serving as a punishment loop, so no realized
    // payoff survives; the starved budget then has a grid to skip and the
    // query stays open.
    ConcurrentGame breather = pennies_game();
    breather.states.push_back("back");
    breather.weights.push_back({0, 1});
    breather.rules[0].insert(breather.rules[0].begin() + 2, {{1, 0}, 3});
    breather.rules.push_back({{{kAnyAction, kAnyAction}, 0}});
    breather.finalize();
    SearchOutcome open = solve_robustness(breather, {1, 0, Rational(0)}, tight);
    CHECK(open.decision == Decision::Inconclusive);
    CHECK(!open.note.empty());

    // With nothing to deter, the first absorbing payoff is an equilibrium.
    SearchOutcome free = solve_robustness(g, {0, 0, Rational(0)});
    REQUIRE(free.decision == Decision::Yes);
    CHECK(free.payoff == std::vector<Rational>{Rational(1), Rational(0)});

    // Oversized coalition bounds collapse to the player count.
    SearchOutcome big = solve_robustness(g, {7, 9, Rational(0)});
    SearchOutcome two = solve_robustness(g, {3, 2, Rational(0)});
    CHECK(big.decision == two.decision);
    CHECK(big.payoff == two.payoff);
}

TEST_CASE("solver outcomes are identical across worker counts") {
    ConcurrentGame g = pennies_game();
    std::vector<SearchOutcome> runs;
    for (int workers : {1, 4}) {
        SearchConfig cfg;
        cfg.workers = workers;
        runs.push_back(solve_robustness(g, {1, 1, Rational(1, 2)}, cfg));
    }
    CHECK(runs[0].decision == runs[1].decision);
    CHECK(runs[0].payoff == runs[1].payoff);
    CHECK(runs[0].threshold == runs[1].threshold);
    CHECK(runs[0].note == runs[1].note);
}

TEST_CASE("relaxing any bound preserves a yes") {
    std::mt19937_64 rng(90125);
    int yes_seen = 0;
    for (int attempt = 0; attempt < 120 && yes_seen < 8; ++attempt) {
        ConcurrentGame g = random_game(rng, 2, 2, 2, 1);
        int k = 1 + static_cast<int>(rng() % 2);
        int t = 1;
        Rational r(static_cast<long long>(rng() % 2), 2);
        SearchConfig cfg;
        SearchOutcome out = solve_robustness(g, {k, t, r}, cfg);
        if (out.decision != Decision::Yes) continue;
        ++yes_seen;
        CHECK(solve_robustness(g, {k - 1, t, r}, cfg).decision == Decision::Yes);
        CHECK(solve_robustness(g, {k, t - 1, r}, cfg).decision == Decision::Yes);
        CHECK(solve_robustness(g, {k, t, r + 1}, cfg).decision == Decision::Yes);
    }
    CHECK(yes_seen == 8);
}
