// End-to-end acceptance checks. Every criterion cross-validates a solver
// component against an independent oracle (brute force, enumeration, or a
// second code path) and prints exactly one PASS/FAIL line. The binary exits
// nonzero when any criterion fails. Pass --bin=PATH to the robusteq binary
// so the report-determinism criterion can spawn it.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "robusteq/coalition.hpp"
#include "robusteq/deviator.hpp"
#include "robusteq/digraph.hpp"
#include "robusteq/errors.hpp"
#include "robusteq/game.hpp"
#include "robusteq/io.hpp"
#include "robusteq/meanpayoff.hpp"
#include "robusteq/qbf.hpp"
#include "robusteq/solver.hpp"
#include "robusteq/verify.hpp"

#include "fixtures.hpp"
#include "graph_brute.hpp"
#include "random_games.hpp"

using namespace robusteq;
using namespace robusteq::testing;

namespace {

struct Tally {
    long long checks = 0;
    long long failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first = what;
    }
};

struct Line {
    bool pass = false;
    std::string name;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_secs(double s) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << s << "s";
    return out.str();
}

// Every yes answer must survive asking for less: fewer tolerated deviators,
// fewer protected bystanders, a larger allowed payoff drop.
struct MonotoneLog {
    long long held = 0;
    long long broken = 0;

    void weaken(const ConcurrentGame& g, const RobustnessQuery& q, const SearchConfig& cfg) {
        auto expect_yes = [&](RobustnessQuery weaker) {
            bool yes = solve_robustness(g, weaker, cfg).decision == Decision::Yes;
            (yes ? held : broken) += 1;
        };
        if (q.resilience > 0) expect_yes({q.resilience - 1, q.immunity, q.radius});
        if (q.immunity > 0) expect_yes({q.resilience, q.immunity - 1, q.radius});
        expect_yes({q.resilience, q.immunity, q.radius + 1});
    }
};

// ---------------------------------------------------------------------------
// 1. Generated hardness instances agree with direct formula evaluation.

QbfFormula random_formula(std::mt19937_64& rng, int variables) {
    QbfFormula f;
    f.variables = variables;
    int clauses = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < clauses; ++j) {
        std::array<int, 3> clause;
        for (int& lit : clause) {
            int var = 1 + static_cast<int>(rng() % variables);
            lit = rng() % 2 ? var : -var;
        }
        f.clauses.push_back(clause);
    }
    return f;
}

Line run_hardness_corpus(MonotoneLog& mono) {
    Line line{false, "hardness corpus ground truth", ""};
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(410211);

    std::vector<QbfFormula> corpus;
    QbfFormula sample;
    sample.variables = 4;
    sample.clauses.push_back({1, 2, -3});
    sample.clauses.push_back({-2, 3, 4});
    corpus.push_back(sample);
    while (corpus.size() < 44)
        corpus.push_back(random_formula(rng, corpus.size() % 2 == 0 ? 2 : 4));

    int mismatches = 0, valid = 0;
    for (const QbfFormula& f : corpus) {
        bool truth = qbf_eval(f);
        valid += truth;
        CompiledGame compiled = compile_game(f);
        SearchConfig cfg;
        SearchOutcome out = solve_robustness(compiled.game, compiled.query, cfg);
        if (out.decision != (truth ? Decision::Yes : Decision::No)) {
            ++mismatches;
            continue;
        }
        if (out.decision == Decision::Yes) mono.weaken(compiled.game, compiled.query, cfg);
    }

    double secs = seconds_since(start);
    int total = static_cast<int>(corpus.size());
    line.pass = mismatches == 0 && total >= 40 && valid >= 5 && total - valid >= 5 &&
                secs <= 600.0;
    std::ostringstream detail;
    detail << total << " formulas (" << valid << " valid), " << mismatches << " mismatches, "
           << fmt_secs(secs);
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 2. Outcome annotations name exactly the players who ever left the profile.

Line run_deviator_paths() {
    Line line{false, "deviator path annotation", ""};
    std::mt19937_64 rng(520101);
    Tally t;
    int cases = 0, with_deviators = 0;
    while (cases < 1050) {
        ConcurrentGame g = random_game(rng, 3, 5, 3, 2);
        StrategyMachine profile = random_profile(rng, g, 2);
        PlayerSet everyone = full_set(g.player_count());
        PlayerSet coalition = static_cast<PlayerSet>(rng()) & everyone;
        StrategyMachine deviation = random_coalition_strategy(rng, g, coalition, 2);

        DeviatorLasso lasso = deviator_outcome(g, profile, deviation, coalition);
        try {
            validate_deviator_lasso(g, lasso);
        } catch (const StructureError&) {
            t.expect(false, "outcome lasso fails validation");
            ++cases;
            continue;
        }

        // Forward direction: each annotation is precisely the set of players
        // who mismatched earlier; backward direction: every mismatch lands in
        // all later annotations. Walking with a running union checks both.
        PlayerSet acc = 0;
        auto walk = [&](const std::vector<DeviatorStep>& steps) {
            for (const DeviatorStep& step : steps) {
                t.expect(step.state.devs == acc, "annotation is not the mismatch union");
                PlayerSet moved = deviators_move(step.actual, step.proposed);
                t.expect((moved & ~coalition) == 0, "deviation outside the coalition");
                acc |= moved;
            }
        };
        walk(lasso.prefix);
        PlayerSet entering = acc;
        walk(lasso.cycle);
        t.expect(acc == entering, "cycle admits fresh deviations");
        t.expect(limit_deviators(lasso) == acc, "limit set disagrees with the union");

        if (acc != 0) ++with_deviators;
        ++cases;
    }
    line.pass = t.failures == 0 && cases >= 1000 && with_deviators >= 100 &&
                cases - with_deviators >= 100;
    std::ostringstream detail;
    detail << cases << " plays (" << with_deviators << " with deviators), " << t.checks
           << " checks";
    if (t.failures > 0) detail << ", first failure: " << t.first;
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 3. Objective predicates match the threshold reading of the weight layers.

Line run_objective_dimensions() {
    Line line{false, "objective dimension agreement", ""};
    std::mt19937_64 rng(920301);
    Tally t;
    int faithful = 0, deviated = 0;
    for (int it = 0; it < 520; ++it) {
        ConcurrentGame g = random_game(rng, 3, 4, 3, 2);
        int n = g.player_count();
        long long cap = g.weight_bound;
        DeviatorLasso lasso = random_deviator_lasso(rng, g, 8);
        int k = static_cast<int>(rng() % (n + 2));
        int tt = static_cast<int>(rng() % (n + 2));
        Rational r(static_cast<long long>(rng() % 4), 2);
        MultiWeightSpec spec = build_weights(g, k, tt);

        std::vector<Rational> p(n);
        if (it % 3 == 0) {
            p = lasso_payoffs(g, project_lasso(lasso));
        } else {
            for (auto& x : p)
                x = Rational(static_cast<long long>(rng() % (4 * cap + 1)) - 2 * cap, 2);
        }

        auto means = lasso_dimension_means(spec, lasso);
        bool cap_dims = true, protect_dims = true, pin_dims = true;
        for (int i = 0; i < n; ++i) {
            if (means[n + i] < -p[i]) cap_dims = false;
            if (means[i] < p[i] - r) protect_dims = false;
            if (means[2 * n + i] < p[i] || means[3 * n + i] < -p[i]) pin_dims = false;
        }
        t.expect(resilience_obj(g, lasso, k, p) == cap_dims, "resilience layer");
        t.expect(immunity_obj(g, lasso, tt, r, p) == protect_dims, "immunity layer");
        t.expect(robustness_obj(g, lasso, k, tt, r, p) == (cap_dims && protect_dims),
                 "robustness conjunction");

        PlayerSet limit = limit_deviators(lasso);
        bool payoff_is_p = limit != 0 || lasso_payoffs(g, project_lasso(lasso)) == p;
        t.expect(payoff_is_p == pin_dims, "payoff pin layers");
        (limit == 0 ? faithful : deviated) += 1;
    }
    line.pass = t.failures == 0 && t.checks >= 4 * 500 && faithful >= 50 && deviated >= 50;
    std::ostringstream detail;
    detail << "520 lassos (" << faithful << " faithful, " << deviated << " deviated), "
           << t.checks << " checks";
    if (t.failures > 0) detail << ", first failure: " << t.first;
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 4. The coalition recursion equals plain fixpoints on the materialized game.

Line run_coalition_split() {
    Line line{false, "coalition split equivalence", ""};
    std::mt19937_64 rng(630701);
    Tally t;
    int games = 0, three_player = 0;
    long long won = 0, lost = 0;
    for (int attempt = 0; attempt < 6000 && games < 105; ++attempt) {
        ConcurrentGame g = random_game(rng, 3, 4, 2, 1);
        int n = g.player_count();
        int k = static_cast<int>(rng() % (n + 2));
        int tt = static_cast<int>(rng() % (n + 1));
        MultiWeightSpec spec = build_weights(g, k, tt);
        DeviatorArena mat = materialize_deviator_game(g, spec);

        // Skip instances whose spoiler space dwarfs the search budget; the
        // direct side could not finish on them anyway.
        unsigned long long spoilers = 1;
        for (const auto& options : mat.arena.moves)
            for (const auto& option : options)
                if (option.size() > 1) spoilers *= option.size();
        if (spoilers > 8192) continue;

        long long cap = spec.cap();
        int rounds = 0;
        for (int trial = 0; trial < 14 && rounds < 5; ++trial) {
            std::vector<Rational> bound(spec.dims());
            for (Rational& b : bound) {
                long long num;
                if (rng() % 4 != 0)
                    num = -static_cast<long long>(rng() % (2 * cap + 3));
                else
                    num = static_cast<long long>(rng() % (2 * cap + 2)) - cap;
                b = Rational(num) / static_cast<long long>(1 + rng() % 2);
            }
            std::vector<bool> direct;
            try {
                direct = value_ensure_states(mat.arena,
                                             {spec.inf_dims(), spec.sup_dims(), bound},
                                             1ull << 20);
            } catch (const BudgetError&) {
                continue;
            }
            CoalitionValue split(g, spec, bound, 1ull << 20);
            for (std::size_t i = 0; i < mat.vertices.size(); ++i) {
                bool via_split = split.winning(mat.vertices[i].devs)[mat.vertices[i].base];
                t.expect(via_split == direct[i], "split and direct winners differ");
                (direct[i] ? won : lost) += 1;
            }
            ++rounds;
        }
        if (rounds >= 5) {
            ++games;
            if (n == 3) ++three_player;
        }
    }
    line.pass = t.failures == 0 && games >= 100 && won > 100 && lost > 100;
    std::ostringstream detail;
    detail << games << " games (" << three_player << " with three players), five thresholds"
           << " each, " << won << " winning / " << lost << " losing vertices";
    if (t.failures > 0) detail << ", first failure: " << t.first;
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 5. On tiny binary-weight games the solver never contradicts an exhaustive
//    positional search double-checked by the verifier.

ConcurrentGame random_binary_game(std::mt19937_64& rng) {
    ConcurrentGame g;
    int players = 1 + static_cast<int>(rng() % 2);
    int states = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < players; ++i) g.players.push_back("A" + std::to_string(i + 1));
    g.actions = {"a", "b"};
    for (int i = 0; i < states; ++i) g.states.push_back("s" + std::to_string(i));
    g.initial = 0;
    g.weights.assign(states, std::vector<long long>(players));
    for (auto& row : g.weights)
        for (auto& w : row) w = static_cast<long long>(rng() % 2);
    g.rules.resize(states);
    for (int s = 0; s < states; ++s) {
        int extra = static_cast<int>(rng() % 3);
        for (int i = 0; i < extra; ++i) {
            MoveVector mv(players);
            for (int& a : mv) a = rng() % 3 == 0 ? kAnyAction : static_cast<int>(rng() % 2);
            g.rules[s].push_back({mv, static_cast<int>(rng() % states)});
        }
        g.rules[s].push_back({MoveVector(players, kAnyAction), static_cast<int>(rng() % states)});
    }
    g.finalize();
    return g;
}

StrategyMachine positional_profile(const ConcurrentGame& g, long long code) {
    StrategyMachine m;
    m.memory = {"m0"};
    m.owners = full_set(g.player_count());
    for (int s = 0; s < g.state_count(); ++s) {
        MoveVector mv(g.player_count());
        for (int& a : mv) {
            a = static_cast<int>(code % 2);
            code /= 2;
        }
        m.outputs.push_back({0, s, mv});
    }
    m.updates.push_back({0, kAnyState, MoveVector(g.player_count(), kAnyAction), 0});
    return m;
}

Line run_positional_cross_check(MonotoneLog& mono) {
    Line line{false, "positional profile cross-check", ""};
    std::mt19937_64 rng(740111);
    Tally t;
    int combos = 0, yes = 0, no = 0, witnessed = 0;
    const std::vector<RobustnessQuery> queries = {
        {1, 0, Rational(0)},
        {2, 0, Rational(0)},
        {1, 1, Rational(0)},
        {1, 0, Rational(1, 2)},
    };
    for (int round = 0; round < 48; ++round) {
        ConcurrentGame g = random_binary_game(rng);
        long long profiles = 1;
        for (int s = 0; s < g.state_count(); ++s) profiles *= 1ll << g.player_count();
        for (const RobustnessQuery& q : queries) {
            SearchConfig cfg;
            cfg.denominator_bound = 12;
            SearchOutcome out = solve_robustness(g, q, cfg);
            t.expect(out.decision != Decision::Inconclusive, "solver hedged on a tiny game");

            bool any_robust = false;
            for (long long code = 0; code < profiles && !any_robust; ++code)
                any_robust = verify_profile(g, positional_profile(g, code), q).robust;

            // Sound direction: a checked profile is an existence proof, so a
            // "no" in its presence would be a genuine contradiction. A "yes"
            // without a positional witness is fine; some need memory.
            if (any_robust) {
                ++witnessed;
                t.expect(out.decision == Decision::Yes,
                         "verified profile but the solver said no");
            }
            if (out.decision == Decision::Yes) {
                ++yes;
                mono.weaken(g, q, cfg);
            } else if (out.decision == Decision::No) {
                ++no;
            }
            ++combos;
        }
    }
    line.pass = t.failures == 0 && combos == 48 * 4 && yes > 20 && no > 20 && witnessed > 20;
    std::ostringstream detail;
    detail << combos << " game/query pairs: " << yes << " yes, " << no << " no, " << witnessed
           << " with positional witnesses";
    if (t.failures > 0) detail << ", first failure: " << t.first;
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 6. Graph-level oracles: extreme cycle means against simple-cycle
//    enumeration, and flow achievability against explicit cycle mixes.

bool flow_ok(const WeightedDigraph& g, const ThresholdQuery& q, const FlowCertificate& cert) {
    std::set<int> comp(cert.component.begin(), cert.component.end());
    auto good = [&](const std::vector<Rational>& flow, std::vector<int> need) {
        if (flow.size() != g.edges.size()) return false;
        Rational total = 0;
        std::map<int, Rational> net;
        for (std::size_t e = 0; e < flow.size(); ++e) {
            if (flow[e] < 0) return false;
            if (flow[e] == 0) continue;
            if (!comp.count(g.edges[e].from) || !comp.count(g.edges[e].to)) return false;
            total += flow[e];
            net[g.edges[e].from] += flow[e];
            net[g.edges[e].to] -= flow[e];
        }
        if (total != Rational(1)) return false;
        for (const auto& [vertex, balance] : net) {
            (void)vertex;
            if (balance != Rational(0)) return false;
        }
        for (int dim : need) {
            Rational mean = 0;
            for (std::size_t e = 0; e < flow.size(); ++e)
                if (flow[e] != 0) mean += flow[e] * Rational(g.edges[e].w[dim]);
            if (mean < q.bound[dim]) return false;
        }
        return true;
    };
    if (!good(cert.base_flow, q.inf_dims)) return false;
    std::set<int> covered;
    for (const auto& [dim, flow] : cert.sup_flows) {
        std::vector<int> need = q.inf_dims;
        need.push_back(dim);
        if (!good(flow, need)) return false;
        covered.insert(dim);
    }
    for (int dim : q.sup_dims)
        if (!covered.count(dim)) return false;
    return true;
}

Line run_numeric_oracles() {
    Line line{false, "cycle and flow oracles", ""};
    Tally t;

    // Extreme mean cycles against full enumeration.
    std::mt19937_64 rng(850901);
    int with_cycles = 0;
    for (int it = 0; it < 200; ++it) {
        WeightedDigraph g = random_graph(rng, 8, 2, 5);
        auto cycles = brute_reachable_cycles(g);
        for (int dim = 0; dim < 2; ++dim) {
            for (Sense sense : {Sense::Max, Sense::Min}) {
                auto got = extreme_mean_cycle(g, dim, sense);
                if (cycles.empty()) {
                    t.expect(!got.has_value(), "cycle reported in an acyclic graph");
                    continue;
                }
                if (!got.has_value()) {
                    t.expect(false, "missed an existing cycle");
                    continue;
                }
                ++with_cycles;
                Rational best = cycle_mean(g, cycles[0].edges, dim);
                for (const auto& c : cycles) {
                    Rational mean = cycle_mean(g, c.edges, dim);
                    if (sense == Sense::Max ? mean > best : mean < best) best = mean;
                }
                t.expect(got->value == best, "extreme mean differs from enumeration");
                t.expect(!got->edges.empty() && cycle_mean(g, got->edges, dim) == got->value,
                         "witness cycle does not attain the reported mean");
            }
        }
    }

    // Flow achievability: an explicit mix of up to three cycles with a small
    // denominator is achievable; a bound above every cycle mean is not.
    std::mt19937_64 rng2(700411);
    int built = 0, bumped = 0;
    for (int it = 0; it < 2000 && built < 200; ++it) {
        WeightedDigraph g = random_graph(rng2, 6, 3, 3);
        auto cycles = brute_reachable_cycles(g);
        auto part = sccs(g);
        if (cycles.empty()) {
            ThresholdQuery q{{0, 1, 2}, {}, std::vector<Rational>(3, Rational(-100))};
            t.expect(!one_player_achievable(g, q).has_value(), "achievable without cycles");
            continue;
        }

        std::map<int, std::vector<int>> by_component;
        for (std::size_t c = 0; c < cycles.size(); ++c)
            by_component[part.component_of[g.edges[cycles[c].edges[0]].from]].push_back(
                static_cast<int>(c));
        auto it_comp = by_component.begin();
        std::advance(it_comp, rng2() % by_component.size());
        const auto& pool = it_comp->second;
        int take = 1 + static_cast<int>(rng2() % std::min<std::size_t>(3, pool.size()));
        std::vector<int> chosen;
        std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), take, rng2);
        std::vector<long long> parts(chosen.size());
        long long denom = 0;
        for (auto& x : parts) {
            x = 1 + static_cast<long long>(rng2() % 2);
            denom += x;
        }
        std::vector<Rational> target(3, Rational(0));
        for (std::size_t j = 0; j < chosen.size(); ++j)
            for (int dim = 0; dim < 3; ++dim)
                target[dim] +=
                    Rational(parts[j], denom) * cycle_mean(g, cycles[chosen[j]].edges, dim);

        ThresholdQuery q;
        q.bound = target;
        for (int dim = 0; dim < 3; ++dim) {
            switch (rng2() % 3) {
                case 0: q.inf_dims.push_back(dim); break;
                case 1: q.sup_dims.push_back(dim); break;
                default: break;
            }
        }
        auto cert = one_player_achievable(g, q);
        t.expect(cert.has_value(), "explicit cycle mix rejected");
        if (cert.has_value())
            t.expect(flow_ok(g, q, *cert), "certificate fails re-substitution");
        ++built;

        std::vector<int> constrained = q.inf_dims;
        constrained.insert(constrained.end(), q.sup_dims.begin(), q.sup_dims.end());
        if (!constrained.empty()) {
            int hard = constrained[rng2() % constrained.size()];
            Rational top = cycle_mean(g, cycles[0].edges, hard);
            for (const auto& c : cycles) top = std::max(top, cycle_mean(g, c.edges, hard));
            ThresholdQuery impossible = q;
            impossible.bound[hard] = top + Rational(1, 7);
            t.expect(!one_player_achievable(g, impossible).has_value(),
                     "target above every cycle mean accepted");
            ++bumped;
        }
    }

    line.pass = t.failures == 0 && with_cycles >= 200 && built >= 200 && bumped >= 100;
    std::ostringstream detail;
    detail << "200 graphs (" << with_cycles << " cyclic checks), " << built << " mixes, "
           << bumped << " impossible bumps";
    if (t.failures > 0) detail << ", first failure: " << t.first;
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 7. Aggregated monotonicity results collected while running 1 and 5.

Line run_monotonicity(const MonotoneLog& mono) {
    Line line{false, "query monotonicity", ""};
    line.pass = mono.broken == 0 && mono.held > 50;
    std::ostringstream detail;
    detail << mono.held << " weakened queries stayed yes, " << mono.broken << " flipped";
    line.detail = detail.str();
    return line;
}

// ---------------------------------------------------------------------------
// 8. Report bytes do not depend on worker count or repetition.

struct RunResult {
    int code = -1;
    std::string text;
};

RunResult shell(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.text.append(buf, got);
    int raw = pclose(pipe);
    if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
    return r;
}

Line run_determinism(const std::string& bin) {
    Line line{false, "deterministic reports", ""};
    if (bin.empty()) {
        line.detail = "missing --bin=PATH";
        return line;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::path dir = fs::temp_directory_path() / "robusteq-acceptance";
    fs::create_directories(dir, ec);
    auto put = [&](const char* name, const ConcurrentGame& g) {
        fs::path p = dir / name;
        std::ofstream out(p);
        out << game_to_json(g).dump(2) << "\n";
        return p.string();
    };

    QbfFormula small;
    small.variables = 2;
    small.clauses.push_back({2, 2, 2});

    const std::vector<std::string> tasks = {
        "solve '" + put("flip.json", two_state_game()) + "' --k 1",
        "solve '" + put("server.json", server_fragment()) + "' --k 1 --t 1 --denbound 4",
        "solve '" + put("chain.json", compile_game(small).game) + "' --k 3",
    };

    int runs = 0;
    for (const std::string& task : tasks) {
        std::optional<RunResult> first;
        for (int workers : {1, 4}) {
            for (int rep = 0; rep < 3; ++rep) {
                std::string cmd = "env ROBUSTEQ_WORKERS=" + std::to_string(workers) + " '" +
                                  bin + "' " + task + " 2>/dev/null";
                RunResult got = shell(cmd);
                if ((got.code != 0 && got.code != 2) || got.text.empty()) {
                    line.detail = "unexpected run (exit " + std::to_string(got.code) +
                                  ") for: " + task;
                    return line;
                }
                if (!first) {
                    first = got;
                } else if (first->text != got.text || first->code != got.code) {
                    line.detail = "output drift for: " + task;
                    return line;
                }
                ++runs;
            }
        }
    }
    line.pass = true;
    line.detail = std::to_string(runs) + " runs over " + std::to_string(tasks.size()) +
                  " queries, byte-identical within each";
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    std::string bin;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--bin=", 0) == 0) bin = arg.substr(6);
    }

    MonotoneLog mono;
    std::vector<std::function<Line()>> steps = {
        [&] { return run_hardness_corpus(mono); },
        [] { return run_deviator_paths(); },
        [] { return run_objective_dimensions(); },
        [] { return run_coalition_split(); },
        [&] { return run_positional_cross_check(mono); },
        [] { return run_numeric_oracles(); },
        [&] { return run_monotonicity(mono); },
        [&] { return run_determinism(bin); },
    };

    bool all = true;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        Line line;
        try {
            line = steps[i]();
        } catch (const std::exception& err) {
            line.pass = false;
            line.name = "criterion crashed";
            line.detail = err.what();
        }
        all = all && line.pass;
        std::printf("%s  %zu. %s: %s\n", line.pass ? "PASS" : "FAIL", i + 1, line.name.c_str(),
                    line.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all ? "acceptance: all criteria hold" : "acceptance: failures above");
    return all ? 0 : 1;
}
