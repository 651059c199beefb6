#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "robusteq/deviator.hpp"
#include "robusteq/digraph.hpp"
#include "robusteq/errors.hpp"
#include "robusteq/io.hpp"
#include "robusteq/qbf.hpp"
#include "robusteq/solver.hpp"
#include "robusteq/verify.hpp"

using nlohmann::json;

namespace robusteq {
namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
    if (!out.good()) throw FormatError("cannot write " + path);
}

// FNV-1a content digest, enough to tie a report to its input files.
std::string digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

json parse_doc(const std::string& path, const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw FormatError(path + ": " + err.what());
    }
}

Rational parse_rational(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw StructureError("\"" + text + "\" is not a rational; write n or n/d");
    }
}

std::string rational_str(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

json payoff_json(const std::vector<Rational>& payoff, const std::vector<std::string>& players) {
    json out = json::object();
    for (std::size_t p = 0; p < payoff.size(); ++p) out[players[p]] = rational_str(payoff[p]);
    return out;
}

// Timings and thread counts go to stderr: the stdout report must not change
// across runs or worker counts.
void emit(const json& report, const json& side) {
    std::cout << report.dump(2) << "\n";
    std::cerr << side.dump() << "\n";
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
}

// The environment wins over the flag, the flag over the hardware default.
int resolve_workers(int flag_value) {
    if (const char* env = std::getenv("ROBUSTEQ_WORKERS")) {
        std::string text(env);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || value < 1)
            throw StructureError("ROBUSTEQ_WORKERS must be a positive integer");
        return value;
    }
    if (flag_value > 0) return flag_value;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

const char* decision_name(Decision decision) {
    switch (decision) {
        case Decision::Yes:
            return "yes";
        case Decision::No:
            return "no";
        default:
            return "inconclusive";
    }
}

struct QueryFlags {
    int resilience = 1;
    int immunity = 0;
    std::string radius = "0";
};

void add_query_flags(CLI::App* sub, QueryFlags& flags) {
    sub->add_option("--k,--resilience", flags.resilience,
                    "deviating coalition size the equilibrium must tolerate")
        ->capture_default_str();
    sub->add_option("--t,--immunity", flags.immunity, "coalition size bystanders must survive")
        ->capture_default_str();
    sub->add_option("--r,--radius", flags.radius, "payoff drop bystanders absorb, as n or n/d")
        ->capture_default_str();
}

json query_json(const RobustnessQuery& query) {
    return {{"resilience", query.resilience},
            {"immunity", query.immunity},
            {"radius", rational_str(query.radius)}};
}

struct SolveFlags {
    std::string game;
    QueryFlags query;
    long long denbound = 0;
    unsigned long long budget = SearchConfig{}.candidate_budget;
    unsigned long long choices = SearchConfig{}.choice_budget;
    int workers = 0;
};

int run_solve(const SolveFlags& flags) {
    std::string bytes = slurp(flags.game);
    ConcurrentGame game = game_from_json(parse_doc(flags.game, bytes));
    RobustnessQuery query{flags.query.resilience, flags.query.immunity,
                          parse_rational(flags.query.radius)};
    SearchConfig config;
    config.denominator_bound = flags.denbound;
    config.candidate_budget = flags.budget;
    config.choice_budget = flags.choices;
    config.workers = resolve_workers(flags.workers);

    auto start = std::chrono::steady_clock::now();
    SearchOutcome outcome = solve_robustness(game, query, config);

    json result = {{"decision", decision_name(outcome.decision)}};
    if (outcome.decision == Decision::Yes)
        result["payoff"] = payoff_json(outcome.payoff, game.players);
    if (outcome.decision == Decision::Inconclusive) result["note"] = outcome.note;
    json config_echo = query_json(query);
    config_echo["denominator_bound"] = config.denominator_bound;
    config_echo["candidate_budget"] = config.candidate_budget;
    config_echo["choice_budget"] = config.choice_budget;
    emit({{"command", "solve"},
          {"inputs", {{"game", digest(bytes)}}},
          {"config", config_echo},
          {"result", result}},
         {{"solve_ms", elapsed_ms(start)}, {"workers", config.workers}});
    return outcome.decision == Decision::Inconclusive ? 2 : 0;
}

struct VerifyFlags {
    std::string game;
    std::string profile;
    QueryFlags query;
};

int run_verify(const VerifyFlags& flags) {
    std::string game_bytes = slurp(flags.game);
    ConcurrentGame game = game_from_json(parse_doc(flags.game, game_bytes));
    std::string profile_bytes = slurp(flags.profile);
    StrategyMachine profile = profile_from_json(parse_doc(flags.profile, profile_bytes), game);
    RobustnessQuery query{flags.query.resilience, flags.query.immunity,
                          parse_rational(flags.query.radius)};

    auto start = std::chrono::steady_clock::now();
    VerifyReport verdict = verify_profile(game, profile, query);

    json violations = json::array();
    for (const auto& breach : verdict.breaches) {
        json names = json::array();
        for (int p : players_of(breach.coalition)) names.push_back(game.players[p]);
        json cycle = json::array();
        for (auto [state, memory] : breach.cycle) {
            (void)memory;
            cycle.push_back(game.states[state]);
        }
        bool gain = breach.kind == RobustnessBreach::Kind::Resilience;
        Rational bound =
            gain ? verdict.payoff[breach.player] : verdict.payoff[breach.player] - query.radius;
        violations.push_back({{"coalition", names},
                              {"player", game.players[breach.player]},
                              {"kind", gain ? "resilience" : "immunity"},
                              {"value", rational_str(breach.achieved)},
                              {"bound", rational_str(bound)},
                              {"cycle", cycle}});
    }
    json result = {{"robust", verdict.robust},
                   {"payoff", payoff_json(verdict.payoff, game.players)},
                   {"violations", violations}};
    emit({{"command", "verify"},
          {"inputs", {{"game", digest(game_bytes)}, {"profile", digest(profile_bytes)}}},
          {"config", query_json(query)},
          {"result", result}},
         {{"verify_ms", elapsed_ms(start)}});
    return 0;
}

struct DeviatorFlags {
    std::string game;
    std::size_t max = 0;
};

int run_deviator(const DeviatorFlags& flags) {
    std::string bytes = slurp(flags.game);
    ConcurrentGame game = game_from_json(parse_doc(flags.game, bytes));

    auto start = std::chrono::steady_clock::now();
    std::vector<DeviatorState> states = reachable_deviator_states(DeviatorGame(game), flags.max);

    json listing = json::array();
    for (const auto& annotated : states) {
        json names = json::array();
        for (int p : players_of(annotated.devs)) names.push_back(game.players[p]);
        listing.push_back({{"state", game.states[annotated.base]}, {"deviators", names}});
    }
    emit({{"command", "deviator"},
          {"inputs", {{"game", digest(bytes)}}},
          {"config", {{"max", flags.max}}},
          {"result", {{"count", states.size()}, {"states", listing}}}},
         {{"deviator_ms", elapsed_ms(start)}});
    return 0;
}

struct QbfGenFlags {
    std::string formula;
    std::string out;
    std::string label;
};

int run_qbf_gen(const QbfGenFlags& flags) {
    std::string text = slurp(flags.formula);
    QbfFormula formula = parse_qdimacs(text);

    auto start = std::chrono::steady_clock::now();
    bool valid = qbf_eval(formula);
    CompiledGame built = compile_game(formula);

    std::string label_path = flags.label;
    if (label_path.empty()) {
        std::filesystem::path out_path(flags.out);
        label_path = (out_path.parent_path() / (out_path.stem().string() + ".label.json")).string();
    }
    write_text(flags.out, game_to_json(built.game).dump(2) + "\n");
    write_text(label_path, json({{"valid", valid}}).dump(2) + "\n");

    emit({{"command", "qbf-gen"},
          {"inputs", {{"formula", digest(text)}}},
          {"config", {{"out", flags.out}, {"label", label_path}}},
          {"result",
           {{"valid", valid},
            {"players", built.game.player_count()},
            {"states", built.game.state_count()},
            {"query", query_json(built.query)},
            {"game_file", flags.out},
            {"label_file", label_path}}}},
         {{"qbf_gen_ms", elapsed_ms(start)}});
    return 0;
}

struct MeanCycleFlags {
    std::string game;
    std::string player;
    std::string sense = "max";
};

int run_meancycle(const MeanCycleFlags& flags) {
    std::string bytes = slurp(flags.game);
    ConcurrentGame game = game_from_json(parse_doc(flags.game, bytes));
    auto pit = std::find(game.players.begin(), game.players.end(), flags.player);
    if (pit == game.players.end())
        throw StructureError("unknown player \"" + flags.player + "\"");
    int player = static_cast<int>(pit - game.players.begin());

    auto start = std::chrono::steady_clock::now();
    WeightedDigraph graph;
    graph.vertex_count = game.state_count();
    graph.dims = 1;
    graph.start = game.initial;
    std::set<std::pair<int, int>> arrows;
    for (int s = 0; s < game.state_count(); ++s)
        for (long long code = 0; code < game.move_total; ++code) arrows.emplace(s, game.step(s, code));
    for (auto [from, to] : arrows) graph.add_edge(from, to, {game.weights[from][player]});

    std::optional<MeanCycle> best =
        extreme_mean_cycle(graph, 0, flags.sense == "max" ? Sense::Max : Sense::Min);
    json result;
    if (best) {
        json cycle = json::array();
        for (int v : best->vertices) cycle.push_back(game.states[v]);
        result = {{"value", rational_str(best->value)}, {"cycle", cycle}};
    } else {
        result = {{"value", nullptr}, {"cycle", json::array()}, {"note", "no reachable cycle"}};
    }
    emit({{"command", "meancycle"},
          {"inputs", {{"game", digest(bytes)}}},
          {"config", {{"player", flags.player}, {"sense", flags.sense}}},
          {"result", result}},
         {{"meancycle_ms", elapsed_ms(start)}});
    return 0;
}

}  // namespace
}  // namespace robusteq

int main(int argc, char** argv) {
    using namespace robusteq;
    CLI::App app{"robust-equilibrium toolkit for weighted concurrent games"};
    app.require_subcommand(1);

    SolveFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "decide whether a robust equilibrium exists");
    solve->add_option("--game", solve_flags.game, "game file")->required();
    add_query_flags(solve, solve_flags.query);
    solve->add_option("--denbound", solve_flags.denbound,
                      "denominator bound for candidate payoffs; 0 picks the deviator-state count")
        ->capture_default_str();
    solve->add_option("--budget", solve_flags.budget, "candidate enumeration budget")
        ->capture_default_str();
    solve->add_option("--choices", solve_flags.choices, "spoiler enumeration budget")
        ->capture_default_str();
    solve->add_option("--workers", solve_flags.workers,
                      "worker threads; defaults to the available parallelism, and the "
                      "ROBUSTEQ_WORKERS environment variable overrides both");

    VerifyFlags verify_flags;
    CLI::App* verify = app.add_subcommand("verify", "check a strategy profile against a query");
    verify->add_option("--game", verify_flags.game, "game file")->required();
    verify->add_option("--profile", verify_flags.profile, "profile file")->required();
    add_query_flags(verify, verify_flags.query);

    DeviatorFlags deviator_flags;
    CLI::App* deviator = app.add_subcommand("deviator", "dump the reachable annotated states");
    deviator->add_option("--game", deviator_flags.game, "game file")->required();
    deviator->add_option("--max", deviator_flags.max,
                         "refuse to enumerate more annotated states than this; 0 picks a "
                         "size-derived default")
        ->capture_default_str();

    QbfGenFlags qbf_flags;
    CLI::App* qbf_gen = app.add_subcommand("qbf-gen", "compile a quantified formula into a "
                                                      "labeled solver benchmark");
    qbf_gen->add_option("--formula", qbf_flags.formula, "QDIMACS-style formula file")->required();
    qbf_gen->add_option("--out", qbf_flags.out, "game file to write")->required();
    qbf_gen->add_option("--label", qbf_flags.label,
                        "label file to write; defaults to <out stem>.label.json");

    MeanCycleFlags mean_flags;
    CLI::App* meancycle =
        app.add_subcommand("meancycle", "extremal mean cycle of one player's weight");
    meancycle->add_option("--game", mean_flags.game, "game file")->required();
    meancycle->add_option("--player", mean_flags.player, "player whose weight is averaged")
        ->required();
    meancycle->add_option("--sense", mean_flags.sense, "min or max")
        ->required()
        ->check(CLI::IsMember({"min", "max"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_flags);
        if (verify->parsed()) return run_verify(verify_flags);
        if (deviator->parsed()) return run_deviator(deviator_flags);
        if (qbf_gen->parsed()) return run_qbf_gen(qbf_flags);
        if (meancycle->parsed()) return run_meancycle(mean_flags);
    } catch (const BudgetError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
