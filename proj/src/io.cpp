#include "robusteq/io.hpp"

#include <fstream>
#include <map>

#include "robusteq/errors.hpp"

namespace robusteq {

using nlohmann::json;

namespace {

std::vector<std::string> name_list(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_array())
        throw FormatError(std::string(field) + " must be an array of names");
    std::vector<std::string> names;
    std::map<std::string, int> seen;
    for (const json& item : doc[field]) {
        if (!item.is_string()) throw FormatError(std::string(field) + " entries must be strings");
        std::string name = item.get<std::string>();
        if (!seen.emplace(name, 1).second)
            throw FormatError("duplicate name \"" + name + "\" in " + field);
        names.push_back(std::move(name));
    }
    if (names.empty()) throw FormatError(std::string(field) + " must not be empty");
    return names;
}

std::map<std::string, int> index_of(const std::vector<std::string>& names) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    return index;
}

int lookup(const std::map<std::string, int>& index, const json& value, const char* kind) {
    if (!value.is_string()) throw FormatError(std::string(kind) + " reference must be a string");
    auto it = index.find(value.get<std::string>());
    if (it == index.end())
        throw FormatError("unknown " + std::string(kind) + " \"" + value.get<std::string>() +
                          "\"");
    return it->second;
}

// moves/observed maps: player name -> action name or "*"; omitted players
// match anything.
MoveVector move_pattern(const json& doc, const std::map<std::string, int>& player_index,
                        const std::map<std::string, int>& action_index, int player_count) {
    if (!doc.is_object()) throw FormatError("move map must be an object");
    MoveVector pattern(player_count, kAnyAction);
    for (const auto& [player, action] : doc.items()) {
        auto pit = player_index.find(player);
        if (pit == player_index.end()) throw FormatError("unknown player \"" + player + "\"");
        if (!action.is_string()) throw FormatError("action reference must be a string");
        std::string name = action.get<std::string>();
        if (name == "*") continue;
        auto ait = action_index.find(name);
        if (ait == action_index.end()) throw FormatError("unknown action \"" + name + "\"");
        pattern[pit->second] = ait->second;
    }
    return pattern;
}

}  // namespace

ConcurrentGame game_from_json(const json& doc) {
    if (!doc.is_object()) throw FormatError("game document must be a JSON object");
    ConcurrentGame game;
    game.players = name_list(doc, "players");
    game.actions = name_list(doc, "actions");
    game.states = name_list(doc, "states");
    auto player_index = index_of(game.players);
    auto action_index = index_of(game.actions);
    auto state_index = index_of(game.states);

    if (!doc.contains("initial")) throw FormatError("missing initial state");
    game.initial = lookup(state_index, doc["initial"], "state");

    game.weights.assign(game.states.size(), std::vector<long long>(game.players.size(), 0));
    if (doc.contains("weights")) {
        if (!doc["weights"].is_object()) throw FormatError("weights must be an object");
        for (const auto& [state, row] : doc["weights"].items()) {
            auto sit = state_index.find(state);
            if (sit == state_index.end())
                throw FormatError("weights mention unknown state \"" + state + "\"");
            if (!row.is_object()) throw FormatError("weights for " + state + " must be an object");
            for (const auto& [player, value] : row.items()) {
                auto pit = player_index.find(player);
                if (pit == player_index.end())
                    throw FormatError("weights mention unknown player \"" + player + "\"");
                if (!value.is_number_integer())
                    throw FormatError("weight of " + player + " at " + state +
                                      " must be an integer");
                game.weights[sit->second][pit->second] = value.get<long long>();
            }
        }
    }

    if (!doc.contains("transitions") || !doc["transitions"].is_array())
        throw FormatError("transitions must be an array");
    game.rules.resize(game.states.size());
    for (const json& rule : doc["transitions"]) {
        if (!rule.is_object() || !rule.contains("from") || !rule.contains("to") ||
            !rule.contains("moves"))
            throw FormatError("transition rules need from, moves, and to");
        int from = lookup(state_index, rule["from"], "state");
        int to = lookup(state_index, rule["to"], "state");
        MoveVector pattern = move_pattern(rule["moves"], player_index, action_index,
                                          static_cast<int>(game.players.size()));
        game.rules[from].push_back({std::move(pattern), to});
    }

    game.finalize();
    return game;
}

json game_to_json(const ConcurrentGame& game) {
    json doc;
    doc["players"] = game.players;
    doc["actions"] = game.actions;
    doc["states"] = game.states;
    doc["initial"] = game.states[game.initial];
    json weights = json::object();
    for (int s = 0; s < game.state_count(); ++s) {
        json row = json::object();
        for (int p = 0; p < game.player_count(); ++p)
            if (game.weights[s][p] != 0) row[game.players[p]] = game.weights[s][p];
        if (!row.empty()) weights[game.states[s]] = std::move(row);
    }
    doc["weights"] = std::move(weights);
    json rules = json::array();
    for (int s = 0; s < game.state_count(); ++s)
        for (const MoveRule& rule : game.rules[s]) {
            json moves = json::object();
            for (int p = 0; p < game.player_count(); ++p)
                if (rule.moves[p] != kAnyAction)
                    moves[game.players[p]] = game.actions[rule.moves[p]];
            rules.push_back(json{{"from", game.states[s]},
                                 {"moves", std::move(moves)},
                                 {"to", game.states[rule.to]}});
        }
    doc["transitions"] = std::move(rules);
    return doc;
}

StrategyMachine profile_from_json(const json& doc, const ConcurrentGame& game) {
    if (!doc.is_object()) throw FormatError("profile document must be a JSON object");
    StrategyMachine profile;
    profile.memory = name_list(doc, "memory");
    auto memory_index = index_of(profile.memory);
    auto player_index = index_of(game.players);
    auto action_index = index_of(game.actions);
    auto state_index = index_of(game.states);

    if (!doc.contains("initial_memory")) throw FormatError("missing initial_memory");
    profile.initial_memory = lookup(memory_index, doc["initial_memory"], "memory");
    profile.owners = full_set(game.player_count());

    if (!doc.contains("output") || !doc["output"].is_array())
        throw FormatError("output must be an array");
    for (const json& rule : doc["output"]) {
        if (!rule.is_object() || !rule.contains("memory") || !rule.contains("state") ||
            !rule.contains("move"))
            throw FormatError("output rules need memory, state, and move");
        OutputRule out;
        out.memory = lookup(memory_index, rule["memory"], "memory");
        out.state = lookup(state_index, rule["state"], "state");
        MoveVector move = move_pattern(rule["move"], player_index, action_index,
                                       game.player_count());
        for (int a : move)
            if (a == kAnyAction)
                throw FormatError("output rules must name an action for every player");
        out.choice = std::move(move);
        profile.outputs.push_back(std::move(out));
    }

    if (!doc.contains("update") || !doc["update"].is_array())
        throw FormatError("update must be an array");
    for (const json& rule : doc["update"]) {
        if (!rule.is_object() || !rule.contains("memory") || !rule.contains("state") ||
            !rule.contains("observed") || !rule.contains("next_memory"))
            throw FormatError("update rules need memory, state, observed, and next_memory");
        UpdateRule up;
        up.memory = lookup(memory_index, rule["memory"], "memory");
        if (rule["state"].is_string() && rule["state"].get<std::string>() == "*")
            up.state = kAnyState;
        else
            up.state = lookup(state_index, rule["state"], "state");
        up.observed = move_pattern(rule["observed"], player_index, action_index,
                                   game.player_count());
        up.next_memory = lookup(memory_index, rule["next_memory"], "memory");
        profile.updates.push_back(std::move(up));
    }
    return profile;
}

json profile_to_json(const StrategyMachine& profile, const ConcurrentGame& game) {
    json doc;
    doc["memory"] = profile.memory;
    doc["initial_memory"] = profile.memory[profile.initial_memory];
    json outputs = json::array();
    for (const OutputRule& rule : profile.outputs) {
        json move = json::object();
        std::vector<int> owner_list = players_of(profile.owners);
        for (size_t i = 0; i < owner_list.size(); ++i)
            move[game.players[owner_list[i]]] = game.actions[rule.choice[i]];
        outputs.push_back(json{{"memory", profile.memory[rule.memory]},
                               {"state", game.states[rule.state]},
                               {"move", std::move(move)}});
    }
    doc["output"] = std::move(outputs);
    json updates = json::array();
    for (const UpdateRule& rule : profile.updates) {
        json observed = json::object();
        for (int p = 0; p < game.player_count(); ++p)
            if (rule.observed[p] != kAnyAction)
                observed[game.players[p]] = game.actions[rule.observed[p]];
        updates.push_back(
            json{{"memory", profile.memory[rule.memory]},
                 {"state", rule.state == kAnyState ? std::string("*") : game.states[rule.state]},
                 {"observed", std::move(observed)},
                 {"next_memory", profile.memory[rule.next_memory]}});
    }
    doc["update"] = std::move(updates);
    return doc;
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw FormatError(path + ": " + err.what());
    }
    return doc;
}

}  // namespace

ConcurrentGame load_game_file(const std::string& path) { return game_from_json(parse_file(path)); }

StrategyMachine load_profile_file(const std::string& path, const ConcurrentGame& game) {
    return profile_from_json(parse_file(path), game);
}

}  // namespace robusteq
