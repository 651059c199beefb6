#pragma once

#include <json.hpp>
#include <string>

#include "robusteq/game.hpp"

namespace robusteq {

// Game files: players/actions/states are arrays of unique names, weights a
// state -> player -> integer map (missing entries are 0), transitions a list
// of {from, moves, to} rules matched first-to-last, where moves maps players
// to an action name or "*" and omitted players match anything. The rules for
// each state must cover every move vector.
ConcurrentGame game_from_json(const nlohmann::json& doc);
nlohmann::json game_to_json(const ConcurrentGame& game);

// Profile files: {memory, initial_memory, output, update}. Output rules give
// a full move per (memory, state); update rules may use "*" for the state and
// for observed actions.
StrategyMachine profile_from_json(const nlohmann::json& doc, const ConcurrentGame& game);
nlohmann::json profile_to_json(const StrategyMachine& profile, const ConcurrentGame& game);

ConcurrentGame load_game_file(const std::string& path);
StrategyMachine load_profile_file(const std::string& path, const ConcurrentGame& game);

}  // namespace robusteq
