#pragma once

#include "sigdesign/equilibrium.hpp"
#include "sigdesign/game.hpp"
#include "sigdesign/value.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace sigdesign {

struct GameFile {
    GameSpec game;
    std::optional<Belief> prior;
};

// Game documents are JSON: states/messages/actions as string arrays,
// optional prior as rational strings, utility tables as nested
// state -> message -> action maps. `"simple": true` drops the message
// level of receiver_utility.
GameFile parse_game_file(const std::string& text);
GameFile load_game_file(const std::string& path);
std::string serialize_game(const GameSpec& game, const std::optional<Belief>& prior);

EquilibriumTriple parse_equilibrium_file(const std::string& text, const GameSpec& game);
EquilibriumTriple load_equilibrium_file(const std::string& path, const GameSpec& game);
std::string serialize_equilibrium(const GameSpec& game, const EquilibriumTriple& triple);

Experiment parse_experiment_file(const std::string& text, const GameSpec& game);
Experiment load_experiment_file(const std::string& path, const GameSpec& game);

// Curve CSV: lambda as an exact fraction, the exact value split into
// numerator/denominator columns, and an advisory decimal.
std::string curve_to_csv(const ValueCurve& curve);
ValueCurve curve_from_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sigdesign
