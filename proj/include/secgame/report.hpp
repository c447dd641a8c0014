#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "secgame/game.hpp"
#include "secgame/shapley.hpp"
#include "secgame/simulator.hpp"
#include "secgame/strategies.hpp"

namespace secgame {

inline constexpr std::string_view kGameSchema = "secgame.game/1";
inline constexpr std::string_view kSolveSchema = "secgame.solve/1";
inline constexpr std::string_view kSimulateSchema = "secgame.simulate/1";

// Machine-readable documents. Probabilities and values are written at full
// double precision.
nlohmann::json game_to_json(const StochasticGame& game);
nlohmann::json solve_to_json(const StochasticGame& game, const SolveResult& result,
                             const SolveOptions& options);
nlohmann::json simulation_to_json(const StochasticGame& game, const SimulationReport& report,
                                  const Eigen::VectorXd& expected, std::string_view strategy_source);

// Reads the strategies out of a solve document. Throws SchemaError naming the
// state whose action lists or vector sizes disagree with `game`.
StrategyProfile strategies_from_json(const nlohmann::json& doc, const StochasticGame& game);
Eigen::VectorXd values_from_json(const nlohmann::json& doc);

// Fixed-width tables, one row per state labelled "k (bits)".
void write_network_summary(std::ostream& os, const StateSpace& space);
void write_strategy_table(std::ostream& os, const StochasticGame& game,
                          const std::vector<Eigen::VectorXd>& strategies, bool attacker);
void write_value_table(std::ostream& os, const StochasticGame& game, const Eigen::VectorXd& values);
void write_simulation_table(std::ostream& os, const StochasticGame& game,
                            const SimulationReport& report, const Eigen::VectorXd& expected);

// A payoff matrix from either a JSON array of rows or whitespace-separated
// text with one row per line. Throws ParseError.
Eigen::MatrixXd parse_matrix(std::string_view text);

}  // namespace secgame
