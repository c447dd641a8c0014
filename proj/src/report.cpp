#include "secgame/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "secgame/errors.hpp"
#include "secgame/matrix_game.hpp"

namespace secgame {
namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json labels_json(const std::vector<Action>& actions) {
  json out = json::array();
  for (const auto& a : actions) out.push_back(a.label());
  return out;
}

json nodes_json(const std::vector<std::size_t>& nodes) {
  json out = json::array();
  for (std::size_t i : nodes) out.push_back(i + 1);
  return out;
}

std::vector<std::size_t> compromised_nodes(NetworkState s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.compromised(i)) out.push_back(i);
  }
  return out;
}

json state_header(const StochasticGame& game, std::size_t k) {
  const StateSpace& space = *game.space;
  const NetworkState s = space.state(k);
  return json{{"index", k + 1},
              {"label", s.bit_label(space.node_count())},
              {"compromised", nodes_json(compromised_nodes(s, space.node_count()))}};
}

std::string state_label(const StochasticGame& game, std::size_t k) { return game.space->label(k); }

constexpr int kLabelWidth = 14;
constexpr int kCellWidth = 11;

}  // namespace

json game_to_json(const StochasticGame& game) {
  const StateSpace& space = *game.space;
  json states = json::array();
  for (const GameElement& e : game.elements) {
    const ReducedNetwork& r = space.reduced(e.state_index);
    const RestartParams& rp = space.restart(e.state_index);
    json st = state_header(game, e.state_index);
    st["alive"] = nodes_json(r.alive);
    st["effective_assets"] = vector_json(r.effective_assets);
    st["renormalized_assets"] = vector_json(r.renormalized_assets);
    st["supports"] = vector_json(r.supports);
    st["restart"] = {{"p_r", rp.p_r},
                     {"p_e", rp.p_e},
                     {"p_nothing_r", rp.p_nothing_r},
                     {"p_nothing_e", rp.p_nothing_e}};
    st["attacker_actions"] = labels_json(e.attacker_actions);
    st["defender_actions"] = labels_json(e.defender_actions);
    st["payoff"] = matrix_json(e.payoff);
    st["success_prob"] = matrix_json(e.success_prob);
    st["end_prob"] = matrix_json(e.end_prob);
    json transitions = json::array();
    for (std::size_t i = 0; i < e.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < e.cols(); ++j) {
        json cell = json::array();
        for (const Outcome& o : e.outcomes_at(i, j)) {
          if (o.next) cell.push_back({{"to", *o.next + 1}, {"prob", o.probability}});
        }
        row.push_back(std::move(cell));
      }
      transitions.push_back(std::move(row));
    }
    st["transitions"] = std::move(transitions);
    states.push_back(std::move(st));
  }
  return json{{"schema", kGameSchema},
              {"node_count", space.node_count()},
              {"action_mode", to_string(game.options.action_mode)},
              {"asset_valuation", to_string(game.options.asset_valuation)},
              {"contraction_factor", contraction_factor(game)},
              {"states", std::move(states)}};
}

json solve_to_json(const StochasticGame& game, const SolveResult& result,
                   const SolveOptions& options) {
  json states = json::array();
  for (const GameElement& e : game.elements) {
    const std::size_t k = e.state_index;
    json st = state_header(game, k);
    st["value"] = result.values[static_cast<Eigen::Index>(k)];
    st["attacker"] = {{"actions", labels_json(e.attacker_actions)},
                      {"strategy", vector_json(result.attacker_strategies[k])}};
    st["defender"] = {{"actions", labels_json(e.defender_actions)},
                      {"strategy", vector_json(result.defender_strategies[k])}};
    states.push_back(std::move(st));
  }
  return json{{"schema", kSolveSchema},
              {"node_count", game.space->node_count()},
              {"action_mode", to_string(game.options.action_mode)},
              {"asset_valuation", to_string(game.options.asset_valuation)},
              {"tolerance", options.tolerance},
              {"iterations", result.iterations},
              {"residual", result.residual},
              {"contraction_factor", contraction_factor(game)},
              {"states", std::move(states)}};
}

json simulation_to_json(const StochasticGame& game, const SimulationReport& report,
                        const Eigen::VectorXd& expected, std::string_view strategy_source) {
  json states = json::array();
  for (const auto& s : report.per_state) {
    json st = state_header(game, s.start_state);
    st["episodes"] = s.episodes;
    st["mean_payoff"] = s.mean_payoff;
    st["std_error"] = s.std_error;
    st["mean_episode_length"] = s.mean_length;
    st["max_episode_length"] = s.max_length;
    st["expected_value"] = expected[static_cast<Eigen::Index>(s.start_state)];
    states.push_back(std::move(st));
  }
  return json{{"schema", kSimulateSchema},
              {"seed", report.seed},
              {"strategies", std::string(strategy_source)},
              {"states", std::move(states)}};
}

StrategyProfile strategies_from_json(const json& doc, const StochasticGame& game) {
  if (!doc.is_object() || doc.value("schema", "") != kSolveSchema) {
    throw SchemaError("strategy document must have schema '" + std::string(kSolveSchema) + "'");
  }
  const json* states = doc.contains("states") ? &doc["states"] : nullptr;
  if (!states || !states->is_array() || states->size() != game.size()) {
    throw SchemaError("strategy document must list all " + std::to_string(game.size()) + " states");
  }
  StrategyProfile profile;
  for (std::size_t k = 0; k < game.size(); ++k) {
    const GameElement& e = game.elements[k];
    const json& st = (*states)[k];
    const std::string where = "state " + state_label(game, k);
    const auto read = [&](const char* who, const std::vector<Action>& actions) {
      if (!st.is_object() || !st.contains(who) || !st[who].is_object()) {
        throw SchemaError(where + ": missing '" + who + "' entry");
      }
      const json& side = st[who];
      if (!side.contains("actions") || side["actions"] != labels_json(actions)) {
        throw SchemaError(where + ": " + who + " actions do not match the game's action set " +
                          labels_json(actions).dump());
      }
      if (!side.contains("strategy") || !side["strategy"].is_array() ||
          side["strategy"].size() != actions.size()) {
        throw SchemaError(where + ": " + who + " strategy must have " +
                          std::to_string(actions.size()) + " entries");
      }
      Eigen::VectorXd v(static_cast<Eigen::Index>(actions.size()));
      for (std::size_t a = 0; a < actions.size(); ++a) {
        const json& x = side["strategy"][a];
        if (!x.is_number()) throw SchemaError(where + ": " + who + " strategy entries must be numbers");
        v[static_cast<Eigen::Index>(a)] = x.get<double>();
      }
      if (v.minCoeff() < -1e-12 || std::abs(v.sum() - 1.0) > 1e-9) {
        throw SchemaError(where + ": " + who + " strategy is not a probability vector");
      }
      return v;
    };
    profile.attacker.push_back(read("attacker", e.attacker_actions));
    profile.defender.push_back(read("defender", e.defender_actions));
  }
  return profile;
}

Eigen::VectorXd values_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array()) {
    throw SchemaError("document has no 'states' array");
  }
  const json& states = doc["states"];
  Eigen::VectorXd v(static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!states[k].contains("value") || !states[k]["value"].is_number()) {
      throw SchemaError("state " + std::to_string(k + 1) + " has no numeric 'value'");
    }
    v[static_cast<Eigen::Index>(k)] = states[k]["value"].get<double>();
  }
  return v;
}

void write_network_summary(std::ostream& os, const StateSpace& space) {
  const InfluenceNetwork& net = space.network();
  const std::size_t n = net.node_count();
  const auto flags = os.flags();
  os << std::fixed << std::setprecision(4);
  os << "Influence matrix (row i, column j = influence of node i on node j):\n";
  for (Eigen::Index i = 0; i < net.influence().rows(); ++i) {
    for (Eigen::Index j = 0; j < net.influence().cols(); ++j) {
      os << std::setw(kCellWidth) << net.influence()(i, j);
    }
    os << '\n';
  }
  os << "Support matrix (row i, column j = support node i gives node j):\n";
  for (Eigen::Index i = 0; i < net.support().rows(); ++i) {
    for (Eigen::Index j = 0; j < net.support().cols(); ++j) {
      os << std::setw(kCellWidth) << net.support()(i, j);
    }
    os << '\n';
  }
  os << '\n' << std::left << std::setw(kLabelWidth) << "State" << std::right;
  for (std::size_t i = 0; i < n; ++i) os << std::setw(kCellWidth) << ("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) os << std::setw(kCellWidth) << ("h" + std::to_string(i + 1));
  os << '\n';
  for (std::size_t k = 0; k < space.size(); ++k) {
    const ReducedNetwork& r = space.reduced(k);
    os << std::left << std::setw(kLabelWidth) << space.label(k) << std::right;
    for (std::size_t pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd& values = pass == 0 ? r.effective_assets : r.supports;
      for (std::size_t i = 0; i < n; ++i) {
        const auto pos = r.position(i);
        if (pos < 0) {
          os << std::setw(kCellWidth) << "-";
        } else {
          os << std::setw(kCellWidth) << values[pos];
        }
      }
    }
    os << '\n';
  }
  os.flags(flags);
}

void write_strategy_table(std::ostream& os, const StochasticGame& game,
                          const std::vector<Eigen::VectorXd>& strategies, bool attacker) {
  const std::size_t n = game.space->node_count();
  const auto flags = os.flags();
  os << (attacker ? "Attacker" : "Defender") << " strategies\n";
  os << std::left << std::setw(kLabelWidth) << "GE" << std::right;
  for (std::size_t i = 0; i < n; ++i) os << std::setw(kCellWidth) << ("Node " + std::to_string(i + 1));
  os << std::setw(kCellWidth + 2) << "Do nothing" << '\n';
  os << std::fixed << std::setprecision(4);
  for (const GameElement& e : game.elements) {
    const auto& actions = attacker ? e.attacker_actions : e.defender_actions;
    const Eigen::VectorXd full = expand_strategy(actions, strategies[e.state_index], n);
    os << std::left << std::setw(kLabelWidth) << state_label(game, e.state_index) << std::right;
    for (Eigen::Index a = 0; a < full.size(); ++a) {
      os << std::setw(a + 1 == full.size() ? kCellWidth + 2 : kCellWidth) << full[a];
    }
    os << '\n';
  }
  os.flags(flags);
}

void write_value_table(std::ostream& os, const StochasticGame& game, const Eigen::VectorXd& values) {
  const auto flags = os.flags();
  os << "Value vector\n" << std::fixed << std::setprecision(4);
  for (std::size_t k = 0; k < game.size(); ++k) {
    os << std::left << std::setw(kLabelWidth) << state_label(game, k) << std::right << ": "
       << values[static_cast<Eigen::Index>(k)] << '\n';
  }
  os.flags(flags);
}

void write_simulation_table(std::ostream& os, const StochasticGame& game,
                            const SimulationReport& report, const Eigen::VectorXd& expected) {
  const auto flags = os.flags();
  os << "Monte Carlo (seed " << report.seed << ")\n";
  os << std::left << std::setw(kLabelWidth) << "Start" << std::right << std::setw(10) << "episodes"
     << std::setw(12) << "mean" << std::setw(11) << "stderr" << std::setw(12) << "expected"
     << std::setw(9) << "z" << std::setw(10) << "length" << '\n';
  os << std::fixed;
  for (const auto& s : report.per_state) {
    const double ref = expected[static_cast<Eigen::Index>(s.start_state)];
    const double z = s.std_error > 0.0 ? (s.mean_payoff - ref) / s.std_error : 0.0;
    os << std::left << std::setw(kLabelWidth) << state_label(game, s.start_state) << std::right
       << std::setw(10) << s.episodes << std::setprecision(4) << std::setw(12) << s.mean_payoff
       << std::setw(11) << s.std_error << std::setw(12) << ref << std::setprecision(2)
       << std::setw(9) << z << std::setw(10) << s.mean_length << '\n';
  }
  os.flags(flags);
}

Eigen::MatrixXd parse_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("matrix parse error: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("matrix must be an array of rows");
    for (const auto& row : doc) {
      if (!row.is_array()) throw ParseError("matrix must be an array of rows");
      std::vector<double> r;
      for (const auto& x : row) {
        if (!x.is_number()) throw ParseError("matrix entries must be numbers");
        r.push_back(x.get<double>());
      }
      rows.push_back(std::move(r));
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<double> r;
      std::string token;
      while (ls >> token) {
        try {
          std::size_t used = 0;
          r.push_back(std::stod(token, &used));
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw ParseError("matrix line " + std::to_string(line_no) + ": bad number '" + token + "'");
        }
      }
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) throw ParseError("matrix is empty");
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols || cols == 0) {
      throw ParseError("matrix row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace secgame
