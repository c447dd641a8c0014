#include "secgame/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

using nlohmann::json;

// Walks a config document, collecting every problem instead of stopping at
// the first one.
class Reader {
 public:
  std::vector<std::string> issues;

  void fail(const std::string& path, const std::string& what) { issues.push_back(path + ": " + what); }

  const json* member(const json& obj, const std::string& key, const std::string& path,
                     bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path,
                               bool required = true) {
    const json* v = member(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(path + "/" + key, "expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key,
                                    const std::string& path, bool required = true) {
    const json* v = member(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  const json* array(const json& obj, const std::string& key, const std::string& path,
                    bool required = true) {
    const json* v = member(obj, key, path, required);
    if (v && !v->is_array()) {
      fail(path + "/" + key, "expected an array");
      return nullptr;
    }
    return v;
  }

  const json* object(const json& obj, const std::string& key, const std::string& path,
                     bool required = true) {
    const json* v = member(obj, key, path, required);
    if (v && !v->is_object()) {
      fail(path + "/" + key, "expected an object");
      return nullptr;
    }
    return v;
  }

  void restart_params(const json& obj, const std::string& path, RestartParams& out) {
    if (auto v = number(obj, "p_r", path)) out.p_r = *v;
    if (auto v = number(obj, "p_e", path)) out.p_e = *v;
    if (auto v = number(obj, "p_nothing_r", path)) out.p_nothing_r = *v;
    if (auto v = number(obj, "p_nothing_e", path)) out.p_nothing_e = *v;
  }

  std::vector<EdgeConfig> edges(const json& root, const std::string& key) {
    std::vector<EdgeConfig> out;
    const json* list = array(root, key, "", false);
    if (!list) return out;
    for (std::size_t e = 0; e < list->size(); ++e) {
      const std::string path = "/" + key + "/" + std::to_string(e);
      const json& item = (*list)[e];
      if (!item.is_object()) {
        fail(path, "expected an object");
        continue;
      }
      EdgeConfig edge;
      edge.from = string(item, "from", path).value_or("");
      edge.to = string(item, "to", path).value_or("");
      edge.weight = number(item, "weight", path).value_or(0.0);
      out.push_back(std::move(edge));
    }
    return out;
  }
};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::optional<std::uint32_t> mask_from_bits(const std::string& bits, std::size_t node_count) {
  if (bits.size() != node_count) return std::nullopt;
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= 1u << i;
    } else if (bits[i] != '0') {
      return std::nullopt;
    }
  }
  return mask;
}

struct Matrices {
  Eigen::MatrixXd influence;
  Eigen::MatrixXd support;
  Eigen::VectorXd assets;
  std::vector<NodeProbs> probs;
  std::vector<std::string> issues;
};

// Builds dense matrices from the edge lists, infers influence diagonals and
// applies the small-deviation renormalization.
Matrices assemble(const GameConfig& config) {
  Matrices out;
  const std::size_t n = config.nodes.size();
  const auto size = static_cast<Eigen::Index>(n);
  out.influence = Eigen::MatrixXd::Zero(size, size);
  out.support = Eigen::MatrixXd::Zero(size, size);
  out.assets = Eigen::VectorXd::Zero(size);
  std::map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = config.nodes[i];
    if (!index.emplace(node.name, static_cast<Eigen::Index>(i)).second) {
      out.issues.push_back("/nodes/" + std::to_string(i) + "/name: duplicate node name '" +
                           node.name + "'");
    }
    out.assets[static_cast<Eigen::Index>(i)] = node.independent_asset;
    out.probs.push_back(node.probs);
  }

  std::vector<bool> explicit_diagonal(n, false);
  const auto place = [&](const std::vector<EdgeConfig>& edges, const std::string& key,
                         Eigen::MatrixXd& target, bool influence) {
    std::map<std::pair<Eigen::Index, Eigen::Index>, bool> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string path = "/" + key + "/" + std::to_string(e);
      const auto& edge = edges[e];
      auto from = index.find(edge.from);
      auto to = index.find(edge.to);
      if (from == index.end()) out.issues.push_back(path + "/from: unknown node '" + edge.from + "'");
      if (to == index.end()) out.issues.push_back(path + "/to: unknown node '" + edge.to + "'");
      if (from == index.end() || to == index.end()) continue;
      const bool ok = influence ? (edge.weight > 0.0 && edge.weight <= 1.0)
                                : (edge.weight >= 0.0 && edge.weight <= 1.0);
      if (!std::isfinite(edge.weight) || !ok) {
        std::ostringstream os;
        os << path << "/weight: " << edge.weight << " outside " << (influence ? "(0,1]" : "[0,1]");
        out.issues.push_back(os.str());
        continue;
      }
      if (!seen.emplace(std::pair{from->second, to->second}, true).second) {
        out.issues.push_back(path + ": duplicate edge " + edge.from + " -> " + edge.to);
        continue;
      }
      target(from->second, to->second) = edge.weight;
      if (influence && from->second == to->second) {
        explicit_diagonal[static_cast<std::size_t>(from->second)] = true;
      }
    }
  };
  place(config.influence_edges, "influence_edges", out.influence, true);
  place(config.support_edges, "support_edges", out.support, false);

  for (Eigen::Index j = 0; j < size; ++j) {
    const std::string& name = config.nodes[static_cast<std::size_t>(j)].name;
    if (!explicit_diagonal[static_cast<std::size_t>(j)]) {
      const double off = out.influence.col(j).sum();
      if (off > 1.0 + kConfigRenormalizeTolerance) {
        std::ostringstream os;
        os << "influence column of node '" << name << "': incoming weights sum to " << off
           << ", leaving a negative self-influence";
        out.issues.push_back(os.str());
        continue;
      }
      out.influence(j, j) = std::max(0.0, 1.0 - off);
    }
    const double sum = out.influence.col(j).sum();
    if (std::abs(sum - 1.0) > kConfigRenormalizeTolerance) {
      std::ostringstream os;
      os << "influence column of node '" << name << "' sums to " << sum << ", expected 1";
      out.issues.push_back(os.str());
    } else {
      out.influence.col(j) /= sum;
    }
    const double h = out.support.col(j).sum();
    if (h > 1.0 + kConfigRenormalizeTolerance) {
      std::ostringstream os;
      os << "support column of node '" << name << "' sums to " << h << ", exceeds 1";
      out.issues.push_back(os.str());
    } else if (h > 1.0) {
      out.support.col(j) /= h;
    }
  }
  return out;
}

std::vector<std::string> restart_issues(const GameConfig& config) {
  std::vector<std::string> issues;
  const auto add = [&](std::vector<std::string> found) {
    issues.insert(issues.end(), found.begin(), found.end());
  };
  add(check_restart(config.restart.initial, true, "/restart/initial"));
  add(check_restart(config.restart.other, false, "/restart/default"));
  const std::size_t n = config.nodes.size();
  for (const auto& [mask, params] : config.restart.overrides) {
    add(check_restart(params, mask == 0, "/restart/overrides/" + NetworkState(mask).bit_string(n)));
  }
  return issues;
}

}  // namespace

GameConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw ParseError("config parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError("config document must be a JSON object");

  Reader rd;
  GameConfig config;
  if (auto schema = rd.string(root, "schema", ""); schema && *schema != kConfigSchema) {
    rd.fail("/schema", "unsupported schema '" + *schema + "', expected '" +
                           std::string(kConfigSchema) + "'");
  }

  if (const json* nodes = rd.array(root, "nodes", "")) {
    if (nodes->empty()) rd.fail("/nodes", "at least one node is required");
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "/nodes/" + std::to_string(i);
      const json& item = (*nodes)[i];
      if (!item.is_object()) {
        rd.fail(path, "expected an object");
        continue;
      }
      NodeConfig node;
      node.name = rd.string(item, "name", path, false).value_or(std::to_string(i + 1));
      node.independent_asset = rd.number(item, "independent_asset", path).value_or(0.0);
      if (node.independent_asset < 0.0) rd.fail(path + "/independent_asset", "must be >= 0");
      if (const json* probs = rd.object(item, "probs", path)) {
        const std::string pp = path + "/probs";
        node.probs.p_d1 = rd.number(*probs, "p_d1", pp).value_or(0.0);
        node.probs.p_n1 = rd.number(*probs, "p_n1", pp).value_or(0.0);
        node.probs.p_d0 = rd.number(*probs, "p_d0", pp).value_or(0.0);
        node.probs.p_n0 = rd.number(*probs, "p_n0", pp).value_or(0.0);
      }
      config.nodes.push_back(std::move(node));
    }
  }
  config.influence_edges = rd.edges(root, "influence_edges");
  config.support_edges = rd.edges(root, "support_edges");

  if (const json* restart = rd.object(root, "restart", "", false)) {
    if (const json* d = rd.object(*restart, "default", "/restart", false)) {
      rd.restart_params(*d, "/restart/default", config.restart.other);
    }
    if (const json* s1 = rd.object(*restart, "initial", "/restart", false)) {
      rd.restart_params(*s1, "/restart/initial", config.restart.initial);
    }
    if (const json* ov = rd.object(*restart, "overrides", "/restart", false)) {
      for (const auto& [key, value] : ov->items()) {
        const std::string path = "/restart/overrides/" + key;
        auto mask = mask_from_bits(key, config.nodes.size());
        if (!mask) {
          rd.fail(path, "key must be a " + std::to_string(config.nodes.size()) +
                            "-character 0/1 pattern with node 1 leftmost");
          continue;
        }
        if (!value.is_object()) {
          rd.fail(path, "expected an object");
          continue;
        }
        RestartParams params = *mask == 0 ? config.restart.initial : config.restart.other;
        rd.restart_params(value, path, params);
        config.restart.overrides[*mask] = params;
      }
    }
  }

  if (const json* solver = rd.object(root, "solver", "", false)) {
    if (auto tol = rd.number(*solver, "tolerance", "/solver", false)) {
      if (*tol > 0.0) {
        config.solver.tolerance = *tol;
      } else {
        rd.fail("/solver/tolerance", "must be > 0");
      }
    }
    if (const json* it = rd.member(*solver, "max_iters", "/solver", false)) {
      if (it->is_number_unsigned() && it->get<std::size_t>() > 0) {
        config.solver.max_iters = it->get<std::size_t>();
      } else {
        rd.fail("/solver/max_iters", "expected a positive integer");
      }
    }
    if (auto mode = rd.string(*solver, "action_mode", "/solver", false)) {
      if (auto parsed = parse_action_mode(*mode)) {
        config.game.action_mode = *parsed;
      } else {
        rd.fail("/solver/action_mode", "expected 'reduced' or 'full'");
      }
    }
  }
  if (auto valuation = rd.string(root, "asset_valuation", "", false)) {
    if (auto parsed = parse_asset_valuation(*valuation)) {
      config.game.asset_valuation = *parsed;
    } else {
      rd.fail("/asset_valuation", "expected 'renormalized' or 'adjusted'");
    }
  }

  if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
  return config;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GameConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::vector<std::string> validate_config(const GameConfig& config) {
  Matrices m = assemble(config);
  std::vector<std::string> issues = std::move(m.issues);
  if (config.nodes.size() > NetworkState::kMaxNodes) {
    issues.push_back("/nodes: " + std::to_string(config.nodes.size()) + " nodes exceeds the limit of " +
                     std::to_string(NetworkState::kMaxNodes));
    return issues;
  }
  if (issues.empty()) {
    auto net_issues = InfluenceNetwork::check(m.influence, m.assets, m.support, m.probs);
    issues.insert(issues.end(), net_issues.begin(), net_issues.end());
  }
  auto restart = restart_issues(config);
  issues.insert(issues.end(), restart.begin(), restart.end());
  return issues;
}

InfluenceNetwork build_network(const GameConfig& config) {
  Matrices m = assemble(config);
  if (!m.issues.empty()) throw ValidationError(std::move(m.issues));
  return InfluenceNetwork(std::move(m.influence), std::move(m.assets), std::move(m.support),
                          std::move(m.probs));
}

StateSpace build_state_space(const GameConfig& config, std::size_t max_nodes) {
  return StateSpace(build_network(config), config.restart, max_nodes);
}

}  // namespace secgame
