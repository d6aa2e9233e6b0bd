#include "gnomes/planner/tree_dump.hpp"

#include <string>

#include "gnomes/core/maze_side.hpp"

namespace gnomes {

nlohmann::json omega_to_json(const HiddenInfoDict& omega) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [cell, set] : omega.entries()) {
    nlohmann::json dirs = nlohmann::json::array();
    set.for_each([&](Direction d) { dirs.push_back(std::string(to_string(d))); });
    j[std::to_string(cell.x) + "," + std::to_string(cell.y)] = dirs;
  }
  return j;
}

HiddenInfoDict omega_from_json(const nlohmann::json& j) {
  HiddenInfoDict omega;
  for (const auto& [key, dirs] : j.items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw InputError("bad omega key '" + key + "'");
    const Cell cell{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    for (const auto& d : dirs) {
      const auto dir = parse_direction(d.get<std::string>());
      if (!dir) throw InputError("bad omega direction in '" + key + "'");
      omega.add(cell, *dir);
    }
  }
  return omega;
}

nlohmann::json dump_tree(const SearchTree& tree, const HiddenInfoDict& omega) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const SearchNode& n = tree.node(static_cast<NodeId>(i));
    nodes.push_back({{"id", i},
                     {"parent", n.parent},
                     {"a", n.action ? nlohmann::json(std::string(to_string(*n.action))) : nlohmann::json(nullptr)},
                     {"N", n.visits},
                     {"T", n.total_reward},
                     {"cell", {n.cell.x, n.cell.y}},
                     {"to_move", std::string(to_string(n.to_move))}});
  }
  return {{"v", kTreeDumpVersion}, {"nodes", nodes}, {"omega", omega_to_json(omega)}};
}

}  // namespace gnomes
