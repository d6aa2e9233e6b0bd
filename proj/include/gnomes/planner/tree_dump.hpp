#pragma once

#include <json.hpp>

#include "gnomes/planner/hidden_info.hpp"
#include "gnomes/planner/search_tree.hpp"

namespace gnomes {

inline constexpr int kTreeDumpVersion = 1;

/// {"v":1,"nodes":[{"id","parent","a","N","T","cell","to_move"}...],"omega":{...}}
nlohmann::json dump_tree(const SearchTree& tree, const HiddenInfoDict& omega);

/// {"x,y": ["left", ...], ...}
nlohmann::json omega_to_json(const HiddenInfoDict& omega);
HiddenInfoDict omega_from_json(const nlohmann::json& j);

}  // namespace gnomes
