#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gnomes/core/types.hpp"

namespace gnomes {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct SearchNode {
  NodeId parent = kNoNode;
  /// Child per incoming action, kNoNode where absent.
  std::array<NodeId, 5> children{kNoNode, kNoNode, kNoNode, kNoNode, kNoNode};
  std::optional<Direction> action;
  Cell cell;
  Player to_move = Player::Ego;
  double total_reward = 0.0;
  int visits = 0;
  /// Untried actions, created on first selection at this node.
  std::optional<std::vector<Direction>> untried;

  NodeId child(Direction d) const { return children[static_cast<std::size_t>(index_of(d))]; }
  int child_count() const;
  bool is_root() const { return parent == kNoNode; }
};

/// Arena-backed tree; node 0 is the root.
class SearchTree {
 public:
  SearchTree(Cell root_cell, Player root_to_move);

  NodeId root() const { return 0; }
  SearchNode& node(NodeId id) { return nodes_.at(static_cast<std::size_t>(id)); }
  const SearchNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return nodes_.size(); }

  /// Appends a child; throws std::logic_error if one already exists for `action`.
  NodeId add_child(NodeId parent, Direction action, Cell cell, Player to_move);

  /// Children ids in action order.
  std::vector<NodeId> children(NodeId id) const;

 private:
  std::vector<SearchNode> nodes_;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// T(v)/N(v) + c * sqrt(ln N(parent) / N(v)). Throws ContractViolation for
/// the root or an unvisited node.
double ucb(const SearchTree& tree, NodeId id, double exploration);

struct ChildLookup {
  NodeId node;
  bool created;
};

/// Off rollout: returns the child for `action`, creating it when missing.
/// On rollout: leaves the tree alone and returns `id` unchanged.
ChildLookup find_or_create_child(SearchTree& tree, NodeId id, Direction action, Cell cell, Player to_move,
                                 bool on_rollout);

/// Adds one visit and `reward` to `id` and every ancestor.
void backpropagate(SearchTree& tree, NodeId id, double reward);

}  // namespace gnomes
