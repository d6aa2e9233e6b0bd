#include "gnomes/planner/search_tree.hpp"

#include <cmath>

namespace gnomes {

int SearchNode::child_count() const {
  int n = 0;
  for (NodeId c : children)
    if (c != kNoNode) ++n;
  return n;
}

SearchTree::SearchTree(Cell root_cell, Player root_to_move) {
  nodes_.reserve(256);
  SearchNode root;
  root.cell = root_cell;
  root.to_move = root_to_move;
  nodes_.push_back(std::move(root));
}

NodeId SearchTree::add_child(NodeId parent, Direction action, Cell cell, Player to_move) {
  if (node(parent).child(action) != kNoNode) throw std::logic_error("duplicate child action");
  const auto id = static_cast<NodeId>(nodes_.size());
  SearchNode child;
  child.parent = parent;
  child.action = action;
  child.cell = cell;
  child.to_move = to_move;
  nodes_.push_back(std::move(child));
  node(parent).children[static_cast<std::size_t>(index_of(action))] = id;
  return id;
}

std::vector<NodeId> SearchTree::children(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId c : node(id).children)
    if (c != kNoNode) out.push_back(c);
  return out;
}

double ucb(const SearchTree& tree, NodeId id, double exploration) {
  const SearchNode& v = tree.node(id);
  if (v.is_root()) throw ContractViolation("ucb is undefined for the root");
  if (v.visits < 1) throw ContractViolation("ucb of an unvisited node");
  const SearchNode& p = tree.node(v.parent);
  if (p.visits < 1) throw ContractViolation("ucb with an unvisited parent");
  return v.total_reward / v.visits +
         exploration * std::sqrt(std::log(static_cast<double>(p.visits)) / v.visits);
}

ChildLookup find_or_create_child(SearchTree& tree, NodeId id, Direction action, Cell cell, Player to_move,
                                 bool on_rollout) {
  if (on_rollout) return {id, false};
  if (NodeId existing = tree.node(id).child(action); existing != kNoNode) return {existing, false};
  return {tree.add_child(id, action, cell, to_move), true};
}

void backpropagate(SearchTree& tree, NodeId id, double reward) {
  for (NodeId v = id; v != kNoNode; v = tree.node(v).parent) {
    SearchNode& n = tree.node(v);
    ++n.visits;
    n.total_reward += reward;
  }
}

}  // namespace gnomes
