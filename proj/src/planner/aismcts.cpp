#include "gnomes/planner/aismcts.hpp"

#include <limits>
#include <vector>

namespace gnomes {
namespace {

constexpr std::size_t tree_index(Player p) { return p == Player::Ego ? 0 : 1; }

/// Uniform choice among ids maximising `score`.
template <typename Score>
NodeId random_argmax(const std::vector<NodeId>& ids, Score score, Rng& rng) {
  double best = -std::numeric_limits<double>::infinity();
  NodeId chosen = kNoNode;
  std::uint64_t ties = 0;
  for (NodeId id : ids) {
    const double s = score(id);
    if (s > best) {
      best = s;
      chosen = id;
      ties = 1;
    } else if (s == best && rng.below(++ties) == 0) {
      chosen = id;
    }
  }
  return chosen;
}

}  // namespace

void PlannerConfig::validate() const {
  if (iterations < 1) throw InputError("iterations must be >= 1");
  if (!(exploration >= 0.0)) throw InputError("exploration constant must be >= 0");
  if (rollout_cap < 0) throw InputError("rollout cap must be >= 1 (or 0 for the default)");
}

Planner::Planner(EgoView view, PlannerConfig config)
    : view_(std::move(view)),
      config_(config),
      trees_{SearchTree({0, 0}, Player::Ego), SearchTree({0, 0}, Player::Human)} {
  config_.validate();
  view_.reward.validate();
  if (view_.goal && !view_.own_side.contains(*view_.goal)) throw InputError("goal lies outside the maze");
}

DirectionSet Planner::candidate_actions(Cell cell, Player mover, const HiddenInfoDict& omega) const {
  if (mover == Player::Ego) return view_.own_side.valid_actions(cell);
  DirectionSet moves{Direction::Noop};
  for (Direction d : kMoveDirections)
    if (view_.own_side.contains(neighbor(cell, d))) moves.insert(d);
  return moves - omega.rejected(cell);
}

Direction Planner::explore(SearchTree& tree, NodeId id, Cell cell, Player mover, const HiddenInfoDict& omega,
                           bool on_rollout, Rng& rng) const {
  const DirectionSet candidates = candidate_actions(cell, mover, omega);
  if (on_rollout) {
    Direction options[5];
    int n = 0;
    candidates.for_each([&](Direction d) { options[n++] = d; });
    return options[rng.below(static_cast<std::uint64_t>(n))];
  }

  SearchNode& node = tree.node(id);
  if (!node.untried) {
    std::vector<Direction> untried;
    candidates.for_each([&](Direction d) {
      if (node.child(d) == kNoNode) untried.push_back(d);
    });
    rng.shuffle(std::span<Direction>(untried));
    node.untried = std::move(untried);
  }
  if (!node.untried->empty()) {
    const Direction a = node.untried->back();
    node.untried->pop_back();
    return a;
  }
  const NodeId best = random_argmax(
      tree.children(id), [&](NodeId c) { return ucb(tree, c, config_.exploration); }, rng);
  if (best == kNoNode) throw ContractViolation("exhausted node without children");
  return *tree.node(best).action;
}

void Planner::run_iteration(PlannerMemory& memory, Rng& rng) {
  const int cap = config_.effective_rollout_cap(view_.own_side.width(), view_.own_side.height());
  Cell cell = trees_[0].node(0).cell;
  Player mover = Player::Ego;
  std::array<NodeId, 2> at{trees_[0].root(), trees_[1].root()};
  bool on_rollout = false;
  double total = 0.0;

  for (int steps = 0; steps < cap && !(view_.goal && cell == *view_.goal); ++steps) {
    const std::size_t t = tree_index(mover);
    const Direction a = explore(trees_[t], at[t], cell, mover, memory.omega, on_rollout, rng);
    const Cell next = transition(cell, a);
    const bool reached = view_.goal && next == *view_.goal;
    total += reached ? view_.reward.goal_reward : view_.reward.step_penalty;
    cell = next;
    mover = other(mover);

    bool created = false;
    for (std::size_t k = 0; k < trees_.size(); ++k) {
      const ChildLookup res = find_or_create_child(trees_[k], at[k], a, cell, mover, on_rollout);
      at[k] = res.node;
      created = created || res.created;
    }
    on_rollout = on_rollout || created;
  }
  for (std::size_t k = 0; k < trees_.size(); ++k) backpropagate(trees_[k], at[k], total);
}

Decision Planner::plan(const GameState& state, Flag flag_in, PlannerMemory& memory) {
  if (is_final(state)) throw NoPlanError("state is already final");
  if (state.in_control != Player::Ego) throw InputError("plan() called outside the ego player's turn");
  if (!view_.own_side.contains(state.token)) throw InputError("token lies outside the maze");

  Rng rng(Rng::derive(memory.rng_seed, static_cast<std::uint64_t>(state.turn) * 131 +
                                           static_cast<std::uint64_t>(state.round)));
  trees_ = {SearchTree(state.token, Player::Ego), SearchTree(state.token, Player::Ego)};
  for (int i = 0; i < config_.iterations; ++i) run_iteration(memory, rng);
  return select_best_action(trees_[0], flag_in, memory, rng);
}

Decision Planner::select_best_action(const SearchTree& tree, Flag flag_in, PlannerMemory& memory,
                                     Rng& rng) const {
  const SearchNode& root = tree.node(tree.root());
  const std::vector<NodeId> children = tree.children(tree.root());
  if (children.empty()) throw NoPlanError("root has no children");

  std::optional<Flag> out;
  if (flag_in == Flag::Inquiry) {
    out = Flag::Inquiry;
  } else if (flag_in == Flag::Reject) {
    const auto rejected = as_direction(memory.last_flag);
    if (rejected && *rejected != Direction::Noop)
      memory.omega.add(memory.last_flag_cell.value_or(root.cell), *rejected);
    else
      ++memory.protocol_anomalies;
  } else if (const auto wanted = as_direction(flag_in);
             wanted && !view_.own_side.valid_actions(root.cell).contains(*wanted)) {
    out = Flag::Reject;
  }

  int most = 0;
  for (NodeId c : children) most = std::max(most, tree.node(c).visits);
  std::vector<NodeId> best;
  for (NodeId c : children)
    if (tree.node(c).visits == most) best.push_back(c);

  NodeId chosen = kNoNode;
  if (const auto wanted = as_direction(flag_in)) {
    for (NodeId c : best)
      if (tree.node(c).action == *wanted) chosen = c;
  }
  if (chosen == kNoNode) chosen = best[rng.below(best.size())];

  if (!out) {
    const SearchNode& c = tree.node(chosen);
    const DirectionSet pruned = memory.omega.rejected(c.cell);
    std::vector<NodeId> grand;
    for (NodeId g : tree.children(chosen))
      if (!pruned.contains(*tree.node(g).action)) grand.push_back(g);
    if (grand.empty()) {
      out = Flag::None;
    } else {
      const NodeId g = random_argmax(grand, [&](NodeId id) { return double(tree.node(id).visits); }, rng);
      out = to_flag(*tree.node(g).action);
    }
  }
  memory.last_flag = *out;
  memory.last_flag_cell = is_action(*out) ? std::optional(tree.node(chosen).cell) : std::nullopt;
  return {*tree.node(chosen).action, *out};
}

}  // namespace gnomes
