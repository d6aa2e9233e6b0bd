#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gnomes/core/game.hpp"
#include "gnomes/core/random.hpp"
#include "gnomes/planner/flag.hpp"
#include "gnomes/planner/hidden_info.hpp"
#include "gnomes/planner/search_tree.hpp"

namespace gnomes {

struct PlannerConfig {
  int iterations = 100;
  double exploration = std::sqrt(2.0);
  /// Longest simulated path per iteration; 0 means 4 * width * height.
  int rollout_cap = 0;

  void validate() const;
  int effective_rollout_cap(int width, int height) const { return rollout_cap > 0 ? rollout_cap : 4 * width * height; }
};

/// State the ego player carries between decisions.
struct PlannerMemory {
  HiddenInfoDict omega;
  Flag last_flag = Flag::None;
  std::uint64_t rng_seed = 0;
  /// Reject flags received while the last output flag was not a move.
  int protocol_anomalies = 0;
  /// Cell the last move proposal was made for. A Reject is recorded there,
  /// which is the root cell whenever the partner stayed put; falls back to
  /// the root cell when unset.
  std::optional<Cell> last_flag_cell;
};

/// What the ego player knows about the game: its own side, the reward, and
/// the treasure cell only when that treasure is visible to it.
struct EgoView {
  MazeSide own_side;
  std::optional<Cell> goal;
  RewardSpec reward;
};

struct Decision {
  Direction action = Direction::Noop;
  Flag flag = Flag::None;

  friend bool operator==(const Decision&, const Decision&) = default;
};

class NoPlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Asymmetric information-set MCTS with flag exchange, from the ego player's
/// perspective. Builds one tree per player each decision; only the ego tree
/// feeds the final action/flag selection.
class Planner {
 public:
  Planner(EgoView view, PlannerConfig config = {});

  /// Runs the configured number of iterations from `state` (which must be the
  /// ego's turn and not final) and returns the flag-aware best action.
  Decision plan(const GameState& state, Flag flag_in, PlannerMemory& memory);

  /// Trees from the most recent plan() call.
  const SearchTree& ego_tree() const { return trees_[0]; }
  const SearchTree& human_tree() const { return trees_[1]; }

  const EgoView& view() const { return view_; }
  const PlannerConfig& config() const { return config_; }

  /// Moves the ego believes `mover` may take at `cell`: its own valid actions
  /// for itself, in-grid moves not yet rejected for the partner.
  DirectionSet candidate_actions(Cell cell, Player mover, const HiddenInfoDict& omega) const;

  /// Selection pops an untried action (instantiating the untried set on first
  /// visit) or follows the best-ucb child; simulation samples uniformly from
  /// the candidate set.
  Direction explore(SearchTree& tree, NodeId node, Cell cell, Player mover, const HiddenInfoDict& omega,
                    bool on_rollout, Rng& rng) const;

  /// Three-stage flag handling over the root's children. Updates
  /// memory.omega on Reject and always records the output flag in
  /// memory.last_flag. Throws NoPlanError for a childless root.
  Decision select_best_action(const SearchTree& tree, Flag flag_in, PlannerMemory& memory, Rng& rng) const;

 private:
  /// Belief transition; partner moves ignore unknown walls.
  Cell transition(Cell cell, Direction action) const { return neighbor(cell, action); }
  void run_iteration(PlannerMemory& memory, Rng& rng);

  EgoView view_;
  PlannerConfig config_;
  std::array<SearchTree, 2> trees_;
};

}  // namespace gnomes
