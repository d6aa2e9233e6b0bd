#include "gnomes/harness/proxy.hpp"

#include <algorithm>
#include <limits>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/core/oracle.hpp"

namespace gnomes {

std::string_view to_string(ProxyVariant v) {
  switch (v) {
    case ProxyVariant::GreedyFlagging: return "greedy-flagging";
    case ProxyVariant::RandomCompliant: return "random-compliant";
    case ProxyVariant::SilentGreedy: return "silent-greedy";
  }
  return "?";
}

std::optional<ProxyVariant> parse_proxy_variant(std::string_view text) {
  for (auto v : {ProxyVariant::GreedyFlagging, ProxyVariant::RandomCompliant, ProxyVariant::SilentGreedy})
    if (text == to_string(v)) return v;
  return std::nullopt;
}

ProxyHumanPolicy::ProxyHumanPolicy(ProxyConfig config, MazeSide own_side, std::uint64_t seed)
    : config_(config), side_(std::move(own_side)), rng_(seed) {
  if (config_.error_rate < 0.0 || config_.error_rate > 1.0) throw InputError("proxy error rate must be in [0, 1]");
}

void ProxyHumanPolicy::begin_round(std::optional<Cell> treasure) {
  treasure_ = treasure;
  distances_ = treasure ? distances_to(side_, *treasure) : std::vector<int>{};
  visits_.clear();
  last_request_.reset();
}

Direction ProxyHumanPolicy::pick(DirectionSet options) {
  std::vector<Direction> list;
  options.for_each([&](Direction d) { list.push_back(d); });
  return rng_.pick(std::span<const Direction>(list));
}

Direction ProxyHumanPolicy::explore(Cell at) {
  // Least-visited neighbour; staying put only when boxed in.
  int best = std::numeric_limits<int>::max();
  DirectionSet options;
  side_.valid_actions(at).for_each([&](Direction d) {
    if (d == Direction::Noop) return;
    const auto it = visits_.find(neighbor(at, d));
    const int v = it == visits_.end() ? 0 : it->second;
    if (v < best) {
      best = v;
      options = {};
    }
    if (v == best) options.insert(d);
  });
  return options.empty() ? Direction::Noop : pick(options);
}

std::optional<Direction> ProxyHumanPolicy::request_from(Cell at) {
  if (!treasure_ || at == *treasure_) return std::nullopt;
  const DirectionSet on_path = shortest_path_moves(side_, distances_, at) - ego_refusals_.rejected(at);
  if (on_path.empty()) return std::nullopt;
  return pick(on_path);
}

ProxyDecision ProxyHumanPolicy::act(const GameState& state, Flag ego_flag) {
  const Cell at = state.token;
  ++visits_[at];

  if (ego_flag == Flag::Reject && last_request_) ego_refusals_.add(last_request_->first, last_request_->second);
  last_request_.reset();

  const bool silent = config_.variant == ProxyVariant::SilentGreedy;
  std::optional<Direction> proposal;
  if (is_action(ego_flag)) proposal = as_direction(ego_flag);

  // The proposal is for this cell. A refusal still lets the human move on.
  bool refused = false;
  if (proposal && !silent) {
    const bool blocked = side_.blocked(at, *proposal);
    const bool mistaken = !blocked && *proposal != Direction::Noop && rng_.bernoulli(config_.error_rate);
    if (blocked || mistaken) {
      ++rejections_sent_;
      if (mistaken) ++false_rejections_;
      refused = true;
    }
  }

  ProxyDecision d;
  const bool knows_goal = treasure_.has_value() && config_.variant != ProxyVariant::RandomCompliant;
  const DirectionSet path = knows_goal ? shortest_path_moves(side_, distances_, at) : DirectionSet{};

  if (!path.empty()) {
    d.action = pick(path);
  } else if (proposal && !refused && !side_.blocked(at, *proposal)) {
    d.action = *proposal;
    d.flag = silent ? Flag::None : Flag::Accept;
  } else if (config_.variant == ProxyVariant::RandomCompliant) {
    d.action = pick(side_.valid_actions(at));
  } else {
    d.action = explore(at);
  }

  if (refused) {
    d.flag = Flag::Reject;
  } else if (config_.variant == ProxyVariant::GreedyFlagging && knows_goal) {
    const Cell next = neighbor(at, d.action);
    if (const auto request = request_from(next)) {
      d.flag = to_flag(*request);
      last_request_ = {next, *request};
    }
  }
  return d;
}

std::string proxy_message(Flag flag) {
  switch (flag) {
    case Flag::Noop: return "Can you stay put?";
    case Flag::Right:
    case Flag::Up:
    case Flag::Left:
    case Flag::Down: return "Can you move " + std::string(to_string(flag)) + "?";
    case Flag::Accept: return "Ok.";
    case Flag::Reject: return "I cannot, there is a wall in that direction.";
    case Flag::Inquiry: return "Where exactly is the hidden treasure located?";
    case Flag::None: return "";
  }
  return "";
}

}  // namespace gnomes
