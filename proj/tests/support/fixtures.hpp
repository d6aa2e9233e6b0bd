#pragma once

#include "gnomes/core/game.hpp"
#include "gnomes/planner/aismcts.hpp"

namespace gnomes::testing {

/// Minimal maze: at s = (1,1) the ego may only stay or go down to
/// s_d = (1,2); the treasure, visible to the ego, sits to the right of s_d.
/// The partner has rejected left at s and left/down at s_d.
struct MinimalMaze {
  static constexpr Cell s{1, 1};
  static constexpr Cell s_d{1, 2};
  static constexpr Cell treasure{2, 2};

  MazeSide ego_side = [] {
    MazeSide side = MazeSide::open(3, 3);
    side.add_wall(s, Direction::Right);
    side.add_wall(s, Direction::Up);
    side.add_wall(s, Direction::Left);
    return side;
  }();

  HiddenInfoDict omega() const {
    HiddenInfoDict o;
    o.add(s, Direction::Left);
    o.add(s_d, Direction::Left);
    o.add(s_d, Direction::Down);
    return o;
  }

  EgoView view() const { return EgoView{ego_side, treasure, RewardSpec{}}; }

  GameState state() const {
    GameState st;
    st.token = s;
    st.in_control = Player::Ego;
    st.treasure = treasure;
    st.treasure_side = Player::Ego;
    st.round = 2;
    return st;
  }
};

}  // namespace gnomes::testing
