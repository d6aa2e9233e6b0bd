#pragma once

#include <map>

#include "gnomes/core/types.hpp"

namespace gnomes {

/// Partner actions rejected at each cell, as learned from Reject flags.
/// Entries only grow; Noop is never recorded.
class HiddenInfoDict {
 public:
  /// Returns true if the entry is new.
  bool add(Cell cell, Direction action) {
    if (action == Direction::Noop) return false;
    DirectionSet& set = entries_[cell];
    if (set.contains(action)) return false;
    set.insert(action);
    return true;
  }

  DirectionSet rejected(Cell cell) const {
    auto it = entries_.find(cell);
    return it == entries_.end() ? DirectionSet{} : it->second;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t cell_count() const { return entries_.size(); }
  const std::map<Cell, DirectionSet>& entries() const { return entries_; }

  friend bool operator==(const HiddenInfoDict&, const HiddenInfoDict&) = default;

 private:
  std::map<Cell, DirectionSet> entries_;
};

}  // namespace gnomes
