#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/planner/aismcts.hpp"

namespace gnomes {

/// Per-cell counts of (cell, direction) pairs. Boundary walls are common
/// knowledge and never counted.
struct HeatCell {
  int true_positive = 0;   // rejected and walled on the human side
  int false_positive = 0;  // rejected but open on the human side
  int false_negative = 0;  // walled but never rejected
  friend bool operator==(const HeatCell&, const HeatCell&) = default;
};

struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<HeatCell> cells;  // row-major

  const HeatCell& at(Cell c) const { return cells[c.y * width + c.x]; }
  int true_positives() const;
  int false_positives() const;
  int false_negatives() const;
  Heatmap& operator+=(const Heatmap& other);
};

Heatmap emit_heatmap(const HiddenInfoDict& omega, const MazeSide& human_side);
inline Heatmap emit_heatmap(const PlannerMemory& memory, const MazeSide& human_side) {
  return emit_heatmap(memory.omega, human_side);
}

/// One character per cell: 'F' any false positive, 'T' any true positive,
/// 'n' only missed walls, '.' nothing; followed by totals.
std::string render_heatmap(const Heatmap& map);

void to_json(nlohmann::json& j, const Heatmap& map);

}  // namespace gnomes
