#include "gnomes/harness/heatmap.hpp"

#include <sstream>

namespace gnomes {

int Heatmap::true_positives() const {
  int n = 0;
  for (const HeatCell& c : cells) n += c.true_positive;
  return n;
}

int Heatmap::false_positives() const {
  int n = 0;
  for (const HeatCell& c : cells) n += c.false_positive;
  return n;
}

int Heatmap::false_negatives() const {
  int n = 0;
  for (const HeatCell& c : cells) n += c.false_negative;
  return n;
}

Heatmap& Heatmap::operator+=(const Heatmap& other) {
  if (other.width != width || other.height != height) throw InputError("heatmap sizes differ");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i].true_positive += other.cells[i].true_positive;
    cells[i].false_positive += other.cells[i].false_positive;
    cells[i].false_negative += other.cells[i].false_negative;
  }
  return *this;
}

Heatmap emit_heatmap(const HiddenInfoDict& omega, const MazeSide& human_side) {
  Heatmap map{human_side.width(), human_side.height(), {}};
  map.cells.resize(static_cast<std::size_t>(map.width) * map.height);
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const Cell c{x, y};
      const DirectionSet rejected = omega.rejected(c);
      HeatCell& h = map.cells[y * map.width + x];
      for (Direction d : kMoveDirections) {
        if (!human_side.contains(neighbor(c, d))) continue;
        const bool wall = human_side.blocked(c, d);
        const bool flagged = rejected.contains(d);
        if (wall && flagged) ++h.true_positive;
        if (!wall && flagged) ++h.false_positive;
        if (wall && !flagged) ++h.false_negative;
      }
    }
  }
  // Entries recorded for cells outside the grid would be false by definition.
  for (const auto& [cell, dirs] : omega.entries())
    if (!human_side.contains(cell)) throw InputError("rejection recorded outside the maze at " + to_string(cell));
  return map;
}

std::string render_heatmap(const Heatmap& map) {
  std::ostringstream out;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const HeatCell& h = map.at({x, y});
      out << (h.false_positive ? 'F' : h.true_positive ? 'T' : h.false_negative ? 'n' : '.');
    }
    out << '\n';
  }
  out << "true_positive " << map.true_positives() << "\nfalse_positive " << map.false_positives()
      << "\nfalse_negative " << map.false_negatives() << '\n';
  return out.str();
}

void to_json(nlohmann::json& j, const Heatmap& map) {
  j = {{"v", 1}, {"width", map.width}, {"height", map.height},
       {"true_positive", map.true_positives()}, {"false_positive", map.false_positives()},
       {"false_negative", map.false_negatives()}, {"cells", nlohmann::json::array()}};
  for (const HeatCell& c : map.cells) j["cells"].push_back({c.true_positive, c.false_positive, c.false_negative});
}

}  // namespace gnomes
