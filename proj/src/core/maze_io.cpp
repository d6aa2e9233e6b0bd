#include "gnomes/core/maze_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace gnomes {
namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

int parse_int(const Line& line, const std::string& word) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(word, &used);
    if (used != word.size()) throw std::invalid_argument(word);
    return value;
  } catch (const std::exception&) {
    throw MazeFormatError(line.number, "expected an integer, got '" + word + "'");
  }
}

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

MazeSide read_side(const std::vector<Line>& lines, std::size_t& pos, int width, int height, const char* label) {
  std::vector<std::uint8_t> masks;
  masks.reserve(static_cast<std::size_t>(width * height));
  const std::size_t first = pos;
  for (int y = 0; y < height; ++y, ++pos) {
    if (pos >= lines.size())
      throw MazeFormatError(lines.empty() ? 1 : lines.back().number, std::string("missing rows for ") + label);
    const Line& line = lines[pos];
    if (static_cast<int>(line.text.size()) != width)
      throw MazeFormatError(line.number, std::string(label) + " row must have " + std::to_string(width) +
                                             " hex digits");
    for (char ch : line.text) {
      const int v = hex_value(ch);
      if (v < 0) throw MazeFormatError(line.number, std::string("invalid hex digit '") + ch + "'");
      masks.push_back(static_cast<std::uint8_t>(v));
    }
  }
  // Report the row holding the offending cell.
  const std::string violation = find_wall_violation(width, height, masks);
  if (!violation.empty()) {
    int row = 0;
    if (auto open = violation.find(','); open != std::string::npos)
      row = std::stoi(violation.substr(open + 1));
    throw MazeFormatError(lines[first + static_cast<std::size_t>(row)].number,
                          std::string(label) + " side: " + violation);
  }
  return MazeSide::from_masks(width, height, std::move(masks));
}

}  // namespace

MazeFormatError::MazeFormatError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string to_maze_text(const Layout& layout) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::ostringstream out;
  out << "gnomes-maze v1 " << layout.width() << ' ' << layout.height() << '\n';
  for (const MazeSide* side : {&layout.ego_side, &layout.human_side}) {
    for (int y = 0; y < side->height(); ++y) {
      for (int x = 0; x < side->width(); ++x) out << kHex[side->mask({x, y})];
      out << '\n';
    }
  }
  out << "start " << layout.start.x << ' ' << layout.start.y << '\n';
  for (std::size_t i = 0; i < layout.rounds.size(); ++i) {
    const RoundSpec& r = layout.rounds[i];
    out << "treasure " << i + 1 << ' ' << r.treasure.x << ' ' << r.treasure.y << ' '
        << to_string(r.treasure_side) << '\n';
  }
  return out.str();
}

Layout parse_maze_text(std::string_view text) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    int number = 0;
    for (std::string raw; std::getline(in, raw);) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto begin = raw.find_first_not_of(" \t");
      if (begin == std::string::npos || raw[begin] == '#') continue;
      const auto end = raw.find_last_not_of(" \t");
      lines.push_back({number, raw.substr(begin, end - begin + 1)});
    }
  }
  if (lines.empty()) throw MazeFormatError(1, "empty maze file");

  const auto header = split_words(lines[0].text);
  if (header.size() != 4 || header[0] != "gnomes-maze")
    throw MazeFormatError(lines[0].number, "expected header 'gnomes-maze v1 <W> <H>'");
  if (header[1] != "v1") throw MazeFormatError(lines[0].number, "unsupported version '" + header[1] + "'");
  const int width = parse_int(lines[0], header[2]);
  const int height = parse_int(lines[0], header[3]);
  if (width < 2 || height < 2 || width > 64 || height > 64)
    throw MazeFormatError(lines[0].number, "dimensions must be between 2 and 64");

  std::size_t pos = 1;
  MazeSide ego = read_side(lines, pos, width, height, "ego");
  MazeSide human = read_side(lines, pos, width, height, "human");

  auto read_cell = [&](const Line& line, const std::string& xs, const std::string& ys) {
    const Cell c{parse_int(line, xs), parse_int(line, ys)};
    if (!ego.contains(c)) throw MazeFormatError(line.number, "cell " + to_string(c) + " is outside the maze");
    return c;
  };

  std::optional<Cell> start;
  std::map<int, RoundSpec> rounds;
  for (; pos < lines.size(); ++pos) {
    const Line& line = lines[pos];
    const auto words = split_words(line.text);
    if (words[0] == "start") {
      if (words.size() != 3) throw MazeFormatError(line.number, "expected 'start <x> <y>'");
      if (start) throw MazeFormatError(line.number, "duplicate start line");
      start = read_cell(line, words[1], words[2]);
    } else if (words[0] == "treasure") {
      if (words.size() != 5) throw MazeFormatError(line.number, "expected 'treasure <round> <x> <y> <E|H>'");
      const int round = parse_int(line, words[1]);
      const auto side = parse_player(words[4]);
      if (!side) throw MazeFormatError(line.number, "treasure side must be E or H");
      if (round < 1) throw MazeFormatError(line.number, "round numbers start at 1");
      if (!rounds.emplace(round, RoundSpec{read_cell(line, words[2], words[3]), *side}).second)
        throw MazeFormatError(line.number, "duplicate treasure for round " + words[1]);
    } else {
      throw MazeFormatError(line.number, "unexpected line '" + line.text + "'");
    }
  }
  const int last_line = lines.back().number;
  if (!start) throw MazeFormatError(last_line, "missing start line");
  if (rounds.empty()) throw MazeFormatError(last_line, "at least one treasure line is required");

  Layout layout{std::move(ego), std::move(human), *start, {}};
  int expected = 1;
  for (const auto& [round, spec] : rounds) {
    if (round != expected) throw MazeFormatError(last_line, "treasure rounds must be numbered 1..N without gaps");
    layout.rounds.push_back(spec);
    ++expected;
  }
  return layout;
}

Layout load_maze_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open maze file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_maze_text(buf.str());
}

void save_maze_file(const std::filesystem::path& path, const Layout& layout) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write maze file " + path.string());
  out << to_maze_text(layout);
}

}  // namespace gnomes
