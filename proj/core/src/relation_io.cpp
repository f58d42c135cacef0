#include "rthes/relation_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rthes {
namespace {

std::set<std::string> split_words(const std::string& text) {
  std::set<std::string> out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) out.insert(word);
  return out;
}

std::string join(const auto& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

}  // namespace

TextRelation read_relation(std::istream& in, const std::string& source) {
  std::set<std::string> left;
  std::set<std::string> right;
  bool left_declared = false;
  bool right_declared = false;
  std::vector<std::pair<std::string, std::string>> pairs;

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("#LEFT", 0) == 0) {
      left.merge(split_words(line.substr(5)));
      left_declared = true;
      continue;
    }
    if (line.rfind("#RIGHT", 0) == 0) {
      right.merge(split_words(line.substr(6)));
      right_declared = true;
      continue;
    }
    if (line.front() == '#') continue;

    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(source, number, "expected 'left<TAB>right'");
    std::string x = line.substr(0, tab);
    std::string y = line.substr(tab + 1);
    if (x.empty() || y.empty()) throw ParseError(source, number, "empty element");
    if (left_declared && !left.contains(x))
      throw ParseError(source, number, "left element '" + x + "' not declared in #LEFT");
    if (right_declared && !right.contains(y))
      throw ParseError(source, number, "right element '" + y + "' not declared in #RIGHT");
    pairs.emplace_back(std::move(x), std::move(y));
  }

  TextRelation rel(std::move(left), std::move(right));
  for (auto& [x, y] : pairs) rel.insert(x, y);
  return rel;
}

TextRelation read_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_relation(in, path);
}

void write_relation(std::ostream& out, const TextRelation& rel) {
  out << "#LEFT";
  for (const auto& x : rel.left_universe()) out << ' ' << x;
  out << "\n#RIGHT";
  for (const auto& y : rel.right_universe()) out << ' ' << y;
  out << '\n';
  for (const auto& [x, y] : rel.pairs()) out << x << '\t' << y << '\n';
}

std::string format_rectangle(const TextRectangle& rect) {
  return "{" + join(rect.domain) + "} x {" + join(rect.codomain) + "}";
}

void write_rectangles(std::ostream& out, const std::vector<TextRectangle>& rects) {
  for (const auto& rect : rects)
    out << format_rectangle(rect) << "\tgain=" << gain(rect) << '\n';
}

}  // namespace rthes
