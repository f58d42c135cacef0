#pragma once

// Plain-text exchange format for relations over string identifiers:
//
//   #LEFT x y z
//   #RIGHT 1 2 3 4
//   x<TAB>1
//
// Other lines starting with '#' and blank lines are ignored. When a universe
// is declared, every pair must use declared elements; otherwise universes are
// taken from the pairs.

#include <iosfwd>
#include <string>
#include <vector>

#include "rthes/relation.hpp"

namespace rthes {

using TextRelation = BinaryRelation<std::string, std::string>;
using TextRectangle = Rectangle<std::string, std::string>;

TextRelation read_relation(std::istream& in, const std::string& source = {});
TextRelation read_relation_file(const std::string& path);
void write_relation(std::ostream& out, const TextRelation& rel);

// "{x,y} x {1,2}"
std::string format_rectangle(const TextRectangle& rect);
void write_rectangles(std::ostream& out, const std::vector<TextRectangle>& rects);

}  // namespace rthes
