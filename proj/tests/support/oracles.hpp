#pragma once

// Brute-force reference computations used by the unit and acceptance tests.
// They work on plain index sets and never call the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rthes/relation.hpp"
#include "rthes/thesaurus.hpp"

namespace rthes::oracle {

using IntRelation = BinaryRelation<int, int>;
using IntRect = Rectangle<int, int>;

inline std::int64_t gain_of(std::size_t a, std::size_t b) {
  const auto x = static_cast<std::int64_t>(a);
  const auto y = static_cast<std::int64_t>(b);
  return x * y - (x + y);
}

// Random relation over lefts [0, rows) and rights [0, cols) with the given
// pair density; both universes are declared in full.
inline IntRelation random_relation(std::mt19937& rng, int rows, int cols, double density) {
  IntRelation rel;
  std::bernoulli_distribution coin(density);
  for (int x = 0; x < rows; ++x) rel.declare_left(x);
  for (int y = 0; y < cols; ++y) rel.declare_right(y);
  for (int x = 0; x < rows; ++x)
    for (int y = 0; y < cols; ++y)
      if (coin(rng)) rel.insert(x, y);
  return rel;
}

inline bool all_pairs_in(const IntRelation& rel, const std::set<int>& a, const std::set<int>& b) {
  for (int x : a)
    for (int y : b)
      if (!rel.contains(x, y)) return false;
  return true;
}

// Maximal rectangles by enumerating every subset of lefts: a subset closed
// under "lefts sharing all its common rights" yields one maximal rectangle.
inline std::set<IntRect> maximal(const IntRelation& rel) {
  const std::vector<int> lefts(rel.left_universe().begin(), rel.left_universe().end());
  const std::vector<int> rights(rel.right_universe().begin(), rel.right_universe().end());
  std::set<IntRect> out;
  const std::size_t n = lefts.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::set<int> a;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) a.insert(lefts[i]);
    std::set<int> b;
    for (int y : rights) {
      bool all = true;
      for (int x : a) all = all && rel.contains(x, y);
      if (all) b.insert(y);
    }
    if (b.empty()) continue;
    std::set<int> closure;
    for (int x : lefts) {
      bool all = true;
      for (int y : b) all = all && rel.contains(x, y);
      if (all) closure.insert(x);
    }
    if (closure == a) out.insert(IntRect{a, b});
  }
  return out;
}

// Largest gain of a maximal rectangle holding (x, y).
inline std::int64_t best_gain(const std::set<IntRect>& maximals, int x, int y) {
  std::int64_t best = INT64_MIN;
  for (const auto& r : maximals)
    if (r.domain.contains(x) && r.codomain.contains(y))
      best = std::max(best, gain_of(r.domain.size(), r.codomain.size()));
  return best;
}

inline bool order_leq(const IntRect& r1, const IntRect& r2) {
  return std::includes(r2.domain.begin(), r2.domain.end(), r1.domain.begin(), r1.domain.end()) &&
         std::includes(r1.codomain.begin(), r1.codomain.end(), r2.codomain.begin(), r2.codomain.end());
}

// Synthetic significant-term sets: documents 1..docs over concepts T0..T{terms-1}.
inline std::map<DocId, std::set<ConceptId>> random_term_sets(std::mt19937& rng, int docs, int terms,
                                                             double density) {
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> pick(0, terms - 1);
  std::map<DocId, std::set<ConceptId>> out;
  for (int d = 1; d <= docs; ++d) {
    auto& set = out[static_cast<DocId>(d)];
    for (int t = 0; t < terms; ++t)
      if (coin(rng)) set.insert("T" + std::to_string(t));
    if (set.empty()) set.insert("T" + std::to_string(pick(rng)));
  }
  return out;
}

// Documents indexed by every concept of `concepts` in the relation.
inline std::set<DocId> common_documents(const TermDocRelation& rel, const std::set<ConceptId>& concepts) {
  std::set<DocId> out = rel.right_universe();
  for (const auto& c : concepts) {
    std::set<DocId> keep;
    for (DocId d : out)
      if (rel.contains(c, d)) keep.insert(d);
    out = std::move(keep);
  }
  return out;
}

}  // namespace rthes::oracle
