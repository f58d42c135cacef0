#pragma once

// Binary relations with their rectangles and the exact rectangular
// decomposition. Everything here is a pure function of immutable values.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rthes/errors.hpp"

namespace rthes {

inline constexpr std::size_t kDefaultCellCap = 4096;

template <class Left, class Right>
class BinaryRelation {
 public:
  using left_type = Left;
  using right_type = Right;
  using pair_type = std::pair<Left, Right>;

  BinaryRelation() = default;
  BinaryRelation(std::set<Left> left_universe, std::set<Right> right_universe)
      : left_(std::move(left_universe)), right_(std::move(right_universe)) {}

  void declare_left(const Left& x) { left_.insert(x); }
  void declare_right(const Right& y) { right_.insert(y); }

  // Adds (x, y); the universes grow to include both components.
  void insert(const Left& x, const Right& y) {
    left_.insert(x);
    right_.insert(y);
    if (rows_[x].insert(y).second) ++size_;
  }

  bool contains(const Left& x, const Right& y) const {
    auto it = rows_.find(x);
    return it != rows_.end() && it->second.contains(y);
  }

  const std::set<Right>& row(const Left& x) const {
    static const std::set<Right> kEmpty;
    auto it = rows_.find(x);
    return it == rows_.end() ? kEmpty : it->second;
  }

  std::set<Left> column(const Right& y) const {
    std::set<Left> out;
    for (const auto& [x, ys] : rows_)
      if (ys.contains(y)) out.insert(x);
    return out;
  }

  std::vector<pair_type> pairs() const {
    std::vector<pair_type> out;
    out.reserve(size_);
    for (const auto& [x, ys] : rows_)
      for (const auto& y : ys) out.emplace_back(x, y);
    return out;
  }

  const std::set<Left>& left_universe() const { return left_; }
  const std::set<Right>& right_universe() const { return right_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t cell_count() const { return left_.size() * right_.size(); }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

 private:
  std::set<Left> left_;
  std::set<Right> right_;
  std::map<Left, std::set<Right>> rows_;  // only nonempty rows
  std::size_t size_ = 0;
};

template <class Left, class Right>
struct Rectangle {
  std::set<Left> domain;
  std::set<Right> codomain;

  std::size_t cells() const { return domain.size() * codomain.size(); }

  friend auto operator<=>(const Rectangle&, const Rectangle&) = default;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

namespace detail {

template <class Set>
bool is_subset(const Set& small, const Set& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <class Set>
bool intersects(const Set& a, const Set& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

// Dense bitset over [0, n); rows of the relation after indexing both sides.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool subset_of(const Bits& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }

  Bits operator&(const Bits& other) const {
    Bits out = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= other.words_[w];
    return out;
  }

  friend auto operator<=>(const Bits&, const Bits&) = default;
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

template <class Left, class Right>
struct IndexedRelation {
  std::vector<Left> lefts;
  std::vector<Right> rights;
  std::vector<Bits> rows;

  explicit IndexedRelation(const BinaryRelation<Left, Right>& rel)
      : lefts(rel.left_universe().begin(), rel.left_universe().end()),
        rights(rel.right_universe().begin(), rel.right_universe().end()) {
    rows.reserve(lefts.size());
    for (const auto& x : lefts) {
      Bits row(rights.size());
      for (const auto& y : rel.row(x)) {
        auto pos = std::lower_bound(rights.begin(), rights.end(), y) - rights.begin();
        row.set(static_cast<std::size_t>(pos));
      }
      rows.push_back(std::move(row));
    }
  }
};

template <class Left, class Right>
void check_cap(const BinaryRelation<Left, Right>& rel, std::size_t cap) {
  if (rel.cell_count() > cap) throw CapExceeded(rel.cell_count(), cap);
}

}  // namespace detail

template <class Left, class Right>
std::int64_t gain(const Rectangle<Left, Right>& rect) {
  const auto a = static_cast<std::int64_t>(rect.domain.size());
  const auto b = static_cast<std::int64_t>(rect.codomain.size());
  return a * b - (a + b);
}

template <class Left, class Right>
bool is_rectangle(const std::set<Left>& domain, const std::set<Right>& codomain,
                  const BinaryRelation<Left, Right>& rel) {
  for (const auto& x : domain)
    if (!detail::is_subset(codomain, rel.row(x))) return false;
  return true;
}

template <class Left, class Right>
bool is_rectangle(const Rectangle<Left, Right>& rect, const BinaryRelation<Left, Right>& rel) {
  return is_rectangle(rect.domain, rect.codomain, rel);
}

// Right elements related to every member of `domain`; the whole right
// universe for an empty domain.
template <class Left, class Right>
std::set<Right> shared_codomain(const BinaryRelation<Left, Right>& rel, const std::set<Left>& domain) {
  if (domain.empty()) return rel.right_universe();
  std::set<Right> out = rel.row(*domain.begin());
  for (auto it = std::next(domain.begin()); it != domain.end() && !out.empty(); ++it) {
    std::set<Right> next;
    const auto& row = rel.row(*it);
    std::set_intersection(out.begin(), out.end(), row.begin(), row.end(),
                          std::inserter(next, next.end()));
    out = std::move(next);
  }
  return out;
}

// Left elements related to every member of `codomain`.
template <class Left, class Right>
std::set<Left> shared_domain(const BinaryRelation<Left, Right>& rel, const std::set<Right>& codomain) {
  std::set<Left> out;
  for (const auto& x : rel.left_universe())
    if (detail::is_subset(codomain, rel.row(x))) out.insert(x);
  return out;
}

// A rectangle with an empty side is contained in every other rectangle of
// the relation, so only rectangles with both sides nonempty can be maximal.
template <class Left, class Right>
bool is_maximal(const Rectangle<Left, Right>& rect, const BinaryRelation<Left, Right>& rel) {
  if (!is_rectangle(rect, rel)) throw InvalidRectangle("not a rectangle of the relation");
  if (rect.domain.empty() || rect.codomain.empty()) return false;
  return shared_codomain(rel, rect.domain) == rect.codomain &&
         shared_domain(rel, rect.codomain) == rect.domain;
}

// Every maximal rectangle of `rel`, sorted. Codomains of maximal rectangles
// are exactly the nonempty intersections of rows, which are accumulated one
// row at a time.
template <class Left, class Right>
std::vector<Rectangle<Left, Right>> maximal_rectangles(const BinaryRelation<Left, Right>& rel,
                                                       std::size_t cap = kDefaultCellCap) {
  detail::check_cap(rel, cap);
  const detail::IndexedRelation<Left, Right> ix(rel);

  std::set<detail::Bits> codomains;
  for (const auto& row : ix.rows) {
    if (row.none()) continue;
    std::vector<detail::Bits> fresh{row};
    for (const auto& known : codomains) {
      auto meet = known & row;
      if (!meet.none()) fresh.push_back(std::move(meet));
    }
    codomains.insert(fresh.begin(), fresh.end());
  }

  std::vector<Rectangle<Left, Right>> out;
  out.reserve(codomains.size());
  for (const auto& bits : codomains) {
    Rectangle<Left, Right> rect;
    for (std::size_t j = 0; j < ix.rights.size(); ++j)
      if (bits.test(j)) rect.codomain.insert(ix.rights[j]);
    for (std::size_t i = 0; i < ix.lefts.size(); ++i)
      if (bits.subset_of(ix.rows[i])) rect.domain.insert(ix.lefts[i]);
    out.push_back(std::move(rect));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Preference among rectangles competing for one element: higher gain, then
// larger domain, then the lexicographically smaller domain.
template <class Left, class Right>
bool preferred(const Rectangle<Left, Right>& a, const Rectangle<Left, Right>& b) {
  const auto ga = gain(a);
  const auto gb = gain(b);
  if (ga != gb) return ga > gb;
  if (a.domain.size() != b.domain.size()) return a.domain.size() > b.domain.size();
  return a < b;
}

}  // namespace detail

template <class Left, class Right>
Rectangle<Left, Right> optimal_rectangle(const BinaryRelation<Left, Right>& rel,
                                         const std::pair<Left, Right>& element,
                                         std::size_t cap = kDefaultCellCap) {
  if (!rel.contains(element.first, element.second)) throw ElementNotInRelation();
  const Rectangle<Left, Right>* best = nullptr;
  const auto all = maximal_rectangles(rel, cap);
  for (const auto& rect : all) {
    if (!rect.domain.contains(element.first) || !rect.codomain.contains(element.second)) continue;
    if (best == nullptr || detail::preferred(rect, *best)) best = &rect;
  }
  return *best;  // element lies in at least one maximal rectangle
}

// Covers `rel` with rectangles that are each optimal for at least one of
// their elements:
//   1. every pair of the relation is an elementary relation;
//   2. the optimal rectangles of each pair are found among all maximal
//      rectangles (ties in gain keep every tied rectangle as a candidate);
//   3. candidates are taken greedily by descending gain (then cell count,
//      then domain order) while they cover an uncovered pair;
//   4. scanning by ascending gain, a selected rectangle is dropped when every
//      pair it holds is still covered by another kept rectangle that is
//      optimal for that pair.
// The result is sorted.
template <class Left, class Right>
std::vector<Rectangle<Left, Right>> decompose(const BinaryRelation<Left, Right>& rel,
                                              std::size_t cap = kDefaultCellCap) {
  using Rect = Rectangle<Left, Right>;
  using Cell = std::pair<Left, Right>;
  if (rel.empty()) return {};

  const auto maximal = maximal_rectangles(rel, cap);

  std::map<Cell, std::int64_t> best_gain;
  for (const auto& rect : maximal) {
    const auto g = gain(rect);
    for (const auto& x : rect.domain) {
      for (const auto& y : rect.codomain) {
        auto [it, inserted] = best_gain.try_emplace(Cell{x, y}, g);
        if (!inserted) it->second = std::max(it->second, g);
      }
    }
  }

  auto optimal_for = [&](const Rect& rect, const Left& x, const Right& y) {
    return gain(rect) == best_gain.at(Cell{x, y});
  };

  std::vector<Rect> candidates;
  for (const auto& rect : maximal) {
    bool optimal_somewhere = false;
    for (const auto& x : rect.domain) {
      for (const auto& y : rect.codomain) {
        if (optimal_for(rect, x, y)) {
          optimal_somewhere = true;
          break;
        }
      }
      if (optimal_somewhere) break;
    }
    if (optimal_somewhere) candidates.push_back(rect);
  }

  std::sort(candidates.begin(), candidates.end(), [](const Rect& a, const Rect& b) {
    if (gain(a) != gain(b)) return gain(a) > gain(b);
    if (a.cells() != b.cells()) return a.cells() > b.cells();
    return a < b;
  });

  std::set<Cell> covered;
  std::vector<Rect> selected;
  for (const auto& rect : candidates) {
    if (covered.size() == rel.size()) break;
    bool adds = false;
    for (const auto& x : rect.domain)
      for (const auto& y : rect.codomain)
        if (covered.emplace(x, y).second) adds = true;
    if (adds) selected.push_back(rect);
  }

  // Selection order is descending preference, so walking it backwards visits
  // ascending gain with the least preferred rectangle first.
  std::vector<bool> kept(selected.size(), true);
  for (std::size_t pos = selected.size(); pos-- > 0;) {
    const auto& rect = selected[pos];
    bool redundant = true;
    for (const auto& x : rect.domain) {
      for (const auto& y : rect.codomain) {
        bool other = false;
        for (std::size_t j = 0; j < selected.size() && !other; ++j) {
          if (j == pos || !kept[j]) continue;
          const auto& o = selected[j];
          other = o.domain.contains(x) && o.codomain.contains(y) && optimal_for(o, x, y);
        }
        if (!other) {
          redundant = false;
          break;
        }
      }
      if (!redundant) break;
    }
    if (redundant) kept[pos] = false;
  }

  std::vector<Rect> out;
  for (std::size_t i = 0; i < selected.size(); ++i)
    if (kept[i]) out.push_back(selected[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Rectangle order: r1 <= r2 iff r1's domain is included in r2's
// and r2's codomain is included in r1's. r1 is then a generic of r2.
template <class Left, class Right>
bool leq(const Rectangle<Left, Right>& r1, const Rectangle<Left, Right>& r2) {
  return detail::is_subset(r1.domain, r2.domain) && detail::is_subset(r2.codomain, r1.codomain);
}

template <class Left, class Right>
bool is_neighbor(const Rectangle<Left, Right>& r1, const Rectangle<Left, Right>& r2) {
  const bool share = detail::intersects(r1.domain, r2.domain) ||
                     detail::intersects(r1.codomain, r2.codomain);
  return share && !leq(r1, r2) && !leq(r2, r1);
}

// Lower bound (empty domain, every right element).
template <class Left, class Right>
Rectangle<Left, Right> infimum_of(const BinaryRelation<Left, Right>& rel) {
  return {{}, rel.right_universe()};
}

// Upper bound (every left element, empty codomain).
template <class Left, class Right>
Rectangle<Left, Right> supremum_of(const BinaryRelation<Left, Right>& rel) {
  return {rel.left_universe(), {}};
}

}  // namespace rthes
