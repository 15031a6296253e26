#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace dyadic {

// A node of the dyadic tree over the root [0, 1). Level 0 is the root, level l
// has 2^l intervals of length 2^-l. Negative levels denote the zero-padded
// super-roots [k 2^j, (k+1) 2^j) with j = -level; only index 0 of those
// overlaps the root.
struct DyadicInterval {
  int level = 0;
  std::int64_t index = 0;

  static DyadicInterval root() { return {0, 0}; }

  double length() const { return std::ldexp(1.0, -level); }
  double left() const { return static_cast<double>(index) * length(); }
  double right() const { return static_cast<double>(index + 1) * length(); }

  DyadicInterval left_child() const { return {level + 1, 2 * index}; }
  DyadicInterval right_child() const { return {level + 1, 2 * index + 1}; }

  // Non-strict containment: an interval contains itself.
  bool contains(const DyadicInterval& other) const {
    return level <= other.level && (other.index >> (other.level - level)) == index;
  }
  bool disjoint(const DyadicInterval& other) const {
    return !contains(other) && !other.contains(*this);
  }

  std::string str() const;

  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

enum class Relation { Equal, Contains, ContainedIn, Disjoint };

Relation relate(const DyadicInterval& a, const DyadicInterval& b);

struct GridConfig {
  int depth = 1;
  int super_root_levels = 0;

  void validate() const;
};

// Parent; levels above the root are allowed only within `headroom` padding
// levels.
DyadicInterval parent(const DyadicInterval& interval, int headroom = 0);

// The tau-th generation ancestor. ancestor(I, 0) == I.
DyadicInterval ancestor(const DyadicInterval& interval, int tau, int headroom = 0);

struct IntervalRelations {
  DyadicInterval parent;
  std::pair<DyadicInterval, DyadicInterval> children;
  DyadicInterval ancestor;
};

IntervalRelations interval_relations(const DyadicInterval& interval, int tau,
                                     int headroom = 0);

// Position of an interval of level >= 0 in the breadth-first (heap) layout:
// level l occupies slots [2^l - 1, 2^{l+1} - 1).
inline std::size_t heap_slot(int level, std::int64_t index) {
  return (std::size_t{1} << level) - 1 + static_cast<std::size_t>(index);
}
inline std::size_t heap_slot(const DyadicInterval& interval) {
  return heap_slot(interval.level, interval.index);
}

}  // namespace dyadic
