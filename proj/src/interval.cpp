#include "dyadic/interval.hpp"

#include "dyadic/error.hpp"

namespace dyadic {

std::string DyadicInterval::str() const {
  return "[" + std::to_string(level) + "," + std::to_string(index) + "]";
}

Relation relate(const DyadicInterval& a, const DyadicInterval& b) {
  if (a == b) return Relation::Equal;
  if (a.contains(b)) return Relation::Contains;
  if (b.contains(a)) return Relation::ContainedIn;
  return Relation::Disjoint;
}

void GridConfig::validate() const {
  if (depth < 1) fail(Errc::InvalidArgument, "grid depth must be >= 1");
  if (super_root_levels < 0) fail(Errc::InvalidArgument, "super_root_levels must be >= 0");
  if (depth + super_root_levels > 30)
    fail(Errc::DepthTooLarge, "depth + super_root_levels must be <= 30");
}

DyadicInterval parent(const DyadicInterval& interval, int headroom) {
  return ancestor(interval, 1, headroom);
}

DyadicInterval ancestor(const DyadicInterval& interval, int tau, int headroom) {
  if (tau < 0) fail(Errc::InvalidArgument, "ancestor generation must be >= 0");
  if (interval.level - tau < -headroom)
    fail(Errc::AncestorAboveRoot, "ancestor " + std::to_string(tau) + " of " +
                                      interval.str() + " exceeds padding headroom " +
                                      std::to_string(headroom));
  return {interval.level - tau, interval.index >> tau};
}

IntervalRelations interval_relations(const DyadicInterval& interval, int tau,
                                     int headroom) {
  return {parent(interval, headroom), {interval.left_child(), interval.right_child()},
          ancestor(interval, tau, headroom)};
}

}  // namespace dyadic
