#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monoclone/clone.hpp"
#include "monoclone/universe.hpp"

namespace monoclone {

using Point = std::vector<std::uint32_t>;

/// A set of points of N_0^{q-1} with every coordinate <= bound, containing 0
/// and closed under subtracting multiples of q-1 from coordinates.
class QMinorSet {
 public:
  /// Throws PreconditionError if points (a set over Box(q, bound)) lacks 0.
  QMinorSet(std::uint32_t q, std::uint32_t bound, BitSet points);

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t bound() const noexcept { return bound_; }
  Box box() const { return Box(q_, bound_); }
  const BitSet& bits() const noexcept { return points_; }
  bool contains(const Point& p) const;
  std::vector<Point> points() const;
  std::size_t size() const noexcept { return points_.count(); }
  /// Checks the subtraction closure inside the bound.
  bool valid() const;

 private:
  std::uint32_t q_;
  std::uint32_t bound_;
  BitSet points_;
};

/// Count vectors of the members of c, plus 0. The bound is c's cap.
QMinorSet phi_minor(const Clone& c);

/// {t : b + (q-1) t in s}, restricted to the bound, in lexicographic order.
std::vector<Point> minor_M(const Point& b, const QMinorSet& s);

/// Every point of ts lies in the set whenever some point above it does.
bool downward_closed(const std::vector<Point>& ts);

struct EmbeddingCheck {
  bool direct = false;
  /// The same inclusion decided through minor_M(b, .) for every b.
  bool by_minors = false;
  bool agree() const noexcept { return direct == by_minors; }
};

/// Throws PreconditionError unless both sets have the same q and bound.
EmbeddingCheck embedding_check(const QMinorSet& s1, const QMinorSet& s2);

/// Size of the largest antichain of a finite partial order given by its
/// reflexive order matrix, via the minimum chain cover (bipartite matching).
std::size_t largest_antichain(const std::vector<std::vector<bool>>& leq);

}  // namespace monoclone
