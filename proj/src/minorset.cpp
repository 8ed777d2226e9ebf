#include "monoclone/minorset.hpp"

#include <functional>

#include "monoclone/error.hpp"

namespace monoclone {

QMinorSet::QMinorSet(std::uint32_t q, std::uint32_t bound, BitSet points)
    : q_(q), bound_(bound), points_(std::move(points)) {
  if (points_.size() != box().size()) throw PreconditionError("point set has wrong size");
  if (!points_.test(0)) throw PreconditionError("a q-minor set contains the zero vector");
}

bool QMinorSet::contains(const Point& p) const {
  const auto b = box();
  return p.size() == q_ - 1 && b.contains(p) && points_.test(b.index(p));
}

std::vector<Point> QMinorSet::points() const {
  std::vector<Point> out;
  const auto b = box();
  points_.for_each([&](std::size_t i) { out.push_back(b.counts(i)); });
  return out;
}

bool QMinorSet::valid() const {
  const auto b = box();
  const auto step = q_ - 1;
  bool ok = points_.test(0);
  points_.for_each([&](std::size_t i) {
    if (!ok) return;
    auto p = b.counts(i);
    for (auto& x : p) {
      if (x < step) continue;
      x -= step;
      if (!points_.test(b.index(p))) ok = false;
      x += step;
    }
  });
  return ok;
}

QMinorSet phi_minor(const Clone& c) {
  const Box full(c.field().q(), c.cap().per_residue_cap);
  auto bits = full.transfer(c.member_bits(), c.box());
  bits.set(0);
  return QMinorSet(c.field().q(), c.cap().per_residue_cap, std::move(bits));
}

std::vector<Point> minor_M(const Point& b, const QMinorSet& s) {
  const auto q = s.q();
  const auto step = q - 1;
  if (b.size() != step) throw PreconditionError("offset needs q-1 coordinates");
  for (auto x : b) {
    if (x > q - 2) throw PreconditionError("offset coordinates lie in 0..q-2");
  }
  std::vector<Point> out;
  Point t(step, 0), p(step);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == step) {
      for (std::size_t k = 0; k < step; ++k) p[k] = b[k] + step * t[k];
      if (s.contains(p)) out.push_back(t);
      return;
    }
    for (t[i] = 0; b[i] + step * t[i] <= s.bound(); ++t[i]) rec(i + 1);
    t[i] = 0;
  };
  rec(0);
  return out;
}

bool downward_closed(const std::vector<Point>& ts) {
  // Enough to check the immediate predecessors of every point.
  auto has = [&](const Point& p) {
    for (const auto& x : ts) {
      if (x == p) return true;
    }
    return false;
  };
  for (const auto& t : ts) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i]) continue;
      auto d = t;
      --d[i];
      if (!has(d)) return false;
    }
  }
  return true;
}

EmbeddingCheck embedding_check(const QMinorSet& s1, const QMinorSet& s2) {
  if (s1.q() != s2.q() || s1.bound() != s2.bound()) {
    throw PreconditionError("q-minor sets must share q and bound");
  }
  EmbeddingCheck r;
  r.direct = s1.bits().subset_of(s2.bits());
  const auto step = s1.q() - 1;
  r.by_minors = true;
  Point b(step, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (!r.by_minors) return;
    if (i == step) {
      const auto m1 = minor_M(b, s1);
      const auto m2 = minor_M(b, s2);
      for (const auto& t : m1) {
        bool found = false;
        for (const auto& u : m2) found = found || u == t;
        if (!found) {
          r.by_minors = false;
          return;
        }
      }
      return;
    }
    for (b[i] = 0; b[i] + 1 < s1.q(); ++b[i]) rec(i + 1);
    b[i] = 0;
  };
  rec(0);
  return r;
}

std::size_t largest_antichain(const std::vector<std::vector<bool>>& leq) {
  // Dilworth: largest antichain = n - maximum matching in the strict order.
  const auto n = leq.size();
  std::vector<int> match_right(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !leq[u][v] || seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  std::size_t matching = 0;
  for (std::size_t u = 0; u < n; ++u) {
    seen.assign(n, 0);
    if (augment(u)) ++matching;
  }
  return n - matching;
}

}  // namespace monoclone
