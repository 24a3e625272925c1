#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vcp/arrangement.hpp"

namespace probes {

struct Crossing {
  vcp::Point above, below;
};

// Two points straddling piece i so closely that the only triangle edges
// between them are the ones lying on the piece itself.
inline std::optional<Crossing> across(const vcp::Locator& loc, size_t i, const std::vector<vcp::Triangle>& ts) {
  using namespace vcp;
  auto [lo, hi] = loc.piece_ends(i);
  const Point d = hi - lo;
  const Point normal(-d.y, d.x);
  auto on_line = [&](const Point& a, const Point& b) {
    return orient(lo, hi, a) == Orientation::Collinear && orient(lo, hi, b) == Orientation::Collinear;
  };
  std::vector<Segment> others;
  for (const auto& t : ts)
    for (auto [a, b] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}})
      if (!on_line(a, b)) others.emplace_back(a, b);
  for (int den : {2, 3, 5, 7, 11, 13}) {
    const Point mid = lo + fraction(1, den) * d;
    bool blocked = false;
    for (const auto& s : others) blocked = blocked || on_segment(s.a, s.b, mid);
    if (blocked) continue;
    Rational eps = fraction(1, 8);
    for (int shrink = 0; shrink < 60; ++shrink, eps /= 8) {
      Crossing c{mid + eps * normal, mid - eps * normal};
      Segment probe(c.below, c.above);
      bool clear = true;
      for (const auto& s : others) clear = clear && !segments_touch(probe, s);
      if (clear) return c;
    }
  }
  return std::nullopt;
}

}  // namespace probes
