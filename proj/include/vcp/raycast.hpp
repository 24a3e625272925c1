#pragma once

#include <optional>

#include "vcp/scene.hpp"

namespace vcp {

struct Hit {
  int owner = -1;   // segment id or box side id (n..n+3)
  Point point;
  Rational param;   // origin + param * (through - origin) == point
};

/// First intersection of the ray origin->through with a segment or box side at
/// parameter strictly greater than skip_before (through sits at parameter 1).
/// Throws Error(Degenerate) when the ray meets a segment endpoint other than
/// `through` at or before that first hit.
Hit ray_first_hit(const Point& origin, const Point& through, const Scene& scene,
                  const Rational& skip_before);

/// Same search, but endpoint contacts are accepted as ordinary hits on the
/// closed segment instead of raising.
Hit ray_first_hit_lenient(const Point& origin, const Point& through, const Scene& scene,
                          const Rational& skip_before);

/// Nearest segment to `target` that the open segment origin->target crosses,
/// i.e. the crossing with the largest parameter below 1. Box sides are never
/// reported. Empty if target is seen directly from origin.
std::optional<Hit> ray_last_hit_before(const Point& origin, const Point& target, const Scene& scene);

/// Direct occlusion test: true iff no segment other than those listed meets
/// the closed segment from p to q. Used by oracles.
bool clear_sight(const Scene& scene, const Point& p, const Point& q, int ignore_a = -1, int ignore_b = -1);

}  // namespace vcp
