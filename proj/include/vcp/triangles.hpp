#pragma once

#include <map>
#include <string>
#include <vector>

#include "vcp/evg.hpp"
#include "vcp/sweep.hpp"

namespace vcp {

enum class TriKind { EndpointFan, SegmentCover };

// Cover owners: a segment id, or the whole box boundary taken as one cycle.
constexpr int kBoxOwner = -2;

struct Triangle {
  Point a, b, c;  // counter-clockwise
  TriKind kind;
  int owner;      // endpoint id for fans; segment id or kBoxOwner for covers
};

struct TriangleSet {
  std::vector<Triangle> fans;
  std::vector<Triangle> covers;
  size_t total() const { return fans.size() + covers.size(); }
};

/// Closed-triangle membership.
bool contains(const Triangle& t, const Point& p);

/// Fan triangulation of the region that sees endpoint `endpoint`.
std::vector<Triangle> endpoint_fan(const Scene& scene, int endpoint);

/// Cover triangles of one owner (segment id or kBoxOwner). For an
/// admissible p the number of them containing p equals the number of
/// visible pieces of that owner (corner-merged parts for the box).
std::vector<Triangle> segment_cover(const Scene& scene, int owner);

TriangleSet build_vt_s(const Scene& scene);

int fan_census(const TriangleSet& set, const Point& p);
std::map<int, int> cover_census(const TriangleSet& set, const Point& p);

std::string save_triangles(const TriangleSet& set);
TriangleSet load_triangles(const std::string& text);

}  // namespace vcp
