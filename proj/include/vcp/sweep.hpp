#pragma once

#include <optional>
#include <vector>

#include "vcp/scene.hpp"

namespace vcp {

/// Angular order around the origin starting at direction (1, 0), counter-clockwise.
bool angle_less(const Point& a, const Point& b);
bool same_direction(const Point& a, const Point& b);

struct SweepOptions {
  Point apex;
  int ignore_segment = -1;
  std::vector<Point> extra_dirs;
  bool symmetric_splits = false;
  long budget = -1;  // negative: unlimited
};

// Raw output of one rotational sweep. dirs[k] are the distinct event
// directions in counter-clockwise order; fronts[k] is the owner nearest to
// the apex inside the open wedge from dirs[k] to dirs[(k+1) % K].
struct SweepTrace {
  std::vector<Point> dirs;
  std::vector<int> fronts;
  std::vector<int> visible_endpoints;  // discovery order
  bool completed = true;
  long found = 0;
};

SweepTrace angular_sweep(const Scene& scene, const SweepOptions& options);

struct VisiblePiece {
  int owner;
  Point from;
  Point to;
};

struct VisibilityProfile {
  std::vector<int> visible_endpoints;  // sorted endpoint ids
  int ve_p = 0;
  int m_p = 0;
  std::vector<int> subseg_counts;      // size n + 4; box sides last
  int box_parts = 0;
  int polygon_vertex_count = 0;
  std::vector<VisiblePiece> pieces;
};

VisibilityProfile profile_from_trace(const Scene& scene, const Point& p, const SweepTrace& trace);

/// Exact visibility profile of an admissible query point.
VisibilityProfile sweep(const Scene& scene, const Point& p);

struct SweepOutcome {
  bool completed = false;
  VisibilityProfile profile;  // valid when completed
  long found = 0;             // visible endpoints discovered before stopping
};

SweepOutcome budgeted_sweep(const Scene& scene, const Point& p, long budget);

// Brute-force references, independent of the sweep.
int oracle_ve_p(const Scene& scene, const Point& p);
int oracle_m_p(const Scene& scene, const Point& p);
std::vector<int> oracle_subsegment_counts(const Scene& scene, const Point& p);

}  // namespace vcp
