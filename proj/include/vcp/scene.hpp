#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcp/geometry.hpp"

namespace vcp {

struct BBox {
  Rational xmin, ymin, xmax, ymax;
};

// Ids: segments 0..n-1, box sides n..n+3 (bottom, right, top, left).
// Endpoint id 2i is segment i's endpoint_a, 2i+1 its endpoint_b.
class Scene {
 public:
  Scene() = default;
  Scene(BBox box, std::vector<Segment> segments);

  const BBox& bbox() const { return box_; }
  int n() const { return static_cast<int>(segments_.size()); }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(int id) const { return segments_.at(id); }

  // Side k (0..3) runs from corner k to corner k+1 (counter-clockwise).
  Point corner(int k) const;
  Segment box_side(int k) const;
  bool is_box_id(int owner) const { return owner >= n() && owner < n() + 4; }

  // Any owner id: segment or box side.
  Segment owner_segment(int owner) const;

  int endpoint_count() const { return 2 * n(); }
  const Point& endpoint(int eid) const;
  static int segment_of(int eid) { return eid / 2; }
  static int partner_of(int eid) { return eid ^ 1; }

 private:
  BBox box_;
  std::vector<Segment> segments_;
};

struct Violation {
  enum class Kind { InvalidBBox, ZeroLength, NotStrictlyInside, PairIntersects };
  Kind kind;
  int i = -1;
  int j = -1;

  std::string describe() const;
};

std::vector<Violation> validate(const Scene& scene);

struct GenerateOptions {
  double min_length_fraction = 0.03;
  double max_length_fraction = 0.2;
  long grid = 1000;
};

/// Rejection-sampled random valid scene. Deterministic in (n, box, seed, options).
Scene generate(int n, const BBox& box, std::uint64_t seed, const GenerateOptions& options = {});

/// Query admissibility: strictly inside the box, off every segment, not a
/// vertex, and not collinear with any two scene vertices (segment endpoints
/// and box corners).
bool admissible(const Scene& scene, const Point& p);

/// O(n^2) reference implementation of admissible().
bool admissible_brute(const Scene& scene, const Point& p);

/// Draws points on a fine rational grid until an admissible one appears.
Point random_admissible_point(const Scene& scene, std::uint64_t& state);

/// Returns p itself when admissible, otherwise the first admissible point
/// among p + k * (1/1000003, 2/1999993) * span for k = 1, 2, ..., where span
/// is the larger box side.
Point nearby_admissible_point(const Scene& scene, const Point& p);

std::string save_scene(const Scene& scene);
Scene load_scene(const std::string& text);
Scene load_scene_file(const std::string& path);
void save_scene_file(const Scene& scene, const std::string& path);

}  // namespace vcp
