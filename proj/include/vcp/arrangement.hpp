#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vcp/triangles.hpp"

namespace vcp {

struct FacePayload {
  int containing_count = 0;
  Rational extra;
};

// Receives containment changes while the builder walks the faces. add() is
// called with +1 / -1 for a triangle index; value() is read once per face.
// Triangles of one group must be interchangeable as far as value() is
// concerned, so that edges whose group weights cancel can be dropped.
class FaceAggregator {
 public:
  virtual ~FaceAggregator() = default;
  virtual void add(int triangle, int delta) = 0;
  virtual Rational value() const = 0;
  virtual int group(int triangle) const { return triangle; }
};

struct LocatorStats {
  size_t triangles = 0;
  size_t edge_pieces = 0;
  size_t vertices = 0;
  size_t faces = 0;
  size_t trapezoids = 0;
  size_t dag_nodes = 0;
};

// Arrangement of triangle edges with a randomized incremental trapezoidal
// map for point location. Coordinates are sheared by x' = x + lambda*y so
// that no two vertices share an x' value.
class Locator {
 public:
  Locator() = default;
  Locator(const std::vector<Triangle>& triangles, FaceAggregator* aggregator, std::uint64_t seed = 1);

  /// Payload of the face containing p. Throws Error(OnEdge) if p lies on an edge.
  const FacePayload& locate(const Point& p) const;

  const LocatorStats& stats() const { return stats_; }

  // Inspection helpers for tests.
  size_t piece_count() const { return pieces_.size(); }
  /// Endpoints of piece i in original coordinates; the second is the one
  /// with larger sheared x, so "above" is the left side of first -> second.
  std::pair<Point, Point> piece_ends(size_t i) const;
  /// Net change of the containing count when crossing piece i upward.
  /// Pieces whose contributions cancel are not stored.
  int piece_weight(size_t i) const;
  int piece_edge_count(size_t i) const;
  /// (triangle, +1 / -1) for every triangle edge stored on piece i, signed so
  /// that +1 means the triangle lies above.
  std::vector<std::pair<int, int>> piece_hits(size_t i) const;

 private:
  struct Piece {
    int left, right;        // vertex ids, left has smaller x'
    int begin, end;         // range in hits_
  };
  struct Trap {
    int top = -1, bottom = -1;    // piece ids, -1 = unbounded
    int leftp = -1, rightp = -1;  // vertex ids, -1 = unbounded
    int node = -1;
  };
  struct Node {
    enum Kind : std::uint8_t { Leaf, XNode, YNode } kind = Leaf;
    int ref = -1;  // trapezoid, vertex or piece id
    int left = -1, right = -1;  // XNode: left/right; YNode: above/below
  };

  enum class Probe { Query, Insert, Above, Below };

  Point shear(const Point& p) const;
  Point unshear(const Point& p) const;
  int locate_trap(const Point& q, Probe probe, int piece) const;
  void insert(int piece);
  void build_payloads(FaceAggregator* aggregator);

  Rational lambda_;
  std::vector<Point> verts_;  // sheared
  std::vector<ApproxPoint> approx_;
  std::vector<Piece> pieces_;
  std::vector<std::pair<int, int>> hits_;  // (triangle, weight)
  std::vector<Trap> traps_;
  std::vector<Node> nodes_;
  std::vector<FacePayload> above_;  // payload above each piece
  FacePayload root_;
  LocatorStats stats_;
};

/// Direct containment count, for comparison against Locator::locate.
int brute_containing_count(const std::vector<Triangle>& triangles, const Point& p);

}  // namespace vcp
