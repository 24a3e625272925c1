#pragma once

#include <utility>
#include <vector>

#include "vcp/raycast.hpp"

namespace vcp {

struct ExtensionVertex {
  int from_endpoint;  // the edge is extended beyond this endpoint
  int owner;          // segment or box side hit
  Point point;
};

struct Evg {
  std::vector<std::pair<int, int>> vg_edges;  // endpoint ids, first < second, sorted
  std::vector<ExtensionVertex> extension_vertices;
  long m = 0;
  std::vector<int> endpoint_degree;  // m_a
  std::vector<int> segment_degree;   // m_s over segments and box sides (size n + 4)
};

/// Visibility graph plus edge extensions. Endpoints of one segment are adjacent.
Evg build_evg(const Scene& scene);

/// Reference all-pairs scan for the visibility graph edges.
std::vector<std::pair<int, int>> brute_vg_edges(const Scene& scene);

enum class DegreeKind { Endpoint, Segment };

int degree_of(const Evg& evg, DegreeKind kind, int id);

}  // namespace vcp
