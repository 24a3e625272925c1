#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vcp/raycast.hpp"
#include "vcp/sweep.hpp"

namespace vcp {

struct GpGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // (segment of hidden endpoint, covering segment)
  std::vector<int> edge_endpoints;         // hidden endpoint id behind each edge
  std::vector<int> component;              // component label per vertex
  int component_count = 0;
  bool p_in_bounded_face = false;
};

/// Owner of pr(a'): first segment or box side hit by the ray p -> a' beyond a'.
int project(const Scene& scene, const Point& p, int endpoint);

/// G(p): one edge per endpoint hidden from p, joining its segment to the
/// segment that covers it (the last occluder crossed before reaching it).
GpGraph build_gp_graph(const Scene& scene, const Point& p, const VisibilityProfile& profile);

int m_p_via_identity(const GpGraph& graph, int ve_p);

/// F = E - V + 1 + C.
int face_count(const GpGraph& graph);

/// Segments hidden from p, derived from the face count.
int nonvisible_via_faces(const GpGraph& graph);

/// c' + sum max(c_i - 1, 0), or 1 + sum when c' = 0.
int components_via_subsegments(const Scene& scene, const VisibilityProfile& profile);

std::string dump_adjacency(const GpGraph& graph);

}  // namespace vcp
