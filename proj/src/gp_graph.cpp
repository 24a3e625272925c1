#include "vcp/gp_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vcp/error.hpp"

namespace vcp {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int project(const Scene& scene, const Point& p, int endpoint) {
  return ray_first_hit(p, scene.endpoint(endpoint), scene, Rational(1)).owner;
}

GpGraph build_gp_graph(const Scene& scene, const Point& p, const VisibilityProfile& profile) {
  GpGraph g;
  g.vertex_count = scene.n();
  std::vector<char> visible(scene.endpoint_count(), 0);
  for (int e : profile.visible_endpoints) visible[e] = 1;
  Dsu dsu(scene.n());
  for (int e = 0; e < scene.endpoint_count(); ++e) {
    if (visible[e]) continue;
    auto cover = ray_last_hit_before(p, scene.endpoint(e), scene);
    if (!cover) throw Error(ErrorCode::Degenerate, "hidden endpoint without an occluder");
    int i = Scene::segment_of(e);
    g.edges.emplace_back(i, cover->owner);
    g.edge_endpoints.push_back(e);
    dsu.unite(i, cover->owner);
  }
  g.component.resize(scene.n());
  std::vector<int> label(scene.n(), -1);
  for (int v = 0; v < scene.n(); ++v) {
    int r = dsu.find(v);
    if (label[r] < 0) label[r] = g.component_count++;
    g.component[v] = label[r];
  }
  g.p_in_bounded_face = profile.box_parts == 0;
  return g;
}

int m_p_via_identity(const GpGraph& graph, int ve_p) {
  return ve_p - graph.component_count + (graph.p_in_bounded_face ? 1 : 0);
}

int face_count(const GpGraph& graph) {
  return static_cast<int>(graph.edges.size()) - graph.vertex_count + 1 + graph.component_count;
}

int nonvisible_via_faces(const GpGraph& graph) {
  return face_count(graph) - (graph.p_in_bounded_face ? 2 : 1);
}

int components_via_subsegments(const Scene& scene, const VisibilityProfile& profile) {
  int sum = 0;
  for (int i = 0; i < scene.n(); ++i) sum += std::max(profile.subseg_counts[i] - 1, 0);
  return (profile.box_parts > 0 ? profile.box_parts : 1) + sum;
}

std::string dump_adjacency(const GpGraph& graph) {
  std::vector<std::vector<int>> adj(graph.vertex_count);
  for (auto [a, b] : graph.edges) {
    adj[a].push_back(b);
    if (a != b) adj[b].push_back(a);
  }
  std::ostringstream out;
  out << "vertices " << graph.vertex_count << " edges " << graph.edges.size() << " components "
      << graph.component_count << (graph.p_in_bounded_face ? " bounded\n" : " unbounded\n");
  for (int v = 0; v < graph.vertex_count; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    out << 's' << v << " [c" << graph.component[v] << "]:";
    for (int w : adj[v]) out << " s" << w;
    out << '\n';
  }
  return out.str();
}

}  // namespace vcp
