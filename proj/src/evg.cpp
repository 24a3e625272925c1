#include "vcp/evg.hpp"

#include <algorithm>

#include "vcp/error.hpp"
#include "vcp/sweep.hpp"

namespace vcp {

Evg build_evg(const Scene& scene) {
  Evg g;
  const int ne = scene.endpoint_count();
  for (int v = 0; v < ne; ++v) {
    SweepOptions opt;
    opt.apex = scene.endpoint(v);
    opt.ignore_segment = Scene::segment_of(v);
    SweepTrace trace = angular_sweep(scene, opt);
    for (int e : trace.visible_endpoints)
      if (v < e) g.vg_edges.emplace_back(v, e);
    if ((v & 1) == 0) g.vg_edges.emplace_back(v, v + 1);
  }
  std::sort(g.vg_edges.begin(), g.vg_edges.end());
  g.vg_edges.erase(std::unique(g.vg_edges.begin(), g.vg_edges.end()), g.vg_edges.end());
  g.m = static_cast<long>(g.vg_edges.size());

  g.endpoint_degree.assign(ne, 0);
  g.segment_degree.assign(scene.n() + 4, 0);
  for (auto [a, b] : g.vg_edges) {
    ++g.endpoint_degree[a];
    ++g.endpoint_degree[b];
    int sa = Scene::segment_of(a), sb = Scene::segment_of(b);
    ++g.segment_degree[sa];
    if (sb != sa) ++g.segment_degree[sb];
  }
  for (auto [a, b] : g.vg_edges) {
    const Point& pa = scene.endpoint(a);
    const Point& pb = scene.endpoint(b);
    Hit beyond_b = ray_first_hit_lenient(pa, pb, scene, Rational(1));
    g.extension_vertices.push_back({b, beyond_b.owner, beyond_b.point});
    Hit beyond_a = ray_first_hit_lenient(pb, pa, scene, Rational(1));
    g.extension_vertices.push_back({a, beyond_a.owner, beyond_a.point});
  }
  for (const auto& x : g.extension_vertices) ++g.segment_degree[x.owner];
  return g;
}

std::vector<std::pair<int, int>> brute_vg_edges(const Scene& scene) {
  std::vector<std::pair<int, int>> out;
  const int ne = scene.endpoint_count();
  for (int a = 0; a < ne; ++a)
    for (int b = a + 1; b < ne; ++b)
      if (clear_sight(scene, scene.endpoint(a), scene.endpoint(b), Scene::segment_of(a),
                      Scene::segment_of(b)))
        out.emplace_back(a, b);
  return out;
}

int degree_of(const Evg& evg, DegreeKind kind, int id) {
  const auto& table = kind == DegreeKind::Endpoint ? evg.endpoint_degree : evg.segment_degree;
  if (id < 0 || id >= static_cast<int>(table.size()))
    throw Error(ErrorCode::UnknownId, "unknown id " + std::to_string(id));
  return table[id];
}

}  // namespace vcp
