#include "vcp/checks.hpp"

#include <sstream>

namespace vcp {

namespace {

template <typename A, typename B>
void expect_eq(QueryCheck& out, const char* what, const A& got, const B& want) {
  if (got == want) return;
  std::ostringstream msg;
  msg << what << ": got " << got << ", expected " << want;
  out.failures.push_back(msg.str());
}

}  // namespace

QueryCheck check_query(const Scene& scene, const Point& p, const TriangleSet* vt_s) {
  QueryCheck out;
  VisibilityProfile prof = sweep(scene, p);
  GpGraph g = build_gp_graph(scene, p, prof);
  out.ve_p = prof.ve_p;
  out.m_p = prof.m_p;
  out.oracle_ve_p = oracle_ve_p(scene, p);
  out.oracle_m_p = oracle_m_p(scene, p);
  out.identity_m_p = m_p_via_identity(g, prof.ve_p);
  out.components = g.component_count;
  out.components_formula = components_via_subsegments(scene, prof);
  out.faces = face_count(g);
  out.bounded = g.p_in_bounded_face;

  expect_eq(out, "ve_p vs oracle", out.ve_p, out.oracle_ve_p);
  expect_eq(out, "m_p vs oracle", out.m_p, out.oracle_m_p);
  auto counts = oracle_subsegment_counts(scene, p);
  for (int i = 0; i < scene.n(); ++i)
    expect_eq(out, ("c_" + std::to_string(i) + " vs oracle").c_str(), prof.subseg_counts[i], counts[i]);
  expect_eq(out, "identity m_p", out.identity_m_p, out.oracle_m_p);
  if (scene.n() > 0) expect_eq(out, "component formula", out.components, out.components_formula);
  expect_eq(out, "edge count", static_cast<int>(g.edges.size()), 2 * scene.n() - prof.ve_p);
  expect_eq(out, "hidden segments via faces", nonvisible_via_faces(g), scene.n() - out.oracle_m_p);
  if (prof.m_p >= 1 && !(prof.m_p <= prof.ve_p && prof.ve_p <= 2 * prof.m_p))
    out.failures.push_back("ve_p outside [m_p, 2 m_p]");

  if (vt_s) {
    expect_eq(out, "fan census", fan_census(*vt_s, p), prof.ve_p);
    auto cover = cover_census(*vt_s, p);
    for (int i = 0; i < scene.n(); ++i)
      expect_eq(out, ("cover census s" + std::to_string(i)).c_str(), cover[i], prof.subseg_counts[i]);
    if (scene.n() > 0) expect_eq(out, "cover census box", cover[kBoxOwner], prof.box_parts);
  }
  return out;
}

}  // namespace vcp
