#include "vcp/vcp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "vcp/checks.hpp"
#include "vcp/error.hpp"
#include "vcp/estimators.hpp"

struct vcp_scene {
  vcp::Scene scene;
};

struct vcp_engine {
  vcp::Engine engine;
};

namespace {

thread_local std::string last_error;

vcp_status status_of(vcp::ErrorCode code) {
  using vcp::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError: return VCP_PARSE_ERROR;
    case ErrorCode::InvalidScene: return VCP_INVALID_SCENE;
    case ErrorCode::InadmissibleQuery: return VCP_INADMISSIBLE_QUERY;
    case ErrorCode::Degenerate: return VCP_DEGENERATE;
    case ErrorCode::OnEdge: return VCP_ON_EDGE;
    case ErrorCode::DeltaTooLarge: return VCP_DELTA_TOO_LARGE;
    case ErrorCode::GenerationStalled: return VCP_GENERATION_STALLED;
    case ErrorCode::UnknownId: return VCP_UNKNOWN_ID;
    case ErrorCode::BadArgument: return VCP_BAD_ARGUMENT;
    case ErrorCode::Io: return VCP_IO_ERROR;
  }
  return VCP_INTERNAL;
}

template <typename F>
vcp_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return VCP_OK;
  } catch (const vcp::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VCP_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VCP_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw vcp::Error(vcp::ErrorCode::BadArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
T* dup_array(const std::vector<T>& v) {
  T* out = static_cast<T*>(std::malloc(std::max<size_t>(v.size(), 1) * sizeof(T)));
  if (!out) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(out, v.data(), v.size() * sizeof(T));
  return out;
}

vcp::Point point_of(const char* x, const char* y) {
  require(x && y, "null coordinate");
  return vcp::Point(vcp::parse_rational(x), vcp::parse_rational(y));
}

const vcp::Scene& scene_of(const vcp_scene* s) {
  require(s, "null scene");
  return s->scene;
}

const vcp::Engine& engine_of(const vcp_engine* e) {
  require(e, "null engine");
  return e->engine;
}

}  // namespace

extern "C" {

const char* vcp_last_error(void) { return last_error.c_str(); }

const char* vcp_status_name(vcp_status status) {
  switch (status) {
    case VCP_OK: return "OK";
    case VCP_PARSE_ERROR: return "PARSE_ERROR";
    case VCP_INVALID_SCENE: return "INVALID_SCENE";
    case VCP_INADMISSIBLE_QUERY: return "INADMISSIBLE_QUERY";
    case VCP_DEGENERATE: return "DEGENERATE";
    case VCP_ON_EDGE: return "ON_EDGE";
    case VCP_DELTA_TOO_LARGE: return "DELTA_TOO_LARGE";
    case VCP_GENERATION_STALLED: return "GENERATION_STALLED";
    case VCP_UNKNOWN_ID: return "UNKNOWN_ID";
    case VCP_BAD_ARGUMENT: return "BAD_ARGUMENT";
    case VCP_IO_ERROR: return "IO_ERROR";
    case VCP_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

const char* vcp_mode_name(vcp_mode mode) {
  switch (mode) {
    case VCP_MODE_EXACT: return "EXACT";
    case VCP_MODE_APPROX_SMALL_C: return "APPROX_SMALL_C";
    case VCP_MODE_APPROX_LARGE_C: return "APPROX_LARGE_C";
  }
  return "UNKNOWN";
}

void vcp_free(void* ptr) { std::free(ptr); }

vcp_status vcp_scene_parse(const char* text, vcp_scene** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new vcp_scene{vcp::load_scene(text)};
  });
}

vcp_status vcp_scene_load(const char* path, vcp_scene** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new vcp_scene{vcp::load_scene_file(path)};
  });
}

vcp_status vcp_scene_generate(int n, const char* xmin, const char* ymin, const char* xmax, const char* ymax,
                              uint64_t seed, vcp_scene** out) {
  return guarded([&] {
    require(out && xmin && ymin && xmax && ymax, "null argument");
    require(n >= 0, "segment count must be non-negative");
    vcp::BBox box{vcp::parse_rational(xmin), vcp::parse_rational(ymin), vcp::parse_rational(xmax),
                  vcp::parse_rational(ymax)};
    if (!(box.xmin < box.xmax && box.ymin < box.ymax))
      throw vcp::Error(vcp::ErrorCode::BadArgument, "empty bounding box");
    *out = new vcp_scene{vcp::generate(n, box, seed)};
  });
}

vcp_status vcp_scene_save(const vcp_scene* scene, const char* path) {
  return guarded([&] {
    require(path, "null path");
    vcp::save_scene_file(scene_of(scene), path);
  });
}

vcp_status vcp_scene_text(const vcp_scene* scene, char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = dup_string(vcp::save_scene(scene_of(scene)));
  });
}

void vcp_scene_free(vcp_scene* scene) { delete scene; }

int vcp_scene_size(const vcp_scene* scene) { return scene ? scene->scene.n() : -1; }

vcp_status vcp_scene_bbox(const vcp_scene* scene, double box[4]) {
  return guarded([&] {
    const vcp::BBox& b = scene_of(scene).bbox();
    box[0] = b.xmin.get_d();
    box[1] = b.ymin.get_d();
    box[2] = b.xmax.get_d();
    box[3] = b.ymax.get_d();
  });
}

vcp_status vcp_scene_segment(const vcp_scene* scene, int i, double coords[4]) {
  return guarded([&] {
    const vcp::Scene& s = scene_of(scene);
    if (i < 0 || i >= s.n()) throw vcp::Error(vcp::ErrorCode::UnknownId, "no segment " + std::to_string(i));
    const vcp::Segment& seg = s.segment(i);
    coords[0] = seg.a.x.get_d();
    coords[1] = seg.a.y.get_d();
    coords[2] = seg.b.x.get_d();
    coords[3] = seg.b.y.get_d();
  });
}

vcp_status vcp_scene_validate(const vcp_scene* scene, int* violations, char** report) {
  return guarded([&] {
    require(violations, "null argument");
    auto v = vcp::validate(scene_of(scene));
    *violations = static_cast<int>(v.size());
    if (report) {
      std::string text;
      for (const auto& item : v) text += item.describe() + "\n";
      *report = dup_string(text);
    }
  });
}

vcp_status vcp_admissible(const vcp_scene* scene, const char* x, const char* y, int* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = vcp::admissible(scene_of(scene), point_of(x, y)) ? 1 : 0;
  });
}

vcp_status vcp_nearby_admissible(const vcp_scene* scene, const char* x, const char* y, char** out_x,
                                 char** out_y) {
  return guarded([&] {
    require(out_x && out_y, "null argument");
    vcp::Point p = vcp::nearby_admissible_point(scene_of(scene), point_of(x, y));
    *out_x = dup_string(vcp::format_rational(p.x));
    *out_y = dup_string(vcp::format_rational(p.y));
  });
}

vcp_status vcp_random_point(const vcp_scene* scene, uint64_t* state, char** x, char** y) {
  return guarded([&] {
    require(state && x && y, "null argument");
    vcp::Point p = vcp::random_admissible_point(scene_of(scene), *state);
    *x = dup_string(vcp::format_rational(p.x));
    *y = dup_string(vcp::format_rational(p.y));
  });
}

vcp_status vcp_sweep(const vcp_scene* scene, const char* x, const char* y, vcp_sweep_summary* out) {
  return guarded([&] {
    require(out, "null argument");
    vcp::VisibilityProfile prof = vcp::sweep(scene_of(scene), point_of(x, y));
    *out = vcp_sweep_summary{prof.ve_p, prof.m_p, prof.box_parts, prof.polygon_vertex_count};
  });
}

vcp_status vcp_subsegment_counts(const vcp_scene* scene, const char* x, const char* y, int* counts) {
  return guarded([&] {
    require(counts, "null argument");
    const vcp::Scene& s = scene_of(scene);
    vcp::VisibilityProfile prof = vcp::sweep(s, point_of(x, y));
    for (int i = 0; i < s.n(); ++i) counts[i] = prof.subseg_counts[i];
  });
}

vcp_status vcp_oracle_counts(const vcp_scene* scene, const char* x, const char* y, int* ve_p, int* m_p) {
  return guarded([&] {
    require(ve_p && m_p, "null argument");
    vcp::Point p = point_of(x, y);
    *ve_p = vcp::oracle_ve_p(scene_of(scene), p);
    *m_p = vcp::oracle_m_p(scene_of(scene), p);
  });
}

vcp_status vcp_visible_pieces(const vcp_scene* scene, const char* x, const char* y, vcp_piece** out, int* count) {
  return guarded([&] {
    require(out && count, "null argument");
    vcp::VisibilityProfile prof = vcp::sweep(scene_of(scene), point_of(x, y));
    std::vector<vcp_piece> pieces;
    for (const auto& pc : prof.pieces)
      pieces.push_back(vcp_piece{pc.owner, pc.from.x.get_d(), pc.from.y.get_d(), pc.to.x.get_d(), pc.to.y.get_d()});
    *out = dup_array(pieces);
    *count = static_cast<int>(pieces.size());
  });
}

vcp_status vcp_gp_graph(const vcp_scene* scene, const char* x, const char* y, vcp_gp_summary* out,
                        char** adjacency) {
  return guarded([&] {
    require(out, "null argument");
    const vcp::Scene& s = scene_of(scene);
    vcp::Point p = point_of(x, y);
    vcp::VisibilityProfile prof = vcp::sweep(s, p);
    vcp::GpGraph g = vcp::build_gp_graph(s, p, prof);
    out->vertices = g.vertex_count;
    out->edges = static_cast<int>(g.edges.size());
    out->components = g.component_count;
    out->components_formula = vcp::components_via_subsegments(s, prof);
    out->faces = vcp::face_count(g);
    out->bounded = g.p_in_bounded_face ? 1 : 0;
    out->identity_m_p = vcp::m_p_via_identity(g, prof.ve_p);
    if (adjacency) *adjacency = dup_string(vcp::dump_adjacency(g));
  });
}

vcp_status vcp_gp_edges(const vcp_scene* scene, const char* x, const char* y, vcp_gp_edge** out, int* count) {
  return guarded([&] {
    require(out && count, "null argument");
    const vcp::Scene& s = scene_of(scene);
    vcp::Point p = point_of(x, y);
    vcp::GpGraph g = vcp::build_gp_graph(s, p, vcp::sweep(s, p));
    std::vector<vcp_gp_edge> edges;
    for (size_t i = 0; i < g.edges.size(); ++i)
      edges.push_back(vcp_gp_edge{g.edges[i].first, g.edges[i].second, g.edge_endpoints[i]});
    *out = dup_array(edges);
    *count = static_cast<int>(edges.size());
  });
}

void vcp_params_default(vcp_params* params) {
  if (!params) return;
  params->beta = "0";
  params->delta = "1/4";
  params->seed = 1;
  params->budget_constant = 2.0;
  params->budget_override = -1;
}

vcp_status vcp_engine_build(const vcp_scene* scene, const vcp_params* params, vcp_engine** out) {
  return guarded([&] {
    require(params && out, "null argument");
    vcp::ParamsInput in;
    in.beta = vcp::parse_rational(params->beta ? params->beta : "0");
    in.delta = vcp::parse_rational(params->delta ? params->delta : "1/4");
    in.seed = params->seed;
    in.budget_constant = params->budget_constant;
    in.budget_override = params->budget_override;
    require(in.budget_constant > 0, "budget constant must be positive");
    *out = new vcp_engine{vcp::Engine(scene_of(scene), in)};
  });
}

void vcp_engine_free(vcp_engine* engine) { delete engine; }

vcp_status vcp_engine_stats_get(const vcp_engine* engine, vcp_engine_stats* out) {
  return guarded([&] {
    require(out, "null argument");
    const vcp::Engine& e = engine_of(engine);
    const vcp::Params& p = e.params();
    vcp_engine_stats st{};
    st.m = p.m;
    st.k = p.k;
    st.budget = p.budget;
    st.sample_prob = p.sample_prob.get_d();
    st.c_threshold = p.c_threshold.get_d();
    st.fans = static_cast<long>(e.triangles().fans.size());
    st.covers = static_cast<long>(e.triangles().covers.size());
    for (const auto& idx : e.indexes()) {
      st.kept_triangles += static_cast<long>(idx.fans.size() + idx.covers.size());
      for (const vcp::Locator* loc : {&idx.locator_ve, &idx.locator_c}) {
        st.faces += static_cast<long>(loc->stats().faces);
        st.trapezoids += static_cast<long>(loc->stats().trapezoids);
        st.dag_nodes += static_cast<long>(loc->stats().dag_nodes);
      }
    }
    *out = st;
  });
}

vcp_status vcp_engine_query(const vcp_engine* engine, const char* x, const char* y, vcp_query_result* out) {
  return guarded([&] {
    require(out, "null argument");
    vcp::QueryResult r = engine_of(engine).query(point_of(x, y));
    vcp_query_result res{};
    res.mode = r.mode == vcp::Mode::Exact          ? VCP_MODE_EXACT
               : r.mode == vcp::Mode::ApproxSmallC ? VCP_MODE_APPROX_SMALL_C
                                                   : VCP_MODE_APPROX_LARGE_C;
    res.value_approx = r.value.get_d();
    res.budget_spent = r.budget_spent;
    res.k = r.k;
    bool exact = r.mode == vcp::Mode::Exact;
    res.value = dup_string(vcp::format_rational(r.value));
    res.ve_prime = dup_string(exact ? std::string() : vcp::format_rational(r.ve_prime));
    res.c_prime = dup_string(exact ? std::string() : vcp::format_rational(r.c_prime));
    *out = res;
  });
}

void vcp_query_result_clear(vcp_query_result* result) {
  if (!result) return;
  std::free(result->value);
  std::free(result->ve_prime);
  std::free(result->c_prime);
  result->value = result->ve_prime = result->c_prime = nullptr;
}

vcp_status vcp_engine_triangles_text(const vcp_engine* engine, char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = dup_string(vcp::save_triangles(engine_of(engine).triangles()));
  });
}

vcp_status vcp_delta_star(const char* delta, vcp_branch branch, char** out) {
  return guarded([&] {
    require(delta && out, "null argument");
    vcp::Rational v = vcp::delta_star(vcp::parse_rational(delta),
                                      branch == VCP_BRANCH_SMALL_C ? vcp::Branch::SmallC : vcp::Branch::LargeC);
    *out = dup_string(vcp::format_rational(v));
  });
}

vcp_status vcp_check_query(const vcp_scene* scene, const vcp_engine* engine, const char* x, const char* y,
                           vcp_check* out, char** messages) {
  return guarded([&] {
    require(out, "null argument");
    const vcp::TriangleSet* vt = engine ? &engine->engine.triangles() : nullptr;
    vcp::QueryCheck c = vcp::check_query(scene_of(scene), point_of(x, y), vt);
    *out = vcp_check{c.ve_p,       c.m_p,   c.oracle_ve_p,       c.oracle_m_p,
                     c.identity_m_p, c.components, c.components_formula, c.faces,
                     c.bounded ? 1 : 0, static_cast<int>(c.failures.size())};
    if (messages) {
      std::string text;
      for (const auto& f : c.failures) text += f + "\n";
      *messages = dup_string(text);
    }
  });
}

}  // extern "C"
