#include "vcp/sweep.hpp"

#include <algorithm>
#include <set>

#include "vcp/error.hpp"
#include "vcp/raycast.hpp"

namespace vcp {

namespace {

int half_plane(const Point& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

}  // namespace

bool angle_less(const Point& a, const Point& b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return sgn(cross(a, b)) > 0;
}

bool same_direction(const Point& a, const Point& b) {
  return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}

namespace {

struct Owner {
  int id;
  Point start, end;  // counter-clockwise order seen from the apex
  Rational k;        // cross(start - apex, end - start)
  Point e;           // end - start
  bool ray_only = false;
};

enum class EventKind { Start, End, RayPoint };

struct Event {
  Point dir;
  EventKind kind;
  int owner;
  int endpoint;  // endpoint id, or -1 for box corners
  Point point;
};

struct State {
  const std::vector<Owner>* owners;
  Point ray;

  Rational t(int o) const {
    const Owner& w = (*owners)[o];
    return w.k / cross(ray, w.e);
  }
};

struct ActiveLess {
  const State* state;
  bool operator()(int a, int b) const {
    const Owner& wa = (*state->owners)[a];
    const Owner& wb = (*state->owners)[b];
    // t_a < t_b with both denominators positive inside the owners' spans.
    return wa.k * cross(state->ray, wb.e) < wb.k * cross(state->ray, wa.e);
  }
};

Point initial_direction(const Point& last, const Point& first) {
  int c = sgn(cross(last, first));
  if (c > 0) return last + first;
  if (c < 0) return -(last + first);
  if (same_direction(last, first)) return -last;
  return Point(-last.y, last.x);
}

}  // namespace

SweepTrace angular_sweep(const Scene& scene, const SweepOptions& opt) {
  const Point& apex = opt.apex;
  const int n = scene.n();
  std::vector<Owner> owners(n + 4);
  std::vector<Event> events;
  events.reserve(4 * n + 8);
  for (int id = 0; id < n + 4; ++id) {
    Owner& w = owners[id];
    w.id = id;
    if (id == opt.ignore_segment) {
      w.ray_only = true;
      continue;
    }
    Segment s = scene.owner_segment(id);
    Point da = s.a - apex, db = s.b - apex;
    int c = sgn(cross(da, db));
    int ea = id < n ? 2 * id : -1;
    int eb = id < n ? 2 * id + 1 : -1;
    if (c == 0) {
      w.ray_only = true;
      events.push_back({da, EventKind::RayPoint, id, ea, s.a});
      events.push_back({db, EventKind::RayPoint, id, eb, s.b});
      continue;
    }
    bool a_first = c > 0;
    w.start = a_first ? s.a : s.b;
    w.end = a_first ? s.b : s.a;
    w.e = w.end - w.start;
    w.k = cross(w.start - apex, w.e);
    events.push_back({w.start - apex, EventKind::Start, id, a_first ? ea : eb, w.start});
    events.push_back({w.end - apex, EventKind::End, id, a_first ? eb : ea, w.end});
  }

  std::vector<Point> dirs;
  dirs.reserve(events.size() + opt.extra_dirs.size());
  for (const auto& ev : events) dirs.push_back(ev.dir);
  for (const auto& d : opt.extra_dirs) dirs.push_back(d);
  if (opt.symmetric_splits) {
    size_t base = dirs.size();
    for (size_t i = 0; i < base; ++i) dirs.push_back(-dirs[i]);
  }
  std::sort(dirs.begin(), dirs.end(), angle_less);
  std::vector<Point> groups;
  for (auto& d : dirs)
    if (groups.empty() || !same_direction(groups.back(), d)) groups.push_back(std::move(d));

  std::vector<int> order(events.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return angle_less(events[a].dir, events[b].dir); });

  SweepTrace trace;
  const int K = static_cast<int>(groups.size());
  trace.dirs = groups;
  trace.fronts.assign(K, -1);

  State state{&owners, initial_direction(groups.back(), groups.front())};
  std::set<int, ActiveLess> active(ActiveLess{&state});
  for (const auto& w : owners) {
    if (w.ray_only) continue;
    Point ds = w.start - apex, de = w.end - apex;
    if (sgn(cross(ds, state.ray)) > 0 && sgn(cross(state.ray, de)) > 0) active.insert(w.id);
  }

  size_t cursor = 0;
  std::vector<int> here;
  for (int g = 0; g < K; ++g) {
    state.ray = groups[g];
    here.clear();
    while (cursor < order.size() && same_direction(events[order[cursor]].dir, state.ray))
      here.push_back(order[cursor++]);

    for (int ei : here)
      if (events[ei].kind == EventKind::End) active.erase(events[ei].owner);

    if (!here.empty()) {
      const Rational rr = dot(state.ray, state.ray);
      std::optional<Rational> front_t;
      if (!active.empty()) front_t = state.t(*active.begin());
      std::vector<std::pair<Rational, int>> pts;  // (parameter along ray, event)
      pts.reserve(here.size());
      for (int ei : here) pts.emplace_back(dot(events[ei].point - apex, state.ray) / rr, ei);
      std::sort(pts.begin(), pts.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // A point is blocked by a strictly closer contact from another owner.
      int first_owner = events[pts[0].second].owner;
      bool mixed = false;
      for (size_t i = 0; i < pts.size(); ++i) {
        const Event& ev = events[pts[i].second];
        if (ev.owner != first_owner) mixed = true;
        if (ev.endpoint < 0) continue;
        if (mixed) break;
        if (front_t && !(pts[i].first < *front_t)) break;
        trace.visible_endpoints.push_back(ev.endpoint);
        ++trace.found;
        if (opt.budget >= 0 && trace.found > opt.budget) {
          trace.completed = false;
          return trace;
        }
      }
    }

    for (int ei : here)
      if (events[ei].kind == EventKind::Start) active.insert(events[ei].owner);
    trace.fronts[g] = active.empty() ? -1 : *active.begin();
  }
  return trace;
}

VisibilityProfile profile_from_trace(const Scene& scene, const Point& p, const SweepTrace& trace) {
  const int n = scene.n();
  const int K = static_cast<int>(trace.fronts.size());
  VisibilityProfile prof;
  prof.visible_endpoints = trace.visible_endpoints;
  std::sort(prof.visible_endpoints.begin(), prof.visible_endpoints.end());
  prof.ve_p = static_cast<int>(prof.visible_endpoints.size());
  prof.subseg_counts.assign(n + 4, 0);
  auto cls = [&](int owner) { return scene.is_box_id(owner) ? n : owner; };

  int changes = 0;
  for (int k = 0; k < K; ++k) {
    int prev = trace.fronts[(k + K - 1) % K];
    int cur = trace.fronts[k];
    if (cur != prev) {
      ++changes;
      ++prof.subseg_counts[cur];
      prof.polygon_vertex_count += (scene.is_box_id(cur) && scene.is_box_id(prev)) ? 1 : 2;
    }
    if (cls(cur) != cls(prev) && cls(cur) == n) ++prof.box_parts;
  }
  if (changes == 0 && K > 0) ++prof.subseg_counts[trace.fronts[0]];
  bool box_changes = false;
  for (int k = 0; k < K; ++k)
    if (cls(trace.fronts[k]) != cls(trace.fronts[(k + K - 1) % K])) box_changes = true;
  if (!box_changes && K > 0 && cls(trace.fronts[0]) == n) prof.box_parts = 1;

  for (int i = 0; i < n; ++i)
    if (prof.subseg_counts[i] > 0) ++prof.m_p;

  if (changes > 0) {
    for (int k = 0; k < K; ++k) {
      int cur = trace.fronts[k];
      if (cur == trace.fronts[(k + K - 1) % K]) continue;
      int last = k;
      while (trace.fronts[(last + 1) % K] == cur) last = (last + 1) % K;
      Segment carrier = scene.owner_segment(cur);
      prof.pieces.push_back({cur, carrier_hit(p, trace.dirs[k], carrier),
                             carrier_hit(p, trace.dirs[(last + 1) % K], carrier)});
    }
  }
  return prof;
}

VisibilityProfile sweep(const Scene& scene, const Point& p) {
  auto out = budgeted_sweep(scene, p, -1);
  return out.profile;
}

SweepOutcome budgeted_sweep(const Scene& scene, const Point& p, long budget) {
  if (!admissible(scene, p)) throw Error(ErrorCode::InadmissibleQuery, "query point is not admissible");
  SweepOptions opt;
  opt.apex = p;
  opt.budget = budget;
  SweepTrace trace = angular_sweep(scene, opt);
  SweepOutcome out;
  out.found = trace.found;
  out.completed = trace.completed;
  if (trace.completed) out.profile = profile_from_trace(scene, p, trace);
  return out;
}

int oracle_ve_p(const Scene& scene, const Point& p) {
  if (!admissible(scene, p)) throw Error(ErrorCode::InadmissibleQuery, "query point is not admissible");
  int count = 0;
  for (int e = 0; e < scene.endpoint_count(); ++e)
    if (clear_sight(scene, p, scene.endpoint(e), Scene::segment_of(e))) ++count;
  return count;
}

namespace {

// Parameters in (0,1) along s where the line through p and another endpoint crosses s.
std::vector<Rational> critical_params(const Scene& scene, const Point& p, const Segment& s) {
  std::vector<Rational> u;
  Point e = s.b - s.a;
  for (int q = 0; q < scene.endpoint_count(); ++q) {
    if (Scene::segment_of(q) == s.id) continue;
    Point d = scene.endpoint(q) - p;
    Rational den = cross(d, e);
    if (den == 0) continue;
    Rational t = -cross(d, s.a - p) / den;
    if (t > 0 && t < 1) u.push_back(std::move(t));
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::vector<bool> interval_visibility(const Scene& scene, const Point& p, const Segment& s,
                                      const std::vector<Rational>& cuts) {
  std::vector<bool> vis;
  Point e = s.b - s.a;
  Rational lo = 0;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    Rational hi = i < cuts.size() ? cuts[i] : Rational(1);
    Point w = s.a + Rational((lo + hi) / 2) * e;
    vis.push_back(clear_sight(scene, p, w, s.id));
    lo = hi;
  }
  return vis;
}

}  // namespace

std::vector<int> oracle_subsegment_counts(const Scene& scene, const Point& p) {
  if (!admissible(scene, p)) throw Error(ErrorCode::InadmissibleQuery, "query point is not admissible");
  std::vector<int> counts(scene.n(), 0);
  for (const auto& s : scene.segments()) {
    auto vis = interval_visibility(scene, p, s, critical_params(scene, p, s));
    for (size_t i = 0; i < vis.size(); ++i)
      if (vis[i] && (i == 0 || !vis[i - 1])) ++counts[s.id];
  }
  return counts;
}

int oracle_m_p(const Scene& scene, const Point& p) {
  if (!admissible(scene, p)) throw Error(ErrorCode::InadmissibleQuery, "query point is not admissible");
  int count = 0;
  for (const auto& s : scene.segments()) {
    bool seen = clear_sight(scene, p, s.a, s.id) || clear_sight(scene, p, s.b, s.id);
    if (!seen) {
      auto vis = interval_visibility(scene, p, s, critical_params(scene, p, s));
      seen = std::find(vis.begin(), vis.end(), true) != vis.end();
    }
    if (seen) ++count;
  }
  return count;
}

}  // namespace vcp
