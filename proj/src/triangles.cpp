#include "vcp/triangles.hpp"

#include <sstream>
#include <tuple>

#include "vcp/error.hpp"

namespace vcp {

bool contains(const Triangle& t, const Point& p) {
  return orient(t.a, t.b, p) != Orientation::Right && orient(t.b, t.c, p) != Orientation::Right &&
         orient(t.c, t.a, p) != Orientation::Right;
}

namespace {

// Every triangle with apex at endpoint v: its fan, plus the cover pieces it
// contributes to its own segment (v opens the segment counter-clockwise) and
// to whatever lies directly behind v (v closes its segment).
void star_triangles(const Scene& scene, int v, std::vector<Triangle>* fans,
                    std::vector<Triangle>* covers) {
  const Point& apex = scene.endpoint(v);
  const Point along = scene.endpoint(Scene::partner_of(v)) - apex;
  SweepOptions opt;
  opt.apex = apex;
  opt.ignore_segment = Scene::segment_of(v);
  opt.extra_dirs = {along};
  opt.symmetric_splits = true;
  SweepTrace tr = angular_sweep(scene, opt);
  const int K = static_cast<int>(tr.dirs.size());
  if (K % 2 != 0) throw Error(ErrorCode::Degenerate, "asymmetric direction set");

  std::vector<int> side(K), behind(K);
  for (int k = 0; k < K; ++k) {
    side[k] = sgn(cross(along, tr.dirs[k] + tr.dirs[(k + 1) % K]));
    int back = tr.fronts[(k + K / 2) % K];
    behind[k] = scene.is_box_id(back) ? kBoxOwner : back;
  }

  // Emits one triangle per maximal run of wedges sharing `key`.
  auto emit_runs = [&](auto key, TriKind kind, auto owner_of, std::vector<Triangle>* out) {
    int k = 0;
    while (k < K) {
      auto kk = key(k);
      if (!std::get<0>(kk)) {
        ++k;
        continue;
      }
      int last = k;
      while (last + 1 < K && key(last + 1) == kk) ++last;
      Segment carrier = scene.owner_segment(tr.fronts[k]);
      Point h1 = carrier_hit(apex, tr.dirs[k], carrier);
      Point h2 = carrier_hit(apex, tr.dirs[(last + 1) % K], carrier);
      out->push_back({apex, h1, h2, kind, owner_of(k)});
      k = last + 1;
    }
  };

  if (fans) {
    emit_runs([&](int k) { return std::tuple(true, tr.fronts[k], 0); }, TriKind::EndpointFan,
              [&](int) { return v; }, fans);
  }
  if (covers) {
    emit_runs([&](int k) { return std::tuple(side[k] > 0, tr.fronts[k], 0); },
              TriKind::SegmentCover, [&](int) { return Scene::segment_of(v); }, covers);
    emit_runs([&](int k) { return std::tuple(side[k] < 0, tr.fronts[k], behind[k]); },
              TriKind::SegmentCover, [&](int k) { return behind[k]; }, covers);
  }
}

}  // namespace

std::vector<Triangle> endpoint_fan(const Scene& scene, int endpoint) {
  scene.endpoint(endpoint);
  std::vector<Triangle> out;
  star_triangles(scene, endpoint, &out, nullptr);
  return out;
}

std::vector<Triangle> segment_cover(const Scene& scene, int owner) {
  if (owner != kBoxOwner && (owner < 0 || owner >= scene.n()))
    throw Error(ErrorCode::UnknownId, "unknown cover owner " + std::to_string(owner));
  std::vector<Triangle> all, out;
  for (int v = 0; v < scene.endpoint_count(); ++v) star_triangles(scene, v, nullptr, &all);
  for (auto& t : all)
    if (t.owner == owner) out.push_back(std::move(t));
  return out;
}

TriangleSet build_vt_s(const Scene& scene) {
  TriangleSet set;
  for (int v = 0; v < scene.endpoint_count(); ++v) star_triangles(scene, v, &set.fans, &set.covers);
  return set;
}

int fan_census(const TriangleSet& set, const Point& p) {
  int count = 0;
  for (const auto& t : set.fans)
    if (contains(t, p)) ++count;
  return count;
}

std::map<int, int> cover_census(const TriangleSet& set, const Point& p) {
  std::map<int, int> out;
  for (const auto& t : set.covers)
    if (contains(t, p)) ++out[t.owner];
  return out;
}

namespace {

std::string owner_token(const Triangle& t) {
  if (t.kind == TriKind::EndpointFan) return "e" + std::to_string(t.owner);
  if (t.owner == kBoxOwner) return "box";
  return "s" + std::to_string(t.owner);
}

}  // namespace

std::string save_triangles(const TriangleSet& set) {
  std::ostringstream out;
  out << "vcp-tris v1\n";
  for (const auto* group : {&set.fans, &set.covers})
    for (const auto& t : *group) {
      out << "tri " << owner_token(t) << (t.kind == TriKind::EndpointFan ? " FAN" : " COVER");
      for (const Point* q : {&t.a, &t.b, &t.c})
        out << ' ' << format_rational(q->x) << ' ' << format_rational(q->y);
      out << '\n';
    }
  return out.str();
}

TriangleSet load_triangles(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  TriangleSet set;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "vcp-tris" || tok[1] != "v1") fail("expected 'vcp-tris v1'");
      header = true;
      continue;
    }
    if (tok.size() != 9 || tok[0] != "tri") fail("expected 'tri owner kind x1 y1 x2 y2 x3 y3'");
    Triangle t;
    if (tok[2] == "FAN") {
      t.kind = TriKind::EndpointFan;
    } else if (tok[2] == "COVER") {
      t.kind = TriKind::SegmentCover;
    } else {
      fail("unknown kind '" + tok[2] + "'");
    }
    const std::string& o = tok[1];
    try {
      if (o == "box") {
        t.owner = kBoxOwner;
      } else if ((o[0] == 'e' || o[0] == 's') && o.size() > 1) {
        t.owner = std::stoi(o.substr(1));
      } else {
        fail("bad owner '" + o + "'");
      }
    } catch (const std::logic_error&) {
      fail("bad owner '" + o + "'");
    }
    t.a = Point(parse_rational(tok[3]), parse_rational(tok[4]));
    t.b = Point(parse_rational(tok[5]), parse_rational(tok[6]));
    t.c = Point(parse_rational(tok[7]), parse_rational(tok[8]));
    (t.kind == TriKind::EndpointFan ? set.fans : set.covers).push_back(std::move(t));
  }
  if (!header) fail("missing header");
  return set;
}

}  // namespace vcp
