#include "vcp/raycast.hpp"

#include "vcp/error.hpp"

namespace vcp {

namespace {

struct Contact {
  bool any = false;
  Rational t;          // smallest parameter of contact beyond the threshold
  bool at_endpoint = false;
  Point endpoint;      // set when the smallest contact is an endpoint of the segment
};

// Contact of the ray o + t*d (t > skip) with the closed segment s.
Contact contact(const Point& o, const Point& d, const Segment& s, const Rational& skip) {
  Contact c;
  Point e = s.b - s.a;
  Rational den = cross(d, e);
  Point w = s.a - o;
  if (den != 0) {
    Rational t = cross(w, e) / den;
    if (t <= skip) return c;
    Rational u = cross(w, d) / den;
    if (u < 0 || u > 1) return c;
    c.any = true;
    c.t = t;
    if (u == 0) {
      c.at_endpoint = true;
      c.endpoint = s.a;
    } else if (u == 1) {
      c.at_endpoint = true;
      c.endpoint = s.b;
    }
    return c;
  }
  if (cross(w, d) != 0) return c;
  // Collinear with the ray: the first contact is an endpoint.
  Rational dd = dot(d, d);
  Rational ta = dot(s.a - o, d) / dd;
  Rational tb = dot(s.b - o, d) / dd;
  bool ok_a = ta > skip, ok_b = tb > skip;
  if (!ok_a && !ok_b) return c;
  c.any = true;
  c.at_endpoint = true;
  if (ok_a && (!ok_b || ta < tb)) {
    c.t = ta;
    c.endpoint = s.a;
  } else {
    c.t = tb;
    c.endpoint = s.b;
  }
  return c;
}

Hit first_hit(const Point& origin, const Point& through, const Scene& scene, const Rational& skip,
              bool strict) {
  if (origin == through) throw Error(ErrorCode::BadArgument, "ray origin equals through point");
  Point d = through - origin;
  Hit best;
  bool have = false;
  Rational touch_t;
  bool have_touch = false;
  for (int owner = 0; owner < scene.n() + 4; ++owner) {
    Segment s = scene.owner_segment(owner);
    Contact c = contact(origin, d, s, skip);
    if (!c.any) continue;
    bool is_box = scene.is_box_id(owner);
    if (c.at_endpoint && !is_box && !(c.endpoint == through)) {
      if (!have_touch || c.t < touch_t) {
        touch_t = c.t;
        have_touch = true;
      }
    }
    if (!have || c.t < best.param) {
      best.owner = owner;
      best.param = c.t;
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::Degenerate, "ray escaped the bounding box");
  if (strict && have_touch && touch_t <= best.param)
    throw Error(ErrorCode::Degenerate, "ray passes through a segment endpoint");
  best.point = origin + best.param * d;
  return best;
}

}  // namespace

Hit ray_first_hit(const Point& origin, const Point& through, const Scene& scene,
                  const Rational& skip_before) {
  return first_hit(origin, through, scene, skip_before, true);
}

Hit ray_first_hit_lenient(const Point& origin, const Point& through, const Scene& scene,
                          const Rational& skip_before) {
  return first_hit(origin, through, scene, skip_before, false);
}

std::optional<Hit> ray_last_hit_before(const Point& origin, const Point& target, const Scene& scene) {
  Point d = target - origin;
  std::optional<Hit> best;
  for (const auto& s : scene.segments()) {
    Point e = s.b - s.a;
    Rational den = cross(d, e);
    if (den == 0) continue;
    Point w = s.a - origin;
    Rational t = cross(w, e) / den;
    if (t <= 0 || t >= 1) continue;
    Rational u = cross(w, d) / den;
    if (u < 0 || u > 1) continue;
    if (!best || t > best->param) best = Hit{s.id, origin + t * d, t};
  }
  return best;
}

bool clear_sight(const Scene& scene, const Point& p, const Point& q, int ignore_a, int ignore_b) {
  Segment pq(p, q);
  for (const auto& s : scene.segments()) {
    if (s.id == ignore_a || s.id == ignore_b) continue;
    if (segments_touch(pq, s)) return false;
  }
  return true;
}

}  // namespace vcp
