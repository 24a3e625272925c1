#include "vcp/geometry.hpp"

#include <cctype>
#include <cmath>

#include "vcp/error.hpp"

namespace vcp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvalidScene: return "INVALID_SCENE";
    case ErrorCode::InadmissibleQuery: return "INADMISSIBLE_QUERY";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::OnEdge: return "ON_EDGE";
    case ErrorCode::DeltaTooLarge: return "DELTA_TOO_LARGE";
    case ErrorCode::GenerationStalled: return "GENERATION_STALLED";
    case ErrorCode::UnknownId: return "UNKNOWN_ID";
    case ErrorCode::BadArgument: return "BAD_ARGUMENT";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) bad_number(text);
    result = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      bad_number(text);
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class n(digits.empty() ? std::string("0") : digits, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    result = Rational(n, d);
  } else {
    if (!all_digits(body)) bad_number(text);
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

int sign(const Rational& value) { return sgn(value); }

Rational fraction(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool lex_less(const Point& a, const Point& b) {
  int cx = cmp(a.x, b.x);
  if (cx != 0) return cx < 0;
  return a.y < b.y;
}

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator-(const Point& a) { return {-a.x, -a.y}; }
Point operator*(const Rational& k, const Point& a) { return {k * a.x, k * a.y}; }

Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

ApproxPoint approx(const Point& p) { return {p.x.get_d(), p.y.get_d()}; }

Orientation orient(const Point& a, const Point& b, const Point& c) {
  return orient(a, b, c, approx(a), approx(b), approx(c));
}

Orientation orient(const Point& a, const Point& b, const Point& c, const ApproxPoint& da, const ApproxPoint& db,
                   const ApproxPoint& dc) {
  {
    const double ax = da.x, ay = da.y;
    const double bx = db.x, by = db.y;
    const double cx = dc.x, cy = dc.y;
    const double det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    const double mag = (std::fabs(bx) + std::fabs(ax)) * (std::fabs(cy) + std::fabs(ay)) +
                       (std::fabs(by) + std::fabs(ay)) * (std::fabs(cx) + std::fabs(ax));
    if (std::fabs(det) > 1e-14 * mag) return det > 0 ? Orientation::Left : Orientation::Right;
  }
  Rational lhs = (b.x - a.x) * (c.y - a.y);
  Rational rhs = (b.y - a.y) * (c.x - a.x);
  int s = cmp(lhs, rhs);
  return s > 0 ? Orientation::Left : (s < 0 ? Orientation::Right : Orientation::Collinear);
}

bool on_segment(const Point& a, const Point& b, const Point& c) {
  if (orient(a, b, c) != Orientation::Collinear) return false;
  auto within = [](const Rational& lo, const Rational& hi, const Rational& v) {
    return lo <= hi ? (lo <= v && v <= hi) : (hi <= v && v <= lo);
  };
  return within(a.x, b.x, c.x) && within(a.y, b.y, c.y);
}

bool segments_touch(const Segment& s, const Segment& t) {
  int o1 = static_cast<int>(orient(s.a, s.b, t.a));
  int o2 = static_cast<int>(orient(s.a, s.b, t.b));
  int o3 = static_cast<int>(orient(t.a, t.b, s.a));
  int o4 = static_cast<int>(orient(t.a, t.b, s.b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

Intersection segment_intersection(const Segment& s, const Segment& t) {
  Intersection out;
  if (!segments_touch(s, t)) return out;
  Point r = s.b - s.a;
  Point q = t.b - t.a;
  Rational denom = cross(r, q);
  if (denom != 0) {
    Rational u = cross(t.a - s.a, q) / denom;
    out.kind = Intersection::Kind::Point;
    out.point = s.a + u * r;
    return out;
  }
  // Collinear and touching: clip t's endpoints onto s's parameter range.
  Rational rr = dot(r, r);
  Rational u0 = dot(t.a - s.a, r) / rr;
  Rational u1 = dot(t.b - s.a, r) / rr;
  if (u0 > u1) std::swap(u0, u1);
  Rational lo = u0 > 0 ? u0 : Rational(0);
  Rational hi = u1 < 1 ? u1 : Rational(1);
  Point p0 = s.a + lo * r;
  Point p1 = s.a + hi * r;
  if (lo == hi) {
    out.kind = Intersection::Kind::Point;
    out.point = p0;
  } else {
    out.kind = Intersection::Kind::Overlap;
    out.overlap = Segment(p0, p1);
  }
  return out;
}

Rational carrier_param(const Point& origin, const Point& dir, const Segment& s) {
  Point e = s.b - s.a;
  return cross(s.a - origin, e) / cross(dir, e);
}

Point carrier_hit(const Point& origin, const Point& dir, const Segment& s) {
  return origin + carrier_param(origin, dir, s) * dir;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace vcp
