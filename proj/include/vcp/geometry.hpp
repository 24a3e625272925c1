#pragma once

// Exact planar primitives. Every coordinate is an arbitrary-precision
// rational; no predicate or construction in this header rounds.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace vcp {

using Rational = mpq_class;

/// Parses "-12", "3.25", "7/4" (optional sign) into an exact rational.
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "k" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

int sign(const Rational& value);

/// num / den in canonical form. den must be non-zero.
Rational fraction(long num, long den);

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
};

/// Lexicographic (x, then y) order.
bool lex_less(const Point& a, const Point& b);

struct LexLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator-(const Point& a);
Point operator*(const Rational& k, const Point& a);

Rational cross(const Point& u, const Point& v);
Rational dot(const Point& u, const Point& v);

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

/// Sign of (b - a) x (c - a).
Orientation orient(const Point& a, const Point& b, const Point& c);

struct ApproxPoint {
  double x = 0;
  double y = 0;
};

ApproxPoint approx(const Point& p);

/// orient() with caller-cached double approximations of a, b and c.
Orientation orient(const Point& a, const Point& b, const Point& c, const ApproxPoint& da, const ApproxPoint& db,
                   const ApproxPoint& dc);

struct Segment {
  Point a;
  Point b;
  int id = -1;

  Segment() = default;
  Segment(Point pa, Point pb, int sid = -1) : a(std::move(pa)), b(std::move(pb)), id(sid) {}
};

/// True iff c lies on the closed segment ab (a, b, c assumed collinear or not).
bool on_segment(const Point& a, const Point& b, const Point& c);

struct Intersection {
  enum class Kind { None, Point, Overlap };
  Kind kind = Kind::None;
  vcp::Point point;   // valid for Kind::Point
  Segment overlap;    // valid for Kind::Overlap
};

/// Exact classification of two closed segments.
Intersection segment_intersection(const Segment& s, const Segment& t);

/// Cheaper yes/no form of segment_intersection for closed segments.
bool segments_touch(const Segment& s, const Segment& t);

/// Parameter t such that origin + t*dir lies on the carrier line of s.
/// Requires dir not parallel to s.
Rational carrier_param(const Point& origin, const Point& dir, const Segment& s);

/// origin + t*dir on the carrier of s.
Point carrier_hit(const Point& origin, const Point& dir, const Segment& s);

double to_double(const Rational& value);

}  // namespace vcp
