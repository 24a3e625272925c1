#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "vcp/scene.hpp"

namespace fixtures {

inline vcp::Rational q(const char* text) { return vcp::parse_rational(text); }

inline vcp::Point pt(const char* x, const char* y) { return vcp::Point(q(x), q(y)); }

struct S {
  const char *ax, *ay, *bx, *by;
};

inline vcp::Scene make(const char* xmin, const char* ymin, const char* xmax, const char* ymax,
                       std::initializer_list<S> segs) {
  std::vector<vcp::Segment> out;
  for (const auto& s : segs) out.emplace_back(pt(s.ax, s.ay), pt(s.bx, s.by));
  return vcp::Scene(vcp::BBox{q(xmin), q(ymin), q(xmax), q(ymax)}, out);
}

// One horizontal segment; query (5,1) sees all of it.
inline vcp::Scene t1() { return make("0", "0", "10", "10", {{"2", "5", "8", "5"}}); }

// t1 plus a short segment in front that splits s1's visible part in two.
inline vcp::Scene t2() {
  return make("0", "0", "10", "10", {{"2", "5", "8", "5"}, {"4", "3", "6", "3"}});
}

// s1 lies entirely in the shadow of s0 as seen from (5,0).
inline vcp::Scene hidden() {
  return make("0", "-1", "10", "10", {{"4", "4", "6", "4"}, {"3.8", "6", "6.2", "6"}});
}

// Four segments circling the origin so that no ray from it escapes.
inline vcp::Scene pinwheel() {
  return make("-5", "-4", "6", "5",
              {{"-3", "1", "0.5", "1"}, {"1", "-0.5", "1", "3"}, {"-0.6", "-1", "3.2", "-1"}, {"-1", "-2.7", "-1", "0.6"}});
}

// Five segments above the query point (-5,-2); G(p) has five edges.
inline vcp::Scene five_edges() {
  return make("-20", "-5", "5", "15",
              {{"-10", "10", "-2", "10"},
               {"-12", "8", "-9", "8.5"},
               {"-10", "6", "-7", "7"},
               {"-5", "8", "-2", "7.5"},
               {"-6", "6", "-1", "6.5"}});
}

// Six segments seen from (9,2) with three components in G(p).
inline vcp::Scene three_components() {
  return make("0", "0", "20", "20",
              {{"2", "18", "17", "16"},
               {"2", "15", "4", "15.5"},
               {"7", "12", "11", "13"},
               {"10", "12.2", "13", "12"},
               {"10.5", "11.2", "11.5", "11"},
               {"16", "15", "18", "14"}});
}

}  // namespace fixtures
