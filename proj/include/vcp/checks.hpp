#pragma once

#include <string>
#include <vector>

#include "vcp/gp_graph.hpp"
#include "vcp/triangles.hpp"

namespace vcp {

struct QueryCheck {
  int ve_p = 0;
  int m_p = 0;
  int oracle_ve_p = 0;
  int oracle_m_p = 0;
  int identity_m_p = 0;
  int components = 0;
  int components_formula = 0;
  int faces = 0;
  bool bounded = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs every exact invariant at one admissible query point. When `vt_s`
/// is given, the triangle censuses are checked as well.
QueryCheck check_query(const Scene& scene, const Point& p, const TriangleSet* vt_s = nullptr);

}  // namespace vcp
