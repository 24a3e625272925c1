#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vcp/arrangement.hpp"
#include "vcp/evg.hpp"
#include "vcp/triangles.hpp"

namespace vcp {

struct ParamsInput {
  Rational beta = 0;
  Rational delta = Rational(1, 4);
  std::uint64_t seed = 1;
  double budget_constant = 2.0;
  long budget_override = -1;  // >= 0 replaces the computed budget
};

struct Params {
  Rational beta;
  Rational delta;
  std::uint64_t seed = 1;
  long m = 0;
  int k = 1;
  bool keep_all = true;
  std::uint64_t threshold = 0;  // keep a triangle iff its 64-bit draw < threshold
  Rational sample_prob;    // threshold / 2^64
  Rational multiplier;     // 1 / sample_prob
  long budget = 1;
  Rational c_threshold;    // switch between the two approximate branches
};

Params make_params(const ParamsInput& in, long m);

enum class Stream : std::uint64_t { Fan = 1, Cover = 2 };

bool kept(const Params& params, std::uint64_t seed, int subset, Stream stream, size_t index);

// Per-face aggregate for the component estimator.
class ComponentAggregator : public FaceAggregator {
 public:
  ComponentAggregator(std::vector<int> owners, int n, Rational multiplier);
  void add(int triangle, int delta) override;
  Rational value() const override;
  int group(int triangle) const override { return owners_[triangle]; }

 private:
  std::vector<int> owners_;
  std::vector<int> counts_;
  int box_ = 0;
  long total_ = 0;
  int observed_ = 0;
  Rational multiplier_;
};

/// C_j for one face given the sampled cover counts seen there.
Rational component_term(const Rational& multiplier, long total, int observed, int box);

struct SampledIndex {
  int j = 0;
  std::vector<int> fans;    // indices into TriangleSet::fans
  std::vector<int> covers;  // indices into TriangleSet::covers
  Locator locator_ve;
  Locator locator_c;
};

std::vector<SampledIndex> preprocess(const Scene& scene, const TriangleSet& vt_s, const Params& params);

Rational estimate_ve(const std::vector<SampledIndex>& indexes, const Params& params, const Point& p);
Rational estimate_C(const std::vector<SampledIndex>& indexes, const Point& p);

// Triangles of VT_S containing p, so that many sampling draws can be
// evaluated without rebuilding locators.
struct Census {
  std::vector<int> fans;
  std::vector<int> covers;
  std::vector<int> cover_owners;
};

Census census_at(const TriangleSet& vt_s, const Point& p);

struct DrawResult {
  std::vector<Rational> ve_prime;  // one per census point
  std::vector<Rational> c_prime;
  double mean_subset_size = 0;     // mean over subsets of kept fans + covers
};

/// The same estimators as the locator path, for the draws keyed by `seed`,
/// evaluated by direct containment. Subset sizes are counted only when
/// `with_sizes` is set, since that touches every triangle.
DrawResult evaluate_direct(const TriangleSet& vt_s, const Params& params, std::uint64_t seed,
                           const std::vector<Census>& points, bool with_sizes);

enum class Mode { Exact, ApproxSmallC, ApproxLargeC };
const char* to_string(Mode mode);

struct QueryResult {
  Rational value;
  Mode mode = Mode::Exact;
  Rational ve_prime;
  Rational c_prime;
  long budget_spent = 0;
  int k = 1;
};

class Engine {
 public:
  Engine(Scene scene, const ParamsInput& input);

  const Scene& scene() const { return scene_; }
  const Evg& evg() const { return evg_; }
  const TriangleSet& triangles() const { return vt_s_; }
  const Params& params() const { return params_; }
  const std::vector<SampledIndex>& indexes() const { return indexes_; }

  QueryResult query(const Point& p) const;

 private:
  Scene scene_;
  Evg evg_;
  TriangleSet vt_s_;
  Params params_;
  std::vector<SampledIndex> indexes_;
};

enum class Branch { SmallC, LargeC };

Rational delta_star(const Rational& delta, Branch branch);

}  // namespace vcp
