#include "vcp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vcp/error.hpp"
#include "vcp/rng.hpp"
#include "vcp/sweep.hpp"

namespace vcp {

namespace {

const mpz_class& two_pow_64() {
  static const mpz_class v = mpz_class(1) << 64;
  return v;
}

std::uint64_t subset_seed(std::uint64_t seed, int j) { return keyed_draw(seed, 0x5eed, j, 0); }

}  // namespace

Params make_params(const ParamsInput& in, long m) {
  if (in.beta < 0 || in.beta > Rational(2, 3))
    throw Error(ErrorCode::BadArgument, "beta must lie in [0, 2/3]");
  if (in.delta <= 0 || in.delta > 1) throw Error(ErrorCode::BadArgument, "delta must lie in (0, 1]");
  Params p;
  p.beta = in.beta;
  p.delta = in.delta;
  p.seed = in.seed;
  p.m = m;
  const double beta = in.beta.get_d();
  const double delta = in.delta.get_d();
  const double md = static_cast<double>(std::max<long>(m, 1));
  const double half = std::pow(md, beta / 2);
  p.k = std::max(1, static_cast<int>(std::lround(half)));

  p.keep_all = in.beta == 0 || m <= 1;
  if (!p.keep_all) {
    double t = std::ldexp(1.0, 64) / std::pow(md, beta);
    t = std::nearbyint(t);
    if (t >= std::ldexp(1.0, 64)) {
      p.keep_all = true;
    } else {
      p.threshold = static_cast<std::uint64_t>(t);
    }
  }
  if (p.keep_all) {
    p.sample_prob = 1;
    p.multiplier = 1;
  } else {
    mpz_class th;
    mpz_import(th.get_mpz_t(), 1, 1, sizeof(p.threshold), 0, 0, &p.threshold);
    p.sample_prob = Rational(th, two_pow_64());
    p.multiplier = Rational(two_pow_64(), th);
  }
  p.sample_prob.canonicalize();
  p.multiplier.canonicalize();

  const double lg = m >= 2 ? std::log2(md) : 0.0;
  if (in.budget_override >= 0) {
    p.budget = in.budget_override;
  } else if (m < 2) {
    p.budget = 1;
  } else {
    p.budget = static_cast<long>(std::ceil(in.budget_constant / (delta * delta * delta) * half * lg));
  }
  p.c_threshold = Rational((1 + delta) / (delta * delta) * half * lg);
  return p;
}

bool kept(const Params& params, std::uint64_t seed, int subset, Stream stream, size_t index) {
  if (params.keep_all) return true;
  std::uint64_t draw = keyed_draw(subset_seed(seed, subset), static_cast<std::uint64_t>(stream), index, 0);
  return draw < params.threshold;
}

Rational component_term(const Rational& multiplier, long total, int observed, int box) {
  Rational v = multiplier * total - observed;
  v += box >= 1 ? Rational(multiplier * box) : Rational(1);
  return v;
}

ComponentAggregator::ComponentAggregator(std::vector<int> owners, int n, Rational multiplier)
    : owners_(std::move(owners)), counts_(n, 0), multiplier_(std::move(multiplier)) {}

void ComponentAggregator::add(int triangle, int delta) {
  int o = owners_[triangle];
  if (o == kBoxOwner) {
    box_ += delta;
    return;
  }
  int before = counts_[o];
  counts_[o] += delta;
  total_ += delta;
  if (before == 0 && counts_[o] > 0) ++observed_;
  if (before > 0 && counts_[o] == 0) --observed_;
}

Rational ComponentAggregator::value() const { return component_term(multiplier_, total_, observed_, box_); }

std::vector<SampledIndex> preprocess(const Scene& scene, const TriangleSet& vt_s, const Params& params) {
  std::vector<SampledIndex> out(params.k);
  for (int j = 0; j < params.k; ++j) {
    SampledIndex& idx = out[j];
    idx.j = j;
    std::vector<Triangle> fans, covers;
    std::vector<int> owners;
    for (size_t i = 0; i < vt_s.fans.size(); ++i)
      if (kept(params, params.seed, j, Stream::Fan, i)) {
        idx.fans.push_back(static_cast<int>(i));
        fans.push_back(vt_s.fans[i]);
      }
    for (size_t i = 0; i < vt_s.covers.size(); ++i)
      if (kept(params, params.seed, j, Stream::Cover, i)) {
        idx.covers.push_back(static_cast<int>(i));
        covers.push_back(vt_s.covers[i]);
        owners.push_back(vt_s.covers[i].owner);
      }
    std::uint64_t lseed = subset_seed(params.seed, j);
    idx.locator_ve = Locator(fans, nullptr, lseed);
    ComponentAggregator agg(std::move(owners), scene.n(), params.multiplier);
    idx.locator_c = Locator(covers, &agg, lseed ^ 0x9e3779b97f4a7c15ULL);
  }
  return out;
}

Rational estimate_ve(const std::vector<SampledIndex>& indexes, const Params& params, const Point& p) {
  long sum = 0;
  for (const auto& idx : indexes) sum += idx.locator_ve.locate(p).containing_count;
  return params.multiplier * fraction(sum, static_cast<long>(indexes.size()));
}

Rational estimate_C(const std::vector<SampledIndex>& indexes, const Point& p) {
  Rational sum = 0;
  for (const auto& idx : indexes) sum += idx.locator_c.locate(p).extra;
  return sum / static_cast<long>(indexes.size());
}

Census census_at(const TriangleSet& vt_s, const Point& p) {
  Census c;
  for (size_t i = 0; i < vt_s.fans.size(); ++i)
    if (contains(vt_s.fans[i], p)) c.fans.push_back(static_cast<int>(i));
  for (size_t i = 0; i < vt_s.covers.size(); ++i)
    if (contains(vt_s.covers[i], p)) {
      c.covers.push_back(static_cast<int>(i));
      c.cover_owners.push_back(vt_s.covers[i].owner);
    }
  return c;
}

DrawResult evaluate_direct(const TriangleSet& vt_s, const Params& params, std::uint64_t seed,
                           const std::vector<Census>& points, bool with_sizes) {
  DrawResult r;
  r.ve_prime.assign(points.size(), Rational(0));
  r.c_prime.assign(points.size(), Rational(0));
  std::vector<long> fan_sum(points.size(), 0);
  for (int j = 0; j < params.k; ++j) {
    for (size_t q = 0; q < points.size(); ++q) {
      const Census& c = points[q];
      for (int i : c.fans)
        if (kept(params, seed, j, Stream::Fan, i)) ++fan_sum[q];
      std::map<int, int> per_owner;
      for (size_t t = 0; t < c.covers.size(); ++t)
        if (kept(params, seed, j, Stream::Cover, c.covers[t])) ++per_owner[c.cover_owners[t]];
      long total = 0;
      int observed = 0, box = 0;
      for (auto [owner, cnt] : per_owner) {
        if (owner == kBoxOwner) {
          box = cnt;
        } else {
          total += cnt;
          ++observed;
        }
      }
      r.c_prime[q] += component_term(params.multiplier, total, observed, box);
    }
    if (with_sizes) {
      long size = 0;
      for (size_t i = 0; i < vt_s.fans.size(); ++i)
        if (kept(params, seed, j, Stream::Fan, i)) ++size;
      for (size_t i = 0; i < vt_s.covers.size(); ++i)
        if (kept(params, seed, j, Stream::Cover, i)) ++size;
      r.mean_subset_size += static_cast<double>(size);
    }
  }
  for (size_t q = 0; q < points.size(); ++q) {
    r.ve_prime[q] = params.multiplier * fraction(fan_sum[q], params.k);
    r.c_prime[q] /= params.k;
  }
  r.mean_subset_size /= params.k;
  return r;
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Exact: return "EXACT";
    case Mode::ApproxSmallC: return "APPROX_SMALL_C";
    case Mode::ApproxLargeC: return "APPROX_LARGE_C";
  }
  return "UNKNOWN";
}

Engine::Engine(Scene scene, const ParamsInput& input) : scene_(std::move(scene)) {
  auto violations = validate(scene_);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidScene, "invalid scene: " + violations.front().describe());
  evg_ = build_evg(scene_);
  params_ = make_params(input, evg_.m);
  vt_s_ = build_vt_s(scene_);
  indexes_ = preprocess(scene_, vt_s_, params_);
}

QueryResult Engine::query(const Point& p) const {
  if (!admissible(scene_, p)) throw Error(ErrorCode::InadmissibleQuery, "query point is not admissible");
  QueryResult r;
  r.k = params_.k;
  SweepOutcome out = budgeted_sweep(scene_, p, params_.budget);
  r.budget_spent = out.found;
  if (out.completed) {
    r.mode = Mode::Exact;
    r.value = out.profile.m_p;
    return r;
  }
  if (params_.delta >= 1)
    throw Error(ErrorCode::DeltaTooLarge, "delta must be below 1 for approximate answers");
  r.ve_prime = estimate_ve(indexes_, params_, p);
  r.c_prime = estimate_C(indexes_, p);
  const Rational& d = params_.delta;
  Rational base = r.ve_prime / (1 - d);
  if (r.c_prime < params_.c_threshold) {
    r.mode = Mode::ApproxSmallC;
    r.value = base;
  } else {
    r.mode = Mode::ApproxLargeC;
    r.value = base - r.c_prime / (1 + d);
  }
  return r;
}

Rational delta_star(const Rational& delta, Branch branch) {
  if (delta >= 1) throw Error(ErrorCode::DeltaTooLarge, "delta must be below 1");
  if (delta <= 0) throw Error(ErrorCode::BadArgument, "delta must be positive");
  const Rational one = 1;
  if (branch == Branch::SmallC) {
    Rational v = (one + delta * delta * (one + delta)) / ((one - delta) * (one - delta)) - one;
    v.canonicalize();
    return v;
  }
  Rational v = 4 * delta / (one - delta) + 2 * delta / (one + delta);
  v.canonicalize();
  return v;
}

}  // namespace vcp
