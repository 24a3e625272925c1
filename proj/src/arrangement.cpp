#include "vcp/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "vcp/error.hpp"

namespace vcp {

namespace {

struct Edge {
  Point lo, hi;  // lexicographic order
  ApproxPoint dlo, dhi;
  int weight;    // +1 if the triangle interior lies left of lo -> hi
  int tri;
};

// Maximal run of uncancelled edge material on one supporting line, spanning
// base points first..last of that line.
struct Chain {
  int line;
  int first, last;
  Point lo, hi;
  ApproxPoint dlo, dhi;
  double xmin, xmax, ymin, ymax;
  std::vector<Point> cuts;
  std::vector<ApproxPoint> cut_approx;
};

bool same_point(const Point& p, const Point& q, const ApproxPoint& dp, const ApproxPoint& dq) {
  return dp.x == dq.x && dp.y == dq.y && p == q;
}

// Contact test for chains on different supporting lines. Chains meeting only
// at a shared endpoint do not count.
bool chains_cross(const Chain& e, const Chain& f) {
  if (same_point(e.lo, f.lo, e.dlo, f.dlo) || same_point(e.lo, f.hi, e.dlo, f.dhi) ||
      same_point(e.hi, f.lo, e.dhi, f.dlo) || same_point(e.hi, f.hi, e.dhi, f.dhi))
    return false;
  int o1 = static_cast<int>(orient(e.lo, e.hi, f.lo, e.dlo, e.dhi, f.dlo));
  int o2 = static_cast<int>(orient(e.lo, e.hi, f.hi, e.dlo, e.dhi, f.dhi));
  if (o1 * o2 > 0) return false;
  int o3 = static_cast<int>(orient(f.lo, f.hi, e.lo, f.dlo, f.dhi, e.dlo));
  int o4 = static_cast<int>(orient(f.lo, f.hi, e.hi, f.dlo, f.dhi, e.dhi));
  return o3 * o4 <= 0;
}

// cmp() that trusts distinct double approximations, which round monotonically.
int cmp_coord(const Rational& a, const Rational& b, double da, double db) {
  if (da < db) return -1;
  if (da > db) return 1;
  return cmp(a, b);
}

// Exact lexicographic order, decided by the approximations when they differ.
bool lex_less_approx(const Point& p, const Point& q, const ApproxPoint& dp, const ApproxPoint& dq) {
  if (int c = cmp_coord(p.x, q.x, dp.x, dq.x)) return c < 0;
  return cmp_coord(p.y, q.y, dp.y, dq.y) < 0;
}

struct VertexKey {
  Point p;
  ApproxPoint d;
};

struct VertexKeyLess {
  bool operator()(const VertexKey& a, const VertexKey& b) const { return lex_less_approx(a.p, b.p, a.d, b.d); }
};

struct LineKey {
  Rational a, b, c;
};

struct LineKeyLess {
  bool operator()(const LineKey& u, const LineKey& v) const {
    if (int s = cmp(u.a, v.a)) return s < 0;
    if (int s = cmp(u.b, v.b)) return s < 0;
    return u.c < v.c;
  }
};

LineKey line_key(const Point& p, const Point& q) {
  Rational a = q.y - p.y;
  Rational b = p.x - q.x;
  if (a != 0) {
    b /= a;
    a = 1;
  } else {
    a = 0;
    b = 1;
  }
  return {a, b, a * p.x + b * p.y};
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

// Sorted distinct points with the rank of every input position.
struct Ranking {
  std::vector<int> distinct;
  std::vector<int> rank;
};

Ranking rank_points(const std::vector<Point>& pts, const std::vector<ApproxPoint>& ap) {
  Ranking r;
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less_approx(pts[a], pts[b], ap[a], ap[b]); });
  r.rank.resize(pts.size());
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || lex_less_approx(pts[order[i - 1]], pts[order[i]], ap[order[i - 1]], ap[order[i]]))
      r.distinct.push_back(order[i]);
    r.rank[order[i]] = static_cast<int>(r.distinct.size()) - 1;
  }
  return r;
}

}  // namespace

int brute_containing_count(const std::vector<Triangle>& triangles, const Point& p) {
  int count = 0;
  for (const auto& t : triangles)
    if (contains(t, p)) ++count;
  return count;
}

Point Locator::shear(const Point& p) const { return Point(p.x + lambda_ * p.y, p.y); }
Point Locator::unshear(const Point& p) const { return Point(p.x - lambda_ * p.y, p.y); }

Locator::Locator(const std::vector<Triangle>& triangles, FaceAggregator* aggregator, std::uint64_t seed) {
  stats_.triangles = triangles.size();

  // Edges grouped by supporting line.
  std::vector<Edge> edges;
  edges.reserve(3 * triangles.size());
  std::vector<std::vector<int>> line_edges;
  std::map<LineKey, int, LineKeyLess> line_ids;
  for (size_t t = 0; t < triangles.size(); ++t) {
    const Triangle& tr = triangles[t];
    const Point* c[3] = {&tr.a, &tr.b, &tr.c};
    for (int k = 0; k < 3; ++k) {
      const Point& u = *c[k];
      const Point& v = *c[(k + 1) % 3];
      Edge e;
      e.dlo = approx(u);
      e.dhi = approx(v);
      bool forward = lex_less_approx(u, v, e.dlo, e.dhi);
      if (!forward) std::swap(e.dlo, e.dhi);
      e.lo = forward ? u : v;
      e.hi = forward ? v : u;
      e.weight = forward ? 1 : -1;
      e.tri = static_cast<int>(t);
      auto [it, fresh] = line_ids.emplace(line_key(u, v), static_cast<int>(line_ids.size()));
      if (fresh) line_edges.emplace_back();
      line_edges[it->second].push_back(static_cast<int>(edges.size()));
      edges.push_back(std::move(e));
    }
  }
  line_ids.clear();
  const int nlines = static_cast<int>(line_edges.size());
  auto group_of = [&](int tri) { return aggregator ? aggregator->group(tri) : 0; };

  // Per line: elementary intervals between edge endpoints, keeping only the
  // hits whose group does not cancel, then chains of consecutive survivors.
  std::vector<std::vector<Point>> base(nlines);
  std::vector<std::vector<ApproxPoint>> base_approx(nlines);
  std::vector<std::vector<std::vector<std::pair<int, int>>>> interval_hits(nlines);
  std::vector<Chain> chains;
  double scale = 1.0;
  for (int l = 0; l < nlines; ++l) {
    std::vector<Point> pts;
    std::vector<ApproxPoint> ap;
    for (int ei : line_edges[l]) {
      pts.push_back(edges[ei].lo);
      pts.push_back(edges[ei].hi);
      ap.push_back(edges[ei].dlo);
      ap.push_back(edges[ei].dhi);
    }
    Ranking rk = rank_points(pts, ap);
    const int nb = static_cast<int>(rk.distinct.size());
    for (int idx : rk.distinct) {
      base[l].push_back(pts[idx]);
      base_approx[l].push_back(ap[idx]);
    }
    std::vector<std::vector<int>> opens(nb), closes(nb);
    for (size_t k = 0; k < line_edges[l].size(); ++k) {
      opens[rk.rank[2 * k]].push_back(line_edges[l][k]);
      closes[rk.rank[2 * k + 1]].push_back(line_edges[l][k]);
    }
    auto& hits_of = interval_hits[l];
    hits_of.assign(std::max(nb - 1, 0), {});
    std::vector<int> active;
    std::vector<std::tuple<int, int, int>> grouped;  // (group, tri, weight)
    for (int i = 0; i + 1 < nb; ++i) {
      for (int ei : closes[i]) active.erase(std::find(active.begin(), active.end(), ei));
      for (int ei : opens[i]) active.push_back(ei);
      grouped.clear();
      for (int ei : active) grouped.emplace_back(group_of(edges[ei].tri), edges[ei].tri, edges[ei].weight);
      std::sort(grouped.begin(), grouped.end());
      for (size_t a = 0; a < grouped.size();) {
        size_t b = a;
        int net = 0;
        while (b < grouped.size() && std::get<0>(grouped[b]) == std::get<0>(grouped[a])) net += std::get<2>(grouped[b++]);
        if (net != 0)
          for (size_t h = a; h < b; ++h) hits_of[i].emplace_back(std::get<1>(grouped[h]), std::get<2>(grouped[h]));
        a = b;
      }
    }
    for (int i = 0; i + 1 < nb;) {
      if (hits_of[i].empty()) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < nb - 1 && !hits_of[j + 1].empty()) ++j;
      Chain ch;
      ch.line = l;
      ch.first = i;
      ch.last = j + 1;
      ch.lo = base[l][i];
      ch.hi = base[l][j + 1];
      ch.dlo = base_approx[l][i];
      ch.dhi = base_approx[l][j + 1];
      ch.xmin = std::min(ch.dlo.x, ch.dhi.x);
      ch.xmax = std::max(ch.dlo.x, ch.dhi.x);
      ch.ymin = std::min(ch.dlo.y, ch.dhi.y);
      ch.ymax = std::max(ch.dlo.y, ch.dhi.y);
      scale = std::max({scale, std::fabs(ch.xmin), std::fabs(ch.xmax), std::fabs(ch.ymin), std::fabs(ch.ymax)});
      chains.push_back(std::move(ch));
      i = j + 1;
    }
  }
  edges.clear();
  edges.shrink_to_fit();
  line_edges.clear();

  // Crossings between chains of different lines.
  const double tol = 1e-9 * scale;
  std::vector<int> order(chains.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return chains[a].xmin < chains[b].xmin; });
  for (size_t oi = 0; oi < order.size(); ++oi) {
    Chain& e = chains[order[oi]];
    for (size_t oj = oi + 1; oj < order.size(); ++oj) {
      Chain& f = chains[order[oj]];
      if (f.xmin > e.xmax + tol) break;
      if (f.line == e.line || f.ymin > e.ymax + tol || f.ymax < e.ymin - tol) continue;
      if (!chains_cross(e, f)) continue;
      Point r = e.hi - e.lo;
      Point d = f.hi - f.lo;
      Point x = e.lo + (cross(f.lo - e.lo, d) / cross(r, d)) * r;
      ApproxPoint dx = approx(x);
      e.cuts.push_back(x);
      e.cut_approx.push_back(dx);
      f.cuts.push_back(std::move(x));
      f.cut_approx.push_back(dx);
    }
  }

  // Elementary pieces per chain, vertices deduplicated.
  std::map<VertexKey, int, VertexKeyLess> vertex_ids;
  std::vector<Point> raw_verts;
  auto vertex_of = [&](const Point& p, const ApproxPoint& d) {
    auto [it, fresh] = vertex_ids.emplace(VertexKey{p, d}, static_cast<int>(raw_verts.size()));
    if (fresh) raw_verts.push_back(p);
    return it->second;
  };
  struct RawPiece {
    int lo, hi;
    int line, interval;
  };
  std::vector<RawPiece> raw;
  for (Chain& ch : chains) {
    const int l = ch.line;
    std::vector<Point> pts(base[l].begin() + ch.first, base[l].begin() + ch.last + 1);
    std::vector<ApproxPoint> ap(base_approx[l].begin() + ch.first, base_approx[l].begin() + ch.last + 1);
    const int nbase = static_cast<int>(pts.size());
    pts.insert(pts.end(), std::make_move_iterator(ch.cuts.begin()), std::make_move_iterator(ch.cuts.end()));
    ap.insert(ap.end(), ch.cut_approx.begin(), ch.cut_approx.end());
    ch.cuts.clear();
    ch.cut_approx.clear();
    Ranking rk = rank_points(pts, ap);
    // Base point k of the chain sits at rank k' >= k; intervals follow the base ranks.
    std::vector<int> interval_at(rk.distinct.size(), -1);
    for (int k = 0; k < nbase; ++k) interval_at[rk.rank[k]] = ch.first + k;
    int current = ch.first;
    int prev = vertex_of(pts[rk.distinct[0]], ap[rk.distinct[0]]);
    for (size_t i = 1; i < rk.distinct.size(); ++i) {
      int idx = rk.distinct[i];
      int v = vertex_of(pts[idx], ap[idx]);
      raw.push_back(RawPiece{prev, v, l, current});
      prev = v;
      if (interval_at[i] >= 0) current = interval_at[i];
    }
  }
  chains.clear();
  base.clear();
  base_approx.clear();
  stats_.edge_pieces = raw.size();

  // Shear until every vertex has a distinct x'.
  static const long kShears[][2] = {{1, 1009}, {1, 1013}, {3, 1019}, {7, 1021}, {11, 1031}, {13, 1033}};
  bool found = false;
  for (const auto& sh : kShears) {
    lambda_ = Rational(sh[0], sh[1]);
    std::vector<Rational> xs;
    xs.reserve(raw_verts.size());
    for (const auto& v : raw_verts) xs.push_back(v.x + lambda_ * v.y);
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) == xs.end()) {
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::Degenerate, "no shear separates the arrangement vertices");
  verts_.reserve(raw_verts.size());
  approx_.reserve(raw_verts.size());
  for (const auto& v : raw_verts) {
    verts_.push_back(shear(v));
    approx_.push_back(approx(verts_.back()));
  }
  raw_verts.clear();

  pieces_.reserve(raw.size());
  for (auto& rp : raw) {
    bool lo_left = verts_[rp.lo].x < verts_[rp.hi].x;
    Piece pc;
    pc.left = lo_left ? rp.lo : rp.hi;
    pc.right = lo_left ? rp.hi : rp.lo;
    pc.begin = static_cast<int>(hits_.size());
    for (auto [tri, w] : interval_hits[rp.line][rp.interval]) hits_.emplace_back(tri, lo_left ? w : -w);
    pc.end = static_cast<int>(hits_.size());
    pieces_.push_back(pc);
  }
  raw.clear();
  interval_hits.clear();

  // Randomized incremental trapezoidal map.
  traps_.push_back(Trap{});
  nodes_.push_back(Node{Node::Leaf, 0});
  traps_[0].node = 0;
  std::vector<int> perm(pieces_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
  for (int s : perm) insert(s);

  build_payloads(aggregator);

  Dsu dsu(static_cast<int>(verts_.size()));
  size_t components = verts_.size();
  for (const auto& pc : pieces_) {
    int a = dsu.find(pc.left), b = dsu.find(pc.right);
    if (a != b) {
      dsu.parent[a] = b;
      --components;
    }
  }
  stats_.vertices = verts_.size();
  stats_.faces = pieces_.size() - verts_.size() + 1 + components;
  size_t live = 0;
  for (const auto& nd : nodes_)
    if (nd.kind == Node::Leaf) ++live;
  stats_.trapezoids = live;
  stats_.dag_nodes = nodes_.size();
}

// Query probes reject points on edges. Insert probes locate a point of the
// piece being inserted; Above/Below probes locate a point lying on `piece`
// and step to the requested side of it.
int Locator::locate_trap(const Point& q, Probe probe, int piece) const {
  const ApproxPoint dq = approx(q);
  int node = 0;
  while (nodes_[node].kind != Node::Leaf) {
    const Node& nd = nodes_[node];
    if (nd.kind == Node::XNode) {
      const Point& r = verts_[nd.ref];
      int c = cmp_coord(q.x, r.x, dq.x, approx_[nd.ref].x);
      if (c == 0 && probe == Probe::Query && q.y == r.y)
        throw Error(ErrorCode::OnEdge, "query point coincides with an arrangement vertex");
      node = c < 0 ? nd.left : nd.right;
      continue;
    }
    const Piece& t = pieces_[nd.ref];
    Orientation o = orient(verts_[t.left], verts_[t.right], q, approx_[t.left], approx_[t.right], dq);
    bool up;
    if (o != Orientation::Collinear) {
      up = o == Orientation::Left;
    } else if (probe == Probe::Query) {
      throw Error(ErrorCode::OnEdge, "query point lies on an arrangement edge");
    } else if (probe != Probe::Insert) {
      if (nd.ref != piece) throw Error(ErrorCode::Degenerate, "arrangement pieces overlap");
      up = probe == Probe::Above;
    } else {
      if (!(verts_[t.left] == q)) throw Error(ErrorCode::Degenerate, "inconsistent trapezoid search");
      const int pr = pieces_[piece].right;
      up = orient(verts_[t.left], verts_[t.right], verts_[pr], approx_[t.left], approx_[t.right], approx_[pr]) ==
           Orientation::Left;
    }
    node = up ? nd.left : nd.right;
  }
  return nodes_[node].ref;
}

void Locator::insert(int s) {
  const Piece& sp = pieces_[s];
  const Point P = verts_[sp.left];
  const Point Q = verts_[sp.right];

  std::vector<int> D;
  D.push_back(locate_trap(P, Probe::Insert, s));
  while (true) {
    int r = traps_[D.back()].rightp;
    if (r < 0 || cmp_coord(verts_[r].x, Q.x, approx_[r].x, approx_[sp.right].x) >= 0) break;
    Rational zy = P.y + (Q.y - P.y) * (verts_[r].x - P.x) / (Q.x - P.x);
    D.push_back(locate_trap(Point(verts_[r].x, zy), Probe::Insert, s));
  }

  auto new_trap = [&](int top, int bottom, int leftp, int rightp) {
    int id = static_cast<int>(traps_.size());
    int node = static_cast<int>(nodes_.size());
    traps_.push_back(Trap{top, bottom, leftp, rightp, node});
    nodes_.push_back(Node{Node::Leaf, id});
    return id;
  };
  auto new_node = [&](Node::Kind kind, int ref, int left, int right) {
    nodes_.push_back(Node{kind, ref, left, right});
    return static_cast<int>(nodes_.size()) - 1;
  };

  const int k = static_cast<int>(D.size()) - 1;
  const Trap d0 = traps_[D[0]];
  const Trap dk = traps_[D[k]];
  int A = d0.leftp != sp.left ? new_trap(d0.top, d0.bottom, d0.leftp, sp.left) : -1;
  int B = dk.rightp != sp.right ? new_trap(dk.top, dk.bottom, sp.right, dk.rightp) : -1;

  std::vector<int> up(k + 1), lo(k + 1);
  int U = new_trap(d0.top, s, sp.left, -1);
  int L = new_trap(s, d0.bottom, sp.left, -1);
  up[0] = U;
  lo[0] = L;
  for (int j = 1; j <= k; ++j) {
    int r = traps_[D[j - 1]].rightp;
    if (orient(P, Q, verts_[r], approx_[sp.left], approx_[sp.right], approx_[r]) == Orientation::Left) {
      traps_[U].rightp = r;
      U = new_trap(traps_[D[j]].top, s, r, -1);
    } else {
      traps_[L].rightp = r;
      L = new_trap(s, traps_[D[j]].bottom, r, -1);
    }
    up[j] = U;
    lo[j] = L;
  }
  traps_[U].rightp = sp.right;
  traps_[L].rightp = sp.right;

  for (int j = 0; j <= k; ++j) {
    const int old = traps_[D[j]].node;
    Node top{Node::YNode, s, traps_[up[j]].node, traps_[lo[j]].node};
    if (j == k && B >= 0) {
      int y = new_node(top.kind, top.ref, top.left, top.right);
      top = Node{Node::XNode, sp.right, y, traps_[B].node};
    }
    if (j == 0 && A >= 0) {
      int inner = new_node(top.kind, top.ref, top.left, top.right);
      top = Node{Node::XNode, sp.left, traps_[A].node, inner};
    }
    nodes_[old] = top;
    traps_[D[j]].node = -1;
  }
}

void Locator::build_payloads(FaceAggregator* aggregator) {
  const int np = static_cast<int>(pieces_.size());
  std::vector<int> parent(np);
  for (int i = 0; i < np; ++i) {
    const Piece& pc = pieces_[i];
    Point mid = Rational(1, 2) * (verts_[pc.left] + verts_[pc.right]);
    parent[i] = traps_[locate_trap(mid, Probe::Below, i)].bottom;
  }
  std::vector<std::vector<int>> children(np);
  std::vector<int> roots;
  for (int i = 0; i < np; ++i) (parent[i] < 0 ? roots : children[parent[i]]).push_back(i);

  root_.containing_count = 0;
  root_.extra = aggregator ? aggregator->value() : Rational(0);
  above_.assign(np, FacePayload{});

  std::vector<std::pair<int, bool>> stack;  // (piece, exiting)
  for (int r : roots) stack.emplace_back(r, false);
  int count = 0;
  while (!stack.empty()) {
    auto [i, exiting] = stack.back();
    stack.pop_back();
    const Piece& pc = pieces_[i];
    if (exiting) {
      for (int h = pc.begin; h < pc.end; ++h) {
        count -= hits_[h].second;
        if (aggregator) aggregator->add(hits_[h].first, -hits_[h].second);
      }
      continue;
    }
    for (int h = pc.begin; h < pc.end; ++h) {
      count += hits_[h].second;
      if (aggregator) aggregator->add(hits_[h].first, hits_[h].second);
    }
    above_[i].containing_count = count;
    above_[i].extra = aggregator ? aggregator->value() : Rational(0);
    stack.emplace_back(i, true);
    for (int c : children[i]) stack.emplace_back(c, false);
  }
}

const FacePayload& Locator::locate(const Point& p) const {
  if (nodes_.empty()) return root_;
  int t = locate_trap(shear(p), Probe::Query, -1);
  int b = traps_[t].bottom;
  return b < 0 ? root_ : above_[b];
}

std::pair<Point, Point> Locator::piece_ends(size_t i) const {
  return {unshear(verts_[pieces_[i].left]), unshear(verts_[pieces_[i].right])};
}

int Locator::piece_weight(size_t i) const {
  int w = 0;
  for (int h = pieces_[i].begin; h < pieces_[i].end; ++h) w += hits_[h].second;
  return w;
}

int Locator::piece_edge_count(size_t i) const { return pieces_[i].end - pieces_[i].begin; }

std::vector<std::pair<int, int>> Locator::piece_hits(size_t i) const {
  return {hits_.begin() + pieces_[i].begin, hits_.begin() + pieces_[i].end};
}

}  // namespace vcp
