#include "vcp/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "vcp/error.hpp"
#include "vcp/rng.hpp"

namespace vcp {

Scene::Scene(BBox box, std::vector<Segment> segments)
    : box_(std::move(box)), segments_(std::move(segments)) {
  for (int i = 0; i < n(); ++i) segments_[i].id = i;
}

Point Scene::corner(int k) const {
  switch (((k % 4) + 4) % 4) {
    case 0: return {box_.xmin, box_.ymin};
    case 1: return {box_.xmax, box_.ymin};
    case 2: return {box_.xmax, box_.ymax};
    default: return {box_.xmin, box_.ymax};
  }
}

Segment Scene::box_side(int k) const { return Segment(corner(k), corner(k + 1), n() + k); }

Segment Scene::owner_segment(int owner) const {
  if (owner >= 0 && owner < n()) return segments_[owner];
  if (is_box_id(owner)) return box_side(owner - n());
  throw Error(ErrorCode::UnknownId, "unknown owner id " + std::to_string(owner));
}

const Point& Scene::endpoint(int eid) const {
  if (eid < 0 || eid >= endpoint_count())
    throw Error(ErrorCode::UnknownId, "unknown endpoint id " + std::to_string(eid));
  const Segment& s = segments_[eid / 2];
  return (eid & 1) ? s.b : s.a;
}

std::string Violation::describe() const {
  switch (kind) {
    case Kind::InvalidBBox: return "INVALID_BBOX";
    case Kind::ZeroLength: return "ZERO_LENGTH(" + std::to_string(i) + ")";
    case Kind::NotStrictlyInside: return "NOT_STRICTLY_INSIDE(" + std::to_string(i) + ")";
    case Kind::PairIntersects:
      return "PAIR_INTERSECTS(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "UNKNOWN";
}

namespace {

bool strictly_inside(const BBox& b, const Point& p) {
  return b.xmin < p.x && p.x < b.xmax && b.ymin < p.y && p.y < b.ymax;
}

}  // namespace

std::vector<Violation> validate(const Scene& scene) {
  std::vector<Violation> out;
  const BBox& b = scene.bbox();
  if (!(b.xmin < b.xmax && b.ymin < b.ymax)) {
    out.push_back({Violation::Kind::InvalidBBox});
    return out;
  }
  const auto& segs = scene.segments();
  for (int i = 0; i < scene.n(); ++i) {
    if (segs[i].a == segs[i].b) out.push_back({Violation::Kind::ZeroLength, i});
    if (!strictly_inside(b, segs[i].a) || !strictly_inside(b, segs[i].b))
      out.push_back({Violation::Kind::NotStrictlyInside, i});
  }
  for (int i = 0; i < scene.n(); ++i)
    for (int j = i + 1; j < scene.n(); ++j)
      if (segments_touch(segs[i], segs[j])) out.push_back({Violation::Kind::PairIntersects, i, j});
  return out;
}

Scene generate(int n, const BBox& box, std::uint64_t seed, const GenerateOptions& options) {
  if (n < 0) throw Error(ErrorCode::BadArgument, "n must be non-negative");
  if (!(box.xmin < box.xmax && box.ymin < box.ymax))
    throw Error(ErrorCode::BadArgument, "invalid bounding box");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return unit_double(rng()); };
  const long grid = options.grid;
  const Rational w = box.xmax - box.xmin;
  const Rational h = box.ymax - box.ymin;
  auto grid_x = [&](long i) { return Rational(box.xmin + w * fraction(i, grid)); };
  auto grid_y = [&](long j) { return Rational(box.ymin + h * fraction(j, grid)); };

  std::vector<Segment> segs;
  std::vector<std::pair<long, long>> ends;
  long rejections = 0;
  const long limit = 10000L * std::max(n, 1);
  while (static_cast<int>(segs.size()) < n) {
    if (rejections >= limit)
      throw Error(ErrorCode::GenerationStalled,
                  "gave up after " + std::to_string(rejections) + " consecutive rejections");
    long ax = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(grid - 1));
    long ay = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(grid - 1));
    double frac = options.min_length_fraction +
                  (options.max_length_fraction - options.min_length_fraction) * uniform();
    double theta = 2.0 * M_PI * uniform();
    long bx = ax + std::lround(frac * grid * std::cos(theta));
    long by = ay + std::lround(frac * grid * std::sin(theta));
    bool ok = bx >= 1 && bx <= grid - 1 && by >= 1 && by <= grid - 1 && (bx != ax || by != ay);
    if (ok) {
      Segment cand(Point(grid_x(ax), grid_y(ay)), Point(grid_x(bx), grid_y(by)));
      for (const auto& s : segs)
        if (segments_touch(s, cand)) {
          ok = false;
          break;
        }
      if (ok) {
        segs.push_back(std::move(cand));
        rejections = 0;
        continue;
      }
    }
    ++rejections;
  }
  return Scene(box, std::move(segs));
}

namespace {

// Direction folded into the half-open upper half-plane.
Point fold(Point d) {
  if (d.y < 0 || (d.y == 0 && d.x < 0)) return -d;
  return d;
}

std::vector<Point> scene_vertices(const Scene& scene) {
  std::vector<Point> v;
  v.reserve(scene.endpoint_count() + 4);
  for (const auto& s : scene.segments()) {
    v.push_back(s.a);
    v.push_back(s.b);
  }
  for (int k = 0; k < 4; ++k) v.push_back(scene.corner(k));
  return v;
}

}  // namespace

bool admissible(const Scene& scene, const Point& p) {
  if (!strictly_inside(scene.bbox(), p)) return false;
  for (const auto& s : scene.segments())
    if (on_segment(s.a, s.b, p)) return false;
  std::vector<Point> dirs;
  for (const auto& v : scene_vertices(scene)) {
    if (v == p) return false;
    dirs.push_back(fold(v - p));
  }
  std::sort(dirs.begin(), dirs.end(),
            [](const Point& a, const Point& b) { return sgn(cross(a, b)) > 0; });
  for (size_t i = 1; i < dirs.size(); ++i)
    if (sgn(cross(dirs[i - 1], dirs[i])) == 0) return false;
  return true;
}

bool admissible_brute(const Scene& scene, const Point& p) {
  if (!strictly_inside(scene.bbox(), p)) return false;
  for (const auto& s : scene.segments())
    if (on_segment(s.a, s.b, p)) return false;
  auto v = scene_vertices(scene);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == p) return false;
    for (size_t j = i + 1; j < v.size(); ++j)
      if (orient(v[i], v[j], p) == Orientation::Collinear) return false;
  }
  return true;
}

Point random_admissible_point(const Scene& scene, std::uint64_t& state) {
  constexpr long kGrid = 100003;
  const BBox& b = scene.bbox();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    long i = 1 + static_cast<long>(splitmix64(state) % (kGrid - 1));
    long j = 1 + static_cast<long>(splitmix64(state) % (kGrid - 1));
    Point p(b.xmin + (b.xmax - b.xmin) * fraction(i, kGrid), b.ymin + (b.ymax - b.ymin) * fraction(j, kGrid));
    if (admissible(scene, p)) return p;
  }
  throw Error(ErrorCode::GenerationStalled, "no admissible query point found");
}

Point nearby_admissible_point(const Scene& scene, const Point& p) {
  if (admissible(scene, p)) return p;
  const BBox& b = scene.bbox();
  Rational span = b.xmax - b.xmin > b.ymax - b.ymin ? b.xmax - b.xmin : b.ymax - b.ymin;
  const Point step(span * fraction(1, 1000003), span * fraction(2, 1999993));
  for (long k = 1; k <= 1000; ++k) {
    Point c = p + fraction(k, 1) * step;
    if (admissible(scene, c)) return c;
  }
  throw Error(ErrorCode::InadmissibleQuery, "no admissible point near the requested one");
}

std::string save_scene(const Scene& scene) {
  std::ostringstream out;
  const BBox& b = scene.bbox();
  out << "vcp-scene v1\n";
  out << "bbox " << format_rational(b.xmin) << ' ' << format_rational(b.ymin) << ' '
      << format_rational(b.xmax) << ' ' << format_rational(b.ymax) << '\n';
  for (const auto& s : scene.segments())
    out << "seg " << format_rational(s.a.x) << ' ' << format_rational(s.a.y) << ' '
        << format_rational(s.b.x) << ' ' << format_rational(s.b.y) << '\n';
  return out.str();
}

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

[[noreturn]] void parse_fail(int line, int column, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

}  // namespace

Scene load_scene(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  enum { Header, Box, Body } state = Header;
  BBox box;
  std::vector<Segment> segs;
  auto numbers = [&](const std::vector<Token>& toks, size_t count) {
    if (toks.size() != count + 1)
      parse_fail(lineno, toks.empty() ? 1 : toks.back().column,
                 "expected " + std::to_string(count) + " numbers after '" + toks[0].text + "'");
    std::vector<Rational> vals;
    for (size_t k = 1; k <= count; ++k) {
      try {
        vals.push_back(parse_rational(toks[k].text));
      } catch (const Error& e) {
        parse_fail(lineno, toks[k].column, e.what());
      }
    }
    return vals;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (state == Header) {
      if (toks.size() != 2 || toks[0].text != "vcp-scene" || toks[1].text != "v1")
        parse_fail(lineno, toks[0].column, "expected header 'vcp-scene v1'");
      state = Box;
    } else if (state == Box) {
      if (toks[0].text != "bbox") parse_fail(lineno, toks[0].column, "expected 'bbox'");
      auto v = numbers(toks, 4);
      box = BBox{v[0], v[1], v[2], v[3]};
      state = Body;
    } else {
      if (toks[0].text != "seg") parse_fail(lineno, toks[0].column, "expected 'seg'");
      auto v = numbers(toks, 4);
      segs.emplace_back(Point(v[0], v[1]), Point(v[2], v[3]));
    }
  }
  if (state == Header) parse_fail(lineno + 1, 1, "missing header");
  if (state == Box) parse_fail(lineno + 1, 1, "missing bbox line");
  return Scene(box, std::move(segs));
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str());
}

void save_scene_file(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << save_scene(scene);
}

}  // namespace vcp
