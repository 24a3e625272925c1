// Command-line front end over the C interface.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vcp/vcp.h"

namespace {

enum Exit { kOk = 0, kViolation = 1, kBadInput = 2, kDegenerate = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code_of(vcp_status s) {
  switch (s) {
    case VCP_OK: return kOk;
    case VCP_DEGENERATE:
    case VCP_ON_EDGE:
    case VCP_INADMISSIBLE_QUERY: return kDegenerate;
    case VCP_INTERNAL: return kViolation;
    default: return kBadInput;
  }
}

void check(vcp_status s, const std::string& what) {
  if (s != VCP_OK)
    throw Failure{exit_code_of(s), what + ": " + vcp_status_name(s) + " (" + vcp_last_error() + ")"};
}

std::string take(char* p) {
  std::string s = p ? p : "";
  vcp_free(p);
  return s;
}

using ScenePtr = std::unique_ptr<vcp_scene, decltype(&vcp_scene_free)>;
using EnginePtr = std::unique_ptr<vcp_engine, decltype(&vcp_engine_free)>;

struct Options {
  std::string scene;
  int generate = -1;
  std::string bbox = "0,0,100,100";
  std::uint64_t seed = 1;
  std::string beta = "0";
  std::string delta = "1/4";
  long budget_override = -1;
  double budget_constant = 2.0;
  int queries = 10;
  std::string point;
  bool oracle = false;
  std::string out;
  std::string betas = "0,0.33,0.66";
  int trials = 1;
  int scenes = 1;
  int n = 25;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<std::string> bbox_parts(const Options& o) {
  auto parts = split(o.bbox, ',');
  if (parts.size() != 4) throw Failure{kBadInput, "--bbox expects xmin,ymin,xmax,ymax"};
  return parts;
}

ScenePtr generated(const Options& o, int n, std::uint64_t seed) {
  auto b = bbox_parts(o);
  vcp_scene* s = nullptr;
  check(vcp_scene_generate(n, b[0].c_str(), b[1].c_str(), b[2].c_str(), b[3].c_str(), seed, &s), "generate");
  return ScenePtr(s, vcp_scene_free);
}

ScenePtr input_scene(const Options& o) {
  if (!o.scene.empty()) {
    vcp_scene* s = nullptr;
    check(vcp_scene_load(o.scene.c_str(), &s), "load " + o.scene);
    return ScenePtr(s, vcp_scene_free);
  }
  if (o.generate >= 0) return generated(o, o.generate, o.seed);
  throw Failure{kBadInput, "give --scene FILE or --generate N"};
}

EnginePtr build_engine(const vcp_scene* s, const Options& o, const std::string& beta, std::uint64_t seed) {
  vcp_params p;
  vcp_params_default(&p);
  p.beta = beta.c_str();
  p.delta = o.delta.c_str();
  p.seed = seed;
  p.budget_constant = o.budget_constant;
  p.budget_override = o.budget_override;
  vcp_engine* e = nullptr;
  check(vcp_engine_build(s, &p, &e), "build engine");
  return EnginePtr(e, vcp_engine_free);
}

struct QueryPoint {
  std::string x, y;
};

QueryPoint random_point(const vcp_scene* s, std::uint64_t& state) {
  char *x = nullptr, *y = nullptr;
  check(vcp_random_point(s, &state, &x, &y), "random point");
  return {take(x), take(y)};
}

QueryPoint admissible_near(const vcp_scene* s, const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw Failure{kBadInput, "--point expects x,y"};
  char *x = nullptr, *y = nullptr;
  check(vcp_nearby_admissible(s, parts[0].c_str(), parts[1].c_str(), &x, &y), "point " + text);
  QueryPoint q{take(x), take(y)};
  if (q.x != parts[0] || q.y != parts[1]) std::cerr << "note: moved query point to " << q.x << "," << q.y << "\n";
  return q;
}

double approx_value(const std::string& r) {
  auto parts = split(r, '/');
  return parts.size() == 2 ? std::stod(parts[0]) / std::stod(parts[1]) : std::stod(r);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Options& o) {
  int n = o.generate >= 0 ? o.generate : o.n;
  ScenePtr s = generated(o, n, o.seed);
  if (o.out.empty()) {
    char* text = nullptr;
    check(vcp_scene_text(s.get(), &text), "format scene");
    std::cout << take(text);
  } else {
    check(vcp_scene_save(s.get(), o.out.c_str()), "save " + o.out);
  }
  return kOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& o) {
  long total_queries = 0, total_failures = 0;
  for (int i = 0; i < o.scenes; ++i) {
    std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    ScenePtr s = o.scene.empty() ? generated(o, o.generate >= 0 ? o.generate : o.n, seed) : input_scene(o);
    int violations = 0;
    char* report = nullptr;
    check(vcp_scene_validate(s.get(), &violations, &report), "validate");
    std::string rep = take(report);
    if (violations > 0) {
      std::cout << "scene " << i << " seed " << seed << " invalid: " << rep;
      ++total_failures;
      continue;
    }
    EnginePtr e = build_engine(s.get(), o, o.beta, seed);
    vcp_engine_stats st;
    check(vcp_engine_stats_get(e.get(), &st), "stats");
    const bool full_sampling = st.sample_prob == 1.0;
    std::uint64_t state = seed * 7919 + 17;
    int failures = 0;
    for (int q = 0; q < o.queries; ++q) {
      QueryPoint p = random_point(s.get(), state);
      vcp_check c;
      char* msg = nullptr;
      check(vcp_check_query(s.get(), e.get(), p.x.c_str(), p.y.c_str(), &c, &msg), "check");
      std::string messages = take(msg);
      vcp_query_result r;
      check(vcp_engine_query(e.get(), p.x.c_str(), p.y.c_str(), &r), "query");
      std::string problem;
      if (r.mode == VCP_MODE_EXACT && std::string(r.value) != std::to_string(c.oracle_m_p))
        problem += "exact answer " + std::string(r.value) + " differs from oracle\n";
      if (r.mode != VCP_MODE_EXACT && full_sampling) {
        if (std::string(r.ve_prime) != std::to_string(c.ve_p)) problem += "ve estimate not exact at full sampling\n";
        if (std::string(r.c_prime) != std::to_string(c.components))
          problem += "component estimate not exact at full sampling\n";
      }
      vcp_query_result_clear(&r);
      messages += problem;
      if (!messages.empty()) {
        ++failures;
        std::cout << "  scene " << i << " point (" << p.x << ", " << p.y << "):\n";
        for (const auto& line : split(messages, '\n')) std::cout << "    " << line << "\n";
      }
    }
    total_queries += o.queries;
    total_failures += failures;
    std::cout << "scene " << i << " seed " << seed << " n " << vcp_scene_size(s.get()) << " m " << st.m
              << " triangles " << st.fans + st.covers << " queries " << o.queries << " failures " << failures
              << "\n";
  }
  std::cout << "total queries " << total_queries << " failures " << total_failures << "\n";
  return total_failures == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------- query

int cmd_query(const Options& o) {
  ScenePtr s = input_scene(o);
  EnginePtr e = build_engine(s.get(), o, o.beta, o.seed);
  std::vector<QueryPoint> points;
  if (!o.point.empty()) {
    points.push_back(admissible_near(s.get(), o.point));
  } else {
    std::uint64_t state = o.seed * 104729 + 3;
    for (int i = 0; i < o.queries; ++i) points.push_back(random_point(s.get(), state));
  }
  int status = kOk;
  for (const auto& p : points) {
    vcp_query_result r;
    check(vcp_engine_query(e.get(), p.x.c_str(), p.y.c_str(), &r), "query");
    std::cout << "point " << p.x << "," << p.y << " mode " << vcp_mode_name(r.mode) << " value " << r.value;
    if (r.mode != VCP_MODE_EXACT)
      std::cout << " approx " << fmt(r.value_approx) << " ve' " << fmt(approx_value(r.ve_prime)) << " C' "
                << fmt(approx_value(r.c_prime));
    std::cout << " budget_spent " << r.budget_spent << " k " << r.k;
    if (o.oracle) {
      int ve = 0, m = 0;
      check(vcp_oracle_counts(s.get(), p.x.c_str(), p.y.c_str(), &ve, &m), "oracle");
      std::cout << " oracle_m_p " << m;
      if (r.mode == VCP_MODE_EXACT) {
        bool match = std::string(r.value) == std::to_string(m);
        std::cout << (match ? " match" : " MISMATCH");
        if (!match) status = kViolation;
      } else if (m > 0) {
        std::cout << " ratio " << fmt(r.value_approx / m);
      }
    }
    std::cout << "\n";
    vcp_query_result_clear(&r);
  }
  return status;
}

// ---------------------------------------------------------------- bench

const char* kBenchHeader =
    "n,m,beta,delta,seed,k,budget,preprocess_s,fans,covers,kept_triangles,faces,trapezoids,dag_nodes,"
    "queries,exact,approx_small_c,approx_large_c,query_us_mean,ratio_max,ratio_mean,within_bound";

int cmd_bench(const Options& o) {
  std::ostringstream csv;
  csv << kBenchHeader << "\n";
  std::string dstar_small, dstar_large;
  {
    char* out = nullptr;
    check(vcp_delta_star(o.delta.c_str(), VCP_BRANCH_SMALL_C, &out), "delta star");
    dstar_small = take(out);
    check(vcp_delta_star(o.delta.c_str(), VCP_BRANCH_LARGE_C, &out), "delta star");
    dstar_large = take(out);
  }
  const double ds_small = approx_value(dstar_small), ds_large = approx_value(dstar_large);
  for (const auto& beta : split(o.betas, ',')) {
    for (int t = 0; t < o.trials; ++t) {
      std::uint64_t seed = o.seed + static_cast<std::uint64_t>(t);
      ScenePtr s = o.scene.empty() ? generated(o, o.generate >= 0 ? o.generate : o.n, seed) : input_scene(o);
      auto t0 = std::chrono::steady_clock::now();
      EnginePtr e = build_engine(s.get(), o, beta, seed);
      double pre = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      vcp_engine_stats st;
      check(vcp_engine_stats_get(e.get(), &st), "stats");
      std::uint64_t state = seed * 104729 + 3;
      int counts[3] = {0, 0, 0};
      double query_time = 0, ratio_max = 0, ratio_sum = 0;
      int ratio_n = 0, approx_n = 0, within = 0;
      for (int q = 0; q < o.queries; ++q) {
        QueryPoint p = random_point(s.get(), state);
        vcp_query_result r;
        auto q0 = std::chrono::steady_clock::now();
        check(vcp_engine_query(e.get(), p.x.c_str(), p.y.c_str(), &r), "query");
        query_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - q0).count();
        ++counts[r.mode];
        vcp_sweep_summary sum;
        check(vcp_sweep(s.get(), p.x.c_str(), p.y.c_str(), &sum), "sweep");
        if (sum.m_p > 0) {
          double ratio = r.value_approx / sum.m_p;
          ratio_max = std::max(ratio_max, ratio);
          ratio_sum += ratio;
          ++ratio_n;
        }
        if (r.mode != VCP_MODE_EXACT) {
          ++approx_n;
          double ds = r.mode == VCP_MODE_APPROX_SMALL_C ? ds_small : ds_large;
          if (sum.m_p <= r.value_approx && r.value_approx <= (1 + ds) * sum.m_p) ++within;
        }
        vcp_query_result_clear(&r);
      }
      csv << vcp_scene_size(s.get()) << "," << st.m << "," << beta << "," << o.delta << "," << seed << ","
          << st.k << "," << st.budget << "," << fmt(pre) << "," << st.fans << "," << st.covers << ","
          << st.kept_triangles << "," << st.faces << "," << st.trapezoids << "," << st.dag_nodes << ","
          << o.queries << "," << counts[0] << "," << counts[1] << "," << counts[2] << ","
          << fmt(o.queries ? 1e6 * query_time / o.queries : 0) << "," << fmt(ratio_max) << ","
          << fmt(ratio_n ? ratio_sum / ratio_n : 0) << ","
          << (approx_n ? fmt(static_cast<double>(within) / approx_n) : std::string("")) << "\n";
    }
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    std::filesystem::create_directories(o.out);
    std::ofstream f(std::filesystem::path(o.out) / "bench.csv");
    if (!f) throw Failure{kBadInput, "cannot write " + o.out};
    f << csv.str();
  }
  return kOk;
}

// ---------------------------------------------------------------- figures

struct Canvas {
  double box[4];
  double scale;
  std::ostringstream body;

  explicit Canvas(const double b[4]) {
    std::copy(b, b + 4, box);
    scale = 600.0 / std::max(box[2] - box[0], box[3] - box[1]);
  }
  double px(double x) const { return 20 + (x - box[0]) * scale; }
  double py(double y) const { return 20 + (box[3] - y) * scale; }

  void line(double x1, double y1, double x2, double y2, const char* colour, double width, const char* extra = "") {
    body << "<line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << py(y2)
         << "\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\" " << extra << "/>\n";
  }
  void dot(double x, double y, const char* colour) {
    body << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
  }
  void label(double x, double y, const std::string& text) {
    body << "<text x=\"" << px(x) + 5 << "\" y=\"" << py(y) - 5 << "\" font-size=\"13\">" << text << "</text>\n";
  }
  std::string svg() const {
    double w = (box[2] - box[0]) * scale + 40, h = (box[3] - box[1]) * scale + 40;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
      << "<rect x=\"20\" y=\"20\" width=\"" << w - 40 << "\" height=\"" << h - 40
      << "\" fill=\"white\" stroke=\"black\"/>\n"
      << body.str() << "</svg>\n";
    return s.str();
  }
};

struct FigureInput {
  std::string name;
  std::string scene_text;
  std::string x, y;
};

const std::vector<FigureInput>& builtin_figures() {
  static const std::vector<FigureInput> figs{
      {"five_edges",
       "vcp-scene v1\nbbox -20 -5 5 15\nseg -10 10 -2 10\nseg -12 8 -9 8.5\nseg -10 6 -7 7\n"
       "seg -5 8 -2 7.5\nseg -6 6 -1 6.5\n",
       "-5", "-2"},
      {"three_components",
       "vcp-scene v1\nbbox 0 0 20 20\nseg 2 18 17 16\nseg 2 15 4 15.5\nseg 7 12 11 13\nseg 10 12.2 13 12\n"
       "seg 10.5 11.2 11.5 11\nseg 16 15 18 14\n",
       "9", "2"}};
  return figs;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Failure{kBadInput, "cannot write " + path.string()};
  f << text;
}

void draw_figures(const vcp_scene* s, const std::string& name, const QueryPoint& p, const std::string& dir) {
  double box[4];
  check(vcp_scene_bbox(s, box), "bbox");
  const int n = vcp_scene_size(s);
  std::vector<std::array<double, 4>> segs(n);
  for (int i = 0; i < n; ++i) check(vcp_scene_segment(s, i, segs[i].data()), "segment");
  const double qx = approx_value(p.x), qy = approx_value(p.y);

  // G(p): segments as vertices drawn at their midpoints, one arc per hidden endpoint.
  Canvas graph(box);
  for (int i = 0; i < n; ++i) {
    graph.line(segs[i][0], segs[i][1], segs[i][2], segs[i][3], "#999", 2);
    graph.label((segs[i][0] + segs[i][2]) / 2, (segs[i][1] + segs[i][3]) / 2, "s" + std::to_string(i + 1));
  }
  vcp_gp_edge* edges = nullptr;
  int ne = 0;
  check(vcp_gp_edges(s, p.x.c_str(), p.y.c_str(), &edges, &ne), "G(p)");
  for (int k = 0; k < ne; ++k) {
    const auto& a = segs[edges[k].from_segment];
    const auto& b = segs[edges[k].to_segment];
    const int end = edges[k].endpoint % 2;
    double ex = end ? a[2] : a[0], ey = end ? a[3] : a[1];
    double mx = (b[0] + b[2]) / 2, my = (b[1] + b[3]) / 2;
    graph.line(ex, ey, mx, my, "#c03", 1.5, "stroke-dasharray=\"5,3\"");
    graph.dot(ex, ey, "#c03");
  }
  vcp_free(edges);
  graph.dot(qx, qy, "#06c");
  graph.label(qx, qy, "p");
  write_file(std::filesystem::path(dir) / (name + "_graph.svg"), graph.svg());

  // Visible subsegments, with sight lines to the endpoints of each piece.
  Canvas vis(box);
  for (int i = 0; i < n; ++i) vis.line(segs[i][0], segs[i][1], segs[i][2], segs[i][3], "#bbb", 2);
  vcp_piece* pieces = nullptr;
  int np = 0;
  check(vcp_visible_pieces(s, p.x.c_str(), p.y.c_str(), &pieces, &np), "pieces");
  for (int k = 0; k < np; ++k) {
    const vcp_piece& pc = pieces[k];
    const bool box_side = pc.owner >= n;
    vis.line(qx, qy, pc.x1, pc.y1, "#9cf", 0.7);
    vis.line(qx, qy, pc.x2, pc.y2, "#9cf", 0.7);
    vis.line(pc.x1, pc.y1, pc.x2, pc.y2, box_side ? "#393" : "#000", 3.5);
  }
  vcp_free(pieces);
  vis.dot(qx, qy, "#06c");
  write_file(std::filesystem::path(dir) / (name + "_visible.svg"), vis.svg());
}

int cmd_figures(const Options& o) {
  const std::string dir = o.out.empty() ? "figures" : o.out;
  std::filesystem::create_directories(dir);
  if (!o.scene.empty()) {
    ScenePtr s = input_scene(o);
    QueryPoint p = admissible_near(s.get(), o.point.empty() ? "0,0" : o.point);
    draw_figures(s.get(), std::filesystem::path(o.scene).stem().string(), p, dir);
    std::cout << "wrote figures for " << o.scene << " to " << dir << "\n";
    return kOk;
  }
  for (const auto& f : builtin_figures()) {
    vcp_scene* raw = nullptr;
    check(vcp_scene_parse(f.scene_text.c_str(), &raw), f.name);
    ScenePtr s(raw, vcp_scene_free);
    draw_figures(s.get(), f.name, QueryPoint{f.x, f.y}, dir);
    std::cout << "wrote " << f.name << "_graph.svg and " << f.name << "_visible.svg to " << dir << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visibility counting among segments: exact sweeps, sampled estimators and validation campaigns."};
  app.set_config("--config", "", "key=value file mirroring the long options");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--scene", o.scene, "scene file (vcp-scene v1)");
  app.add_option("--generate", o.generate, "generate a random scene with this many segments");
  app.add_option("--bbox", o.bbox, "bounding box for generated scenes: xmin,ymin,xmax,ymax");
  app.add_option("--seed", o.seed, "base seed for scenes, sampling and query points");
  app.add_option("--beta", o.beta, "space/query tradeoff in [0, 2/3]");
  app.add_option("--delta", o.delta, "approximation parameter in (0, 1]");
  app.add_option("--budget-override", o.budget_override, "fixed sweep budget (negative: computed)");
  app.add_option("--budget-constant", o.budget_constant, "constant in front of the computed budget");
  app.add_option("--queries", o.queries, "random queries per scene");
  app.add_option("--point", o.point, "single query point x,y");
  app.add_flag("--oracle", o.oracle, "compare answers with brute-force counts");
  app.add_option("--out", o.out, "output file (generate) or directory (bench, figures)");
  app.add_option("--betas", o.betas, "comma-separated beta values for bench");
  app.add_option("--trials", o.trials, "scenes per beta value in bench");
  app.add_option("--scenes", o.scenes, "number of generated scenes for validate");
  app.add_option("--n", o.n, "segments per generated scene");

  auto* gen = app.add_subcommand("generate", "write a random valid scene");
  auto* val = app.add_subcommand("validate", "run every exact invariant on generated scenes");
  auto* qry = app.add_subcommand("query", "answer visibility counting queries");
  auto* bch = app.add_subcommand("bench", "measure structure sizes and query behaviour as CSV");
  auto* fig = app.add_subcommand("figures", "draw G(p) and visible subsegments as SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*val) return cmd_validate(o);
    if (*qry) return cmd_query(o);
    if (*bch) return cmd_bench(o);
    if (*fig) return cmd_figures(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
