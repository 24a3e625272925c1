#ifndef VCP_VCP_H
#define VCP_VCP_H

/* C interface to the visibility counting library.
 *
 * Objects are opaque handles. Every fallible call returns a vcp_status and
 * leaves a message for vcp_last_error() on the calling thread. Coordinates
 * and other exact quantities cross the boundary as decimal or p/q strings.
 * Memory handed out by the library is released with vcp_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(VCP_BUILDING_LIBRARY)
#define VCP_API __attribute__((visibility("default")))
#else
#define VCP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  VCP_OK = 0,
  VCP_PARSE_ERROR = 1,
  VCP_INVALID_SCENE = 2,
  VCP_INADMISSIBLE_QUERY = 3,
  VCP_DEGENERATE = 4,
  VCP_ON_EDGE = 5,
  VCP_DELTA_TOO_LARGE = 6,
  VCP_GENERATION_STALLED = 7,
  VCP_UNKNOWN_ID = 8,
  VCP_BAD_ARGUMENT = 9,
  VCP_IO_ERROR = 10,
  VCP_INTERNAL = 11
} vcp_status;

typedef enum { VCP_MODE_EXACT = 0, VCP_MODE_APPROX_SMALL_C = 1, VCP_MODE_APPROX_LARGE_C = 2 } vcp_mode;

typedef enum { VCP_BRANCH_SMALL_C = 0, VCP_BRANCH_LARGE_C = 1 } vcp_branch;

typedef struct vcp_scene vcp_scene;
typedef struct vcp_engine vcp_engine;

VCP_API const char* vcp_last_error(void);
VCP_API const char* vcp_status_name(vcp_status status);
VCP_API const char* vcp_mode_name(vcp_mode mode);
VCP_API void vcp_free(void* ptr);

/* ---- scenes ---- */

VCP_API vcp_status vcp_scene_parse(const char* text, vcp_scene** out);
VCP_API vcp_status vcp_scene_load(const char* path, vcp_scene** out);
VCP_API vcp_status vcp_scene_generate(int n, const char* xmin, const char* ymin, const char* xmax, const char* ymax,
                                      uint64_t seed, vcp_scene** out);
VCP_API vcp_status vcp_scene_save(const vcp_scene* scene, const char* path);
VCP_API vcp_status vcp_scene_text(const vcp_scene* scene, char** out);
VCP_API void vcp_scene_free(vcp_scene* scene);

VCP_API int vcp_scene_size(const vcp_scene* scene);
/* Bounding box and segment i as doubles, for drawing. */
VCP_API vcp_status vcp_scene_bbox(const vcp_scene* scene, double box[4]);
VCP_API vcp_status vcp_scene_segment(const vcp_scene* scene, int i, double coords[4]);

/* *violations receives the violation count; *report, if requested, one line per violation. */
VCP_API vcp_status vcp_scene_validate(const vcp_scene* scene, int* violations, char** report);

VCP_API vcp_status vcp_admissible(const vcp_scene* scene, const char* x, const char* y, int* out);
/* p itself when admissible, else the first admissible point on a short
 * fixed diagonal walk away from it. */
VCP_API vcp_status vcp_nearby_admissible(const vcp_scene* scene, const char* x, const char* y, char** out_x,
                                         char** out_y);
/* Draws an admissible point; *state advances. */
VCP_API vcp_status vcp_random_point(const vcp_scene* scene, uint64_t* state, char** x, char** y);

/* ---- exact engine ---- */

typedef struct {
  int ve_p;
  int m_p;
  int box_parts;
  int polygon_vertex_count;
} vcp_sweep_summary;

VCP_API vcp_status vcp_sweep(const vcp_scene* scene, const char* x, const char* y, vcp_sweep_summary* out);
/* counts must hold vcp_scene_size(scene) entries. */
VCP_API vcp_status vcp_subsegment_counts(const vcp_scene* scene, const char* x, const char* y, int* counts);
VCP_API vcp_status vcp_oracle_counts(const vcp_scene* scene, const char* x, const char* y, int* ve_p, int* m_p);

typedef struct {
  int owner; /* segment id, or n..n+3 for box sides */
  double x1, y1, x2, y2;
} vcp_piece;

VCP_API vcp_status vcp_visible_pieces(const vcp_scene* scene, const char* x, const char* y, vcp_piece** out,
                                      int* count);

/* ---- G(p) ---- */

typedef struct {
  int vertices;
  int edges;
  int components;
  int components_formula;
  int faces;
  int bounded;
  int identity_m_p;
} vcp_gp_summary;

typedef struct {
  int from_segment;
  int to_segment;
  int endpoint;
} vcp_gp_edge;

VCP_API vcp_status vcp_gp_graph(const vcp_scene* scene, const char* x, const char* y, vcp_gp_summary* out,
                                char** adjacency);
VCP_API vcp_status vcp_gp_edges(const vcp_scene* scene, const char* x, const char* y, vcp_gp_edge** out,
                                int* count);

/* ---- estimators ---- */

typedef struct {
  const char* beta;  /* rational text, default "0" */
  const char* delta; /* rational text, default "1/4" */
  uint64_t seed;
  double budget_constant;
  long budget_override; /* negative: use the computed budget */
} vcp_params;

VCP_API void vcp_params_default(vcp_params* params);

VCP_API vcp_status vcp_engine_build(const vcp_scene* scene, const vcp_params* params, vcp_engine** out);
VCP_API void vcp_engine_free(vcp_engine* engine);

typedef struct {
  long m;
  int k;
  long budget;
  double sample_prob;
  double c_threshold;
  long fans;
  long covers;
  long kept_triangles; /* summed over subsets */
  long faces;          /* summed over all locators */
  long trapezoids;
  long dag_nodes;
} vcp_engine_stats;

VCP_API vcp_status vcp_engine_stats_get(const vcp_engine* engine, vcp_engine_stats* out);

typedef struct {
  vcp_mode mode;
  char* value;    /* exact rational text */
  char* ve_prime; /* empty in exact mode */
  char* c_prime;
  double value_approx;
  long budget_spent;
  int k;
} vcp_query_result;

VCP_API vcp_status vcp_engine_query(const vcp_engine* engine, const char* x, const char* y, vcp_query_result* out);
VCP_API void vcp_query_result_clear(vcp_query_result* result);

VCP_API vcp_status vcp_engine_triangles_text(const vcp_engine* engine, char** out);

VCP_API vcp_status vcp_delta_star(const char* delta, vcp_branch branch, char** out);

/* ---- invariant checks ---- */

typedef struct {
  int ve_p;
  int m_p;
  int oracle_ve_p;
  int oracle_m_p;
  int identity_m_p;
  int components;
  int components_formula;
  int faces;
  int bounded;
  int failures;
} vcp_check;

/* Runs every exact invariant at (x, y). With an engine, its triangle censuses
 * are checked too. *messages, if requested, lists one failure per line. */
VCP_API vcp_status vcp_check_query(const vcp_scene* scene, const vcp_engine* engine, const char* x, const char* y,
                                   vcp_check* out, char** messages);

#ifdef __cplusplus
}
#endif

#endif
