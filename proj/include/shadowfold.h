/* shadowfold: geometry engine for Euclidean cones over metric graphs.
 *
 * C API over the C++ core. All functions return sf_status; outputs are
 * written through pointers. Strings returned through char** are owned by
 * the caller and must be released with sf_string_free. Points, vectors and
 * tangents travel in the same text syntax the CLI uses:
 *
 *   graph point   v:<vertex>  or  <edge>:<offset>      (offset may end in "pi")
 *   cone vector   <graphpoint>@<radius>
 *   tangent       <conevector>|<page>|<phi>|<magnitude>   page: e0+ / e0- / radial
 */
#ifndef SHADOWFOLD_H
#define SHADOWFOLD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sf_space sf_space;

typedef enum sf_status {
    SF_OK = 0,
    SF_ERROR_PARSE = 1,
    SF_ERROR_INVALID_ARGUMENT = 2,
    SF_ERROR_DOMAIN = 3,      /* operation undefined on this input */
    SF_ERROR_RANGE = 4,       /* outside a validity region */
    SF_ERROR_HYPOTHESIS = 5,  /* check invoked outside its regime */
    SF_ERROR_IO = 6,
    SF_ERROR_INTERNAL = 7
} sf_status;

const char* sf_status_name(sf_status status);
/* Detail message for the most recent failure on this thread. */
const char* sf_last_error(void);
const char* sf_version(void);

void sf_string_free(char* s);

/* ---- space lifecycle ---------------------------------------------------- */
sf_status sf_space_load_file(const char* path, sf_space** out);
sf_status sf_space_load_text(const char* text, sf_space** out);
sf_status sf_space_open_bundled(const char* name, sf_space** out);
void sf_space_free(sf_space* space);
/* Comma-separated bundled space names; static storage. */
const char* sf_bundled_names(void);
sf_status sf_space_serialize(const sf_space* space, char** out);
/* key=value summary: name, vertices, edges, total_length, girth, cat1. */
sf_status sf_space_info(const sf_space* space, char** out);
sf_status sf_space_validate(const sf_space* space, double* girth, int* cat1_pass);

/* ---- direction graph ----------------------------------------------------- */
sf_status sf_graph_distance(const sf_space* space, const char* a, const char* b, double* out);
sf_status sf_shortest_path(const sf_space* space, const char* a, const char* b, double* length,
                           int* tie, char** description);
sf_status sf_local_degree(const sf_space* space, const char* point, int* out);

/* ---- cone ----------------------------------------------------------------- */
sf_status sf_angle(const sf_space* space, const char* v, const char* w, double* out);
sf_status sf_inner_product(const sf_space* space, const char* v, const char* w, double* out);
sf_status sf_cone_distance(const sf_space* space, const char* v, const char* w, double* out);
/* kind: 0 straight, 1 through-apex. point receives the cone vector at t. */
sf_status sf_geodesic_eval(const sf_space* space, const char* v, const char* w, double t,
                           int* kind, char** point);

/* ---- tangent cones -------------------------------------------------------- */
sf_status sf_log_at(const sf_space* space, const char* z, const char* w, char** tangent);
sf_status sf_exp_at(const sf_space* space, const char* tangent, char** point);
sf_status sf_radial_transport(const sf_space* space, const char* tangent, const char* target,
                              char** out);
sf_status sf_radial_transport_from_apex(const sf_space* space, const char* z, const char* v,
                                        char** out);
sf_status sf_parallel_ray_eval(const sf_space* space, const char* z, const char* v, double t,
                               char** point);
/* reference may be NULL (ray through v itself) or a cone vector: the second
 * parallel ray's basepoint. Returns CSV plus the extrema. */
sf_status sf_parallel_profile(const sf_space* space, const char* z, const char* v,
                              const char* reference, double t_max, int samples, char** csv,
                              double* f_max, double* f_min, int* constant);

/* ---- shadows and the limit log ------------------------------------------- */
sf_status sf_shadow_csv(const sf_space* space, const char* z, char** csv);
sf_status sf_in_shadow(const sf_space* space, const char* v, const char* z, int* out);
/* image written as <page|spine>|<phi>|<norm> */
sf_status sf_limit_log(const sf_space* space, const char* z, const char* v, char** image);
sf_status sf_classify(const sf_space* space, const char* v, const char* w, const char* z,
                      char** classification);
/* points: ';'-separated cone vectors. */
sf_status sf_hull_csv(const sf_space* space, const char* points, double delta, char** csv);

/* ---- Frechet means --------------------------------------------------------
 * The configuration is the space file's `m` lines. oracle_delta <= 0 skips
 * the grid oracle. Report is key=value lines. */
sf_status sf_frechet_mean(const sf_space* space, long iterations, unsigned long long seed,
                          double oracle_delta, char** report);
sf_status sf_shadow_drag(const sf_space* space, const char* added, double weight, double delta,
                         char** report);

/* ---- verification suites --------------------------------------------------
 * suite: see sf_suite_names(). trials < 0 and tol < 0 pick suite defaults;
 * replay_trial >= 0 reruns a single trial verbosely (bit-identical). */
sf_status sf_check(const sf_space* space, const char* suite, long trials,
                   unsigned long long seed, double tol, long replay_trial, char** report,
                   int* pass);
const char* sf_suite_names(void);

/* ---- exports ---------------------------------------------------------------
 * z/points may be NULL. what: shadow | limitlog | profile | hull. args as for
 * the matching operation, ';'-separated. */
sf_status sf_export_svg(const sf_space* space, const char* z, const char* points, char** svg);
sf_status sf_export_csv(const sf_space* space, const char* what, const char* z,
                        const char* points, double delta, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* SHADOWFOLD_H */
