/* C interface to the twoattr library. Strings returned through char** out
 * parameters are owned by the caller and released with ta_string_free. */
#ifndef TWOATTR_TWOATTR_H
#define TWOATTR_TWOATTR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TA_API __declspec(dllexport)
#else
#define TA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
typedef enum ta_status {
    TA_OK = 0,
    TA_ERR_VALIDATION = 2,
    TA_ERR_BUDGET = 3,
    TA_ERR_INTERNAL = 4
} ta_status;

typedef struct ta_poly ta_poly;
typedef struct ta_system ta_system;

typedef enum ta_render_mode { TA_RENDER_ATTRACTOR = 0, TA_RENDER_SPLIT = 1, TA_RENDER_HAAR = 2 } ta_render_mode;

typedef struct ta_render_options {
    int depth;
    size_t width;
    size_t height; /* 0: follow the attractor's aspect ratio */
    ta_render_mode mode;
    unsigned workers;
    int auto_depth; /* nonzero: depth = ceil(log2(1/eps)/alpha), clamped to the budget */
    double eps;
    int axis_x, axis_y; /* coordinates shown; the rest are dropped */
    int has_viewport;
    double xmin, xmax, ymin, ymax;
    size_t budget; /* maximal number of points */
} ta_render_options;

/* Message of the last failure on this thread, "" if none. */
TA_API const char* ta_last_error(void);
TA_API const char* ta_version(void);
TA_API void ta_string_free(char* s);

/* "2,2,2,1" lists coefficients from the free term up: z^3+2z^2+2z+2. */
TA_API ta_status ta_poly_parse(const char* text, ta_poly** out);
TA_API void ta_poly_free(ta_poly* p);
TA_API ta_status ta_poly_str(const ta_poly* p, char** out);
TA_API ta_status ta_poly_is_expanding(const ta_poly* p, int* out);

/* companion(p) with digits {0, e1} */
TA_API ta_status ta_system_from_poly(const ta_poly* p, ta_system** out);
/* matrix "0,2;1,0", digits "0,0;1,0" (one digit per row) */
TA_API ta_status ta_system_parse(const char* matrix, const char* digits, ta_system** out);
TA_API void ta_system_free(ta_system* s);

TA_API ta_status ta_classify(const ta_poly* p, char** json);
TA_API ta_status ta_tile_check(const ta_system* s, char** json);
TA_API ta_status ta_holder(const ta_system* s, char** json);
TA_API ta_status ta_holder_all_cubics(char** json);
TA_API ta_status ta_hull(const ta_poly* p, int depth, char** json);
TA_API ta_status ta_enumerate(int degree, int deep, int with_metadata, unsigned workers, char** json);
/* tag "1a".."7"; sign is used by series 6 only */
TA_API ta_status ta_series(const char* tag, const int* params, size_t n_params, int sign, int override_validity,
                           char** json);
TA_API ta_status ta_partitions(int64_t d, char** json);
/* one segment per line: "vx,vy[,vz] @ multiplicity" */
TA_API ta_status ta_recover(const char* segments, size_t dim, char** json);
/* depth-k points as "num/den" lines, sorted */
TA_API ta_status ta_point_cloud(const ta_system* s, int depth, char** text);

TA_API void ta_render_options_init(ta_render_options* o);
/* Writes a binary PPM to out_path; the JSON summary may carry a "warning". */
TA_API ta_status ta_render(const ta_system* s, const ta_render_options* o, const char* out_path, char** json);
TA_API ta_status ta_auto_depth(const ta_system* s, double eps, char** json);

#ifdef __cplusplus
}
#endif

#endif
