#ifndef STRIPWAVE_H
#define STRIPWAVE_H

/* Public C interface of the stripwave shared library.
 *
 * The library computes periodic free surfaces of Bernoulli free-boundary
 * problems in strip-like domains (steady water waves of finite depth being
 * the built-in speed law) and certifies structural properties of a surface:
 * Bernoulli residual, graph property, differential-inequality margin,
 * interior barrier sign, stagnation set, turning angle, self-intersection.
 *
 * All functions return sw_status unless stated otherwise; on failure
 * sw_last_error() describes what happened.  Handles are opaque and must be
 * released with the matching *_free function.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
    SW_OK = 0,
    SW_ERR = 1,            /* unspecified failure */
    SW_ERR_DOMAIN = 2,     /* argument outside the mathematical domain */
    SW_ERR_RANGE = 3,      /* trace left the admissible range */
    SW_ERR_RESOLUTION = 4, /* sampling too coarse for the requested accuracy */
    SW_ERR_NO_STREAM = 5,  /* no uniform stream on the requested branch */
    SW_ERR_NO_CONVERGE = 6,
    SW_ERR_PARSE = 7,
    SW_ERR_IO = 8,
    SW_ERR_INVALID = 9
} sw_status;

typedef enum sw_branch { SW_BRANCH_LOWER = 0, SW_BRANCH_UPPER = 1 } sw_branch;
typedef enum sw_parity { SW_PARITY_EVEN = 0, SW_PARITY_ODD = 1 } sw_parity;

/* Thread-local message for the most recent failure in this thread. */
const char* sw_last_error(void);

/* ---- speed-law profiles ------------------------------------------------ */

typedef struct sw_profile sw_profile;

sw_profile* sw_profile_water_wave(double g, double lambda);
sw_profile* sw_profile_tabulated(const double* y, const double* h, size_t n);
/* two-column text, header "Y,h" */
sw_profile* sw_profile_from_file(const char* path);
/* "water-wave:g=<v>,lambda=<v>" or "tabulated:<path>" */
sw_profile* sw_profile_parse(const char* spec);
void sw_profile_free(sw_profile* profile);

sw_status sw_profile_eval(const sw_profile* profile, double Y, double* h,
                          double* h_prime, double* log_h);
sw_status sw_profile_interval(const sw_profile* profile, double* y_lo, double* y_hi);

/* Hypothesis audit; json (when non-NULL) receives a malloc'd report,
 * release with sw_string_free.  overall_pass is 1/0. */
sw_status sw_profile_check(const sw_profile* profile, size_t sample_count,
                           int* overall_pass, char** json);

/* ---- uniform streams and linearization ---------------------------------- */

sw_status sw_flat_state(const sw_profile* profile, double C, sw_branch branch,
                        double* a, int* critical);

/* margins[k-1] = k~ + h'(aC) tanh(k~ C)/h(aC)^2 for k = 1..k_max */
sw_status sw_bifurcation_margins(const sw_profile* profile, double C, double P,
                                 double a, int k_max, double* margins);

/* ---- harmonic analysis on the strip -------------------------------------- */

/* Poisson extension of a P-periodic boundary trace given as n uniform
 * samples; parity selects P_e (data on both lines) or P_o (odd reflection). */
sw_status sw_symmetric_extend(const double* samples, size_t n, double P, double C,
                              sw_parity parity, const double* x, const double* y,
                              size_t npts, double* out);

/* theta[0..n) = conjugate of the even extension of rho, trace on y = C. */
sw_status sw_conjugate_top(const double* rho, size_t n, double P, double C,
                           double* theta);

sw_status sw_disc_to_strip(double C, double xi_re, double xi_im, double* z_re,
                           double* z_im);
sw_status sw_strip_to_disc(double C, double z_re, double z_im, double* xi_re,
                           double* xi_im);

/* ---- solving ------------------------------------------------------------- */

typedef struct sw_solution sw_solution;

sw_status sw_solve(const sw_profile* profile, double C, double P, size_t N,
                   double amplitude, int steps, sw_branch branch,
                   sw_solution** out);
void sw_solution_free(sw_solution* solution);

size_t sw_solution_size(const sw_solution* solution);
double sw_solution_residual(const sw_solution* solution);
double sw_solution_amplitude(const sw_solution* solution);
double sw_solution_lambda(const sw_solution* solution); /* NaN when absent */
double sw_solution_mean_slope(const sw_solution* solution);
int sw_solution_newton_iterations(const sw_solution* solution);

typedef enum sw_field {
    SW_FIELD_T = 0,
    SW_FIELD_U = 1,
    SW_FIELD_V = 2,
    SW_FIELD_THETA = 3,
    SW_FIELD_ABS_WPRIME = 4
} sw_field;

/* buf must hold sw_solution_size() doubles */
sw_status sw_solution_get(const sw_solution* solution, sw_field field, double* buf);

sw_status sw_solution_write(const sw_solution* solution, const char* csv_path,
                            const char* json_path);

/* ---- verification ---------------------------------------------------------- */

typedef struct sw_report sw_report;

sw_status sw_verify_solution(const sw_solution* solution, size_t grid_nx,
                             size_t grid_ny, double stagnation_tol,
                             sw_report** out);
sw_status sw_verify_curve_file(const char* csv_path, const sw_profile* profile,
                               double half_width, sw_report** out);
void sw_report_free(sw_report* report);

/* 1 when every computed certificate clause passes */
int sw_report_certificate(const sw_report* report);
/* named scalar; present receives 0 and *value NaN when not computed.
 * keys: bernoulli_sup, min_cos_theta, min_u_prime, czam_margin,
 * q_max_interior, q_boundary_dev, q_cross_validation, turning_number */
sw_status sw_report_value(const sw_report* report, const char* key, double* value,
                          int* present);
int sw_report_self_intersects(const sw_report* report);
size_t sw_report_stagnation_count(const sw_report* report);
sw_status sw_report_write_json(const sw_report* report, const char* path);

/* ---- curve geometry --------------------------------------------------------- */

/* Total tangent turning of a closed polyline (first point repeated last). */
sw_status sw_turning_angle(const double* u, const double* v, size_t n,
                           double* total);

/* Segment-pair sweep; for non-closed input shift is the horizontal advance
 * per period.  On return *seg_a == (size_t)-1 means no intersection. */
sw_status sw_self_intersection(const double* u, const double* v, size_t n,
                               double shift, size_t* seg_a, size_t* seg_b);

/* ---- orchestration (process-exit semantics: 0, 2, 3, 4) --------------------- */

int sw_run_solve(const char* config_path, const char* out_dir);
int sw_run_kernel_eval(const char* config_path, const char* out_dir);
int sw_run_verify(const char* curve_csv, const char* profile_spec,
                  double half_width, const char* out_dir);
int sw_run_profile_check(const char* profile_spec, const char* out_path,
                         char** json);

void sw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* STRIPWAVE_H */
