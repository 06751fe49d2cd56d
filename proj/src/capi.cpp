// Glue between the public C interface and the C++ core.

#include "stripwave.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "stripwave/cli_io.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/periodic.hpp"
#include "stripwave/profile.hpp"
#include "stripwave/solver.hpp"
#include "stripwave/strip_harmonic.hpp"
#include "stripwave/verifier.hpp"

struct sw_profile {
    sw::Profile impl;
};

struct sw_solution {
    sw::Solution impl;
};

struct sw_report {
    sw::DiagnosticsReport impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

sw_status status_of(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const sw::DomainError*>(&e)) return SW_ERR_DOMAIN;
    if (dynamic_cast<const sw::RangeError*>(&e)) return SW_ERR_RANGE;
    if (dynamic_cast<const sw::ResolutionError*>(&e)) return SW_ERR_RESOLUTION;
    if (dynamic_cast<const sw::NoStreamError*>(&e)) return SW_ERR_NO_STREAM;
    if (dynamic_cast<const sw::ConvergenceError*>(&e)) return SW_ERR_NO_CONVERGE;
    if (dynamic_cast<const sw::SingularValueError*>(&e)) return SW_ERR_DOMAIN;
    if (dynamic_cast<const sw::ParseError*>(&e)) return SW_ERR_PARSE;
    if (dynamic_cast<const sw::IoError*>(&e)) return SW_ERR_IO;
    if (dynamic_cast<const sw::InvalidError*>(&e)) return SW_ERR_INVALID;
    return SW_ERR;
}

template <typename F>
sw_status guarded(F&& f) {
    try {
        f();
        return SW_OK;
    } catch (const std::exception& e) {
        return status_of(e);
    } catch (...) {
        set_error("unknown failure");
        return SW_ERR;
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

const char* sw_last_error(void) { return g_last_error.c_str(); }

void sw_string_free(char* s) { std::free(s); }

/* ---- profiles ---- */

sw_profile* sw_profile_water_wave(double g, double lambda) {
    try {
        return new sw_profile{sw::Profile::water_wave(g, lambda)};
    } catch (const std::exception& e) {
        status_of(e);
        return nullptr;
    }
}

sw_profile* sw_profile_tabulated(const double* y, const double* h, size_t n) {
    try {
        std::vector<double> ys(y, y + n), hs(h, h + n);
        return new sw_profile{sw::Profile::tabulated(std::move(ys), std::move(hs))};
    } catch (const std::exception& e) {
        status_of(e);
        return nullptr;
    }
}

sw_profile* sw_profile_from_file(const char* path) {
    try {
        return new sw_profile{sw::Profile::from_table_file(path ? path : "")};
    } catch (const std::exception& e) {
        status_of(e);
        return nullptr;
    }
}

sw_profile* sw_profile_parse(const char* spec) {
    try {
        return new sw_profile{sw::ProfileSpec::parse(spec ? spec : "").make()};
    } catch (const std::exception& e) {
        status_of(e);
        return nullptr;
    }
}

void sw_profile_free(sw_profile* profile) { delete profile; }

sw_status sw_profile_eval(const sw_profile* profile, double Y, double* h,
                          double* h_prime, double* log_h) {
    if (!profile) {
        set_error("null profile");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        const sw::Profile::Values v = profile->impl.eval(Y);
        if (h) *h = v.h;
        if (h_prime) *h_prime = v.h_prime;
        if (log_h) *log_h = v.log_h;
    });
}

sw_status sw_profile_interval(const sw_profile* profile, double* y_lo, double* y_hi) {
    if (!profile) {
        set_error("null profile");
        return SW_ERR_INVALID;
    }
    if (y_lo) *y_lo = profile->impl.y_lo();
    if (y_hi) *y_hi = profile->impl.y_hi();
    return SW_OK;
}

sw_status sw_profile_check(const sw_profile* profile, size_t sample_count,
                           int* overall_pass, char** json) {
    if (!profile) {
        set_error("null profile");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        const sw::HypothesisReport rep =
            sw::check_hypotheses(profile->impl, sample_count);
        if (overall_pass) *overall_pass = rep.overall ? 1 : 0;
        if (json) *json = dup_string(sw::hypothesis_report_json(rep));
    });
}

/* ---- streams ---- */

sw_status sw_flat_state(const sw_profile* profile, double C, sw_branch branch,
                        double* a, int* critical) {
    if (!profile) {
        set_error("null profile");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        const sw::StripDomain dom(C, 1.0);
        const sw::FlatState fs = sw::flat_state(
            profile->impl, dom,
            branch == SW_BRANCH_LOWER ? sw::Branch::lower : sw::Branch::upper);
        if (a) *a = fs.a;
        if (critical) *critical = fs.critical ? 1 : 0;
    });
}

sw_status sw_bifurcation_margins(const sw_profile* profile, double C, double P,
                                 double a, int k_max, double* margins) {
    if (!profile || !margins) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        const sw::StripDomain dom(C, P);
        const auto m = sw::bifurcation_wavenumbers(profile->impl, dom, a, k_max);
        for (const auto& mm : m) margins[mm.k - 1] = mm.margin;
    });
}

/* ---- harmonic analysis ---- */

sw_status sw_symmetric_extend(const double* samples, size_t n, double P, double C,
                              sw_parity parity, const double* x, const double* y,
                              size_t npts, double* out) {
    if (!samples || !x || !y || !out) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        sw::PeriodicFunction f(std::vector<double>(samples, samples + n), P);
        const sw::StripDomain dom(C, P);
        std::vector<sw::Point> pts(npts);
        for (size_t i = 0; i < npts; ++i) pts[i] = {x[i], y[i]};
        const auto vals = sw::symmetric_extend(
            f, parity == SW_PARITY_EVEN ? sw::Parity::even : sw::Parity::odd, dom, pts);
        for (size_t i = 0; i < npts; ++i) out[i] = vals[i];
    });
}

sw_status sw_conjugate_top(const double* rho, size_t n, double P, double C,
                           double* theta) {
    if (!rho || !theta) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        sw::PeriodicFunction f(std::vector<double>(rho, rho + n), P);
        const sw::StripDomain dom(C, P);
        const sw::PeriodicFunction th = sw::conjugate_top(f, dom);
        for (size_t i = 0; i < n; ++i) theta[i] = th[i];
    });
}

sw_status sw_disc_to_strip(double C, double xi_re, double xi_im, double* z_re,
                           double* z_im) {
    return guarded([&] {
        const sw::StripDomain dom(C, 1.0);
        const std::complex<double> z =
            sw::disc_to_strip(std::complex<double>(xi_re, xi_im), dom);
        if (z_re) *z_re = z.real();
        if (z_im) *z_im = z.imag();
    });
}

sw_status sw_strip_to_disc(double C, double z_re, double z_im, double* xi_re,
                           double* xi_im) {
    return guarded([&] {
        const sw::StripDomain dom(C, 1.0);
        const std::complex<double> xi =
            sw::strip_to_disc(std::complex<double>(z_re, z_im), dom);
        if (xi_re) *xi_re = xi.real();
        if (xi_im) *xi_im = xi.imag();
    });
}

/* ---- solving ---- */

sw_status sw_solve(const sw_profile* profile, double C, double P, size_t N,
                   double amplitude, int steps, sw_branch branch,
                   sw_solution** out) {
    if (!profile || !out) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    *out = nullptr;
    return guarded([&] {
        const sw::StripDomain dom(C, P);
        sw::SolveOptions opt;
        opt.branch = branch == SW_BRANCH_LOWER ? sw::Branch::lower : sw::Branch::upper;
        opt.steps = steps < 1 ? 1 : steps;
        *out = new sw_solution{
            sw::solve_periodic(profile->impl, dom, N, amplitude, opt)};
    });
}

void sw_solution_free(sw_solution* solution) { delete solution; }

size_t sw_solution_size(const sw_solution* s) { return s ? s->impl.v.size() : 0; }
double sw_solution_residual(const sw_solution* s) {
    return s ? s->impl.residual_norm : 0.0;
}
double sw_solution_amplitude(const sw_solution* s) {
    return s ? s->impl.amplitude : 0.0;
}
double sw_solution_lambda(const sw_solution* s) { return s ? s->impl.lambda : 0.0; }
double sw_solution_mean_slope(const sw_solution* s) {
    return s ? s->impl.mean_slope : 0.0;
}
int sw_solution_newton_iterations(const sw_solution* s) {
    return s ? s->impl.newton_iterations : 0;
}

sw_status sw_solution_get(const sw_solution* s, sw_field field, double* buf) {
    if (!s || !buf) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    const sw::Solution& sol = s->impl;
    const size_t n = sol.v.size();
    for (size_t j = 0; j < n; ++j) {
        switch (field) {
            case SW_FIELD_T: buf[j] = sol.v.t(j); break;
            case SW_FIELD_U:
                buf[j] = sol.mean_slope * sol.v.t(j) + sol.u_periodic[j];
                break;
            case SW_FIELD_V: buf[j] = sol.v[j]; break;
            case SW_FIELD_THETA: buf[j] = sol.theta[j]; break;
            case SW_FIELD_ABS_WPRIME: buf[j] = sol.abs_wp[j]; break;
            default: set_error("unknown field"); return SW_ERR_INVALID;
        }
    }
    return SW_OK;
}

sw_status sw_solution_write(const sw_solution* s, const char* csv_path,
                            const char* json_path) {
    if (!s) {
        set_error("null solution");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        if (csv_path) sw::write_solution_csv(csv_path, s->impl);
        if (json_path) sw::write_solution_sidecar(json_path, s->impl);
    });
}

/* ---- verification ---- */

sw_status sw_verify_solution(const sw_solution* solution, size_t grid_nx,
                             size_t grid_ny, double stagnation_tol,
                             sw_report** out) {
    if (!solution || !out) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    *out = nullptr;
    return guarded([&] {
        sw::VerifyOptions opt;
        if (grid_nx) opt.grid.nx = grid_nx;
        if (grid_ny) opt.grid.ny = grid_ny;
        if (stagnation_tol > 0.0) opt.stagnation_tol = stagnation_tol;
        *out = new sw_report{
            sw::verify_solution(solution->impl, solution->impl.profile, opt)};
    });
}

sw_status sw_verify_curve_file(const char* csv_path, const sw_profile* profile,
                               double half_width, sw_report** out) {
    if (!csv_path || !out) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    *out = nullptr;
    return guarded([&] {
        const sw::FreeCurve curve = sw::read_curve_csv(csv_path);
        *out = new sw_report{sw::verify_curve(
            curve, profile ? &profile->impl : nullptr, half_width)};
    });
}

void sw_report_free(sw_report* report) { delete report; }

int sw_report_certificate(const sw_report* report) {
    return report && report->impl.certificate() ? 1 : 0;
}

sw_status sw_report_value(const sw_report* report, const char* key, double* value,
                          int* present) {
    if (!report || !key || !value) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    const sw::DiagnosticsReport& r = report->impl;
    const std::string k = key;
    std::optional<double> v;
    if (k == "bernoulli_sup") v = r.bernoulli_sup;
    else if (k == "min_cos_theta") v = r.min_cos_theta;
    else if (k == "min_u_prime") v = r.min_u_prime;
    else if (k == "czam_margin") v = r.czam_margin;
    else if (k == "q_max_interior") v = r.q_max_interior;
    else if (k == "q_boundary_dev") v = r.q_boundary_dev;
    else if (k == "q_cross_validation") v = r.q_cross_validation;
    else if (k == "turning_number") v = r.turning_number;
    else {
        set_error("unknown report key '" + k + "'");
        return SW_ERR_INVALID;
    }
    if (present) *present = v.has_value() ? 1 : 0;
    *value = v.value_or(std::numeric_limits<double>::quiet_NaN());
    return SW_OK;
}

int sw_report_self_intersects(const sw_report* report) {
    return report && report->impl.self_intersects ? 1 : 0;
}

size_t sw_report_stagnation_count(const sw_report* report) {
    return report ? report->impl.stagnation_set.size() : 0;
}

sw_status sw_report_write_json(const sw_report* report, const char* path) {
    if (!report || !path) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] { sw::write_report_json(path, report->impl); });
}

/* ---- curve geometry ---- */

sw_status sw_turning_angle(const double* u, const double* v, size_t n,
                           double* total) {
    if (!u || !v || !total) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        sw::FreeCurve c;
        c.u.assign(u, u + n);
        c.v.assign(v, v + n);
        c.closed = true;
        *total = sw::turning_angle(c);
    });
}

sw_status sw_self_intersection(const double* u, const double* v, size_t n,
                               double shift, size_t* seg_a, size_t* seg_b) {
    if (!u || !v || !seg_a || !seg_b) {
        set_error("null argument");
        return SW_ERR_INVALID;
    }
    return guarded([&] {
        sw::FreeCurve c;
        c.u.assign(u, u + n);
        c.v.assign(v, v + n);
        c.closed = (n >= 2 && u[0] == u[n - 1] && v[0] == v[n - 1]);
        c.shift = shift;
        const sw::IntersectionResult r = sw::self_intersection(c);
        *seg_a = r.found ? r.seg_a : static_cast<size_t>(-1);
        *seg_b = r.found ? r.seg_b : static_cast<size_t>(-1);
    });
}

/* ---- orchestration ---- */

namespace {

int run_from_config(const char* config_path, const char* out_dir,
                    sw::RunSpec::Command cmd) {
    try {
        std::ifstream in(config_path ? config_path : "");
        if (!in) {
            set_error(std::string("cannot open config '") +
                      (config_path ? config_path : "") + "'");
            return sw::kExitBadInput;
        }
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        const sw::RunSpec spec = sw::RunSpec::parse_config(text, cmd);
        const sw::RunResult r = sw::run(spec, out_dir ? out_dir : "");
        if (r.exit_code != sw::kExitOk) set_error(r.message);
        return r.exit_code;
    } catch (const std::exception& e) {
        status_of(e);
        return sw::kExitBadInput;
    }
}

}  // namespace

int sw_run_solve(const char* config_path, const char* out_dir) {
    return run_from_config(config_path, out_dir, sw::RunSpec::Command::solve);
}

int sw_run_kernel_eval(const char* config_path, const char* out_dir) {
    return run_from_config(config_path, out_dir, sw::RunSpec::Command::kernel_eval);
}

int sw_run_verify(const char* curve_csv, const char* profile_spec,
                  double half_width, const char* out_dir) {
    try {
        const sw::RunResult r =
            sw::run_verify(curve_csv ? curve_csv : "",
                           profile_spec ? profile_spec : "", half_width,
                           out_dir ? out_dir : "");
        if (r.exit_code != sw::kExitOk) set_error(r.message);
        return r.exit_code;
    } catch (const std::exception& e) {
        status_of(e);
        return sw::kExitBadInput;
    }
}

int sw_run_profile_check(const char* profile_spec, const char* out_path,
                         char** json) {
    try {
        std::string json_str;
        const sw::RunResult r = sw::run_profile_check(
            profile_spec ? profile_spec : "", out_path ? out_path : "", &json_str);
        if (json) *json = dup_string(json_str);
        if (r.exit_code != sw::kExitOk) set_error(r.message);
        return r.exit_code;
    } catch (const std::exception& e) {
        status_of(e);
        return sw::kExitBadInput;
    }
}

} /* extern "C" */
