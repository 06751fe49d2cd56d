#include "stripwave/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stripwave/errors.hpp"

namespace sw {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kStagnationClamp = 1e-4;

enum class CurveClass { closed, periodic, open };

CurveClass classify(const FreeCurve& c) {
    if (c.size() < 2) throw InvalidError("curve needs at least 2 points");
    const std::size_t n = c.size();
    if (c.u.front() == c.u.back() && c.v.front() == c.v.back()) return CurveClass::closed;
    if (c.v.front() == c.v.back()) return CurveClass::periodic;
    (void)n;
    return CurveClass::open;
}

void check_distinct(const FreeCurve& c) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c.u[i] == c.u[i + 1] && c.v[i] == c.v[i + 1])
            throw InvalidError("degenerate consecutive duplicate points at index " +
                               std::to_string(i));
}

// Tangent angles by centered differences with periodic wrap; the provided
// theta column wins when present.
std::vector<double> curve_theta(const FreeCurve& c, CurveClass cls) {
    const std::size_t n = c.size();
    if (c.has_theta()) return c.theta;

    std::vector<double> th(n);
    auto neighbor = [&](std::size_t i, long d, double& uu, double& vv) {
        long j = static_cast<long>(i) + d;
        double shift = 0.0;
        const long m = static_cast<long>(n) - 1;  // last point duplicates the first
        if (cls == CurveClass::closed || cls == CurveClass::periodic) {
            if (j < 0) {
                j += m;
                shift = -c.shift;
            } else if (j > m) {
                j -= m;
                shift = c.shift;
            }
        } else {
            j = std::clamp(j, 0L, static_cast<long>(n) - 1);
        }
        uu = c.u[static_cast<std::size_t>(j)] +
             (cls == CurveClass::periodic ? shift : 0.0);
        vv = c.v[static_cast<std::size_t>(j)];
    };

    for (std::size_t i = 0; i < n; ++i) {
        double u0, v0, u1, v1;
        neighbor(i, -1, u0, v0);
        neighbor(i, +1, u1, v1);
        th[i] = std::atan2(v1 - v0, u1 - u0);
    }
    return th;
}

PeriodicFunction rho_trace(const PeriodicFunction& v, const Profile& profile) {
    std::vector<double> r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        r[j] = -std::log(profile.h(v[j]));
    return PeriodicFunction(std::move(r), v.period());
}

double curve_speed(const FreeCurve& c, CurveClass cls, std::size_t i) {
    const std::size_t n = c.size();
    const long m = static_cast<long>(n) - 1;
    auto at = [&](long j, double& uu, double& vv, double& tt) {
        double shift = 0.0, tshift = 0.0;
        if (cls == CurveClass::closed || cls == CurveClass::periodic) {
            if (j < 0) {
                j += m;
                shift = -c.shift;
                tshift = -(c.t.back() - c.t.front());
            } else if (j > m) {
                j -= m;
                shift = c.shift;
                tshift = c.t.back() - c.t.front();
            }
        } else {
            j = std::clamp(j, 0L, static_cast<long>(n) - 1);
        }
        uu = c.u[static_cast<std::size_t>(j)] +
             (cls == CurveClass::periodic ? shift : 0.0);
        vv = c.v[static_cast<std::size_t>(j)];
        tt = c.t[static_cast<std::size_t>(j)] + tshift;
    };
    double u0, v0, t0, u1, v1, t1;
    at(static_cast<long>(i) - 1, u0, v0, t0);
    at(static_cast<long>(i) + 1, u1, v1, t1);
    if (t1 == t0) throw InvalidError("coincident parameter values in curve");
    return std::hypot(u1 - u0, v1 - v0) / (t1 - t0);
}

}  // namespace

bool DiagnosticsReport::certificate() const {
    if (graph_property && !*graph_property) return false;
    if (czam_margin && !(*czam_margin > 0.0)) return false;
    if (q_max_interior && !(*q_max_interior < 0.0)) return false;
    if (stagnation_checked && !stagnation_set.empty()) return false;
    if (self_intersects) return false;
    if (bernoulli_sup && bernoulli_tol > 0.0 && !(*bernoulli_sup <= bernoulli_tol))
        return false;
    if (turning_number) {
        const double two_pi = 2.0 * kPi;
        const double dev = std::min(std::abs(*turning_number - two_pi),
                                    std::abs(*turning_number + two_pi));
        if (!(dev <= 1e-6)) return false;
    }
    return true;
}

double bernoulli_residual(const Solution& sol) {
    PeriodicFunction vp = spectral_derivative(sol.v);
    PeriodicFunction upp = spectral_derivative(sol.u_periodic);
    double sup = 0.0;
    for (std::size_t j = 0; j < sol.v.size(); ++j) {
        const double up = sol.mean_slope + upp[j];
        const double speed = std::hypot(up, vp[j]);
        sup = std::max(sup, std::abs(speed * sol.profile.h(sol.v[j]) - 1.0));
    }
    return sup;
}

double bernoulli_residual(const FreeCurve& curve, const Profile& profile) {
    check_distinct(curve);
    if (curve.t.empty())
        throw InvalidError("Bernoulli residual needs parameter values t");
    const CurveClass cls = classify(curve);
    const std::size_t last = curve.size() - 1;

    double sup = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i == last && cls != CurveClass::open) break;  // wrap duplicate
        const double h = profile.h(curve.v[i]);  // throws DomainError off J
        const double speed = curve_speed(curve, cls, i);
        sup = std::max(sup, std::abs(speed * h - 1.0));
    }
    return sup;
}

GraphCheck graph_check(const Solution& sol) {
    double min_cos = std::numeric_limits<double>::infinity();
    double min_up = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sol.theta.size(); ++j) {
        const double ct = std::cos(sol.theta[j]);
        min_cos = std::min(min_cos, ct);
        min_up = std::min(min_up, ct / sol.profile.h(sol.v[j]));
    }
    return {min_cos, min_up, min_cos > 0.0};
}

GraphCheck graph_check(const FreeCurve& curve, const Profile* profile) {
    check_distinct(curve);
    const CurveClass cls = classify(curve);
    const std::vector<double> th = curve_theta(curve, cls);
    const std::size_t last = curve.size() - 1;

    double min_cos = std::numeric_limits<double>::infinity();
    double min_up = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i == last && cls != CurveClass::open) break;
        const double ct = std::cos(th[i]);
        min_cos = std::min(min_cos, ct);
        if (profile)
            min_up = std::min(min_up, ct / profile->h(curve.v[i]));
        else if (!curve.t.empty())
            min_up = std::min(min_up, curve_speed(curve, cls, i) * ct);
    }
    return {min_cos, min_up, min_cos > 0.0};
}

double czam_check(const Solution& sol, const Profile& profile) {
    PeriodicFunction thp = spectral_derivative(sol.theta);
    const double h_mean = profile.h(sol.v.mean());

    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sol.v.size(); ++j) {
        const double h = profile.h(sol.v[j]);
        if (h < kStagnationClamp * h_mean) continue;  // off the stagnation set only
        const double hp = profile.h_prime(sol.v[j]);
        inf = std::min(inf, thp[j] - hp / (h * h) * std::cos(sol.theta[j]));
    }
    return inf;
}

QFieldResult q_field_check(const Solution& sol, const Profile& profile,
                           const GridSpec& grid) {
    const double C = sol.domain.half_width;
    const double P = sol.domain.period;
    if (!(grid.ymin > 0.0) || !(grid.ymax < C))
        throw DomainError("Q grid must be interior to Pi_{0,C}");

    // path A: interior field of the solution
    HarmonicField f = interior_field(sol, grid);

    // path B: Poisson quadrature of the boundary traces, upsampled so the
    // kernel quadrature resolves the nearest boundary distance
    std::vector<double> lh(sol.v.size());
    for (std::size_t j = 0; j < sol.v.size(); ++j)
        lh[j] = std::log(profile.h(sol.v[j]));
    PeriodicFunction log_h_v(std::move(lh), P);

    const double dist = std::min(grid.ymin, C - grid.ymax);
    std::size_t m = sol.v.size();
    while (P / static_cast<double>(m) > kTwoPi * dist / std::log(1e9) && m < 16384)
        m *= 2;
    PeriodicFunction le_fine = log_h_v.resampled(m);
    PeriodicFunction v_fine = sol.v.resampled(m);

    const std::vector<Interval> stag =
        stagnation_detect(sol, profile, kStagnationClamp);
    auto stagnant_column = [&](double x) {
        for (const Interval& iv : stag)
            if (x >= iv.t_begin && x <= iv.t_end) return true;
        return false;
    };

    double q_max = -std::numeric_limits<double>::infinity();
    double cross = 0.0;
    for (std::size_t j = 0; j < grid.ny; ++j) {
        const double y = f.y(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = f.x(i);
            const std::size_t id = f.index(i, j);
            const double qa = -f.logAbsWp[id] - std::log(profile.h(f.V[id]));

            const double eb = symmetric_extend_at(le_fine, Parity::even,
                                                  sol.domain, x, y);
            const double ob = symmetric_extend_at(v_fine, Parity::odd,
                                                  sol.domain, x, y);
            const double qb = eb - std::log(profile.h(ob));

            cross = std::max(cross, std::abs(qa - qb));
            // exclude one grid cell below stagnation intervals from the max
            if (j + 1 == grid.ny && stagnant_column(x)) continue;
            q_max = std::max(q_max, qa);
        }
    }

    // boundary trace: Richardson extrapolation from two interior offsets
    std::vector<double> lw(sol.abs_wp.size());
    for (std::size_t j = 0; j < lw.size(); ++j) lw[j] = std::log(sol.abs_wp[j]);
    PeriodicFunction rho(std::move(lw), P);

    const double delta = 2e-4 * C;
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = f.x(i);
        if (stagnant_column(x)) continue;
        auto q_at = [&](double y) {
            const double R = conjugate_field_at(rho, sol.domain, x, y).real_part;
            const double V = spectral_extend_at(sol.v, Parity::odd, sol.domain, x, y);
            return -R - std::log(profile.h(V));
        };
        // three-point Richardson limit, error O(delta^3)
        const double q1 = q_at(C - delta);
        const double q2 = q_at(C - 2.0 * delta);
        const double q3 = q_at(C - 3.0 * delta);
        dev = std::max(dev, std::abs(3.0 * q1 - 3.0 * q2 + q3));
    }

    return {q_max, dev, cross};
}

std::vector<Interval> stagnation_detect(const Solution& sol, const Profile& profile,
                                        double tol) {
    if (!profile.has_zero_endpoint()) return {};
    const double d = profile.y_hi();
    const std::size_t n = sol.v.size();

    std::vector<bool> in(n);
    bool any = false, all = true;
    for (std::size_t j = 0; j < n; ++j) {
        in[j] = (d - sol.v[j]) < tol;
        any |= in[j];
        all &= in[j];
    }
    if (!any) return {};
    if (all) return {{0.0, sol.domain.period}};

    // maximal cyclic runs of flagged samples; runs across the seam split
    // into [t_b, P) and [0, t_e]
    std::vector<Interval> out;
    std::size_t start = 0;
    while (in[start]) ++start;  // start on an unflagged sample
    std::size_t j = start;
    do {
        if (in[j]) {
            std::size_t b = j;
            std::size_t e = j;
            while (in[(e + 1) % n]) e = (e + 1) % n;
            if (e >= b) {
                out.push_back({sol.v.t(b), sol.v.t(e)});
            } else {
                out.push_back({sol.v.t(b), sol.domain.period});
                out.push_back({0.0, sol.v.t(e)});
            }
            j = (e + 1) % n;
        } else {
            j = (j + 1) % n;
        }
    } while (j != start);
    return out;
}

double turning_angle(const FreeCurve& curve) {
    if (classify(curve) != CurveClass::closed)
        throw InvalidError("turning angle is defined for closed curves");
    check_distinct(curve);

    const std::size_t m = curve.size() - 1;  // distinct vertices
    if (m < 3) throw InvalidError("closed curve needs at least 3 distinct vertices");

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ip = (i + 1) % m;
        const std::size_t ipp = (i + 2) % m;
        const double e1x = curve.u[ip] - curve.u[i];
        const double e1y = curve.v[ip] - curve.v[i];
        const double e2x = curve.u[ipp] - curve.u[ip];
        const double e2y = curve.v[ipp] - curve.v[ip];
        if ((e1x == 0.0 && e1y == 0.0) || (e2x == 0.0 && e2y == 0.0))
            throw InvalidError("zero-length edge in closed curve");
        total += std::atan2(e1x * e2y - e1y * e2x, e1x * e2x + e1y * e2y);
    }
    return total;
}

namespace {

int orient(double ax, double ay, double bx, double by, double cx, double cy) {
    const double d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return (d > 0.0) - (d < 0.0);
}

bool on_segment(double ax, double ay, double bx, double by, double px, double py) {
    return std::min(ax, bx) <= px && px <= std::max(ax, bx) &&
           std::min(ay, by) <= py && py <= std::max(ay, by);
}

bool segments_intersect(double p1x, double p1y, double p2x, double p2y, double p3x,
                        double p3y, double p4x, double p4y) {
    const int o1 = orient(p1x, p1y, p2x, p2y, p3x, p3y);
    const int o2 = orient(p1x, p1y, p2x, p2y, p4x, p4y);
    const int o3 = orient(p3x, p3y, p4x, p4y, p1x, p1y);
    const int o4 = orient(p3x, p3y, p4x, p4y, p2x, p2y);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1x, p1y, p2x, p2y, p3x, p3y)) return true;
    if (o2 == 0 && on_segment(p1x, p1y, p2x, p2y, p4x, p4y)) return true;
    if (o3 == 0 && on_segment(p3x, p3y, p4x, p4y, p1x, p1y)) return true;
    if (o4 == 0 && on_segment(p3x, p3y, p4x, p4y, p2x, p2y)) return true;
    return false;
}

}  // namespace

IntersectionResult self_intersection(const FreeCurve& curve) {
    if (curve.size() < 4) throw InvalidError("self-intersection test needs >= 4 points");
    check_distinct(curve);
    const CurveClass cls = classify(curve);
    const std::size_t nseg = curve.size() - 1;

    auto seg = [&](std::size_t i, int copy, double& ax, double& ay, double& bx,
                   double& by) {
        const double sh = curve.shift * static_cast<double>(copy);
        ax = curve.u[i] + sh;
        ay = curve.v[i];
        bx = curve.u[i + 1] + sh;
        by = curve.v[i + 1];
    };

    // base period against itself, non-adjacent pairs
    for (std::size_t i = 0; i < nseg; ++i) {
        for (std::size_t j = i + 2; j < nseg; ++j) {
            if (cls == CurveClass::closed && i == 0 && j == nseg - 1)
                continue;  // cyclic adjacency
            double a1, b1, a2, b2, a3, b3, a4, b4;
            seg(i, 0, a1, b1, a2, b2);
            seg(j, 0, a3, b3, a4, b4);
            if (segments_intersect(a1, b1, a2, b2, a3, b3, a4, b4))
                return {true, i, j, 0};
        }
    }

    if (cls == CurveClass::periodic && curve.shift != 0.0) {
        double umin = curve.u[0], umax = curve.u[0];
        for (double u : curve.u) {
            umin = std::min(umin, u);
            umax = std::max(umax, u);
        }
        const double span = umax - umin;
        const int copies =
            std::max(1, static_cast<int>(std::ceil(span / std::abs(curve.shift))));
        for (int copy = 1; copy <= copies; ++copy) {
            for (std::size_t i = 0; i < nseg; ++i) {
                for (std::size_t j = 0; j < nseg; ++j) {
                    // the last base segment meets the first shifted one
                    if (copy == 1 && i == nseg - 1 && j == 0) continue;
                    double a1, b1, a2, b2, a3, b3, a4, b4;
                    seg(i, 0, a1, b1, a2, b2);
                    seg(j, copy, a3, b3, a4, b4);
                    if (segments_intersect(a1, b1, a2, b2, a3, b3, a4, b4))
                        return {true, i, j, copy};
                }
            }
        }
    }
    return {};
}

DiagnosticsReport verify_solution(const Solution& sol, const Profile& profile,
                                  const VerifyOptions& options) {
    DiagnosticsReport rep{};
    rep.samples = sol.v.size();
    rep.period = sol.domain.period;
    rep.half_width = sol.domain.half_width;
    rep.stagnation_tol = options.stagnation_tol;
    rep.bernoulli_tol = 0.0;  // informational for solutions

    rep.bernoulli_sup = bernoulli_residual(sol);
    const GraphCheck g = graph_check(sol);
    rep.min_cos_theta = g.min_cos_theta;
    rep.min_u_prime = g.min_u_prime;
    rep.graph_property = g.graph;
    rep.czam_margin = czam_check(sol, profile);

    GridSpec grid = options.grid;
    const double C = sol.domain.half_width;
    if (grid.ymin <= 0.0 || grid.ymax <= 0.0) {
        grid.ymin = C / static_cast<double>(grid.ny + 1);
        grid.ymax = C * static_cast<double>(grid.ny) / static_cast<double>(grid.ny + 1);
    }
    const QFieldResult q = q_field_check(sol, profile, grid);
    rep.q_max_interior = q.q_max_interior;
    rep.q_boundary_dev = q.q_boundary_dev;
    rep.q_cross_validation = q.q_cross_validation;

    rep.stagnation_set = stagnation_detect(sol, profile, options.stagnation_tol);
    rep.stagnation_checked = true;

    const FreeCurve curve = reconstruct_curve(sol);
    const IntersectionResult isect = self_intersection(curve);
    rep.self_intersects = isect.found;
    if (isect.found) rep.intersection_witness = {isect.seg_a, isect.seg_b};
    return rep;
}

DiagnosticsReport verify_curve(const FreeCurve& curve, const Profile* profile,
                               double half_width, const VerifyOptions& options) {
    DiagnosticsReport rep{};
    rep.samples = curve.size();
    rep.period = curve.t.empty() ? 0.0 : curve.t.back() - curve.t.front();
    rep.half_width = half_width > 0.0 ? half_width : 0.0;
    rep.stagnation_tol = options.stagnation_tol;
    rep.bernoulli_tol = options.bernoulli_tol;

    const CurveClass cls = classify(curve);

    // a closed Jordan curve is never a graph; its certificate is the turning
    // angle instead
    if (cls != CurveClass::closed) {
        const GraphCheck g = graph_check(curve, profile);
        rep.min_cos_theta = g.min_cos_theta;
        rep.min_u_prime = g.min_u_prime;
        rep.graph_property = g.graph;
    }

    if (profile && !curve.t.empty()) {
        try {
            rep.bernoulli_sup = bernoulli_residual(curve, *profile);
        } catch (const Error&) {
            // v off J or missing data: leave null
        }
    }

    const IntersectionResult isect = self_intersection(curve);
    rep.self_intersects = isect.found;
    if (isect.found) rep.intersection_witness = {isect.seg_a, isect.seg_b};

    if (cls == CurveClass::closed) rep.turning_number = turning_angle(curve);

    // strip machinery for uniform periodic traces: v as a PeriodicFunction
    if (cls == CurveClass::periodic && profile && rep.period > 0.0) {
        const std::size_t n = curve.size() - 1;
        bool uniform = (n & (n - 1)) == 0 && n >= 64 && !curve.t.empty();
        if (uniform) {
            const double dt = rep.period / static_cast<double>(n);
            for (std::size_t i = 0; i + 1 < curve.size() && uniform; ++i)
                uniform = std::abs(curve.t[i] - (curve.t[0] + dt * static_cast<double>(i))) <
                          1e-9 * rep.period;
        }
        bool in_range = true;
        for (std::size_t i = 0; i + 1 < curve.size() && in_range; ++i)
            in_range = curve.v[i] > profile->y_lo() && curve.v[i] < profile->y_hi();

        if (uniform && in_range) {
            try {
                std::vector<double> vs(curve.v.begin(), curve.v.end() - 1);
                PeriodicFunction v(std::move(vs), rep.period);
                StripDomain dom(half_width > 0.0 ? half_width : 1.0, rep.period);

                PeriodicFunction rho = rho_trace(v, *profile);
                PeriodicFunction th = conjugate_top(rho, dom);

                // czam with the curve's own tangent angles
                const std::vector<double> th_curve = curve_theta(curve, cls);
                std::vector<double> thc(th_curve.begin(), th_curve.end() - 1);
                PeriodicFunction theta_pf(std::move(thc), rep.period);
                PeriodicFunction thp = spectral_derivative(theta_pf);
                const double h_mean = profile->h(v.mean());
                double inf = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < v.size(); ++j) {
                    const double h = profile->h(v[j]);
                    if (h < kStagnationClamp * h_mean) continue;
                    inf = std::min(inf, thp[j] - profile->h_prime(v[j]) / (h * h) *
                                            std::cos(theta_pf[j]));
                }
                rep.czam_margin = inf;

                if (half_width > 0.0) {
                    std::vector<double> wp(v.size());
                    for (std::size_t j = 0; j < v.size(); ++j)
                        wp[j] = 1.0 / profile->h(v[j]);
                    std::vector<double> upr(v.size());
                    for (std::size_t j = 0; j < v.size(); ++j)
                        upr[j] = std::cos(th[j]) / profile->h(v[j]);
                    PeriodicFunction up(std::move(upr), rep.period);
                    Solution pseudo{dom,
                                    *profile,
                                    v,
                                    th,
                                    spectral_antiderivative(up),
                                    PeriodicFunction(std::move(wp), rep.period),
                                    up.mean(),
                                    rep.bernoulli_sup.value_or(0.0),
                                    0.0,
                                    std::numeric_limits<double>::quiet_NaN(),
                                    StreamRegime::subcritical,
                                    Branch::upper,
                                    0};
                    GridSpec grid = options.grid;
                    if (grid.ymin <= 0.0 || grid.ymax <= 0.0) {
                        grid.ymin = dom.half_width / static_cast<double>(grid.ny + 1);
                        grid.ymax = dom.half_width * static_cast<double>(grid.ny) /
                                    static_cast<double>(grid.ny + 1);
                    }
                    const QFieldResult q = q_field_check(pseudo, *profile, grid);
                    rep.q_max_interior = q.q_max_interior;
                    rep.q_boundary_dev = q.q_boundary_dev;
                    rep.q_cross_validation = q.q_cross_validation;
                }

                if (profile->has_zero_endpoint()) {
                    const double d = profile->y_hi();
                    std::vector<Interval> out;
                    for (std::size_t j = 0; j < v.size(); ++j)
                        if (d - v[j] < options.stagnation_tol)
                            out.push_back({v.t(j), v.t(j)});
                    rep.stagnation_set = std::move(out);
                    rep.stagnation_checked = true;
                }
            } catch (const Error&) {
                // partial report: spectral checks unavailable for this input
            }
        }
    }
    return rep;
}

}  // namespace sw
