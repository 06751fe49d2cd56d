#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "stripwave/profile.hpp"
#include "stripwave/solver.hpp"
#include "stripwave/strip_harmonic.hpp"

namespace sw {

struct Interval {
    double t_begin;
    double t_end;
};

// Every theorem-derived margin for one surface.  Fields that are not
// computable for the given input stay empty and are reported as null.
struct DiagnosticsReport {
    std::optional<double> bernoulli_sup;
    std::optional<double> min_cos_theta;
    std::optional<double> min_u_prime;
    std::optional<double> czam_margin;
    std::optional<double> q_max_interior;
    std::optional<double> q_boundary_dev;
    std::optional<double> q_cross_validation;
    std::optional<double> turning_number;
    std::optional<bool> graph_property;
    std::vector<Interval> stagnation_set;
    bool stagnation_checked = false;
    bool self_intersects = false;
    std::optional<std::pair<std::size_t, std::size_t>> intersection_witness;

    // sampling metadata
    std::size_t samples = 0;
    double period = 0.0;
    double half_width = 0.0;
    double stagnation_tol = 0.0;
    double bernoulli_tol = 0.0;

    // All computed certificate clauses pass: graph property, positive
    // differential-inequality margin, negative interior barrier, empty
    // stagnation set, no self-intersection, Bernoulli residual under tol.
    bool certificate() const;
};

struct VerifyOptions {
    double stagnation_tol = 1e-6;
    double bernoulli_tol = 1e-4;  // curves carry finite-difference tangents
    GridSpec grid{64, 32, 0.0, 0.0};  // ymin/ymax 0 means: derived from C
};

// sup over samples of | |w'(t)| h(v(t)) - 1 |.
double bernoulli_residual(const Solution& solution);
double bernoulli_residual(const FreeCurve& curve, const Profile& profile);

struct GraphCheck {
    double min_cos_theta;
    double min_u_prime;
    bool graph;  // true iff min cos(theta) > 0 strictly at all samples
};
GraphCheck graph_check(const Solution& solution);
GraphCheck graph_check(const FreeCurve& curve, const Profile* profile);

// inf over samples (off the stagnation clamp) of
//   theta'(t) - h'(v(t))/h(v(t))^2 * cos(theta(t)).
double czam_check(const Solution& solution, const Profile& profile);

struct QFieldResult {
    double q_max_interior;      // max over the grid of path A
    double q_boundary_dev;      // Richardson limit of Q at y -> C, off stagnation
    double q_cross_validation;  // max |path A - path B| over the grid
};

// Q = -log|W'| - log h(V) two ways: path A through the interior field of the
// solution, path B through the Poisson quadrature of its boundary traces.
QFieldResult q_field_check(const Solution& solution, const Profile& profile,
                           const GridSpec& grid);

// Maximal sample intervals with d - v(t) < tol; empty when the profile has no
// stagnation endpoint h(d) = 0.
std::vector<Interval> stagnation_detect(const Solution& solution,
                                        const Profile& profile, double tol);

// Sum of exterior angles of a closed polyline; +-2 pi for a Jordan-curve
// discretization, other values flag non-simple curves.
double turning_angle(const FreeCurve& curve);

struct IntersectionResult {
    bool found = false;
    std::size_t seg_a = 0;
    std::size_t seg_b = 0;
    int copy_shift = 0;  // 0: both segments in the base period
};

// Segment-pair sweep over one period plus its horizontal translates.
IntersectionResult self_intersection(const FreeCurve& curve);

DiagnosticsReport verify_solution(const Solution& solution, const Profile& profile,
                                  const VerifyOptions& options = {});

// For imported curves; profile may be null (geometry-only report) and
// half_width <= 0 means the strip height is unknown, disabling the Q field.
DiagnosticsReport verify_curve(const FreeCurve& curve, const Profile* profile,
                               double half_width, const VerifyOptions& options = {});

}  // namespace sw
