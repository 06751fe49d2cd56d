#pragma once

#include <cstddef>
#include <vector>

#include "stripwave/periodic.hpp"
#include "stripwave/profile.hpp"
#include "stripwave/strip_harmonic.hpp"

namespace sw {

enum class Branch { lower, upper };
enum class StreamRegime { subcritical, supercritical, critical };

// Root of the uniform-stream condition a h(aC) = 1 on the requested side of
// the critical point of a -> a h(aC).
struct FlatState {
    double a;
    bool critical;  // double root: both branches coincide
};
FlatState flat_state(const Profile& profile, const StripDomain& domain, Branch branch);

// Signed linearization margin per integer mode k (wavenumber k~ = 2 pi k / P):
//   margin(k) = k~ + h'(v0) tanh(k~ C) / h(v0)^2,  v0 = a C.
// A zero crossing marks a bifurcating mode of the flat stream.
struct ModeMargin {
    int k;
    double margin;
};
std::vector<ModeMargin> bifurcation_wavenumbers(const Profile& profile,
                                                const StripDomain& domain, double a,
                                                int k_max);

// r(t) = v'(t) - sin(theta(t)) / h(v(t)) with theta the conjugate of
// -log h(v); theta is returned for reuse.
struct ResidualOut {
    PeriodicFunction r;
    PeriodicFunction theta;
};
ResidualOut residual(const PeriodicFunction& v, const Profile& profile,
                     const StripDomain& domain);

// Boundary fields of a converged periodic surface on the top line y = C.
// Immutable once produced.
struct Solution {
    StripDomain domain;
    Profile profile;  // carries the resolved lambda for the water-wave kind
    PeriodicFunction v;
    PeriodicFunction theta;
    PeriodicFunction u_periodic;  // u(t) = mean_slope * t + u_periodic(t)
    PeriodicFunction abs_wp;
    double mean_slope;     // Lambda / P
    double residual_norm;  // max of |r|_inf, |level pin|, |amplitude pin|
    double amplitude;      // (v(0) - v(P/2)) / 2
    double lambda;         // NaN for profiles without the parameter
    StreamRegime regime;
    Branch seed_branch;
    int newton_iterations;
};

struct SolveOptions {
    Branch branch = Branch::upper;
    int steps = 1;
    double newton_tol = 1e-10;
    int max_newton = 25;
};

// Newton continuation in crest-trough amplitude over even cosine space.
// Amplitude is pinned by v(0) - v(P/2) = 2 * amplitude; the balancing unknown
// is lambda for the water-wave kind and the mean of v otherwise.  The mean
// level is anchored by the axis condition V(x, 0) = 0 through
//   v(0) = integral_0^C exp(R(0, y)) dy,
// R being the even harmonic extension of -log h(v).
Solution solve_periodic(const Profile& profile, const StripDomain& domain,
                        std::size_t N, double amplitude_target,
                        const SolveOptions& options = {});

// All intermediate solutions of the continuation, amplitude 0 first.
std::vector<Solution> continuation_branch(const Profile& profile,
                                          const StripDomain& domain, std::size_t N,
                                          double amplitude_target,
                                          const SolveOptions& options = {});

// Physical free-surface polyline over one period.  For periodic curves the
// last point equals the first shifted by (shift, 0).
struct FreeCurve {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> t;      // parameter values; empty when unknown
    std::vector<double> theta;  // optional tangent angles
    bool closed = false;
    double shift = 0.0;  // Lambda, horizontal advance per period (open curves)

    std::size_t size() const { return u.size(); }
    bool has_theta() const { return !theta.empty(); }
};

// u by spectral antiderivative of cos(theta)/h(v); requires
// residual_norm < 1e-6.
FreeCurve reconstruct_curve(const Solution& solution);

// Interior fields U, V, log|W'|, Theta of the holomorphic map on a lattice
// with 0 <= y < C.  log W' is extended from its top trace with the correct
// parities (Re even, Im odd about the axis); U comes from integrating
// U_x = |W'| cos Theta along each row.
HarmonicField interior_field(const Solution& solution, const GridSpec& grid);

// Forward-difference Jacobian of the residual map (cosine coefficients
// 1..N/2-1 of v to sine coefficients 1..N/2-1 of r) at the flat state v = aC.
// Row-major square matrix of dimension N/2-1; its singular values equal the
// mode margins of bifurcation_wavenumbers up to finite-difference error.
std::vector<double> flat_residual_jacobian(const Profile& profile,
                                           const StripDomain& domain, double a,
                                           std::size_t N, std::size_t* dim);

}  // namespace sw
