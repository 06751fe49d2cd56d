#include "stripwave/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stripwave/errors.hpp"

namespace sw {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kStagnationClamp = 1e-4;  // abort when min h(v) < clamp * h(v_mean)

double phi(const Profile& profile, double C, double a) {
    return a * profile.h(a * C);
}

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(std::size_t m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    const std::size_t half = (m + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double t = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(j) + 1.0) * t * p1 -
                      static_cast<double>(j) * p2) /
                     (static_cast<double>(j) + 1.0);
            }
            pp = static_cast<double>(m) * (t * p0 - p1) / (t * t - 1.0);
            const double dt = -p0 / pp;
            t += dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 - t);
        x[m - 1 - i] = 0.5 * (1.0 + t);
        const double wi = 1.0 / ((1.0 - t * t) * pp * pp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
}

// Quadrature of the axis anchor  v(0) = integral_0^C exp(R(0, y)) dy,
// with the even-extension gains tabulated once per (N, P, C).
class LevelPin {
public:
    LevelPin(std::size_t N, const StripDomain& domain) : half_(N / 2) {
        const double C = domain.half_width;
        std::vector<double> x01, w01;
        gauss_legendre_01(kNodes, x01, w01);
        ynodes_.resize(kNodes);
        weights_.resize(kNodes);
        for (std::size_t i = 0; i < kNodes; ++i) {
            ynodes_[i] = C * x01[i];
            weights_[i] = C * w01[i];
        }
        gains_.resize((half_ + 1) * kNodes);
        const double w = kTwoPi / domain.period;
        for (std::size_t k = 0; k <= half_; ++k)
            for (std::size_t i = 0; i < kNodes; ++i)
                gains_[k * kNodes + i] =
                    even_mode_gain(w * static_cast<double>(k), ynodes_[i], C);
    }

    double integral(const PeriodicFunction& rho) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < kNodes; ++i) {
            double R = 0.0;
            for (std::size_t k = 0; k <= half_; ++k)
                R += rho.cos_coeff(k) * gains_[k * kNodes + i];
            acc += weights_[i] * std::exp(R);
        }
        return acc;
    }

private:
    static constexpr std::size_t kNodes = 128;
    std::size_t half_;
    std::vector<double> ynodes_, weights_, gains_;
};

PeriodicFunction rho_of(const PeriodicFunction& v, const Profile& profile) {
    std::vector<double> rho(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        rho[j] = -std::log(profile.h(v[j]));
    return PeriodicFunction(std::move(rho), v.period());
}

void check_range(const PeriodicFunction& v, const Profile& profile) {
    std::vector<RangeError::Offender> off;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!(v[j] > profile.y_lo()) || !(v[j] < profile.y_hi()))
            off.push_back({j, v.t(j), v[j]});
    if (!off.empty())
        throw RangeError("surface trace leaves the profile domain at " +
                             std::to_string(off.size()) + " sample(s)",
                         std::move(off));

    const double h_mean = profile.h(v.mean());
    std::vector<RangeError::Offender> stag;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (profile.h(v[j]) < kStagnationClamp * h_mean)
            stag.push_back({j, v.t(j), v[j]});
    if (!stag.empty())
        throw RangeError(
            "surface trace within the stagnation clamp (h(v) < 1e-4 h(v_mean)) at " +
                std::to_string(stag.size()) + " sample(s); refine or reduce amplitude",
            std::move(stag), true);
}

}  // namespace

FlatState flat_state(const Profile& profile, const StripDomain& domain, Branch branch) {
    const double C = domain.half_width;
    const double a_lo = profile.y_lo() / C;
    const double a_hi = profile.y_hi() / C;
    const double eps = 1e-9 * (a_hi - a_lo);

    // locate the critical point of a -> a h(aC): dense scan + golden refine
    const std::size_t scan = 2048;
    double a_star = a_lo + eps;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= scan; ++i) {
        const double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) /
                                    static_cast<double>(scan + 1);
        const double f = phi(profile, C, a);
        if (f > best) {
            best = f;
            a_star = a;
        }
    }
    {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = std::max(a_lo + eps, a_star - (a_hi - a_lo) / scan);
        double hi = std::min(a_hi, a_star + (a_hi - a_lo) / scan);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = phi(profile, C, x1), f2 = phi(profile, C, x2);
        while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi))) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = phi(profile, C, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = phi(profile, C, x1);
            }
        }
        a_star = 0.5 * (lo + hi);
        best = phi(profile, C, a_star);
    }

    if (best < 1.0 - 1e-9)
        throw NoStreamError("no uniform stream: max of a h(aC) is " +
                            std::to_string(best) + " < 1");
    if (std::abs(best - 1.0) <= 1e-9) return {a_star, true};

    double lo, hi;
    if (branch == Branch::lower) {
        lo = a_lo + eps;
        hi = a_star;
        if (phi(profile, C, lo) >= 1.0)
            throw NoStreamError("no uniform stream on the lower branch");
    } else {
        lo = a_star;
        hi = a_hi;
        if (phi(profile, C, hi) >= 1.0)
            throw NoStreamError("no uniform stream on the upper branch");
    }

    // bisection on phi - 1, then a short Newton polish
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool below = phi(profile, C, mid) < 1.0;
        const bool lower_branch = (branch == Branch::lower);
        if (below == lower_branch)
            lo = mid;
        else
            hi = mid;
    }
    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double f = phi(profile, C, a) - 1.0;
        const double da = 1e-7 * std::max(1.0, std::abs(a));
        const double fp = (phi(profile, C, a + da) - phi(profile, C, a - da)) / (2.0 * da);
        if (fp == 0.0) break;
        const double step = f / fp;
        if (!std::isfinite(step)) break;
        a -= step;
    }
    return {a, false};
}

std::vector<ModeMargin> bifurcation_wavenumbers(const Profile& profile,
                                                const StripDomain& domain, double a,
                                                int k_max) {
    const double C = domain.half_width;
    const double v0 = a * C;
    if (!(v0 > profile.y_lo()) || !(v0 < profile.y_hi()))
        throw DomainError("stream level a C outside the interior of J");

    const double h0 = profile.h(v0);
    const double hp0 = profile.h_prime(v0);
    const double w = kTwoPi / domain.period;

    std::vector<ModeMargin> out;
    out.reserve(static_cast<std::size_t>(std::max(0, k_max)));
    for (int k = 1; k <= k_max; ++k) {
        const double kt = w * static_cast<double>(k);
        out.push_back({k, kt + hp0 * std::tanh(kt * C) / (h0 * h0)});
    }
    return out;
}

ResidualOut residual(const PeriodicFunction& v, const Profile& profile,
                     const StripDomain& domain) {
    if (v.period() != domain.period)
        throw InvalidError("surface trace period does not match the domain");
    check_range(v, profile);

    PeriodicFunction rho = rho_of(v, profile);
    PeriodicFunction theta = conjugate_top(rho, domain);
    PeriodicFunction vp = spectral_derivative(v);

    std::vector<double> r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        r[j] = vp[j] - std::sin(theta[j]) / profile.h(v[j]);
    return {PeriodicFunction(std::move(r), v.period()), std::move(theta)};
}

namespace {

// One evaluation of the discrete system.
struct SystemState {
    PeriodicFunction v;
    PeriodicFunction r;
    PeriodicFunction theta;
    double pin;
    double amp;
    double lambda;
    double norm;  // max of |r|_inf, |pin|, |amp|
};

// Unknowns are the cosine modes of v up to N/2 - 1 (the Nyquist bin stays
// zero: differentiation and conjugation cannot see it).  For the water-wave
// kind lambda is released and the axis anchor V(x,0) = 0 pins the level
// through  v(0) = integral_0^C exp(R(0,y)) dy;  the amplitude equation then
// balances lambda.  A generic profile has no such parameter: the mean level
// itself balances the amplitude equation and the vertical gauge is the
// surface's own (no axis anchor).
class NewtonSystem {
public:
    NewtonSystem(const Profile& profile, const StripDomain& domain, std::size_t N,
                 double amp_target)
        : profile_(profile), domain_(domain), N_(N), M_(N / 2),
          amp_target_(amp_target), pin_(N, domain),
          release_lambda_(profile.kind() == ProfileKind::water_wave) {}

    // water-wave: X = [a_0 .. a_{M-1}, lambda]; generic: X = [a_0 .. a_{M-1}]
    std::size_t unknowns() const { return release_lambda_ ? M_ + 1 : M_; }

    PeriodicFunction build_v(const Eigen::VectorXd& X) const {
        std::vector<cplx> spec(N_, cplx(0.0, 0.0));
        spec[0] = cplx(X[0], 0.0);
        for (std::size_t k = 1; k < M_; ++k) {
            spec[k] = cplx(0.5 * X[static_cast<long>(k)], 0.0);
            spec[N_ - k] = cplx(0.5 * X[static_cast<long>(k)], 0.0);
        }
        return PeriodicFunction::from_spectrum(std::move(spec), domain_.period);
    }

    Eigen::VectorXd initial_from(const PeriodicFunction& v) const {
        Eigen::VectorXd X(unknowns());
        for (std::size_t k = 0; k < M_; ++k)
            X[static_cast<long>(k)] = v.cos_coeff(k);
        if (release_lambda_) X[static_cast<long>(M_)] = profile_.lambda();
        return X;
    }

    SystemState evaluate(const Eigen::VectorXd& X) const {
        const double lambda = release_lambda_ ? X[static_cast<long>(M_)] : 0.0;
        const Profile prof =
            release_lambda_ ? profile_.with_lambda(lambda) : profile_;

        PeriodicFunction v = build_v(X);
        check_range(v, prof);

        PeriodicFunction rho = rho_of(v, prof);
        PeriodicFunction theta = conjugate_top(rho, domain_);
        PeriodicFunction vp = spectral_derivative(v);

        std::vector<double> r(N_);
        for (std::size_t j = 0; j < N_; ++j)
            r[j] = vp[j] - std::sin(theta[j]) / prof.h(v[j]);
        PeriodicFunction rf(std::move(r), domain_.period);

        SystemState st{std::move(v), std::move(rf), std::move(theta), 0.0, 0.0,
                       lambda, 0.0};
        st.pin = release_lambda_ ? st.v[0] - pin_.integral(rho) : 0.0;
        st.amp = 0.5 * (st.v[0] - st.v[N_ / 2]) - amp_target_;
        st.norm = std::max({st.r.max_abs(), std::abs(st.pin), std::abs(st.amp)});
        return st;
    }

    Eigen::VectorXd pack(const SystemState& st) const {
        Eigen::VectorXd F(unknowns());
        for (std::size_t k = 1; k < M_; ++k)
            F[static_cast<long>(k - 1)] = st.r.sin_coeff(k);
        F[static_cast<long>(M_ - 1)] = st.amp;
        if (release_lambda_) F[static_cast<long>(M_)] = st.pin;
        return F;
    }

    void set_amp_target(double a) { amp_target_ = a; }
    bool release_lambda() const { return release_lambda_; }

private:
    Profile profile_;
    StripDomain domain_;
    std::size_t N_, M_;
    double amp_target_;
    LevelPin pin_;
    bool release_lambda_;
};

Solution finalize(const SystemState& st, const Profile& base,
                  const StripDomain& domain, StreamRegime regime, Branch seed,
                  int iters, bool lambda_released) {
    const Profile prof =
        lambda_released ? base.with_lambda(st.lambda) : base;

    std::vector<double> wp(st.v.size());
    std::vector<double> uprime(st.v.size());
    for (std::size_t j = 0; j < st.v.size(); ++j) {
        const double h = prof.h(st.v[j]);
        wp[j] = 1.0 / h;
        uprime[j] = std::cos(st.theta[j]) / h;
    }
    PeriodicFunction abs_wp(std::move(wp), domain.period);
    PeriodicFunction up(std::move(uprime), domain.period);
    const double mean_slope = up.mean();
    PeriodicFunction u_per = spectral_antiderivative(up);

    const double amplitude = 0.5 * (st.v[0] - st.v[st.v.size() / 2]);
    const double lambda = lambda_released ? st.lambda
                                          : std::numeric_limits<double>::quiet_NaN();

    return Solution{domain,     prof,        st.v,     st.theta, u_per,
                    abs_wp,     mean_slope,  st.norm,  amplitude, lambda,
                    regime,     seed,        iters};
}

Solution newton_solve(NewtonSystem& sys, Eigen::VectorXd X, const Profile& base,
                      const StripDomain& domain, StreamRegime regime, Branch seed,
                      const SolveOptions& opt) {
    SystemState st = sys.evaluate(X);
    int iters = 0;
    double prev_norm = st.norm;
    int grew = 0;

    while (st.norm >= opt.newton_tol) {
        if (iters >= opt.max_newton)
            throw ConvergenceError("Newton did not converge in " +
                                       std::to_string(opt.max_newton) +
                                       " iterations (residual " +
                                       std::to_string(st.norm) + ")",
                                   st.norm, iters);

        const Eigen::VectorXd F = sys.pack(st);
        const long n = static_cast<long>(sys.unknowns());
        Eigen::MatrixXd J(n, n);
        for (long i = 0; i < n; ++i) {
            const double delta = 1e-7 * std::max(1.0, std::abs(X[i]));
            Eigen::VectorXd Xp = X;
            Xp[i] += delta;
            Eigen::VectorXd col;
            try {
                col = (sys.pack(sys.evaluate(Xp)) - F) / delta;
            } catch (const RangeError&) {
                Xp[i] = X[i] - delta;  // fall back to a backward difference
                col = (F - sys.pack(sys.evaluate(Xp))) / delta;
            }
            J.col(i) = col;
        }

        Eigen::VectorXd dx = J.partialPivLu().solve(-F);
        if (!dx.allFinite())
            throw ConvergenceError("Newton step is not finite", st.norm, iters);

        // accept the longest feasible fraction of the step
        double scale = 1.0;
        bool accepted = false;
        for (int half = 0; half < 8 && !accepted; ++half) {
            try {
                SystemState trial = sys.evaluate(X + scale * dx);
                X += scale * dx;
                st = std::move(trial);
                accepted = true;
            } catch (const RangeError& e) {
                if (half == 7 && e.near_stagnation()) throw;
                scale *= 0.5;
            }
        }
        if (!accepted)
            throw ConvergenceError("Newton step infeasible (trace leaves the domain)",
                                   st.norm, iters);
        ++iters;

        if (!std::isfinite(st.norm))
            throw ConvergenceError("residual is not finite", st.norm, iters);
        if (st.norm > prev_norm && ++grew >= 3)
            throw ConvergenceError("Newton diverging (residual " +
                                       std::to_string(st.norm) + " after " +
                                       std::to_string(iters) + " iterations)",
                                   st.norm, iters);
        prev_norm = st.norm;
    }

    return finalize(st, base, domain, regime, seed, iters, sys.release_lambda());
}

}  // namespace

std::vector<Solution> continuation_branch(const Profile& profile,
                                          const StripDomain& domain, std::size_t N,
                                          double amplitude_target,
                                          const SolveOptions& options) {
    if (N < 64 || (N & (N - 1)) != 0)
        throw InvalidError("N must be a power of two with N >= 64");
    if (amplitude_target < 0.0)
        throw InvalidError("amplitude target must be >= 0");
    if (options.steps < 1) throw InvalidError("continuation needs steps >= 1");

    const FlatState fs = flat_state(profile, domain, options.branch);
    const StreamRegime regime =
        fs.critical ? StreamRegime::critical
                    : (options.branch == Branch::upper ? StreamRegime::subcritical
                                                       : StreamRegime::supercritical);
    const double v0 = fs.a * domain.half_width;

    NewtonSystem sys(profile, domain, N, 0.0);

    std::vector<Solution> branch;
    branch.reserve(static_cast<std::size_t>(options.steps) + 1);

    // amplitude 0: the flat stream solves the system exactly
    PeriodicFunction v_flat = PeriodicFunction::constant(v0, N, domain.period);
    Eigen::VectorXd X = sys.initial_from(v_flat);
    branch.push_back(newton_solve(sys, X, profile, domain, regime, options.branch,
                                  options));

    if (amplitude_target > 0.0 && fs.critical)
        throw NoStreamError(
            "critical (double-root) stream: conjugate streams coincide, "
            "no wave continuation from this state");

    double a_prev = 0.0;
    for (int step = 1; step <= options.steps && amplitude_target > 0.0; ++step) {
        const double a_tgt = amplitude_target * static_cast<double>(step) /
                             static_cast<double>(options.steps);
        sys.set_amp_target(a_tgt);

        Eigen::VectorXd Xg = sys.initial_from(branch.back().v);
        if (sys.release_lambda()) Xg[static_cast<long>(N / 2)] = branch.back().lambda;
        Xg[1] += a_tgt - a_prev;  // bump the principal cosine mode

        branch.push_back(newton_solve(sys, Xg, profile, domain, regime,
                                      options.branch, options));
        a_prev = a_tgt;
    }
    return branch;
}

Solution solve_periodic(const Profile& profile, const StripDomain& domain,
                        std::size_t N, double amplitude_target,
                        const SolveOptions& options) {
    auto branch = continuation_branch(profile, domain, N, amplitude_target, options);
    return branch.back();
}

FreeCurve reconstruct_curve(const Solution& sol) {
    if (!(sol.residual_norm < 1e-6))
        throw InvalidError("reconstruct_curve requires residual_norm < 1e-6, got " +
                           std::to_string(sol.residual_norm));

    const std::size_t n = sol.v.size();
    const double P = sol.domain.period;

    FreeCurve c;
    c.closed = false;
    c.shift = sol.mean_slope * P;
    c.u.resize(n + 1);
    c.v.resize(n + 1);
    c.t.resize(n + 1);
    c.theta.resize(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        c.t[j] = sol.v.t(j);
        c.u[j] = sol.mean_slope * c.t[j] + sol.u_periodic[j];
        c.v[j] = sol.v[j];
        c.theta[j] = sol.theta[j];
    }
    c.t[n] = P;
    c.u[n] = c.u[0] + c.shift;
    c.v[n] = c.v[0];
    c.theta[n] = c.theta[0];
    return c;
}

HarmonicField interior_field(const Solution& sol, const GridSpec& grid) {
    const double C = sol.domain.half_width;
    if (grid.nx < 4 || (grid.nx & (grid.nx - 1)) != 0)
        throw InvalidError("grid nx must be a power of two >= 4");
    if (grid.ny < 1) throw InvalidError("grid ny must be >= 1");
    if (!(grid.ymin >= 0.0) || !(grid.ymin <= grid.ymax))
        throw DomainError("grid rows must satisfy 0 <= ymin <= ymax");
    if (!(grid.ymax < C))
        throw DomainError("grid touching y = C: traces are provided separately");

    std::vector<double> lw(sol.abs_wp.size());
    for (std::size_t j = 0; j < lw.size(); ++j) lw[j] = std::log(sol.abs_wp[j]);
    PeriodicFunction rho(std::move(lw), sol.domain.period);

    HarmonicField f{sol.domain, grid, {}, {}, {}, {}};
    const std::size_t npts = grid.nx * grid.ny;
    f.U.resize(npts);
    f.V.resize(npts);
    f.logAbsWp.resize(npts);
    f.Theta.resize(npts);

    for (std::size_t j = 0; j < grid.ny; ++j) {
        const double y = f.y(j);
        std::vector<double> row_wx(grid.nx);  // Re W' along the row
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = f.x(i);
            const FieldPair g = conjugate_field_at(rho, sol.domain, x, y);
            const std::size_t id = f.index(i, j);
            f.logAbsWp[id] = g.real_part;
            f.Theta[id] = g.conjugate;
            f.V[id] = spectral_extend_at(sol.v, Parity::odd, sol.domain, x, y);
            row_wx[i] = std::exp(g.real_part) * std::cos(g.conjugate);
        }
        PeriodicFunction wx(std::move(row_wx), sol.domain.period);
        const double slope = wx.mean();
        PeriodicFunction uper = spectral_antiderivative(wx);
        for (std::size_t i = 0; i < grid.nx; ++i)
            f.U[f.index(i, j)] = slope * f.x(i) + uper[i] - uper[0];
    }
    return f;
}

std::vector<double> flat_residual_jacobian(const Profile& profile,
                                           const StripDomain& domain, double a,
                                           std::size_t N, std::size_t* dim) {
    if (N < 8 || (N & (N - 1)) != 0)
        throw InvalidError("N must be a power of two >= 8");
    const std::size_t M = N / 2;
    const std::size_t d = M - 1;
    if (dim) *dim = d;

    const double v0 = a * domain.half_width;
    PeriodicFunction v_flat = PeriodicFunction::constant(v0, N, domain.period);
    ResidualOut base = residual(v_flat, profile, domain);

    const double delta = 1e-7 * std::max(1.0, std::abs(v0));
    std::vector<double> J(d * d, 0.0);
    for (std::size_t col = 1; col <= d; ++col) {
        std::vector<cplx> spec(N, cplx(0.0, 0.0));
        spec[0] = cplx(v0, 0.0);
        spec[col] = cplx(0.5 * delta, 0.0);
        spec[N - col] = cplx(0.5 * delta, 0.0);
        PeriodicFunction vp = PeriodicFunction::from_spectrum(std::move(spec),
                                                              domain.period);
        ResidualOut pert = residual(vp, profile, domain);
        for (std::size_t row = 1; row <= d; ++row)
            J[(row - 1) * d + (col - 1)] =
                (pert.r.sin_coeff(row) - base.r.sin_coeff(row)) / delta;
    }
    return J;
}

}  // namespace sw
