// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Run through ctest or directly from the build tree.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stripwave/cli_io.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/periodic.hpp"
#include "stripwave/profile.hpp"
#include "stripwave/solver.hpp"
#include "stripwave/strip_harmonic.hpp"
#include "stripwave/verifier.hpp"

using namespace sw;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

int g_failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("%s  %2d. %s%s%s\n", pass ? "PASS" : "FAIL", id, title,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Bifurcation {
    double a;
    double lambda;
    Profile profile;
    StripDomain domain;
};

Bifurcation bifurcation_setup() {
    const double a = std::cbrt(1.0 / std::tanh(1.0));
    const double lambda = 1.0 / (a * a) + 2.0 * a;
    return {a, lambda, Profile::water_wave(1.0, lambda), StripDomain(1.0, kTwoPi)};
}

// --- criterion 1 -----------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double C = 1.0, P = kTwoPi;
    StripDomain dom(C, P);
    PeriodicFunction one = PeriodicFunction::constant(1.0, 512, P);

    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> ux(0.0, P), uy(-0.95, 0.95);

    double worst_even = 0.0, worst_odd = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng), y = uy(rng) * C;
        worst_even = std::max(
            worst_even, std::abs(symmetric_extend_at(one, Parity::even, dom, x, y) - 1.0));
        worst_odd = std::max(
            worst_odd,
            std::abs(symmetric_extend_at(one, Parity::odd, dom, x, y) - y / C));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst_even < 1e-8 && worst_odd < 1e-8 && elapsed < 1.0;

    std::ostringstream d;
    d << "even err " << worst_even << ", odd err " << worst_odd << ", " << elapsed
      << " s";
    report(1, "kernel normalization at 200 random interior points", pass, d.str());
}

// --- criterion 2 -----------------------------------------------------------

void criterion_2() {
    double worst_mult = 0.0, worst_oracle = 0.0;
    for (double C : {0.5, 1.0, 2.0}) {
        StripDomain dom(C, kTwoPi);
        for (int k = 1; k <= 16; ++k) {
            const std::size_t n = 128;
            std::vector<double> s(n);
            for (std::size_t j = 0; j < n; ++j)
                s[j] = std::cos(double(k) * kTwoPi * double(j) / double(n));
            PeriodicFunction rho(std::move(s), kTwoPi);
            PeriodicFunction th = conjugate_top(rho, dom);
            const double gain = std::tanh(double(k) * C);
            for (std::size_t j = 0; j < n; ++j) {
                const double t = th.t(j);
                worst_mult = std::max(worst_mult,
                                      std::abs(th[j] + gain * std::sin(double(k) * t)));
                const std::complex<double> z(t, C);
                const std::complex<double> G =
                    std::cos(double(k) * z) / std::cosh(double(k) * C);
                worst_oracle = std::max(worst_oracle, std::abs(th[j] - G.imag()));
            }
        }
    }
    const bool pass = worst_mult < 1e-12 && worst_oracle < 1e-12;
    std::ostringstream d;
    d << "multiplier err " << worst_mult << ", oracle err " << worst_oracle;
    report(2, "conjugation exact on modes k=1..16, C in {0.5,1,2}", pass, d.str());
}

// --- criterion 3 -----------------------------------------------------------

void criterion_3() {
    bool pass = true;
    std::ostringstream d;
    try {
        Profile p = Profile::water_wave(1.0, 4.0);
        StripDomain dom(1.0, kTwoPi);
        const FlatState lo = flat_state(p, dom, Branch::lower);
        const FlatState up = flat_state(p, dom, Branch::upper);
        const double rlo = std::abs(lo.a * p.h(lo.a) - 1.0);
        const double rup = std::abs(up.a * p.h(up.a) - 1.0);
        pass = pass && !lo.critical && !up.critical;
        pass = pass && std::abs(lo.a - 0.5970) < 5e-4 && std::abs(up.a - 1.86) < 1e-2;
        pass = pass && rlo < 1e-12 && rup < 1e-12;

        Profile pc = Profile::water_wave(1.0, 3.0);
        const FlatState crit = flat_state(pc, dom, Branch::lower);
        pass = pass && crit.critical && std::abs(crit.a - 1.0) < 1e-6;

        d << "a_lo " << lo.a << " (res " << rlo << "), a_up " << up.a << " (res "
          << rup << "), critical a " << crit.a;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(3, "flat streams: two roots at lambda=4, double root at lambda=3", pass,
           d.str());
}

// --- criterion 4 -----------------------------------------------------------

void criterion_4() {
    bool pass = true;
    std::ostringstream d;
    try {
        const Bifurcation b = bifurcation_setup();
        const std::size_t N = 128;

        std::size_t dim = 0;
        std::vector<double> J = flat_residual_jacobian(b.profile, b.domain, b.a, N, &dim);
        Eigen::Map<
            Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            M(J.data(), dim, dim);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double rel = sv[long(dim - 1)] / sv[0];
        const Eigen::VectorXd null_dir = svd.matrixV().col(long(dim - 1));
        pass = pass && rel < 1e-6 && std::abs(null_dir[0]) > 0.999;

        // physical dispersion identity at the same stream
        const double v0 = b.a;             // C = 1
        const double c = b.profile.h(v0);  // wave speed of the linearized mode
        const double k_phys = 1.0 / b.a;   // k~ / a with k~ = 1
        const double disp = std::abs(c * c - (1.0 / k_phys) * std::tanh(k_phys * v0));
        pass = pass && disp < 1e-10;

        d << "sigma_min/sigma_max " << rel << ", |cos-mode component| "
          << std::abs(null_dir[0]) << ", dispersion residual " << disp;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(4, "flat-state Jacobian singular on cos(t); dispersion identity", pass,
           d.str());
}

// --- criterion 5 -----------------------------------------------------------

// Second-order expansion of the branch through the k=1 bifurcation, derived
// independently of the solver:
//   v - mean(v) = A cos t + A^2 c2 cos 2t + O(A^3),
//   c2 = (a g^2 / 2 m^2) (T1 + T2) / (2 - (a g / m) T2),
// with m = h(v0)^2 and Tk = tanh(k C).  The mean itself shifts at O(A^2) by
// an amount the second-order system leaves free (the flat-family direction),
// so the oracle compares the translation-invariant shape.
double oracle_c2(const Bifurcation& b) {
    const double g = 1.0, C = 1.0;
    const double m = 1.0 / (b.a * b.a);
    const double T1 = std::tanh(C), T2 = std::tanh(2.0 * C);
    return (b.a * g * g / (2.0 * m * m)) * (T1 + T2) / (2.0 - (b.a * g / m) * T2);
}

double oracle_error(const Bifurcation& b, const Solution& sol, double A) {
    const double c2 = oracle_c2(b);
    const double mean = sol.v.mean();
    double worst = 0.0;
    for (std::size_t j = 0; j < sol.v.size(); ++j) {
        const double t = sol.v.t(j);
        const double prediction = A * std::cos(t) + A * A * c2 * std::cos(2.0 * t);
        worst = std::max(worst, std::abs(sol.v[j] - mean - prediction));
    }
    return worst;
}

void criterion_5() {
    bool pass = true;
    std::ostringstream d;
    try {
        const Bifurcation b = bifurcation_setup();
        const auto t0 = std::chrono::steady_clock::now();
        Solution sol = solve_periodic(b.profile, b.domain, 256, 0.01);
        const double elapsed = seconds_since(t0);

        pass = pass && sol.residual_norm < 1e-10;
        pass = pass && sol.newton_iterations <= 8;
        pass = pass && elapsed < 5.0;

        Solution half = solve_periodic(b.profile, b.domain, 256, 0.005);
        const double e1 = oracle_error(b, sol, 0.01);
        const double e2 = oracle_error(b, half, 0.005);
        const double ratio = e1 / e2;
        pass = pass && ratio > 7.0 && ratio < 9.0;

        d << "residual " << sol.residual_norm << ", " << sol.newton_iterations
          << " Newton steps, " << elapsed << " s, oracle err " << e1
          << ", decay ratio " << ratio;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(5, "nonlinear solve matches the second-order expansion to O(A^3)", pass,
           d.str());
}

// --- criterion 6 -----------------------------------------------------------

void criterion_6() {
    bool pass = true;
    std::ostringstream d;
    try {
        const Bifurcation b = bifurcation_setup();
        SolveOptions opt;
        opt.steps = 10;
        auto branch = continuation_branch(b.profile, b.domain, 256, 0.05, opt);
        pass = pass && branch.size() == 11;

        double worst_cos = 1.0, worst_czam = 1e9, worst_q = -1e9;
        for (const Solution& sol : branch) {
            if (!(sol.residual_norm < 1e-10)) pass = false;

            const GraphCheck g = graph_check(sol);
            worst_cos = std::min(worst_cos, g.min_cos_theta);
            if (!g.graph || !(g.min_cos_theta > 0.9)) pass = false;

            const double margin = czam_check(sol, sol.profile);
            worst_czam = std::min(worst_czam, margin);
            if (!(margin > 0.0)) pass = false;

            const QFieldResult q =
                q_field_check(sol, sol.profile, {32, 8, 0.1, 0.9});
            worst_q = std::max(worst_q, q.q_max_interior);
            if (!(q.q_max_interior < 0.0)) pass = false;

            if (!stagnation_detect(sol, sol.profile, 1e-6).empty()) pass = false;
            if (self_intersection(reconstruct_curve(sol)).found) pass = false;
        }
        d << "min cos theta " << worst_cos << ", min czam " << worst_czam
          << ", max Q " << worst_q;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(6, "structural certificate holds along the branch to amplitude 0.05",
           pass, d.str());
}

// --- criterion 7 -----------------------------------------------------------

void criterion_7() {
    bool pass = true;
    std::ostringstream d;
    try {
        const Bifurcation b = bifurcation_setup();
        Solution sol = solve_periodic(b.profile, b.domain, 256, 0.01);
        const double C = 1.0;
        GridSpec grid{64, 32, C / 33.0, C * 32.0 / 33.0};
        const QFieldResult q = q_field_check(sol, sol.profile, grid);
        pass = pass && q.q_cross_validation < 1e-6;
        pass = pass && q.q_boundary_dev < 1e-6;
        pass = pass && q.q_max_interior < 0.0;
        d << "cross dev " << q.q_cross_validation << ", boundary dev "
          << q.q_boundary_dev << ", max Q " << q.q_max_interior;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(7, "Q field: Poisson quadrature vs interior field on a 64x32 grid", pass,
           d.str());
}

// --- criterion 8 -----------------------------------------------------------

void criterion_8() {
    bool pass = true;
    std::ostringstream d;
    try {
        auto polygon = [](bool ccw) {
            FreeCurve c;
            for (std::size_t j = 0; j <= 64; ++j) {
                const double ang = kTwoPi * double(j % 64) / 64.0;
                c.u.push_back(std::cos(ccw ? ang : -ang));
                c.v.push_back(std::sin(ccw ? ang : -ang));
            }
            c.closed = true;
            return c;
        };
        const double t_ccw = turning_angle(polygon(true));
        const double t_cw = turning_angle(polygon(false));
        pass = pass && std::abs(t_ccw - kTwoPi) < 1e-12;
        pass = pass && std::abs(t_cw + kTwoPi) < 1e-12;

        FreeCurve eight;
        for (std::size_t j = 0; j <= 64; ++j) {
            const double s = kTwoPi * double(j % 64) / 64.0;
            eight.u.push_back(std::sin(2.0 * s));
            eight.v.push_back(std::sin(s));
        }
        eight.closed = true;
        const double t8 = turning_angle(eight);
        const bool flagged = std::min(std::abs(t8 - kTwoPi), std::abs(t8 + kTwoPi)) > 1.0;
        pass = pass && flagged;
        pass = pass && self_intersection(eight).found;

        d << "ccw " << t_ccw << ", cw " << t_cw << ", figure-eight " << t8;
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(8, "turning angle: +-2 pi for Jordan polygons, figure-eight flagged",
           pass, d.str());
}

// --- criterion 9 -----------------------------------------------------------

void criterion_9() {
    bool pass = true;
    std::ostringstream d;
    try {
        Profile good = Profile::water_wave(1.0, 4.0);
        const HypothesisReport a = check_hypotheses(good, 512);
        pass = pass && a.overall && a.failed_clauses().empty();

        auto table = [](double (*f)(double), double lo, double hi) {
            std::vector<double> ys(1024), hs(1024);
            for (std::size_t i = 0; i < 1024; ++i) {
                ys[i] = lo + (hi - lo) * double(i) / 1023.0;
                hs[i] = f(ys[i]);
            }
            return Profile::tabulated(std::move(ys), std::move(hs));
        };
        const HypothesisReport inv =
            check_hypotheses(table(+[](double y) { return 1.0 / y; }, 0.1, 1.0), 512);
        pass = pass && !inv.overall && inv.failed_clauses() == "ac";

        const HypothesisReport cst =
            check_hypotheses(table(+[](double) { return 1.0; }, 0.0, 1.0), 512);
        pass = pass && !cst.overall;
        pass = pass && cst.failed_clauses().find('c') != std::string::npos;
        pass = pass && !(cst.strict_decrease_margin > 0.0);

        d << "water-wave '" << a.failed_clauses() << "', 1/Y '" << inv.failed_clauses()
          << "', const '" << cst.failed_clauses() << "'";
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(9, "hypothesis checker separates the water-wave law from 1/Y and const",
           pass, d.str());
}

// --- criterion 10 ----------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10() {
    bool pass = true;
    std::ostringstream d;
    try {
        const Bifurcation b = bifurcation_setup();
        RunSpec spec;
        spec.command = RunSpec::Command::solve;
        spec.profile.kind = ProfileKind::water_wave;
        spec.profile.g = 1.0;
        spec.profile.lambda = b.lambda;
        spec.C = 1.0;
        spec.P = kTwoPi;
        spec.N = 128;
        spec.amplitude = 0.003;
        spec.steps = 2;
        spec.grid_nx = 32;
        spec.grid_ny = 8;

        const RunResult r1 = run(spec, "acceptance_run1");
        const RunResult r2 = run(spec, "acceptance_run2");
        pass = pass && r1.exit_code == kExitOk && r2.exit_code == kExitOk;

        std::size_t bytes = 0;
        for (const char* name : {"solution.csv", "solution.json", "report.json"}) {
            const std::string a = slurp(std::string("acceptance_run1/") + name);
            const std::string c = slurp(std::string("acceptance_run2/") + name);
            if (a.empty() || a != c) pass = false;
            bytes += a.size();
        }
        d << (pass ? "byte-identical artifacts (" : "artifact mismatch (")
          << bytes << " bytes compared)";

        for (const char* dir : {"acceptance_run1", "acceptance_run2"}) {
            for (const char* name : {"solution.csv", "solution.json", "report.json"})
                std::remove((std::string(dir) + "/" + name).c_str());
            ::remove(dir);
        }
    } catch (const Error& e) {
        pass = false;
        d << e.what();
    }
    report(10, "determinism: identical configs produce identical bytes", pass,
           d.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
