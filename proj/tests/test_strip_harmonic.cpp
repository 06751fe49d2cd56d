#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "stripwave/errors.hpp"
#include "stripwave/periodic.hpp"
#include "stripwave/strip_harmonic.hpp"

using namespace sw;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

PeriodicFunction sample_fn(std::size_t n, double P, double (*f)(double)) {
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = f(P * double(j) / double(n));
    return PeriodicFunction(std::move(s), P);
}

PeriodicFunction cos_mode(std::size_t n, double P, int k) {
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j)
        s[j] = std::cos(kTwoPi * double(k) / P * (P * double(j) / double(n)));
    return PeriodicFunction(std::move(s), P);
}

}  // namespace

TEST_CASE("sample/spectrum round trip") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> s(256);
    for (double& v : s) v = uni(rng);
    PeriodicFunction f(s, kTwoPi);
    PeriodicFunction g = PeriodicFunction::from_spectrum(f.spectrum(), kTwoPi);
    double scale = f.max_abs();
    for (std::size_t j = 0; j < s.size(); ++j)
        CHECK(std::abs(g[j] - s[j]) < 1e-12 * scale);

    // conjugate symmetry
    const auto& sp = f.spectrum();
    for (std::size_t k = 1; k < 128; ++k)
        CHECK(std::abs(sp[k] - std::conj(sp[256 - k])) < 1e-15);
}

TEST_CASE("trig interpolation and spectral resampling") {
    PeriodicFunction f = sample_fn(64, kTwoPi, [](double t) {
        return 1.5 + std::cos(2.0 * t) - 0.3 * std::sin(5.0 * t);
    });
    for (std::size_t j = 0; j < f.size(); ++j)
        CHECK(f.eval(f.t(j)) == doctest::Approx(f[j]).epsilon(1e-12));
    const double t_mid = 0.5 * (f.t(3) + f.t(4));
    CHECK(f.eval(t_mid) ==
          doctest::Approx(1.5 + std::cos(2.0 * t_mid) - 0.3 * std::sin(5.0 * t_mid))
              .epsilon(1e-12));

    PeriodicFunction up = f.resampled(256);
    PeriodicFunction down = up.resampled(64);
    for (std::size_t j = 0; j < up.size(); ++j)
        CHECK(std::abs(up[j] - f.eval(up.t(j))) < 1e-12);
    for (std::size_t j = 0; j < f.size(); ++j)
        CHECK(std::abs(down[j] - f[j]) < 1e-12);
}

TEST_CASE("poisson extension of constant data") {
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction one = PeriodicFunction::constant(1.0, 256, kTwoPi);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(0.0, kTwoPi), uy(-0.9, 0.9);
    for (int i = 0; i < 25; ++i) {
        const double x = ux(rng), y = uy(rng);
        CHECK(poisson_extend_at(one, one, dom, x, y) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(symmetric_extend_at(one, Parity::even, dom, x, y) ==
              doctest::Approx(1.0).epsilon(1e-8));
        // odd constant: the unique bounded harmonic function with values +-1
        CHECK(std::abs(symmetric_extend_at(one, Parity::odd, dom, x, y) - y / 1.0) < 1e-8);
    }
}

TEST_CASE("poisson extension of a single mode against the closed form") {
    const double C = 0.8, P = kTwoPi;
    StripDomain dom(C, P);
    const int k = 2;
    const double kt = kTwoPi * k / P;
    PeriodicFunction f = cos_mode(512, P, k);

    auto closed_form = [&](double x, double y) {
        return std::cos(kt * x) * std::cosh(kt * y) / std::cosh(kt * C);
    };

    // oracle sanity: the closed form is harmonic and attains the data
    {
        const double h = 1e-4;
        const double x0 = 1.1, y0 = 0.2;
        const double lap = (closed_form(x0 + h, y0) + closed_form(x0 - h, y0) +
                            closed_form(x0, y0 + h) + closed_form(x0, y0 - h) -
                            4.0 * closed_form(x0, y0)) /
                           (h * h);
        CHECK(std::abs(lap) < 1e-4);
        CHECK(closed_form(0.3, C) == doctest::Approx(std::cos(kt * 0.3)).epsilon(1e-14));
        CHECK(closed_form(0.3, -C) == doctest::Approx(std::cos(kt * 0.3)).epsilon(1e-14));
    }

    for (double y : {-0.5, -0.1, 0.0, 0.3, 0.6}) {
        for (double x : {0.0, 0.7, 3.1, 5.9}) {
            CHECK(std::abs(poisson_extend_at(f, f, dom, x, y) - closed_form(x, y)) < 1e-8);
            CHECK(std::abs(symmetric_extend_at(f, Parity::even, dom, x, y) -
                           closed_form(x, y)) < 1e-8);
        }
    }

    // odd extension: sinh profile in y
    auto odd_form = [&](double x, double y) {
        return std::cos(kt * x) * std::sinh(kt * y) / std::sinh(kt * C);
    };
    for (double y : {-0.5, 0.3, 0.6})
        CHECK(std::abs(symmetric_extend_at(f, Parity::odd, dom, 1.3, y) -
                       odd_form(1.3, y)) < 1e-8);
}

TEST_CASE("poisson quadrature error paths") {
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction one = PeriodicFunction::constant(1.0, 128, kTwoPi);
    CHECK_THROWS_AS(poisson_extend_at(one, one, dom, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(poisson_extend_at(one, one, dom, 0.0, 1.5), DomainError);
    // 128 samples cannot resolve a point this close to the boundary
    CHECK_THROWS_AS(poisson_extend_at(one, one, dom, 0.0, 0.999), ResolutionError);
}

TEST_CASE("harmonicity of the quadrature under stencil refinement") {
    const double C = 1.0, P = kTwoPi;
    StripDomain dom(C, P);
    PeriodicFunction f = cos_mode(1024, P, 2);
    QuadratureOptions opts;
    opts.tail_eps = 1e-12;

    const double x0 = 1.0, y0 = 0.3;
    std::vector<double> lap;
    for (double h : {0.04, 0.02, 0.01}) {
        const double v = (poisson_extend_at(f, f, dom, x0 + h, y0, opts) +
                          poisson_extend_at(f, f, dom, x0 - h, y0, opts) +
                          poisson_extend_at(f, f, dom, x0, y0 + h, opts) +
                          poisson_extend_at(f, f, dom, x0, y0 - h, opts) -
                          4.0 * poisson_extend_at(f, f, dom, x0, y0, opts)) /
                         (h * h);
        lap.push_back(std::abs(v));
    }
    const double slope1 = std::log2(lap[0] / lap[1]);
    const double slope2 = std::log2(lap[1] / lap[2]);
    CHECK(slope1 > 1.8);
    CHECK(slope1 < 2.2);
    CHECK(slope2 > 1.8);
    CHECK(slope2 < 2.2);
}

TEST_CASE("conjugation multiplier on single modes") {
    for (double C : {0.5, 1.0, 2.0}) {
        StripDomain dom(C, kTwoPi);
        for (int k : {1, 3, 8}) {
            PeriodicFunction rho = cos_mode(128, kTwoPi, k);
            PeriodicFunction th = conjugate_top(rho, dom);
            const double g = std::tanh(double(k) * C);
            for (std::size_t j = 0; j < th.size(); ++j) {
                const double t = th.t(j);
                CHECK(std::abs(th[j] + g * std::sin(k * t)) < 1e-12);
            }

            // oracle: trace of the holomorphic completion cos(k z)/cosh(k C)
            for (std::size_t j = 0; j < th.size(); j += 16) {
                const std::complex<double> z(th.t(j), C);
                const std::complex<double> G =
                    std::cos(double(k) * z) / std::cosh(double(k) * C);
                CHECK(std::abs(th[j] - G.imag()) < 1e-12);
            }
        }
    }
}

TEST_CASE("conjugation of constants and sines") {
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction c = PeriodicFunction::constant(3.7, 128, kTwoPi);
    PeriodicFunction th = conjugate_top(c, dom);
    CHECK(th.max_abs() < 1e-14);

    PeriodicFunction s = sample_fn(128, kTwoPi, [](double t) { return std::sin(2.0 * t); });
    PeriodicFunction th2 = conjugate_top(s, dom);
    const double g = std::tanh(2.0);
    for (std::size_t j = 0; j < th2.size(); ++j)
        CHECK(std::abs(th2[j] - g * std::cos(2.0 * th2.t(j))) < 1e-12);
}

TEST_CASE("conjugation exchanges parity") {
    StripDomain dom(1.0, kTwoPi);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const std::size_t n = 128;

    // random even function: cosine series
    std::vector<cplx> spec(n, cplx(0.0, 0.0));
    spec[0] = uni(rng);
    for (std::size_t k = 1; k < 20; ++k) {
        const double a = uni(rng) / double(k * k);
        spec[k] = cplx(0.5 * a, 0.0);
        spec[n - k] = cplx(0.5 * a, 0.0);
    }
    PeriodicFunction even = PeriodicFunction::from_spectrum(spec, kTwoPi);
    PeriodicFunction th = conjugate_top(even, dom);
    for (std::size_t j = 1; j < n; ++j)
        CHECK(std::abs(th[j] + th[n - j]) < 1e-10);  // odd output

    // odd input -> even output
    std::vector<cplx> ospec(n, cplx(0.0, 0.0));
    for (std::size_t k = 1; k < 20; ++k) {
        const double b = uni(rng) / double(k * k);
        ospec[k] = cplx(0.0, -0.5 * b);
        ospec[n - k] = cplx(0.0, 0.5 * b);
    }
    PeriodicFunction odd = PeriodicFunction::from_spectrum(ospec, kTwoPi);
    PeriodicFunction th2 = conjugate_top(odd, dom);
    for (std::size_t j = 1; j < n; ++j)
        CHECK(std::abs(th2[j] - th2[n - j]) < 1e-10);
}

TEST_CASE("deep-strip limit of the multiplier gain") {
    // for kC > 20 the gain is indistinguishable from the half-plane value 1
    CHECK(std::abs(std::tanh(21.0) - 1.0) < 1e-15);
    StripDomain dom(25.0, kTwoPi);
    PeriodicFunction rho = cos_mode(64, kTwoPi, 1);
    PeriodicFunction th = conjugate_top(rho, dom);
    for (std::size_t j = 0; j < th.size(); ++j)
        CHECK(std::abs(th[j] + std::sin(th.t(j))) < 1e-14);
}

TEST_CASE("spectral derivative") {
    PeriodicFunction f = sample_fn(128, kTwoPi, [](double t) { return std::sin(t); });
    bool ok = false;
    PeriodicFunction df = spectral_derivative(f, &ok);
    CHECK(ok);
    for (std::size_t j = 0; j < df.size(); ++j)
        CHECK(df[j] == doctest::Approx(std::cos(df.t(j))).epsilon(1e-12));

    PeriodicFunction c = PeriodicFunction::constant(2.5, 64, kTwoPi);
    CHECK(spectral_derivative(c).max_abs() < 1e-14);

    // cos^2 against a central-difference oracle
    PeriodicFunction g = sample_fn(256, kTwoPi, [](double t) {
        const double c1 = std::cos(t);
        return c1 * c1;
    });
    PeriodicFunction dg = spectral_derivative(g);
    const double h = 1e-5;
    for (std::size_t j = 0; j < dg.size(); j += 8) {
        const double t = dg.t(j);
        const double fd = (std::cos(t + h) * std::cos(t + h) -
                           std::cos(t - h) * std::cos(t - h)) /
                          (2.0 * h);
        CHECK(std::abs(dg[j] - fd) < 1e-6);
        CHECK(std::abs(dg[j] + std::sin(2.0 * t)) < 1e-12);
    }
}

TEST_CASE("spectral derivative band-limit warning") {
    // white noise is not band-limited: the flag must trip
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> s(128);
    for (double& v : s) v = uni(rng);
    bool ok = true;
    spectral_derivative(PeriodicFunction(std::move(s), kTwoPi), &ok);
    CHECK_FALSE(ok);
}

TEST_CASE("disc <-> strip conformal maps") {
    StripDomain dom(1.3, kTwoPi);
    CHECK(std::abs(disc_to_strip({0.0, 0.0}, dom)) < 1e-15);

    // real axis maps to the real axis, increasing
    double prev = -1e9;
    for (double x : {-0.9, -0.5, 0.0, 0.4, 0.9}) {
        const std::complex<double> z = disc_to_strip({x, 0.0}, dom);
        CHECK(std::abs(z.imag()) < 1e-15);
        CHECK(z.real() > prev);
        prev = z.real();
    }

    // beta(i/2) = i (2C/pi) 2 atan(1/2)
    const std::complex<double> z = disc_to_strip({0.0, 0.5}, dom);
    CHECK(z.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z.imag() ==
          doctest::Approx(2.0 * 1.3 / kPi * 2.0 * std::atan(0.5)).epsilon(1e-14));

    // mutual inverse to 1e-12
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(0.0, 0.95), ua(0.0, kTwoPi);
    for (int i = 0; i < 50; ++i) {
        const double r = ur(rng), a = ua(rng);
        const std::complex<double> xi(r * std::cos(a), r * std::sin(a));
        const std::complex<double> back = strip_to_disc(disc_to_strip(xi, dom), dom);
        CHECK(std::abs(back - xi) < 1e-12);
    }

    CHECK_THROWS_AS(disc_to_strip({1.0, 0.0}, dom), DomainError);
    CHECK_THROWS_AS(strip_to_disc({0.0, 1.3}, dom), DomainError);
}

TEST_CASE("spectral extension matches the quadrature route") {
    const double C = 1.0, P = kTwoPi;
    StripDomain dom(C, P);
    PeriodicFunction f = sample_fn(512, P, [](double t) {
        return 0.3 + std::cos(t) - 0.2 * std::sin(3.0 * t);
    });
    for (double y : {-0.6, 0.0, 0.5}) {
        for (double x : {0.2, 2.0, 4.4}) {
            CHECK(std::abs(spectral_extend_at(f, Parity::even, dom, x, y) -
                           symmetric_extend_at(f, Parity::even, dom, x, y)) < 1e-8);
            CHECK(std::abs(spectral_extend_at(f, Parity::odd, dom, x, y) -
                           symmetric_extend_at(f, Parity::odd, dom, x, y)) < 1e-8);
        }
    }
}

TEST_CASE("extension symmetry about the axis") {
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction f = sample_fn(256, kTwoPi, [](double t) {
        return 1.0 + 0.5 * std::cos(2.0 * t);
    });
    for (double y : {0.2, 0.5, 0.8}) {
        const double x = 1.7;
        CHECK(symmetric_extend_at(f, Parity::even, dom, x, -y) ==
              doctest::Approx(symmetric_extend_at(f, Parity::even, dom, x, y))
                  .epsilon(1e-10));
        CHECK(symmetric_extend_at(f, Parity::odd, dom, x, -y) ==
              doctest::Approx(-symmetric_extend_at(f, Parity::odd, dom, x, y))
                  .epsilon(1e-10));
    }
}

TEST_CASE("boundary-trace consistency of spectral differentiation") {
    // the trace of the derivative field built from the same spectrum equals
    // the spectral derivative of the trace
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction f = sample_fn(128, kTwoPi, [](double t) {
        return std::cos(t) + 0.4 * std::sin(2.0 * t) + 0.1 * std::cos(5.0 * t);
    });
    PeriodicFunction df = spectral_derivative(f);
    for (std::size_t j = 0; j < f.size(); j += 4) {
        const double x = f.t(j);
        // x-derivative of the even extension, evaluated on the boundary line
        const double h = 1e-6;
        const double fd = (spectral_extend_at(f, Parity::even, dom, x + h, 1.0) -
                           spectral_extend_at(f, Parity::even, dom, x - h, 1.0)) /
                          (2.0 * h);
        CHECK(std::abs(fd - df[j]) < 1e-6);
    }
    // exact route: mode sum of the derivative spectrum at y = C
    for (std::size_t j = 0; j < f.size(); j += 4)
        CHECK(std::abs(spectral_extend_at(df, Parity::even, dom, f.t(j), 1.0) - df[j]) <
              1e-10);
}

TEST_CASE("conjugate field pins Theta to zero on the axis") {
    StripDomain dom(1.0, kTwoPi);
    PeriodicFunction rho = sample_fn(128, kTwoPi, [](double t) {
        return 0.2 * std::cos(t) - 0.1 * std::cos(3.0 * t);
    });
    for (double x : {0.0, 1.0, 2.5, 5.0}) {
        const FieldPair g = conjugate_field_at(rho, dom, x, 0.0);
        CHECK(std::abs(g.conjugate) < 1e-14);
    }
    // trace at y = C reproduces rho and its multiplier conjugate
    PeriodicFunction th = conjugate_top(rho, dom);
    for (std::size_t j = 0; j < rho.size(); j += 8) {
        const FieldPair g = conjugate_field_at(rho, dom, rho.t(j), 1.0);
        CHECK(std::abs(g.real_part - rho[j]) < 1e-12);
        CHECK(std::abs(g.conjugate - th[j]) < 1e-12);
    }
}
