#include "stripwave/strip_harmonic.hpp"

#include <cmath>
#include <string>

#include "stripwave/errors.hpp"

namespace sw {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace

StripDomain::StripDomain(double C, double P) : half_width(C), period(P) {
    if (!(C > 0.0)) throw InvalidError("strip half-width must be positive");
    if (!(P > 0.0)) throw InvalidError("conformal period must be positive");
}

namespace {

void check_interior(double y, double C) {
    if (!(std::abs(y) < C))
        throw DomainError("evaluation point y = " + std::to_string(y) +
                          " is not strictly interior to the strip (|y| < " +
                          std::to_string(C) + ")");
}

// Composite trapezoid on a uniform periodic sampling is a plain Riemann sum;
// its error for the Poisson kernel is governed by the kernel's complex
// singularity at distance C - |y| from the integration line:
//   err ~ exp(-2 pi (C - |y|) / dt).
void check_resolution(double y, double C, double dt, double tol) {
    const double dist = C - std::abs(y);
    const double est = std::exp(-kTwoPi * dist / dt);
    if (est > tol)
        throw ResolutionError(
            "quadrature tolerance unattainable: sampling step " + std::to_string(dt) +
            " too coarse at distance " + std::to_string(dist) +
            " from the boundary (error estimate " + std::to_string(est) + ")");
}

}  // namespace

double poisson_extend_at(const PeriodicFunction& top, const PeriodicFunction& bottom,
                         const StripDomain& domain, double x, double y,
                         const QuadratureOptions& opts) {
    if (top.size() != bottom.size())
        throw InvalidError("top and bottom boundary samplings differ in size");
    if (top.period() != bottom.period())
        throw InvalidError("top and bottom boundary samplings differ in period");

    const double C = domain.half_width;
    const double P = domain.period;
    check_interior(y, C);

    const std::size_t n = top.size();
    const double dt = P / static_cast<double>(n);
    check_resolution(y, C, dt, opts.resolution_tol);

    // window half-width: kernel decays like exp(-pi |x-s| / 2C)
    const double T = (2.0 * C / kPi) * std::log(1.0 / opts.tail_eps) + P;

    const double k = kPi / (2.0 * C);
    const double sina = std::sin(k * y);
    const double cosa = std::cos(k * y);

    const long j_lo = static_cast<long>(std::ceil((x - T) / dt));
    const long j_hi = static_cast<long>(std::floor((x + T) / dt));

    const auto& ft = top.samples();
    const auto& fb = bottom.samples();

    double acc = 0.0;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double s = dt * static_cast<double>(j);
        const double ch = std::cosh(k * (x - s));
        long m = j % static_cast<long>(n);
        if (m < 0) m += static_cast<long>(n);
        acc += ft[static_cast<std::size_t>(m)] / (ch - sina) +
               fb[static_cast<std::size_t>(m)] / (ch + sina);
    }
    return acc * cosa * dt / (4.0 * C);
}

std::vector<double> poisson_extend(const PeriodicFunction& top,
                                   const PeriodicFunction& bottom,
                                   const StripDomain& domain,
                                   const std::vector<Point>& points,
                                   const QuadratureOptions& opts) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const Point& p : points)
        out.push_back(poisson_extend_at(top, bottom, domain, p.x, p.y, opts));
    return out;
}

double symmetric_extend_at(const PeriodicFunction& f, Parity parity,
                           const StripDomain& domain, double x, double y,
                           const QuadratureOptions& opts) {
    if (parity == Parity::even) return poisson_extend_at(f, f, domain, x, y, opts);
    std::vector<double> neg(f.samples());
    for (double& v : neg) v = -v;
    PeriodicFunction minus_f(std::move(neg), f.period());
    return poisson_extend_at(f, minus_f, domain, x, y, opts);
}

std::vector<double> symmetric_extend(const PeriodicFunction& f, Parity parity,
                                     const StripDomain& domain,
                                     const std::vector<Point>& points,
                                     const QuadratureOptions& opts) {
    if (parity == Parity::even) return poisson_extend(f, f, domain, points, opts);
    std::vector<double> neg(f.samples());
    for (double& v : neg) v = -v;
    PeriodicFunction minus_f(std::move(neg), f.period());
    return poisson_extend(f, minus_f, domain, points, opts);
}

PeriodicFunction conjugate_top(const PeriodicFunction& rho, const StripDomain& domain) {
    if (rho.period() != domain.period)
        throw InvalidError("boundary trace period does not match the domain");
    const std::size_t n = rho.size();
    const double w = kTwoPi / rho.period();
    const double C = domain.half_width;

    std::vector<cplx> s = rho.spectrum();
    s[0] = cplx(0.0, 0.0);  // multiplier vanishes at k = 0
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double gain = std::tanh(w * static_cast<double>(k) * C);
        s[k] *= cplx(0.0, gain);
        s[n - k] *= cplx(0.0, -gain);
    }
    s[n / 2] = cplx(0.0, 0.0);  // the conjugate of the Nyquist cosine is a sine: drop it
    return PeriodicFunction::from_spectrum(std::move(s), rho.period());
}

// The ratios are assembled from decaying exponentials only, so they stay
// finite for arbitrarily large kt C where cosh/sinh themselves overflow.
double even_mode_gain(double kt, double y, double C) {
    if (kt == 0.0) return 1.0;
    const double a = std::exp(kt * (std::abs(y) - C));
    const double b = std::exp(-kt * (std::abs(y) + C));
    return (a + b) / (1.0 + std::exp(-2.0 * kt * C));
}

double odd_mode_gain(double kt, double y, double C) {
    if (kt == 0.0) return y / C;
    const double sign = (y < 0.0) ? -1.0 : 1.0;
    const double a = std::exp(kt * (std::abs(y) - C));
    const double b = std::exp(-kt * (std::abs(y) + C));
    return sign * (a - b) / (1.0 - std::exp(-2.0 * kt * C));
}

double conj_mode_gain(double kt, double y, double C) {
    if (kt == 0.0) return 0.0;
    const double sign = (y < 0.0) ? -1.0 : 1.0;
    const double a = std::exp(kt * (std::abs(y) - C));
    const double b = std::exp(-kt * (std::abs(y) + C));
    return sign * (a - b) / (1.0 + std::exp(-2.0 * kt * C));
}

double spectral_extend_at(const PeriodicFunction& f, Parity parity,
                          const StripDomain& domain, double x, double y) {
    const double C = domain.half_width;
    if (!(std::abs(y) <= C)) throw DomainError("point outside the closed strip");

    const std::size_t n = f.size();
    const double w = kTwoPi / f.period();

    double acc;
    if (parity == Parity::even)
        acc = f.cos_coeff(0);
    else
        acc = f.cos_coeff(0) * (y / C);

    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double kt = w * static_cast<double>(k);
        const double gain = (parity == Parity::even) ? even_mode_gain(kt, y, C)
                                                     : odd_mode_gain(kt, y, C);
        const double ph = kt * x;
        acc += (f.cos_coeff(k) * std::cos(ph) + f.sin_coeff(k) * std::sin(ph)) * gain;
    }
    return acc;
}

FieldPair conjugate_field_at(const PeriodicFunction& rho, const StripDomain& domain,
                             double x, double y) {
    const double C = domain.half_width;
    if (!(std::abs(y) <= C)) throw DomainError("point outside the closed strip");

    const std::size_t n = rho.size();
    const double w = kTwoPi / rho.period();

    double R = rho.cos_coeff(0);
    double Th = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double kt = w * static_cast<double>(k);
        const double eg = even_mode_gain(kt, y, C);
        const double cg = conj_mode_gain(kt, y, C);
        const double c = std::cos(kt * x), s = std::sin(kt * x);
        const double p = rho.cos_coeff(k), q = rho.sin_coeff(k);
        R += (p * c + q * s) * eg;
        Th += (q * c - p * s) * cg;
    }
    return {R, Th};
}

std::complex<double> disc_to_strip(std::complex<double> xi, const StripDomain& domain) {
    if (!(std::abs(xi) < 1.0))
        throw DomainError("disc-to-strip map requires |xi| < 1");
    const double C = domain.half_width;
    return (2.0 * C / kPi) * std::log((1.0 + xi) / (1.0 - xi));
}

std::complex<double> strip_to_disc(std::complex<double> z, const StripDomain& domain) {
    const double C = domain.half_width;
    if (!(std::abs(z.imag()) < C))
        throw DomainError("strip-to-disc map requires |Im z| < C");
    return std::tanh(kPi * z / (4.0 * C));
}

}  // namespace sw
