#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stripwave/periodic.hpp"

namespace sw {

// The fixed strip  Pi_{-C,C} = { x + i y : -C < y < C }  with the conformal
// period P imposed on all boundary data.
struct StripDomain {
    double half_width;  // C
    double period;      // P

    StripDomain(double C, double P);
};

struct Point {
    double x;
    double y;
};

enum class Parity { even, odd };

struct QuadratureOptions {
    double tail_eps = 1e-10;       // kernel tail truncation target
    double resolution_tol = 1e-8;  // attainable-accuracy guard for the sampling
};

// Poisson integral of the strip for top data F_C and bottom data F_{-C},
// kernel  cos(pi y / 2C) / (cosh(pi (x-s) / 2C) -+ sin(pi y / 2C)) / (4C),
// evaluated by composite trapezoid over kernel translates of the periodic
// samples within the analytic tail window.
std::vector<double> poisson_extend(const PeriodicFunction& top,
                                   const PeriodicFunction& bottom,
                                   const StripDomain& domain,
                                   const std::vector<Point>& points,
                                   const QuadratureOptions& opts = {});

// P_e[F] = P[F, F]  and  P_o[F] = P[F, -F].
std::vector<double> symmetric_extend(const PeriodicFunction& f, Parity parity,
                                     const StripDomain& domain,
                                     const std::vector<Point>& points,
                                     const QuadratureOptions& opts = {});

double poisson_extend_at(const PeriodicFunction& top, const PeriodicFunction& bottom,
                         const StripDomain& domain, double x, double y,
                         const QuadratureOptions& opts = {});

double symmetric_extend_at(const PeriodicFunction& f, Parity parity,
                           const StripDomain& domain, double x, double y,
                           const QuadratureOptions& opts = {});

// Top-boundary conjugation operator: rho is the y = C trace of a harmonic
// function even in y; the result is the y = C trace of its conjugate pinned
// to zero on the strip axis.  Fourier multiplier i tanh(k~ C) per signed
// wavenumber k~ = 2 pi k / P; exact on resolved modes, zero mean out.
PeriodicFunction conjugate_top(const PeriodicFunction& rho, const StripDomain& domain);

// Stable hyperbolic mode gains, valid for y in [-C, C] and kt >= 0.
double even_mode_gain(double kt, double y, double C);  // cosh(kt y)/cosh(kt C)
double odd_mode_gain(double kt, double y, double C);   // sinh(kt y)/sinh(kt C); kt=0 -> y/C
double conj_mode_gain(double kt, double y, double C);  // sinh(kt y)/cosh(kt C)

// Spectral (mode-sum) evaluation of the parity extension of a top trace.
// Exact for band-limited data; the quadrature route above is the independent
// realization of the same operators.
double spectral_extend_at(const PeriodicFunction& f, Parity parity,
                          const StripDomain& domain, double x, double y);

// Interior values of the holomorphic completion G = R + i Theta of the even
// extension of a top trace rho, with Theta = 0 on the axis.
struct FieldPair {
    double real_part;  // R(x, y)
    double conjugate;  // Theta(x, y)
};
FieldPair conjugate_field_at(const PeriodicFunction& rho, const StripDomain& domain,
                             double x, double y);

// Conformal equivalence between the unit disc and the strip:
//   beta(xi) = (2C/pi) log((1+xi)/(1-xi)),   inverse  xi = tanh(pi z / 4C).
std::complex<double> disc_to_strip(std::complex<double> xi, const StripDomain& domain);
std::complex<double> strip_to_disc(std::complex<double> z, const StripDomain& domain);

// Rectangular evaluation lattice: nx uniform columns over one period,
// ny uniform rows spanning [ymin, ymax].
struct GridSpec {
    std::size_t nx;
    std::size_t ny;
    double ymin;
    double ymax;
};

struct HarmonicField {
    StripDomain domain;
    GridSpec grid;
    std::vector<double> U;
    std::vector<double> V;
    std::vector<double> logAbsWp;
    std::vector<double> Theta;

    std::size_t index(std::size_t i, std::size_t j) const { return j * grid.nx + i; }
    double x(std::size_t i) const {
        return domain.period * static_cast<double>(i) / static_cast<double>(grid.nx);
    }
    double y(std::size_t j) const {
        if (grid.ny == 1) return grid.ymin;
        return grid.ymin + (grid.ymax - grid.ymin) * static_cast<double>(j) /
                               static_cast<double>(grid.ny - 1);
    }
};

}  // namespace sw
