#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sw {

using cplx = std::complex<double>;

// In-place radix-2 complex FFT, unscaled.  Size must be a power of two.
void fft_radix2(std::vector<cplx>& a, bool inverse);

// A real P-periodic boundary function held as N uniform samples at
// t_j = j P / N together with its discrete Fourier coefficients
//   c_k = (1/N) sum_j f_j e^{-2 pi i j k / N},
// kept conjugate-symmetric so the sample view stays real.
class PeriodicFunction {
public:
    PeriodicFunction(std::vector<double> samples, double period);

    static PeriodicFunction from_spectrum(std::vector<cplx> spectrum, double period);
    static PeriodicFunction constant(double value, std::size_t n, double period);

    std::size_t size() const { return samples_.size(); }
    double period() const { return period_; }
    double step() const { return period_ / static_cast<double>(samples_.size()); }
    double t(std::size_t j) const { return step() * static_cast<double>(j); }

    const std::vector<double>& samples() const { return samples_; }
    const std::vector<cplx>& spectrum() const { return spectrum_; }
    double operator[](std::size_t j) const { return samples_[j]; }

    double mean() const;
    double max_abs() const;

    // Real cosine/sine coefficients: f(t) = p_0 + sum_k p_k cos(k~t) + q_k sin(k~t)
    // with k~ = 2 pi k / P, valid for k = 0 .. N/2 (q at 0 and N/2 are zero).
    double cos_coeff(std::size_t k) const;
    double sin_coeff(std::size_t k) const;

    // Trigonometric interpolation at arbitrary t.
    double eval(double t) const;

    // Spectral resampling onto m points (zero-pad or truncate the spectrum).
    PeriodicFunction resampled(std::size_t m) const;

    // Fraction of spectral energy in the top quarter of the resolved band.
    double high_mode_energy_fraction() const;

private:
    PeriodicFunction() = default;
    std::vector<double> samples_;
    std::vector<cplx> spectrum_;
    double period_ = 0.0;
};

// Fourier differentiation; exact on resolved modes.  When the band-limit
// precondition fails (top-quarter energy fraction above 1e-8) the optional
// flag is set to false.
PeriodicFunction spectral_derivative(const PeriodicFunction& f, bool* bandlimit_ok = nullptr);

// Periodic antiderivative of the zero-mean part of f; the k = 0 slope is the
// caller's business.  Result has zero mean.
PeriodicFunction spectral_antiderivative(const PeriodicFunction& f);

}  // namespace sw
