#include "stripwave/periodic.hpp"

#include <algorithm>
#include <cmath>

#include "stripwave/errors.hpp"

namespace sw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_size(std::size_t n) {
    if (!is_pow2(n))
        throw InvalidError("sample count must be a power of two >= 2, got " +
                           std::to_string(n));
}

}  // namespace

void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    check_size(n);

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

PeriodicFunction::PeriodicFunction(std::vector<double> samples, double period) {
    check_size(samples.size());
    if (!(period > 0.0)) throw InvalidError("period must be positive");
    period_ = period;
    samples_ = std::move(samples);

    std::vector<cplx> a(samples_.begin(), samples_.end());
    fft_radix2(a, false);
    const double inv_n = 1.0 / static_cast<double>(a.size());
    for (auto& c : a) c *= inv_n;

    // enforce conjugate symmetry exactly
    const std::size_t n = a.size();
    a[0] = cplx(a[0].real(), 0.0);
    a[n / 2] = cplx(a[n / 2].real(), 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        cplx avg = 0.5 * (a[k] + std::conj(a[n - k]));
        a[k] = avg;
        a[n - k] = std::conj(avg);
    }
    spectrum_ = std::move(a);
}

PeriodicFunction PeriodicFunction::from_spectrum(std::vector<cplx> spectrum, double period) {
    check_size(spectrum.size());
    if (!(period > 0.0)) throw InvalidError("period must be positive");

    const std::size_t n = spectrum.size();
    spectrum[0] = cplx(spectrum[0].real(), 0.0);
    spectrum[n / 2] = cplx(spectrum[n / 2].real(), 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        cplx avg = 0.5 * (spectrum[k] + std::conj(spectrum[n - k]));
        spectrum[k] = avg;
        spectrum[n - k] = std::conj(avg);
    }

    std::vector<cplx> a = spectrum;
    fft_radix2(a, true);

    PeriodicFunction f;
    f.period_ = period;
    f.spectrum_ = std::move(spectrum);
    f.samples_.resize(n);
    for (std::size_t j = 0; j < n; ++j) f.samples_[j] = a[j].real();
    return f;
}

PeriodicFunction PeriodicFunction::constant(double value, std::size_t n, double period) {
    return PeriodicFunction(std::vector<double>(n, value), period);
}

double PeriodicFunction::mean() const { return spectrum_[0].real(); }

double PeriodicFunction::max_abs() const {
    double m = 0.0;
    for (double s : samples_) m = std::max(m, std::abs(s));
    return m;
}

double PeriodicFunction::cos_coeff(std::size_t k) const {
    const std::size_t n = size();
    if (k > n / 2) throw InvalidError("cosine coefficient index out of range");
    if (k == 0) return spectrum_[0].real();
    if (k == n / 2) return spectrum_[n / 2].real();
    return 2.0 * spectrum_[k].real();
}

double PeriodicFunction::sin_coeff(std::size_t k) const {
    const std::size_t n = size();
    if (k > n / 2) throw InvalidError("sine coefficient index out of range");
    if (k == 0 || k == n / 2) return 0.0;
    return -2.0 * spectrum_[k].imag();
}

double PeriodicFunction::eval(double t) const {
    const std::size_t n = size();
    const double w = kTwoPi / period_;
    double acc = cos_coeff(0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double ph = w * static_cast<double>(k) * t;
        acc += cos_coeff(k) * std::cos(ph) + sin_coeff(k) * std::sin(ph);
    }
    acc += cos_coeff(n / 2) * std::cos(w * static_cast<double>(n / 2) * t);
    return acc;
}

PeriodicFunction PeriodicFunction::resampled(std::size_t m) const {
    check_size(m);
    const std::size_t n = size();
    if (m == n) return *this;

    std::vector<cplx> out(m, cplx(0.0, 0.0));
    const std::size_t half = std::min(n, m) / 2;
    out[0] = spectrum_[0];
    for (std::size_t k = 1; k < half; ++k) {
        out[k] = spectrum_[k];
        out[m - k] = spectrum_[n - k];
    }
    if (m > n) {
        // split the old Nyquist bin symmetrically
        out[half] = 0.5 * spectrum_[n / 2];
        out[m - half] = 0.5 * spectrum_[n / 2];
    }
    return from_spectrum(std::move(out), period_);
}

double PeriodicFunction::high_mode_energy_fraction() const {
    const std::size_t n = size();
    const std::size_t cut = (3 * (n / 2)) / 4;
    double total = 0.0, high = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double p = std::norm(spectrum_[k]);
        total += p;
        if (k > cut) high += p;
    }
    return total > 0.0 ? high / total : 0.0;
}

PeriodicFunction spectral_derivative(const PeriodicFunction& f, bool* bandlimit_ok) {
    if (bandlimit_ok) *bandlimit_ok = f.high_mode_energy_fraction() < 1e-8;

    const std::size_t n = f.size();
    const double w = kTwoPi / f.period();
    std::vector<cplx> s = f.spectrum();
    s[0] = cplx(0.0, 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double kt = w * static_cast<double>(k);
        s[k] *= cplx(0.0, kt);
        s[n - k] *= cplx(0.0, -kt);
    }
    s[n / 2] = cplx(0.0, 0.0);  // sine at Nyquist is not representable
    return PeriodicFunction::from_spectrum(std::move(s), f.period());
}

PeriodicFunction spectral_antiderivative(const PeriodicFunction& f) {
    const std::size_t n = f.size();
    const double w = kTwoPi / f.period();
    std::vector<cplx> s = f.spectrum();
    s[0] = cplx(0.0, 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double kt = w * static_cast<double>(k);
        s[k] /= cplx(0.0, kt);
        s[n - k] /= cplx(0.0, -kt);
    }
    s[n / 2] = cplx(0.0, 0.0);
    return PeriodicFunction::from_spectrum(std::move(s), f.period());
}

}  // namespace sw
