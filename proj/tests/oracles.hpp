// Slow, independent reference implementations used only by tests: sparse
// mode-list convolution instead of FFT products, and a fixed-step RK4
// integrator for single-mode ODE oracles.
#ifndef ODDWAVES_TEST_ORACLES_HPP
#define ODDWAVES_TEST_ORACLES_HPP

#include "oddwaves/fourier.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace oracles {

using oddwaves::complex_t;
using ModeMap = std::map<int, complex_t>;

inline int sgn(int k) { return (k > 0) - (k < 0); }

inline ModeMap conv(const ModeMap& a, const ModeMap& b) {
    ModeMap out;
    for (const auto& [m, am] : a)
        for (const auto& [q, bq] : b) out[m + q] += am * bq;
    return out;
}

inline ModeMap hilbert(const ModeMap& a) {
    ModeMap out;
    for (const auto& [k, c] : a)
        out[k] = complex_t{0.0, -static_cast<double>(sgn(k))} * c;
    return out;
}

inline ModeMap lambda_pow(const ModeMap& a, double s) {
    ModeMap out;
    for (const auto& [k, c] : a)
        out[k] = std::pow(std::abs(static_cast<double>(k)), s) * c;
    return out;
}

inline ModeMap deriv(const ModeMap& a, int n) {
    ModeMap out;
    for (const auto& [k, c] : a)
        out[k] = std::pow(complex_t{0.0, static_cast<double>(k)}, n) * c;
    return out;
}

inline ModeMap commutator_h(const ModeMap& f, const ModeMap& g) {
    ModeMap out = hilbert(conv(f, g));
    const ModeMap fg = conv(f, hilbert(g));
    for (const auto& [k, c] : fg) out[k] -= c;
    return out;
}

inline oddwaves::SpectralField to_field(const oddwaves::FourierGrid& grid,
                                        const ModeMap& a) {
    oddwaves::SpectralField f(grid);
    for (const auto& [k, c] : a) f.set_coeff(k, c);
    return f;
}

/// Max coefficient difference between a field and a sparse reference,
/// over all non-Nyquist modes of the field's grid.
inline double field_diff(const oddwaves::SpectralField& f, const ModeMap& ref) {
    double worst = 0.0;
    const int ny = f.grid().nyquist();
    for (int k = -ny + 1; k <= ny - 1; ++k) {
        complex_t r{};
        if (auto it = ref.find(k); it != ref.end()) r = it->second;
        worst = std::max(worst, std::abs(f.coeff(k) - r));
    }
    return worst;
}

inline ModeMap random_real_field(std::mt19937& rng, int max_mode,
                                 double amplitude = 1.0) {
    std::uniform_real_distribution<double> unif(-amplitude, amplitude);
    ModeMap out;
    for (int k = 1; k <= max_mode; ++k) {
        const complex_t c{unif(rng), unif(rng)};
        out[k] = c;
        out[-k] = std::conj(c);
    }
    return out;
}

/// Classic RK4 with fixed step on a complex 2-vector; the independent
/// oracle for the single-mode second-order equations.
inline std::pair<complex_t, complex_t> rk4_mode(
    const std::function<std::pair<complex_t, complex_t>(
        double, complex_t, complex_t)>& rhs,
    complex_t y0, complex_t y1, double t0, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    complex_t a = y0, b = y1;
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        const auto [k1a, k1b] = rhs(t, a, b);
        const auto [k2a, k2b] = rhs(t + h / 2, a + h / 2 * k1a, b + h / 2 * k1b);
        const auto [k3a, k3b] = rhs(t + h / 2, a + h / 2 * k2a, b + h / 2 * k2b);
        const auto [k4a, k4b] = rhs(t + h, a + h * k3a, b + h * k3b);
        a += h / 6 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += h / 6 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        t += h;
    }
    return {a, b};
}

} // namespace oracles

#endif
