#include "oddwaves/diagnostics.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/operators.hpp"

#include <cmath>
#include <string>

namespace oddwaves {

double sobolev_norm(const SpectralField& f, double s) {
    if (s < 0.0) throw usage_error("sobolev_norm requires s >= 0");
    double sum = 0.0;
    const int n = static_cast<int>(f.size());
    for (int j = 0; j < n; ++j) {
        const int k = f.grid().mode(static_cast<std::size_t>(j));
        const double a = std::abs(f.data()[static_cast<std::size_t>(j)]);
        sum += (1.0 + std::pow(std::abs(k), 2.0 * s)) * a * a;
    }
    return std::sqrt(sum);
}

double wiener_norm(const SpectralField& f, double tau) {
    if (tau < 0.0) throw usage_error("wiener_norm requires tau >= 0");
    double sum = 0.0;
    const int n = static_cast<int>(f.size());
    for (int j = 0; j < n; ++j) {
        const int k = f.grid().mode(static_cast<std::size_t>(j));
        sum += std::exp(tau * std::abs(k)) *
               std::abs(f.data()[static_cast<std::size_t>(j)]);
    }
    return sum;
}

double energy_teo2(const WaveState& state, double beta) {
    return beta * sobolev_norm(state.f, 4.5) + sobolev_norm(state.f, 3.5) +
           sobolev_norm(state.f_t, 3.0);
}

double energy_teo4(const SpectralField& f) {
    double sum = 0.0;
    const int n = static_cast<int>(f.size());
    for (int j = 0; j < n; ++j) {
        const int k = f.grid().mode(static_cast<std::size_t>(j));
        const double a2 = std::norm(f.data()[static_cast<std::size_t>(j)]);
        const double ak = std::abs(f.grid().wavenumber(k));
        sum += (1.0 + ak + ak * ak + ak * ak * ak) * a2;
    }
    return sum;
}

double sup_norm_deriv(const SpectralField& f, int n) {
    if (n < 0 || n > 4) throw usage_error("sup_norm_deriv requires 0 <= n <= 4");
    const SpectralField g = n == 0 ? f : deriv(f, n);
    double m = 0.0;
    for (double v : g.to_physical()) m = std::max(m, std::abs(v));
    return m;
}

double tricomi_residual(const SpectralField& f) {
    const SpectralField hf = hilbert(f);
    SpectralField res = multiply(hf, hf) - multiply(f, f);
    res -= 2.0 * hilbert(multiply(f, hf));
    res.set_coeff(0, {0.0, 0.0});
    double m = 0.0;
    for (double v : res.to_physical()) m = std::max(m, std::abs(v));
    return m;
}

double cubic_residual(const SpectralField& u) {
    const SpectralField lu = lambda_pow(u, 1.0);
    const std::vector<double> a = hilbert(multiply(lu, lu)).to_physical();
    const std::vector<double> b = lambda_pow(u, 2.0).to_physical();
    const double w = u.grid().period() / static_cast<double>(u.size());
    double integral = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) integral += a[j] * b[j];
    return std::abs(integral * w);
}

DiagnosticsRecord diagnose_field(double t, const SpectralField& u) {
    DiagnosticsRecord r;
    r.time = t;
    r.sup_u = sup_norm_deriv(u, 0);
    r.sup_ux = sup_norm_deriv(u, 1);
    r.sup_uxx = sup_norm_deriv(u, 2);
    for (double s : {1.0, 2.0, 3.0}) r.sobolev[s] = sobolev_norm(u, s);
    r.wiener[0.0] = wiener_norm(u, 0.0);
    r.energy_teo4 = energy_teo4(u);
    r.tricomi_residual = tricomi_residual(u);
    r.cubic_residual = cubic_residual(u);
    r.mean = u.mean();
    return r;
}

DiagnosticsRecord diagnose_state(double t, const WaveState& s, double beta) {
    DiagnosticsRecord r = diagnose_field(t, s.f);
    r.energy_teo2 = energy_teo2(s, beta);
    return r;
}

std::vector<std::string> diagnostics_columns() {
    return {"time",        "sup_u",       "sup_ux",      "sup_uxx",
            "sobolev_h1",  "sobolev_h2",  "sobolev_h3",  "wiener_a0",
            "energy_teo2", "energy_teo4", "tricomi_res", "cubic_res",
            "mean"};
}

std::vector<double> diagnostics_values(const DiagnosticsRecord& r) {
    return {r.time,
            r.sup_u,
            r.sup_ux,
            r.sup_uxx,
            r.sobolev.count(1.0) ? r.sobolev.at(1.0) : 0.0,
            r.sobolev.count(2.0) ? r.sobolev.at(2.0) : 0.0,
            r.sobolev.count(3.0) ? r.sobolev.at(3.0) : 0.0,
            r.wiener.count(0.0) ? r.wiener.at(0.0) : 0.0,
            r.energy_teo2,
            r.energy_teo4,
            r.tricomi_residual,
            r.cubic_residual,
            r.mean};
}

} // namespace oddwaves
