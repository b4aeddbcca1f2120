#ifndef ODDWAVES_DIAGNOSTICS_HPP
#define ODDWAVES_DIAGNOSTICS_HPP

#include "oddwaves/models.hpp"

#include <map>
#include <string>
#include <vector>

namespace oddwaves {

/// ||f||_{H^s}^2 = sum_k (1 + |k|^{2s}) |c_k|^2, integer-mode convention.
double sobolev_norm(const SpectralField& f, double s);

/// ||f||_{A_tau} = sum_k e^{tau |k|} |c_k|.
double wiener_norm(const SpectralField& f, double tau);

/// E = beta ||f||_{H^4.5} + ||f||_{H^3.5} + ||f_t||_{H^3} (a sum of norms,
/// not a quadratic form).
double energy_teo2(const WaveState& state, double beta);

/// E = ||f||_{L^2}^2 + ||L^0.5 f||^2 + ||L f||^2 + ||L^1.5 f||^2.
double energy_teo4(const SpectralField& f);

/// Sup norm of the n-th derivative over the collocation points (n <= 4).
double sup_norm_deriv(const SpectralField& f, int n);

/// Max-norm residual of (Hf)^2 - f^2 - 2H(f Hf) after removing the mean
/// of the residual (H kills constants on the torus).
double tricomi_residual(const SpectralField& f);

/// |integral of H((Lu)^2) * L^2 u dx| by collocation quadrature.
double cubic_residual(const SpectralField& u);

struct DiagnosticsRecord {
    double time = 0.0;
    double sup_u = 0.0;
    double sup_ux = 0.0;
    double sup_uxx = 0.0;
    std::map<double, double> sobolev; ///< s -> ||.||_{H^s}
    std::map<double, double> wiener;  ///< tau -> ||.||_{A_tau}
    double energy_teo2 = 0.0;
    double energy_teo4 = 0.0;
    double tricomi_residual = 0.0;
    double cubic_residual = 0.0;
    double mean = 0.0;
};

/// Full record for a unidirectional field (energy_teo2 left at 0).
DiagnosticsRecord diagnose_field(double t, const SpectralField& u);

/// Full record for a bidirectional state; field diagnostics apply to f.
DiagnosticsRecord diagnose_state(double t, const WaveState& s, double beta);

/// Column order used by the series table and the record writer.
std::vector<std::string> diagnostics_columns();
std::vector<double> diagnostics_values(const DiagnosticsRecord& r);

} // namespace oddwaves

#endif
