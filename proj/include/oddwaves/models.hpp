#ifndef ODDWAVES_MODELS_HPP
#define ODDWAVES_MODELS_HPP

#include "oddwaves/fourier.hpp"

#include <string>

namespace oddwaves {

enum class ModelKind {
    BidirectionalFull,
    BidirectionalReduced,
    UnidirectionalF,
    UnidirectionalU,
};

bool is_bidirectional(ModelKind m);
ModelKind model_from_string(const std::string& name);
std::string to_string(ModelKind m);

struct ModelParams {
    double epsilon = 1.0;  ///< steepness
    double alpha_o = 1.0;  ///< odd Reynolds number
    double beta = 1.0;     ///< Bond number
    double mu = 0.0;       ///< artificial viscosity (unidirectional only)
    ModelKind model = ModelKind::UnidirectionalU;

    /// Throws config_error on inadmissible values.
    void validate() const;
};

/// Bidirectional unknowns (f, f_t) on a shared grid.
struct WaveState {
    SpectralField f;
    SpectralField f_t;
};

struct DispersionRates {
    double plus;
    double minus;
};

/// Characteristic frequencies of the linearized bidirectional model,
/// r± = (a_o k|k| ± sqrt(a_o^2 k^4 + 4(|k| + b |k|^3))) / 2.
DispersionRates dispersion_rates(double k, const ModelParams& params);

/// f_tt for the full bidirectional model (all quadratic terms).
SpectralField rhs_bidirectional_full(const WaveState& state,
                                     const ModelParams& params);

/// f_tt with the O(eps*alpha_o) and O(eps*beta) commutator terms dropped.
SpectralField rhs_bidirectional_reduced(const WaveState& state,
                                        const ModelParams& params);

/// f_t of the unidirectional model in f-form, resolvent (2 + a_o Lambda)
/// already inverted; params.mu adds the regularizing mu*f_xx term.
SpectralField rhs_unidirectional_f(const SpectralField& f,
                                   const ModelParams& params);

/// u_t of the unidirectional model in u = Lambda f form (Burgers form).
/// Requires mean-zero u; throws domain_error otherwise.
SpectralField rhs_unidirectional_u(const SpectralField& u,
                                   const ModelParams& params);

} // namespace oddwaves

#endif
