#include "oddwaves/models.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/operators.hpp"

#include <cmath>

namespace oddwaves {

bool is_bidirectional(ModelKind m) {
    return m == ModelKind::BidirectionalFull ||
           m == ModelKind::BidirectionalReduced;
}

ModelKind model_from_string(const std::string& name) {
    if (name == "bidirectional_full") return ModelKind::BidirectionalFull;
    if (name == "bidirectional_reduced") return ModelKind::BidirectionalReduced;
    if (name == "unidirectional_f") return ModelKind::UnidirectionalF;
    if (name == "unidirectional_u") return ModelKind::UnidirectionalU;
    throw config_error("unknown model '" + name + "'");
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::BidirectionalFull: return "bidirectional_full";
        case ModelKind::BidirectionalReduced: return "bidirectional_reduced";
        case ModelKind::UnidirectionalF: return "unidirectional_f";
        case ModelKind::UnidirectionalU: return "unidirectional_u";
    }
    return "?";
}

void ModelParams::validate() const {
    if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
    if (alpha_o < 0.0) throw config_error("alpha_o must be nonnegative");
    if (beta < 0.0) throw config_error("beta must be nonnegative");
    if (mu < 0.0) throw config_error("mu must be nonnegative");
    if (mu != 0.0 && is_bidirectional(model))
        throw config_error("mu is a unidirectional regularization; "
                           "it must be 0 for bidirectional models");
}

DispersionRates dispersion_rates(double k, const ModelParams& params) {
    const double ak = std::abs(k);
    const double disc = params.alpha_o * params.alpha_o * ak * ak * ak * ak +
                        4.0 * (ak + params.beta * ak * ak * ak);
    const double root = std::sqrt(disc);
    const double cross = params.alpha_o * k * ak;
    return {0.5 * (cross + root), 0.5 * (cross - root)};
}

namespace {

void check_state(const WaveState& s) {
    if (!(s.f.grid() == s.f_t.grid()))
        throw usage_error("WaveState fields live on different grids");
}

// Common part of both bidirectional right sides:
//   -Lambda f - beta Lambda^3 f + alpha_o Lambda d_x f_t
//   + eps d_x [ -H((H f_t)^2) + [H,f] Lambda f ]
SpectralField rhs_bidirectional_core(const WaveState& s,
                                     const ModelParams& p) {
    SpectralField acc = -1.0 * lambda_pow(s.f, 1.0);
    acc -= p.beta * lambda_pow(s.f, 3.0);
    acc += p.alpha_o * lambda_pow(deriv(s.f_t, 1), 1.0);

    const SpectralField hft = hilbert(s.f_t);
    SpectralField nl = -1.0 * hilbert(multiply(hft, hft));
    nl += commutator_h(s.f, lambda_pow(s.f, 1.0));
    acc += p.epsilon * deriv(nl, 1);
    return acc;
}

} // namespace

SpectralField rhs_bidirectional_full(const WaveState& state,
                                     const ModelParams& params) {
    check_state(state);
    SpectralField acc = rhs_bidirectional_core(state, params);
    SpectralField extra =
        -params.alpha_o *
        commutator_h(state.f, lambda_pow(deriv(state.f_t, 1), 1.0));
    extra += params.beta * commutator_h(state.f, lambda_pow(state.f, 3.0));
    acc += params.epsilon * deriv(extra, 1);
    return acc;
}

SpectralField rhs_bidirectional_reduced(const WaveState& state,
                                        const ModelParams& params) {
    check_state(state);
    return rhs_bidirectional_core(state, params);
}

SpectralField rhs_unidirectional_f(const SpectralField& f,
                                   const ModelParams& params) {
    SpectralField rhs = deriv(f, 1) + hilbert(f);
    rhs += (params.alpha_o - params.beta) * hilbert(deriv(f, 2));
    rhs *= 1.0 / params.epsilon;

    const SpectralField lf = lambda_pow(f, 1.0);
    rhs += hilbert(multiply(lf, lf));
    rhs -= commutator_h(f, lf);
    rhs += (params.alpha_o - params.beta) * commutator_h(f, lambda_pow(f, 3.0));
    if (params.mu != 0.0) rhs += params.mu * deriv(f, 2);

    return inverse_helmholtz(rhs, 2.0, params.alpha_o);
}

SpectralField rhs_unidirectional_u(const SpectralField& u,
                                   const ModelParams& params) {
    const SpectralField f = inverse_lambda(u); // throws on nonzero mean
    SpectralField rhs = deriv(u, 1) + hilbert(u);
    rhs += (params.alpha_o - params.beta) * hilbert(deriv(u, 2));
    rhs *= 1.0 / params.epsilon;

    rhs -= deriv(multiply(u, u), 1);
    rhs -= lambda_pow(commutator_h(f, u), 1.0);
    rhs += (params.alpha_o - params.beta) *
           lambda_pow(commutator_h(f, lambda_pow(u, 2.0)), 1.0);
    if (params.mu != 0.0) rhs += params.mu * deriv(u, 2);

    return inverse_helmholtz(rhs, 2.0, params.alpha_o);
}

} // namespace oddwaves
