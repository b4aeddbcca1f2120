#ifndef ODDWAVES_OPERATORS_HPP
#define ODDWAVES_OPERATORS_HPP

#include "oddwaves/fourier.hpp"

namespace oddwaves {

// Fourier multipliers. Every operator zeroes the Nyquist mode on output.

/// Hilbert transform, c_k -> -i*sgn(k)*c_k (sgn(0) = 0).
SpectralField hilbert(const SpectralField& f);

/// Lambda^s = |k|^s for s >= 0; the mean maps to 0 for s > 0.
SpectralField lambda_pow(const SpectralField& f, double s);

/// n-th derivative, c_k -> (i*k_phys)^n * c_k.
SpectralField deriv(const SpectralField& f, int n);

/// (a + b*Lambda)^{-1}, c_k -> c_k / (a + b|k|); requires a > 0, b >= 0.
SpectralField inverse_helmholtz(const SpectralField& f, double a, double b);

/// Lambda^{-1} on mean-zero fields; throws domain_error on nonzero mean.
SpectralField inverse_lambda(const SpectralField& f);

/// 2/3-rule: zero all modes with |k| > n/3 (and the Nyquist mode).
SpectralField dealias(const SpectralField& f);

/// Pointwise physical-space product, dealiased. Both factors are dealiased
/// before the product so the quadratic aliasing lands only in the zeroed band.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// [H, f]g = H(f*g) - f*H(g), products via multiply().
SpectralField commutator_h(const SpectralField& f, const SpectralField& g);

} // namespace oddwaves

#endif
