#include "oddwaves/operators.hpp"
#include "oddwaves/errors.hpp"

#include <cmath>

namespace oddwaves {

namespace {

inline double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

template <typename Multiplier>
SpectralField apply_multiplier(const SpectralField& f, Multiplier m) {
    SpectralField out(f.grid());
    const std::size_t n = f.size();
    for (std::size_t j = 0; j < n; ++j) {
        const int k = f.grid().mode(j);
        out.data()[j] = m(k) * f.data()[j];
    }
    out.set_coeff(f.grid().nyquist(), {0.0, 0.0});
    return out;
}

} // namespace

SpectralField hilbert(const SpectralField& f) {
    return apply_multiplier(
        f, [](int k) { return complex_t{0.0, -sgn(k)}; });
}

SpectralField lambda_pow(const SpectralField& f, double s) {
    if (s < 0.0)
        throw usage_error("lambda_pow requires s >= 0; use inverse_lambda");
    const FourierGrid& g = f.grid();
    return apply_multiplier(f, [&](int k) {
        if (k == 0) return s > 0.0 ? 0.0 : 1.0;
        return std::pow(std::abs(g.wavenumber(k)), s);
    });
}

SpectralField deriv(const SpectralField& f, int n) {
    if (n < 1) throw usage_error("deriv requires n >= 1");
    const FourierGrid& g = f.grid();
    return apply_multiplier(f, [&](int k) {
        return std::pow(complex_t{0.0, g.wavenumber(k)}, n);
    });
}

SpectralField inverse_helmholtz(const SpectralField& f, double a, double b) {
    if (!(a > 0.0)) throw config_error("inverse_helmholtz requires a > 0");
    if (b < 0.0) throw config_error("inverse_helmholtz requires b >= 0");
    const FourierGrid& g = f.grid();
    return apply_multiplier(
        f, [&](int k) { return 1.0 / (a + b * std::abs(g.wavenumber(k))); });
}

SpectralField inverse_lambda(const SpectralField& f) {
    if (std::abs(f.coeff(0)) > 1e-12 * std::max(f.max_abs_coeff(), 1e-300))
        throw domain_error("inverse_lambda requires a mean-zero field");
    const FourierGrid& g = f.grid();
    return apply_multiplier(f, [&](int k) {
        return k == 0 ? 0.0 : 1.0 / std::abs(g.wavenumber(k));
    });
}

SpectralField dealias(const SpectralField& f) {
    const int cut = f.grid().dealias_cutoff();
    return apply_multiplier(
        f, [&](int k) { return std::abs(k) <= cut ? 1.0 : 0.0; });
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) throw usage_error("grid mismatch in multiply");
    const std::vector<double> a = dealias(f).to_physical();
    const std::vector<double> b = dealias(g).to_physical();
    std::vector<double> prod(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) prod[j] = a[j] * b[j];
    return dealias(SpectralField::from_physical(f.grid(), prod));
}

SpectralField commutator_h(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid()))
        throw usage_error("grid mismatch in commutator_h");
    return hilbert(multiply(f, g)) - multiply(f, hilbert(g));
}

} // namespace oddwaves
