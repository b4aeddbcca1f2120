#include "oddwaves/ck_series.hpp"
#include "oddwaves/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oddwaves {

namespace {

constexpr double kE = 2.718281828459045;

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Smoothing symbol of the commutator nonlinearity; vanishes whenever
// sgn(k) == sgn(k-m).
inline double commutator_symbol(double k, double km) {
    return std::abs(k) * std::abs(km) - k * km;
}

// Instantiated convolution constant: per-term bounds of the cascade forcing
// under the exponential Wiener weights give
//   C_1 = C_2 = 1 + 2 + 4*alpha_o + 12*beta
// (sqrt|k| <= e^|k|; 2 sqrt|m| |k-m| <= 2 e^|m| e^|k-m|; |k-m|^2 <= 2! e^|k-m|;
// |k-m|^3 <= 3! e^|k-m|), and the recursion constant is 2*max(C_1, C_2).
double convolution_constant(const ModelParams& p) {
    return 2.0 * (3.0 + 4.0 * p.alpha_o + 12.0 * p.beta);
}

int smallest_admissible_r(int d) {
    int r = d + 1;
    while (static_cast<double>(d) * (r + 1) > 1.0 + static_cast<double>(r) * r)
        ++r;
    return r;
}

int integer_support(const SpectralField& f, double tol_scale) {
    int d = 0;
    const int ny = f.grid().nyquist();
    for (int k = 1; k <= ny; ++k)
        if (std::abs(f.coeff(k)) > tol_scale || std::abs(f.coeff(-k)) > tol_scale)
            d = k;
    return d;
}

std::vector<complex_t> cumulative_trapezoid(std::span<const complex_t> v,
                                            double h) {
    std::vector<complex_t> out(v.size(), complex_t{});
    for (std::size_t i = 1; i < v.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
    return out;
}

} // namespace

std::int64_t catalan(int ell) {
    if (ell < 0) throw std::out_of_range("catalan: negative order");
    if (ell > 30) throw std::out_of_range("catalan: order > 30 overflows");
    static const auto table = [] {
        std::array<std::int64_t, 31> t{};
        t[0] = 1;
        for (int l = 1; l <= 30; ++l) {
            std::int64_t s = 0;
            for (int j = 0; j < l; ++j) s += t[j] * t[l - 1 - j];
            t[l] = s;
        }
        return t;
    }();
    return table[static_cast<std::size_t>(ell)];
}

std::pair<complex_t, complex_t> ck_order0(complex_t f0_hat, complex_t f1_hat,
                                          double k, double t,
                                          const ModelParams& params) {
    if (k == 0.0) return {f0_hat + t * f1_hat, f1_hat};
    const auto [rp, rm] = dispersion_rates(k, params);
    const complex_t i{0.0, 1.0};
    const complex_t ap = f1_hat - i * rm * f0_hat;
    const complex_t am = f1_hat - i * rp * f0_hat;
    const complex_t ep = std::exp(i * rp * t);
    const complex_t em = std::exp(i * rm * t);
    const double s = rp - rm;
    return {(ap * ep - am * em) / (i * s), (ap * rp * ep - am * rm * em) / s};
}

complex_t ck_forcing(const std::vector<ModeCoeffs>& f_orders,
                     const std::vector<ModeCoeffs>& ft_orders, int ell, int k,
                     const ModelParams& params) {
    if (ell < 1) throw usage_error("ck_forcing requires ell >= 1");
    if (static_cast<int>(f_orders.size()) < ell ||
        static_cast<int>(ft_orders.size()) < ell)
        throw usage_error("ck_forcing: missing lower-order coefficients");

    const complex_t i{0.0, 1.0};
    const double kp = static_cast<double>(k);
    complex_t total{};
    for (int j = 0; j <= ell - 1; ++j) {
        const ModeCoeffs& fj = f_orders[static_cast<std::size_t>(j)];
        const ModeCoeffs& fc = f_orders[static_cast<std::size_t>(ell - 1 - j)];
        const ModeCoeffs& gj = ft_orders[static_cast<std::size_t>(j)];
        const ModeCoeffs& gc = ft_orders[static_cast<std::size_t>(ell - 1 - j)];
        const int mmax = std::max(fj.kmax, gj.kmax);
        for (int m = -mmax; m <= mmax; ++m) {
            const double mp = static_cast<double>(m);
            const double kmp = kp - mp;
            const double sym = commutator_symbol(kp, kmp);
            total += std::abs(kp) * sgn(mp) * sgn(kmp) * gj.at(m) * gc.at(k - m);
            total += sym * fj.at(m) * fc.at(k - m);
            total += i * params.alpha_o * kmp * sym * fj.at(m) * gc.at(k - m);
            total += params.beta * kmp * kmp * sym * fj.at(m) * fc.at(k - m);
        }
    }
    return total;
}

std::pair<complex_t, complex_t> ck_duhamel(std::span<const complex_t> forcing_samples,
                                           double k, double t,
                                           const ModelParams& params) {
    if (forcing_samples.size() < 2)
        throw usage_error("ck_duhamel needs at least two forcing samples");
    const std::size_t nt = forcing_samples.size();
    const double h = t / static_cast<double>(nt - 1);
    const complex_t i{0.0, 1.0};

    if (k == 0.0) {
        // r+ = r- = 0: f_tt = F, zero initial data.
        const auto once = cumulative_trapezoid(forcing_samples, h);
        const auto twice = cumulative_trapezoid(once, h);
        return {twice.back(), once.back()};
    }

    const auto [rp, rm] = dispersion_rates(k, params);
    const double s = rp - rm;
    std::vector<complex_t> gp(nt), gm(nt);
    for (std::size_t n = 0; n < nt; ++n) {
        const double sn = h * static_cast<double>(n);
        gp[n] = forcing_samples[n] * std::exp(-i * rp * sn);
        gm[n] = forcing_samples[n] * std::exp(-i * rm * sn);
    }
    const complex_t ip = cumulative_trapezoid(gp, h).back();
    const complex_t im = cumulative_trapezoid(gm, h).back();
    const complex_t ep = std::exp(i * rp * t);
    const complex_t em = std::exp(i * rm * t);
    return {(ep * ip - em * im) / (i * s), (rp * ep * ip - rm * em * im) / s};
}

CkScaling ck_scaling(const SpectralField& f0, const SpectralField& f1,
                     const ModelParams& params) {
    if (!(f0.grid() == f1.grid()))
        throw usage_error("ck_scaling: initial fields on different grids");
    if (std::abs(f0.grid().period() - two_pi) > 1e-12)
        throw usage_error("the series solver works on the 2*pi torus");
    const double scale = std::max(f0.max_abs_coeff(), f1.max_abs_coeff());
    CkScaling out;
    out.c_alpha_beta = convolution_constant(params);
    if (scale == 0.0) return out; // zero data: lambda = 0 sentinel

    if (std::abs(f0.coeff(0)) > 1e-12 * scale ||
        std::abs(f1.coeff(0)) > 1e-12 * scale)
        throw domain_error("ck_scaling requires mean-zero initial data");

    const double tol = 1e-12 * scale;
    const int d = std::max({integer_support(f0, tol), integer_support(f1, tol), 1});
    const int r = smallest_admissible_r(d);
    out.band_limit = d;
    out.r_cutoff = r;

    // Uniform-in-time per-mode bound of the order-0 Wiener norms, weighted
    // by e^{(R+1)(|k|-D)} <= 1 on the support band.
    double sum = 0.0;
    for (int k = -d; k <= d; ++k) {
        if (k == 0) continue;
        const double kp = std::abs(f0.grid().wavenumber(k));
        const auto [rp, rm] = dispersion_rates(f0.grid().wavenumber(k), params);
        const double s = rp - rm;
        const double a0 = std::abs(f0.coeff(k));
        const double a1 = std::abs(f1.coeff(k));
        const double bound_f = a0 + 2.0 * a1 / s;
        const double bound_ft =
            a1 + 2.0 * (kp + params.beta * kp * kp * kp) * a0 / s;
        const double w = std::exp((r + 1.0) * (std::abs(k) - d));
        sum += w * (bound_f + bound_ft);
    }
    out.lambda = kE * kE * out.c_alpha_beta * sum;
    return out;
}

double existence_time(const SpectralField& f0, const SpectralField& f1,
                      const ModelParams& params) {
    const CkScaling s = ck_scaling(f0, f1, params);
    if (s.lambda == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (4.0 * kE * s.lambda);
}

namespace {

// Per-order solution values on the full time mesh.
struct OrderMesh {
    int kmax = 0;
    // time-major: f[ti][k+kmax]
    std::vector<std::vector<complex_t>> f, ft;
};

std::vector<OrderMesh> compute_orders(const SpectralField& f0,
                                      const SpectralField& f1, double lambda,
                                      int d, double t, int max_order, int nt,
                                      const ModelParams& params) {
    const double h = nt > 1 ? t / static_cast<double>(nt - 1) : 0.0;
    std::vector<OrderMesh> orders;
    orders.reserve(static_cast<std::size_t>(max_order) + 1);

    for (int ell = 0; ell <= max_order; ++ell) {
        OrderMesh om;
        om.kmax = (ell + 1) * d;
        om.f.assign(static_cast<std::size_t>(nt),
                    std::vector<complex_t>(static_cast<std::size_t>(2 * om.kmax + 1)));
        om.ft = om.f;

        if (ell == 0) {
            for (int k = -om.kmax; k <= om.kmax; ++k) {
                const complex_t a0 = f0.coeff(k) / lambda;
                const complex_t a1 = f1.coeff(k) / lambda;
                for (int ti = 0; ti < nt; ++ti) {
                    const auto [fh, fth] = ck_order0(
                        a0, a1, f0.grid().wavenumber(k), h * ti, params);
                    om.f[static_cast<std::size_t>(ti)][static_cast<std::size_t>(k + om.kmax)] = fh;
                    om.ft[static_cast<std::size_t>(ti)][static_cast<std::size_t>(k + om.kmax)] = fth;
                }
            }
            orders.push_back(std::move(om));
            continue;
        }

        // Forcing at every node from the lower orders, then Duhamel with a
        // cumulative trapezoid (the oscillatory kernels are pulled out as
        // e^{ir(t-s)} = e^{irt} e^{-irs}).
        std::vector<std::vector<complex_t>> forcing(
            static_cast<std::size_t>(2 * om.kmax + 1),
            std::vector<complex_t>(static_cast<std::size_t>(nt)));
        std::vector<ModeCoeffs> fo(static_cast<std::size_t>(ell)),
            gto(static_cast<std::size_t>(ell));
        for (int j = 0; j < ell; ++j) {
            fo[static_cast<std::size_t>(j)] =
                ModeCoeffs(orders[static_cast<std::size_t>(j)].kmax);
            gto[static_cast<std::size_t>(j)] =
                ModeCoeffs(orders[static_cast<std::size_t>(j)].kmax);
        }
        for (int ti = 0; ti < nt; ++ti) {
            for (int j = 0; j < ell; ++j) {
                const OrderMesh& lo = orders[static_cast<std::size_t>(j)];
                fo[static_cast<std::size_t>(j)].c = lo.f[static_cast<std::size_t>(ti)];
                gto[static_cast<std::size_t>(j)].c = lo.ft[static_cast<std::size_t>(ti)];
            }
            for (int k = -om.kmax; k <= om.kmax; ++k)
                forcing[static_cast<std::size_t>(k + om.kmax)]
                       [static_cast<std::size_t>(ti)] =
                    ck_forcing(fo, gto, ell, k, params);
        }
        for (int k = -om.kmax; k <= om.kmax; ++k) {
            const std::vector<complex_t>& fvals =
                forcing[static_cast<std::size_t>(k + om.kmax)];
            const complex_t i{0.0, 1.0};
            const double kp = f0.grid().wavenumber(k);
            if (k == 0) {
                const auto once = cumulative_trapezoid(fvals, h);
                const auto twice = cumulative_trapezoid(once, h);
                for (int ti = 0; ti < nt; ++ti) {
                    om.f[static_cast<std::size_t>(ti)][static_cast<std::size_t>(om.kmax)] =
                        twice[static_cast<std::size_t>(ti)];
                    om.ft[static_cast<std::size_t>(ti)][static_cast<std::size_t>(om.kmax)] =
                        once[static_cast<std::size_t>(ti)];
                }
            } else {
                const auto [rp, rm] = dispersion_rates(kp, params);
                const double s = rp - rm;
                std::vector<complex_t> gp(fvals.size()), gm(fvals.size());
                for (std::size_t n = 0; n < fvals.size(); ++n) {
                    const double sn = h * static_cast<double>(n);
                    gp[n] = fvals[n] * std::exp(-i * rp * sn);
                    gm[n] = fvals[n] * std::exp(-i * rm * sn);
                }
                const auto cp = cumulative_trapezoid(gp, h);
                const auto cm = cumulative_trapezoid(gm, h);
                for (int ti = 0; ti < nt; ++ti) {
                    const double tn = h * ti;
                    const complex_t ep = std::exp(i * rp * tn);
                    const complex_t em = std::exp(i * rm * tn);
                    const complex_t ip = cp[static_cast<std::size_t>(ti)];
                    const complex_t im = cm[static_cast<std::size_t>(ti)];
                    om.f[static_cast<std::size_t>(ti)][static_cast<std::size_t>(k + om.kmax)] =
                        (ep * ip - em * im) / (i * s);
                    om.ft[static_cast<std::size_t>(ti)][static_cast<std::size_t>(k + om.kmax)] =
                        (rp * ep * ip - rm * em * im) / s;
                }
            }
        }
        orders.push_back(std::move(om));
    }
    return orders;
}

} // namespace

SeriesSolution ck_assemble(const SpectralField& f0, const SpectralField& f1,
                           double t, int max_order, const ModelParams& params,
                           const CkOptions& options) {
    if (max_order < 0) throw usage_error("ck_assemble requires max_order >= 0");
    if (t < 0.0) throw usage_error("ck_assemble requires t >= 0");
    const CkScaling scal = ck_scaling(f0, f1, params);

    SeriesSolution sol;
    sol.c_alpha_beta = scal.c_alpha_beta;
    sol.t_final = t;
    sol.state = {SpectralField(f0.grid()), SpectralField(f0.grid())};
    if (scal.lambda == 0.0) {
        sol.lambda = 1.0;
        return sol; // zero data, zero solution
    }
    sol.lambda = scal.lambda;
    sol.band_limit = scal.band_limit;

    // The ledger shells A_{R+1-l} use the R fixed by the existence argument;
    // past l = R the shell exponent simply turns negative (decaying weight).
    const int r = scal.r_cutoff;
    sol.r_cutoff = r;

    const int top_mode = (max_order + 1) * scal.band_limit;
    if (top_mode >= f0.grid().nyquist())
        throw domain_error("ck_assemble: order-" + std::to_string(max_order) +
                           " support exceeds the grid band");

    // Refine the Duhamel time mesh until the assembled state settles.
    std::vector<OrderMesh> orders;
    int nt = options.initial_time_samples;
    double prev_norm = -1.0;
    std::vector<complex_t> prev_sum;
    for (;; nt = 2 * (nt - 1) + 1) {
        orders = compute_orders(f0, f1, scal.lambda, scal.band_limit, t,
                                max_order, nt, params);
        std::vector<complex_t> sum(static_cast<std::size_t>(2 * top_mode + 1));
        double lam_pow = 1.0;
        for (int ell = 0; ell <= max_order; ++ell) {
            lam_pow *= scal.lambda;
            const OrderMesh& om = orders[static_cast<std::size_t>(ell)];
            for (int k = -om.kmax; k <= om.kmax; ++k)
                sum[static_cast<std::size_t>(k + top_mode)] +=
                    lam_pow * om.f.back()[static_cast<std::size_t>(k + om.kmax)];
        }
        double diff = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < sum.size(); ++j) {
            norm = std::max(norm, std::abs(sum[j]));
            if (!prev_sum.empty())
                diff = std::max(diff, std::abs(sum[j] - prev_sum[j]));
        }
        const bool converged =
            !prev_sum.empty() &&
            diff <= options.quad_rel_tol * std::max(norm, prev_norm);
        prev_sum = std::move(sum);
        prev_norm = norm;
        if (converged || 2 * (nt - 1) + 1 > options.max_time_samples) break;
    }

    // Assemble the state and the majorant ledger at the final time.
    double lam_pow = 1.0;
    const double dweight = static_cast<double>(scal.band_limit) * (r + 1);
    for (int ell = 0; ell <= max_order; ++ell) {
        lam_pow *= scal.lambda;
        const OrderMesh& om = orders[static_cast<std::size_t>(ell)];
        ModeCoeffs mf(om.kmax), mft(om.kmax);
        mf.c = om.f.back();
        mft.c = om.ft.back();

        CkLedgerEntry entry;
        entry.order = ell;
        const double tau = static_cast<double>(r + 1 - ell);
        for (int k = -om.kmax; k <= om.kmax; ++k) {
            const double w = std::exp(tau * std::abs(k));
            entry.wiener_f += w * std::abs(mf.at(k));
            entry.wiener_ft += w * std::abs(mft.at(k));
        }
        const double aweight =
            std::exp(-dweight * (ell + 1.0) / (1.0 + ell * static_cast<double>(r) * r));
        entry.b_value = kE * kE * scal.c_alpha_beta * aweight *
                        (entry.wiener_f + entry.wiener_ft);
        entry.catalan_bound =
            ell <= 30 ? static_cast<double>(catalan(ell)) * std::pow(t, ell)
                      : std::numeric_limits<double>::infinity();
        sol.ledger.push_back(entry);

        for (int k = -om.kmax; k <= om.kmax; ++k) {
            sol.state.f.set_coeff(
                k, sol.state.f.coeff(k) + lam_pow * mf.at(k));
            sol.state.f_t.set_coeff(
                k, sol.state.f_t.coeff(k) + lam_pow * mft.at(k));
        }
        sol.orders_f.push_back(std::move(mf));
        sol.orders_ft.push_back(std::move(mft));
    }
    return sol;
}

} // namespace oddwaves
