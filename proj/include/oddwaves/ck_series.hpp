#ifndef ODDWAVES_CK_SERIES_HPP
#define ODDWAVES_CK_SERIES_HPP

#include "oddwaves/models.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace oddwaves {

/// Dense spectrum over the integer band |k| <= kmax.
struct ModeCoeffs {
    int kmax = 0;
    std::vector<complex_t> c; ///< size 2*kmax+1, slot k+kmax

    ModeCoeffs() : c(1, complex_t{}) {}
    explicit ModeCoeffs(int kmax_)
        : kmax(kmax_), c(static_cast<std::size_t>(2 * kmax_ + 1)) {}

    complex_t at(int k) const {
        return (k < -kmax || k > kmax) ? complex_t{}
                                       : c[static_cast<std::size_t>(k + kmax)];
    }
    complex_t& ref(int k) { return c[static_cast<std::size_t>(k + kmax)]; }
};

/// ell-th Catalan number via the convolution recursion C_l = sum C_j C_{l-1-j}.
/// Exact in 64 bits up to ell = 30; throws std::out_of_range beyond.
std::int64_t catalan(int ell);

/** Closed-form order-0 mode solution of
 *    f_tt = -(|k| + beta |k|^3) f + i alpha_o k |k| f_t,
 *  returning (f_hat, f_t_hat) at time t. k = 0 degenerates to the exact
 *  polynomial solution f_hat = f0 + t f1.
 */
std::pair<complex_t, complex_t> ck_order0(complex_t f0_hat, complex_t f1_hat,
                                          double k, double t,
                                          const ModelParams& params);

/** Forcing F(k) of the order-ell cascade equation from the lower-order
 *  spectra (all evaluated at one time). f_orders/ft_orders hold orders
 *  0..ell-1; throws usage_error if fewer are supplied.
 */
complex_t ck_forcing(const std::vector<ModeCoeffs>& f_orders,
                     const std::vector<ModeCoeffs>& ft_orders, int ell, int k,
                     const ModelParams& params);

/** Duhamel solution of the forced mode equation with zero initial data.
 *  forcing_samples holds F(k, s) on the uniform mesh s = 0..t (>= 2 nodes);
 *  composite-trapezoid quadrature. k = 0 uses the double time integral.
 */
std::pair<complex_t, complex_t> ck_duhamel(std::span<const complex_t> forcing_samples,
                                           double k, double t,
                                           const ModelParams& params);

/// Scaling data fixed by the constructive existence argument.
struct CkScaling {
    double lambda = 0.0;      ///< series scale; 0 for zero data
    int band_limit = 0;       ///< D, integer support of the data
    int r_cutoff = 0;         ///< smallest admissible R (R > D, D(R+1) <= 1+R^2)
    double c_alpha_beta = 0.0;///< instantiated convolution constant
};

CkScaling ck_scaling(const SpectralField& f0, const SpectralField& f1,
                     const ModelParams& params);

/// T* = 1/(4e * lambda); +inf sentinel for zero data. Requires mean-zero,
/// band-limited data (throws domain_error otherwise).
double existence_time(const SpectralField& f0, const SpectralField& f1,
                      const ModelParams& params);

struct CkLedgerEntry {
    int order = 0;
    double wiener_f = 0.0;     ///< ||f^(l)(t)||_{A_{R+1-l}}
    double wiener_ft = 0.0;    ///< ||f_t^(l)(t)||_{A_{R+1-l}}
    double b_value = 0.0;      ///< B_l(t)
    double catalan_bound = 0.0;///< C_l t^l
};

struct CkOptions {
    int initial_time_samples = 129;
    int max_time_samples = 8193;
    double quad_rel_tol = 1e-9;
};

struct SeriesSolution {
    double lambda = 0.0;
    int band_limit = 0;  ///< D
    int r_cutoff = 0;    ///< R used by the majorant ledger shells
    double c_alpha_beta = 0.0;
    double t_final = 0.0;
    std::vector<ModeCoeffs> orders_f;  ///< unscaled f^(l) at t_final
    std::vector<ModeCoeffs> orders_ft;
    std::vector<CkLedgerEntry> ledger;
    WaveState state; ///< sum_l lambda^{l+1} (f^(l), f_t^(l)) at t_final
};

/** Power-series solution of the full bidirectional model up to max_order,
 *  evaluated at time t, with the per-order Wiener-norm majorant ledger.
 *  Initial data must be mean-zero and band-limited so that the order-L
 *  support (L+1)*D stays strictly inside the grid band.
 */
SeriesSolution ck_assemble(const SpectralField& f0, const SpectralField& f1,
                           double t, int max_order, const ModelParams& params,
                           const CkOptions& options = {});

} // namespace oddwaves

#endif
