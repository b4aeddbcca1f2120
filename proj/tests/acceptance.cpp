// End-to-end acceptance checks: one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include "oddwaves/ck_series.hpp"
#include "oddwaves/diagnostics.hpp"
#include "oddwaves/models.hpp"
#include "oddwaves/operators.hpp"
#include "oddwaves/timestepper.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace oddwaves;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail,
            double seconds) {
    std::printf("criterion %d (%s): %s  [%s; %.1fs]\n", id, title,
                ok ? "PASS" : "FAIL", detail.c_str(), seconds);
    if (!ok) ++failures;
}

void run(int id, const char* title,
         const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(id, title, ok, detail, secs);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double sup_diff(const SpectralField& a, const SpectralField& b) {
    const auto pa = a.to_physical();
    const auto pb = b.to_physical();
    double m = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i)
        m = std::max(m, std::abs(pa[i] - pb[i]));
    return m;
}

// ---- criterion 1: elementary operator identities --------------------------

std::pair<bool, std::string> operator_exactness() {
    const FourierGrid g = make_grid(256);
    double worst = sup_diff(hilbert(make_sine(g, 1, 1.0)),
                            make_cosine(g, 1, -1.0));

    std::mt19937 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const SpectralField f =
            oracles::to_field(g, oracles::random_real_field(rng, 40));
        worst = std::max(worst, sup_diff(hilbert(hilbert(f)), -1.0 * f));
        worst = std::max(worst,
                         sup_diff(lambda_pow(f, 1.0), hilbert(deriv(f, 1))));
    }
    return {worst < 1e-12, "max residual " + fmt(worst)};
}

// ---- criterion 2: linear dispersion rates ---------------------------------

std::pair<bool, std::string> dispersion_fit() {
    double worst = 0.0;
    const FourierGrid g = make_grid(32);
    for (int k : {1, 2, 5}) {
        for (double a : {0.0, 1.0}) {
            for (double b : {0.0, 1.0}) {
                // nonlinearity off: epsilon = 0 leaves only the dispersive part
                const ModelParams p{0.0, a, b, 0.0,
                                    ModelKind::BidirectionalFull};
                const SpectralField f0 = make_sine(g, k, 1.0);
                const SpectralField f1(g);
                StepControl ctrl;
                ctrl.rel_tol = 1e-10;
                ctrl.abs_tol = 1e-12;

                // four equispaced samples of the mode coefficient
                const double h = 0.01;
                std::vector<complex_t> c;
                c.push_back(f0.coeff(k));
                for (int j = 1; j <= 3; ++j) {
                    const auto res =
                        integrate(lift_second_order(g, p),
                                  pack_state({f0, f1}), 0.0, j * h, ctrl);
                    if (res.reason != StopReason::Completed)
                        return {false, "integration failed"};
                    c.push_back(unpack_state(g, res.y).f.coeff(k));
                }

                // two-term Prony fit: c_{j+2} = p1 c_{j+1} + p0 c_j
                const complex_t det = c[1] * c[1] - c[0] * c[2];
                const complex_t p1 = (c[1] * c[2] - c[0] * c[3]) / det;
                const complex_t p0 = (c[1] * c[3] - c[2] * c[2]) / det;
                const complex_t disc = std::sqrt(p1 * p1 + 4.0 * p0);
                const complex_t z1 = 0.5 * (p1 + disc);
                const complex_t z2 = 0.5 * (p1 - disc);
                // z = e^{i r h}
                double r1 = std::arg(z1) / h;
                double r2 = std::arg(z2) / h;
                if (r1 < r2) std::swap(r1, r2);

                const auto [rp, rm] = dispersion_rates(k, p);
                worst = std::max(worst, std::abs(r1 - rp) / std::abs(rp));
                worst = std::max(worst, std::abs(r2 - rm) / std::abs(rm));
            }
        }
    }
    return {worst < 1e-6, "max relative frequency error " + fmt(worst)};
}

// ---- criterion 3: quadratic/cubic structural identities -------------------

std::pair<bool, std::string> residual_suites() {
    const FourierGrid g = make_grid(256);
    std::mt19937 rng(103);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralField f =
            oracles::to_field(g, oracles::random_real_field(rng, 16));
        const double sup = sup_norm_deriv(f, 0);
        worst = std::max(worst, tricomi_residual(f) / (1.0 + sup * sup));
        const double h1 = sobolev_norm(f, 1.0);
        worst = std::max(worst, cubic_residual(f) / (1.0 + h1 * h1 * h1));
    }
    return {worst < 1e-10, "max scaled residual " + fmt(worst)};
}

// ---- criterion 4: commutator against the convolution oracle ---------------

std::pair<bool, std::string> commutator_oracle() {
    const FourierGrid g = make_grid(256);
    std::mt19937 rng(107);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto fm = oracles::random_real_field(rng, 8);
        const auto gm = oracles::random_real_field(rng, 8);
        const SpectralField got =
            commutator_h(oracles::to_field(g, fm), oracles::to_field(g, gm));
        worst = std::max(worst,
                         oracles::field_diff(got, oracles::commutator_h(fm, gm)));
    }
    if (worst >= 1e-11) return {false, "oracle residual " + fmt(worst)};

    // smoothing symbol: |k||k-m| - k(k-m) >= 0, zero when sgn(k) = sgn(k-m)
    for (int k = -32; k <= 32; ++k) {
        for (int m = -32; m <= 32; ++m) {
            const double km = k - m;
            const double s = std::abs(static_cast<double>(k)) * std::abs(km) -
                             static_cast<double>(k) * km;
            if (s < 0.0) return {false, "symbol negative"};
            const auto sgn = [](double v) { return v > 0 ? 1 : v < 0 ? -1 : 0; };
            if (sgn(static_cast<double>(k)) == sgn(km) && k != 0 && km != 0.0 &&
                s != 0.0)
                return {false, "symbol does not vanish on equal signs"};
        }
    }
    return {true, "oracle residual " + fmt(worst) + ", symbol identity holds"};
}

// ---- criterion 5: power series vs adaptive integration --------------------

std::pair<bool, std::string> series_cross_validation() {
    const FourierGrid g = make_grid(128);
    const ModelParams p{1.0, 1.0, 1.0, 0.0, ModelKind::BidirectionalFull};
    const SpectralField f0 = make_sine(g, 1, 0.01);
    const SpectralField f1(g);
    const double tstar = existence_time(f0, f1, p);
    const double t = 0.05 * tstar;

    const SeriesSolution sol = ck_assemble(f0, f1, t, 12, p);
    StepControl ctrl;
    ctrl.rel_tol = 1e-12;
    ctrl.abs_tol = 1e-14;
    const auto res =
        integrate(lift_second_order(g, p), pack_state({f0, f1}), 0.0, t, ctrl);
    if (res.reason != StopReason::Completed) return {false, "integration failed"};
    const WaveState ref = unpack_state(g, res.y);

    const double diff = sup_diff(sol.state.f, ref.f);
    bool ledger_ok = true;
    for (const auto& e : sol.ledger)
        if (e.b_value > e.catalan_bound * (1.0 + 1e-9)) ledger_ok = false;
    return {diff < 1e-4 && ledger_ok,
            "series vs integrator " + fmt(diff) + ", ledger " +
                (ledger_ok ? "within Catalan bound" : "VIOLATED")};
}

// ---- unidirectional evolution helper --------------------------------------

struct SampledRun {
    bool completed = true;
    std::vector<SpectralField> states; ///< at the sample times, data excluded
};

SampledRun evolve_sampled(const FourierGrid& g, const ModelParams& p,
                          const SpectralField& u0, double t_final, int nseg,
                          const StepControl& ctrl) {
    SampledRun out;
    const RhsFn rhs = make_unidirectional_rhs(g, p);
    std::vector<double> y = pack_field(u0);
    for (int j = 0; j < nseg; ++j) {
        const auto res = integrate(rhs, y, j * t_final / nseg,
                                   (j + 1) * t_final / nseg, ctrl);
        if (res.reason != StopReason::Completed) {
            out.completed = false;
            return out;
        }
        y = res.y;
        out.states.push_back(unpack_field(g, y));
    }
    return out;
}

// ---- criterion 6: moderate steepening case --------------------------------

std::pair<bool, std::string> case1_bounds() {
    const FourierGrid g = make_grid(1024);
    const ModelParams p{1.0, 1.0, 1.0, 0.0, ModelKind::UnidirectionalU};
    const SampledRun run =
        evolve_sampled(g, p, make_sine(g, 1, -1.0), 10.0, 50, {});
    if (!run.completed) return {false, "blow-up signal raised"};

    std::vector<double> v{1.0}; // sup|u_x| of the data
    double max_ux = 1.0, max_uxx = 1.0;
    for (const auto& u : run.states) {
        v.push_back(sup_norm_deriv(u, 1));
        max_ux = std::max(max_ux, v.back());
        max_uxx = std::max(max_uxx, sup_norm_deriv(u, 2));
    }
    const std::size_t n = v.size();
    const bool tail_up = v[n - 1] > v[n - 2] && v[n - 2] > v[n - 3] &&
                         v[n - 3] > v[n - 4];
    const bool ok = tail_up && max_ux < 1e3 && max_uxx < 1e5;
    return {ok, "max sup|u_x| " + fmt(max_ux) + ", max sup|u_xx| " +
                    fmt(max_uxx) + (tail_up ? ", increasing tail" :
                                             ", tail NOT increasing")};
}

// ---- criterion 7: oscillatory steep case ----------------------------------

std::pair<bool, std::string> case2_oscillation() {
    const FourierGrid g = make_grid(2048);
    const ModelParams p{0.1, 1.0, 1.0, 0.0, ModelKind::UnidirectionalU};
    const SampledRun run =
        evolve_sampled(g, p, make_sine(g, 10, -10.0), 5.0, 100, {});
    if (!run.completed) return {false, "blow-up signal raised"};

    std::vector<double> v{100.0}; // sup|u_x| of the data
    for (const auto& u : run.states) v.push_back(sup_norm_deriv(u, 1));
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) ++maxima;
    return {maxima >= 3,
            std::to_string(maxima) + " interior local maxima of sup|u_x|"};
}

// ---- criterion 8: energy monitors -----------------------------------------

std::pair<bool, std::string> energy_monitors() {
    // second-order reduced model: small data keeps E(t) <= 2 E(0) on [0, 1]
    const FourierGrid g = make_grid(256);
    const ModelParams p{1.0, 1.0, 1.0, 0.0, ModelKind::BidirectionalReduced};
    WaveState s{make_sine(g, 1, 0.035), SpectralField(g)};
    const double e0 = energy_teo2(s, p.beta);
    if (e0 > 0.1) return {false, "E(0) = " + fmt(e0) + " exceeds 0.1"};

    StepControl ctrl;
    ctrl.rel_tol = 1e-8;
    ctrl.abs_tol = 1e-10;
    double emax = e0;
    std::vector<double> y = pack_state(s);
    const RhsFn rhs = lift_second_order(g, p);
    for (int j = 0; j < 20; ++j) {
        const auto res = integrate(rhs, y, j * 0.05, (j + 1) * 0.05, ctrl);
        if (res.reason != StopReason::Completed)
            return {false, "second-order run failed"};
        y = res.y;
        emax = std::max(emax, energy_teo2(unpack_state(g, y), p.beta));
    }
    if (emax > 2.0 * e0)
        return {false, "E grew to " + fmt(emax) + " > 2 E(0)"};

    // regularized unidirectional model: fitted C in dE/dt <= C E^2 is
    // resolution independent
    auto fit_c = [&](std::size_t n) {
        const FourierGrid gu = make_grid(n);
        const ModelParams pu{1.0, 1.0, 1.0, 0.1, ModelKind::UnidirectionalU};
        const SampledRun run =
            evolve_sampled(gu, pu, make_sine(gu, 1, 0.5), 1.0, 40, ctrl);
        std::vector<double> e{energy_teo4(make_sine(gu, 1, 0.5))};
        for (const auto& u : run.states) e.push_back(energy_teo4(u));
        const double dt = 1.0 / 40.0;
        double c = -1e300;
        for (std::size_t i = 1; i + 1 < e.size(); ++i)
            c = std::max(c, (e[i + 1] - e[i - 1]) / (2.0 * dt) / (e[i] * e[i]));
        return c;
    };
    const double c256 = fit_c(256);
    const double c512 = fit_c(512);
    const double drift = std::abs(c256 - c512) / std::max(std::abs(c256), 1e-30);
    const bool ok = std::isfinite(c256) && drift < 0.05;
    return {ok, "E(t)/E(0) peak " + fmt(emax / e0) + ", fitted C " +
                    fmt(c256) + ", resolution drift " + fmt(drift)};
}

// ---- criterion 9: self-convergence ----------------------------------------

std::pair<bool, std::string> self_convergence() {
    // steep oscillatory setup, far-field window tau = eps * t with t in [0,1];
    // runs compared on the shared resolved band of the coarser grid
    const ModelParams p{0.1, 1.0, 1.0, 0.0, ModelKind::UnidirectionalU};
    const double tau = 0.1;
    const int band = static_cast<int>(512) / 3;
    const FourierGrid fine = make_grid(2048);

    auto series = [&](std::size_t n, double rtol) {
        StepControl ctrl;
        ctrl.rel_tol = rtol;
        ctrl.abs_tol = rtol * 1e-2;
        const FourierGrid g = make_grid(n);
        const SampledRun run =
            evolve_sampled(g, p, make_sine(g, 10, -10.0), tau, 10, ctrl);
        std::vector<double> out;
        for (const auto& u : run.states) {
            SpectralField uf(fine);
            for (int k = 1; k <= band; ++k)
                uf.set_mode_pair(k, u.coeff(k));
            out.push_back(sup_norm_deriv(uf, 0));
            out.push_back(sup_norm_deriv(uf, 1));
            out.push_back(sobolev_norm(uf, 1.0));
            out.push_back(sobolev_norm(uf, 3.0));
        }
        return out;
    };
    auto reldiff = [](const std::vector<double>& a,
                      const std::vector<double>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a[i] - b[i]) /
                                std::max(std::abs(a[i]), 1e-30));
        return m;
    };

    const auto coarse = series(512, 1e-10);
    const auto refined = series(1024, 1e-10);
    const auto tighter = series(512, 5e-11);
    const double grid_change = reldiff(coarse, refined);
    const double tol_change = reldiff(coarse, tighter);
    const bool ok = grid_change < 1e-6 && tol_change < 10.0 * 5e-11;
    return {ok, "grid doubling " + fmt(grid_change) + ", tolerance halving " +
                    fmt(tol_change)};
}

} // namespace

int main() {
    run(1, "operator exactness", operator_exactness);
    run(2, "dispersion reproduction", dispersion_fit);
    run(3, "quadratic and cubic identities", residual_suites);
    run(4, "commutator oracle equivalence", commutator_oracle);
    run(5, "series cross-validation", series_cross_validation);
    run(6, "steepening case bounds", case1_bounds);
    run(7, "oscillatory case", case2_oscillation);
    run(8, "energy monitors", energy_monitors);
    run(9, "self-convergence", self_convergence);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
