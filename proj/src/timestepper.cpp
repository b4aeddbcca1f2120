#include "oddwaves/timestepper.hpp"
#include "oddwaves/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oddwaves {

void StepControl::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw config_error("tolerances must be positive");
    if (!(max_dt > 0.0)) throw config_error("max_dt must be positive");
    if (max_steps <= 0) throw config_error("max_steps must be positive");
    if (!(blowup_ceiling > 0.0))
        throw config_error("blowup_ceiling must be positive");
}

namespace {

// Dormand-Prince RK5(4)7M tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

IntegrateResult integrate(const RhsFn& rhs, std::vector<double> y0, double t0,
                          double t1, const StepControl& ctrl,
                          const Observer& observer) {
    ctrl.validate();
    if (t1 == t0) throw usage_error("integrate requires t1 != t0");

    const std::size_t n = y0.size();
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    IntegrateResult res;
    res.y = std::move(y0);
    res.t = t0;

    if (!finite(res.y) || sup_norm(res.y) > ctrl.blowup_ceiling) {
        res.reason = StopReason::BlowUp;
        return res;
    }
    if (observer) observer(res.t, res.y);

    std::vector<double> k1 = rhs(res.t, res.y);
    if (!finite(k1)) {
        res.reason = StopReason::BlowUp;
        return res;
    }

    double h = ctrl.initial_dt > 0.0 ? ctrl.initial_dt
                                     : std::min(1e-3 * span, ctrl.max_dt);
    h = std::min(h, ctrl.max_dt);
    const double h_min = span * 1e-14;

    std::vector<double> ytmp(n), y5(n), err(n), k2(n), k3(n), k4(n), k5(n),
        k6(n), k7(n);
    double err_prev = 1.0;

    auto stage = [&](std::vector<double>& out, double c,
                     std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = res.y[i];
            for (const auto& [a, k] : terms) acc += dir * h * a * (*k)[i];
            ytmp[i] = acc;
        }
        out = rhs(res.t + dir * h * c, ytmp);
    };

    while (res.accepted + res.rejected < ctrl.max_steps) {
        const double remaining = std::abs(t1 - res.t);
        if (remaining <= span * 1e-15) {
            res.t = t1;
            res.reason = StopReason::Completed;
            return res;
        }
        bool last = false;
        if (h >= remaining) {
            h = remaining;
            last = true;
        }

        stage(k2, c2, {{a21, &k1}});
        stage(k3, c3, {{a31, &k1}, {a32, &k2}});
        stage(k4, c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        stage(k5, c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        stage(k6, 1.0,
              {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        for (std::size_t i = 0; i < n; ++i)
            y5[i] = res.y[i] + dir * h *
                                   (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                    b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(res.t + dir * h, y5); // FSAL stage, also the error probe

        bool bad = !finite(y5) || !finite(k7);
        double err_norm = 0.0;
        if (!bad) {
            for (std::size_t i = 0; i < n; ++i) {
                const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                      e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = ctrl.abs_tol +
                                  ctrl.rel_tol *
                                      std::max(std::abs(res.y[i]), std::abs(y5[i]));
                err_norm = std::max(err_norm, std::abs(e) / sc);
            }
            bad = !std::isfinite(err_norm);
        }

        if (bad) {
            h *= 0.25;
            ++res.rejected;
            if (h < h_min) {
                res.reason = StopReason::BlowUp;
                return res;
            }
            continue;
        }

        if (err_norm <= 1.0) {
            res.t = last ? t1 : res.t + dir * h;
            res.y.swap(y5);
            k1.swap(k7);
            ++res.accepted;
            if (sup_norm(res.y) > ctrl.blowup_ceiling) {
                res.reason = StopReason::BlowUp;
                return res;
            }
            if (observer) observer(res.t, res.y);
            err_prev = std::max(err_norm, 1e-10);
        } else {
            ++res.rejected;
        }

        // PI controller (Gustafsson) on the max-norm error estimate.
        const double e_clip = std::max(err_norm, 1e-10);
        double fac = 0.9 * std::pow(e_clip, -0.7 / 5.0) *
                     std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, err_norm <= 1.0 ? 5.0 : 1.0);
        h = std::min(h * fac, ctrl.max_dt);
        if (h < h_min) {
            res.reason = StopReason::BlowUp;
            return res;
        }
    }

    res.reason = StopReason::StepLimit;
    return res;
}

std::vector<double> pack_state(const WaveState& s) {
    std::vector<double> y = s.f.to_physical();
    const std::vector<double> g = s.f_t.to_physical();
    y.insert(y.end(), g.begin(), g.end());
    return y;
}

WaveState unpack_state(const FourierGrid& grid, const std::vector<double>& y) {
    const std::size_t n = grid.size();
    if (y.size() != 2 * n) throw usage_error("packed state has wrong length");
    std::span<const double> all(y);
    return {SpectralField::from_physical(grid, all.subspan(0, n)),
            SpectralField::from_physical(grid, all.subspan(n, n))};
}

std::vector<double> pack_field(const SpectralField& f) {
    return f.to_physical();
}

SpectralField unpack_field(const FourierGrid& grid,
                           const std::vector<double>& y) {
    if (y.size() != grid.size())
        throw usage_error("packed field has wrong length");
    return SpectralField::from_physical(grid, y);
}

RhsFn lift_second_order(const FourierGrid& grid, const ModelParams& params) {
    if (!is_bidirectional(params.model))
        throw usage_error("lift_second_order needs a bidirectional model");
    const bool full = params.model == ModelKind::BidirectionalFull;
    return [grid, params, full](double, const std::vector<double>& y) {
        const WaveState s = unpack_state(grid, y);
        const SpectralField acc = full ? rhs_bidirectional_full(s, params)
                                       : rhs_bidirectional_reduced(s, params);
        const std::size_t n = grid.size();
        std::vector<double> dy(2 * n);
        std::copy(y.begin() + static_cast<long>(n), y.end(), dy.begin());
        const std::vector<double> a = acc.to_physical();
        std::copy(a.begin(), a.end(), dy.begin() + static_cast<long>(n));
        return dy;
    };
}

RhsFn make_unidirectional_rhs(const FourierGrid& grid,
                              const ModelParams& params) {
    if (is_bidirectional(params.model))
        throw usage_error("make_unidirectional_rhs needs a unidirectional model");
    const bool fform = params.model == ModelKind::UnidirectionalF;
    return [grid, params, fform](double, const std::vector<double>& y) {
        const SpectralField v = unpack_field(grid, y);
        const SpectralField dv = fform ? rhs_unidirectional_f(v, params)
                                       : rhs_unidirectional_u(v, params);
        return dv.to_physical();
    };
}

RhsFn make_model_rhs(const FourierGrid& grid, const ModelParams& params) {
    return is_bidirectional(params.model)
               ? lift_second_order(grid, params)
               : make_unidirectional_rhs(grid, params);
}

} // namespace oddwaves
