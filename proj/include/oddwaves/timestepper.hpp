#ifndef ODDWAVES_TIMESTEPPER_HPP
#define ODDWAVES_TIMESTEPPER_HPP

#include "oddwaves/models.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace oddwaves {

struct StepControl {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_dt = std::numeric_limits<double>::infinity();
    double initial_dt = 0.0; ///< 0 = choose automatically
    long max_steps = 2'000'000;
    double blowup_ceiling = 1e12; ///< sup-norm ceiling before declaring blow-up

    void validate() const;
};

enum class StopReason { Completed, BlowUp, StepLimit };

struct IntegrateResult {
    std::vector<double> y;
    double t = 0.0;
    StopReason reason = StopReason::Completed;
    long accepted = 0;
    long rejected = 0;
};

using RhsFn = std::function<std::vector<double>(double, const std::vector<double>&)>;
using Observer = std::function<void(double, const std::vector<double>&)>;

/** Adaptive Dormand-Prince 5(4) integration with PI step-size control.
 *
 *  The observer (if any) is called at t0 and at every accepted step; the
 *  last call is exactly at t1 on completion. Supports t1 < t0.
 *  NaN/Inf states or a sup-norm above ctrl.blowup_ceiling stop the run
 *  with StopReason::BlowUp carrying the last good state and time.
 */
IntegrateResult integrate(const RhsFn& rhs, std::vector<double> y0, double t0,
                          double t1, const StepControl& ctrl,
                          const Observer& observer = {});

// --- adapters between model states and flat ODE vectors (physical samples) ---

std::vector<double> pack_state(const WaveState& s);
WaveState unpack_state(const FourierGrid& grid, const std::vector<double>& y);

std::vector<double> pack_field(const SpectralField& f);
SpectralField unpack_field(const FourierGrid& grid, const std::vector<double>& y);

/// First-order system (f, g)' = (g, rhs_bidirectional_*(f, g)) on packed
/// states; throws usage_error for unidirectional params.model.
RhsFn lift_second_order(const FourierGrid& grid, const ModelParams& params);

/// Packed rhs for the selected unidirectional model.
RhsFn make_unidirectional_rhs(const FourierGrid& grid, const ModelParams& params);

/// Packed rhs for any params.model.
RhsFn make_model_rhs(const FourierGrid& grid, const ModelParams& params);

} // namespace oddwaves

#endif
