#include "oddwaves/ck_series.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/timestepper.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace oddwaves;

namespace {

const RhsFn decay = [](double, const std::vector<double>& y) {
    return std::vector<double>{-y[0]};
};

ModelParams linear_bidirectional(double a = 1.0, double b = 1.0) {
    // epsilon = 0 switches the quadratic terms off exactly
    return ModelParams{0.0, a, b, 0.0, ModelKind::BidirectionalFull};
}

} // namespace

TEST_CASE("scalar decay equation hits the closed form") {
    const auto res = integrate(decay, {1.0}, 0.0, 1.0, {});
    CHECK(res.reason == StopReason::Completed);
    CHECK(res.t == 1.0);
    CHECK(std::abs(res.y[0] - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("control validation") {
    StepControl bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = {};
    bad.max_dt = -1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = {};
    bad.max_steps = 0;
    CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("single linear mode follows the closed-form evolution") {
    const FourierGrid g = make_grid(64);
    const ModelParams p = linear_bidirectional();
    const SpectralField f0 = make_sine(g, 1, 1.0);
    const SpectralField f1(g);

    StepControl ctrl;
    ctrl.rel_tol = 1e-10;
    ctrl.abs_tol = 1e-12;
    const double t = 1.7;
    const auto res =
        integrate(lift_second_order(g, p), pack_state({f0, f1}), 0.0, t, ctrl);
    REQUIRE(res.reason == StopReason::Completed);
    const WaveState s = unpack_state(g, res.y);

    const auto [fa, fb] = ck_order0(f0.coeff(1), 0.0, 1.0, t, p);
    CHECK(std::abs(s.f.coeff(1) - fa) < 1e-8);
    CHECK(std::abs(s.f_t.coeff(1) - fb) < 1e-8);

    // the closed form itself against an independent fixed-step RK4 oracle
    const auto [oa, ob] = oracles::rk4_mode(
        [&](double, complex_t y, complex_t v) {
            return std::pair<complex_t, complex_t>{
                v, -2.0 * y + complex_t{0.0, 1.0} * v};
        },
        f0.coeff(1), 0.0, 0.0, t, 20000);
    CHECK(std::abs(fa - oa) < 1e-10);
    CHECK(std::abs(fb - ob) < 1e-10);
}

TEST_CASE("NaN in the rhs raises the blow-up signal") {
    const RhsFn bad = [](double, const std::vector<double>& y) {
        return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
    };
    const auto res = integrate(bad, {1.0}, 0.0, 1.0, {});
    CHECK(res.reason == StopReason::BlowUp);
    CHECK(res.y[0] == 1.0); // last good state is the initial one
}

TEST_CASE("sup-norm ceiling raises the blow-up signal") {
    const RhsFn grow = [](double, const std::vector<double>& y) {
        return std::vector<double>{10.0 * y[0]};
    };
    StepControl ctrl;
    ctrl.blowup_ceiling = 1e3;
    const auto res = integrate(grow, {1.0}, 0.0, 5.0, ctrl);
    CHECK(res.reason == StopReason::BlowUp);
    CHECK(res.t < 5.0);
    CHECK(std::isfinite(res.y[0]));
}

TEST_CASE("step limit is reported") {
    StepControl ctrl;
    ctrl.max_steps = 3;
    ctrl.max_dt = 1e-3;
    const auto res = integrate(decay, {1.0}, 0.0, 1.0, ctrl);
    CHECK(res.reason == StopReason::StepLimit);
    CHECK(res.t < 1.0);
}

TEST_CASE("tightening rel_tol reduces the error") {
    // nonstiff scalar problem so accuracy, not stability, limits the step
    const RhsFn osc = [](double t, const std::vector<double>& y) {
        return std::vector<double>{y[1], -y[0]};
    };
    auto err_at = [&](double tol) {
        StepControl ctrl;
        ctrl.rel_tol = tol;
        ctrl.abs_tol = tol * 1e-2;
        const auto res = integrate(osc, {1.0, 0.0}, 0.0, 20.0, ctrl);
        REQUIRE(res.reason == StopReason::Completed);
        return std::hypot(res.y[0] - std::cos(20.0), res.y[1] + std::sin(20.0));
    };
    const double e1 = err_at(1e-4);
    const double e2 = err_at(1e-6);
    CHECK(e1 > 1e-12);
    CHECK(e2 < e1 / 2.0);
}

TEST_CASE("time reversal on the conservative linear system") {
    const FourierGrid g = make_grid(64);
    const ModelParams p = linear_bidirectional(0.5, 2.0);
    const SpectralField f0 = make_sine(g, 2, 0.3) + make_cosine(g, 3, 0.2);
    const SpectralField f1 = make_sine(g, 1, 0.1);

    StepControl ctrl;
    ctrl.rel_tol = 1e-10;
    ctrl.abs_tol = 1e-12;
    const auto fwd = integrate(lift_second_order(g, p), pack_state({f0, f1}),
                               0.0, 2.0, ctrl);
    REQUIRE(fwd.reason == StopReason::Completed);
    const auto back =
        integrate(lift_second_order(g, p), fwd.y, 2.0, 0.0, ctrl);
    REQUIRE(back.reason == StopReason::Completed);
    const WaveState s = unpack_state(g, back.y);
    CHECK((s.f - f0).max_abs_coeff() < 1e-6);
    CHECK((s.f_t - f1).max_abs_coeff() < 1e-6);
}

TEST_CASE("observer sees increasing times ending exactly at t1") {
    std::vector<double> times;
    const auto res = integrate(
        decay, {1.0}, 0.0, 0.5, {},
        [&](double t, const std::vector<double>&) { times.push_back(t); });
    REQUIRE(res.reason == StopReason::Completed);
    REQUIRE(times.size() >= 2);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 0.5);
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("lift_second_order matches the direct rhs") {
    const FourierGrid g = make_grid(128);
    ModelParams p{1.0, 0.7, 1.2, 0.0, ModelKind::BidirectionalFull};
    std::mt19937 rng(43);
    const SpectralField f =
        oracles::to_field(g, oracles::random_real_field(rng, 10, 0.2));
    const SpectralField ft =
        oracles::to_field(g, oracles::random_real_field(rng, 10, 0.2));

    const auto rhs = lift_second_order(g, p);
    const auto dy = rhs(0.0, pack_state({f, ft}));
    const WaveState d = unpack_state(g, dy);
    CHECK((d.f - ft).max_abs_coeff() < 1e-12);
    const SpectralField acc = rhs_bidirectional_full({f, ft}, p);
    CHECK((d.f_t - acc).max_abs_coeff() < 1e-11);

    ModelParams uni = p;
    uni.model = ModelKind::UnidirectionalU;
    CHECK_THROWS_AS(lift_second_order(g, uni), usage_error);
}

TEST_CASE("unidirectional rhs adapter matches the model") {
    const FourierGrid g = make_grid(128);
    const ModelParams p{1.0, 1.0, 1.0, 0.0, ModelKind::UnidirectionalU};
    const SpectralField u = make_sine(g, 1, 0.5);
    const auto rhs = make_unidirectional_rhs(g, p);
    const SpectralField d = unpack_field(g, rhs(0.0, pack_field(u)));
    CHECK((d - rhs_unidirectional_u(u, p)).max_abs_coeff() < 1e-12);
}
