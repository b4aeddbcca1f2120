#include "oddwaves/ck_series.hpp"
#include "oddwaves/diagnostics.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/operators.hpp"
#include "oddwaves/runner.hpp"
#include "oddwaves/timestepper.hpp"
#include "oddwaves/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace oddwaves;

namespace {

SpectralField field_from_samples(const FourierGrid& grid,
                                 py::array_t<double, py::array::c_style |
                                                         py::array::forcecast>
                                     samples) {
    if (static_cast<std::size_t>(samples.size()) != grid.size())
        throw py::value_error("sample count does not match the grid");
    return SpectralField::from_physical(
        grid, {samples.data(), static_cast<std::size_t>(samples.size())});
}

py::array_t<double> samples_array(const SpectralField& f) {
    const auto v = f.to_physical();
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<complex_t> coeffs_array(const SpectralField& f) {
    return py::array_t<complex_t>(static_cast<py::ssize_t>(f.size()),
                                  f.data().data());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudospectral models of surface waves with odd viscosity";
    m.attr("__version__") = version;

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<io_error>(m, "IoError", PyExc_IOError);

    py::class_<FourierGrid>(m, "Grid")
        .def(py::init([](std::size_t n, double period) {
                 return make_grid(n, period);
             }),
             py::arg("n"), py::arg("period") = two_pi)
        .def_property_readonly("n", &FourierGrid::size)
        .def_property_readonly("period", &FourierGrid::period)
        .def_property_readonly("nyquist", &FourierGrid::nyquist)
        .def_property_readonly("dealias_cutoff", &FourierGrid::dealias_cutoff)
        .def("points",
             [](const FourierGrid& g) {
                 const auto v = g.points();
                 return py::array_t<double>(static_cast<py::ssize_t>(v.size()),
                                            v.data());
             })
        .def("__eq__", [](const FourierGrid& a, const FourierGrid& b) {
            return a == b;
        });

    py::class_<SpectralField>(m, "Field")
        .def(py::init<FourierGrid>(), py::arg("grid"))
        .def_static("from_samples", &field_from_samples, py::arg("grid"),
                    py::arg("samples"))
        .def_property_readonly("grid", &SpectralField::grid)
        .def("samples", &samples_array)
        .def("coeffs", &coeffs_array, "FFT-layout series coefficients")
        .def("coeff", &SpectralField::coeff, py::arg("k"))
        .def("set_coeff", &SpectralField::set_coeff, py::arg("k"), py::arg("c"))
        .def("set_mode_pair", &SpectralField::set_mode_pair, py::arg("k"),
             py::arg("c"))
        .def("mean", &SpectralField::mean)
        .def("max_abs_coeff", &SpectralField::max_abs_coeff)
        .def("hermitian_defect", &SpectralField::hermitian_defect)
        .def("__add__",
             [](const SpectralField& a, const SpectralField& b) { return a + b; })
        .def("__sub__",
             [](const SpectralField& a, const SpectralField& b) { return a - b; })
        .def("__rmul__",
             [](const SpectralField& f, double a) { return a * f; });

    m.def("make_sine", &make_sine, py::arg("grid"), py::arg("k"),
          py::arg("amplitude"));
    m.def("make_cosine", &make_cosine, py::arg("grid"), py::arg("k"),
          py::arg("amplitude"));

    m.def("hilbert", &hilbert);
    m.def("lambda_pow", &lambda_pow, py::arg("f"), py::arg("s"));
    m.def("deriv", &deriv, py::arg("f"), py::arg("n") = 1);
    m.def("inverse_helmholtz", &inverse_helmholtz, py::arg("f"), py::arg("a"),
          py::arg("b"));
    m.def("inverse_lambda", &inverse_lambda);
    m.def("dealias", &dealias);
    m.def("multiply", &multiply);
    m.def("commutator_h", &commutator_h, py::arg("f"), py::arg("g"));

    py::enum_<ModelKind>(m, "ModelKind")
        .value("BIDIRECTIONAL_FULL", ModelKind::BidirectionalFull)
        .value("BIDIRECTIONAL_REDUCED", ModelKind::BidirectionalReduced)
        .value("UNIDIRECTIONAL_F", ModelKind::UnidirectionalF)
        .value("UNIDIRECTIONAL_U", ModelKind::UnidirectionalU);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double epsilon, double alpha_o, double beta, double mu,
                         ModelKind model) {
                 ModelParams p{epsilon, alpha_o, beta, mu, model};
                 p.validate();
                 return p;
             }),
             py::arg("epsilon") = 1.0, py::arg("alpha_o") = 1.0,
             py::arg("beta") = 1.0, py::arg("mu") = 0.0,
             py::arg("model") = ModelKind::UnidirectionalU)
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def_readwrite("alpha_o", &ModelParams::alpha_o)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("mu", &ModelParams::mu)
        .def_readwrite("model", &ModelParams::model);

    m.def(
        "dispersion_rates",
        [](double k, const ModelParams& p) {
            const auto r = dispersion_rates(k, p);
            return std::make_pair(r.plus, r.minus);
        },
        py::arg("k"), py::arg("params"));

    m.def(
        "rhs_bidirectional_full",
        [](const SpectralField& f, const SpectralField& f_t,
           const ModelParams& p) { return rhs_bidirectional_full({f, f_t}, p); },
        py::arg("f"), py::arg("f_t"), py::arg("params"));
    m.def(
        "rhs_bidirectional_reduced",
        [](const SpectralField& f, const SpectralField& f_t,
           const ModelParams& p) {
            return rhs_bidirectional_reduced({f, f_t}, p);
        },
        py::arg("f"), py::arg("f_t"), py::arg("params"));
    m.def("rhs_unidirectional_f", &rhs_unidirectional_f, py::arg("f"),
          py::arg("params"));
    m.def("rhs_unidirectional_u", &rhs_unidirectional_u, py::arg("u"),
          py::arg("params"));

    m.def("sobolev_norm", &sobolev_norm, py::arg("f"), py::arg("s"));
    m.def("wiener_norm", &wiener_norm, py::arg("f"), py::arg("tau"));
    m.def(
        "energy_teo2",
        [](const SpectralField& f, const SpectralField& f_t, double beta) {
            return energy_teo2({f, f_t}, beta);
        },
        py::arg("f"), py::arg("f_t"), py::arg("beta"));
    m.def("energy_teo4", &energy_teo4);
    m.def("sup_norm_deriv", &sup_norm_deriv, py::arg("f"), py::arg("n"));
    m.def("tricomi_residual", &tricomi_residual);
    m.def("cubic_residual", &cubic_residual);

    m.def("catalan", &catalan, py::arg("ell"));
    m.def("existence_time", &existence_time, py::arg("f0"), py::arg("f1"),
          py::arg("params"));
    m.def(
        "ck_solve",
        [](const SpectralField& f0, const SpectralField& f1, double t,
           int max_order, const ModelParams& p) {
            const SeriesSolution sol = ck_assemble(f0, f1, t, max_order, p);
            py::dict out;
            out["lambda"] = sol.lambda;
            out["band_limit"] = sol.band_limit;
            out["r_cutoff"] = sol.r_cutoff;
            out["f"] = sol.state.f;
            out["f_t"] = sol.state.f_t;
            py::list ledger;
            for (const auto& e : sol.ledger) {
                py::dict row;
                row["order"] = e.order;
                row["b_value"] = e.b_value;
                row["catalan_bound"] = e.catalan_bound;
                ledger.append(row);
            }
            out["ledger"] = ledger;
            return out;
        },
        py::arg("f0"), py::arg("f1"), py::arg("t"), py::arg("max_order"),
        py::arg("params"),
        "power-series solution of the full bidirectional model");

    py::class_<StepControl>(m, "StepControl")
        .def(py::init<>())
        .def_readwrite("rel_tol", &StepControl::rel_tol)
        .def_readwrite("abs_tol", &StepControl::abs_tol)
        .def_readwrite("max_dt", &StepControl::max_dt)
        .def_readwrite("initial_dt", &StepControl::initial_dt)
        .def_readwrite("max_steps", &StepControl::max_steps)
        .def_readwrite("blowup_ceiling", &StepControl::blowup_ceiling);

    m.def(
        "evolve",
        [](const SpectralField& u0, double t0, double t1, const ModelParams& p,
           const StepControl& ctrl) {
            if (is_bidirectional(p.model))
                throw py::value_error("evolve() handles unidirectional models; "
                                      "use evolve_state()");
            const auto rhs = make_unidirectional_rhs(u0.grid(), p);
            const auto res = integrate(rhs, pack_field(u0), t0, t1, ctrl);
            py::dict out;
            out["u"] = unpack_field(u0.grid(), res.y);
            out["t"] = res.t;
            out["completed"] = res.reason == StopReason::Completed;
            out["accepted"] = res.accepted;
            out["rejected"] = res.rejected;
            return out;
        },
        py::arg("u0"), py::arg("t0"), py::arg("t1"), py::arg("params"),
        py::arg("control") = StepControl{});

    m.def(
        "evolve_state",
        [](const SpectralField& f0, const SpectralField& f1, double t0,
           double t1, const ModelParams& p, const StepControl& ctrl) {
            const auto rhs = lift_second_order(f0.grid(), p);
            const auto res = integrate(rhs, pack_state({f0, f1}), t0, t1, ctrl);
            const WaveState s = unpack_state(f0.grid(), res.y);
            py::dict out;
            out["f"] = s.f;
            out["f_t"] = s.f_t;
            out["t"] = res.t;
            out["completed"] = res.reason == StopReason::Completed;
            out["accepted"] = res.accepted;
            out["rejected"] = res.rejected;
            return out;
        },
        py::arg("f0"), py::arg("f1"), py::arg("t0"), py::arg("t1"),
        py::arg("params"), py::arg("control") = StepControl{});

    m.def(
        "run_from_json",
        [](const std::string& text, const std::filesystem::path& out_dir) {
            const RunConfig cfg = config_from_json_text(text);
            const RunManifest man = run_simulation(cfg, out_dir);
            py::dict out;
            out["run_id"] = man.run_id;
            out["termination"] = man.termination;
            out["final_time"] = man.final_time;
            out["accepted_steps"] = man.accepted_steps;
            return out;
        },
        py::arg("config_json"), py::arg("out_dir"));
}
