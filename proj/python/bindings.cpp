#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rotalign/rotalign.hpp"

namespace py = pybind11;
using namespace rotalign;

namespace {

py::array_t<double> array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict extrema_dict(const ExtremaSummary& e) {
    auto t = [](double v) -> py::object {
        return v == kNotFound ? py::object(py::none()) : py::object(py::float_(v));
    };
    py::dict d;
    d["max_align_during"] = e.max_align_during;
    d["max_align_after"] = e.max_align_after;
    d["max_orient_pos_after"] = e.max_orient_pos_after;
    d["max_orient_neg_after"] = e.max_orient_neg_after;
    d["t_align_during"] = t(e.t_align_during);
    d["t_align_after"] = t(e.t_align_after);
    d["t_orient_pos_after"] = t(e.t_orient_pos_after);
    d["t_orient_neg_after"] = t(e.t_orient_neg_after);
    return d;
}

py::dict report_dict(const ConvergenceReport& r) {
    py::dict d;
    d["dt_fs"] = r.dt_ps * 1e3;
    d["j_max"] = r.j_max;
    d["rounds"] = r.rounds;
    d["residual"] = r.residual;
    d["max_norm_deviation"] = r.max_norm_deviation;
    return d;
}

py::dict case_dict(const CaseResult& c) {
    py::dict d;
    d["variant"] = c.variant;
    d["temperature_K"] = c.temperature_k;
    d["error"] = c.error.empty() ? py::object(py::none()) : py::object(py::str(c.error));
    if (c.ok()) {
        const auto& s = c.series;
        d["time_ps"] = array(s.times_ps);
        d["orientation"] = array(s.orientation);
        d["alignment"] = array(s.alignment);
        py::list env;
        for (const auto& e : s.envelopes) env.append(array(e));
        d["envelopes"] = env;
        d["extrema"] = extrema_dict(c.extrema);
        d["convergence"] = report_dict(c.report);
    }
    return d;
}

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["param"] = r.param;
    d["variant"] = r.variant;
    d["temperature_K"] = r.temperature_k;
    d["error"] = r.error.empty() ? py::object(py::none()) : py::object(py::str(r.error));
    if (r.ok()) {
        for (auto item : extrema_dict(r.extrema)) d[item.first] = item.second;
        d["dt_fs"] = r.report.dt_ps * 1e3;
        d["j_max"] = r.report.j_max;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rotational alignment and orientation of linear molecules by two-color pulses";
    m.attr("__version__") = version_string();

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<MoleculeParams>(m, "MoleculeParams")
        .def(py::init<>())
        .def_readwrite("name", &MoleculeParams::name)
        .def_readwrite("b_inv_cm", &MoleculeParams::b_inv_cm)
        .def_readwrite("mu0_debye", &MoleculeParams::mu0_debye)
        .def_readwrite("alpha_par_a3", &MoleculeParams::alpha_par_a3)
        .def_readwrite("alpha_perp_a3", &MoleculeParams::alpha_perp_a3)
        .def_readwrite("beta_par", &MoleculeParams::beta_par)
        .def_readwrite("beta_perp", &MoleculeParams::beta_perp)
        .def_property(
            "beta_units", [](const MoleculeParams& p) { return std::string(to_string(p.beta_units)); },
            [](MoleculeParams& p, const std::string& tag) { p.beta_units = parse_beta_units(tag); })
        .def_readwrite("gj_even", &MoleculeParams::gj_even)
        .def_readwrite("gj_odd", &MoleculeParams::gj_odd)
        .def("validate", &MoleculeParams::validate)
        .def("__repr__", [](const MoleculeParams& p) {
            return "<MoleculeParams " + p.name + " B=" + std::to_string(p.b_inv_cm) + " cm-1>";
        });

    m.def("hbr_preset", &hbr_preset);
    m.def("rotational_period_ps", py::overload_cast<const MoleculeParams&>(&rotational_period_ps),
          py::arg("molecule"));
    m.def(
        "build_ensemble",
        [](const MoleculeParams& mol, double t, double eps) {
            py::list out;
            for (const auto& e : build_ensemble(mol, t, eps).entries) {
                out.append(py::make_tuple(e.j, e.m, e.weight));
            }
            return out;
        },
        py::arg("molecule"), py::arg("temperature_k"), py::arg("epsilon") = kDefaultEnsembleEpsilon,
        "List of (J, M, weight) sorted by J then M.");

    m.def("cos_matrix_element", &cos_matrix_element, py::arg("j"), py::arg("m"));
    m.def(
        "cos_operators",
        [](int j_max, int mq) {
            const auto ops = build_cos_operators(BasisSpec::make(j_max, mq));
            return py::make_tuple(ops.c1, ops.c2, ops.c3);
        },
        py::arg("j_max"), py::arg("m"));

    py::class_<PulseSpec>(m, "PulseSpec")
        .def(py::init<>())
        .def_property(
            "shape", [](const PulseSpec& p) { return std::string(to_string(p.shape)); },
            [](PulseSpec& p, const std::string& s) { p.shape = parse_envelope_shape(s); })
        .def_readwrite("tau_ps", &PulseSpec::tau_ps)
        .def_readwrite("intensity_wcm2", &PulseSpec::intensity_wcm2)
        .def_readwrite("gamma", &PulseSpec::gamma)
        .def_property("gamma_sq", &PulseSpec::gamma_sq, &PulseSpec::set_gamma_sq)
        .def_readwrite("delta_cep", &PulseSpec::delta_cep)
        .def_readwrite("t_center_ps", &PulseSpec::t_center_ps)
        .def_readwrite("omega_inv_cm", &PulseSpec::omega_inv_cm)
        .def_readwrite("plateau_ratio", &PulseSpec::plateau_ratio)
        .def("validate", &PulseSpec::validate);

    m.def("envelope", &envelope, py::arg("pulse"), py::arg("t_ps"));
    m.def("instantaneous_field", py::overload_cast<const PulseSpec&, double>(&instantaneous_field),
          py::arg("pulse"), py::arg("t_ps"));
    m.def(
        "cycle_averaged_coefficients",
        [](const PulseSpec& p, double t) {
            const auto e = cycle_averaged_coefficients(p, t);
            return py::make_tuple(e.e1, e.e2, e.e3);
        },
        py::arg("pulse"), py::arg("t_ps"), "(<E>, <E^2>, <E^3>) in atomic units.");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("name", &ExperimentConfig::name)
        .def_readwrite("molecule", &ExperimentConfig::molecule)
        .def_property(
            "pulses", [](const ExperimentConfig& c) { return c.field.pulses; },
            [](ExperimentConfig& c, std::vector<PulseSpec> p) { c.field.pulses = std::move(p); })
        .def_property(
            "t_delay_ps", [](const ExperimentConfig& c) { return c.field.t_delay_ps; },
            [](ExperimentConfig& c, double v) { c.field.t_delay_ps = v; })
        .def_readwrite("temperatures", &ExperimentConfig::temperatures)
        .def_readwrite("post_window_ps", &ExperimentConfig::post_window_ps)
        .def_readwrite("write_series", &ExperimentConfig::write_series)
        .def_readwrite("output_dir", &ExperimentConfig::output_dir)
        .def_property_readonly("has_sweep", [](const ExperimentConfig& c) { return c.sweep.has_value(); })
        .def(
            "set_sweep",
            [](ExperimentConfig& c, const std::string& p, std::vector<double> values) {
                c.sweep = SweepSpec{parse_sweep_parameter(p), std::move(values)};
            },
            py::arg("parameter"), py::arg("values"))
        .def("clear_sweep", [](ExperimentConfig& c) { c.sweep.reset(); })
        .def("validate", &ExperimentConfig::validate)
        .def("to_text", [](const ExperimentConfig& c) { return to_config_text(c); });

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
    m.def("preset", [](const std::string& name, bool fast) { return preset(name, fast); },
          py::arg("name"), py::arg("fast") = false);
    m.def("preset_names", &preset_names);

    m.def(
        "run_single",
        [](const ExperimentConfig& c, int workers) {
            std::vector<CaseResult> cases;
            {
                py::gil_scoped_release release;
                cases = run_single(c, RunOptions{workers});
            }
            py::list out;
            for (const auto& r : cases) out.append(case_dict(r));
            return out;
        },
        py::arg("config"), py::arg("workers") = 0,
        "One dict per (variant, temperature) with series arrays, extrema and convergence.");
    m.def(
        "run_sweep",
        [](const ExperimentConfig& c, int workers) {
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(c, RunOptions{workers});
            }
            py::list out;
            for (const auto& r : rows) out.append(row_dict(r));
            return out;
        },
        py::arg("config"), py::arg("workers") = 0);
    m.def(
        "write_outputs",
        [](const ExperimentConfig& c, const std::string& dir, int workers) {
            std::vector<std::string> paths;
            py::gil_scoped_release release;
            WrittenFiles w;
            if (c.sweep) {
                w = write_sweep_outputs(c, run_sweep_detailed(c, c.write_series, RunOptions{workers}), dir);
            } else {
                w = write_run_outputs(c, run_single(c, RunOptions{workers}), dir);
            }
            for (const auto& p : w.paths) paths.push_back(p.string());
            return paths;
        },
        py::arg("config"), py::arg("dir"), py::arg("workers") = 0,
        "Runs the config and writes the CSV/JSON files; returns their paths.");
}
