// Python bindings for the core operations: states, gates, entanglement
// measures, built-in scenarios and the DSL.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eraserlab/csv.hpp"
#include "eraserlab/dsl.hpp"
#include "eraserlab/measures.hpp"
#include "eraserlab/scenarios.hpp"

namespace py = pybind11;
using namespace eraserlab;

namespace {

py::list trace_to_list(const ScenarioTrace& trace) {
    py::list out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ScenarioStep& s = trace.steps[i];
        py::dict d;
        d["step"] = i;
        d["label"] = s.label;
        d["e_pf"] = s.e_pf;
        d["e_f"] = s.e_f;
        d["e_a"] = s.e_a;
        d["amplitudes"] = s.state.amplitudes();
        out.append(d);
    }
    return out;
}

ScenarioTrace exec_source(const std::string& source) {
    dsl::ParseResult r = dsl::parse(source);
    if (!r.ok())
        throw std::runtime_error("parse error at line " + std::to_string(r.error->line) + ": " +
                                 r.error->message);
    return dsl::execute(*r.program);
}

}  // namespace

PYBIND11_MODULE(_eraserlab, m) {
    m.doc() = "entanglement eraser simulation toolkit";

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<std::size_t, std::vector<cdouble>>(), py::arg("n_qubits"),
             py::arg("amplitudes"))
        .def_static("basis", &StateVector::basis, py::arg("n_qubits"), py::arg("index"))
        .def_static("bell", &StateVector::bell)
        .def_property_readonly("n_qubits", &StateVector::n_qubits)
        .def_property_readonly("amplitudes", &StateVector::amplitudes)
        .def("norm", &StateVector::norm);

    py::class_<PartitionSpec>(m, "PartitionSpec")
        .def(py::init([](std::vector<std::size_t> a, std::vector<std::size_t> b,
                         std::vector<std::size_t> t) {
                 PartitionSpec spec{std::move(a), std::move(b), std::move(t)};
                 spec.validate();
                 return spec;
             }),
             py::arg("a"), py::arg("b"), py::arg("t"))
        .def_readonly("a_qubits", &PartitionSpec::a_qubits)
        .def_readonly("b_qubits", &PartitionSpec::b_qubits)
        .def_readonly("t_qubits", &PartitionSpec::t_qubits);

    m.def("tensor", &tensor, py::arg("s1"), py::arg("s2"));
    m.def("cnot", [](const StateVector& s, std::size_t control, std::size_t target) {
        return apply_gate(s, Gate::cnot(control, target));
    });
    m.def("tagger", &tagger, py::arg("state"), py::arg("controller"), py::arg("taggant"));
    m.def("untagger", &untagger, py::arg("state"), py::arg("controller"), py::arg("taggant"));

    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("ep_closed_form", &ep_closed_form, py::arg("alpha2"), py::arg("a2"));
    m.def("entanglement_pure", [](const StateVector& s, const PartitionSpec& cut) {
        return entanglement_pure(s, cut).value;
    });
    m.def(
        "entanglement_of_projection",
        [](const StateVector& s, const PartitionSpec& cut, double theta, double phi) {
            return entanglement_of_projection(s, cut, taggant_basis({theta, phi})).value;
        },
        py::arg("state"), py::arg("cut"), py::arg("theta"), py::arg("phi") = 0.0);
    m.def("entanglement_of_formation", [](const StateVector& s, const PartitionSpec& cut) {
        return entanglement_of_formation(s, cut).value;
    });
    m.def("entanglement_of_assistance", [](const StateVector& s, const PartitionSpec& cut) {
        return entanglement_of_assistance(s, cut).value;
    });
    m.def("entanglement_pf", [](const StateVector& s, const PartitionSpec& cut) {
        return entanglement_pf(s, cut, std::nullopt).value;
    });
    m.def("concurrence_ef_oracle", [](const StateVector& s, std::vector<std::size_t> keep) {
        return concurrence_ef_oracle(partial_trace(density_matrix(s), keep, s.n_qubits()));
    });

    m.def("run_fig1a", [] { return trace_to_list(run_fig1a()); });
    m.def(
        "run_fig1b",
        [](double theta, double phi) { return trace_to_list(run_fig1b({theta, phi})); },
        py::arg("theta"), py::arg("phi") = 0.0);
    m.def("run_fig2a", [] { return trace_to_list(run_fig2a()); });
    m.def(
        "run_fig2b",
        [](const std::string& meas) {
            if (meas != "hv" && meas != "hbar_vbar")
                throw std::invalid_argument("meas must be 'hv' or 'hbar_vbar'");
            return trace_to_list(run_fig2b(meas == "hv" ? TaggantMeasurement::hv
                                                        : TaggantMeasurement::hbar_vbar));
        },
        py::arg("meas") = "hbar_vbar");
    m.def("check_2x4_invariance", &check_2x4_invariance, py::arg("n_samples"), py::arg("seed"));

    m.def("execute_dsl", [](const std::string& source) { return trace_to_list(exec_source(source)); });
    m.def("execute_dsl_csv", [](const std::string& source) { return trace_to_csv(exec_source(source)); });
}
