#include "eraserlab/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace eraserlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ScenarioStep make_step(std::string label, const StateVector& s, const PartitionSpec& cut) {
    ScenarioStep step{std::move(label), s};
    step.e_f = entanglement_of_formation(s, cut).value;
    step.e_a = entanglement_of_assistance(s, cut).value;
    step.e_pf = step.e_f;  // no measurement yet: h = 1
    return step;
}

ScenarioStep make_measured_step(std::string label, const StateVector& s, const PartitionSpec& cut,
                                const MeasurementSpec& spec) {
    ScenarioStep step{std::move(label), s};
    step.e_f = entanglement_of_formation(s, cut).value;
    step.e_a = entanglement_of_assistance(s, cut).value;
    step.e_pf = entanglement_pf(s, cut, spec).value;
    return step;
}

// Singlet [|hv> - |vh>]/sqrt(2) on qubits (s1, s2) of an n-qubit register
// initialized to |0...0> elsewhere; h -> |0>, v -> |1>.
StateVector singlet_register(std::size_t n, std::size_t s1, std::size_t s2) {
    std::vector<cdouble> amps(std::size_t{1} << n);
    amps[std::size_t{1} << (n - 1 - s2)] = kInvSqrt2;
    amps[std::size_t{1} << (n - 1 - s1)] = -kInvSqrt2;
    return StateVector(n, std::move(amps));
}

// Rotation taking |hbar> -> |0>, |vbar> -> |1>, with hbar = (h+v)/sqrt(2)
// and vbar = (-h+v)/sqrt(2).
CMatrix bar_rotation() {
    CMatrix r(2, 2);
    r(0, 0) = kInvSqrt2;
    r(0, 1) = kInvSqrt2;
    r(1, 0) = -kInvSqrt2;
    r(1, 1) = kInvSqrt2;
    return r;
}

// PBS pair in the hbar/vbar direction: c-NOT on `target` by `control` in
// the rotated control basis.
StateVector bar_cnot(const StateVector& s, std::size_t control, std::size_t target) {
    StateVector out = apply_gate(s, Gate::single(bar_rotation(), control, "to-bar"));
    out = apply_gate(out, Gate::cnot(control, target));
    return apply_gate(out, Gate::single(bar_rotation().adjoint(), control, "from-bar"));
}

StateVector fig2b_t2_state() {
    const OpticalEncoding enc;
    StateVector s = singlet_register(4, enc.s1, enc.s2);
    s = apply_gate(s, Gate::cnot(enc.s1, enc.p1a));
    return bar_cnot(s, enc.s1, enc.p1b);
}

}  // namespace

ScenarioTrace run_fig1a() {
    PartitionSpec cut{{0}, {1}, {2}};
    ScenarioTrace trace;
    trace.partition = cut;
    StateVector s = tensor(StateVector::bell(), StateVector::basis(1, 0));
    trace.steps.push_back(make_step("initial", s, cut));
    s = tagger(s, 0, 2);
    trace.steps.push_back(make_step("tagger", s, cut));
    s = untagger(s, 0, 2);
    trace.steps.push_back(make_step("untagger", s, cut));
    return trace;
}

ScenarioTrace run_fig1b(const BasisParams& basis) {
    PartitionSpec cut{{0}, {1}, {2}};
    ScenarioTrace trace;
    trace.partition = cut;
    StateVector s = tensor(StateVector::bell(), StateVector::basis(1, 0));
    trace.steps.push_back(make_step("initial", s, cut));
    s = tagger(s, 0, 2);
    trace.steps.push_back(make_step("tagger", s, cut));
    MeasurementSpec spec{{2}, taggant_basis(basis)};
    trace.steps.push_back(make_measured_step("measure T", s, cut, spec));
    return trace;
}

ScenarioTrace run_fig2a() {
    // Register (s1, s2, p1); AB = spins, T = photon-1 path.
    PartitionSpec cut{{0}, {1}, {2}};
    ScenarioTrace trace;
    trace.partition = cut;
    StateVector s = singlet_register(3, 0, 1);
    trace.steps.push_back(make_step("singlet", s, cut));
    s = apply_gate(s, Gate::cnot(0, 2));  // PBS tags the path
    trace.steps.push_back(make_step("pbs", s, cut));
    s = apply_gate(s, Gate::cnot(0, 2));  // second PBS reverses it
    trace.steps.push_back(make_step("pbs-reversed", s, cut));
    return trace;
}

ScenarioTrace run_fig2b(TaggantMeasurement meas) {
    const OpticalEncoding enc;
    // AB = photon-1 spin and path; T = photon-2 spin.
    PartitionSpec cut{{enc.s1}, {enc.p1a, enc.p1b}, {enc.s2}};
    ScenarioTrace trace;
    trace.partition = cut;

    StateVector s = singlet_register(4, enc.s1, enc.s2);
    trace.steps.push_back(make_step("singlet", s, cut));
    s = apply_gate(s, Gate::cnot(enc.s1, enc.p1a));
    trace.steps.push_back(make_step("pbs-hv", s, cut));
    s = bar_cnot(s, enc.s1, enc.p1b);
    trace.steps.push_back(make_step("pbs-bar", s, cut));
    s = bar_cnot(s, enc.s1, enc.p1b);  // retag: exact inverse of the last step
    trace.steps.push_back(make_step("retag", s, cut));

    const BasisParams params = meas == TaggantMeasurement::hv
                                   ? BasisParams{0.0, 0.0}
                                   : BasisParams{0.25 * std::numbers::pi, 0.0};
    MeasurementSpec spec{{enc.s2}, taggant_basis(params)};
    trace.steps.push_back(make_measured_step("measure s2", s, cut, spec));
    return trace;
}

double check_2x4_invariance(std::size_t n_samples, std::uint64_t seed) {
    const StateVector s = fig2b_t2_state();
    const OpticalEncoding enc;
    PartitionSpec cut{{enc.s1}, {enc.p1a, enc.p1b}, {enc.s2}};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        // cos^2(theta) uniform in [0,1], phi uniform in [0,2pi).
        const double theta = std::acos(std::sqrt(unit(rng)));
        const BasisParams params{theta, angle(rng)};
        const double ep = entanglement_of_projection(s, cut, taggant_basis(params)).value;
        worst = std::max(worst, std::abs(ep - 1.0));
    }
    return worst;
}

}  // namespace eraserlab
