// circuits.hpp
// Gate layer: single-qubit unitaries, c-NOT, tagger/untagger, taggant basis
// construction and projective measurement with outcome bookkeeping.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eraserlab/state.hpp"

namespace eraserlab {

struct SingleQubitGate {
    CMatrix matrix;  // 2x2 unitary
    std::size_t target;
};

struct CnotGate {
    std::size_t control;
    std::size_t target;
};

struct Gate {
    std::variant<SingleQubitGate, CnotGate> kind;
    std::string label;

    static Gate single(CMatrix matrix, std::size_t target, std::string label = "u");
    static Gate cnot(std::size_t control, std::size_t target);
};

// Parameters of the d_T=2 taggant basis: |0'> = cos(theta)|0> + e^{i phi} sin(theta)|1>.
struct BasisParams {
    double theta = 0.0;  // [0, pi/2]
    double phi = 0.0;    // [0, 2 pi)
};

// Unitary over the taggant space; row i holds the components of basis vector |i'>.
struct TaggantBasis {
    CMatrix u;

    std::size_t dim() const { return u.rows(); }
    static TaggantBasis identity(std::size_t dim);
};

// Rows (a, b; -b*, a*) with a = cos(theta), b = e^{i phi} sin(theta).
TaggantBasis taggant_basis(const BasisParams& params);

struct MeasurementSpec {
    std::vector<std::size_t> targets;  // qubits to measure, subset of T
    TaggantBasis basis;                // dim 2^targets
};

struct MeasurementOutcome {
    std::size_t outcome;
    double probability;
    // Full register with the measured qubits collapsed onto the outcome
    // basis vector; absent for zero-probability outcomes.
    std::optional<StateVector> post_state;
};

struct MeasurementResult {
    std::vector<MeasurementOutcome> outcomes;
};

StateVector apply_gate(const StateVector& s, const Gate& g);

// c-NOT from an AB qubit onto the taggant (the entanglement diluter).
StateVector tagger(const StateVector& s, std::size_t controller, std::size_t taggant);
// Same c-NOT, concentrating entanglement back into AB.
StateVector untagger(const StateVector& s, std::size_t controller, std::size_t taggant);

MeasurementResult measure(const StateVector& s, const MeasurementSpec& spec);

}  // namespace eraserlab
