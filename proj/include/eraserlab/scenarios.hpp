// scenarios.hpp
// Step-by-step reproductions of the tagger/untagger eraser, the measured
// eraser, and the two optical erasers, plus the 2x4 basis-invariance check.

#pragma once

#include <string>
#include <vector>

#include "eraserlab/circuits.hpp"
#include "eraserlab/measures.hpp"
#include "eraserlab/state.hpp"

namespace eraserlab {

struct ScenarioStep {
    std::string label;
    StateVector state;  // pre-measurement state for measurement steps
    double e_pf = 0.0;
    double e_f = 0.0;
    double e_a = 0.0;
};

struct ScenarioTrace {
    std::vector<ScenarioStep> steps;
    PartitionSpec partition;
};

// Photon-1 path runs on two qubits, p1a the most significant:
// |0>=00, |1>=01, |2>=10, |3>=11.
struct OpticalEncoding {
    std::size_t s1 = 0;   // photon-1 polarization
    std::size_t p1a = 1;  // photon-1 path, high bit
    std::size_t p1b = 2;  // photon-1 path, low bit
    std::size_t s2 = 3;   // photon-2 polarization
};

enum class TaggantMeasurement { hv, hbar_vbar };

// Reversible eraser: Bell x |0>_T, tagger, untagger. E_pf trace [1, 0, 1].
ScenarioTrace run_fig1a();
// Irreversible eraser: tag, then measure T in the given basis.
ScenarioTrace run_fig1b(const BasisParams& basis);
// Optical reversible eraser on (s1, s2, p1): PBS as c-NOT, then its reverse.
ScenarioTrace run_fig2a();
// Optical irreversible eraser on (s1, p1a, p1b, s2); final step measures s2.
ScenarioTrace run_fig2b(TaggantMeasurement meas);

// Samples random taggant bases on s2 over the 2x4 entangled state and
// returns max |E_p - 1|.
double check_2x4_invariance(std::size_t n_samples, std::uint64_t seed);

}  // namespace eraserlab
