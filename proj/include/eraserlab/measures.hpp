// measures.hpp
// Entanglement quantities: E, E_p, E_pf, E_f, E_a, the closed-form E_p{U}
// evaluator, and a concurrence-based oracle for two-qubit E_f.

#pragma once

#include <optional>
#include <string>

#include "eraserlab/circuits.hpp"
#include "eraserlab/state.hpp"

namespace eraserlab {

struct EntanglementReport {
    double value = 0.0;  // bits of entanglement, in [0, 1]
    // Description of the taggant basis or measurement used; for E_f/E_a this
    // records the extremizing basis found.
    std::string basis_or_projectors;
    std::optional<BasisParams> extremizer;
};

// e(x) = -[x log2 x + (1-x) log2(1-x)], with e(0) = e(1) = 0.
double binary_entropy(double x);

// Von Neumann entropy of rho_A across the A|B cut of a pure state.
// A must be a single qubit; T must be empty.
EntanglementReport entanglement_pure(const StateVector& s, const PartitionSpec& cut);

// Average AB entanglement of the components obtained by projecting the
// taggant onto the rotated basis: sum_i p_i' E(psi_i').
EntanglementReport entanglement_of_projection(const StateVector& s, const PartitionSpec& cut,
                                              const TaggantBasis& basis);

// e(alpha2) + e(a2) - e(p0) with p0 = a2 alpha2 + (1-a2)(1-alpha2).
double ep_closed_form(double alpha2, double a2);

// min over taggant bases of the entanglement of projection.
EntanglementReport entanglement_of_formation(const StateVector& s, const PartitionSpec& cut);
// max over taggant bases of the entanglement of projection.
EntanglementReport entanglement_of_assistance(const StateVector& s, const PartitionSpec& cut);

// sum_j q_j E_f(rho_j) over measurement outcomes; with no measurement this
// is E_f of the unmeasured state.
EntanglementReport entanglement_pf(const StateVector& s, const PartitionSpec& cut,
                                   const std::optional<MeasurementSpec>& projectors);

// Closed-form two-qubit E_f from the spin-flip concurrence; independent of
// the basis-optimization path, used to validate it.
double concurrence_ef_oracle(const DensityMatrix& rho);

// Taggant basis over d_T=4 from 6 complex Givens rotations (12 parameters,
// theta/phi pairs for planes (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)).
TaggantBasis givens_basis(const std::vector<double>& params);

}  // namespace eraserlab
