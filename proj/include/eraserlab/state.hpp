// state.hpp
// Complex state vectors over multi-qubit registers, density matrices,
// tensor products, partial trace, Hermitian eigensolve, Schmidt decomposition.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace eraserlab {

using cdouble = std::complex<double>;

// Qubit 0 is the most significant bit of a basis-state index.
inline int qubit_bit(std::size_t index, std::size_t qubit, std::size_t n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

constexpr std::size_t kMaxQubits = 8;

// Small dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& rhs) const;

    bool is_unitary(double tol = 1e-12) const;
    double max_abs_diff(const CMatrix& other) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cdouble> data_;
};

// Normalized pure state over an n-qubit register.
class StateVector {
public:
    StateVector(std::size_t n_qubits, std::vector<cdouble> amplitudes);

    // Computational basis state |index>.
    static StateVector basis(std::size_t n_qubits, std::size_t index);
    // (|00> + |11>)/sqrt(2) over two qubits.
    static StateVector bell();

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    cdouble amplitude(std::size_t index) const { return amplitudes_[index]; }

    double norm() const;
    // Max amplitude-wise distance to `other`, minimized over a global phase.
    double distance_up_to_phase(const StateVector& other) const;

private:
    std::size_t n_qubits_;
    std::vector<cdouble> amplitudes_;
};

// Hermitian, unit-trace, PSD complex matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix entries);

    std::size_t dim() const { return entries_.rows(); }
    const CMatrix& entries() const { return entries_; }
    cdouble operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

    double trace_real() const;

private:
    CMatrix entries_;
};

// Assignment of register qubits to subsystems A, B, T.
struct PartitionSpec {
    std::vector<std::size_t> a_qubits;
    std::vector<std::size_t> b_qubits;
    std::vector<std::size_t> t_qubits;

    std::size_t n_qubits() const { return a_qubits.size() + b_qubits.size() + t_qubits.size(); }
    // Disjointness and exact coverage of {0..n-1}; throws on violation.
    void validate() const;
};

struct SchmidtDecomposition {
    std::vector<double> coefficients;             // nonincreasing, nonnegative
    std::vector<std::vector<cdouble>> left_vectors;
    std::vector<std::vector<cdouble>> right_vectors;
};

struct DecompositionView {
    std::vector<double> weights;
    std::vector<StateVector> components;
};

struct EigenSystem {
    std::vector<double> eigenvalues;  // nonincreasing
    CMatrix eigenvectors;             // columns match eigenvalues
};

StateVector tensor(const StateVector& s1, const StateVector& s2);

DensityMatrix density_matrix(const StateVector& s);

// Reduced density matrix over `keep` (output qubit order follows `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep,
                            const PartitionSpec& layout);
// Same, taking the register size directly.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep,
                            std::size_t n_qubits);

// Cyclic Jacobi eigensolve for Hermitian matrices up to dim 16.
// No range restriction on eigenvalues.
EigenSystem hermitian_eigensystem(const CMatrix& m);

// Density-matrix spectrum: eigenvalues within 1e-10 outside [0,1] are
// clamped; further outside is an error.
EigenSystem eigensolve_hermitian(const DensityMatrix& m);

SchmidtDecomposition schmidt_decompose(const StateVector& s, const PartitionSpec& cut);

// State file format: line 1 `qubits N`, then 2^N lines `re im`.
StateVector load_state(const std::string& path);
StateVector parse_state(const std::string& text);
std::string render_state(const StateVector& s);
void save_state(const StateVector& s, const std::string& path);

}  // namespace eraserlab
