#include "eraserlab/circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace eraserlab {

Gate Gate::single(CMatrix matrix, std::size_t target, std::string label) {
    if (matrix.rows() != 2 || matrix.cols() != 2)
        throw std::invalid_argument("Gate: single-qubit matrix must be 2x2");
    if (!matrix.is_unitary(1e-12))
        throw std::invalid_argument("Gate: matrix is not unitary");
    return Gate{SingleQubitGate{std::move(matrix), target}, std::move(label)};
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
    if (control == target)
        throw std::invalid_argument("Gate: cnot control and target must differ");
    return Gate{CnotGate{control, target}, "cnot"};
}

TaggantBasis TaggantBasis::identity(std::size_t dim) {
    return TaggantBasis{CMatrix::identity(dim)};
}

TaggantBasis taggant_basis(const BasisParams& params) {
    const double a = std::cos(params.theta);
    const cdouble b = std::polar(std::sin(params.theta), params.phi);
    CMatrix u(2, 2);
    u(0, 0) = a;
    u(0, 1) = b;
    u(1, 0) = -std::conj(b);
    u(1, 1) = a;  // a real, a* = a
    return TaggantBasis{std::move(u)};
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
    const std::size_t n = s.n_qubits();
    std::vector<cdouble> amps = s.amplitudes();

    if (const auto* sq = std::get_if<SingleQubitGate>(&g.kind)) {
        if (sq->target >= n) throw std::out_of_range("apply_gate: target out of range");
        const std::size_t mask = std::size_t{1} << (n - 1 - sq->target);
        for (std::size_t k = 0; k < amps.size(); ++k) {
            if (k & mask) continue;  // visit each pair once, from its bit=0 member
            const cdouble a0 = amps[k], a1 = amps[k | mask];
            amps[k] = sq->matrix(0, 0) * a0 + sq->matrix(0, 1) * a1;
            amps[k | mask] = sq->matrix(1, 0) * a0 + sq->matrix(1, 1) * a1;
        }
    } else {
        const auto& cx = std::get<CnotGate>(g.kind);
        if (cx.control >= n || cx.target >= n)
            throw std::out_of_range("apply_gate: qubit index out of range");
        const std::size_t cmask = std::size_t{1} << (n - 1 - cx.control);
        const std::size_t tmask = std::size_t{1} << (n - 1 - cx.target);
        for (std::size_t k = 0; k < amps.size(); ++k)
            if ((k & cmask) && !(k & tmask)) std::swap(amps[k], amps[k | tmask]);
    }
    return StateVector(n, std::move(amps));
}

StateVector tagger(const StateVector& s, std::size_t controller, std::size_t taggant) {
    return apply_gate(s, Gate::cnot(controller, taggant));
}

StateVector untagger(const StateVector& s, std::size_t controller, std::size_t taggant) {
    return apply_gate(s, Gate::cnot(controller, taggant));
}

MeasurementResult measure(const StateVector& s, const MeasurementSpec& spec) {
    const std::size_t n = s.n_qubits();
    const std::size_t m = spec.targets.size();
    if (m == 0) throw std::invalid_argument("measure: no target qubits");
    std::vector<int> seen(n, 0);
    for (std::size_t q : spec.targets) {
        if (q >= n) throw std::invalid_argument("measure: target out of range");
        if (seen[q]++) throw std::invalid_argument("measure: duplicate target");
    }
    const std::size_t d = std::size_t{1} << m;
    if (spec.basis.dim() != d)
        throw std::invalid_argument("measure: basis dimension does not match targets");
    if (!spec.basis.u.is_unitary(1e-9))
        throw std::invalid_argument("measure: basis is not unitary");

    // Index of the measured subsystem inside a full register index.
    auto sub_index = [&](std::size_t k) {
        std::size_t idx = 0;
        for (std::size_t q : spec.targets)
            idx = (idx << 1) | static_cast<std::size_t>(qubit_bit(k, q, n));
        return idx;
    };
    // Full index with the measured subsystem replaced by `sub`.
    auto with_sub = [&](std::size_t k, std::size_t sub) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t bit = (sub >> (m - 1 - i)) & 1u;
            const std::size_t mask = std::size_t{1} << (n - 1 - spec.targets[i]);
            k = bit ? (k | mask) : (k & ~mask);
        }
        return k;
    };

    MeasurementResult result;
    for (std::size_t j = 0; j < d; ++j) {
        // Project onto |j'> = sum_t U(j,t) |t>: amplitude of remainder r is
        // sum_t conj(U(j,t)) psi(r,t); collapsed state keeps |j'> in place.
        std::vector<cdouble> proj(s.dim() >> m);
        double q_j = 0.0;
        std::size_t ridx = 0;
        for (std::size_t k = 0; k < s.dim(); ++k) {
            if (sub_index(k) != 0) continue;  // enumerate remainders via sub==0 slots
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < d; ++t)
                sum += std::conj(spec.basis.u(j, t)) * s.amplitude(with_sub(k, t));
            proj[ridx++] = sum;
            q_j += std::norm(sum);
        }
        MeasurementOutcome out{j, q_j, std::nullopt};
        if (q_j >= 1e-14) {
            std::vector<cdouble> amps(s.dim());
            const double inv = 1.0 / std::sqrt(q_j);
            ridx = 0;
            for (std::size_t k = 0; k < s.dim(); ++k) {
                if (sub_index(k) != 0) continue;
                const cdouble coef = proj[ridx++] * inv;
                for (std::size_t t = 0; t < d; ++t)
                    amps[with_sub(k, t)] += coef * spec.basis.u(j, t);
            }
            out.post_state = StateVector(n, std::move(amps));
        } else {
            out.probability = 0.0;
        }
        result.outcomes.push_back(std::move(out));
    }
    return result;
}

}  // namespace eraserlab
