#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eraserlab/circuits.hpp"
#include "eraserlab/state.hpp"
#include "test_util.hpp"

using namespace eraserlab;
using eraserlab::testing::random_state;
using eraserlab::testing::random_unitary2;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector ghz() {
    std::vector<cdouble> amps(8);
    amps[0] = kInvSqrt2;
    amps[7] = kInvSqrt2;
    return StateVector(3, std::move(amps));
}
}  // namespace

TEST_CASE("tensor of basis states") {
    StateVector s = tensor(StateVector::basis(1, 0), StateVector::basis(1, 0));
    CHECK(s.n_qubits() == 2);
    CHECK(std::abs(s.amplitude(0) - 1.0) < 1e-15);
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(s.amplitude(k)) < 1e-15);
}

TEST_CASE("tensor Bell with taggant |0>") {
    StateVector s = tensor(StateVector::bell(), StateVector::basis(1, 0));
    CHECK(std::abs(s.amplitude(0b000) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(s.amplitude(0b110) - kInvSqrt2) < 1e-15);
    for (std::size_t k = 0; k < 8; ++k)
        if (k != 0 && k != 6) CHECK(std::abs(s.amplitude(k)) < 1e-15);
}

TEST_CASE("tensor distributes over superposition") {
    StateVector q(1, {0.6, 0.8});
    StateVector s = tensor(q, StateVector::basis(1, 1));
    CHECK(std::abs(s.amplitude(0b01) - 0.6) < 1e-15);
    CHECK(std::abs(s.amplitude(0b11) - 0.8) < 1e-15);
    CHECK(std::abs(s.amplitude(0b00)) < 1e-15);
    CHECK(std::abs(s.amplitude(0b10)) < 1e-15);
}

TEST_CASE("density matrix of basis state and Bell state") {
    DensityMatrix d0 = density_matrix(StateVector::basis(1, 0));
    CHECK(std::abs(d0(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(d0(1, 1)) < 1e-15);

    DensityMatrix bell = density_matrix(StateVector::bell());
    for (std::size_t r : {0, 3})
        for (std::size_t c : {0, 3}) CHECK(std::abs(bell(r, c) - 0.5) < 1e-15);
    CHECK(std::abs(bell(1, 1)) < 1e-15);
    CHECK(std::abs(bell(0, 1)) < 1e-15);
}

TEST_CASE("density matrix keeps relative phase") {
    StateVector s(1, {kInvSqrt2, cdouble{0.0, kInvSqrt2}});
    DensityMatrix d = density_matrix(s);
    CHECK(std::abs(d(0, 1) - cdouble{0.0, -0.5}) < 1e-15);
    CHECK(std::abs(d(1, 0) - cdouble{0.0, 0.5}) < 1e-15);
}

TEST_CASE("partial trace of GHZ over T") {
    PartitionSpec layout{{0}, {1}, {2}};
    DensityMatrix red = partial_trace(density_matrix(ghz()), {0, 1}, layout);
    CHECK(red.dim() == 4);
    CHECK(std::abs(red(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(red(3, 3) - 0.5) < 1e-12);
    CHECK(std::abs(red(0, 3)) < 1e-12);  // coherence is traced away
    CHECK(std::abs(red(1, 1)) < 1e-12);
}

TEST_CASE("partial trace of Bell gives maximally mixed marginal") {
    DensityMatrix red = partial_trace(density_matrix(StateVector::bell()), {0}, 2);
    CHECK(std::abs(red(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(red(1, 1) - 0.5) < 1e-12);
    CHECK(std::abs(red(0, 1)) < 1e-12);
}

TEST_CASE("partial trace of product state") {
    StateVector plus(1, {kInvSqrt2, kInvSqrt2});
    DensityMatrix red = partial_trace(density_matrix(tensor(StateVector::basis(1, 0), plus)), {0}, 2);
    CHECK(std::abs(red(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(red(1, 1)) < 1e-12);
}

TEST_CASE("partial trace rejects mismatched layout") {
    PartitionSpec layout{{0}, {1}, {2}};
    CHECK_THROWS(partial_trace(density_matrix(StateVector::bell()), {0}, layout));
}

TEST_CASE("eigensolve on diagonal density matrices") {
    CMatrix half = CMatrix::identity(2);
    half(0, 0) = half(1, 1) = 0.5;
    EigenSystem sys = eigensolve_hermitian(DensityMatrix(half));
    CHECK(std::abs(sys.eigenvalues[0] - 0.5) < 1e-12);
    CHECK(std::abs(sys.eigenvalues[1] - 0.5) < 1e-12);

    EigenSystem ghz_sys =
        eigensolve_hermitian(partial_trace(density_matrix(ghz()), {0, 1}, 3));
    CHECK(std::abs(ghz_sys.eigenvalues[0] - 0.5) < 1e-12);
    CHECK(std::abs(ghz_sys.eigenvalues[1] - 0.5) < 1e-12);
    CHECK(std::abs(ghz_sys.eigenvalues[2]) < 1e-12);
    CHECK(std::abs(ghz_sys.eigenvalues[3]) < 1e-12);
}

TEST_CASE("eigensolve matches the 2x2 quadratic formula") {
    CMatrix m(2, 2);
    m(0, 0) = 0.75;
    m(0, 1) = 0.25;
    m(1, 0) = 0.25;
    m(1, 1) = 0.25;
    EigenSystem sys = eigensolve_hermitian(DensityMatrix(m));
    // Characteristic polynomial: lambda = (1 +- sqrt(1/2)) / 2.
    const double hi = 0.5 * (1.0 + std::sqrt(0.5));
    const double lo = 0.5 * (1.0 - std::sqrt(0.5));
    CHECK(std::abs(sys.eigenvalues[0] - hi) < 1e-12);
    CHECK(std::abs(sys.eigenvalues[1] - lo) < 1e-12);
}

TEST_CASE("eigensolve rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m(0, 0) = 0.5;
    m(0, 1) = 0.5;
    m(1, 0) = -0.5;
    m(1, 1) = 0.5;
    CHECK_THROWS(hermitian_eigensystem(m));
}

TEST_CASE("schmidt coefficients") {
    PartitionSpec cut{{0}, {1}, {}};
    SchmidtDecomposition bell = schmidt_decompose(StateVector::bell(), cut);
    CHECK(std::abs(bell.coefficients[0] - kInvSqrt2) < 1e-10);
    CHECK(std::abs(bell.coefficients[1] - kInvSqrt2) < 1e-10);

    SchmidtDecomposition prod = schmidt_decompose(StateVector::basis(2, 1), cut);
    CHECK(std::abs(prod.coefficients[0] - 1.0) < 1e-10);
    CHECK(std::abs(prod.coefficients[1]) < 1e-10);

    StateVector skew(2, {std::sqrt(0.75), 0.0, 0.0, std::sqrt(0.25)});
    SchmidtDecomposition sd = schmidt_decompose(skew, cut);
    CHECK(std::abs(sd.coefficients[0] - std::sqrt(0.75)) < 1e-10);
    CHECK(std::abs(sd.coefficients[1] - std::sqrt(0.25)) < 1e-10);
}

TEST_CASE("schmidt rejects empty side") {
    CHECK_THROWS(schmidt_decompose(StateVector::bell(), PartitionSpec{{0, 1}, {}, {}}));
}

TEST_CASE("property: unitary application preserves norm") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> nq(1, 4);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = nq(rng);
        StateVector s = random_state(rng, n);
        std::uniform_int_distribution<std::size_t> tq(0, n - 1);
        StateVector out = apply_gate(s, Gate::single(random_unitary2(rng), tq(rng)));
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("property: partial trace output is a valid density matrix") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        StateVector s = random_state(rng, 4);
        DensityMatrix red = partial_trace(density_matrix(s), {0, 2}, 4);
        CHECK(std::abs(red.trace_real() - 1.0) < 1e-12);
        EigenSystem sys = hermitian_eigensystem(red.entries());
        for (double lam : sys.eigenvalues) CHECK(lam > -1e-10);
        double sum = 0.0;
        for (double lam : sys.eigenvalues) sum += lam;
        CHECK(std::abs(sum - red.trace_real()) < 1e-10);
    }
}

TEST_CASE("property: schmidt reconstruction rebuilds the state") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        StateVector s = random_state(rng, 3);
        PartitionSpec cut{{0}, {1, 2}, {}};
        SchmidtDecomposition sd = schmidt_decompose(s, cut);

        double sum2 = 0.0;
        for (double c : sd.coefficients) sum2 += c * c;
        CHECK(std::abs(sum2 - 1.0) < 1e-10);

        std::vector<cdouble> rebuilt(8);
        for (std::size_t k = 0; k < sd.coefficients.size(); ++k)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 4; ++b)
                    rebuilt[(a << 2) | b] +=
                        sd.coefficients[k] * sd.left_vectors[k][a] * sd.right_vectors[k][b];
        StateVector r(3, std::move(rebuilt));
        CHECK(r.distance_up_to_phase(s) < 1e-10);
    }
}

TEST_CASE("property: schmidt vectors are orthonormal") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 50; ++i) {
        StateVector s = random_state(rng, 4);
        PartitionSpec cut{{0, 1}, {2, 3}, {}};
        SchmidtDecomposition sd = schmidt_decompose(s, cut);
        for (std::size_t a = 0; a < sd.left_vectors.size(); ++a)
            for (std::size_t b = 0; b < sd.left_vectors.size(); ++b) {
                cdouble l = 0.0, r = 0.0;
                for (std::size_t k = 0; k < sd.left_vectors[a].size(); ++k)
                    l += std::conj(sd.left_vectors[a][k]) * sd.left_vectors[b][k];
                for (std::size_t k = 0; k < sd.right_vectors[a].size(); ++k)
                    r += std::conj(sd.right_vectors[a][k]) * sd.right_vectors[b][k];
                const double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(l - want) < 1e-10);
                CHECK(std::abs(r - want) < 1e-10);
            }
    }
}

TEST_CASE("state file round trip and rejection") {
    StateVector s = tensor(StateVector::bell(), StateVector::basis(1, 0));
    StateVector back = parse_state(render_state(s));
    CHECK(back.distance_up_to_phase(s) < 1e-15);

    CHECK_THROWS(parse_state("qubits 2\n1 0\n0 0\n0 0\n"));           // wrong line count
    CHECK_THROWS(parse_state("qubits 1\n0.9 0\n0.1 0\n"));            // not normalized
    CHECK_THROWS(parse_state("qubits 1\n1 0 junk\n0 0\n"));           // malformed line
    CHECK_THROWS(parse_state("dim 2\n1 0\n0 0\n"));                   // bad header
}
