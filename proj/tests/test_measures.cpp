#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eraserlab/measures.hpp"
#include "test_util.hpp"

using namespace eraserlab;
using eraserlab::testing::random_state;
using eraserlab::testing::random_unitary2;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// e(0.75) evaluated directly.
const double kE075 = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));

StateVector ghz() {
    std::vector<cdouble> amps(8);
    amps[0] = kInvSqrt2;
    amps[7] = kInvSqrt2;
    return StateVector(3, std::move(amps));
}

// alpha|000> + beta|111> with alpha^2 given.
StateVector tagged_state(double alpha2) {
    std::vector<cdouble> amps(8);
    amps[0] = std::sqrt(alpha2);
    amps[7] = std::sqrt(1.0 - alpha2);
    return StateVector(3, std::move(amps));
}

const PartitionSpec kCutABT{{0}, {1}, {2}};
const PartitionSpec kCutAB{{0}, {1}, {}};

}  // namespace

TEST_CASE("binary entropy endpoints and derived value") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.75) == doctest::Approx(0.8112781).epsilon(1e-6));
    CHECK(binary_entropy(0.75) == doctest::Approx(kE075).epsilon(1e-14));
    CHECK_THROWS(binary_entropy(-0.01));
    CHECK_THROWS(binary_entropy(1.01));
}

TEST_CASE("pure state entanglement") {
    CHECK(entanglement_pure(StateVector::bell(), kCutAB).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(entanglement_pure(StateVector::basis(2, 0), kCutAB).value == doctest::Approx(0.0));
    StateVector skew(2, {std::sqrt(0.75), 0.0, 0.0, std::sqrt(0.25)});
    CHECK(entanglement_pure(skew, kCutAB).value == doctest::Approx(kE075).epsilon(1e-10));
    // A side larger than one qubit is rejected.
    std::mt19937_64 rng(1);
    CHECK_THROWS(entanglement_pure(random_state(rng, 3), PartitionSpec{{0, 1}, {2}, {}}));
}

TEST_CASE("entanglement of projection on GHZ") {
    CHECK(entanglement_of_projection(ghz(), kCutABT, taggant_basis({0.0, 0.0})).value ==
          doctest::Approx(0.0));
    CHECK(entanglement_of_projection(ghz(), kCutABT, taggant_basis({0.25 * kPi, 0.0})).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entanglement of projection matches the closed form") {
    // alpha^2 = 0.75 with a^2 = 1/2 gives p0 = 1/2 and E_p = e(0.75).
    const double theta = std::acos(std::sqrt(0.5));
    CHECK(entanglement_of_projection(tagged_state(0.75), kCutABT, taggant_basis({theta, 0.0}))
              .value == doctest::Approx(kE075).epsilon(1e-9));
}

TEST_CASE("entanglement of projection rejects mismatched basis") {
    CHECK_THROWS(entanglement_of_projection(ghz(), PartitionSpec{{0}, {1, 2}, {}},
                                            taggant_basis({0.0, 0.0})));
}

TEST_CASE("closed form evaluator") {
    CHECK(ep_closed_form(0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ep_closed_form(0.5, 0.0) == doctest::Approx(0.0));
    CHECK(ep_closed_form(1.0, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ep_closed_form(1.0, 0.9) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS(ep_closed_form(-0.1, 0.5));
    CHECK_THROWS(ep_closed_form(0.5, 1.1));
}

TEST_CASE("entanglement pf") {
    CHECK(entanglement_pf(ghz(), kCutABT, std::nullopt).value ==
          doctest::Approx(0.0).epsilon(1e-9));
    MeasurementSpec comp{{2}, taggant_basis({0.0, 0.0})};
    MeasurementSpec pm{{2}, taggant_basis({0.25 * kPi, 0.0})};
    CHECK(entanglement_pf(ghz(), kCutABT, comp).value == doctest::Approx(0.0));
    CHECK(entanglement_pf(ghz(), kCutABT, pm).value == doctest::Approx(1.0).epsilon(1e-9));

    // Product taggant: any complete T measurement leaves E_pf at 1.
    StateVector bellt = tensor(StateVector::bell(), StateVector::basis(1, 0));
    CHECK(entanglement_pf(bellt, kCutABT, comp).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(entanglement_pf(bellt, kCutABT, pm).value == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS(entanglement_pf(ghz(), kCutABT, MeasurementSpec{{0}, taggant_basis({0.0, 0.0})}));
}

TEST_CASE("formation and assistance extremization") {
    CHECK(entanglement_of_formation(ghz(), kCutABT).value == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(entanglement_of_assistance(ghz(), kCutABT).value == doctest::Approx(1.0).epsilon(1e-6));

    StateVector bellt = tensor(StateVector::bell(), StateVector::basis(1, 0));
    CHECK(entanglement_of_formation(bellt, kCutABT).value == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(entanglement_of_formation(StateVector::basis(3, 0), kCutABT).value ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(entanglement_of_assistance(StateVector::basis(3, 0), kCutABT).value ==
          doctest::Approx(0.0).epsilon(1e-9));

    // Maximum of the closed form over a^2 sits at a^2 = 1/2 with value e(0.75).
    CHECK(entanglement_of_assistance(tagged_state(0.75), kCutABT).value ==
          doctest::Approx(kE075).epsilon(1e-7));

    CHECK_THROWS(entanglement_of_formation(StateVector::bell(), kCutAB));
}

TEST_CASE("concurrence oracle") {
    CHECK(concurrence_ef_oracle(density_matrix(StateVector::bell())) ==
          doctest::Approx(1.0).epsilon(1e-10));
    DensityMatrix mixed = partial_trace(density_matrix(ghz()), {0, 1}, 3);
    CHECK(concurrence_ef_oracle(mixed) == doctest::Approx(0.0).epsilon(1e-10));
    DensityMatrix skew = partial_trace(density_matrix(tagged_state(0.75)), {0, 1}, 3);
    CHECK(concurrence_ef_oracle(skew) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("property: closed-form identity on a 51x51 grid (phi = 0)") {
    for (int i = 0; i <= 50; ++i)
        for (int j = 0; j <= 50; ++j) {
            const double alpha2 = i / 50.0;
            const double a2 = j / 50.0;
            const double theta = std::acos(std::sqrt(a2));
            const double numeric =
                entanglement_of_projection(tagged_state(alpha2), kCutABT,
                                           taggant_basis({theta, 0.0}))
                    .value;
            CHECK(std::abs(numeric - ep_closed_form(alpha2, a2)) < 1e-9);
        }
}

TEST_CASE("property: local unitaries leave E unchanged") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        StateVector s = random_state(rng, 2);
        const double before = entanglement_pure(s, kCutAB).value;
        StateVector rotated = apply_gate(s, Gate::single(random_unitary2(rng), i % 2));
        CHECK(std::abs(entanglement_pure(rotated, kCutAB).value - before) < 1e-9);
    }
}

TEST_CASE("property: product taggant is neutral for E_p") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 100; ++i) {
        StateVector ab = random_state(rng, 2);
        StateVector t = random_state(rng, 1);
        StateVector s = tensor(ab, t);
        const double pure = entanglement_pure(ab, kCutAB).value;
        BasisParams params{std::acos(std::sqrt(unit(rng))), angle(rng)};
        const double ep = entanglement_of_projection(s, kCutABT, taggant_basis(params)).value;
        CHECK(std::abs(ep - pure) < 1e-9);
    }
}

TEST_CASE("property: sandwich E_f <= E_p <= E_a (sample)") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 25; ++i) {
        StateVector s = random_state(rng, 3);
        const double ef = entanglement_of_formation(s, kCutABT).value;
        const double ea = entanglement_of_assistance(s, kCutABT).value;
        for (int b = 0; b < 10; ++b) {
            BasisParams params{std::acos(std::sqrt(unit(rng))), angle(rng)};
            const double ep = entanglement_of_projection(s, kCutABT, taggant_basis(params)).value;
            CHECK(ef - 1e-6 <= ep);
            CHECK(ep <= ea + 1e-6);
            CHECK(ep >= -1e-9);
            CHECK(ep <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("property: optimizer matches the concurrence oracle (sample)") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 25; ++i) {
        StateVector s = random_state(rng, 3);
        const double opt = entanglement_of_formation(s, kCutABT).value;
        const double oracle = concurrence_ef_oracle(partial_trace(density_matrix(s), {0, 1}, 3));
        CHECK(std::abs(opt - oracle) < 1e-4);
    }
}

TEST_CASE("two-qubit taggant basis machinery") {
    std::vector<double> params(12, 0.0);
    CHECK(givens_basis(params).u.max_abs_diff(CMatrix::identity(4)) < 1e-15);
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 20; ++i) {
        for (double& p : params) p = angle(rng);
        CHECK(givens_basis(params).u.is_unitary(1e-12));
    }
    CHECK_THROWS(givens_basis(std::vector<double>(5, 0.0)));

    // Bell x |00>_T: formation stays 1 for a two-qubit taggant.
    StateVector s = tensor(StateVector::bell(), StateVector::basis(2, 0));
    PartitionSpec cut{{0}, {1}, {2, 3}};
    CHECK(entanglement_of_formation(s, cut).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(entanglement_of_assistance(s, cut).value == doctest::Approx(1.0).epsilon(1e-6));
}
