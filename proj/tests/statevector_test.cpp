#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "stackfold/errors.hpp"
#include "stackfold/statevector.hpp"

namespace stackfold {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(BuildAnsatz, ThreeQubitsOneLayer) {
    const Ansatz a = build_ansatz(3, 1);
    EXPECT_EQ(a.parameter_count(), 6u);
    ASSERT_EQ(a.entangler_layers.size(), 2u);
    EXPECT_EQ(a.entangler_layers[0], (std::vector<Edge>{{0, 1}}));
    EXPECT_EQ(a.entangler_layers[1], (std::vector<Edge>{{1, 2}}));
}

TEST(BuildAnsatz, PairwiseLayers) {
    const Ansatz a = build_ansatz(4, 2);
    EXPECT_EQ(a.parameter_count(), 12u);
    EXPECT_EQ(a.entangler_layers[0], (std::vector<Edge>{{0, 1}, {2, 3}}));
    EXPECT_EQ(a.entangler_layers[1], (std::vector<Edge>{{1, 2}}));
}

TEST(BuildAnsatz, SingleQubitHasNoEdges) {
    const Ansatz a = build_ansatz(1, 3);
    EXPECT_EQ(a.parameter_count(), 4u);
    EXPECT_TRUE(a.entangler_layers[0].empty());
    EXPECT_TRUE(a.entangler_layers[1].empty());
    EXPECT_THROW(build_ansatz(0, 1), std::invalid_argument);
    EXPECT_THROW(build_ansatz(2, 0), std::invalid_argument);
}

TEST(Statevector, RyPiFlips) {
    const std::vector<double> theta = {kPi, 0.0};
    const StateVector s = statevector(build_ansatz(1, 1), theta);
    EXPECT_NEAR(std::abs(s.amplitude(0)), 0.0, 1e-12);
    EXPECT_NEAR(s.amplitude(1).real(), 1.0, 1e-12);
}

TEST(Statevector, ZeroAnglesIsIdentity) {
    const std::vector<double> theta(6, 0.0);
    const StateVector s = statevector(build_ansatz(2, 2), theta);
    EXPECT_NEAR(s.amplitude(0).real(), 1.0, 1e-15);
    for (std::uint64_t k = 1; k < 4; ++k) EXPECT_EQ(std::abs(s.amplitude(k)), 0.0);
}

TEST(Statevector, ParameterCountChecked) {
    const std::vector<double> theta(5, 0.0);
    EXPECT_THROW(statevector(build_ansatz(2, 2), theta), std::invalid_argument);
    EXPECT_THROW(StateVector(kMaxQubits + 1), CapacityError);
}

TEST(Statevector, QubitZeroIsLeftmostBit) {
    // Flip only qubit 0 of 3: bitstring "100" = index 4.
    StateVector s(3);
    s.apply_ry(0, kPi);
    EXPECT_NEAR(std::abs(s.amplitude(4)), 1.0, 1e-12);
}

TEST(Statevector, MatchesDenseMatrixOracle) {
    Rng rng(3);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t p = 1; p <= 2; ++p) {
            const Ansatz a = build_ansatz(n, p);
            std::vector<double> theta(a.parameter_count());
            for (auto& t : theta) t = rng.uniform01() * 2 * kPi;
            const StateVector s = statevector(a, theta);
            const auto want = oracle::two_local_state(n, p, theta);
            for (std::size_t k = 0; k < want.size(); ++k) {
                ASSERT_NEAR(std::abs(s.amplitude(k) - want[k]), 0.0, 1e-9);
            }
            EXPECT_NEAR(s.norm(), 1.0, 1e-9);
        }
    }
}

TEST(Statevector, NormPreservedGateByGate) {
    Rng rng(8);
    StateVector s(6);
    for (int g = 0; g < 200; ++g) {
        if (rng.below(2)) {
            s.apply_ry(rng.below(6), rng.uniform01() * 2 * kPi);
        } else {
            const std::size_t a = rng.below(5);
            s.apply_cz(a, a + 1);
        }
        ASSERT_NEAR(s.norm(), 1.0, 1e-9);
    }
}

TEST(Statevector, SameLayerCzOrderIrrelevant) {
    Rng rng(15);
    StateVector a(6), b(6);
    for (std::size_t q = 0; q < 6; ++q) {
        const double t = rng.uniform01() * 2 * kPi;
        a.apply_ry(q, t);
        b.apply_ry(q, t);
    }
    const std::vector<Edge> layer = {{0, 1}, {2, 3}, {4, 5}};
    for (auto [x, y] : layer) a.apply_cz(x, y);
    for (auto it = layer.rbegin(); it != layer.rend(); ++it) b.apply_cz(it->first, it->second);
    for (std::uint64_t k = 0; k < a.dimension(); ++k) EXPECT_EQ(a.amplitude(k), b.amplitude(k));
}

TEST(Sample, DeterministicState) {
    Rng rng(1);
    const std::vector<double> theta = {kPi, 0.0};
    const SampleSet s = sample(build_ansatz(1, 1), theta, 100, rng);
    EXPECT_EQ(s.shots, 100u);
    ASSERT_EQ(s.counts.size(), 1u);
    EXPECT_EQ(s.counts.at(1), 100u);
    EXPECT_EQ(to_string(s.bits_of(1)), "1");
}

TEST(Sample, BalancedStateFrequency) {
    Rng rng(2);
    const std::vector<double> theta = {kPi / 2, 0.0};
    const SampleSet s = sample(build_ansatz(1, 1), theta, 100000, rng);
    EXPECT_NEAR(static_cast<double>(s.counts.at(1)) / 1e5, 0.5, 0.01);
}

TEST(Sample, FixedSeedAndZeroAngles) {
    const Ansatz a = build_ansatz(4, 2);
    std::vector<double> theta(a.parameter_count());
    Rng init(4);
    for (auto& t : theta) t = init.uniform01() * 2 * kPi;
    Rng r1(77), r2(77);
    const SampleSet s1 = sample(a, theta, 500, r1);
    const SampleSet s2 = sample(a, theta, 500, r2);
    EXPECT_EQ(s1.counts, s2.counts);
    std::uint64_t total = 0;
    for (const auto& [idx, c] : s1.counts) total += c;
    EXPECT_EQ(total, 500u);

    const std::vector<double> zeros(a.parameter_count(), 0.0);
    const SampleSet z = sample(a, zeros, 64, r1);
    ASSERT_EQ(z.counts.size(), 1u);
    EXPECT_EQ(z.counts.begin()->first, 0u);
}

}  // namespace
}  // namespace stackfold
