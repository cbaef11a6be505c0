// Copyright 2026 The romlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "romlift/builtins.hpp"
#include "romlift/circuit.hpp"
#include "romlift/gates.hpp"
#include "romlift/statevector.hpp"

namespace romlift {
namespace {

const Signature k11{1, 1};
const double kInvSqrt2 = 1 / std::sqrt(2.0);

StateVector plus_zero() {
    const RegisterLayout layout{1, 1, 0};
    std::vector<amplitude> amps(4);
    amps[0b00] = kInvSqrt2;
    amps[0b10] = kInvSqrt2;
    return StateVector(layout, amps);
}

TEST(ApplyOracle, XorsAnswerIntoRegister) {
    const auto out = apply_oracle(plus_zero(), Oracle(k11, {1, 0}));
    EXPECT_NEAR(std::abs(out[0b01] - amplitude(kInvSqrt2)), 0, 1e-12);
    EXPECT_NEAR(std::abs(out[0b10] - amplitude(kInvSqrt2)), 0, 1e-12);
    EXPECT_NEAR(std::abs(out[0b00]), 0, 1e-12);
    EXPECT_NEAR(std::abs(out[0b11]), 0, 1e-12);
}

TEST(ApplyOracle, ZeroOracleIsIdentity) {
    std::mt19937_64 rng(3);
    const RegisterLayout layout{2, 2, 1};
    const auto U = gates::random_unitary(layout.dim(), rng);
    const auto s = apply_unitary(StateVector(layout), U, std::vector<int>{0, 1, 2, 3, 4});
    const auto out = apply_oracle(s, Oracle::constant({2, 2}, 0));
    EXPECT_NEAR(euclidean_distance(s, out), 0, 1e-12);
}

TEST(ApplyOracle, IsAnInvolution) {
    std::mt19937_64 rng(4);
    const RegisterLayout layout{2, 2, 1};
    const auto U = gates::random_unitary(layout.dim(), rng);
    const auto s = apply_unitary(StateVector(layout), U, std::vector<int>{0, 1, 2, 3, 4});
    const auto H = builtins::random_oracle({2, 2}, rng);
    EXPECT_NEAR(euclidean_distance(s, apply_oracle(apply_oracle(s, H), H)), 0, 1e-12);
}

TEST(ApplyOracle, SignatureMustMatchLayout) {
    EXPECT_THROW(apply_oracle(plus_zero(), Oracle::constant({2, 1}, 0)), DimensionError);
}

TEST(Gates, AreUnitary) {
    std::mt19937_64 rng(1);
    for (const auto &U : {gates::x(), gates::h(), gates::z(), gates::ry(0.3), gates::cx(), gates::ccx(), gates::swap(),
                          gates::random_unitary(8, rng)}) {
        EXPECT_LE(U.unitarity_defect(), kUnitarityTolerance);
    }
}

TEST(QueryCircuit, RejectsNonUnitaryLayer) {
    Matrix bad = Matrix::identity(2);
    bad(0, 0) = 2.0;
    EXPECT_THROW(QueryCircuit({1, 1, 0}, {UnitaryLayer{{0}, bad}}, {0}), UnitarityError);
}

TEST(QueryCircuit, RejectsWrongMatrixDimension) {
    EXPECT_THROW(QueryCircuit({1, 1, 0}, {UnitaryLayer{{0, 1}, gates::x()}}, {0}), DimensionError);
}

TEST(QueryCircuit, RejectsBadWires) {
    EXPECT_THROW(QueryCircuit({1, 1, 0}, {}, {2}), DimensionError);
    EXPECT_THROW(QueryCircuit({1, 1, 0}, {}, {0, 0}), DimensionError);
}

TEST(QueryCircuit, CountsOracleLayers) {
    EXPECT_EQ(CircuitBuilder(1, 1, 0).oracle().h(0).oracle().outputs({0}).build().query_count(), 2);
}

TEST(RunCircuit, IdentityLayerOnly) {
    const QueryCircuit c({1, 1, 0}, {UnitaryLayer{{0}, Matrix::identity(2)}}, {0});
    const auto run = run_circuit(c, Oracle::constant(k11, 1));
    EXPECT_NEAR(std::abs(run.final_state[0] - amplitude(1)), 0, 1e-12);
    EXPECT_EQ(run.ledger.total, 0);
}

TEST(RunCircuit, ClassicalQueryAtZero) {
    const auto run = run_circuit(builtins::alg_query0(), Oracle(k11, {1, 0}));
    EXPECT_NEAR(run.ledger.at(0), 1, 1e-12);
    EXPECT_NEAR(run.ledger.at(1), 0, 1e-12);
}

TEST(RunCircuit, UniformSuperpositionQuery) {
    const auto c = CircuitBuilder(2, 1, 0).h(0).h(1).oracle().outputs({0}).build();
    const auto run = run_circuit(c, Oracle::constant({2, 1}, 0));
    for (Point x = 0; x < 4; ++x) {
        EXPECT_NEAR(run.ledger.at(x), 0.25, 1e-12);
    }
}

TEST(RunCircuit, RandomCircuitsPreserveNormAndBoundMagnitude) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const int Q = 1 + static_cast<int>(rng() % 3);
        const auto c = builtins::random_query_circuit(2, 1, 1, Q, rng);
        const auto run = run_circuit(c, builtins::random_oracle({2, 1}, rng));
        EXPECT_NEAR(run.final_state.norm(), 1, kNormTolerance);
        double sum = 0;
        for (double q : run.ledger.per_point) {
            sum += q;
        }
        EXPECT_NEAR(sum, run.ledger.total, 1e-9);
        EXPECT_NEAR(run.ledger.total, Q, 1e-9);
    }
}

TEST(OutputDistribution, IdentityCircuitOutputsZero) {
    const auto c = CircuitBuilder(1, 1, 0).outputs({0}).build();
    EXPECT_NEAR(output_distribution(c, Oracle(k11, {1, 1})).probability(Bits{0, 1}), 1, 1e-12);
}

TEST(OutputDistribution, ReadsOracleValue) {
    EXPECT_NEAR(output_distribution(builtins::alg_query0(), Oracle(k11, {1, 0})).probability(Bits{1, 1}), 1, 1e-12);
}

TEST(OutputDistribution, DeutschSeparatesConstantFromBalanced) {
    for (const auto &H : enumerate_all(k11)) {
        const std::uint64_t balanced = H(0) ^ H(1);
        const auto d = output_distribution(builtins::alg_deutsch(), H);
        EXPECT_NEAR(d.probability(Bits{balanced, 1}), 1, 1e-12) << H.str();
    }
}

TEST(OutputDistribution, MultiWireOutputIsMsbFirst) {
    const auto c = CircuitBuilder(1, 1, 0).x(1).outputs({0, 1}).build();
    EXPECT_NEAR(output_distribution(c, Oracle::constant(k11)).probability(Bits::parse("01")), 1, 1e-12);
}

TEST(Distances, EqualStates) {
    const auto a = plus_zero();
    EXPECT_NEAR(euclidean_distance(a, a), 0, 1e-15);
    EXPECT_NEAR(trace_distance_pure(a, a), 0, 1e-15);
}

TEST(Distances, OrthogonalStates) {
    const RegisterLayout layout{1, 1, 0};
    const auto a = StateVector::basis(layout, 0), b = StateVector::basis(layout, 3);
    EXPECT_NEAR(euclidean_distance(a, b), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(trace_distance_pure(a, b), 1, 1e-12);
}

TEST(Distances, GlobalPhaseIsNotQuotiented) {
    const RegisterLayout layout{1, 1, 0};
    const auto a = StateVector::basis(layout, 1);
    const StateVector b(layout, {0, -1.0, 0, 0});
    EXPECT_NEAR(euclidean_distance(a, b), 2, 1e-12);
    EXPECT_NEAR(trace_distance_pure(a, b), 0, 1e-12);
}

TEST(Distances, TraceDistanceAtEuclideanPointTwo) {
    // Real states at angle t have euclidean distance 2 sin(t/2).
    const double t = 2 * std::asin(0.1);
    const RegisterLayout layout{1, 0, 0};
    const StateVector a(layout, {1.0, 0.0});
    const StateVector b(layout, {std::cos(t), std::sin(t)});
    const double eps = euclidean_distance(a, b);
    ASSERT_NEAR(eps, 0.2, 1e-12);
    EXPECT_LE(trace_distance_pure(a, b), 0.2 * std::sqrt(1 - 0.01) + 1e-12);
}

TEST(Swapping, EqualOraclesGiveZero) {
    std::mt19937_64 rng(2);
    const auto c = builtins::random_query_circuit(2, 1, 0, 2, rng);
    const auto f = builtins::random_oracle({2, 1}, rng);
    const auto chk = swapping_check(c, f, f);
    EXPECT_NEAR(chk.lhs, 0, 1e-12);
    EXPECT_NEAR(chk.rhs, 0, 1e-12);
}

TEST(Swapping, DisagreementOffTheQueriedPoint) {
    const auto chk = swapping_check(builtins::alg_query0(), Oracle(k11, {0, 0}), Oracle(k11, {0, 1}));
    EXPECT_NEAR(chk.lhs, 0, 1e-12);
    EXPECT_NEAR(chk.rhs, 0, 1e-12);
}

// A classical query at a point where the oracles differ moves the state to an orthogonal
// one: distance sqrt(2) against sqrt(1 * 1) = 1 from the magnitude bound.
TEST(Swapping, ClassicalFlipExceedsUnscaledBound) {
    const auto chk = swapping_check(builtins::alg_query0(), Oracle(k11, {0, 0}), Oracle(k11, {1, 0}));
    EXPECT_NEAR(chk.lhs, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(chk.rhs, 1, 1e-12);
    EXPECT_LE(chk.lhs, chk.rhs_factor_two);
}

TEST(Swapping, FactorTwoBoundHoldsOnRandomCircuits) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        const int Q = 1 + static_cast<int>(rng() % 3);
        const auto c = builtins::random_query_circuit(2, 1, 1, Q, rng);
        const auto f = builtins::random_oracle({2, 1}, rng);
        const auto g = builtins::random_oracle({2, 1}, rng);
        const auto chk = swapping_check(c, f, g);
        EXPECT_LE(chk.lhs, chk.rhs_factor_two + 1e-9);
    }
}

TEST(MeasureBound, HoldsOnPhaseAlignedRandomPairs) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss;
    const RegisterLayout layout{3, 0, 0};
    for (int t = 0; t < 200; ++t) {
        std::vector<amplitude> a(8), b(8);
        double na = 0, nb = 0;
        for (int i = 0; i < 8; ++i) {
            a[i] = {gauss(rng), gauss(rng)};
            b[i] = {gauss(rng), gauss(rng)};
            na += std::norm(a[i]);
            nb += std::norm(b[i]);
        }
        amplitude overlap = 0;
        for (int i = 0; i < 8; ++i) {
            a[i] /= std::sqrt(na);
            b[i] /= std::sqrt(nb);
        }
        for (int i = 0; i < 8; ++i) {
            overlap += std::conj(a[i]) * b[i];
        }
        for (auto &x : b) {
            x *= std::conj(overlap) / std::abs(overlap);
        }
        const StateVector sa(layout, a), sb(layout, b);
        const double eps = euclidean_distance(sa, sb);
        EXPECT_NEAR(trace_distance_pure(sa, sb), eps * std::sqrt(1 - eps * eps / 4), 1e-9);
    }
}

}  // namespace
}  // namespace romlift
