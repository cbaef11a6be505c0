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

#include <gtest/gtest.h>

#include "romlift/builtins.hpp"
#include "romlift/lifting.hpp"

namespace romlift {
namespace {

TEST(LiftParams, DerivedFromTargetAdvantage) {
    const auto p = LiftParams::derive(0.5, 1, 2);
    const double delta = std::pow(0.5 / 6.0, 2);
    EXPECT_NEAR(p.delta, delta, 1e-15);
    EXPECT_EQ(p.limit, static_cast<std::uint64_t>(std::ceil(std::log(1 / delta) * 16 / (delta * delta))) + 1);
    EXPECT_EQ(p.limit, 1648866u);
    EXPECT_FALSE(p.delta_overridden);
}

TEST(LiftParams, ZeroAdvantageOrNoQueriesGiveDeltaOne) {
    EXPECT_EQ(LiftParams::derive(0, 1, 2).delta, 1);
    EXPECT_EQ(LiftParams::derive(0.5, 0, 2).delta, 1);
    EXPECT_EQ(LiftParams::derive(0, 1, 2).limit, 1u);
}

TEST(LiftParams, Overrides) {
    const auto p = LiftParams::derive(0.5, 1, 2, 0.25, 7);
    EXPECT_EQ(p.delta, 0.25);
    EXPECT_EQ(p.limit, 7u);
    EXPECT_TRUE(p.delta_overridden);
    EXPECT_TRUE(p.limit_overridden);
    EXPECT_THROW(LiftParams::derive(0.5, 1, 2, 0.0), Error);
}

TEST(DistinguisherB, OutOfRangeOutputsZeroWithoutQueries) {
    const auto G = builtins::prg_const();
    const PrgRange range(G);
    ASSERT_FALSE(range.contains(Bits::parse("01")));
    const auto r = distinguisher_B(Oracle::constant({1, 1}), G, range, Bits::parse("01"), builtins::a_const(),
                                   LiftParams::derive(0.75, 1, 1));
    EXPECT_TRUE(r.out_of_range);
    EXPECT_EQ(r.queries, 0u);
    EXPECT_EQ(r.output.probability(1), 0);
}

TEST(DistinguisherB, InconsistentTranscriptGivesZero) {
    const auto G = builtins::prg_id();
    const auto r = distinguisher_B(Oracle({1, 1}, {1, 0}), G, PrgRange(G), Bits::parse("00"), builtins::a_par(),
                                   LiftParams::derive(0.5, 1, 2));
    EXPECT_TRUE(r.bottom);
    EXPECT_EQ(r.output.probability(1), 0);
}

TEST(DistinguisherB, CompletesLearnedPointsUniformly) {
    // With H = 0 and g = 00, B learns both points and runs A_par on H itself.
    const auto G = builtins::prg_id();
    const Oracle H = Oracle::constant({1, 1});
    const auto A = builtins::a_par();
    const auto r = distinguisher_B(H, G, PrgRange(G), Bits::parse("00"), A, LiftParams::derive(0.5, 1, 2));
    ASSERT_TRUE(r.h);
    EXPECT_EQ(*r.h, H.as_partial());
    EXPECT_NEAR(r.output.probability(1), A.accept(Bits::parse("00"), H), 1e-12);
}

TEST(Lifting, IdentityPrgPinnedValues) {
    const auto rep = lifting_report(builtins::a_par(), builtins::prg_id(), std::nullopt);
    EXPECT_NEAR(rep.adv_A, 0.5, 1e-12);
    EXPECT_NEAR(rep.pr_prg_A, 1, 1e-12);
    EXPECT_NEAR(rep.pr_rand_A, 0.5, 1e-12);
    EXPECT_NEAR(rep.pr_prg_B, 1, 1e-12);
    // B's random-side acceptance differs from A's: the learned points pin the parity.
    EXPECT_NEAR(rep.pr_rand_B, 0.375, 1e-12);
    EXPECT_NEAR(rep.adv_B, 0.625, 1e-12);
    EXPECT_NEAR(rep.delta_prg, 0, 1e-12);
    EXPECT_TRUE(rep.delta_prg_ok);
    EXPECT_TRUE(rep.hybrids_ok);
    EXPECT_TRUE(rep.queries_within_limit);
    EXPECT_LE(rep.max_queries, 2u);
    EXPECT_TRUE(rep.pass);
}

TEST(Lifting, DeltaOneMakesRandomSidesEqual) {
    const auto rep = lifting_report(builtins::a_par(), builtins::prg_id(), std::nullopt, {}, 1.0);
    EXPECT_NEAR(rep.pr_rand_B, rep.pr_rand_A, 1e-12);
    EXPECT_EQ(rep.max_queries, 0u);
}

TEST(Lifting, OtherFixtures) {
    const auto a2 = lifting_report(builtins::a_adaptive2(), builtins::prg_adaptive2(), std::nullopt);
    EXPECT_NEAR(a2.adv_A, 0.25, 1e-12);
    EXPECT_NEAR(a2.adv_B, 0.3125, 1e-12);
    EXPECT_TRUE(a2.pass);
    const auto c = lifting_report(builtins::a_const(), builtins::prg_const(), std::nullopt);
    EXPECT_NEAR(c.adv_A, 0.75, 1e-12);
    EXPECT_NEAR(c.adv_B, 0.75, 1e-12);
    EXPECT_TRUE(c.pass);
}

TEST(Lifting, ZeroAdvantagePasses) {
    const auto G = builtins::prg_id();
    const auto rep = lifting_report(builtins::zero_distinguisher(G.shape().sig, 2), G, std::nullopt);
    EXPECT_EQ(rep.adv_A, 0);
    EXPECT_EQ(rep.params.delta, 1);
    EXPECT_TRUE(rep.pass);
}

// For every delta the hybrid rows obey their bound and the row weights sum to one.
TEST(Lifting, RowsAcrossDeltas) {
    for (double delta : {0.5, 0.25, 0.04, 0.01}) {
        const auto rep = lifting_report(builtins::a_par(), builtins::prg_id(), std::nullopt, {}, delta);
        double weight = 0, prg_A = 0;
        for (const auto &row : rep.rows) {
            weight += row.weight;
            prg_A += row.weight * row.prg_A;
            EXPECT_LE(row.hyb_gap, row.hyb_bound + 1e-9);
        }
        EXPECT_NEAR(weight, 1, 1e-12);
        EXPECT_NEAR(prg_A, rep.pr_prg_A, 1e-12);
    }
}

TEST(Lifting, SampledEstimateIsSeededAndClose) {
    RunOptions opt;
    opt.mode = Mode::kSampled;
    opt.seed = 5;
    opt.trials = 20000;
    const auto a = lifting_report_sampled(builtins::a_par(), builtins::prg_id(), std::nullopt, opt);
    const auto b = lifting_report_sampled(builtins::a_par(), builtins::prg_id(), std::nullopt, opt);
    EXPECT_EQ(a.adv_B, b.adv_B);
    EXPECT_NEAR(a.adv_B, 0.625, 0.03);
    EXPECT_THROW(lifting_report(builtins::a_par(), builtins::prg_id(), std::nullopt, opt), Error);
}

TEST(Lifting, BudgetIsEnforced) {
    RunOptions opt;
    opt.budget = 4;
    EXPECT_THROW(lifting_report(builtins::a_par(), builtins::prg_id(), std::nullopt, opt), BudgetExceeded);
}

}  // namespace
}  // namespace romlift
