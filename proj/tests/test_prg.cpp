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
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "romlift/builtins.hpp"
#include "romlift/conditional.hpp"
#include "romlift/experiments.hpp"
#include "romlift/find_transcript.hpp"

namespace romlift {
namespace {

const Signature k11{1, 1};

Transcript transcript(std::vector<std::pair<Point, Value>> pairs) {
    return Transcript{k11, std::move(pairs)};
}

TEST(RunPrg, IdOnZeroOracle) {
    const auto out = run_prg(builtins::prg_id(), Oracle::constant(k11, 0), 0);
    EXPECT_EQ(out.g.str(), "00");
    EXPECT_EQ(out.tau, transcript({{0, 0}, {1, 0}}));
}

TEST(RunPrg, IdOnSwapOracleSeedOne) {
    const auto out = run_prg(builtins::prg_id(), Oracle(k11, {1, 0}), 1);
    EXPECT_EQ(out.g.str(), "01");
    EXPECT_EQ(out.tau, transcript({{1, 0}, {0, 1}}));
}

TEST(RunPrg, RepeatedCallsAgree) {
    const auto G = builtins::prg_adaptive2();
    const Oracle H({2, 1}, {1, 0, 0, 1});
    for (std::uint64_t s = 0; s < 4; ++s) {
        EXPECT_EQ(run_prg(G, H, s).g, run_prg(G, H, s).g);
        EXPECT_EQ(run_prg(G, H, s).tau, run_prg(G, H, s).tau);
    }
}

// Every built-in makes exactly Q_G distinct queries and its transcript agrees with H.
TEST(RunPrg, TranscriptInvariantsOnAllPairs) {
    for (const auto &name : builtins::prg_names()) {
        const auto G = *builtins::find_prg(name);
        for_each_pair(G, PartialFunction(G.shape().sig), [&](const Oracle &H, std::uint64_t s) {
            const auto out = G.eval(s, H);
            EXPECT_EQ(out.tau.pairs.size(), static_cast<std::size_t>(G.shape().queries)) << name;
            std::set<Point> seen;
            for (const auto &[x, y] : out.tau.pairs) {
                EXPECT_TRUE(seen.insert(x).second) << name;
                EXPECT_EQ(H(x), y) << name;
            }
            EXPECT_EQ(out.g.width, G.shape().ell);
        });
    }
}

TEST(RunPrg, ShortQueryCountIsRejected) {
    const ClassicalPrg bad("bad", {1, 2, k11, 2}, [](std::uint64_t s, ClassicalAccess &H) {
        H.query(static_cast<Point>(s));
        return std::uint64_t{0};
    });
    EXPECT_THROW(bad.eval(0, Oracle::constant(k11)), QueryCountError);
}

TEST(TranscriptDistribution, IdUniformOverTwoOrders) {
    const auto d = transcript_distribution(builtins::prg_id(), Bits::parse("00"), PartialFunction(k11));
    ASSERT_TRUE(d);
    EXPECT_EQ(d->size(), 2u);
    EXPECT_NEAR(d->probability(transcript({{0, 0}, {1, 0}})), 0.5, 1e-12);
    EXPECT_NEAR(d->probability(transcript({{1, 0}, {0, 0}})), 0.5, 1e-12);
}

TEST(TranscriptDistribution, InconsistentConditioningIsUndefined) {
    const auto G = builtins::prg_id();
    EXPECT_FALSE(transcript_distribution(G, Bits::parse("00"), PartialFunction(k11, {{0, 1}})));
    EXPECT_FALSE(transcript_distribution(G, Bits::parse("01"), Oracle(k11, {0, 0}).as_partial()));
}

// Independent count: 8 (H, s) pairs, keep those with g = 00 and H consistent with h.
TEST(TranscriptDistribution, MatchesBruteForceForEveryConditioning) {
    const auto G = builtins::prg_id();
    for (std::uint64_t gv = 0; gv < 4; ++gv) {
        const Bits g{gv, 2};
        for (const auto &h : {PartialFunction(k11), PartialFunction(k11, {{0, 0}}), PartialFunction(k11, {{1, 1}})}) {
            std::map<Transcript, double> expected;
            double total = 0;
            for (std::uint32_t t = 0; t < 4; ++t) {
                const Oracle H(k11, {t >> 1, t & 1u});
                if (!H.consistent_with(h)) {
                    continue;
                }
                for (std::uint64_t s = 0; s < 2; ++s) {
                    const Point a = static_cast<Point>(s), b = a ^ 1u;
                    if (((std::uint64_t{H(a)} << 1) | H(b)) == gv) {
                        expected[transcript({{a, H(a)}, {b, H(b)}})] += 1;
                        total += 1;
                    }
                }
            }
            const auto d = transcript_distribution(G, g, h);
            ASSERT_EQ(d.has_value(), total > 0);
            if (!d) {
                continue;
            }
            for (const auto &[tau, c] : expected) {
                EXPECT_NEAR(d->probability(tau), c / total, 1e-12);
            }
            EXPECT_EQ(d->size(), expected.size());
        }
    }
}

TEST(ConditionalOracles, IdZeroOutputForcesZeroOracle) {
    const auto d = conditional_oracle_distribution(builtins::prg_id(), Bits::parse("00"), PartialFunction(k11));
    ASSERT_TRUE(d);
    EXPECT_NEAR(d->probability(Oracle::constant(k11, 0)), 1, 1e-12);
}

TEST(ConditionalOracles, OutOfRangeIsUndefined) {
    // The const PRG only outputs 00.
    EXPECT_FALSE(conditional_oracle_distribution(builtins::prg_const(), Bits::parse("10"), PartialFunction(k11)));
}

TEST(ConditionalOracles, UniformHelper) {
    const auto d = uniform_oracles(k11);
    EXPECT_EQ(d.size(), 4u);
    for (const auto &[H, p] : d.support()) {
        EXPECT_NEAR(p, 0.25, 1e-12);
    }
}

TEST(HeavyPoint, TieGoesToSmallestPoint) {
    const auto hp = heavy_point(builtins::prg_id(), Bits::parse("00"), PartialFunction(k11));
    ASSERT_TRUE(hp.point);
    EXPECT_EQ(*hp.point, 0u);
    EXPECT_NEAR(hp.max_outside, 1, 1e-12);
}

TEST(HeavyPoint, ExhaustedDomainHasZeroOutside) {
    const auto hp = heavy_point(builtins::prg_id(), Bits::parse("00"), Oracle::constant(k11, 0).as_partial());
    EXPECT_FALSE(hp.point);
    EXPECT_EQ(hp.max_outside, 0);
}

TEST(HeavyPoint, SingleTranscriptGivesZeroOneProbabilities) {
    // adaptive2 with g = 100 and h fixing the first query: one transcript remains.
    const auto G = builtins::prg_adaptive2();
    const auto hp = heavy_point(G, Bits::parse("000"), PartialFunction({2, 1}, {{0, 0}, {1, 0}}));
    for (double p : hp.inclusion) {
        EXPECT_TRUE(p == 0 || p == 1) << p;
    }
}

TEST(Advantage, ZeroDistinguisher) {
    const auto G = builtins::prg_id();
    const auto A = builtins::zero_distinguisher(G.shape().sig, G.shape().ell);
    EXPECT_EQ(prg_advantage(A, G).advantage, 0);
}

// A_par accepts iff g0 xor g1 = H(0) xor H(1); counted directly over (H, s) and (H, g).
TEST(Advantage, ParityDistinguisherMatchesDirectCount) {
    double prg = 0, rand = 0;
    for (std::uint32_t t = 0; t < 4; ++t) {
        const Value h0 = t >> 1, h1 = t & 1u;
        for (std::uint32_t s = 0; s < 2; ++s) {
            const Value a = s ? h1 : h0, b = s ? h0 : h1;
            prg += ((a ^ b) == (h0 ^ h1));
        }
        for (std::uint32_t g = 0; g < 4; ++g) {
            rand += (((g >> 1) ^ (g & 1u)) == (h0 ^ h1));
        }
    }
    const double expected = std::abs(prg / 8 - rand / 16);
    const auto adv = prg_advantage(builtins::a_par(), builtins::prg_id());
    EXPECT_NEAR(adv.advantage, expected, 1e-12);
    EXPECT_NEAR(adv.advantage, 0.5, 1e-12);
}

TEST(Advantage, AdaptiveAndConstFixtures) {
    EXPECT_NEAR(prg_advantage(builtins::a_adaptive2(), builtins::prg_adaptive2()).advantage, 0.25, 1e-12);
    EXPECT_NEAR(prg_advantage(builtins::a_const(), builtins::prg_const()).advantage, 0.75, 1e-12);
}

// X on every query wire around each oracle call: the circuit sees H(x xor mask).
QueryCircuit relabel(const QueryCircuit &c) {
    std::vector<Layer> layers;
    for (const auto &layer : c.layers()) {
        if (std::holds_alternative<OracleCall>(layer)) {
            for (int q = 0; q < c.layout().n; ++q) {
                layers.emplace_back(UnitaryLayer{{q}, gates::x()});
            }
            layers.push_back(layer);
            for (int q = 0; q < c.layout().n; ++q) {
                layers.emplace_back(UnitaryLayer{{q}, gates::x()});
            }
        } else {
            layers.push_back(layer);
        }
    }
    return QueryCircuit(c.layout(), layers, c.output_wires(), c.input_wires());
}

// G run on H(x xor mask). Replays G on the values learned so far and fetches only the
// first unknown point it asks for, so every fetch belongs to the true run.
ClassicalPrg relabel(const ClassicalPrg &G) {
    const Point mask = static_cast<Point>(G.shape().sig.points() - 1);
    return ClassicalPrg(G.name() + "-relabeled", G.shape(), [G, mask](std::uint64_t s, ClassicalAccess &access) {
        const auto sig = G.shape().sig;
        std::vector<Value> values(sig.points(), 0);
        std::vector<bool> known(sig.points(), false);
        for (;;) {
            const auto out = G.eval(s, Oracle(sig, values));
            bool fresh = false;
            for (const auto &[x, y] : out.tau.pairs) {
                if (!known[x]) {
                    values[x] = access.query(x ^ mask);
                    known[x] = true;
                    fresh = true;
                    break;
                }
            }
            if (!fresh) {
                return out.g.value;
            }
        }
    });
}

TEST(Advantage, InvariantUnderPointRelabeling) {
    const std::vector<std::pair<ClassicalPrg, Distinguisher>> fixtures{
        {builtins::prg_id(), builtins::a_par()}, {builtins::prg_adaptive2(), builtins::a_adaptive2()}};
    for (const auto &[G, A] : fixtures) {
        const Distinguisher A2(A.name() + "-relabeled", relabel(A.circuit()));
        const auto G2 = relabel(G);
        EXPECT_NEAR(prg_advantage(A2, G2).advantage, prg_advantage(A, G).advantage, 1e-12) << G.name();
    }
}

TEST(Experiments, PrgIsMixtureOfFixedOutputGames) {
    for (const auto &[G, A] : std::vector<std::pair<ClassicalPrg, Distinguisher>>{
             {builtins::prg_id(), builtins::a_par()}, {builtins::prg_adaptive2(), builtins::a_adaptive2()}}) {
        GameSpec prg;
        prg.game = Game::kPrg;
        const double total = run_experiment(prg, A, G).probability(1);
        const PrgRange range(G);
        double mix = 0;
        for (const Bits &g : range.members()) {
            GameSpec fixed;
            fixed.game = Game::kPrgG;
            fixed.g = g;
            mix += range.probability(g) * run_experiment(fixed, A, G).probability(1);
        }
        EXPECT_NEAR(total, mix, 1e-12) << G.name();
    }
}

TEST(Experiments, HybridOneAndTwoEqualFixedOutputGame) {
    const auto G = builtins::prg_id();
    const auto A = builtins::a_par();
    for (double delta : {0.5, 0.1, 0.01}) {
        const auto limit = transcript_query_limit(delta, 2);
        for (const Bits &g : PrgRange(G).members()) {
            const auto prg = game_oracles(Game::kPrgG, G, g, delta, limit);
            const auto h1 = game_oracles(Game::kHyb1, G, g, delta, limit);
            const auto h2 = game_oracles(Game::kHyb2, G, g, delta, limit);
            EXPECT_LE(tv_distance(prg, h1), 1e-12);
            EXPECT_LE(tv_distance(h1, h2), 1e-12);
        }
    }
}

TEST(Experiments, HybridReportsDelta) {
    GameSpec spec;
    spec.game = Game::kHyb3;
    spec.g = Bits::parse("00");
    spec.delta = 0.1;
    const auto d = run_experiment(spec, builtins::a_par(), builtins::prg_id());
    EXPECT_NEAR(d.total(), 1, 1e-12);
}

TEST(Experiments, FixedOutputGameNeedsG) {
    GameSpec spec;
    spec.game = Game::kPrgG;
    EXPECT_THROW(run_experiment(spec, builtins::a_par(), builtins::prg_id()), Error);
}

TEST(Experiments, SampledModeIsSeededAndClose) {
    RunOptions opt;
    opt.mode = Mode::kSampled;
    opt.seed = 99;
    opt.trials = 20000;
    const auto a = prg_advantage(builtins::a_par(), builtins::prg_id(), opt);
    const auto b = prg_advantage(builtins::a_par(), builtins::prg_id(), opt);
    EXPECT_EQ(a.advantage, b.advantage);
    EXPECT_NEAR(a.advantage, 0.5, 0.03);
    EXPECT_FALSE(a.provenance.exact);
}

TEST(TranscriptLimit, Formula) {
    EXPECT_EQ(transcript_query_limit(1.0, 2), 1u);
    EXPECT_EQ(transcript_query_limit(0.5, 1), static_cast<std::uint64_t>(std::ceil(std::log(2.0) * 16)) + 1);
    EXPECT_THROW(transcript_query_limit(0.0, 1), Error);
}

TEST(FindTranscript, DeltaOneReturnsEmpty) {
    const auto G = builtins::prg_id();
    const Oracle H(k11, {1, 0});
    ClassicalAccess access(H);
    const auto r = find_transcript(access, G, Bits::parse("01"), 1.0, transcript_query_limit(1.0, 2));
    ASSERT_FALSE(r.bottom());
    EXPECT_TRUE(r.learned.empty());
    EXPECT_EQ(access.queries(), 0u);
}

TEST(FindTranscript, ZeroOracleLearnsBothPoints) {
    const Oracle H = Oracle::constant(k11, 0);
    ClassicalAccess access(H);
    const auto r = find_transcript(access, builtins::prg_id(), Bits::parse("00"), 0.4, transcript_query_limit(0.4, 2));
    ASSERT_FALSE(r.bottom());
    EXPECT_EQ(r.learned, PartialFunction(k11, {{0, 0}, {1, 0}}));
    EXPECT_EQ(access.queries(), 2u);
    EXPECT_EQ(r.eps, 0);
}

TEST(FindTranscript, InconsistentAnswerGivesBottom) {
    const Oracle H(k11, {1, 0});
    ClassicalAccess access(H);
    const auto r = find_transcript(access, builtins::prg_id(), Bits::parse("00"), 0.4, transcript_query_limit(0.4, 2));
    EXPECT_EQ(r.outcome, TranscriptOutcome::kUndefined);
    EXPECT_EQ(access.queries(), 1u);
    EXPECT_EQ(r.learned, PartialFunction(k11, {{0, 1}}));
}

TEST(FindTranscript, LimitGivesBottom) {
    const Oracle H = Oracle::constant(k11, 0);
    const auto r = find_transcript(H, builtins::prg_id(), Bits::parse("00"), 0.4, 1);
    EXPECT_EQ(r.outcome, TranscriptOutcome::kLimit);
}

// Every entry of the learned function comes from a query to H.
TEST(FindTranscript, LearnedEntriesAreGenuineQueries) {
    const auto G = builtins::prg_adaptive2();
    for (const Bits &g : PrgRange(G).members()) {
        const auto og = conditional_oracle_distribution(G, g, PartialFunction(G.shape().sig));
        for (const auto &[H, w] : og->support()) {
            ClassicalAccess access(H);
            const auto r = find_transcript(access, G, g, 0.04, transcript_query_limit(0.04, 2));
            EXPECT_EQ(r.learned, access.transcript().as_partial());
            EXPECT_TRUE(H.consistent_with(r.learned));
        }
    }
}

}  // namespace
}  // namespace romlift
