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

#include <gtest/gtest.h>

#include "romlift/builtins.hpp"
#include "romlift/reprogram.hpp"

namespace romlift {
namespace {

builtins::ReprogramFixture fixture(const std::string &name) {
    for (auto &f : builtins::reprogram_fixtures()) {
        if (f.name == name) {
            return f;
        }
    }
    throw Error("no fixture " + name);
}

ReprogramResult run(const builtins::ReprogramFixture &f, const RunOptions &opt = {}) {
    return reprogram_game(f.D, f.F0, f.sampler, f.decide, opt);
}

TEST(Reprogram, EmptySamplerIsIndistinguishable) {
    const auto r = run(fixture("empty-sampler"));
    EXPECT_EQ(r.epsilon, 0);
    EXPECT_NEAR(r.optimal, 0, 1e-12);
    EXPECT_NEAR(r.state, 0, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(Reprogram, PointFlipIsFullyDistinguishable) {
    const auto r = run(fixture("point-flip"));
    EXPECT_EQ(r.epsilon, 1);
    EXPECT_NEAR(*r.measured, 1, 1e-12);
    EXPECT_NEAR(r.optimal, 1, 1e-12);
    EXPECT_NEAR(r.bound, 2, 1e-12);
    EXPECT_TRUE(r.pass);
}

// One Grover iteration on 4 points finds the mark; the unmarked oracle returns 00.
TEST(Reprogram, GroverMarkGap) {
    const auto r = run(fixture("grover-uniform-mark"));
    EXPECT_NEAR(r.epsilon, 0.25, 1e-12);
    EXPECT_NEAR(*r.measured, 0.75, 1e-12);
    EXPECT_NEAR(r.optimal, 0.75, 1e-12);
    EXPECT_NEAR(r.bound, 1, 1e-12);
    EXPECT_TRUE(r.pass);
}

TEST(Reprogram, DeutschHalf) {
    const auto r = run(fixture("deutsch-half"));
    EXPECT_NEAR(r.epsilon, 0.5, 1e-12);
    EXPECT_NEAR(r.optimal, 1, 1e-12);
    EXPECT_LE(r.optimal, r.bound);
}

// Measured gap <= best decision rule <= trace distance <= 2 Q sqrt(eps).
TEST(Reprogram, MetricOrderingOnRandomFixtures) {
    for (const auto &f : builtins::reprogram_fixtures(11, 60)) {
        const auto r = run(f);
        if (r.measured) {
            EXPECT_LE(*r.measured, r.optimal + 1e-9) << f.name;
        }
        EXPECT_LE(r.optimal, r.state + 1e-9) << f.name;
        EXPECT_LE(r.state, r.bound + 1e-9) << f.name;
        EXPECT_TRUE(r.pass) << f.name;
    }
}

TEST(Reprogram, SampledModeIsSeeded) {
    RunOptions opt;
    opt.mode = Mode::kSampled;
    opt.seed = 3;
    opt.trials = 4000;
    const auto f = fixture("grover-uniform-mark");
    const auto a = run(f, opt);
    const auto b = run(f, opt);
    EXPECT_EQ(a.optimal, b.optimal);
    EXPECT_NEAR(a.optimal, 0.75, 0.03);
    EXPECT_NEAR(a.epsilon, 0.25, 0.03);
    EXPECT_FALSE(a.provenance.exact);
}

TEST(Reprogram, GeneratedSamplerNeedsSampledMode) {
    const Signature sig{1, 1};
    const auto sampler = Sampler::generated("coin", sig, [sig](std::mt19937_64 &rng) {
        return rng() & 1u ? PartialFunction(sig, {{0, 1}}) : PartialFunction(sig);
    });
    EXPECT_THROW(reprogram_game(builtins::alg_query0(), Oracle::constant(sig), sampler, std::nullopt), Error);
    RunOptions opt;
    opt.mode = Mode::kSampled;
    opt.seed = 1;
    opt.trials = 2000;
    const auto r = reprogram_game(builtins::alg_query0(), Oracle::constant(sig), sampler, std::nullopt, opt);
    EXPECT_NEAR(r.optimal, 0.5, 0.05);
    EXPECT_TRUE(r.pass);
}

TEST(Reprogram, EnumeratedWeightsAreNormalized) {
    const Signature sig{1, 1};
    const auto s = Sampler::enumerated("w", sig, {{PartialFunction(sig, {{0, 1}}), 3}, {PartialFunction(sig), 1}});
    EXPECT_NEAR(s.outcomes()[0].second + s.outcomes()[1].second, 1, 1e-12);
    EXPECT_NEAR(s.epsilon(), 0.75, 1e-12);
}

}  // namespace
}  // namespace romlift
