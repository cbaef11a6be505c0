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

#pragma once

// Distributions of PRG transcripts and oracles conditioned on the PRG output g and
// on consistency with a partial function h, computed by enumerating (H, s).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "romlift/distribution.hpp"
#include "romlift/oracle.hpp"
#include "romlift/prg.hpp"

namespace romlift {

/// Integer counts of (H, s) pairs with H in Func(h) and G^H(s) = g, grouped by transcript.
/// All probabilities below are ratios of these counts.
struct ConditionedCounts {
    std::map<Transcript, std::uint64_t> by_transcript;
    std::map<Oracle, std::uint64_t> by_oracle;
    std::uint64_t total = 0;

    bool defined() const {
        return total > 0;
    }
};

inline ConditionedCounts count_conditioned(const ClassicalPrg &G, Bits g, const PartialFunction &h,
                                           std::uint64_t budget = kDefaultBudget) {
    require_same_signature(G.shape().sig, h.signature(), "conditioning");
    if (g.width != G.shape().ell) {
        throw DimensionError("PRG output has " + std::to_string(G.shape().ell) + " bits, got " +
                             std::to_string(g.width));
    }
    ConditionedCounts counts;
    for_each_pair(
        G, h,
        [&](const Oracle &H, std::uint64_t s) {
            auto out = G.eval(s, H);
            if (out.g == g) {
                ++counts.by_transcript[out.tau];
                ++counts.by_oracle[H];
                ++counts.total;
            }
        },
        budget);
    return counts;
}

/// T_{g,h}; nullopt when no (H, s) with H in Func(h) yields g.
inline std::optional<Distribution<Transcript>> transcript_distribution(
    const ClassicalPrg &G, Bits g, const PartialFunction &h, std::uint64_t budget = kDefaultBudget) {
    auto counts = count_conditioned(G, g, h, budget);
    if (!counts.defined()) {
        return std::nullopt;
    }
    std::vector<std::pair<Transcript, double>> weights;
    for (const auto &[tau, c] : counts.by_transcript) {
        weights.emplace_back(tau, static_cast<double>(c));
    }
    return Distribution<Transcript>::from_weights(std::move(weights));
}

/// O_{g,h}: an oracle H has weight #{s : G^H(s) = g}. nullopt when undefined.
inline std::optional<Distribution<Oracle>> conditional_oracle_distribution(
    const ClassicalPrg &G, Bits g, const PartialFunction &h, std::uint64_t budget = kDefaultBudget) {
    auto counts = count_conditioned(G, g, h, budget);
    if (!counts.defined()) {
        return std::nullopt;
    }
    std::vector<std::pair<Oracle, double>> weights;
    for (const auto &[H, c] : counts.by_oracle) {
        weights.emplace_back(H, static_cast<double>(c));
    }
    return Distribution<Oracle>::from_weights(std::move(weights));
}

/// Uniform distribution over Func_{n,m}(h) (O itself when h is empty).
inline Distribution<Oracle> uniform_oracles(const PartialFunction &h,
                                            std::uint64_t budget = kDefaultBudget) {
    std::vector<std::pair<Oracle, double>> weights;
    for_each_consistent(h, [&](Oracle H) { weights.emplace_back(std::move(H), 1.0); }, budget);
    return Distribution<Oracle>::from_weights(std::move(weights));
}

inline Distribution<Oracle> uniform_oracles(Signature sig, std::uint64_t budget = kDefaultBudget) {
    return uniform_oracles(PartialFunction(sig), budget);
}

/// Pr_{tau <- T_{g,h}}[(x, *) in tau] for every x, from exact counts.
inline std::vector<double> inclusion_probabilities(const ConditionedCounts &counts, Signature sig) {
    std::vector<std::uint64_t> hits(sig.points(), 0);
    for (const auto &[tau, c] : counts.by_transcript) {
        for (const auto &[x, y] : tau.pairs) {
            hits[x] += c;
        }
    }
    std::vector<double> out(sig.points(), 0.0);
    if (counts.total == 0) {
        return out;
    }
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = static_cast<double>(hits[x]) / static_cast<double>(counts.total);
    }
    return out;
}

struct HeavyPoint {
    /// argmax over x outside D_h of the inclusion probability, smallest x on ties;
    /// empty once h covers the whole domain.
    std::optional<Point> point;
    /// max over x outside D_h (0 when D_h is everything).
    double max_outside = 0;
    /// argmax and max over all x, including D_h.
    Point point_all = 0;
    double max_all = 0;
    std::vector<double> inclusion;
};

inline HeavyPoint heavy_point_from_counts(const ConditionedCounts &counts, const PartialFunction &h) {
    if (!counts.defined()) {
        throw UndefinedDistribution("T_{g,h} is undefined");
    }
    HeavyPoint out;
    out.inclusion = inclusion_probabilities(counts, h.signature());
    for (Point x = 0; x < out.inclusion.size(); ++x) {
        const double p = out.inclusion[x];
        if (p > out.max_all) {
            out.max_all = p;
            out.point_all = x;
        }
        if (!h.defines(x) && (!out.point || p > out.max_outside)) {
            out.max_outside = p;
            out.point = x;
        }
    }
    return out;
}

/// Heaviest point of T_{g,h}. Throws UndefinedDistribution when T_{g,h} is undefined.
inline HeavyPoint heavy_point(const ClassicalPrg &G, Bits g, const PartialFunction &h,
                              std::uint64_t budget = kDefaultBudget) {
    return heavy_point_from_counts(count_conditioned(G, g, h, budget), h);
}

}  // namespace romlift
