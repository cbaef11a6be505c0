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

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "romlift/conditional.hpp"
#include "romlift/oracle.hpp"
#include "romlift/prg.hpp"

namespace romlift {

/// ceil(-ln(delta) * 4 Q_G^2 / delta^2) + 1, saturating at 2^62.
inline std::uint64_t transcript_query_limit(double delta, int prg_queries) {
    if (!(delta > 0)) {
        throw Error("transcript search needs delta > 0");
    }
    const double raw = std::ceil(-std::log(delta) * 4.0 * prg_queries * prg_queries / (delta * delta));
    const double cap = 4.611686018427387904e18;  // 2^62
    if (!(raw < cap)) {
        return std::uint64_t{1} << 62;
    }
    return static_cast<std::uint64_t>(std::max(raw, 0.0)) + 1;
}

struct TranscriptStep {
    Point queried = 0;
    Value answer = 0;
    bool defined_after = true;  // T_{g,h} defined once the answer is added
    double eps_outside = 0;     // max over x outside D_h after the step
    double eps_all = 0;         // max over all x after the step
};

enum class TranscriptOutcome { kFound, kUndefined, kLimit };

inline const char *outcome_name(TranscriptOutcome o) {
    switch (o) {
        case TranscriptOutcome::kFound:
            return "found";
        case TranscriptOutcome::kUndefined:
            return "undefined";
        case TranscriptOutcome::kLimit:
            return "limit";
    }
    return "?";
}

struct TranscriptSearch {
    TranscriptOutcome outcome = TranscriptOutcome::kFound;
    PartialFunction learned;  // every queried pair, also on a bottom outcome
    std::uint64_t iterations = 0;
    std::uint64_t limit = 0;
    double eps = 1;  // final guard value
    std::vector<TranscriptStep> steps;

    bool bottom() const {
        return outcome != TranscriptOutcome::kFound;
    }
    /// h, or nullopt for bottom.
    std::optional<PartialFunction> result() const {
        if (bottom()) {
            return std::nullopt;
        }
        return learned;
    }
};

/// Iteratively queries the heaviest unqueried point of T_{g,h} until no point outside D_h
/// has inclusion probability above delta. Conditional distributions come from enumeration;
/// only the heavy points are sent to `access`.
inline TranscriptSearch find_transcript(ClassicalAccess &access, const ClassicalPrg &G, Bits g,
                                        double delta, std::uint64_t limit,
                                        std::uint64_t budget = kDefaultBudget) {
    require_same_signature(access.signature(), G.shape().sig, "find_transcript");
    TranscriptSearch out;
    out.learned = PartialFunction(G.shape().sig);
    out.limit = limit;
    double eps = 1;
    std::optional<ConditionedCounts> counts;
    while (eps > delta && out.iterations < limit) {
        ++out.iterations;
        if (!counts) {
            counts = count_conditioned(G, g, out.learned, budget);
        }
        if (!counts->defined()) {
            out.outcome = TranscriptOutcome::kUndefined;
            out.eps = eps;
            return out;
        }
        const auto heavy = heavy_point_from_counts(*counts, out.learned);
        if (!heavy.point) {
            break;  // D_h already covers the domain; eps was 0 on entry
        }
        TranscriptStep step;
        step.queried = *heavy.point;
        step.answer = access.query(step.queried);
        out.learned.insert(step.queried, step.answer);
        counts = count_conditioned(G, g, out.learned, budget);
        if (counts->defined()) {
            const auto next = heavy_point_from_counts(*counts, out.learned);
            eps = next.max_outside;
            step.eps_outside = next.max_outside;
            step.eps_all = next.max_all;
        } else {
            eps = 1;
            step.defined_after = false;
            step.eps_outside = 1;
            step.eps_all = 1;
        }
        out.steps.push_back(step);
    }
    out.eps = eps;
    if (out.iterations >= limit) {
        out.outcome = TranscriptOutcome::kLimit;
    }
    return out;
}

/// Convenience overload running against a fixed oracle.
inline TranscriptSearch find_transcript(const Oracle &H, const ClassicalPrg &G, Bits g, double delta,
                                        std::uint64_t limit, std::uint64_t budget = kDefaultBudget) {
    ClassicalAccess access(H);
    return find_transcript(access, G, g, delta, limit, budget);
}

}  // namespace romlift
