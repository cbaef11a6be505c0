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

// Reprogramming game: D queries F0 or F0 patched with a sampled partial function R,
// then learns the sampler's randomness and guesses which oracle it saw.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "romlift/circuit.hpp"
#include "romlift/experiments.hpp"

namespace romlift {

/// Randomized producer of partial functions. Either a finite list of weighted outcomes
/// (one per value of the randomness r) or a seeded generator.
class Sampler {
  public:
    using Generator = std::function<PartialFunction(std::mt19937_64 &)>;

    static Sampler enumerated(std::string name, Signature sig, std::vector<std::pair<PartialFunction, double>> outcomes) {
        Sampler s;
        s.name_ = std::move(name);
        s.sig_ = sig;
        double total = 0;
        for (const auto &[R, w] : outcomes) {
            require_same_signature(R.signature(), sig, "sampler");
            if (w < 0) {
                throw Error("sampler weights must be nonnegative");
            }
            total += w;
        }
        if (!(total > 0)) {
            throw UndefinedDistribution("sampler " + s.name_ + " has no weight");
        }
        for (auto &[R, w] : outcomes) {
            s.outcomes_.emplace_back(std::move(R), w / total);
        }
        return s;
    }
    static Sampler generated(std::string name, Signature sig, Generator gen) {
        Sampler s;
        s.name_ = std::move(name);
        s.sig_ = sig;
        s.generator_ = std::move(gen);
        return s;
    }

    const std::string &name() const {
        return name_;
    }
    Signature signature() const {
        return sig_;
    }
    bool enumerable() const {
        return !generator_;
    }
    const std::vector<std::pair<PartialFunction, double>> &outcomes() const {
        return outcomes_;
    }
    PartialFunction draw(std::mt19937_64 &rng) const {
        if (generator_) {
            return generator_(rng);
        }
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double t = u(rng), acc = 0;
        for (const auto &[R, p] : outcomes_) {
            acc += p;
            if (t < acc) {
                return R;
            }
        }
        return outcomes_.back().first;
    }

    /// max_x Pr[x in D_R].
    double epsilon() const {
        std::vector<double> hit(sig_.points(), 0.0);
        for (const auto &[R, p] : outcomes_) {
            for (Point x : R.domain()) {
                hit[x] += p;
            }
        }
        double best = 0;
        for (double h : hit) {
            best = std::max(best, h);
        }
        return best;
    }

  private:
    std::string name_;
    Signature sig_{};
    std::vector<std::pair<PartialFunction, double>> outcomes_;
    Generator generator_;
};

/// Phase-three guess from the index of the sampler outcome and D's measured output.
using Decision = std::function<int(std::size_t outcome, Bits measured)>;

struct ReprogramResult {
    std::optional<double> measured;  // with the supplied decision rule
    double optimal = 0;              // best decision rule given r: sum_r p_r TV(out_0, out_1)
    double state = 0;                // sum_r p_r TD(phi_0, phi_1), any final measurement
    double epsilon = 0;
    int queries = 0;
    double bound = 0;  // 2 Q sqrt(epsilon)
    bool pass = true;
    Provenance provenance;
};

namespace detail {

struct OutcomeTerms {
    double decision_gap = 0;  // Pr[1 | b=1] - Pr[1 | b=0] for this outcome
    double tv = 0;
    double td = 0;
};

inline OutcomeTerms reprogram_terms(const QueryCircuit &D, const CircuitRun &run0, const Distribution<Bits> &out0,
                                    const Oracle &F0, const PartialFunction &R, std::size_t index,
                                    const Decision *decide) {
    OutcomeTerms t;
    const auto run1 = run_circuit(D, patch(F0, R));
    const auto out1 = measure_wires(run1.final_state, D.output_wires());
    t.tv = tv_distance(out0, out1);
    t.td = trace_distance_pure(run0.final_state, run1.final_state);
    if (decide) {
        for (const auto &[y, p] : out1.support()) {
            t.decision_gap += p * ((*decide)(index, y) != 0);
        }
        for (const auto &[y, p] : out0.support()) {
            t.decision_gap -= p * ((*decide)(index, y) != 0);
        }
    }
    return t;
}

}  // namespace detail

inline ReprogramResult reprogram_game(const QueryCircuit &D, const Oracle &F0, const Sampler &sampler,
                                      const std::optional<Decision> &decide, const RunOptions &opt = {}) {
    require_same_signature(F0.signature(), sampler.signature(), "reprogram_game");
    ReprogramResult out;
    out.queries = D.query_count();
    const auto run0 = run_circuit(D, F0);
    const auto out0 = measure_wires(run0.final_state, D.output_wires());
    const Decision *rule = decide ? &*decide : nullptr;
    double gap = 0;
    if (opt.mode == Mode::kExact) {
        if (!sampler.enumerable()) {
            throw Error("sampler " + sampler.name() + " has non-enumerable randomness; use sampled mode");
        }
        for (std::size_t i = 0; i < sampler.outcomes().size(); ++i) {
            const auto &[R, p] = sampler.outcomes()[i];
            const auto t = detail::reprogram_terms(D, run0, out0, F0, R, i, rule);
            gap += p * t.decision_gap;
            out.optimal += p * t.tv;
            out.state += p * t.td;
        }
        out.epsilon = sampler.epsilon();
        out.provenance = Provenance::enumeration();
    } else {
        if (opt.trials == 0) {
            throw Error("sampled mode needs trials > 0");
        }
        std::mt19937_64 rng(opt.seed);
        std::vector<std::uint64_t> hits(F0.signature().points(), 0);
        const double w = 1.0 / static_cast<double>(opt.trials);
        for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
            const auto R = sampler.draw(rng);
            for (Point x : R.domain()) {
                ++hits[x];
            }
            const auto t = detail::reprogram_terms(D, run0, out0, F0, R, trial, rule);
            gap += w * t.decision_gap;
            out.optimal += w * t.tv;
            out.state += w * t.td;
        }
        for (auto h : hits) {
            out.epsilon = std::max(out.epsilon, static_cast<double>(h) * w);
        }
        out.provenance = Provenance::sampled(opt.seed, opt.trials);
    }
    if (rule) {
        out.measured = std::abs(gap);
    }
    out.bound = 2.0 * out.queries * std::sqrt(out.epsilon);
    out.pass = out.optimal <= out.bound + 1e-9 && out.state <= out.bound + 1e-9 &&
               (!out.measured || *out.measured <= out.bound + 1e-9);
    return out;
}

}  // namespace romlift
