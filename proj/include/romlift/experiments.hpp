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

// PRG-versus-random games played by a quantum distinguisher, computed exactly by
// enumerating oracles and seeds, or estimated from seeded samples.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "romlift/circuit.hpp"
#include "romlift/conditional.hpp"
#include "romlift/distribution.hpp"
#include "romlift/find_transcript.hpp"
#include "romlift/prg.hpp"

namespace romlift {

/// A quantum distinguisher: a query circuit with ell input wires and one output wire.
/// Acceptance probabilities are memoised per (g, H).
class Distinguisher {
  public:
    Distinguisher(std::string name, QueryCircuit circuit) : name_(std::move(name)), circuit_(std::move(circuit)) {
        if (circuit_.output_width() != 1) {
            throw DimensionError("distinguisher " + name_ + " must have exactly one output wire");
        }
    }

    const std::string &name() const {
        return name_;
    }
    const QueryCircuit &circuit() const {
        return circuit_;
    }
    int queries() const {
        return circuit_.query_count();
    }
    int input_width() const {
        return circuit_.input_width();
    }
    Signature signature() const {
        return circuit_.layout().signature();
    }

    /// Pr[A^{|H>}(g) = 1].
    double accept(Bits g, const Oracle &H) const {
        auto key = std::make_pair(g.value, H);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
        const double p = output_distribution(prepared(g), H).probability(Bits{1, 1});
        cache_.emplace(std::move(key), p);
        return p;
    }

    /// The circuit with g written onto its input wires.
    const QueryCircuit &prepared(Bits g) const {
        auto it = inputs_.find(g.value);
        if (it == inputs_.end()) {
            it = inputs_.emplace(g.value, circuit_.with_input(g)).first;
        }
        return it->second;
    }

  private:
    std::string name_;
    QueryCircuit circuit_;
    mutable std::map<std::uint64_t, QueryCircuit> inputs_;
    mutable std::map<std::pair<std::uint64_t, Oracle>, double> cache_;
};

inline void check_pairing(const Distinguisher &A, const ClassicalPrg &G) {
    require_same_signature(A.signature(), G.shape().sig, "distinguisher/PRG");
    if (A.input_width() != G.shape().ell) {
        throw DimensionError("distinguisher " + A.name() + " reads " + std::to_string(A.input_width()) +
                             " input bits but PRG " + G.name() + " outputs " +
                             std::to_string(G.shape().ell));
    }
}

enum class Game { kPrg, kRand, kPrgG, kRandG, kHyb1, kHyb2, kHyb3 };

inline const char *game_name(Game game) {
    switch (game) {
        case Game::kPrg:
            return "PRG";
        case Game::kRand:
            return "Rand";
        case Game::kPrgG:
            return "PRGg";
        case Game::kRandG:
            return "Randg";
        case Game::kHyb1:
            return "Hyb1";
        case Game::kHyb2:
            return "Hyb2";
        case Game::kHyb3:
            return "Hyb3";
    }
    return "?";
}

inline std::optional<Game> parse_game(const std::string &name) {
    for (Game game : {Game::kPrg, Game::kRand, Game::kPrgG, Game::kRandG, Game::kHyb1, Game::kHyb2,
                      Game::kHyb3}) {
        if (name == game_name(game)) {
            return game;
        }
    }
    return std::nullopt;
}

inline bool is_hybrid(Game game) {
    return game == Game::kHyb1 || game == Game::kHyb2 || game == Game::kHyb3;
}

enum class Mode { kExact, kSampled };

struct RunOptions {
    Mode mode = Mode::kExact;
    std::uint64_t seed = 0;
    std::uint64_t trials = 4096;
    std::uint64_t budget = kDefaultBudget;
};

/// Weighted oracles plus the mass on the bottom outcome (output 0 without running A).
struct OracleMixture {
    std::map<Oracle, double> weights;
    double bottom = 0;

    void add(const Oracle &H, double w) {
        if (w > 0) {
            weights[H] += w;
        }
    }
    void add(const Distribution<Oracle> &d, double scale) {
        for (const auto &[H, p] : d.support()) {
            add(H, scale * p);
        }
    }
    double total() const {
        double s = bottom;
        for (const auto &[H, w] : weights) {
            s += w;
        }
        return s;
    }
};

inline OracleMixture to_mixture(const Distribution<Oracle> &d) {
    OracleMixture out;
    out.add(d, 1.0);
    return out;
}

inline double tv_distance(const OracleMixture &a, const OracleMixture &b) {
    double sum = std::abs(a.bottom - b.bottom);
    auto ia = a.weights.begin();
    auto ib = b.weights.begin();
    while (ia != a.weights.end() || ib != b.weights.end()) {
        if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.weights.end() || ib->first < ia->first) {
            sum += ib->second;
            ++ib;
        } else {
            sum += std::abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return sum / 2;
}

/// Pr[A^{|H>}(g) = 1] with H drawn from the mixture; bottom contributes 0.
inline double acceptance(const Distinguisher &A, Bits g, const OracleMixture &mix) {
    double p = 0;
    for (const auto &[H, w] : mix.weights) {
        p += w * A.accept(g, H);
    }
    return p;
}

/// O'_{g,h}: tau <- T_{g,h}, H0 <- Func(h), output H0 patched with tau \ h.
inline std::optional<Distribution<Oracle>> reprogrammed_oracle_distribution(
    const ClassicalPrg &G, Bits g, const PartialFunction &h, std::uint64_t budget = kDefaultBudget) {
    const auto transcripts = transcript_distribution(G, g, h, budget);
    if (!transcripts) {
        return std::nullopt;
    }
    const auto base = enumerate_consistent(h, budget);
    std::vector<std::pair<Oracle, double>> weights;
    for (const auto &[tau, p] : transcripts->support()) {
        const auto fresh = subtract(tau.as_partial(), h);
        for (const auto &H0 : base) {
            weights.emplace_back(patch(H0, fresh), p / static_cast<double>(base.size()));
        }
    }
    return Distribution<Oracle>::from_weights(std::move(weights));
}

/// Outcomes of the transcript search over H <- O_g: each reachable h (or bottom) with
/// its probability.
struct SearchBranches {
    std::map<PartialFunction, double> found;
    double bottom = 0;
    std::size_t max_domain = 0;
    std::uint64_t max_queries = 0;
    std::uint64_t limit = 0;
    /// Every intermediate h visited on the way, for identity checks.
    std::vector<PartialFunction> visited;
};

inline SearchBranches search_branches(const ClassicalPrg &G, Bits g, double delta, std::uint64_t limit,
                                      std::uint64_t budget = kDefaultBudget) {
    const auto og = conditional_oracle_distribution(G, g, PartialFunction(G.shape().sig), budget);
    if (!og) {
        throw UndefinedDistribution("g=" + g.str() + " is outside the range of " + G.name());
    }
    SearchBranches out;
    out.limit = limit;
    std::map<PartialFunction, bool> seen;
    for (const auto &[H, w] : og->support()) {
        ClassicalAccess access(H);
        const auto run = find_transcript(access, G, g, delta, limit, budget);
        out.max_queries = std::max<std::uint64_t>(out.max_queries, access.queries());
        PartialFunction partial(G.shape().sig);
        seen.emplace(partial, true);
        for (const auto &step : run.steps) {
            partial.insert(step.queried, step.answer);
            seen.emplace(partial, true);
        }
        if (auto h = run.result()) {
            out.found[*h] += w;
            out.max_domain = std::max(out.max_domain, h->size());
        } else {
            out.bottom += w;
        }
    }
    for (const auto &[h, unused] : seen) {
        out.visited.push_back(h);
    }
    return out;
}

/// Oracle handed to A in PRGg or one of the hybrids, as a mixture.
inline OracleMixture game_oracles(Game game, const ClassicalPrg &G, Bits g, double delta, std::uint64_t limit,
                                  std::uint64_t budget = kDefaultBudget) {
    const PartialFunction empty(G.shape().sig);
    if (game == Game::kPrgG) {
        const auto og = conditional_oracle_distribution(G, g, empty, budget);
        if (!og) {
            throw UndefinedDistribution("g=" + g.str() + " is outside the range of " + G.name());
        }
        return to_mixture(*og);
    }
    if (game == Game::kRandG) {
        return to_mixture(uniform_oracles(empty, budget));
    }
    if (!is_hybrid(game)) {
        throw Error(std::string("game ") + game_name(game) + " does not fix g");
    }
    const auto branches = search_branches(G, g, delta, limit, budget);
    OracleMixture out;
    out.bottom = branches.bottom;
    for (const auto &[h, w] : branches.found) {
        if (game == Game::kHyb1) {
            out.add(*conditional_oracle_distribution(G, g, h, budget), w);
        } else if (game == Game::kHyb2) {
            out.add(*reprogrammed_oracle_distribution(G, g, h, budget), w);
        } else {
            out.add(uniform_oracles(h, budget), w);
        }
    }
    return out;
}

struct GameSpec {
    Game game = Game::kPrg;
    std::optional<Bits> g;
    std::optional<double> delta;
    std::optional<std::uint64_t> limit;  // defaults to the transcript query limit for delta
};

inline std::uint64_t checked_rand_count(const ClassicalPrg &G, std::uint64_t budget) {
    const std::uint64_t oracles = checked_consistent_count(PartialFunction(G.shape().sig), budget);
    const std::uint64_t strings = std::uint64_t{1} << G.shape().ell;
    if (G.shape().ell > 40 || oracles > budget / strings) {
        throw BudgetExceeded("enumerating (H, g) pairs for " + G.name() + " exceeds budget " +
                             std::to_string(budget));
    }
    return oracles * strings;
}

namespace detail {

inline BitDistribution sampled_game(Game game, const Distinguisher &A, const ClassicalPrg &G,
                                    std::optional<Bits> g, const RunOptions &opt) {
    if (opt.trials == 0) {
        throw Error("sampled mode needs trials > 0");
    }
    std::mt19937_64 rng(opt.seed);
    const PartialFunction empty(G.shape().sig);
    double sum = 0;
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const Oracle H = sample_consistent(empty, rng);
        Bits input;
        if (game == Game::kPrg) {
            input = G.eval(rng() & (G.seed_count() - 1), H).g;
        } else if (game == Game::kRand) {
            input = Bits{rng() & low_mask(G.shape().ell), G.shape().ell};
        } else {
            input = *g;
        }
        sum += A.accept(input, H);
    }
    return bernoulli(sum / static_cast<double>(opt.trials), Provenance::sampled(opt.seed, opt.trials));
}

}  // namespace detail

/// Output distribution of one game.
inline BitDistribution run_experiment(const GameSpec &spec, const Distinguisher &A, const ClassicalPrg &G,
                                      const RunOptions &opt = {}) {
    check_pairing(A, G);
    const bool fixed_g = spec.game != Game::kPrg && spec.game != Game::kRand;
    if (fixed_g && !spec.g) {
        throw Error(std::string("game ") + game_name(spec.game) + " needs g");
    }
    if (spec.g && spec.g->width != G.shape().ell) {
        throw DimensionError("g must have " + std::to_string(G.shape().ell) + " bits");
    }
    if (is_hybrid(spec.game) && !spec.delta) {
        throw Error(std::string("game ") + game_name(spec.game) + " needs delta");
    }
    if (opt.mode == Mode::kSampled) {
        if (spec.game != Game::kPrg && spec.game != Game::kRand && spec.game != Game::kRandG) {
            throw Error(std::string("sampled mode is not available for game ") + game_name(spec.game));
        }
        return detail::sampled_game(spec.game, A, G, spec.g, opt);
    }
    if (spec.game == Game::kPrg) {
        const std::uint64_t total = checked_pair_count(G, PartialFunction(G.shape().sig), opt.budget);
        double sum = 0;
        for_each_pair(
            G, PartialFunction(G.shape().sig),
            [&](const Oracle &H, std::uint64_t s) { sum += A.accept(G.eval(s, H).g, H); }, opt.budget);
        return bernoulli(sum / static_cast<double>(total));
    }
    if (spec.game == Game::kRand) {
        const std::uint64_t total = checked_rand_count(G, opt.budget);
        double sum = 0;
        for_each_consistent(
            PartialFunction(G.shape().sig),
            [&](const Oracle &H) {
                for (std::uint64_t v = 0; v < (std::uint64_t{1} << G.shape().ell); ++v) {
                    sum += A.accept(Bits{v, G.shape().ell}, H);
                }
            },
            opt.budget);
        return bernoulli(sum / static_cast<double>(total));
    }
    const double delta = spec.delta.value_or(1.0);
    const std::uint64_t limit =
        spec.limit.value_or(is_hybrid(spec.game) ? transcript_query_limit(delta, G.shape().queries) : 1);
    const auto mix = game_oracles(spec.game, G, *spec.g, delta, limit, opt.budget);
    return bernoulli(acceptance(A, *spec.g, mix));
}

struct Advantage {
    double pr_prg = 0;
    double pr_rand = 0;
    double advantage = 0;
    Provenance provenance;
};

/// |Pr[PRG = 1] - Pr[Rand = 1]|.
inline Advantage prg_advantage(const Distinguisher &A, const ClassicalPrg &G, const RunOptions &opt = {}) {
    Advantage out;
    GameSpec spec;
    spec.game = Game::kPrg;
    const auto prg = run_experiment(spec, A, G, opt);
    RunOptions rand_opt = opt;
    if (opt.mode == Mode::kSampled) {
        rand_opt.seed = opt.seed + 1;
    }
    spec.game = Game::kRand;
    const auto rand = run_experiment(spec, A, G, rand_opt);
    out.pr_prg = prg.probability(1);
    out.pr_rand = rand.probability(1);
    out.advantage = std::abs(out.pr_prg - out.pr_rand);
    out.provenance = prg.provenance();
    return out;
}

}  // namespace romlift
