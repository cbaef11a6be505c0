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

// The classical distinguisher B: learn the heavy part of the PRG transcript with
// classical queries, then run the quantum distinguisher on a fresh oracle that agrees
// with what was learned.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "romlift/experiments.hpp"
#include "romlift/find_transcript.hpp"

namespace romlift {

struct LiftParams {
    double eps_target = 0;
    double delta = 1;
    std::uint64_t limit = 1;
    bool delta_overridden = false;
    bool limit_overridden = false;

    /// delta = (eps / (6 Q_A))^2 and the transcript query limit for Q_G. A zero advantage or
    /// a query-free distinguisher gives delta = 1, so the search returns the empty function.
    static LiftParams derive(double eps_target, int distinguisher_queries, int prg_queries,
                             std::optional<double> delta_override = std::nullopt,
                             std::optional<std::uint64_t> limit_override = std::nullopt) {
        LiftParams p;
        p.eps_target = eps_target;
        if (delta_override) {
            if (!(*delta_override > 0)) {
                throw Error("delta override must be positive");
            }
            p.delta = *delta_override;
            p.delta_overridden = true;
        } else if (eps_target > 0 && distinguisher_queries > 0) {
            p.delta = std::min(1.0, std::pow(eps_target / (6.0 * distinguisher_queries), 2));
        } else {
            p.delta = 1.0;
        }
        if (limit_override) {
            p.limit = std::max<std::uint64_t>(1, *limit_override);
            p.limit_overridden = true;
        } else {
            p.limit = transcript_query_limit(p.delta, prg_queries);
        }
        return p;
    }
};

struct BRun {
    BitDistribution output;
    std::uint64_t queries = 0;
    bool out_of_range = false;
    bool bottom = false;
    std::optional<PartialFunction> h;
};

/// B^H(g). `range` is the offline range table of G.
inline BRun distinguisher_B(const Oracle &H, const ClassicalPrg &G, const PrgRange &range, Bits g,
                            const Distinguisher &A, const LiftParams &params, const RunOptions &opt = {}) {
    BRun out;
    if (!range.contains(g)) {
        out.out_of_range = true;
        out.output = BitDistribution::point_mass(0);
        return out;
    }
    ClassicalAccess access(H);
    const auto search = find_transcript(access, G, g, params.delta, params.limit, opt.budget);
    out.queries = access.queries();
    if (search.bottom()) {
        out.bottom = true;
        out.output = BitDistribution::point_mass(0);
        return out;
    }
    out.h = search.learned;
    if (opt.mode == Mode::kSampled) {
        if (opt.trials == 0) {
            throw Error("sampled mode needs trials > 0");
        }
        std::mt19937_64 rng(opt.seed);
        double sum = 0;
        for (std::uint64_t t = 0; t < opt.trials; ++t) {
            sum += A.accept(g, sample_consistent(*out.h, rng));
        }
        out.output = bernoulli(sum / static_cast<double>(opt.trials), Provenance::sampled(opt.seed, opt.trials));
        return out;
    }
    const std::uint64_t count = checked_consistent_count(*out.h, opt.budget);
    double sum = 0;
    for_each_consistent(*out.h, [&](const Oracle &Hp) { sum += A.accept(g, Hp); }, opt.budget);
    out.output = bernoulli(sum / static_cast<double>(count));
    return out;
}

/// B's acceptance probability as a function of (g, H), memoised on the learned h.
class BTable {
  public:
    BTable(const ClassicalPrg &G, const Distinguisher &A, LiftParams params, RunOptions opt)
        : G_(G), A_(A), params_(params), opt_(opt), range_(G, opt.budget) {
    }

    double accept(Bits g, const Oracle &H) {
        ++runs_;
        if (!range_.contains(g)) {
            ++out_of_range_;
            return 0.0;
        }
        ClassicalAccess access(H);
        const auto search = find_transcript(access, G_, g, params_.delta, params_.limit, opt_.budget);
        max_queries_ = std::max<std::uint64_t>(max_queries_, access.queries());
        if (search.bottom()) {
            ++bottoms_;
            return 0.0;
        }
        max_domain_ = std::max(max_domain_, search.learned.size());
        auto key = std::make_pair(g.value, search.learned);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        const std::uint64_t count = checked_consistent_count(search.learned, opt_.budget);
        double sum = 0;
        for_each_consistent(search.learned, [&](const Oracle &Hp) { sum += A_.accept(g, Hp); }, opt_.budget);
        const double p = sum / static_cast<double>(count);
        memo_.emplace(std::move(key), p);
        return p;
    }

    const PrgRange &range() const {
        return range_;
    }
    std::uint64_t max_queries() const {
        return max_queries_;
    }
    std::size_t max_domain() const {
        return max_domain_;
    }
    std::uint64_t runs() const {
        return runs_;
    }
    std::uint64_t bottoms() const {
        return bottoms_;
    }
    std::uint64_t out_of_range() const {
        return out_of_range_;
    }

  private:
    const ClassicalPrg &G_;
    const Distinguisher &A_;
    LiftParams params_;
    RunOptions opt_;
    PrgRange range_;
    std::map<std::pair<std::uint64_t, PartialFunction>, double> memo_;
    std::uint64_t max_queries_ = 0;
    std::size_t max_domain_ = 0;
    std::uint64_t runs_ = 0;
    std::uint64_t bottoms_ = 0;
    std::uint64_t out_of_range_ = 0;
};

struct LiftRow {
    Bits g;
    double weight = 0;    // Pr[G outputs g]
    double prg_A = 0;     // Pr[PRGg(g) = 1] for A
    double prg_B = 0;     // Pr[PRGg(g) = 1] for B
    double hyb2 = 0;
    double hyb3 = 0;
    double hyb_gap = 0;   // |Hyb2 - Hyb3|
    double hyb_bound = 0; // 2 Q_A sqrt(delta) + delta
    bool hyb_ok = true;
};

struct LiftReport {
    LiftParams params;
    double adv_A = 0;
    double pr_prg_A = 0;
    double pr_rand_A = 0;
    double pr_prg_B = 0;
    double pr_rand_B = 0;
    double adv_B = 0;
    double delta_prg = 0;   // Pr[PRG_A = 1] - Pr[PRG_B = 1]
    double delta_rand = 0;  // Pr[Rand_B = 1] - Pr[Rand_A = 1]
    double half_adv = 0;
    bool delta_prg_ok = true;  // delta_prg <= adv_A / 2
    std::vector<LiftRow> rows;
    std::size_t max_domain = 0;
    std::uint64_t max_queries = 0;
    std::uint64_t bottoms = 0;
    bool queries_within_limit = true;
    bool hybrids_ok = true;
    bool pass = false;
    Provenance provenance;
};

/// Exact end-to-end check of the lifting bound adv_B >= adv_A / 2. `eps_target` defaults to the
/// exactly computed adv_A.
inline LiftReport lifting_report(const Distinguisher &A, const ClassicalPrg &G, std::optional<double> eps_target,
                                 const RunOptions &opt = {}, std::optional<double> delta_override = std::nullopt,
                                 std::optional<std::uint64_t> limit_override = std::nullopt) {
    check_pairing(A, G);
    if (opt.mode != Mode::kExact) {
        throw Error("lifting_report is exact only");
    }
    LiftReport rep;
    const auto adv = prg_advantage(A, G, opt);
    rep.adv_A = adv.advantage;
    rep.pr_prg_A = adv.pr_prg;
    rep.pr_rand_A = adv.pr_rand;
    rep.params = LiftParams::derive(eps_target.value_or(adv.advantage), A.queries(), G.shape().queries,
                                    delta_override, limit_override);
    BTable B(G, A, rep.params, opt);

    const PartialFunction empty(G.shape().sig);
    const std::uint64_t pairs = checked_pair_count(G, empty, opt.budget);
    double prg_B = 0;
    for_each_pair(
        G, empty, [&](const Oracle &H, std::uint64_t s) { prg_B += B.accept(G.eval(s, H).g, H); }, opt.budget);
    rep.pr_prg_B = prg_B / static_cast<double>(pairs);

    const std::uint64_t rand_pairs = checked_rand_count(G, opt.budget);
    double rand_B = 0;
    for_each_consistent(
        empty,
        [&](const Oracle &H) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << G.shape().ell); ++v) {
                rand_B += B.accept(Bits{v, G.shape().ell}, H);
            }
        },
        opt.budget);
    rep.pr_rand_B = rand_B / static_cast<double>(rand_pairs);

    rep.adv_B = std::abs(rep.pr_prg_B - rep.pr_rand_B);
    rep.delta_prg = rep.pr_prg_A - rep.pr_prg_B;
    rep.delta_rand = rep.pr_rand_B - rep.pr_rand_A;
    rep.half_adv = rep.adv_A / 2;
    rep.delta_prg_ok = rep.delta_prg <= rep.half_adv + 1e-9;

    const double bound = 2.0 * A.queries() * std::sqrt(std::min(rep.params.delta, 1.0)) + rep.params.delta;
    for (const Bits &g : B.range().members()) {
        LiftRow row;
        row.g = g;
        row.weight = B.range().probability(g);
        row.prg_A = acceptance(A, g, game_oracles(Game::kPrgG, G, g, rep.params.delta, rep.params.limit, opt.budget));
        const auto og = *conditional_oracle_distribution(G, g, empty, opt.budget);
        for (const auto &[H, w] : og.support()) {
            row.prg_B += w * B.accept(g, H);
        }
        row.hyb2 = acceptance(A, g, game_oracles(Game::kHyb2, G, g, rep.params.delta, rep.params.limit, opt.budget));
        row.hyb3 = acceptance(A, g, game_oracles(Game::kHyb3, G, g, rep.params.delta, rep.params.limit, opt.budget));
        row.hyb_gap = std::abs(row.hyb2 - row.hyb3);
        row.hyb_bound = bound;
        row.hyb_ok = row.hyb_gap <= bound + 1e-9;
        rep.hybrids_ok = rep.hybrids_ok && row.hyb_ok;
        rep.rows.push_back(row);
    }
    rep.max_domain = B.max_domain();
    rep.max_queries = B.max_queries();
    rep.bottoms = B.bottoms();
    rep.queries_within_limit = rep.max_queries <= rep.params.limit;
    rep.pass = rep.adv_B >= rep.adv_A / 2 - 1e-9 && rep.queries_within_limit;
    rep.provenance = Provenance::enumeration();
    return rep;
}

/// Monte-Carlo estimate of adv_A and adv_B. Each trial draws (s, H) or (g, H) uniformly, runs
/// B's transcript search exactly and completes the learned h with one uniform sample.
inline LiftReport lifting_report_sampled(const Distinguisher &A, const ClassicalPrg &G, std::optional<double> eps_target,
                                         const RunOptions &opt, std::optional<double> delta_override = std::nullopt,
                                         std::optional<std::uint64_t> limit_override = std::nullopt) {
    check_pairing(A, G);
    if (opt.trials == 0) {
        throw Error("sampled mode needs trials > 0");
    }
    LiftReport rep;
    const auto adv = prg_advantage(A, G, opt);
    rep.adv_A = adv.advantage;
    rep.pr_prg_A = adv.pr_prg;
    rep.pr_rand_A = adv.pr_rand;
    rep.params = LiftParams::derive(eps_target.value_or(adv.advantage), A.queries(), G.shape().queries,
                                    delta_override, limit_override);
    const PrgRange range(G, opt.budget);
    const PartialFunction empty(G.shape().sig);
    std::mt19937_64 rng(opt.seed + 2);
    auto run_B = [&](Bits g, const Oracle &H) {
        if (!range.contains(g)) {
            return 0.0;
        }
        ClassicalAccess access(H);
        const auto search = find_transcript(access, G, g, rep.params.delta, rep.params.limit, opt.budget);
        rep.max_queries = std::max<std::uint64_t>(rep.max_queries, access.queries());
        if (search.bottom()) {
            ++rep.bottoms;
            return 0.0;
        }
        rep.max_domain = std::max(rep.max_domain, search.learned.size());
        return A.accept(g, sample_consistent(search.learned, rng));
    };
    double prg = 0, rand = 0;
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const auto H = sample_consistent(empty, rng);
        const std::uint64_t s = rng() & low_mask(G.shape().k);
        prg += run_B(G.eval(s, H).g, H);
        const auto H2 = sample_consistent(empty, rng);
        rand += run_B(Bits{rng() & low_mask(G.shape().ell), G.shape().ell}, H2);
    }
    const double T = static_cast<double>(opt.trials);
    rep.pr_prg_B = prg / T;
    rep.pr_rand_B = rand / T;
    rep.adv_B = std::abs(rep.pr_prg_B - rep.pr_rand_B);
    rep.delta_prg = rep.pr_prg_A - rep.pr_prg_B;
    rep.delta_rand = rep.pr_rand_B - rep.pr_rand_A;
    rep.half_adv = rep.adv_A / 2;
    rep.delta_prg_ok = rep.delta_prg <= rep.half_adv + 1e-9;
    rep.queries_within_limit = rep.max_queries <= rep.params.limit;
    rep.pass = rep.adv_B >= rep.adv_A / 2 - 1e-9 && rep.queries_within_limit;
    rep.provenance = Provenance::sampled(opt.seed, opt.trials);
    return rep;
}

}  // namespace romlift
