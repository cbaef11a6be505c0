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

// Acceptance checks 1-11 on the built-in fixtures, each reported as a JSON record with
// measured values, bounds and a pass flag.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "romlift/builtins.hpp"
#include "romlift/conditional.hpp"
#include "romlift/experiments.hpp"
#include "romlift/find_transcript.hpp"
#include "romlift/lifting.hpp"
#include "romlift/pseudodet.hpp"
#include "romlift/reprogram.hpp"

namespace romlift::verify {

using json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "romlift 0.1.0";
inline constexpr int kCriteria = 11;

struct VerifyConfig {
    std::uint64_t seed = 2026;  // drives random fixture generation only
    std::uint64_t budget = kDefaultBudget;
    int swap_trials = 1000;
    int state_trials = 1000;
    int random_reprogram = 40;

    json to_json() const {
        return {{"seed", seed},
                {"budget", budget},
                {"swap_trials", swap_trials},
                {"state_trials", state_trials},
                {"random_reprogram", random_reprogram}};
    }
};

inline const char *criterion_name(int id) {
    static const char *names[] = {"",
                                  "swapping bound",
                                  "trace distance from euclidean distance",
                                  "reprogramming bound",
                                  "reprogrammed oracle distribution identity",
                                  "hybrid chain",
                                  "transcript search guarantee",
                                  "classical lifting",
                                  "critical set",
                                  "oracle simulation",
                                  "quantum PRG lifting",
                                  "report determinism"};
    return id >= 1 && id <= kCriteria ? names[id] : "?";
}

/// Criterion ids run by a suite name: lemmas, lift, pseudodet or all.
inline std::vector<int> suite_criteria(const std::string &suite) {
    if (suite == "lemmas") {
        return {1, 2, 3, 4, 5, 6};
    }
    if (suite == "lift") {
        return {7};
    }
    if (suite == "pseudodet") {
        return {8, 9, 10};
    }
    if (suite == "all") {
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    }
    throw Error("unknown suite '" + suite + "' (expected lemmas, lift, pseudodet or all)");
}

namespace detail {

inline json record(int id) {
    return {{"id", id}, {"name", criterion_name(id)}, {"pass", false}};
}

struct PrgFixture {
    ClassicalPrg G;
    Distinguisher A;
};

inline std::vector<PrgFixture> prg_fixtures() {
    return {{builtins::prg_id(), builtins::a_par()}, {builtins::prg_adaptive2(), builtins::a_adaptive2()}};
}

inline Oracle perturb(const Oracle &f, std::mt19937_64 &rng) {
    const Signature sig = f.signature();
    std::vector<Value> table(f.table().begin(), f.table().end());
    for (auto &y : table) {
        if (rng() & 1u) {
            y = static_cast<Value>((y ^ (1 + rng() % sig.value_mask())) & sig.value_mask());
        }
    }
    return Oracle(sig, std::move(table));
}

inline std::vector<amplitude> random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<amplitude> v(dim);
    double norm = 0;
    for (auto &a : v) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

struct Fixture {
    builtins::Algorithm alg;
    Oracle F;
};

inline std::vector<Fixture> pseudodet_fixtures() {
    std::vector<Fixture> out;
    for (const auto &alg : builtins::algorithms()) {
        for (const auto &F : enumerate_all(alg.circuit.layout().signature())) {
            out.push_back({alg, F});
        }
    }
    return out;
}

inline bool classical_query_fixture(const std::string &name) {
    return name == "ignore" || name == "query0" || name == "xor2" || name == "and2";
}

}  // namespace detail

inline json criterion_swapping(const VerifyConfig &cfg) {
    auto rec = detail::record(1);
    std::mt19937_64 rng(cfg.seed);
    int violations = 0, factor_two_violations = 0;
    double worst_gap = -std::numeric_limits<double>::infinity();
    json first_violation = nullptr;
    for (int t = 0; t < cfg.swap_trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 2);
        const int w = static_cast<int>(rng() % 2);
        const int Q = 1 + static_cast<int>(rng() % 3);
        const auto circ = builtins::random_query_circuit(n, m, w, Q, rng);
        const auto f = builtins::random_oracle({n, m}, rng);
        const auto g = detail::perturb(f, rng);
        const auto chk = swapping_check(circ, f, g);
        worst_gap = std::max(worst_gap, chk.lhs - chk.rhs);
        if (chk.lhs > chk.rhs + 1e-9) {
            ++violations;
            if (first_violation.is_null()) {
                first_violation = {{"trial", t}, {"n", n}, {"m", m}, {"w", w}, {"Q", Q},
                                   {"f", f.str()}, {"g", g.str()}, {"lhs", chk.lhs}, {"rhs", chk.rhs}};
            }
        }
        if (chk.lhs > chk.rhs_factor_two + 1e-9) {
            ++factor_two_violations;
        }
    }
    rec["trials"] = cfg.swap_trials;
    rec["violations"] = violations;
    rec["max_lhs_minus_rhs"] = worst_gap;
    rec["first_violation"] = first_violation;
    rec["diagnostic_factor_two_violations"] = factor_two_violations;
    rec["pass"] = violations == 0 && cfg.swap_trials >= 1000;
    return rec;
}

inline json criterion_measure(const VerifyConfig &cfg) {
    auto rec = detail::record(2);
    std::mt19937_64 rng(cfg.seed + 2);
    int violations = 0;
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < cfg.state_trials; ++t) {
        const int qubits = 1 + static_cast<int>(rng() % 6);
        const RegisterLayout layout{qubits, 0, 0};
        auto a = detail::random_state(layout.dim(), rng);
        auto b = detail::random_state(layout.dim(), rng);
        if (t % 10 == 0) {
            b = a;  // equal states
        }
        amplitude overlap = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            overlap += std::conj(a[i]) * b[i];
        }
        if (std::abs(overlap) > 0) {
            const amplitude phase = std::conj(overlap) / std::abs(overlap);
            for (auto &x : b) {
                x *= phase;
            }
        }
        const StateVector sa(layout, a), sb(layout, b);
        const double eps = euclidean_distance(sa, sb);
        const double td = trace_distance_pure(sa, sb);
        const double bound = eps * std::sqrt(std::max(0.0, 1 - eps * eps / 4));
        worst_gap = std::max(worst_gap, td - bound);
        if (td > bound + 1e-9) {
            ++violations;
        }
    }
    rec["trials"] = cfg.state_trials;
    rec["violations"] = violations;
    rec["max_td_minus_bound"] = worst_gap;
    rec["pass"] = violations == 0 && cfg.state_trials >= 1000;
    return rec;
}

inline json criterion_reprogram(const VerifyConfig &cfg) {
    auto rec = detail::record(3);
    bool pass = true;
    json rows = json::array();
    for (const auto &fx : builtins::reprogram_fixtures(cfg.seed + 3, cfg.random_reprogram)) {
        const auto r = reprogram_game(fx.D, fx.F0, fx.sampler, fx.decide);
        pass = pass && r.pass;
        json row = {{"fixture", fx.name}, {"Q", r.queries}, {"epsilon", r.epsilon}};
        row["measured"] = r.measured ? json(*r.measured) : json(nullptr);
        row["optimal"] = r.optimal;
        row["state"] = r.state;
        row["bound"] = r.bound;
        row["pass"] = r.pass;
        rows.push_back(std::move(row));
    }
    rec["fixtures"] = rows.size();
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline const std::vector<double> &search_deltas() {
    static const std::vector<double> deltas{0.5, 0.25, 0.04, 0.01};
    return deltas;
}

inline json criterion_identity(const VerifyConfig &cfg) {
    auto rec = detail::record(4);
    double worst = 0;
    std::uint64_t checked = 0;
    json rows = json::array();
    for (const auto &fx : detail::prg_fixtures()) {
        const PrgRange range(fx.G, cfg.budget);
        for (double delta : search_deltas()) {
            const auto limit = transcript_query_limit(delta, fx.G.shape().queries);
            double row_worst = 0;
            std::uint64_t row_checked = 0;
            for (const Bits &g : range.members()) {
                const auto branches = search_branches(fx.G, g, delta, limit, cfg.budget);
                for (const auto &h : branches.visited) {
                    const auto reprogrammed = reprogrammed_oracle_distribution(fx.G, g, h, cfg.budget);
                    const auto conditioned = conditional_oracle_distribution(fx.G, g, h, cfg.budget);
                    const double tv = tv_distance(*reprogrammed, *conditioned);
                    row_worst = std::max(row_worst, tv);
                    ++row_checked;
                }
            }
            worst = std::max(worst, row_worst);
            checked += row_checked;
            rows.push_back({{"prg", fx.G.name()}, {"delta", delta}, {"pairs", row_checked}, {"max_tv", row_worst}});
        }
    }
    rec["pairs"] = checked;
    rec["max_tv"] = worst;
    rec["tolerance"] = 1e-12;
    rec["rows"] = std::move(rows);
    rec["pass"] = worst <= 1e-12 && checked > 0;
    return rec;
}

inline json criterion_hybrids(const VerifyConfig &cfg) {
    auto rec = detail::record(5);
    bool pass = true;
    json rows = json::array();
    for (const auto &fx : detail::prg_fixtures()) {
        const PrgRange range(fx.G, cfg.budget);
        for (double delta : {0.04, 0.01}) {
            const auto limit = transcript_query_limit(delta, fx.G.shape().queries);
            const double bound = 2.0 * fx.A.queries() * std::sqrt(delta) + delta;
            for (const Bits &g : range.members()) {
                const auto prg = game_oracles(Game::kPrgG, fx.G, g, delta, limit, cfg.budget);
                const auto hyb1 = game_oracles(Game::kHyb1, fx.G, g, delta, limit, cfg.budget);
                const auto hyb2 = game_oracles(Game::kHyb2, fx.G, g, delta, limit, cfg.budget);
                const auto hyb3 = game_oracles(Game::kHyb3, fx.G, g, delta, limit, cfg.budget);
                const double tv01 = tv_distance(prg, hyb1), tv12 = tv_distance(hyb1, hyb2);
                const double p0 = acceptance(fx.A, g, prg), p1 = acceptance(fx.A, g, hyb1);
                const double p2 = acceptance(fx.A, g, hyb2), p3 = acceptance(fx.A, g, hyb3);
                const double gap = std::abs(p2 - p3);
                const bool ok = tv01 <= 1e-12 && tv12 <= 1e-12 && gap <= bound + 1e-9;
                pass = pass && ok;
                rows.push_back({{"prg", fx.G.name()},
                                {"delta", delta},
                                {"g", g.str()},
                                {"tv_prgg_hyb1", tv01},
                                {"tv_hyb1_hyb2", tv12},
                                {"pr_prgg", p0},
                                {"pr_hyb1", p1},
                                {"pr_hyb2", p2},
                                {"pr_hyb3", p3},
                                {"hyb2_hyb3_gap", gap},
                                {"bound", bound},
                                {"pass", ok}});
            }
        }
    }
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline json criterion_transcript(const VerifyConfig &cfg) {
    auto rec = detail::record(6);
    bool pass = true;
    json rows = json::array();
    for (const auto &fx : detail::prg_fixtures()) {
        const PrgRange range(fx.G, cfg.budget);
        const int QG = fx.G.shape().queries;
        for (double delta : search_deltas()) {
            const auto limit = transcript_query_limit(delta, QG);
            for (const Bits &g : range.members()) {
                const auto og = *conditional_oracle_distribution(fx.G, g, PartialFunction(fx.G.shape().sig), cfg.budget);
                double good = 0, expected_domain = 0;
                for (const auto &[H, w] : og.support()) {
                    const auto run = find_transcript(H, fx.G, g, delta, limit, cfg.budget);
                    if (!run.bottom() && run.eps <= delta + kProbabilitySlack) {
                        good += w;
                    }
                    expected_domain += w * static_cast<double>(run.learned.size());
                }
                const bool ok = good >= 1 - delta - 1e-12 && expected_domain <= QG / delta + 1e-12;
                pass = pass && ok;
                rows.push_back({{"prg", fx.G.name()},
                                {"delta", delta},
                                {"g", g.str()},
                                {"pr_light", good},
                                {"light_bound", 1 - delta},
                                {"expected_domain", expected_domain},
                                {"domain_bound", QG / delta},
                                {"pass", ok}});
            }
        }
    }
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline json lift_json(const LiftReport &r) {
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"g", row.g.str()},
                        {"weight", row.weight},
                        {"pr_prgg_A", row.prg_A},
                        {"pr_prgg_B", row.prg_B},
                        {"pr_hyb2", row.hyb2},
                        {"pr_hyb3", row.hyb3},
                        {"hyb_gap", row.hyb_gap},
                        {"hyb_bound", row.hyb_bound},
                        {"hyb_ok", row.hyb_ok}});
    }
    return {{"eps_target", r.params.eps_target},
            {"delta", r.params.delta},
            {"limit", r.params.limit},
            {"adv_A", r.adv_A},
            {"pr_prg_A", r.pr_prg_A},
            {"pr_rand_A", r.pr_rand_A},
            {"adv_B", r.adv_B},
            {"pr_prg_B", r.pr_prg_B},
            {"pr_rand_B", r.pr_rand_B},
            {"half_adv_A", r.half_adv},
            {"prg_side_loss", r.delta_prg},
            {"prg_side_loss_ok", r.delta_prg_ok},
            {"rand_side_shift", r.delta_rand},
            {"max_queries", r.max_queries},
            {"max_domain", r.max_domain},
            {"bottoms", r.bottoms},
            {"queries_within_limit", r.queries_within_limit},
            {"hybrids_ok", r.hybrids_ok},
            {"rows", std::move(rows)},
            {"provenance", r.provenance.str()},
            {"pass", r.pass}};
}

inline json criterion_lifting(const VerifyConfig &cfg) {
    auto rec = detail::record(7);
    RunOptions opt;
    opt.budget = cfg.budget;
    bool pass = true;
    json rows = json::array();
    for (const auto &fx : detail::prg_fixtures()) {
        const auto r = lifting_report(fx.A, fx.G, std::nullopt, opt);
        const bool ok = r.pass && r.adv_A > 0;
        pass = pass && ok;
        auto row = lift_json(r);
        row["prg"] = fx.G.name();
        row["distinguisher"] = fx.A.name();
        rows.push_back(std::move(row));
    }
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline json criterion_critical_set(const VerifyConfig &cfg) {
    auto rec = detail::record(8);
    bool pass = true;
    int failures = 0, corrected_failures = 0;
    json rows = json::array();
    const auto fixtures = detail::pseudodet_fixtures();
    for (const auto &fx : fixtures) {
        const int Q = fx.alg.circuit.query_count();
        const auto S = critical_set_bruteforce(fx.alg.circuit, fx.F, fx.alg.delta, cfg.budget);
        const auto chk = check_critical_set(fx.alg.circuit, fx.F, fx.alg.delta, S,
                                            SimBudget::standard(Q, fx.alg.delta), cfg.budget);
        const auto corrected = check_critical_set(fx.alg.circuit, fx.F, fx.alg.delta, S,
                                                  SimBudget::swapping_corrected(Q, fx.alg.delta), cfg.budget);
        pass = pass && chk.pass();
        failures += !chk.pass();
        corrected_failures += !corrected.pass();
        json points = json::array(), mags = json::array();
        for (std::size_t i = 0; i < S.points.size(); ++i) {
            points.push_back(S.points[i]);
            mags.push_back(S.magnitudes[i]);
        }
        rows.push_back({{"alg", fx.alg.name},
                        {"F", fx.F.str()},
                        {"delta", fx.alg.delta},
                        {"Q", Q},
                        {"S", std::move(points)},
                        {"magnitudes", std::move(mags)},
                        {"size_bound", chk.size_bound},
                        {"threshold", chk.threshold},
                        {"size_ok", chk.size_ok},
                        {"stable", chk.stable},
                        {"magnitude_ok", chk.magnitude_ok},
                        {"pass", chk.pass()},
                        {"diagnostic_corrected_pass", corrected.pass()}});
    }
    rec["fixtures"] = fixtures.size();
    rec["failures"] = failures;
    rec["diagnostic_corrected_failures"] = corrected_failures;
    rec["rows"] = std::move(rows);
    rec["pass"] = pass && fixtures.size() >= 20;
    return rec;
}

inline json criterion_simulation(const VerifyConfig &cfg) {
    auto rec = detail::record(9);
    bool pass = true;
    int failures = 0, corrected_failures = 0;
    json rows = json::array();
    for (const auto &fx : detail::pseudodet_fixtures()) {
        const auto &A = fx.alg.circuit;
        const double delta = fx.alg.delta;
        const int Q = A.query_count();
        if (!is_delta_deterministic(A, delta, enumerate_all(fx.F.signature(), cfg.budget)).pass) {
            continue;
        }
        const auto b = SimBudget::standard(Q, delta);
        const auto sim = sim_oracle(A, fx.F, b);
        const bool equivalent = qeq(A, fx.F, sim.H, delta);
        const bool within_cap = static_cast<double>(sim.queries) <= b.query_cap + 1e-9;
        const bool ok = equivalent && within_cap;
        pass = pass && ok;
        failures += !ok;

        const auto cb = SimBudget::swapping_corrected(Q, delta);
        const auto csim = sim_oracle(A, fx.F, cb);
        const bool corrected_ok =
            qeq(A, fx.F, csim.H, delta) && static_cast<double>(csim.queries) <= cb.query_cap + 1e-9;
        corrected_failures += !corrected_ok;

        json row = {{"alg", fx.alg.name}, {"F", fx.F.str()},    {"delta", delta},
                    {"Q", Q},             {"k", b.k},           {"threshold", b.threshold},
                    {"H", sim.H.str()},   {"queries", sim.queries}, {"query_cap", b.query_cap},
                    {"exit", sim.exit},   {"equivalent", equivalent}, {"within_cap", within_cap},
                    {"pass", ok},         {"diagnostic_corrected_pass", corrected_ok}};
        if (detail::classical_query_fixture(fx.alg.name)) {
            const auto S = critical_set_bruteforce(A, fx.F, delta, cfg.budget);
            const auto small = 4 * S.points.size() + 2;
            row["diagnostic_small_bound"] = small;
            row["diagnostic_small_ok"] = sim.queries <= small;
        }
        rows.push_back(std::move(row));
    }
    rec["fixtures"] = rows.size();
    rec["failures"] = failures;
    rec["diagnostic_corrected_failures"] = corrected_failures;
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline json criterion_quantum_prg(const VerifyConfig &cfg) {
    auto rec = detail::record(10);
    bool pass = true;
    RunOptions opt;
    opt.budget = cfg.budget;
    json rows = json::array();
    for (const auto &fx : builtins::quantum_prg_fixtures()) {
        const auto det = quantum_prg_determinism(fx.prg, fx.delta, cfg.budget);
        const auto eps = quantum_prg_advantage(fx.distinguisher, fx.prg, cfg.budget);
        const auto b = SimBudget::standard(fx.prg.queries(), fx.delta);
        const auto G2 = derandomize_prg(fx.prg, fx.delta, b);
        const auto adv2 = prg_advantage(fx.distinguisher, G2, opt);
        const auto lift = lifting_report(fx.distinguisher, G2, std::nullopt, opt);
        const bool wrapper_ok = adv2.advantage >= eps.advantage - fx.delta - 1e-9;
        const bool lift_ok = lift.adv_B >= eps.advantage / 2 - fx.delta - 1e-9 && lift.queries_within_limit;
        const bool ok = det.pass && eps.advantage > 0 && wrapper_ok && lift_ok;
        pass = pass && ok;
        rows.push_back({{"qprg", fx.prg.name()},
                        {"distinguisher", fx.distinguisher.name()},
                        {"delta", fx.delta},
                        {"deterministic", det.pass},
                        {"epsilon", eps.advantage},
                        {"G2_queries", G2.shape().queries},
                        {"adv_G2", adv2.advantage},
                        {"wrapper_bound", eps.advantage - fx.delta},
                        {"wrapper_ok", wrapper_ok},
                        {"adv_B", lift.adv_B},
                        {"lift_bound", eps.advantage / 2 - fx.delta},
                        {"lift_ok", lift_ok},
                        {"pass", ok}});
    }
    rec["rows"] = std::move(rows);
    rec["pass"] = pass;
    return rec;
}

inline json run_criterion(int id, const VerifyConfig &cfg);

/// Runs criteria 1-10 twice and compares the serialized reports byte for byte.
inline json criterion_determinism(const VerifyConfig &cfg) {
    auto rec = detail::record(11);
    auto dump = [&] {
        json all = json::array();
        for (int id = 1; id <= 10; ++id) {
            all.push_back(run_criterion(id, cfg));
        }
        return all.dump();
    };
    const auto a = dump();
    const auto b = dump();
    rec["bytes"] = a.size();
    rec["identical"] = a == b;
    rec["pass"] = a == b;
    return rec;
}

inline json run_criterion(int id, const VerifyConfig &cfg) {
    switch (id) {
    case 1:
        return criterion_swapping(cfg);
    case 2:
        return criterion_measure(cfg);
    case 3:
        return criterion_reprogram(cfg);
    case 4:
        return criterion_identity(cfg);
    case 5:
        return criterion_hybrids(cfg);
    case 6:
        return criterion_transcript(cfg);
    case 7:
        return criterion_lifting(cfg);
    case 8:
        return criterion_critical_set(cfg);
    case 9:
        return criterion_simulation(cfg);
    case 10:
        return criterion_quantum_prg(cfg);
    case 11:
        return criterion_determinism(cfg);
    default:
        throw Error("no criterion " + std::to_string(id));
    }
}

/// Full report for a list of criteria.
inline json verify_report(const std::vector<int> &ids, const VerifyConfig &cfg, const json &config_echo) {
    json report;
    report["version"] = kVersion;
    report["config"] = config_echo;
    report["provenance"] = Provenance::enumeration().str();
    json results = json::array();
    bool pass = true;
    for (int id : ids) {
        auto r = run_criterion(id, cfg);
        pass = pass && r["pass"].get<bool>();
        results.push_back(std::move(r));
    }
    report["criteria"] = std::move(results);
    report["pass"] = pass;
    return report;
}

}  // namespace romlift::verify
