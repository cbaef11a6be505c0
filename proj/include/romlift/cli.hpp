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

// Command implementations behind the romlift tool: verify, run, lift and pseudodet.
// Each returns a JSON report and an exit status; argument parsing lives in the tool.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "romlift/builtins.hpp"
#include "romlift/error.hpp"
#include "romlift/experiments.hpp"
#include "romlift/io.hpp"
#include "romlift/lifting.hpp"
#include "romlift/pseudodet.hpp"
#include "romlift/reprogram.hpp"
#include "romlift/report.hpp"
#include "romlift/verify.hpp"

namespace romlift::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kUsage = 2, kBudget = 3 };

/// Flag values shared by all subcommands. Empty strings mean "not given".
struct Options {
    std::string mode = "exact";
    std::optional<std::uint64_t> seed;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t trials = 4096;
    std::string out;
    std::string format = "json";

    std::string suite = "all";
    std::string prg = "id";
    std::string distinguisher;
    std::string eps = "auto";
    std::string game = "PRG";
    std::string g;
    std::optional<double> delta;
    std::optional<std::uint64_t> limit;
    std::string alg;
    std::string oracle;
    std::string fixture;
    bool check_critical_set = false;
};

struct Outcome {
    json report;
    int exit = kPass;
};

namespace detail {

inline RunOptions run_options(const Options &o) {
    RunOptions r;
    if (o.mode == "exact") {
        r.mode = Mode::kExact;
    } else if (o.mode == "sampled") {
        r.mode = Mode::kSampled;
        if (!o.seed) {
            throw ParseError("sampled mode requires --seed");
        }
        r.seed = *o.seed;
        if (o.trials == 0) {
            throw ParseError("--trials must be positive");
        }
        r.trials = o.trials;
    } else {
        throw ParseError("--mode must be exact or sampled, got '" + o.mode + "'");
    }
    r.budget = o.budget;
    return r;
}

inline json provenance_json(const RunOptions &r) {
    if (r.mode == Mode::kExact) {
        return {{"mode", "exact"}};
    }
    return {{"mode", "sampled"}, {"seed", r.seed}, {"trials", r.trials}};
}

inline json config_json(const std::string &command, const Options &o) {
    json c = {{"command", command}, {"mode", o.mode}};
    if (o.mode == "sampled") {
        c["seed"] = o.seed ? json(*o.seed) : json(nullptr);
        c["trials"] = o.trials;
    }
    c["budget"] = o.budget;
    return c;
}

inline json header(const std::string &command, const Options &o, json config_extra) {
    json r;
    r["version"] = verify::kVersion;
    auto c = config_json(command, o);
    for (auto &[k, v] : config_extra.items()) {
        c[k] = v;
    }
    r["config"] = std::move(c);
    return r;
}

inline ClassicalPrg load_prg(const std::string &name) {
    if (auto G = builtins::find_prg(name)) {
        return *G;
    }
    std::string known;
    for (const auto &n : builtins::prg_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw ParseError("unknown PRG '" + name + "' (built-ins: " + known + ")");
}

/// Built-in name or path to a circuit file.
inline Distinguisher load_distinguisher(const std::string &spec, const ClassicalPrg &G) {
    const std::string name = spec.empty() ? builtins::default_distinguisher(G.name()) : spec;
    if (auto A = builtins::find_distinguisher(name, G.shape().sig, G.shape().ell)) {
        return *A;
    }
    if (!std::filesystem::exists(name)) {
        throw ParseError("'" + name + "' is neither a built-in distinguisher nor a circuit file");
    }
    return Distinguisher(std::filesystem::path(name).filename().string(), io::parse_circuit(io::read_file(name)));
}

struct LoadedAlgorithm {
    std::string name;
    QueryCircuit circuit;
    double default_delta = 0;
};

inline LoadedAlgorithm load_algorithm(const std::string &spec) {
    if (spec.empty()) {
        throw ParseError("--alg is required");
    }
    if (auto a = builtins::find_algorithm(spec)) {
        return {a->name, a->circuit, a->delta};
    }
    if (!std::filesystem::exists(spec)) {
        throw ParseError("'" + spec + "' is neither a built-in algorithm nor a circuit file");
    }
    return {std::filesystem::path(spec).filename().string(), io::parse_circuit(io::read_file(spec)), 0};
}

inline std::vector<Oracle> load_oracles(const std::string &path, Signature sig, std::uint64_t budget) {
    if (path.empty()) {
        return enumerate_all(sig, budget);
    }
    auto H = io::parse_oracle(io::read_file(path));
    require_same_signature(H.signature(), sig, "oracle file");
    return {H};
}

inline json bit_distribution_json(const BitDistribution &d) {
    return {{"0", d.probability(0)}, {"1", d.probability(1)}};
}

inline json partial_json(const PartialFunction &f) {
    json out = json::object();
    for (const auto &[x, y] : f.pairs()) {
        out[bit_string(x, f.signature().n)] = bit_string(y, f.signature().m);
    }
    return out;
}

}  // namespace detail

inline Outcome cmd_verify(const Options &o) {
    if (o.mode != "exact") {
        throw ParseError("verify runs exact checks only; use --mode exact");
    }
    verify::VerifyConfig cfg;
    cfg.budget = o.budget;
    if (o.seed) {
        cfg.seed = *o.seed;
    }
    auto echo = detail::config_json("verify", o);
    echo["suite"] = o.suite;
    echo["fixture_seed"] = cfg.seed;
    const auto cfg_json = cfg.to_json();
    for (const auto &[k, v] : cfg_json.items()) {
        if (k != "seed" && k != "budget") {
            echo[k] = v;
        }
    }
    auto report = verify::verify_report(verify::suite_criteria(o.suite), cfg, echo);
    const bool pass = report["pass"].get<bool>();
    return {std::move(report), pass ? kPass : kAssertionFailure};
}

inline Outcome cmd_lift(const Options &o) {
    const auto opt = detail::run_options(o);
    const auto G = detail::load_prg(o.prg);
    const auto A = detail::load_distinguisher(o.distinguisher, G);
    std::optional<double> eps;
    if (o.eps != "auto") {
        try {
            eps = std::stod(o.eps);
        } catch (const std::exception &) {
            throw ParseError("--eps must be a number or 'auto', got '" + o.eps + "'");
        }
    }
    const auto rep = opt.mode == Mode::kExact ? lifting_report(A, G, eps, opt, o.delta, o.limit)
                                              : lifting_report_sampled(A, G, eps, opt, o.delta, o.limit);
    auto report = detail::header("lift", o, {{"prg", G.name()}, {"distinguisher", A.name()}, {"eps", o.eps}});
    report["provenance"] = detail::provenance_json(opt);
    report["result"] = verify::lift_json(rep);
    report["pass"] = rep.pass;
    return {std::move(report), rep.pass ? kPass : kAssertionFailure};
}

inline Outcome cmd_run(const Options &o) {
    const auto opt = detail::run_options(o);
    if (o.game == "sim_oracle") {
        const auto alg = detail::load_algorithm(o.alg);
        const double delta = o.delta.value_or(alg.default_delta);
        const auto sig = alg.circuit.layout().signature();
        if (o.oracle.empty()) {
            throw ParseError("sim_oracle needs --oracle <file>");
        }
        const auto F = detail::load_oracles(o.oracle, sig, o.budget).front();
        const auto b = SimBudget::standard(alg.circuit.query_count(), delta);
        const auto sim = sim_oracle(alg.circuit, F, b);
        auto report = detail::header("run", o, {{"game", "sim_oracle"}, {"alg", alg.name}, {"oracle", F.str()}});
        report["provenance"] = detail::provenance_json({});
        report["params"] = {{"delta", delta}, {"Q", b.Q}, {"k", b.k}, {"threshold", b.threshold},
                            {"query_cap", b.query_cap}};
        json trace = json::array();
        for (const auto &s : sim.trace) {
            trace.push_back({{"iteration", s.iteration},
                             {"call", s.call},
                             {"c", s.c},
                             {"y_old", s.y_old.str()},
                             {"y_final", s.y_final.str()},
                             {"f", detail::partial_json(s.f)}});
        }
        report["trace"] = std::move(trace);
        report["result"] = {{"H", sim.H.str()},
                            {"learned", detail::partial_json(sim.f)},
                            {"queries", sim.queries},
                            {"exit", sim.exit},
                            {"canonical_F", canonical_output(alg.circuit, F).y.str()},
                            {"canonical_H", canonical_output(alg.circuit, sim.H).y.str()},
                            {"equivalent", qeq(alg.circuit, F, sim.H, delta)}};
        return {std::move(report), kPass};
    }
    if (o.game == "reprogram") {
        const auto fixtures = builtins::reprogram_fixtures();
        const std::string want = o.fixture.empty() ? fixtures.front().name : o.fixture;
        for (const auto &fx : fixtures) {
            if (fx.name != want) {
                continue;
            }
            const auto r = reprogram_game(fx.D, fx.F0, fx.sampler, fx.decide, opt);
            auto report = detail::header("run", o, {{"game", "reprogram"}, {"fixture", fx.name}});
            report["provenance"] = detail::provenance_json(opt);
            report["result"] = {{"Q", r.queries},
                                {"epsilon", r.epsilon},
                                {"measured", r.measured ? json(*r.measured) : json(nullptr)},
                                {"optimal", r.optimal},
                                {"state", r.state},
                                {"bound", r.bound},
                                {"pass", r.pass}};
            return {std::move(report), kPass};
        }
        throw ParseError("unknown reprogramming fixture '" + want + "'");
    }
    const auto game = parse_game(o.game);
    if (!game) {
        throw ParseError("unknown game '" + o.game + "' (PRG, Rand, PRGg, Randg, Hyb1, Hyb2, Hyb3, sim_oracle, reprogram)");
    }
    const auto G = detail::load_prg(o.prg);
    const auto A = detail::load_distinguisher(o.distinguisher, G);
    GameSpec spec;
    spec.game = *game;
    json params = {{"prg", G.name()}, {"distinguisher", A.name()}};
    if (!o.g.empty()) {
        spec.g = Bits::parse(o.g);
        params["g"] = o.g;
    }
    if (is_hybrid(*game)) {
        spec.delta = o.delta.value_or(0.1);
        spec.limit = o.limit.value_or(transcript_query_limit(*spec.delta, G.shape().queries));
        params["delta"] = *spec.delta;
        params["limit"] = *spec.limit;
    }
    const auto dist = run_experiment(spec, A, G, opt);
    auto report = detail::header("run", o, {{"game", game_name(*game)}});
    report["provenance"] = detail::provenance_json(opt);
    report["game"] = game_name(*game);
    report["g"] = o.g.empty() ? json(nullptr) : json(o.g);
    report["params"] = std::move(params);
    report["distribution"] = detail::bit_distribution_json(dist);
    return {std::move(report), kPass};
}

inline Outcome cmd_pseudodet(const Options &o) {
    const auto alg = detail::load_algorithm(o.alg);
    const double delta = o.delta.value_or(alg.default_delta);
    const auto &A = alg.circuit;
    const auto sig = A.layout().signature();
    const int Q = A.query_count();
    const auto b = SimBudget::standard(Q, delta);
    const auto oracles = detail::load_oracles(o.oracle, sig, o.budget);

    auto report = detail::header("pseudodet", o,
                                 {{"alg", alg.name}, {"delta", delta}, {"check_critical_set", o.check_critical_set}});
    report["provenance"] = detail::provenance_json({});
    report["params"] = {{"Q", Q}, {"k", b.k}, {"threshold", b.threshold}, {"query_cap", b.query_cap},
                        {"set_bound", b.set_bound}};
    const auto det = is_delta_deterministic(A, delta, oracles);
    report["deterministic"] = det.pass;
    report["worst_canonical_probability"] = det.worst_p;
    bool pass = det.pass;
    json rows = json::array();
    if (det.pass) {
        for (const auto &F : oracles) {
            const auto sim = sim_oracle(A, F, b);
            const bool eq = qeq(A, F, sim.H, delta);
            const bool cap = static_cast<double>(sim.queries) <= b.query_cap + 1e-9;
            json row = {{"F", F.str()},      {"canonical", canonical_output(A, F).y.str()},
                        {"H", sim.H.str()},  {"queries", sim.queries},
                        {"exit", sim.exit},  {"equivalent", eq},
                        {"within_cap", cap}};
            bool ok = eq && cap;
            if (o.check_critical_set) {
                const auto S = critical_set_bruteforce(A, F, delta, o.budget);
                const auto chk = check_critical_set(A, F, delta, S, b, o.budget);
                json pts = json::array();
                for (Point x : S.points) {
                    pts.push_back(bit_string(x, sig.n));
                }
                row["critical_set"] = std::move(pts);
                row["size_ok"] = chk.size_ok;
                row["stable"] = chk.stable;
                row["magnitude_ok"] = chk.magnitude_ok;
                ok = ok && chk.pass();
            }
            row["pass"] = ok;
            pass = pass && ok;
            rows.push_back(std::move(row));
        }
    } else if (det.counterexample) {
        report["counterexample"] = det.counterexample->str();
    }
    report["rows"] = std::move(rows);
    report["pass"] = pass;
    return {std::move(report), pass ? kPass : kAssertionFailure};
}

/// Serializes `report` in the requested format.
inline std::string render(const json &report, const std::string &format) {
    if (format == "json") {
        return report.dump(2) + "\n";
    }
    if (format == "table") {
        return report::render_table(report);
    }
    throw ParseError("--format must be json or table, got '" + format + "'");
}

/// Writes via a temporary file and rename so readers never see a partial report.
inline void write_atomically(const std::string &path, const std::string &text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ParseError("cannot write '" + path + "'");
        }
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace romlift::cli
