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

// romlift command-line tool: verify, run, lift, pseudodet.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "romlift/cli.hpp"

namespace {

using romlift::cli::Options;

void add_shared(CLI::App &sub, Options &o) {
    sub.add_option("--mode", o.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
    sub.add_option("--seed", o.seed, "RNG seed (sampled mode; fixture seed for verify)");
    sub.add_option("--budget", o.budget, "maximum enumeration count");
    sub.add_option("--trials", o.trials, "samples per estimate in sampled mode");
    sub.add_option("--out", o.out, "report path (default: stdout)");
    sub.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

/// Config entries become `--key value` arguments placed right after the subcommand, so
/// flags given on the command line (which come later) take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> out;
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (config.empty() || out.empty()) {
        return out;
    }
    std::vector<std::string> from_file;
    for (const auto &[key, value] : romlift::io::parse_config(romlift::io::read_file(config))) {
        if (key == "check-critical-set") {
            if (value == "true" || value == "1") {
                from_file.push_back("--" + key);
            }
            continue;
        }
        from_file.push_back("--" + key);
        from_file.push_back(value);
    }
    out.insert(out.begin() + 1, from_file.begin(), from_file.end());
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace romlift;
    CLI::App app{"romlift: exact checks for classical lifting of quantum PRG distinguishers"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", verify::kVersion);
    Options o;

    auto *verify_cmd = app.add_subcommand("verify", "run acceptance checks");
    add_shared(*verify_cmd, o);
    verify_cmd->add_option("--suite", o.suite, "lemmas, lift, pseudodet or all")
        ->check(CLI::IsMember({"lemmas", "lift", "pseudodet", "all"}));

    auto *run_cmd = app.add_subcommand("run", "run a single experiment");
    add_shared(*run_cmd, o);
    run_cmd->add_option("--game", o.game, "PRG, Rand, PRGg, Randg, Hyb1, Hyb2, Hyb3, sim_oracle or reprogram");
    run_cmd->add_option("--prg", o.prg, "built-in PRG name");
    run_cmd->add_option("--distinguisher", o.distinguisher, "built-in name or circuit file");
    run_cmd->add_option("--g", o.g, "PRG output bit string for PRGg, Randg and hybrids");
    run_cmd->add_option("--delta", o.delta, "transcript threshold or determinism parameter");
    run_cmd->add_option("--limit", o.limit, "transcript query limit for hybrids");
    run_cmd->add_option("--alg", o.alg, "algorithm for sim_oracle: built-in name or circuit file");
    run_cmd->add_option("--oracle", o.oracle, "oracle file for sim_oracle");
    run_cmd->add_option("--fixture", o.fixture, "reprogramming fixture name");

    auto *lift_cmd = app.add_subcommand("lift", "lift a quantum distinguisher to a classical one");
    add_shared(*lift_cmd, o);
    lift_cmd->add_option("--prg", o.prg, "built-in PRG name");
    lift_cmd->add_option("--distinguisher", o.distinguisher, "built-in name or circuit file");
    lift_cmd->add_option("--eps", o.eps, "target advantage or 'auto'");
    lift_cmd->add_option("--delta", o.delta, "override the derived transcript threshold");
    lift_cmd->add_option("--limit", o.limit, "override the derived query limit");

    auto *pd_cmd = app.add_subcommand("pseudodet", "simulate a near-deterministic algorithm classically");
    add_shared(*pd_cmd, o);
    pd_cmd->add_option("--alg", o.alg, "built-in name or circuit file")->required();
    pd_cmd->add_option("--oracle", o.oracle, "oracle file (default: every oracle of the signature)");
    pd_cmd->add_option("--delta", o.delta, "determinism parameter");
    pd_cmd->add_flag("--check-critical-set", o.check_critical_set, "also build and check the critical set");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsage;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    }

    try {
        cli::Outcome result;
        if (*verify_cmd) {
            result = cli::cmd_verify(o);
        } else if (*run_cmd) {
            result = cli::cmd_run(o);
        } else if (*lift_cmd) {
            result = cli::cmd_lift(o);
        } else {
            result = cli::cmd_pseudodet(o);
        }
        const auto text = cli::render(result.report, o.format);
        if (o.out.empty()) {
            std::cout << text;
        } else {
            cli::write_atomically(o.out, text);
        }
        if (result.exit == cli::kAssertionFailure) {
            std::cerr << "assertion failure: see report\n";
        }
        return result.exit;
    } catch (const BudgetExceeded &e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return cli::kBudget;
    } catch (const DeterminismViolation &e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return cli::kAssertionFailure;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    }
}
