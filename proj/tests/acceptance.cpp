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

// Acceptance suite: one PASS/FAIL line per criterion. `--criterion N` runs a single one.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "romlift/verify.hpp"

namespace {

// Wall-clock limits, in seconds, for criteria that state one.
double time_limit(int id) {
    if (id == 1) {
        return 60;
    }
    if (id == 4) {
        return 120;
    }
    return 0;
}

std::string summary(const romlift::verify::json &r) {
    std::string out;
    for (const char *key : {"trials", "violations", "fixtures", "failures", "pairs", "max_tv"}) {
        if (r.contains(key)) {
            out += std::string(" ") + key + "=" + r[key].dump();
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance_test [--criterion N]...\n";
            return 2;
        }
    }
    if (ids.empty()) {
        for (int id = 1; id <= romlift::verify::kCriteria; ++id) {
            ids.push_back(id);
        }
    }
    const romlift::verify::VerifyConfig cfg;
    bool all = true;
    for (int id : ids) {
        if (id < 1 || id > romlift::verify::kCriteria) {
            std::cerr << "no criterion " << id << "\n";
            return 2;
        }
        const auto start = std::chrono::steady_clock::now();
        const auto r = romlift::verify::run_criterion(id, cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double limit = time_limit(id);
        const bool in_time = limit == 0 || secs < limit;
        const bool pass = r["pass"].get<bool>() && in_time;
        all = all && pass;
        std::cout << "criterion " << id << " (" << romlift::verify::criterion_name(id) << "): "
                  << (pass ? "PASS" : "FAIL") << summary(r) << " time=" << secs << "s"
                  << (in_time ? "" : " over limit") << std::endl;
    }
    return all ? 0 : 1;
}
