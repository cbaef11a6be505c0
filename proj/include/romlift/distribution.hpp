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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "romlift/error.hpp"

namespace romlift {

/// How a distribution was obtained.
struct Provenance {
    bool exact = true;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;

    static Provenance enumeration() {
        return {};
    }
    static Provenance sampled(std::uint64_t seed, std::uint64_t trials) {
        return {false, seed, trials};
    }
    std::string str() const {
        return exact ? "exact-enumeration"
                     : "sampled(seed=" + std::to_string(seed) + ", trials=" + std::to_string(trials) +
                           ")";
    }
    friend bool operator==(const Provenance &, const Provenance &) = default;
};

/// Finite distribution with support sorted by value. Zero-weight entries are dropped.
template <class T>
class Distribution {
  public:
    Distribution() = default;

    /// Builds from unnormalised weights; duplicate values are merged.
    static Distribution from_weights(std::vector<std::pair<T, double>> weights,
                                     Provenance provenance = Provenance::enumeration()) {
        std::map<T, double> merged;
        double total = 0;
        for (auto &[value, w] : weights) {
            if (w < 0 || !std::isfinite(w)) {
                throw Error("distribution weight must be finite and nonnegative");
            }
            merged[value] += w;
            total += w;
        }
        if (!(total > 0)) {
            throw UndefinedDistribution("distribution has zero total weight");
        }
        Distribution d;
        d.provenance_ = provenance;
        for (auto &[value, w] : merged) {
            if (w > 0) {
                d.support_.emplace_back(value, w / total);
            }
        }
        return d;
    }

    static Distribution point_mass(T value, Provenance provenance = Provenance::enumeration()) {
        Distribution d;
        d.provenance_ = provenance;
        d.support_.emplace_back(std::move(value), 1.0);
        return d;
    }

    const std::vector<std::pair<T, double>> &support() const {
        return support_;
    }
    const Provenance &provenance() const {
        return provenance_;
    }
    std::size_t size() const {
        return support_.size();
    }

    double probability(const T &value) const {
        auto it = std::lower_bound(support_.begin(), support_.end(), value,
                                   [](const auto &entry, const T &v) { return entry.first < v; });
        if (it != support_.end() && !(value < it->first)) {
            return it->second;
        }
        return 0.0;
    }

    double total() const {
        double s = 0;
        for (const auto &[v, p] : support_) {
            s += p;
        }
        return s;
    }

    /// Pushforward through `fn`.
    template <class Fn>
    auto map(Fn &&fn) const {
        using U = std::decay_t<decltype(fn(std::declval<const T &>()))>;
        std::vector<std::pair<U, double>> weights;
        weights.reserve(support_.size());
        for (const auto &[v, p] : support_) {
            weights.emplace_back(fn(v), p);
        }
        return Distribution<U>::from_weights(std::move(weights), provenance_);
    }

  private:
    std::vector<std::pair<T, double>> support_;
    Provenance provenance_;
};

/// Total variation distance, half the l1 distance between probability vectors.
template <class T>
double tv_distance(const Distribution<T> &a, const Distribution<T> &b) {
    double sum = 0;
    auto ia = a.support().begin();
    auto ib = b.support().begin();
    while (ia != a.support().end() || ib != b.support().end()) {
        if (ib == b.support().end() || (ia != a.support().end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.support().end() || ib->first < ia->first) {
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

/// Distribution of a single output bit.
using BitDistribution = Distribution<int>;

inline BitDistribution bernoulli(double p1, Provenance provenance = Provenance::enumeration()) {
    p1 = std::clamp(p1, 0.0, 1.0);
    return BitDistribution::from_weights({{0, 1.0 - p1}, {1, p1}}, provenance);
}

}  // namespace romlift
