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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "romlift/bits.hpp"
#include "romlift/error.hpp"
#include "romlift/oracle.hpp"

namespace romlift {

/// Ordered (query, answer) pairs with distinct query points.
struct Transcript {
    Signature sig;
    std::vector<std::pair<Point, Value>> pairs;

    bool contains(Point x) const {
        for (const auto &[px, py] : pairs) {
            if (px == x) {
                return true;
            }
        }
        return false;
    }
    PartialFunction as_partial() const {
        PartialFunction f(sig);
        for (auto [x, y] : pairs) {
            f.insert(x, y);
        }
        return f;
    }
    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += "(" + bit_string(pairs[i].first, sig.n) + "," + bit_string(pairs[i].second, sig.m) + ")";
        }
        return out + ")";
    }
    friend bool operator==(const Transcript &, const Transcript &) = default;
    friend auto operator<=>(const Transcript &a, const Transcript &b) {
        if (auto c = a.sig <=> b.sig; c != 0) {
            return c;
        }
        return a.pairs <=> b.pairs;
    }
};

/// Classical access to a fixed oracle that logs each distinct point once, in query order.
/// Repeated queries are answered from the log and do not count again.
class ClassicalAccess {
  public:
    explicit ClassicalAccess(const Oracle &H) : H_(&H), log_{H.signature(), {}}, seen_(H.signature().points(), false) {
    }

    Value query(Point x) {
        const Value y = (*H_)(x);
        if (!seen_[x]) {
            seen_[x] = true;
            log_.pairs.emplace_back(x, y);
        }
        ++calls_;
        return y;
    }
    Signature signature() const {
        return H_->signature();
    }
    /// Distinct points queried so far.
    std::size_t queries() const {
        return log_.pairs.size();
    }
    std::size_t calls() const {
        return calls_;
    }
    const Transcript &transcript() const {
        return log_;
    }

  private:
    const Oracle *H_;
    Transcript log_;
    std::vector<bool> seen_;
    std::size_t calls_ = 0;
};

struct PrgShape {
    int k = 0;        // seed bits
    int ell = 0;      // output bits
    Signature sig{};  // oracle signature
    int queries = 0;  // Q_G, distinct classical queries per evaluation
};

struct PrgOutput {
    Bits g;
    Transcript tau;
    friend bool operator==(const PrgOutput &, const PrgOutput &) = default;
};

/// Deterministic classical oracle algorithm {0,1}^k -> {0,1}^ell making exactly Q_G
/// distinct classical queries. The procedure gets the seed and a ClassicalAccess and
/// returns the output as an integer (first output bit most significant).
class ClassicalPrg {
  public:
    using Procedure = std::function<std::uint64_t(std::uint64_t seed, ClassicalAccess &access)>;

    ClassicalPrg(std::string name, PrgShape shape, Procedure procedure)
        : name_(std::move(name)), shape_(shape), procedure_(std::move(procedure)) {
        check_signature(shape.sig);
        if (shape.k < 0 || shape.k > 20 || shape.ell <= shape.k || shape.ell > 62) {
            throw DimensionError("PRG " + name_ + " needs 0 <= k < ell <= 62 (k <= 20)");
        }
        if (shape.queries < 0 || static_cast<std::size_t>(shape.queries) > shape.sig.points()) {
            throw DimensionError("PRG " + name_ + " query count exceeds the oracle domain");
        }
    }

    const std::string &name() const {
        return name_;
    }
    const PrgShape &shape() const {
        return shape_;
    }
    std::uint64_t seed_count() const {
        return std::uint64_t{1} << shape_.k;
    }

    PrgOutput eval(std::uint64_t seed, const Oracle &H) const {
        require_same_signature(H.signature(), shape_.sig, "run_prg");
        if (seed >= seed_count()) {
            throw DimensionError("seed does not fit in k=" + std::to_string(shape_.k) + " bits");
        }
        ClassicalAccess access(H);
        const std::uint64_t g = procedure_(seed, access);
        if (access.queries() != static_cast<std::size_t>(shape_.queries)) {
            throw QueryCountError("PRG " + name_ + " made " + std::to_string(access.queries()) +
                                  " distinct queries, declared " + std::to_string(shape_.queries));
        }
        if (g > low_mask(shape_.ell)) {
            throw DimensionError("PRG " + name_ + " output does not fit in ell bits");
        }
        return PrgOutput{Bits{g, shape_.ell}, access.transcript()};
    }

  private:
    std::string name_;
    PrgShape shape_;
    Procedure procedure_;
};

/// (g, tau) = G^H(s).
inline PrgOutput run_prg(const ClassicalPrg &G, const Oracle &H, std::uint64_t seed) {
    return G.eval(seed, H);
}

/// Number of (H, s) pairs an exact enumeration over Func_{n,m}(h) x seeds visits.
inline std::uint64_t checked_pair_count(const ClassicalPrg &G, const PartialFunction &h,
                                        std::uint64_t budget) {
    const std::uint64_t oracles = checked_consistent_count(h, budget);
    if (oracles > budget / G.seed_count()) {
        throw BudgetExceeded("enumerating (H, s) pairs for " + G.name() + " exceeds budget " +
                             std::to_string(budget));
    }
    return oracles * G.seed_count();
}

/// Visits every (H, s) with H in Func(h), H in lexicographic order then s ascending.
template <class Fn>
void for_each_pair(const ClassicalPrg &G, const PartialFunction &h, Fn &&fn,
                   std::uint64_t budget = kDefaultBudget) {
    checked_pair_count(G, h, budget);
    for_each_consistent(
        h,
        [&](const Oracle &H) {
            for (std::uint64_t s = 0; s < G.seed_count(); ++s) {
                fn(H, s);
            }
        },
        budget);
}

/// Membership table for the range of G over all (H, s), indexed by g.
class PrgRange {
  public:
    PrgRange(const ClassicalPrg &G, std::uint64_t budget = kDefaultBudget)
        : ell_(G.shape().ell), hits_(std::size_t{1} << G.shape().ell, 0) {
        for_each_pair(
            G, PartialFunction(G.shape().sig),
            [&](const Oracle &H, std::uint64_t s) { ++hits_[G.eval(s, H).g.value]; }, budget);
        for (auto c : hits_) {
            total_ += c;
        }
    }
    bool contains(Bits g) const {
        return g.width == ell_ && g.value < hits_.size() && hits_[g.value] > 0;
    }
    /// Pr_{(H,s)}[G^H(s) = g].
    double probability(Bits g) const {
        return contains(g) ? static_cast<double>(hits_[g.value]) / static_cast<double>(total_) : 0.0;
    }
    std::vector<Bits> members() const {
        std::vector<Bits> out;
        for (std::size_t v = 0; v < hits_.size(); ++v) {
            if (hits_[v]) {
                out.emplace_back(v, ell_);
            }
        }
        return out;
    }

  private:
    int ell_;
    std::vector<std::uint64_t> hits_;
    std::uint64_t total_ = 0;
};

}  // namespace romlift
