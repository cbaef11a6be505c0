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

// Partial and total functions {0,1}^n -> {0,1}^m and the algebra used to
// patch, merge and enumerate them.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "romlift/bits.hpp"
#include "romlift/error.hpp"

namespace romlift {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

struct Signature {
    int n = 0;
    int m = 0;

    std::size_t points() const {
        return std::size_t{1} << n;
    }
    Value value_mask() const {
        return static_cast<Value>(low_mask(m));
    }
    friend auto operator<=>(const Signature &, const Signature &) = default;
};

inline void check_signature(Signature sig) {
    if (sig.n < 0 || sig.n > kMaxPointBits || sig.m < 0 || sig.m > kMaxValueBits) {
        throw DimensionError("unsupported oracle signature n=" + std::to_string(sig.n) +
                             " m=" + std::to_string(sig.m));
    }
}

inline std::string signature_string(Signature sig) {
    return "(n=" + std::to_string(sig.n) + ", m=" + std::to_string(sig.m) + ")";
}

inline void require_same_signature(Signature a, Signature b, const char *op) {
    if (a != b) {
        throw DimensionError(std::string(op) + ": signature mismatch " + signature_string(a) +
                             " vs " + signature_string(b));
    }
}

/// A partial map {0,1}^n -> {0,1}^m, stored densely so iteration is in point order.
class PartialFunction {
  public:
    PartialFunction() = default;
    explicit PartialFunction(Signature sig) : sig_(sig) {
        check_signature(sig);
        entries_.resize(sig.points());
    }
    PartialFunction(int n, int m) : PartialFunction(Signature{n, m}) {
    }
    PartialFunction(Signature sig, std::initializer_list<std::pair<Point, Value>> pairs)
        : PartialFunction(sig) {
        for (auto [x, y] : pairs) {
            insert(x, y);
        }
    }

    Signature signature() const {
        return sig_;
    }
    int n() const {
        return sig_.n;
    }
    int m() const {
        return sig_.m;
    }

    bool defines(Point x) const {
        return x < entries_.size() && entries_[x].has_value();
    }
    std::optional<Value> at(Point x) const {
        check_point(x);
        return entries_[x];
    }
    Value operator()(Point x) const {
        check_point(x);
        if (!entries_[x]) {
            throw Error("partial function undefined at " + bit_string(x, sig_.n));
        }
        return *entries_[x];
    }

    /// Adds (x, y). Re-inserting the same pair is a no-op; a different y is a conflict.
    void insert(Point x, Value y) {
        check_point(x);
        if (y > sig_.value_mask()) {
            throw DimensionError("value " + std::to_string(y) + " does not fit in m=" +
                                 std::to_string(sig_.m) + " bits");
        }
        if (entries_[x] && *entries_[x] != y) {
            throw ConflictError(x, "conflicting values at " + bit_string(x, sig_.n));
        }
        entries_[x] = y;
    }
    void erase(Point x) {
        check_point(x);
        entries_[x].reset();
    }

    std::size_t size() const {
        std::size_t count = 0;
        for (const auto &e : entries_) {
            count += e.has_value();
        }
        return count;
    }
    bool empty() const {
        return size() == 0;
    }
    bool total() const {
        return size() == entries_.size();
    }

    /// Domain in increasing point order.
    std::vector<Point> domain() const {
        std::vector<Point> out;
        for (Point x = 0; x < entries_.size(); ++x) {
            if (entries_[x]) {
                out.push_back(x);
            }
        }
        return out;
    }
    std::vector<std::pair<Point, Value>> pairs() const {
        std::vector<std::pair<Point, Value>> out;
        for (Point x = 0; x < entries_.size(); ++x) {
            if (entries_[x]) {
                out.emplace_back(x, *entries_[x]);
            }
        }
        return out;
    }

    /// True when every point of this domain is in `other`'s domain with the same value.
    bool subset_of(const PartialFunction &other) const {
        require_same_signature(sig_, other.sig_, "subset_of");
        for (Point x = 0; x < entries_.size(); ++x) {
            if (entries_[x] && other.entries_[x] != entries_[x]) {
                return false;
            }
        }
        return true;
    }

    /// "{x->y, ...}" with bit-string keys.
    std::string str() const {
        std::string out = "{";
        bool first = true;
        for (auto [x, y] : pairs()) {
            if (!first) {
                out += ", ";
            }
            first = false;
            out += bit_string(x, sig_.n) + "->" + bit_string(y, sig_.m);
        }
        return out + "}";
    }

    friend bool operator==(const PartialFunction &, const PartialFunction &) = default;
    friend auto operator<=>(const PartialFunction &a, const PartialFunction &b) {
        if (auto c = a.sig_ <=> b.sig_; c != 0) {
            return c;
        }
        return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                      b.entries_.begin(), b.entries_.end());
    }

  private:
    void check_point(Point x) const {
        if (x >= entries_.size()) {
            throw DimensionError("point " + std::to_string(x) + " outside {0,1}^" +
                                 std::to_string(sig_.n));
        }
    }

    Signature sig_{};
    std::vector<std::optional<Value>> entries_;
};

/// A total function {0,1}^n -> {0,1}^m given by its truth table.
class Oracle {
  public:
    Oracle() = default;
    Oracle(Signature sig, std::vector<Value> table) : sig_(sig), table_(std::move(table)) {
        check_signature(sig);
        if (table_.size() != sig.points()) {
            throw DimensionError("oracle table has " + std::to_string(table_.size()) +
                                 " entries, expected " + std::to_string(sig.points()));
        }
        for (Value y : table_) {
            if (y > sig.value_mask()) {
                throw DimensionError("oracle value does not fit in m=" + std::to_string(sig.m) +
                                     " bits");
            }
        }
    }
    Oracle(int n, int m, std::vector<Value> table) : Oracle(Signature{n, m}, std::move(table)) {
    }

    static Oracle constant(Signature sig, Value y = 0) {
        check_signature(sig);
        return Oracle(sig, std::vector<Value>(sig.points(), y));
    }
    /// x -> x on {0,1}^n.
    static Oracle identity(int n) {
        Signature sig{n, n};
        check_signature(sig);
        std::vector<Value> table(sig.points());
        for (Point x = 0; x < table.size(); ++x) {
            table[x] = x;
        }
        return Oracle(sig, std::move(table));
    }

    Signature signature() const {
        return sig_;
    }
    int n() const {
        return sig_.n;
    }
    int m() const {
        return sig_.m;
    }
    Value operator()(Point x) const {
        if (x >= table_.size()) {
            throw DimensionError("point " + std::to_string(x) + " outside oracle domain");
        }
        return table_[x];
    }
    std::span<const Value> table() const {
        return table_;
    }

    PartialFunction as_partial() const {
        PartialFunction f(sig_);
        for (Point x = 0; x < table_.size(); ++x) {
            f.insert(x, table_[x]);
        }
        return f;
    }
    /// H in Func_{n,m}(h).
    bool consistent_with(const PartialFunction &h) const {
        require_same_signature(sig_, h.signature(), "consistent_with");
        for (auto [x, y] : h.pairs()) {
            if (table_[x] != y) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        std::string out;
        for (Point x = 0; x < table_.size(); ++x) {
            if (x) {
                out += ',';
            }
            out += bit_string(table_[x], sig_.m);
        }
        return out;
    }

    friend bool operator==(const Oracle &, const Oracle &) = default;
    friend auto operator<=>(const Oracle &a, const Oracle &b) {
        if (auto c = a.sig_ <=> b.sig_; c != 0) {
            return c;
        }
        return std::lexicographical_compare_three_way(a.table_.begin(), a.table_.end(),
                                                      b.table_.begin(), b.table_.end());
    }

  private:
    Signature sig_{};
    std::vector<Value> table_;
};

/// H^(f): f on its domain, H elsewhere.
inline Oracle patch(const Oracle &H, const PartialFunction &f) {
    require_same_signature(H.signature(), f.signature(), "patch");
    std::vector<Value> table(H.table().begin(), H.table().end());
    for (auto [x, y] : f.pairs()) {
        table[x] = y;
    }
    return Oracle(H.signature(), std::move(table));
}

/// f ∪ g. Throws ConflictError naming the first point where both are defined and differ.
inline PartialFunction combine(const PartialFunction &f, const PartialFunction &g) {
    require_same_signature(f.signature(), g.signature(), "combine");
    PartialFunction out = f;
    for (auto [x, y] : g.pairs()) {
        if (auto prev = f.at(x); prev && *prev != y) {
            throw ConflictError(x, "combine: f and g disagree at " + bit_string(x, f.n()));
        }
        out.insert(x, y);
    }
    return out;
}

/// H \ f: H restricted to the complement of D_f. Requires H in Func_{n,m}(f).
inline PartialFunction subtract(const Oracle &H, const PartialFunction &f) {
    require_same_signature(H.signature(), f.signature(), "subtract");
    PartialFunction out(H.signature());
    for (Point x = 0; x < H.signature().points(); ++x) {
        if (auto y = f.at(x)) {
            if (*y != H(x)) {
                throw ConflictError(x, "subtract: oracle disagrees with f at " +
                                           bit_string(x, f.n()));
            }
        } else {
            out.insert(x, H(x));
        }
    }
    return out;
}

/// tau \ h for partial tau: tau restricted to the complement of D_h. The two must agree on
/// their common domain.
inline PartialFunction subtract(const PartialFunction &tau, const PartialFunction &h) {
    require_same_signature(tau.signature(), h.signature(), "subtract");
    PartialFunction out(tau.signature());
    for (auto [x, y] : tau.pairs()) {
        if (auto hy = h.at(x)) {
            if (*hy != y) {
                throw ConflictError(x, "subtract: partial functions disagree at " +
                                           bit_string(x, h.n()));
            }
        } else {
            out.insert(x, y);
        }
    }
    return out;
}

/// fill^(f): f on D_f, `fill` elsewhere.
inline Oracle default_extend(const PartialFunction &f, const Oracle &fill) {
    return patch(fill, f);
}

/// 1^(f): f on D_f and the identity elsewhere. Only defined for m = n.
inline Oracle identity_extend(const PartialFunction &f) {
    if (f.m() != f.n()) {
        throw DimensionError("identity_extend needs m = n, got " + signature_string(f.signature()));
    }
    return patch(Oracle::identity(f.n()), f);
}

/// |Func_{n,m}(h)|, or nullopt when it does not fit in 63 bits.
inline std::optional<std::uint64_t> consistent_count(const PartialFunction &h) {
    std::uint64_t free = h.signature().points() - h.size();
    std::uint64_t bits = free * static_cast<std::uint64_t>(h.m());
    if (bits > 62) {
        return std::nullopt;
    }
    return std::uint64_t{1} << bits;
}

inline std::uint64_t checked_consistent_count(const PartialFunction &h, std::uint64_t budget) {
    auto count = consistent_count(h);
    if (!count || *count > budget) {
        throw BudgetExceeded("Func" + signature_string(h.signature()) + " consistent with " +
                             std::to_string(h.size()) + " fixed points exceeds budget " +
                             std::to_string(budget));
    }
    return *count;
}

/// Visits every oracle in Func_{n,m}(h) in lexicographic order of the values at the
/// undefined points (smallest undefined point is the most significant digit).
template <class Fn>
void for_each_consistent(const PartialFunction &h, Fn &&fn, std::uint64_t budget = kDefaultBudget) {
    const std::uint64_t count = checked_consistent_count(h, budget);
    const Signature sig = h.signature();
    std::vector<Point> free;
    std::vector<Value> table(sig.points(), 0);
    for (Point x = 0; x < sig.points(); ++x) {
        if (auto y = h.at(x)) {
            table[x] = *y;
        } else {
            free.push_back(x);
        }
    }
    const std::uint64_t mask = low_mask(sig.m);
    for (std::uint64_t index = 0; index < count; ++index) {
        for (std::size_t j = 0; j < free.size(); ++j) {
            auto shift = static_cast<std::uint64_t>(sig.m) * (free.size() - 1 - j);
            table[free[j]] = static_cast<Value>((index >> shift) & mask);
        }
        fn(Oracle(sig, table));
    }
}

inline std::vector<Oracle> enumerate_consistent(const PartialFunction &h,
                                                std::uint64_t budget = kDefaultBudget) {
    std::vector<Oracle> out;
    out.reserve(checked_consistent_count(h, budget));
    for_each_consistent(h, [&](Oracle H) { out.push_back(std::move(H)); }, budget);
    return out;
}

/// All of Func_{n,m}.
inline std::vector<Oracle> enumerate_all(Signature sig, std::uint64_t budget = kDefaultBudget) {
    return enumerate_consistent(PartialFunction(sig), budget);
}

/// Uniform draw from Func_{n,m}(h). Each undefined point, in increasing order, takes the low
/// m bits of one 64-bit draw.
inline Oracle sample_consistent(const PartialFunction &h, std::mt19937_64 &rng) {
    const Signature sig = h.signature();
    std::vector<Value> table(sig.points());
    const std::uint64_t mask = low_mask(sig.m);
    for (Point x = 0; x < sig.points(); ++x) {
        if (auto y = h.at(x)) {
            table[x] = *y;
        } else {
            table[x] = static_cast<Value>(rng() & mask);
        }
    }
    return Oracle(sig, std::move(table));
}

}  // namespace romlift
