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

// Near-deterministic query circuits: canonical outputs, equivalence of two oracle
// executions, critical sets, and the classical simulation that learns enough oracle
// values to reproduce the canonical output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "romlift/circuit.hpp"
#include "romlift/experiments.hpp"
#include "romlift/prg.hpp"

namespace romlift {

/// Tolerance when comparing output probabilities and query magnitudes.
inline constexpr double kProbabilitySlack = 1e-12;

struct CanonicalOutput {
    Bits y;
    double p = 0;
};

/// Most likely outcome, smallest string among ties.
inline CanonicalOutput canonical_of(const Distribution<Bits> &dist) {
    double best = 0;
    for (const auto &[y, p] : dist.support()) {
        best = std::max(best, p);
    }
    for (const auto &[y, p] : dist.support()) {
        if (p >= best - kProbabilitySlack) {
            return {y, p};
        }
    }
    throw UndefinedDistribution("empty output distribution");
}

inline CanonicalOutput canonical_output(const QueryCircuit &A, const Oracle &H) {
    return canonical_of(output_distribution(A, H));
}

struct DeterminismCheck {
    bool pass = true;
    double worst_p = 1;
    std::optional<Oracle> counterexample;
    std::optional<Distribution<Bits>> distribution;
};

/// Canonical probability >= 1 - delta on every oracle of `family`.
inline DeterminismCheck is_delta_deterministic(const QueryCircuit &A, double delta, const std::vector<Oracle> &family) {
    DeterminismCheck out;
    for (const auto &H : family) {
        auto dist = output_distribution(A, H);
        const auto c = canonical_of(dist);
        out.worst_p = std::min(out.worst_p, c.p);
        if (c.p < 1 - delta - 1e-9 && out.pass) {
            out.pass = false;
            out.counterexample = H;
            out.distribution = std::move(dist);
        }
    }
    return out;
}

inline CanonicalOutput checked_canonical(const QueryCircuit &A, const Oracle &H, double delta) {
    const auto c = canonical_output(A, H);
    if (c.p < 1 - delta - 1e-9) {
        throw DeterminismViolation("canonical output " + c.y.str() + " has probability " + std::to_string(c.p) +
                                   " < 1 - delta on oracle " + H.str());
    }
    return c;
}

/// A^{|F>} and A^{|H>} have the same canonical output. Both runs must be delta-deterministic.
inline bool qeq(const QueryCircuit &A, const Oracle &F, const Oracle &H, double delta) {
    return checked_canonical(A, F, delta).y == checked_canonical(A, H, delta).y;
}

/// Constants of the simulation: iteration bound k, magnitude threshold and query cap.
struct SimBudget {
    std::string rule;
    int Q = 0;
    double delta = 0;
    std::uint64_t k = 0;
    double threshold = 0;
    double query_cap = 0;
    double set_bound = 0;  // bound on the critical-set size

    /// k = ceil(Q^4/(1-2d)^4), threshold (1-2d)^4/Q^3, cap 2 Q^12/(1-2d)^12.
    static SimBudget standard(int Q, double delta) {
        SimBudget b = base("standard", Q, delta);
        if (Q == 0) {
            return b;
        }
        const double gap4 = std::pow(1 - 2 * delta, 4);
        const double q4 = std::pow(static_cast<double>(Q), 4);
        b.set_bound = q4 / gap4;
        b.k = ceil_count(b.set_bound);
        b.threshold = gap4 / std::pow(static_cast<double>(Q), 3);
        b.query_cap = 2 * std::pow(b.set_bound, 3);
        return b;
    }

    /// The same construction with the factor 2 the swapping bound needs for XOR oracles:
    /// threshold (1-2d)^4/(16 Q^3), k = ceil(16 Q^4/(1-2d)^4), cap 2 k^3.
    static SimBudget swapping_corrected(int Q, double delta) {
        SimBudget b = base("corrected", Q, delta);
        if (Q == 0) {
            return b;
        }
        const double gap4 = std::pow(1 - 2 * delta, 4);
        b.set_bound = 16 * std::pow(static_cast<double>(Q), 4) / gap4;
        b.k = ceil_count(b.set_bound);
        b.threshold = gap4 / (16 * std::pow(static_cast<double>(Q), 3));
        const double kd = static_cast<double>(b.k);
        b.query_cap = 2 * kd * kd * kd;
        return b;
    }

  private:
    static SimBudget base(const char *rule, int Q, double delta) {
        if (!(delta >= 0 && delta < 0.5)) {
            throw Error("simulation needs 0 <= delta < 1/2");
        }
        if (Q < 0) {
            throw Error("query count must be nonnegative");
        }
        SimBudget b;
        b.rule = rule;
        b.Q = Q;
        b.delta = delta;
        b.threshold = std::numeric_limits<double>::infinity();
        return b;
    }
    static std::uint64_t ceil_count(double v) {
        const double c = std::ceil(v - 1e-9);
        if (!(c < 1.8e19)) {
            throw BudgetExceeded("simulation iteration bound overflows");
        }
        return static_cast<std::uint64_t>(c);
    }
};

/// f on its domain and x -> x (low m bits) elsewhere; the identity extension when m = n.
inline Oracle simulation_extension(const PartialFunction &f) {
    const Signature sig = f.signature();
    std::vector<Value> table(sig.points());
    for (Point x = 0; x < table.size(); ++x) {
        table[x] = static_cast<Value>(x & sig.value_mask());
    }
    return patch(Oracle(sig, std::move(table)), f);
}

/// Queries F at every point outside D_f whose query magnitude under the extension of f
/// reaches the threshold, ascending.
inline PartialFunction update(const QueryCircuit &A, const PartialFunction &f, ClassicalAccess &F,
                              const SimBudget &budget) {
    require_same_signature(f.signature(), F.signature(), "update");
    const auto run = run_circuit(A, simulation_extension(f));
    PartialFunction out = f;
    for (Point x = 0; x < run.ledger.per_point.size(); ++x) {
        if (!f.defines(x) && run.ledger.per_point[x] >= budget.threshold - kProbabilitySlack) {
            out.insert(x, F.query(x));
        }
    }
    return out;
}

struct GetPointResult {
    PartialFunction f;
    std::uint64_t c = 0;
    Bits y_old;
    Bits y_final;
    bool exceeded_k = false;  // c = k + 1
};

/// Repeats update while c <= k and the canonical output on the extension still equals the
/// one for f0.
inline GetPointResult get_point(const QueryCircuit &A, const PartialFunction &f0, ClassicalAccess &F,
                                const SimBudget &budget) {
    GetPointResult out;
    out.f = f0;
    out.y_old = canonical_output(A, simulation_extension(f0)).y;
    out.y_final = out.y_old;
    while (out.c <= budget.k) {
        out.y_final = canonical_output(A, simulation_extension(out.f)).y;
        if (out.y_final != out.y_old) {
            break;
        }
        ++out.c;
        auto next = update(A, out.f, F, budget);
        if (next == out.f) {
            // Nothing new: every remaining iteration repeats this one.
            out.c = budget.k + 1;
            break;
        }
        out.f = std::move(next);
    }
    out.exceeded_k = out.c > budget.k;
    return out;
}

struct SimStep {
    std::uint64_t iteration = 0;
    int call = 0;  // 1 or 2 within the iteration
    std::size_t domain_before = 0;
    std::size_t domain_after = 0;
    std::uint64_t c = 0;
    Bits y_old;
    Bits y_final;
    PartialFunction f;
};

struct SimResult {
    Oracle H;
    PartialFunction f;
    std::uint64_t queries = 0;
    std::vector<SimStep> trace;
    std::string exit;  // "first", "second" or "loop"
    bool exceeded_k = false;
};

/// Learns oracle values through classical queries until the extension reproduces the
/// canonical output of A^{|F>}. Returns early once a get_point counter reaches k.
inline SimResult sim_oracle(const QueryCircuit &A, ClassicalAccess &F, const SimBudget &budget) {
    SimResult out;
    PartialFunction f(F.signature());
    const std::size_t before = F.queries();
    auto record = [&](std::uint64_t i, int call, const PartialFunction &from, const GetPointResult &r) {
        out.trace.push_back({i, call, from.size(), r.f.size(), r.c, r.y_old, r.y_final, r.f});
        out.exceeded_k = out.exceeded_k || r.exceeded_k;
    };
    auto finish = [&](PartialFunction fin, const char *exit) {
        out.H = simulation_extension(fin);
        out.f = std::move(fin);
        out.queries = F.queries() - before;
        out.exit = exit;
        return out;
    };
    for (std::uint64_t i = 1; i <= budget.k; ++i) {
        auto first = get_point(A, f, F, budget);
        record(i, 1, f, first);
        if (first.c >= budget.k) {
            return finish(first.f, "first");
        }
        auto second = get_point(A, first.f, F, budget);
        record(i, 2, first.f, second);
        if (second.c >= budget.k) {
            return finish(second.f, "second");
        }
        f = second.f;
    }
    return finish(f, "loop");
}

inline SimResult sim_oracle(const QueryCircuit &A, const Oracle &F, const SimBudget &budget) {
    ClassicalAccess access(F);
    return sim_oracle(A, access, budget);
}

struct CriticalSet {
    std::vector<Point> points;
    std::vector<double> magnitudes;  // q^F at each point
    std::vector<PartialFunction> witnesses;  // the minimal R found at each step
    std::uint64_t qeq_calls = 0;
};

/// Greedy construction: while some smallest-domain R inside the remaining points changes the
/// canonical output, move the point of R with the largest q^F into S.
inline CriticalSet critical_set_bruteforce(const QueryCircuit &A, const Oracle &F, double delta,
                                           std::uint64_t budget = kDefaultBudget) {
    const Signature sig = F.signature();
    const auto ledger = run_circuit(A, F).ledger;
    const Bits base = checked_canonical(A, F, delta).y;
    CriticalSet out;
    std::vector<Point> K;
    for (Point x = 0; x < sig.points(); ++x) {
        K.push_back(x);
    }
    const Value alternatives = sig.value_mask();  // values other than F(x)
    auto charge = [&]() {
        if (++out.qeq_calls > budget) {
            throw BudgetExceeded("critical-set search exceeds budget " + std::to_string(budget));
        }
    };
    // Finds the first R (by size, then subset order, then values) with a different output.
    auto find_witness = [&]() -> std::optional<PartialFunction> {
        const std::size_t kn = K.size();
        for (std::size_t size = 1; size <= kn; ++size) {
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) {
                idx[i] = i;
            }
            while (true) {
                std::vector<Value> shift(size, 1);
                while (true) {
                    PartialFunction R(sig);
                    for (std::size_t i = 0; i < size; ++i) {
                        const Point x = K[idx[i]];
                        R.insert(x, F(x) ^ shift[i]);
                    }
                    charge();
                    if (checked_canonical(A, patch(F, R), delta).y != base) {
                        return R;
                    }
                    std::size_t d = size;
                    while (d > 0 && shift[d - 1] == alternatives) {
                        shift[d - 1] = 1;
                        --d;
                    }
                    if (d == 0) {
                        break;
                    }
                    ++shift[d - 1];
                }
                std::size_t j = size;
                while (j > 0 && idx[j - 1] == kn - size + (j - 1)) {
                    --j;
                }
                if (j == 0) {
                    break;
                }
                ++idx[j - 1];
                for (std::size_t t = j; t < size; ++t) {
                    idx[t] = idx[t - 1] + 1;
                }
            }
        }
        return std::nullopt;
    };
    if (alternatives == 0) {
        return out;  // m = 0: every oracle is the same
    }
    while (auto R = find_witness()) {
        Point best = 0;
        double best_q = -1;
        for (Point x : R->domain()) {
            if (ledger.per_point[x] > best_q) {
                best_q = ledger.per_point[x];
                best = x;
            }
        }
        out.points.push_back(best);
        out.magnitudes.push_back(best_q);
        out.witnesses.push_back(*R);
        K.erase(std::find(K.begin(), K.end(), best));
    }
    return out;
}

struct CriticalSetCheck {
    double size_bound = 0;
    double threshold = 0;
    bool size_ok = true;
    bool stable = true;
    bool magnitude_ok = true;
    double min_magnitude = std::numeric_limits<double>::infinity();
    std::optional<Oracle> unstable_witness;

    bool pass() const {
        return size_ok && stable && magnitude_ok;
    }
};

/// The three properties of a critical set S for (A, F, delta): size, stability of the
/// canonical output under every H agreeing with F on S, and the magnitude floor.
inline CriticalSetCheck check_critical_set(const QueryCircuit &A, const Oracle &F, double delta,
                                           const CriticalSet &S, const SimBudget &b,
                                           std::uint64_t budget = kDefaultBudget) {
    CriticalSetCheck out;
    out.size_bound = b.Q == 0 ? 0 : b.set_bound;
    out.threshold = b.threshold;
    out.size_ok = static_cast<double>(S.points.size()) <= out.size_bound + 1e-9;
    for (double q : S.magnitudes) {
        out.min_magnitude = std::min(out.min_magnitude, q);
        if (q < b.threshold - kProbabilitySlack) {
            out.magnitude_ok = false;
        }
    }
    PartialFunction restriction(F.signature());
    for (Point x : S.points) {
        restriction.insert(x, F(x));
    }
    for_each_consistent(
        restriction,
        [&](const Oracle &H) {
            if (out.stable && !qeq(A, F, H, delta)) {
                out.stable = false;
                out.unstable_witness = H;
            }
        },
        budget);
    return out;
}

/// A quantum PRG: a query circuit with k seed wires and ell output wires.
class QuantumPrg {
  public:
    QuantumPrg(std::string name, QueryCircuit circuit) : name_(std::move(name)), circuit_(std::move(circuit)) {
        const int k = circuit_.input_width();
        const int ell = circuit_.output_width();
        if (k > 20 || ell <= k || ell > 62) {
            throw DimensionError("quantum PRG " + name_ + " needs k < ell <= 62 (k <= 20)");
        }
    }
    const std::string &name() const {
        return name_;
    }
    const QueryCircuit &circuit() const {
        return circuit_;
    }
    int k() const {
        return circuit_.input_width();
    }
    int ell() const {
        return circuit_.output_width();
    }
    int queries() const {
        return circuit_.query_count();
    }
    Signature signature() const {
        return circuit_.layout().signature();
    }
    /// The circuit with seed s on its input wires.
    const QueryCircuit &seeded(std::uint64_t s) const {
        auto it = seeded_.find(s);
        if (it == seeded_.end()) {
            it = seeded_.emplace(s, circuit_.with_input(Bits{s, k()})).first;
        }
        return it->second;
    }
    Distribution<Bits> outputs(std::uint64_t s, const Oracle &H) const {
        return output_distribution(seeded(s), H);
    }

  private:
    std::string name_;
    QueryCircuit circuit_;
    mutable std::map<std::uint64_t, QueryCircuit> seeded_;
};

/// Worst canonical probability of Gq over all seeds and all oracles of its signature.
inline DeterminismCheck quantum_prg_determinism(const QuantumPrg &Gq, double delta,
                                                std::uint64_t budget = kDefaultBudget) {
    DeterminismCheck out;
    const auto family = enumerate_all(Gq.signature(), budget);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << Gq.k()); ++s) {
        auto c = is_delta_deterministic(Gq.seeded(s), delta, family);
        out.worst_p = std::min(out.worst_p, c.worst_p);
        if (!c.pass && out.pass) {
            out = c;
        }
    }
    return out;
}

/// Exact |Pr[PRG = 1] - Pr[Rand = 1]| against a quantum PRG, averaging over its
/// measurement outcomes.
inline Advantage quantum_prg_advantage(const Distinguisher &A, const QuantumPrg &Gq,
                                       std::uint64_t budget = kDefaultBudget) {
    require_same_signature(A.signature(), Gq.signature(), "distinguisher/quantum PRG");
    if (A.input_width() != Gq.ell()) {
        throw DimensionError("distinguisher input width does not match the quantum PRG output");
    }
    const PartialFunction empty(Gq.signature());
    const std::uint64_t oracles = checked_consistent_count(empty, budget);
    const std::uint64_t seeds = std::uint64_t{1} << Gq.k();
    const std::uint64_t strings = std::uint64_t{1} << Gq.ell();
    if (oracles > budget / std::max(seeds, strings)) {
        throw BudgetExceeded("quantum PRG advantage exceeds budget " + std::to_string(budget));
    }
    double prg = 0, rand = 0;
    for_each_consistent(
        empty,
        [&](const Oracle &H) {
            for (std::uint64_t s = 0; s < seeds; ++s) {
                const auto dist = Gq.outputs(s, H);
                for (const auto &[g, p] : dist.support()) {
                    prg += p * A.accept(g, H);
                }
            }
            for (std::uint64_t v = 0; v < strings; ++v) {
                rand += A.accept(Bits{v, Gq.ell()}, H);
            }
        },
        budget);
    Advantage out;
    out.pr_prg = prg / static_cast<double>(oracles * seeds);
    out.pr_rand = rand / static_cast<double>(oracles * strings);
    out.advantage = std::abs(out.pr_prg - out.pr_rand);
    return out;
}

/// Number of classical queries of the derandomized PRG: the simulation cap, but never
/// more than the domain size.
inline int derandomized_query_count(const QuantumPrg &Gq, const SimBudget &b) {
    const double domain = static_cast<double>(Gq.signature().points());
    return static_cast<int>(std::min(std::floor(b.query_cap), domain));
}

/// Classical PRG that simulates Gq(s) with sim_oracle and outputs its canonical output on
/// the simulated oracle. Unused query slots go to the smallest unqueried points.
inline ClassicalPrg derandomize_prg(const QuantumPrg &Gq, double delta, const SimBudget &b) {
    if (b.Q != Gq.queries()) {
        throw Error("simulation budget was computed for a different query count");
    }
    PrgShape shape{Gq.k(), Gq.ell(), Gq.signature(), derandomized_query_count(Gq, b)};
    auto prg = std::make_shared<QuantumPrg>(Gq);
    auto procedure = [prg, delta, b, target = shape.queries](std::uint64_t s, ClassicalAccess &access) {
        const auto &circ = prg->seeded(s);
        const auto sim = sim_oracle(circ, access, b);
        const auto out = checked_canonical(circ, sim.H, delta);
        for (Point x = 0; access.queries() < static_cast<std::size_t>(target) && x < access.signature().points(); ++x) {
            if (!access.transcript().contains(x)) {
                access.query(x);
            }
        }
        return out.y.value;
    };
    return ClassicalPrg(Gq.name() + "-derandomized", shape, procedure);
}

}  // namespace romlift
