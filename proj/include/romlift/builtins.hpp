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

// Named PRGs, distinguishers, near-deterministic algorithms and reprogramming
// fixtures small enough for exact enumeration.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "romlift/circuit.hpp"
#include "romlift/experiments.hpp"
#include "romlift/gates.hpp"
#include "romlift/prg.hpp"
#include "romlift/pseudodet.hpp"
#include "romlift/reprogram.hpp"

namespace romlift::builtins {

// ---------------------------------------------------------------------------
// Classical PRGs

/// k=1, ell=2, n=m=1: g = H(s) || H(not s).
inline ClassicalPrg prg_id() {
    return ClassicalPrg("id", {1, 2, {1, 1}, 2}, [](std::uint64_t s, ClassicalAccess &H) {
        const auto s0 = static_cast<Point>(s);
        const std::uint64_t b0 = H.query(s0);
        const std::uint64_t b1 = H.query(s0 ^ 1u);
        return (b0 << 1) | b1;
    });
}

/// k=2, ell=3, n=2, m=1. Queries s, then s with one bit flipped (the high bit if the first
/// answer is 1, else the low bit). g = s_hi || b1 || b2.
inline ClassicalPrg prg_adaptive2() {
    return ClassicalPrg("adaptive2", {2, 3, {2, 1}, 2}, [](std::uint64_t s, ClassicalAccess &H) {
        const auto x1 = static_cast<Point>(s);
        const std::uint64_t b1 = H.query(x1);
        const Point x2 = x1 ^ (b1 ? 0b10u : 0b01u);
        const std::uint64_t b2 = H.query(x2);
        return ((s >> 1) << 2) | (b1 << 1) | b2;
    });
}

/// k=1, ell=2, n=m=1: queries s and always outputs 00.
inline ClassicalPrg prg_const() {
    return ClassicalPrg("const", {1, 2, {1, 1}, 1}, [](std::uint64_t s, ClassicalAccess &H) {
        H.query(static_cast<Point>(s));
        return std::uint64_t{0};
    });
}

inline std::vector<std::string> prg_names() {
    return {"id", "adaptive2", "const"};
}

inline std::optional<ClassicalPrg> find_prg(const std::string &name) {
    if (name == "id") {
        return prg_id();
    }
    if (name == "adaptive2") {
        return prg_adaptive2();
    }
    if (name == "const") {
        return prg_const();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Circuit pieces

/// Phase-kickback query: answer wire prepared in |->, one oracle call, answer restored.
inline CircuitBuilder &phase_query(CircuitBuilder &b, int answer) {
    return b.x(answer).h(answer).oracle().h(answer).x(answer);
}

/// Deutsch's algorithm on a single query wire: afterwards it holds H(0) xor H(1).
inline CircuitBuilder &deutsch(CircuitBuilder &b, int query, int answer) {
    b.h(query);
    phase_query(b, answer);
    return b.h(query);
}

inline CircuitBuilder &swap(CircuitBuilder &b, int a, int c) {
    return b.unitary(gates::swap(), {a, c});
}

inline bool parity_of(std::size_t bits) {
    bool p = false;
    for (; bits; bits >>= 1) {
        p ^= (bits & 1u) != 0;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Distinguishers

/// Ignores input and oracle, outputs 0.
inline Distinguisher zero_distinguisher(Signature sig, int ell) {
    CircuitBuilder b(sig.n, sig.m, ell + 1);
    std::vector<int> in;
    for (int i = 0; i < ell; ++i) {
        in.push_back(sig.n + sig.m + i);
    }
    return Distinguisher("zero", b.inputs(in).outputs({sig.n + sig.m + ell}).build());
}

/// For the id PRG: accepts iff g0 xor g1 equals H(0) xor H(1), found with one query.
inline Distinguisher a_par() {
    CircuitBuilder b(1, 1, 3);
    deutsch(b, 0, 1);
    b.compute_into({0, 2, 3}, 4, [](std::size_t j) { return !parity_of(j); });
    return Distinguisher("a_par", b.inputs({2, 3}).outputs({4}).build());
}

/// For the adaptive2 PRG: when g1 = 0 the two queried points share the high bit g0, so
/// g2 = H(g0,0) xor H(g0,1). Accepts iff g1 = 0 and g2 matches that parity.
inline Distinguisher a_adaptive2() {
    CircuitBuilder b(2, 1, 4);
    b.cx(3, 0);
    deutsch(b, 1, 2);
    b.cx(3, 0);
    b.compute_into({4, 5, 1}, 6, [](std::size_t j) {
        const bool g1 = (j >> 2) & 1u, g2 = (j >> 1) & 1u, par = j & 1u;
        return !g1 && g2 == par;
    });
    return Distinguisher("a_adaptive2", b.inputs({3, 4, 5}).outputs({6}).build());
}

/// For the const PRG: accepts iff g = 00, no queries.
inline Distinguisher a_const() {
    CircuitBuilder b(1, 1, 3);
    b.compute_into({2, 3}, 4, [](std::size_t j) { return j == 0; });
    return Distinguisher("a_const", b.inputs({2, 3}).outputs({4}).build());
}

/// For the qprg_deutsch PRG: accepts iff g1 equals H(0) xor H(1).
inline Distinguisher a_qparity() {
    CircuitBuilder b(1, 1, 3);
    deutsch(b, 0, 1);
    b.compute_into({3, 0}, 4, [](std::size_t j) { return ((j >> 1) & 1u) == (j & 1u); });
    return Distinguisher("a_qparity", b.inputs({2, 3}).outputs({4}).build());
}

inline std::vector<std::string> distinguisher_names() {
    return {"zero", "a_par", "a_adaptive2", "a_const", "a_qparity"};
}

/// `zero` is sized from `sig` and `ell`; the others have fixed shapes.
inline std::optional<Distinguisher> find_distinguisher(const std::string &name, Signature sig, int ell) {
    if (name == "zero") {
        return zero_distinguisher(sig, ell);
    }
    if (name == "a_par") {
        return a_par();
    }
    if (name == "a_adaptive2") {
        return a_adaptive2();
    }
    if (name == "a_const") {
        return a_const();
    }
    if (name == "a_qparity") {
        return a_qparity();
    }
    return std::nullopt;
}

/// The distinguisher paired with each built-in PRG.
inline std::string default_distinguisher(const std::string &prg) {
    if (prg == "id") {
        return "a_par";
    }
    if (prg == "adaptive2") {
        return "a_adaptive2";
    }
    if (prg == "const") {
        return "a_const";
    }
    return "zero";
}

// ---------------------------------------------------------------------------
// Near-deterministic algorithms (no classical input, measured output)

/// Q=0, outputs a constant 0.
inline QueryCircuit alg_ignore() {
    return CircuitBuilder(1, 1, 1).outputs({2}).build();
}

/// Classical query at x=0, outputs H(0).
inline QueryCircuit alg_query0() {
    return CircuitBuilder(1, 1, 0).oracle().outputs({1}).build();
}

/// Outputs H(0) xor H(1) with one superposition query.
inline QueryCircuit alg_deutsch() {
    CircuitBuilder b(1, 1, 0);
    deutsch(b, 0, 1);
    return b.outputs({0}).build();
}

/// Rotation angle with sin^2(theta/2) = 0.05.
inline double leaky_theta() {
    return 2 * std::asin(std::sqrt(0.05));
}

/// Queries x=0 with amplitude cos(theta/2) and x=1 with sin(theta/2); outputs the answer.
/// Outputs H(0) with probability at least 0.95.
inline QueryCircuit alg_leaky(double theta = leaky_theta()) {
    return CircuitBuilder(1, 1, 0).ry(theta, 0).oracle().outputs({1}).build();
}

/// n=2, m=1: classical queries at 00 and 01, outputs H(00) xor H(01).
inline QueryCircuit alg_xor2() {
    CircuitBuilder b(2, 1, 2);
    b.oracle();
    swap(b, 2, 3);
    b.x(1).oracle().x(1);
    swap(b, 2, 4);
    b.cx(3, 4);
    return b.outputs({4}).build();
}

/// n=2, m=1: classical queries at 00 and 01, outputs H(00) and H(01).
inline QueryCircuit alg_and2() {
    CircuitBuilder b(2, 1, 3);
    b.oracle();
    swap(b, 2, 3);
    b.x(1).oracle().x(1);
    swap(b, 2, 4);
    b.ccx(3, 4, 5);
    return b.outputs({5}).build();
}

struct Algorithm {
    std::string name;
    QueryCircuit circuit;
    double delta = 0;  // a delta for which the algorithm is delta-deterministic
};

inline std::vector<Algorithm> algorithms() {
    return {{"ignore", alg_ignore(), 0},  {"query0", alg_query0(), 0}, {"deutsch", alg_deutsch(), 0},
            {"leaky", alg_leaky(), 0.1},  {"xor2", alg_xor2(), 0},     {"and2", alg_and2(), 0}};
}

inline std::optional<Algorithm> find_algorithm(const std::string &name) {
    for (auto &a : algorithms()) {
        if (a.name == name) {
            return a;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quantum PRGs

/// k=1, ell=2, n=m=1: outputs H(s) || H(not s) using two classical queries.
inline QuantumPrg qprg_id() {
    // wires: q 0, a 1, g0 2, g1 3, seed 4
    CircuitBuilder b(1, 1, 3);
    b.cx(4, 0).oracle();
    swap(b, 1, 2);
    b.x(0).oracle();
    swap(b, 1, 3);
    b.x(0).cx(4, 0);
    return QuantumPrg("qprg_id", b.inputs({4}).outputs({2, 3}).build());
}

/// k=1, ell=2, n=m=1: outputs H(s) || H(0) xor H(1).
inline QuantumPrg qprg_deutsch() {
    // wires: q 0, a 1, g0 2, g1 3, seed 4
    CircuitBuilder b(1, 1, 3);
    b.cx(4, 0).oracle();
    swap(b, 1, 2);
    b.cx(4, 0);
    deutsch(b, 0, 1);
    b.cx(0, 3);
    return QuantumPrg("qprg_deutsch", b.inputs({4}).outputs({2, 3}).build());
}

struct QuantumPrgFixture {
    QuantumPrg prg;
    Distinguisher distinguisher;
    double delta = 0;
};

inline std::vector<QuantumPrgFixture> quantum_prg_fixtures() {
    return {{qprg_deutsch(), a_qparity(), 0}, {qprg_id(), a_par(), 0}};
}

inline std::optional<QuantumPrg> find_quantum_prg(const std::string &name) {
    if (name == "qprg_id") {
        return qprg_id();
    }
    if (name == "qprg_deutsch") {
        return qprg_deutsch();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random circuits

/// Haar-random unitaries on all wires between Q oracle calls. Output: wire 0.
inline QueryCircuit random_query_circuit(int n, int m, int w, int Q, std::mt19937_64 &rng) {
    CircuitBuilder b(n, m, w);
    std::vector<int> all;
    for (int i = 0; i < n + m + w; ++i) {
        all.push_back(i);
    }
    const std::size_t dim = std::size_t{1} << all.size();
    b.unitary(gates::random_unitary(dim, rng), all);
    for (int q = 0; q < Q; ++q) {
        b.oracle();
        b.unitary(gates::random_unitary(dim, rng), all);
    }
    return b.outputs({0}).build();
}

/// Uniformly random oracle of the given signature.
inline Oracle random_oracle(Signature sig, std::mt19937_64 &rng) {
    return sample_consistent(PartialFunction(sig), rng);
}

// ---------------------------------------------------------------------------
// Reprogramming fixtures

struct ReprogramFixture {
    std::string name;
    QueryCircuit D;
    Oracle F0;
    Sampler sampler;
    std::optional<Decision> decide;
};

/// One-query Grover search on n=2: finds the single marked point with certainty.
inline QueryCircuit grover2() {
    CircuitBuilder b(2, 1, 0);
    b.h(0).h(1);
    phase_query(b, 2);
    b.h(0).h(1).x(0).x(1).h(1).cx(0, 1).h(1).x(0).x(1).h(0).h(1);
    return b.outputs({0, 1}).build();
}

inline std::vector<ReprogramFixture> reprogram_fixtures(std::uint64_t seed = 7, int random_count = 40) {
    std::vector<ReprogramFixture> out;
    const Signature s11{1, 1}, s21{2, 1};

    out.push_back({"empty-sampler", alg_query0(), Oracle::constant(s11, 0),
                   Sampler::enumerated("empty", s11, {{PartialFunction(s11), 1.0}}),
                   Decision([](std::size_t, Bits y) { return static_cast<int>(y.value); })});

    out.push_back({"point-flip", alg_query0(), Oracle::constant(s11, 0),
                   Sampler::enumerated("x0", s11, {{PartialFunction(s11, {{0, 1}}), 1.0}}),
                   Decision([](std::size_t, Bits y) { return static_cast<int>(y.value); })});

    {
        std::vector<std::pair<PartialFunction, double>> marks;
        for (Point x = 0; x < 4; ++x) {
            marks.emplace_back(PartialFunction(s21, {{x, 1}}), 1.0);
        }
        out.push_back({"grover-uniform-mark", grover2(), Oracle::constant(s21, 0),
                       Sampler::enumerated("uniform-point", s21, marks),
                       Decision([](std::size_t r, Bits y) { return static_cast<int>(y.value == r); })});
    }

    out.push_back({"deutsch-half", alg_deutsch(), Oracle::constant(s11, 0),
                   Sampler::enumerated("half-point", s11,
                                       {{PartialFunction(s11, {{0, 1}}), 1.0}, {PartialFunction(s11, {{1, 1}}), 1.0}}),
                   Decision([](std::size_t, Bits y) { return static_cast<int>(y.value); })});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < random_count; ++i) {
        const int Q = 1 + static_cast<int>(rng() % 2);
        auto D = random_query_circuit(2, 1, 1, Q, rng);
        auto F0 = random_oracle(s21, rng);
        std::vector<std::pair<PartialFunction, double>> outcomes;
        const int count = 2 + static_cast<int>(rng() % 3);
        for (int r = 0; r < count; ++r) {
            PartialFunction R(s21);
            for (Point x = 0; x < 4; ++x) {
                if (unit(rng) < 0.3) {
                    R.insert(x, static_cast<Value>(rng() & 1u));
                }
            }
            outcomes.emplace_back(std::move(R), 0.1 + unit(rng));
        }
        out.push_back({"random-" + std::to_string(i), std::move(D), std::move(F0),
                       Sampler::enumerated("random", s21, std::move(outcomes)), std::nullopt});
    }
    return out;
}

}  // namespace romlift::builtins
