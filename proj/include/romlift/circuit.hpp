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

// Query circuits: dense unitary layers interleaved with calls to the standard
// XOR oracle |x>|y> -> |x>|y xor H(x)>, run from |0...0>.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "romlift/bits.hpp"
#include "romlift/distribution.hpp"
#include "romlift/gates.hpp"
#include "romlift/oracle.hpp"
#include "romlift/statevector.hpp"

namespace romlift {

struct UnitaryLayer {
    std::vector<int> wires;
    Matrix matrix;
};

struct OracleCall {};

using Layer = std::variant<UnitaryLayer, OracleCall>;

/// A Q-query oracle algorithm. Classical inputs are written onto `input_wires` by a
/// leading layer of bit flips (see with_input); the measured output is read from
/// `output_wires`, first wire first.
class QueryCircuit {
  public:
    QueryCircuit() = default;
    QueryCircuit(RegisterLayout layout, std::vector<Layer> layers, std::vector<int> output_wires,
                 std::vector<int> input_wires = {})
        : layout_(layout),
          layers_(std::move(layers)),
          output_wires_(std::move(output_wires)),
          input_wires_(std::move(input_wires)) {
        check_layout(layout_);
        for (const auto &layer : layers_) {
            if (const auto *u = std::get_if<UnitaryLayer>(&layer)) {
                detail::check_wires(layout_, u->wires);
                if (u->matrix.dim() != (std::size_t{1} << u->wires.size())) {
                    throw DimensionError("layer matrix dimension " + std::to_string(u->matrix.dim()) +
                                         " does not match " + std::to_string(u->wires.size()) +
                                         " wires");
                }
                if (u->matrix.unitarity_defect() > kUnitarityTolerance) {
                    throw UnitarityError("layer matrix is not unitary within 1e-9");
                }
            } else {
                ++query_count_;
            }
        }
        detail::check_wires(layout_, output_wires_);
        detail::check_wires(layout_, input_wires_);
        if (output_wires_.size() > 62 || input_wires_.size() > 62) {
            throw DimensionError("too many input/output wires");
        }
    }

    const RegisterLayout &layout() const {
        return layout_;
    }
    const std::vector<Layer> &layers() const {
        return layers_;
    }
    const std::vector<int> &output_wires() const {
        return output_wires_;
    }
    const std::vector<int> &input_wires() const {
        return input_wires_;
    }
    int query_count() const {
        return query_count_;
    }
    int output_width() const {
        return static_cast<int>(output_wires_.size());
    }
    int input_width() const {
        return static_cast<int>(input_wires_.size());
    }

    /// The same circuit preceded by X on every input wire whose bit of `input` is 1.
    QueryCircuit with_input(Bits input) const {
        if (input.width != input_width()) {
            throw DimensionError("circuit takes " + std::to_string(input_width()) +
                                 " input bits, got " + std::to_string(input.width));
        }
        std::vector<Layer> layers;
        layers.reserve(layers_.size() + input_wires_.size());
        for (int i = 0; i < input.width; ++i) {
            if (input.at(i)) {
                layers.emplace_back(UnitaryLayer{{input_wires_[static_cast<std::size_t>(i)]}, gates::x()});
            }
        }
        layers.insert(layers.end(), layers_.begin(), layers_.end());
        return QueryCircuit(layout_, std::move(layers), output_wires_, {});
    }

  private:
    RegisterLayout layout_;
    std::vector<Layer> layers_;
    std::vector<int> output_wires_;
    std::vector<int> input_wires_;
    int query_count_ = 0;
};

/// Fluent construction of QueryCircuit values.
class CircuitBuilder {
  public:
    CircuitBuilder(int n, int m, int w) : layout_{n, m, w} {
    }

    CircuitBuilder &unitary(Matrix U, std::vector<int> wires) {
        layers_.emplace_back(UnitaryLayer{std::move(wires), std::move(U)});
        return *this;
    }
    CircuitBuilder &x(int wire) {
        return unitary(gates::x(), {wire});
    }
    CircuitBuilder &h(int wire) {
        return unitary(gates::h(), {wire});
    }
    CircuitBuilder &ry(double theta, int wire) {
        return unitary(gates::ry(theta), {wire});
    }
    CircuitBuilder &cx(int control, int target) {
        return unitary(gates::cx(), {control, target});
    }
    CircuitBuilder &ccx(int c0, int c1, int target) {
        return unitary(gates::ccx(), {c0, c1, target});
    }
    /// Reversible classical logic: the basis label of `wires` (first wire most significant)
    /// is mapped through the bijection `fn`.
    CircuitBuilder &classical(std::vector<int> wires, const std::function<std::size_t(std::size_t)> &fn) {
        const std::size_t dim = std::size_t{1} << wires.size();
        return unitary(gates::permutation(dim, fn), std::move(wires));
    }
    /// target ^= predicate(bits of `inputs`); `inputs` must not contain `target`.
    CircuitBuilder &compute_into(std::vector<int> inputs, int target,
                                 const std::function<bool(std::size_t)> &predicate) {
        std::vector<int> wires = std::move(inputs);
        wires.push_back(target);
        return classical(std::move(wires), [&](std::size_t j) {
            return predicate(j >> 1) ? (j ^ 1) : j;
        });
    }
    CircuitBuilder &oracle() {
        layers_.emplace_back(OracleCall{});
        return *this;
    }
    CircuitBuilder &inputs(std::vector<int> wires) {
        input_wires_ = std::move(wires);
        return *this;
    }
    CircuitBuilder &outputs(std::vector<int> wires) {
        output_wires_ = std::move(wires);
        return *this;
    }
    QueryCircuit build() const {
        return QueryCircuit(layout_, layers_, output_wires_, input_wires_);
    }

  private:
    RegisterLayout layout_;
    std::vector<Layer> layers_;
    std::vector<int> output_wires_;
    std::vector<int> input_wires_;
};

/// Total query magnitude per query point, summed over all oracle calls.
struct QueryMagnitudeLedger {
    std::vector<double> per_point;
    double total = 0;

    double at(Point x) const {
        return per_point.at(x);
    }
    /// Sum of magnitudes over points where f and g disagree.
    double on_disagreement(const Oracle &f, const Oracle &g) const {
        double s = 0;
        for (Point x = 0; x < per_point.size(); ++x) {
            if (f(x) != g(x)) {
                s += per_point[x];
            }
        }
        return s;
    }
};

struct CircuitRun {
    StateVector final_state;
    QueryMagnitudeLedger ledger;
};

/// Runs the layers in order from |0...0>, recording the query magnitudes of the state
/// just before every oracle call. Throws UnitarityError if the norm drifts past 1e-9.
inline CircuitRun run_circuit(const QueryCircuit &circ, const Oracle &H) {
    const auto &layout = circ.layout();
    if (H.n() != layout.n || H.m() != layout.m) {
        throw DimensionError("oracle " + signature_string(H.signature()) +
                             " does not match circuit registers " +
                             signature_string(layout.signature()));
    }
    std::vector<amplitude> amps(layout.dim());
    amps[0] = 1.0;
    QueryMagnitudeLedger ledger;
    ledger.per_point.assign(std::size_t{1} << layout.n, 0.0);
    const int xshift = layout.m + layout.w;
    for (const auto &layer : circ.layers()) {
        if (const auto *u = std::get_if<UnitaryLayer>(&layer)) {
            detail::apply_unitary_inplace(amps, layout.qubits(), u->matrix, u->wires);
        } else {
            for (std::size_t idx = 0; idx < amps.size(); ++idx) {
                ledger.per_point[idx >> xshift] += std::norm(amps[idx]);
            }
            detail::apply_oracle_inplace(amps, layout, H);
        }
        const double nrm = detail::norm_of(amps);
        if (std::abs(nrm - 1.0) > kNormTolerance) {
            throw UnitarityError("state norm drifted to " + std::to_string(nrm));
        }
    }
    for (double q : ledger.per_point) {
        ledger.total += q;
    }
    return CircuitRun{StateVector(layout, std::move(amps)), std::move(ledger)};
}

/// Measurement statistics of `state` on `wires`, first wire most significant.
inline Distribution<Bits> measure_wires(const StateVector &state, std::span<const int> wires) {
    const int qubits = state.layout().qubits();
    const int width = static_cast<int>(wires.size());
    std::vector<double> probs(std::size_t{1} << width, 0.0);
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const double p = std::norm(state[idx]);
        if (p == 0) {
            continue;
        }
        std::size_t label = 0;
        for (int t = 0; t < width; ++t) {
            label = (label << 1) | ((idx >> (qubits - 1 - wires[static_cast<std::size_t>(t)])) & 1u);
        }
        probs[label] += p;
    }
    std::vector<std::pair<Bits, double>> weights;
    for (std::size_t label = 0; label < probs.size(); ++label) {
        weights.emplace_back(Bits{label, width}, probs[label]);
    }
    return Distribution<Bits>::from_weights(std::move(weights));
}

inline Distribution<Bits> output_distribution(const QueryCircuit &circ, const Oracle &H) {
    return measure_wires(run_circuit(circ, H).final_state, circ.output_wires());
}

/// Final-state distance under two oracles against the swapping bound.
struct SwappingCheck {
    double lhs = 0;            // || |phi_f> - |phi_g> ||
    double rhs = 0;            // sqrt(Q * sum_{f(x) != g(x)} q_x^f)
    double rhs_factor_two = 0;  // 2 * rhs, the bound that holds for XOR oracles
};

inline SwappingCheck swapping_check(const QueryCircuit &circ, const Oracle &f, const Oracle &g) {
    require_same_signature(f.signature(), g.signature(), "swapping_check");
    const auto run_f = run_circuit(circ, f);
    const auto run_g = run_circuit(circ, g);
    SwappingCheck out;
    out.lhs = euclidean_distance(run_f.final_state, run_g.final_state);
    out.rhs = std::sqrt(circ.query_count() * run_f.ledger.on_disagreement(f, g));
    out.rhs_factor_two = 2 * out.rhs;
    return out;
}

}  // namespace romlift
