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

// Dense pure-state simulation over a query register, an answer register and a
// workspace.
//
// Wire w of an N-qubit state is bit (N - 1 - w) of the basis index, so reading
// wires 0..N-1 left to right spells the basis label. Wires [0, n) hold the query
// x, [n, n+m) the answer y, and the rest the workspace z.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "romlift/error.hpp"
#include "romlift/oracle.hpp"

namespace romlift {

using amplitude = std::complex<double>;

inline constexpr double kUnitarityTolerance = 1e-9;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr int kMaxQubits = 24;

struct RegisterLayout {
    int n = 0;  // query qubits
    int m = 0;  // answer qubits
    int w = 0;  // workspace qubits

    int qubits() const {
        return n + m + w;
    }
    std::size_t dim() const {
        return std::size_t{1} << qubits();
    }
    Signature signature() const {
        return {n, m};
    }
    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;
};

inline void check_layout(const RegisterLayout &layout) {
    if (layout.n < 0 || layout.m < 0 || layout.w < 0 || layout.qubits() > kMaxQubits ||
        layout.n > kMaxPointBits || layout.m > kMaxValueBits) {
        throw DimensionError("unsupported register layout n=" + std::to_string(layout.n) +
                             " m=" + std::to_string(layout.m) + " w=" + std::to_string(layout.w));
    }
}

/// Square complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    }
    Matrix(std::size_t dim, std::vector<amplitude> data) : dim_(dim), data_(std::move(data)) {
        if (data_.size() != dim_ * dim_) {
            throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                                 " entries, expected " + std::to_string(dim_ * dim_));
        }
    }
    static Matrix identity(std::size_t dim) {
        Matrix out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    std::size_t dim() const {
        return dim_;
    }
    amplitude &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const amplitude &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const amplitude> data() const {
        return data_;
    }

    Matrix adjoint() const {
        Matrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.dim_ != b.dim_) {
            throw DimensionError("matrix product dimension mismatch");
        }
        Matrix out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const amplitude v = a(r, k);
                if (v == amplitude{}) {
                    continue;
                }
                for (std::size_t c = 0; c < a.dim_; ++c) {
                    out(r, c) += v * b(k, c);
                }
            }
        }
        return out;
    }

    /// max |U^dagger U - I| over entries.
    double unitarity_defect() const {
        double worst = 0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                amplitude acc{};
                for (std::size_t k = 0; k < dim_; ++k) {
                    acc += std::conj((*this)(k, r)) * (*this)(k, c);
                }
                if (r == c) {
                    acc -= 1.0;
                }
                worst = std::max(worst, std::abs(acc));
            }
        }
        return worst;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<amplitude> data_;
};

/// Normalised amplitude vector with a fixed register layout. Immutable once built.
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(RegisterLayout layout) : layout_(layout) {
        check_layout(layout);
        amps_.assign(layout.dim(), amplitude{});
        amps_[0] = 1.0;
    }

    /// Takes ownership of `amps`; throws UnitarityError if the norm is not 1 within 1e-9.
    StateVector(RegisterLayout layout, std::vector<amplitude> amps)
        : layout_(layout), amps_(std::move(amps)) {
        check_layout(layout);
        if (amps_.size() != layout.dim()) {
            throw DimensionError("state has " + std::to_string(amps_.size()) +
                                 " amplitudes, layout needs " + std::to_string(layout.dim()));
        }
        const double nrm = norm();
        if (std::abs(nrm - 1.0) > kNormTolerance) {
            throw UnitarityError("state norm " + std::to_string(nrm) + " is not 1");
        }
    }

    /// Computational basis state with the given basis index.
    static StateVector basis(RegisterLayout layout, std::size_t index) {
        check_layout(layout);
        if (index >= layout.dim()) {
            throw DimensionError("basis index out of range");
        }
        std::vector<amplitude> amps(layout.dim());
        amps[index] = 1.0;
        return StateVector(layout, std::move(amps));
    }

    const RegisterLayout &layout() const {
        return layout_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const amplitude> amplitudes() const {
        return amps_;
    }
    amplitude operator[](std::size_t index) const {
        return amps_[index];
    }

    double norm() const {
        double s = 0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Basis index of |x>|y>|z>.
    std::size_t index_of(Point x, Value y, std::size_t z) const {
        return (std::size_t{x} << (layout_.m + layout_.w)) | (std::size_t{y} << layout_.w) | z;
    }

  private:
    RegisterLayout layout_;
    std::vector<amplitude> amps_;
};

namespace detail {

inline void check_wires(const RegisterLayout &layout, std::span<const int> wires) {
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i] < 0 || wires[i] >= layout.qubits()) {
            throw DimensionError("wire " + std::to_string(wires[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (wires[i] == wires[j]) {
                throw DimensionError("wire " + std::to_string(wires[i]) + " listed twice");
            }
        }
    }
}

/// In-place U on `wires`; the first listed wire is the most significant bit of U's index.
inline void apply_unitary_inplace(std::vector<amplitude> &amps, int qubits, const Matrix &U,
                                  std::span<const int> wires) {
    const std::size_t k = wires.size();
    const std::size_t sub = std::size_t{1} << k;
    if (U.dim() != sub) {
        throw DimensionError("matrix dimension " + std::to_string(U.dim()) + " does not match " +
                             std::to_string(k) + " wires");
    }
    std::vector<std::size_t> offsets(sub, 0);
    std::size_t target_mask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        target_mask |= std::size_t{1} << (qubits - 1 - wires[t]);
    }
    for (std::size_t j = 0; j < sub; ++j) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if ((j >> (k - 1 - t)) & 1u) {
                off |= std::size_t{1} << (qubits - 1 - wires[t]);
            }
        }
        offsets[j] = off;
    }
    std::vector<amplitude> in(sub);
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t j = 0; j < sub; ++j) {
            in[j] = amps[base | offsets[j]];
        }
        for (std::size_t r = 0; r < sub; ++r) {
            amplitude acc{};
            for (std::size_t c = 0; c < sub; ++c) {
                acc += U(r, c) * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

inline void apply_oracle_inplace(std::vector<amplitude> &amps, const RegisterLayout &layout,
                                 const Oracle &H) {
    std::vector<amplitude> out(amps.size());
    const std::size_t zmask = low_mask(layout.w);
    const std::size_t ymask = low_mask(layout.m);
    const int xshift = layout.m + layout.w;
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const auto x = static_cast<Point>(idx >> xshift);
        const std::size_t y = (idx >> layout.w) & ymask;
        const std::size_t z = idx & zmask;
        const std::size_t to = (std::size_t{x} << xshift) | ((y ^ H(x)) << layout.w) | z;
        out[to] = amps[idx];
    }
    amps.swap(out);
}

inline double norm_of(const std::vector<amplitude> &amps) {
    double s = 0;
    for (const auto &a : amps) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

}  // namespace detail

/// |x>|y>|z> -> |x>|y xor H(x)>|z>.
inline StateVector apply_oracle(const StateVector &state, const Oracle &H) {
    const auto &layout = state.layout();
    if (H.n() != layout.n || H.m() != layout.m) {
        throw DimensionError("oracle " + signature_string(H.signature()) +
                             " does not match registers " + signature_string(layout.signature()));
    }
    std::vector<amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_oracle_inplace(amps, layout, H);
    return StateVector(layout, std::move(amps));
}

inline StateVector apply_unitary(const StateVector &state, const Matrix &U,
                                 std::span<const int> wires) {
    detail::check_wires(state.layout(), wires);
    if (U.unitarity_defect() > kUnitarityTolerance) {
        throw UnitarityError("matrix is not unitary within tolerance");
    }
    std::vector<amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_unitary_inplace(amps, state.layout().qubits(), U, wires);
    return StateVector(state.layout(), std::move(amps));
}

inline amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("inner product of states with different dimensions");
    }
    amplitude acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// Raw l2 distance; sensitive to global phase.
inline double euclidean_distance(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("distance between states with different dimensions");
    }
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::norm(a[i] - b[i]);
    }
    return std::sqrt(s);
}

/// Trace distance of |a><a| and |b><b|, i.e. sqrt(1 - |<a|b>|^2). Evaluated as
/// sqrt((1 - |c|)(1 + |c|)) with 1 - |c| = ||b - e^{i arg c} a||^2 / 2, which keeps
/// precision for nearly equal states.
inline double trace_distance_pure(const StateVector &a, const StateVector &b) {
    const amplitude c = inner_product(a, b);
    const double mag = std::abs(c);
    const amplitude phase = mag > 0 ? c / mag : amplitude{1.0};
    double d = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        d += std::norm(b[i] - phase * a[i]);
    }
    return std::sqrt(std::max(0.0, d / 2 * (1 + mag)));
}

}  // namespace romlift
