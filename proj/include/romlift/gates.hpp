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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include "romlift/statevector.hpp"

namespace romlift::gates {

inline Matrix x() {
    return Matrix(2, {0, 1, 1, 0});
}

inline Matrix h() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix(2, {s, s, s, -s});
}

inline Matrix z() {
    return Matrix(2, {1, 0, 0, -1});
}

/// exp(-i theta Y / 2).
inline Matrix ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return Matrix(2, {c, -s, s, c});
}

/// Permutation matrix of a bijection on {0, ..., dim-1}: |j> -> |perm(j)>.
inline Matrix permutation(std::size_t dim, const std::function<std::size_t(std::size_t)> &perm) {
    Matrix out(dim);
    std::vector<bool> hit(dim, false);
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t to = perm(j);
        if (to >= dim || hit[to]) {
            throw UnitarityError("permutation layer is not a bijection");
        }
        hit[to] = true;
        out(to, j) = 1.0;
    }
    return out;
}

/// Controlled-X on two wires listed (control, target).
inline Matrix cx() {
    return permutation(4, [](std::size_t j) { return (j & 2) ? j ^ 1 : j; });
}

/// Toffoli on three wires listed (control, control, target).
inline Matrix ccx() {
    return permutation(8, [](std::size_t j) { return (j & 6) == 6 ? j ^ 1 : j; });
}

inline Matrix swap() {
    return permutation(4, [](std::size_t j) { return ((j & 1) << 1) | ((j >> 1) & 1); });
}

/// Haar-distributed unitary via Gram-Schmidt on a complex Gaussian matrix.
inline Matrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<amplitude>> cols(dim, std::vector<amplitude>(dim));
    for (auto &col : cols) {
        for (auto &v : col) {
            const double re = normal(rng);
            const double im = normal(rng);
            v = {re, im};
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        // Two passes keep the columns orthogonal to ~1e-15.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                amplitude dot{};
                for (std::size_t r = 0; r < dim; ++r) {
                    dot += std::conj(cols[p][r]) * cols[c][r];
                }
                for (std::size_t r = 0; r < dim; ++r) {
                    cols[c][r] -= dot * cols[p][r];
                }
            }
        }
        double nrm = 0;
        for (const auto &v : cols[c]) {
            nrm += std::norm(v);
        }
        nrm = std::sqrt(nrm);
        for (auto &v : cols[c]) {
            v /= nrm;
        }
    }
    Matrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out(r, c) = cols[c][r];
        }
    }
    return out;
}

}  // namespace romlift::gates
