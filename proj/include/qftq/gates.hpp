// Copyright 2026 The qftq Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "numerics.hpp"

/**
 * Gate matrices. Every phase in this library uses the negative-exponent
 * convention exp(-2 pi i k / N); the positive-sign transforms are the
 * adjoints.
 */
namespace qftq {

struct RootOfUnity {
    int radix;
    Complex value;
};

/// exp(-2 pi i num / den), with num reduced modulo den first.
inline Complex unit_phase(std::uint64_t num, std::uint64_t den) {
    const auto r = num % den;
    return std::polar(1.0, -kTwoPi * static_cast<double>(r) /
                               static_cast<double>(den));
}

inline RootOfUnity root_of_unity(int q) {
    if (q < 2) {
        throw std::invalid_argument("root_of_unity: radix must be >= 2, got " +
                                    std::to_string(q));
    }
    return {q, unit_phase(1, static_cast<std::uint64_t>(q))};
}

inline ComplexMatrix walsh_hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, 2, {s, s, s, -s});
}

/**
 * @brief q x q Chrestenson gate; entry (j, k) = a^{jk} / sqrt(q) with
 * a = exp(-2 pi i / q).
 */
inline ComplexMatrix chrestenson_gate(int q) {
    if (q < 2) {
        throw std::invalid_argument(
            "chrestenson_gate: radix must be >= 2, got " + std::to_string(q));
    }
    const auto uq = static_cast<std::uint64_t>(q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    ComplexMatrix m(uq, uq);
    for (std::uint64_t j = 0; j < uq; ++j) {
        for (std::uint64_t k = 0; k < uq; ++k) {
            m(j, k) = scale * unit_phase(j * k, uq);
        }
    }
    return m;
}

/// diag(1, exp(i alpha)).
inline ComplexMatrix phase_shift_gate(double alpha) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(1, 1) = std::polar(1.0, alpha);
    return m;
}

/**
 * @brief Two-digit diagonal gate. Basis state (control c, target t) picks up
 * exp(-2 pi i c t / q^denom_exp). Compound index is c * q + t.
 */
inline ComplexMatrix controlled_phase_matrix(int q, int denom_exp) {
    if (q < 2) {
        throw std::invalid_argument(
            "controlled_phase_matrix: radix must be >= 2");
    }
    if (denom_exp < 1) {
        throw std::invalid_argument(
            "controlled_phase_matrix: denominator exponent must be >= 1, got " +
            std::to_string(denom_exp));
    }
    const auto uq = static_cast<std::uint64_t>(q);
    const auto den = ipow(uq, static_cast<std::uint64_t>(denom_exp));
    ComplexMatrix m(uq * uq, uq * uq);
    for (std::uint64_t c = 0; c < uq; ++c) {
        for (std::uint64_t t = 0; t < uq; ++t) {
            const auto idx = c * uq + t;
            m(idx, idx) = unit_phase(c * t, den);
        }
    }
    return m;
}

} // namespace qftq
