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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qftq {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance for comparisons against an independent oracle.
inline constexpr double kOracleTol = 1e-10;
/// Tolerance for exact algebraic identities (a^q = 1, CH CH^dagger = I, ...).
inline constexpr double kIdentityTol = 1e-12;
/// Tolerance for iteratively computed norms.
inline constexpr double kIterativeTol = 1e-6;
/// Norm-1 tolerance for state vectors.
inline constexpr double kNormTol = 1e-10;

inline bool is_finite(const Complex &z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/**
 * @brief Integer power base^exp, throwing std::overflow_error if the result
 * does not fit in 64 bits.
 */
inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 &&
            result > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("ipow: " + std::to_string(base) + "^" +
                                      std::to_string(exp) +
                                      " overflows 64 bits");
        }
        result *= base;
    }
    return result;
}

namespace detail {
// Plain real arithmetic; std::complex operator* goes through the
// NaN-recovering slow path in non-fast-math builds.
inline void fma_complex(Complex &acc, const Complex &a, const Complex &b) {
    acc = Complex{acc.real() + a.real() * b.real() - a.imag() * b.imag(),
                  acc.imag() + a.real() * b.imag() + a.imag() * b.real()};
}
} // namespace detail

/**
 * @brief Dense row-major complex matrix.
 *
 * Dimensions are fixed at construction. Entries supplied through the checked
 * constructor must be finite.
 */
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != checked_size(rows, cols)) {
            throw std::invalid_argument(
                "ComplexMatrix: expected " + std::to_string(rows * cols) +
                " entries, got " + std::to_string(data_.size()));
        }
        if (!std::all_of(data_.begin(), data_.end(),
                         [](const Complex &z) { return is_finite(z); })) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return data_;
    }
    [[nodiscard]] std::span<Complex> entries() noexcept { return data_; }

    [[nodiscard]] std::span<const Complex> row(std::size_t i) const {
        return std::span<const Complex>(data_).subspan(i * cols_, cols_);
    }

    ComplexMatrix &operator*=(const Complex &s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator*(const Complex &s, ComplexMatrix m) {
        m *= s;
        return m;
    }

    friend ComplexMatrix operator-(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw std::invalid_argument("operator-: dimension mismatch");
        }
        ComplexMatrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) {
            r.data_[k] = a.data_[k] - b.data_[k];
        }
        return r;
    }

  private:
    static std::size_t checked_size(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument(
                "ComplexMatrix: dimensions must be positive");
        }
        return rows * cols;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/**
 * @brief Amplitudes of an n-digit radix-q register.
 *
 * Index i encodes the digit string little-endian: i = sum_j x_j q^j, so x_0 is
 * the least significant digit. The constructor enforces length q^n, finite
 * entries and unit norm within kNormTol.
 */
class StateVector {
  public:
    StateVector(int radix, int digits, std::vector<Complex> amplitudes)
        : radix_(radix), digits_(digits), amps_(std::move(amplitudes)) {
        if (radix < 2) {
            throw std::invalid_argument("StateVector: radix must be >= 2");
        }
        if (digits < 1) {
            throw std::invalid_argument("StateVector: digits must be >= 1");
        }
        const auto expected = ipow(static_cast<std::uint64_t>(radix),
                                   static_cast<std::uint64_t>(digits));
        if (amps_.size() != expected) {
            throw std::invalid_argument(
                "StateVector: expected " + std::to_string(expected) +
                " amplitudes, got " + std::to_string(amps_.size()));
        }
        double norm2 = 0.0;
        for (const auto &c : amps_) {
            if (!is_finite(c)) {
                throw std::invalid_argument("StateVector: non-finite amplitude");
            }
            norm2 += std::norm(c);
        }
        if (std::abs(norm2 - 1.0) > kNormTol) {
            throw std::domain_error("StateVector: squared norm " +
                                    std::to_string(norm2) + " is not 1");
        }
    }

    /// Computational basis state |index>.
    static StateVector basis(int radix, int digits, std::size_t index) {
        if (radix < 2 || digits < 1) {
            throw std::invalid_argument(
                "StateVector::basis: need radix >= 2 and digits >= 1");
        }
        const auto size = ipow(static_cast<std::uint64_t>(radix),
                               static_cast<std::uint64_t>(digits));
        if (index >= size) {
            throw std::out_of_range("StateVector::basis: index out of range");
        }
        std::vector<Complex> amps(size);
        amps[index] = 1.0;
        return {radix, digits, std::move(amps)};
    }

    [[nodiscard]] int radix() const noexcept { return radix_; }
    [[nodiscard]] int digits() const noexcept { return digits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

  private:
    int radix_;
    int digits_;
    std::vector<Complex> amps_;
};

inline ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(j, i) = std::conj(a(i, j));
        }
    }
    return r;
}

/**
 * @brief Kronecker product. Block (i, j) of the result is a(i, j) * b, so the
 * left factor addresses the most significant digit of the compound index.
 */
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (!a.is_square() || !b.is_square()) {
        throw std::invalid_argument("kron: operands must be square");
    }
    const std::size_t na = a.rows();
    const std::size_t nb = b.rows();
    ComplexMatrix r(na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex s = a(i, j);
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    r(i * nb + k, j * nb + l) = s * b(k, l);
                }
            }
        }
    }
    return r;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument(
            "matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
            std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix r(a.rows(), b.cols());
    const std::size_t inner = a.cols();
    const std::size_t out_cols = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex *out = &r(i, 0);
        for (std::size_t k = 0; k < inner; ++k) {
            const Complex s = a(i, k);
            const Complex *brow = &b(k, 0);
            for (std::size_t j = 0; j < out_cols; ++j) {
                detail::fma_complex(out[j], s, brow[j]);
            }
        }
    }
    return r;
}

/**
 * @brief Largest entry magnitude of a * adjoint(a) - I.
 *
 * Computed from row inner products directly, without materialising the
 * adjoint.
 */
inline double unitarity_residual(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw std::invalid_argument("unitarity_residual: matrix must be square");
    }
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = a.row(i);
        for (std::size_t j = i; j < n; ++j) {
            const auto rj = a.row(j);
            double re = 0.0;
            double im = 0.0;
            // <row_i, conj(row_j)>
            for (std::size_t k = 0; k < n; ++k) {
                re += ri[k].real() * rj[k].real() + ri[k].imag() * rj[k].imag();
                im += ri[k].imag() * rj[k].real() - ri[k].real() * rj[k].imag();
            }
            if (i == j) {
                re -= 1.0;
            }
            worst = std::max(worst, std::hypot(re, im));
        }
    }
    return worst;
}

inline bool is_unitary(const ComplexMatrix &a, double tol) {
    if (!a.is_square()) {
        return false;
    }
    return unitarity_residual(a) <= tol;
}

inline double max_entry_distance(const ComplexMatrix &a,
                                 const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(
            "max_entry_distance: dimension mismatch (" +
            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
            " vs " + std::to_string(b.rows()) + "x" +
            std::to_string(b.cols()) + ")");
    }
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

inline constexpr int kDefaultPowerIterations = 200;

/**
 * @brief Largest singular value of a square matrix by power iteration on
 * adjoint(a) * a.
 *
 * The start vector is uniform (1/sqrt(dim) in every entry), so the result is
 * reproducible. Returns ||a v|| for the final unit iterate v.
 */
inline double spectral_norm(const ComplexMatrix &a,
                            int iterations = kDefaultPowerIterations) {
    if (!a.is_square()) {
        throw std::invalid_argument("spectral_norm: matrix must be square");
    }
    if (iterations < 1) {
        throw std::invalid_argument("spectral_norm: iterations must be >= 1");
    }
    const std::size_t n = a.rows();
    std::vector<Complex> v(n, Complex{1.0 / std::sqrt(static_cast<double>(n))});
    std::vector<Complex> av(n);
    std::vector<Complex> w(n);

    auto apply = [&](const std::vector<Complex> &x, std::vector<Complex> &y) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc{};
            const auto ri = a.row(i);
            for (std::size_t k = 0; k < n; ++k) {
                detail::fma_complex(acc, ri[k], x[k]);
            }
            y[i] = acc;
        }
    };
    auto norm = [](const std::vector<Complex> &x) {
        double s = 0.0;
        for (const auto &z : x) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    };

    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        apply(v, av);
        sigma = norm(av);
        if (sigma == 0.0) {
            return 0.0;
        }
        // w = adjoint(a) * av
        std::fill(w.begin(), w.end(), Complex{});
        for (std::size_t i = 0; i < n; ++i) {
            const auto ri = a.row(i);
            for (std::size_t k = 0; k < n; ++k) {
                detail::fma_complex(w[k], std::conj(ri[k]), av[i]);
            }
        }
        const double wn = norm(w);
        if (wn == 0.0) {
            return 0.0;
        }
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = w[k] / wn;
        }
    }
    apply(v, av);
    return std::max(sigma, norm(av));
}

} // namespace qftq
