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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gates.hpp"
#include "numerics.hpp"

namespace qftq {

/// Largest q^n for which dense matrices are built.
inline constexpr std::size_t kDefaultDimCap = 4096;

/// Chrestenson gate on one digit.
struct ChrestensonOn {
    int target;
    friend bool operator==(const ChrestensonOn &, const ChrestensonOn &) = default;
};

/// Phase exp(-2 pi i c t / q^denom_exp) on (control digit c, target digit t).
struct ControlledPhase {
    int control;
    int target;
    int denom_exp;
    friend bool operator==(const ControlledPhase &,
                           const ControlledPhase &) = default;
};

using GateOp = std::variant<ChrestensonOn, ControlledPhase>;

/**
 * @brief Pruning knob for the approximate QFT: keep a controlled phase iff its
 * denominator exponent is at most the depth. Unbounded keeps everything.
 */
class KeepDepth {
  public:
    static KeepDepth unbounded() noexcept { return KeepDepth{}; }
    static KeepDepth at_most(int depth) {
        if (depth < 1) {
            throw std::invalid_argument("keep depth must be >= 1, got " +
                                        std::to_string(depth));
        }
        KeepDepth k;
        k.depth_ = depth;
        return k;
    }

    [[nodiscard]] bool bounded() const noexcept { return depth_.has_value(); }
    [[nodiscard]] int depth() const { return depth_.value(); }
    [[nodiscard]] bool keeps(int denom_exp) const noexcept {
        return !depth_ || denom_exp <= *depth_;
    }
    /// Number of least-significant digits whose phases are dropped from a
    /// bracket of fraction length `fraction_length`.
    [[nodiscard]] int dropped_count(int fraction_length) const noexcept {
        return depth_ ? std::max(0, fraction_length - *depth_) : 0;
    }

    friend bool operator==(const KeepDepth &, const KeepDepth &) = default;

  private:
    KeepDepth() = default;
    std::optional<int> depth_;
};

/// A bijection on [0, size).
class Permutation {
  public:
    explicit Permutation(std::vector<std::size_t> mapping)
        : mapping_(std::move(mapping)) {
        std::vector<bool> seen(mapping_.size(), false);
        for (auto m : mapping_) {
            if (m >= mapping_.size() || seen[m]) {
                throw std::invalid_argument("Permutation: not a bijection");
            }
            seen[m] = true;
        }
    }

    static Permutation identity(std::size_t size) {
        std::vector<std::size_t> m(size);
        for (std::size_t i = 0; i < size; ++i) {
            m[i] = i;
        }
        return Permutation(std::move(m));
    }

    [[nodiscard]] std::size_t size() const noexcept { return mapping_.size(); }
    std::size_t operator()(std::size_t i) const { return mapping_.at(i); }
    [[nodiscard]] std::span<const std::size_t> mapping() const noexcept {
        return mapping_;
    }

    [[nodiscard]] Permutation compose(const Permutation &first) const {
        if (first.size() != size()) {
            throw std::invalid_argument("Permutation::compose: size mismatch");
        }
        std::vector<std::size_t> m(size());
        for (std::size_t i = 0; i < size(); ++i) {
            m[i] = mapping_[first.mapping_[i]];
        }
        return Permutation(std::move(m));
    }

    /// Moves the entry at index i to index mapping[i].
    template <class T> std::vector<T> apply(std::span<const T> values) const {
        if (values.size() != size()) {
            throw std::invalid_argument("Permutation::apply: size mismatch");
        }
        std::vector<T> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            out[mapping_[i]] = values[i];
        }
        return out;
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;

  private:
    std::vector<std::size_t> mapping_;
};

/**
 * @brief Ordered gate list over an n-digit radix-q register.
 *
 * When reverse_output_digits is set, the final state is permuted by
 * digit_reversal_perm after the last gate.
 */
class Circuit {
  public:
    Circuit(int radix, int digits, std::vector<GateOp> ops,
            bool reverse_output_digits)
        : radix_(radix), digits_(digits), ops_(std::move(ops)),
          reverse_(reverse_output_digits) {
        if (radix < 2) {
            throw std::invalid_argument("Circuit: radix must be >= 2");
        }
        if (digits < 1) {
            throw std::invalid_argument("Circuit: digits must be >= 1");
        }
        for (const auto &op : ops_) {
            validate(op);
        }
    }

    [[nodiscard]] int radix() const noexcept { return radix_; }
    [[nodiscard]] int digits() const noexcept { return digits_; }
    [[nodiscard]] const std::vector<GateOp> &ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] bool reverse_output_digits() const noexcept {
        return reverse_;
    }
    [[nodiscard]] std::size_t gate_count() const noexcept {
        return ops_.size();
    }
    [[nodiscard]] std::size_t chrestenson_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(ops_.begin(), ops_.end(), [](const GateOp &op) {
                return std::holds_alternative<ChrestensonOn>(op);
            }));
    }

  private:
    void check_digit(int d) const {
        if (d < 0 || d >= digits_) {
            throw std::out_of_range("Circuit: digit index " +
                                    std::to_string(d) + " outside [0, " +
                                    std::to_string(digits_) + ")");
        }
    }
    void validate(const GateOp &op) const {
        if (const auto *ch = std::get_if<ChrestensonOn>(&op)) {
            check_digit(ch->target);
            return;
        }
        const auto &cp = std::get<ControlledPhase>(op);
        check_digit(cp.control);
        check_digit(cp.target);
        if (cp.control == cp.target) {
            throw std::invalid_argument(
                "Circuit: controlled phase with control == target");
        }
        if (cp.denom_exp < 2) {
            throw std::invalid_argument(
                "Circuit: controlled phase denominator exponent must be >= 2");
        }
    }

    int radix_;
    int digits_;
    std::vector<GateOp> ops_;
    bool reverse_;
};

inline std::size_t register_size(int q, int n) {
    if (q < 2 || n < 1) {
        throw std::invalid_argument("register_size: need q >= 2 and n >= 1");
    }
    return static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(q),
                                         static_cast<std::uint64_t>(n)));
}

namespace detail {
inline void check_cap(std::size_t dim, std::size_t cap, const char *what) {
    if (dim > cap) {
        throw std::length_error(std::string(what) + ": dimension " +
                                std::to_string(dim) + " exceeds cap " +
                                std::to_string(cap));
    }
}
} // namespace detail

/**
 * @brief Gate-level QFT over q^n.
 *
 * Targets run from the most significant digit down so every control still
 * holds its input value when used. For target l: one Chrestenson gate, then
 * ControlledPhase(k, l, l - k + 1) for k = l-1 .. 0, each kept iff
 * keep_depth allows its denominator exponent. Output digits are reversed.
 */
inline Circuit build_qft_circuit(int q, int n,
                                 KeepDepth keep_depth = KeepDepth::unbounded()) {
    if (q < 2) {
        throw std::invalid_argument("build_qft_circuit: radix must be >= 2");
    }
    if (n < 1) {
        throw std::invalid_argument("build_qft_circuit: digits must be >= 1");
    }
    std::vector<GateOp> ops;
    ops.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int l = n - 1; l >= 0; --l) {
        ops.emplace_back(ChrestensonOn{l});
        for (int k = l - 1; k >= 0; --k) {
            const int denom_exp = l - k + 1;
            if (keep_depth.keeps(denom_exp)) {
                ops.emplace_back(ControlledPhase{k, l, denom_exp});
            }
        }
    }
    return {q, n, std::move(ops), true};
}

/// n parallel Chrestenson gates (the Walsh-Hadamard transform when q = 2).
inline Circuit build_walsh_hadamard_transform_circuit(int q, int n) {
    if (q < 2) {
        throw std::invalid_argument(
            "build_walsh_hadamard_transform_circuit: radix must be >= 2");
    }
    if (n < 1) {
        throw std::invalid_argument(
            "build_walsh_hadamard_transform_circuit: digits must be >= 1");
    }
    std::vector<GateOp> ops;
    for (int l = n - 1; l >= 0; --l) {
        ops.emplace_back(ChrestensonOn{l});
    }
    return {q, n, std::move(ops), false};
}

/// Entry (y, x) = exp(-2 pi i x y / t) / sqrt(t).
inline ComplexMatrix dft_matrix(std::size_t t) {
    if (t < 2) {
        throw std::invalid_argument("dft_matrix: size must be >= 2");
    }
    std::vector<Complex> roots(t);
    for (std::size_t k = 0; k < t; ++k) {
        roots[k] = unit_phase(k, t);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(t));
    ComplexMatrix m(t, t);
    for (std::size_t y = 0; y < t; ++y) {
        for (std::size_t x = 0; x < t; ++x) {
            m(y, x) = scale * roots[(x * y) % t];
        }
    }
    return m;
}

/// n-fold Kronecker power of chrestenson_gate(q).
inline ComplexMatrix chrestenson_transform_matrix(int q, int n,
                                                  std::size_t dim_cap =
                                                      kDefaultDimCap) {
    detail::check_cap(register_size(q, n), dim_cap,
                      "chrestenson_transform_matrix");
    const ComplexMatrix ch = chrestenson_gate(q);
    ComplexMatrix m = ch;
    for (int i = 1; i < n; ++i) {
        m = kron(m, ch);
    }
    return m;
}

/// Maps the index with digits (x_{n-1}, ..., x_0) to the index with digits
/// (x_0, ..., x_{n-1}).
inline Permutation digit_reversal_perm(int q, int n) {
    const std::size_t size = register_size(q, n);
    const auto uq = static_cast<std::size_t>(q);
    std::vector<std::size_t> m(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t rest = i;
        std::size_t rev = 0;
        for (int d = 0; d < n; ++d) {
            rev = rev * uq + rest % uq;
            rest /= uq;
        }
        m[i] = rev;
    }
    return Permutation(std::move(m));
}

namespace detail {

/// Per-op kernels prepared once per circuit.
class CompiledCircuit {
  public:
    explicit CompiledCircuit(const Circuit &c)
        : q_(static_cast<std::size_t>(c.radix())),
          size_(register_size(c.radix(), c.digits())),
          ch_(chrestenson_gate(c.radix())) {
        strides_.resize(static_cast<std::size_t>(c.digits()));
        std::size_t s = 1;
        for (auto &st : strides_) {
            st = s;
            s *= q_;
        }
        for (const auto &op : c.ops()) {
            Kernel k;
            if (const auto *ch = std::get_if<ChrestensonOn>(&op)) {
                k.target = ch->target;
            } else {
                const auto &cp = std::get<ControlledPhase>(op);
                k.control = cp.control;
                k.target = cp.target;
                const auto den =
                    ipow(q_, static_cast<std::uint64_t>(cp.denom_exp));
                k.phases.resize((q_ - 1) * (q_ - 1) + 1);
                for (std::size_t p = 0; p < k.phases.size(); ++p) {
                    k.phases[p] = unit_phase(p, den);
                }
            }
            kernels_.push_back(std::move(k));
        }
        if (c.reverse_output_digits()) {
            reversal_ = digit_reversal_perm(c.radix(), c.digits());
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    /// Applies every gate in place; `scratch` must hold at least q entries.
    void run(std::vector<Complex> &amps, std::vector<Complex> &scratch) const {
        for (const auto &k : kernels_) {
            if (k.control < 0) {
                apply_chrestenson(amps, scratch, k.target);
            } else {
                apply_phase(amps, k);
            }
        }
        if (reversal_) {
            amps = reversal_->apply(std::span<const Complex>(amps));
        }
    }

    /// Applies every gate to each column of `m`, viewed as a batch of states.
    void run_columns(ComplexMatrix &m) const {
        const std::size_t cols = m.cols();
        const auto e = m.entries();
        std::vector<Complex> scratch(q_ * cols);
        for (const auto &k : kernels_) {
            if (k.control < 0) {
                const std::size_t stride =
                    strides_[static_cast<std::size_t>(k.target)];
                for (std::size_t outer = 0; outer < size_; outer += stride * q_) {
                    for (std::size_t inner = 0; inner < stride; ++inner) {
                        const std::size_t base = outer + inner;
                        std::fill(scratch.begin(), scratch.end(), Complex{});
                        for (std::size_t j = 0; j < q_; ++j) {
                            Complex *acc = scratch.data() + j * cols;
                            for (std::size_t v = 0; v < q_; ++v) {
                                const Complex w = ch_(j, v);
                                const Complex *src =
                                    e.data() + (base + v * stride) * cols;
                                for (std::size_t c = 0; c < cols; ++c) {
                                    fma_complex(acc[c], w, src[c]);
                                }
                            }
                        }
                        for (std::size_t j = 0; j < q_; ++j) {
                            std::copy_n(scratch.data() + j * cols, cols,
                                        e.data() + (base + j * stride) * cols);
                        }
                    }
                }
            } else {
                const std::size_t cs = strides_[static_cast<std::size_t>(k.control)];
                const std::size_t ts = strides_[static_cast<std::size_t>(k.target)];
                for (std::size_t i = 0; i < size_; ++i) {
                    const std::size_t p = ((i / cs) % q_) * ((i / ts) % q_);
                    if (p == 0) {
                        continue;
                    }
                    const Complex w = k.phases[p];
                    Complex *row = e.data() + i * cols;
                    for (std::size_t c = 0; c < cols; ++c) {
                        Complex z{};
                        fma_complex(z, row[c], w);
                        row[c] = z;
                    }
                }
            }
        }
        if (reversal_) {
            std::vector<Complex> out(e.size());
            for (std::size_t i = 0; i < size_; ++i) {
                std::copy_n(e.data() + i * cols, cols,
                            out.data() + (*reversal_)(i) * cols);
            }
            std::copy(out.begin(), out.end(), e.begin());
        }
    }

  private:
    struct Kernel {
        int control = -1;
        int target = 0;
        std::vector<Complex> phases;
    };

    void apply_chrestenson(std::vector<Complex> &amps,
                           std::vector<Complex> &scratch, int target) const {
        const std::size_t stride = strides_[static_cast<std::size_t>(target)];
        const std::size_t block = stride * q_;
        for (std::size_t outer = 0; outer < size_; outer += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = outer + inner;
                for (std::size_t j = 0; j < q_; ++j) {
                    Complex acc{};
                    const auto row = ch_.row(j);
                    for (std::size_t v = 0; v < q_; ++v) {
                        fma_complex(acc, row[v], amps[base + v * stride]);
                    }
                    scratch[j] = acc;
                }
                for (std::size_t j = 0; j < q_; ++j) {
                    amps[base + j * stride] = scratch[j];
                }
            }
        }
    }

    void apply_phase(std::vector<Complex> &amps, const Kernel &k) const {
        const std::size_t cs = strides_[static_cast<std::size_t>(k.control)];
        const std::size_t ts = strides_[static_cast<std::size_t>(k.target)];
        for (std::size_t i = 0; i < size_; ++i) {
            const std::size_t cv = (i / cs) % q_;
            const std::size_t tv = (i / ts) % q_;
            const std::size_t p = cv * tv;
            if (p != 0) {
                Complex z{};
                fma_complex(z, amps[i], k.phases[p]);
                amps[i] = z;
            }
        }
    }

    std::size_t q_;
    std::size_t size_;
    ComplexMatrix ch_;
    std::vector<std::size_t> strides_;
    std::vector<Kernel> kernels_;
    std::optional<Permutation> reversal_;
};

} // namespace detail

/**
 * @brief Simulates the circuit gate by gate on a dense state.
 *
 * Throws std::invalid_argument if the state's radix or digit count differs
 * from the circuit's.
 */
inline StateVector apply_circuit(const Circuit &c, const StateVector &s) {
    if (s.radix() != c.radix() || s.digits() != c.digits()) {
        throw std::invalid_argument(
            "apply_circuit: state is radix " + std::to_string(s.radix()) +
            " with " + std::to_string(s.digits()) +
            " digits, circuit is radix " + std::to_string(c.radix()) +
            " with " + std::to_string(c.digits()) + " digits");
    }
    const detail::CompiledCircuit compiled(c);
    std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
    std::vector<Complex> scratch(static_cast<std::size_t>(c.radix()));
    compiled.run(amps, scratch);
    return {c.radix(), c.digits(), std::move(amps)};
}

/// Column x is the circuit applied to basis state |x>; all columns advance
/// through the gate list together.
inline ComplexMatrix circuit_to_matrix(const Circuit &c,
                                       std::size_t dim_cap = kDefaultDimCap) {
    const std::size_t size = register_size(c.radix(), c.digits());
    detail::check_cap(size, dim_cap, "circuit_to_matrix");
    const detail::CompiledCircuit compiled(c);
    auto m = ComplexMatrix::identity(size);
    compiled.run_columns(m);
    return m;
}

} // namespace qftq
