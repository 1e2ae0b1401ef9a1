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
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "numerics.hpp"

/**
 * Error analysis of the approximate QFT: the single omitted-gate factor, the
 * two closed-form bounds on the phase error when the m least significant
 * controlled phases of a bracket are dropped, a brute-force measurement of
 * that error, and radix scaling metrics.
 *
 * Notation: a bracket of fraction length L carries the phase 0.x_{L-1}..x_0
 * in base q and is produced on target digit l = L - 1. Dropping m digits
 * means the controls x_0 .. x_{m-1} no longer contribute.
 */
namespace qftq {

namespace detail {
inline void check_radix(int q, const char *what) {
    if (q < 2) {
        throw std::invalid_argument(std::string(what) +
                                    ": radix must be >= 2, got " +
                                    std::to_string(q));
    }
}

inline double radix_power(int q, int e) {
    return static_cast<double>(ipow(static_cast<std::uint64_t>(q),
                                    static_cast<std::uint64_t>(e)));
}

/// Angle of an omitted gate whose control is q - 1: 2 pi (q - 1) / q^l.
inline double omitted_gate_angle(int q, int l, const char *what) {
    check_radix(q, what);
    if (l < 1) {
        throw std::invalid_argument(std::string(what) + ": l must be >= 1");
    }
    return kTwoPi * static_cast<double>(q - 1) / std::pow(q, l);
}

inline void check_bound_args(int q, int fraction_length, int dropped,
                             const char *what) {
    check_radix(q, what);
    if (fraction_length < 1) {
        throw std::invalid_argument(std::string(what) +
                                    ": fraction length must be >= 1");
    }
    if (dropped < 0 || dropped > fraction_length) {
        throw std::invalid_argument(
            std::string(what) + ": dropped count " + std::to_string(dropped) +
            " outside [0, " + std::to_string(fraction_length) + "]");
    }
}
} // namespace detail

/// 2 pi num / q^L. All measured and bounded phases go through this.
inline double two_pi_fraction(std::uint64_t num, int q, int fraction_length) {
    return kTwoPi * static_cast<double>(num) /
           detail::radix_power(q, fraction_length);
}

/// e_s = exp(-2 pi i (q - 1) / q^l).
inline Complex phase_error_factor(int q, int l) {
    return std::exp(
        Complex{0.0, -detail::omitted_gate_angle(q, l, "phase_error_factor")});
}

/// Taylor-Maclaurin partial sum of phase_error_factor with `terms` terms.
inline Complex phase_error_series(int q, int l, int terms) {
    if (terms < 1) {
        throw std::invalid_argument("phase_error_series: terms must be >= 1");
    }
    const Complex z{0.0,
                    -detail::omitted_gate_angle(q, l, "phase_error_series")};
    Complex term{1.0};
    Complex sum{};
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= z / static_cast<double>(k + 1);
    }
    return sum;
}

/// cos(theta) - i sin(theta) with theta = 2 pi (q - 1) / q^l.
inline Complex phase_error_trig(int q, int l) {
    const double theta = detail::omitted_gate_angle(q, l, "phase_error_trig");
    return {std::cos(theta), -std::sin(theta)};
}

/// 2 pi m q^m (q - 1) / q^L.
inline double bound_coppersmith(int q, int fraction_length, int dropped) {
    detail::check_bound_args(q, fraction_length, dropped, "bound_coppersmith");
    if (dropped == 0) {
        return 0.0;
    }
    const auto num = static_cast<std::uint64_t>(dropped) *
                     ipow(static_cast<std::uint64_t>(q),
                          static_cast<std::uint64_t>(dropped)) *
                     static_cast<std::uint64_t>(q - 1);
    return two_pi_fraction(num, q, fraction_length);
}

/// 2 pi (q^m - 1) / q^L.
inline double bound_new(int q, int fraction_length, int dropped) {
    detail::check_bound_args(q, fraction_length, dropped, "bound_new");
    const auto num = ipow(static_cast<std::uint64_t>(q),
                          static_cast<std::uint64_t>(dropped)) -
                     1;
    return two_pi_fraction(num, q, fraction_length);
}

/// 2 pi / q^(L - m): the strict upper limit of bound_new.
inline double bound_limit(int q, int exponent_gap) {
    detail::check_radix(q, "bound_limit");
    if (exponent_gap < 0) {
        throw std::invalid_argument("bound_limit: L - m must be >= 0");
    }
    return kTwoPi / detail::radix_power(q, exponent_gap);
}

/// Phase error of one bracket for one input, in radians.
struct BracketPhaseError {
    /// Dropped phase on the target's |1> component.
    double t1 = 0.0;
    /// Largest dropped phase over the |t> components, t in [1, q).
    double max_t = 0.0;
};

/**
 * @brief Compares the exact and pruned QFT circuits on basis inputs.
 *
 * Both circuits map a basis state to a product state, so the relative phase
 * of output component |t> on a digit is amp[t * q^p] / amp[0], with p the
 * output position of that digit. The reported error comes from the integer
 * sum over dropped gates (no wrapping); the simulated phase ratio must agree
 * with it modulo 2 pi or std::logic_error is thrown.
 */
class ApproximationProbe {
  public:
    static constexpr double kConsistencyTol = 1e-9;

    ApproximationProbe(int q, int n, KeepDepth keep_depth,
                       std::size_t dim_cap = kDefaultDimCap)
        : q_(q), n_(n), exact_(build_qft_circuit(q, n)),
          pruned_(build_qft_circuit(q, n, keep_depth)),
          exact_kernels_(exact_), pruned_kernels_(pruned_),
          dropped_(static_cast<std::size_t>(n)) {
        detail::check_cap(exact_kernels_.size(), dim_cap,
                          "ApproximationProbe");
        const auto &kept = pruned_.ops();
        for (const auto &op : exact_.ops()) {
            if (std::find(kept.begin(), kept.end(), op) != kept.end()) {
                continue;
            }
            const auto &cp = std::get<ControlledPhase>(op);
            dropped_[static_cast<std::size_t>(cp.target)].push_back(cp);
        }
        for (int l = 0; l < n; ++l) {
            const auto m = static_cast<std::size_t>(keep_depth.dropped_count(l + 1));
            if (dropped_[static_cast<std::size_t>(l)].size() != m) {
                throw std::logic_error(
                    "ApproximationProbe: pruned circuit drops an unexpected "
                    "number of gates");
            }
        }
    }

    [[nodiscard]] std::size_t input_count() const noexcept {
        return exact_kernels_.size();
    }

    /// Errors on every target digit for basis input x.
    [[nodiscard]] std::vector<BracketPhaseError>
    measure_input(std::size_t x) const {
        const std::size_t size = input_count();
        if (x >= size) {
            throw std::out_of_range("ApproximationProbe: input out of range");
        }
        std::vector<Complex> exact(size);
        std::vector<Complex> approx(size);
        std::vector<Complex> scratch(static_cast<std::size_t>(q_));
        exact[x] = 1.0;
        approx[x] = 1.0;
        exact_kernels_.run(exact, scratch);
        pruned_kernels_.run(approx, scratch);

        const auto uq = static_cast<std::uint64_t>(q_);
        std::vector<BracketPhaseError> out(static_cast<std::size_t>(n_));
        for (int l = 0; l < n_; ++l) {
            const int fraction_length = l + 1;
            std::uint64_t num = 0;
            for (const auto &cp : dropped_[static_cast<std::size_t>(l)]) {
                const auto xk =
                    (x / ipow(uq, static_cast<std::uint64_t>(cp.control))) % uq;
                num += xk * ipow(uq, static_cast<std::uint64_t>(
                                         fraction_length - cp.denom_exp));
            }
            const int position = n_ - 1 - l;
            const auto stride = ipow(uq, static_cast<std::uint64_t>(position));
            for (std::uint64_t t = 1; t < uq; ++t) {
                const double expected =
                    two_pi_fraction(t * num, q_, fraction_length);
                const Complex ratio = (approx[t * stride] / approx[0]) /
                                      (exact[t * stride] / exact[0]);
                if (std::abs(ratio - std::polar(1.0, expected)) >
                    kConsistencyTol) {
                    throw std::logic_error(
                        "ApproximationProbe: simulated phase disagrees with "
                        "dropped-gate sum at input " +
                        std::to_string(x) + ", digit " + std::to_string(l));
                }
            }
            auto &e = out[static_cast<std::size_t>(l)];
            e.t1 = two_pi_fraction(num, q_, fraction_length);
            e.max_t = two_pi_fraction((uq - 1) * num, q_, fraction_length);
        }
        return out;
    }

    [[nodiscard]] BracketPhaseError measure_input(std::size_t x,
                                                  int target_digit) const {
        check_target(target_digit);
        return measure_input(x)[static_cast<std::size_t>(target_digit)];
    }

    /// Maximum over all basis inputs, per target digit.
    [[nodiscard]] std::vector<BracketPhaseError> measure_all() const {
        std::vector<BracketPhaseError> worst(static_cast<std::size_t>(n_));
        for (std::size_t x = 0; x < input_count(); ++x) {
            const auto e = measure_input(x);
            for (std::size_t l = 0; l < worst.size(); ++l) {
                worst[l].t1 = std::max(worst[l].t1, e[l].t1);
                worst[l].max_t = std::max(worst[l].max_t, e[l].max_t);
            }
        }
        return worst;
    }

    void check_target(int target_digit) const {
        if (target_digit < 0 || target_digit >= n_) {
            throw std::out_of_range("target digit " +
                                    std::to_string(target_digit) +
                                    " outside [0, " + std::to_string(n_) + ")");
        }
    }

  private:
    int q_;
    int n_;
    Circuit exact_;
    Circuit pruned_;
    detail::CompiledCircuit exact_kernels_;
    detail::CompiledCircuit pruned_kernels_;
    std::vector<std::vector<ControlledPhase>> dropped_;
};

/// Largest dropped phase on target digit's |1> component over all q^n inputs.
inline double measure_bracket_phase_error(int q, int n, KeepDepth keep_depth,
                                          int target_digit,
                                          std::size_t dim_cap = kDefaultDimCap) {
    const ApproximationProbe probe(q, n, keep_depth, dim_cap);
    probe.check_target(target_digit);
    double worst = 0.0;
    for (std::size_t x = 0; x < probe.input_count(); ++x) {
        worst = std::max(worst, probe.measure_input(x, target_digit).t1);
    }
    return worst;
}

/// Basis input whose m least significant digits are all q - 1.
inline std::size_t tightness_witness_input(int q, int dropped) {
    return static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(q),
                                         static_cast<std::uint64_t>(dropped)) -
                                    1);
}

struct BoundRow {
    int radix = 0;
    int digits = 0;
    int target_digit = 0;
    int fraction_length = 0;
    int dropped_count = 0;
    double measured_t1 = 0.0;
    double measured_max_t = 0.0;
    double bound_new = 0.0;
    double bound_coppersmith = 0.0;

    /// bound_new >= pi: phase deviations may wrap, rows are reported only.
    [[nodiscard]] bool wrap_regime() const noexcept { return bound_new >= kPi; }
};

inline std::vector<BoundRow>
approximation_report(int q, int n, KeepDepth keep_depth,
                     std::size_t dim_cap = kDefaultDimCap) {
    const ApproximationProbe probe(q, n, keep_depth, dim_cap);
    const auto measured = probe.measure_all();
    std::vector<BoundRow> rows;
    rows.reserve(measured.size());
    for (int l = 0; l < n; ++l) {
        BoundRow r;
        r.radix = q;
        r.digits = n;
        r.target_digit = l;
        r.fraction_length = l + 1;
        r.dropped_count = keep_depth.dropped_count(r.fraction_length);
        r.measured_t1 = measured[static_cast<std::size_t>(l)].t1;
        r.measured_max_t = measured[static_cast<std::size_t>(l)].max_t;
        r.bound_new = bound_new(q, r.fraction_length, r.dropped_count);
        r.bound_coppersmith =
            bound_coppersmith(q, r.fraction_length, r.dropped_count);
        rows.push_back(r);
    }
    return rows;
}

struct CapacityMetrics {
    int radix = 0;
    int digits = 0;
    double state_space_ratio = 0.0;
    double qudit_savings_factor = 0.0;
};

/// (q/2)^n and log2(q).
inline CapacityMetrics capacity_metrics(int q, int n) {
    detail::check_radix(q, "capacity_metrics");
    if (n < 1) {
        throw std::invalid_argument("capacity_metrics: digits must be >= 1");
    }
    CapacityMetrics c{q, n, 0.0, std::log2(static_cast<double>(q))};
    double ratio = 1.0;
    for (int i = 0; i < n; ++i) {
        ratio *= static_cast<double>(q) / 2.0;
    }
    c.state_space_ratio = ratio;
    return c;
}

/// One register configuration in a radix comparison.
struct RadixComparisonRow {
    int radix = 0;
    int digits = 0;
    std::uint64_t state_space = 0;
    std::uint64_t gate_count = 0;
    double state_space_ratio = 0.0;
    double qudit_savings_factor = 0.0;
};

/**
 * @brief Binary register reaching at least q^n states versus the n-digit
 * radix-q register. The radix-q row carries capacity_metrics(q, n).
 */
inline std::vector<RadixComparisonRow> compare_radix(int q, int n) {
    const auto metrics = capacity_metrics(q, n);
    const auto target = ipow(static_cast<std::uint64_t>(q),
                             static_cast<std::uint64_t>(n));
    auto gates = [](std::uint64_t d) { return d * (d + 1) / 2; };

    std::vector<RadixComparisonRow> rows;
    int bits = 0;
    std::uint64_t binary_states = 1;
    while (binary_states < target) {
        binary_states *= 2;
        ++bits;
    }
    rows.push_back({2, bits, binary_states,
                    gates(static_cast<std::uint64_t>(bits)), 1.0, 1.0});
    if (q != 2) {
        rows.push_back({q, n, target, gates(static_cast<std::uint64_t>(n)),
                        metrics.state_space_ratio,
                        metrics.qudit_savings_factor});
    }
    return rows;
}

} // namespace qftq
