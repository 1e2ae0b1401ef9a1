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

#include <climits>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "analysis.hpp"
#include "circuit.hpp"
#include "io.hpp"
#include "numerics.hpp"

namespace qftq::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
    kIoError = 3,
};

enum class Command { GenMatrix, Verify, Apply, Bounds, CompareRadix };

struct RunConfig {
    Command command = Command::Verify;
    int radix = 2;
    int digits = 1;
    KeepDepth keep_depth = KeepDepth::unbounded();
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    io::Format format = io::Format::Json;
    double tolerance = kOracleTol;
    std::size_t dim_cap = kDefaultDimCap;
};

/// Raised for unreadable input or unwritable output files.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for invalid parameters detected after argument parsing.
class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_matrix_cap(const RunConfig &cfg) {
    const auto dim = register_size(cfg.radix, cfg.digits);
    if (dim > cfg.dim_cap) {
        throw UsageError("radix^digits = " + std::to_string(dim) +
                         " exceeds --dim-cap " + std::to_string(cfg.dim_cap));
    }
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

} // namespace detail

/// Writes the (possibly pruned) QFT matrix.
inline int cmd_gen_matrix(const RunConfig &cfg, std::ostream &out,
                          std::ostream &) {
    detail::check_matrix_cap(cfg);
    const auto c = build_qft_circuit(cfg.radix, cfg.digits, cfg.keep_depth);
    io::write_matrix(out, circuit_to_matrix(c, cfg.dim_cap), cfg.format);
    return kSuccess;
}

/// Checks the exact circuit against the DFT oracle, unitarity and gate count.
inline int cmd_verify(const RunConfig &cfg, std::ostream &out,
                      std::ostream &err) {
    detail::check_matrix_cap(cfg);
    const auto c = build_qft_circuit(cfg.radix, cfg.digits);
    const auto compiled = circuit_to_matrix(c, cfg.dim_cap);
    const auto dim = register_size(cfg.radix, cfg.digits);
    const double distance = max_entry_distance(compiled, dft_matrix(dim));
    const double residual = unitarity_residual(compiled);
    const auto n = static_cast<std::size_t>(cfg.digits);
    const std::size_t expected_gates = n * (n + 1) / 2;

    struct Check {
        std::string name;
        std::string value;
        std::string expected;
        bool pass;
    };
    const std::vector<Check> checks{
        {"oracle_distance", io::format_real(distance),
         "<= " + io::format_real(cfg.tolerance), distance <= cfg.tolerance},
        {"unitarity_residual", io::format_real(residual),
         "<= " + io::format_real(cfg.tolerance), residual <= cfg.tolerance},
        {"gate_count", std::to_string(c.gate_count()),
         std::to_string(expected_gates), c.gate_count() == expected_gates},
        {"chrestenson_count", std::to_string(c.chrestenson_count()),
         std::to_string(n), c.chrestenson_count() == n},
    };
    bool all = true;
    for (const auto &ch : checks) {
        all = all && ch.pass;
    }

    if (cfg.format == io::Format::Csv) {
        out << "check,value,expected,status\n";
        for (const auto &ch : checks) {
            out << ch.name << ',' << ch.value << ',' << ch.expected << ','
                << (ch.pass ? "PASS" : "FAIL") << '\n';
        }
    } else {
        out << "{\n  \"radix\": " << cfg.radix
            << ",\n  \"digits\": " << cfg.digits << ",\n  \"checks\": [\n";
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const auto &ch = checks[i];
            out << "    {\"name\": \"" << ch.name << "\", \"value\": \""
                << ch.value << "\", \"expected\": \"" << ch.expected
                << "\", \"pass\": " << (ch.pass ? "true" : "false") << "}"
                << (i + 1 < checks.size() ? ",\n" : "\n");
        }
        out << "  ],\n  \"pass\": " << (all ? "true" : "false") << "\n}\n";
    }
    for (const auto &ch : checks) {
        if (!ch.pass) {
            err << "verify: " << ch.name << " failed: " << ch.value
                << " (expected " << ch.expected << ")\n";
        }
    }
    return all ? kSuccess : kVerificationFailure;
}

/// Applies the (possibly pruned) QFT circuit to the state in --in.
inline int cmd_apply(const RunConfig &cfg, std::ostream &out,
                     std::ostream &err) {
    if (!cfg.input_path) {
        throw UsageError("apply needs --in");
    }
    const auto text = detail::read_file(*cfg.input_path);
    const auto state = io::read_state(text, cfg.radix, cfg.digits);
    if (state.radix() != cfg.radix || state.digits() != cfg.digits) {
        throw io::StateFileError(
            io::StateFileError::Kind::ShapeMismatch,
            "state has radix " + std::to_string(state.radix()) + " and " +
                std::to_string(state.digits()) + " digits, expected radix " +
                std::to_string(cfg.radix) + " and " +
                std::to_string(cfg.digits));
    }
    const auto result = apply_circuit(
        build_qft_circuit(cfg.radix, cfg.digits, cfg.keep_depth), state);
    double norm2 = 0.0;
    for (const auto &a : result.amplitudes()) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > cfg.tolerance) {
        err << "apply: output norm deviates from 1 by "
            << io::format_real(std::abs(norm2 - 1.0)) << '\n';
        return kVerificationFailure;
    }
    io::write_state(out, result, cfg.format);
    return kSuccess;
}

/// Bound table for every target digit of the pruned circuit.
inline int cmd_bounds(const RunConfig &cfg, std::ostream &out,
                      std::ostream &err) {
    detail::check_matrix_cap(cfg);
    const auto rows =
        approximation_report(cfg.radix, cfg.digits, cfg.keep_depth, cfg.dim_cap);
    io::write_bounds(out, rows, cfg.format);
    for (const auto &r : rows) {
        if (r.wrap_regime()) {
            err << "note: target_digit " << r.target_digit
                << " has bound_new >= pi; phase wrap possible\n";
        }
    }
    return kSuccess;
}

inline int cmd_compare_radix(const RunConfig &cfg, std::ostream &out,
                             std::ostream &) {
    io::write_comparison(out, compare_radix(cfg.radix, cfg.digits),
                         cfg.format);
    return kSuccess;
}

/**
 * @brief Runs one command, sending data to cfg.output_path (or `out`) and
 * diagnostics to `err`. Returns the process exit code.
 */
inline int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    std::function<int(const RunConfig &, std::ostream &, std::ostream &)> fn;
    switch (cfg.command) {
    case Command::GenMatrix:
        fn = cmd_gen_matrix;
        break;
    case Command::Verify:
        fn = cmd_verify;
        break;
    case Command::Apply:
        fn = cmd_apply;
        break;
    case Command::Bounds:
        fn = cmd_bounds;
        break;
    case Command::CompareRadix:
        fn = cmd_compare_radix;
        break;
    }
    try {
        // Data is buffered so a failing command never leaves a partial file.
        std::ostringstream buffer;
        const int code = fn(cfg, buffer, err);
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path, std::ios::binary);
            if (!file || !(file << buffer.str()) || !file.flush()) {
                throw IoError("cannot write '" + *cfg.output_path + "'");
            }
        } else {
            out << buffer.str();
        }
        return code;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const io::StateFileError &e) {
        const char *label = "malformed state file";
        switch (e.kind()) {
        case io::StateFileError::Kind::Malformed:
            break;
        case io::StateFileError::Kind::NormViolation:
            label = "state norm violation";
            break;
        case io::StateFileError::Kind::ShapeMismatch:
            label = "state shape mismatch";
            break;
        }
        err << "error: " << label << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

/// Parses argv and dispatches. Parse failures return kUsageError.
inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
    CLI::App app{"Radix-q quantum Fourier transform circuits: build, verify, "
                 "simulate and bound approximation error"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string keep_depth = "unbounded";
    std::string format;

    struct Entry {
        const char *name;
        const char *help;
        Command command;
    };
    const Entry entries[] = {
        {"gen-matrix", "Write the QFT circuit matrix", Command::GenMatrix},
        {"verify", "Check the exact circuit against the DFT matrix",
         Command::Verify},
        {"apply", "Apply the QFT circuit to a state file", Command::Apply},
        {"bounds", "Tabulate measured phase error against both bounds",
         Command::Bounds},
        {"compare-radix", "Compare binary and radix-q register capacity",
         Command::CompareRadix},
    };
    for (const auto &e : entries) {
        auto *sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--radix", cfg.radix, "Digit radix q")
            ->required()
            ->check(CLI::Range(2, INT_MAX));
        sub->add_option("--digits", cfg.digits, "Digit count n")
            ->required()
            ->check(CLI::Range(1, INT_MAX));
        sub->add_option("--keep-depth", keep_depth,
                        "Largest kept phase denominator exponent, or "
                        "'unbounded'")
            ->check([](const std::string &v) -> std::string {
                if (v == "unbounded") {
                    return {};
                }
                try {
                    std::size_t used = 0;
                    const int d = std::stoi(v, &used);
                    if (used == v.size() && d >= 1) {
                        return {};
                    }
                } catch (const std::exception &) {
                }
                return "keep depth must be a positive integer or 'unbounded'";
            });
        sub->add_option("--in", cfg.input_path, "Input state file");
        sub->add_option("--out", cfg.output_path,
                        "Output file (default: standard output)");
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tolerance", cfg.tolerance, "Verification tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--dim-cap", cfg.dim_cap,
                        "Largest q^n for dense matrix work")
            ->check(CLI::PositiveNumber);
        sub->callback([&cfg, command = e.command] { cfg.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    if (keep_depth != "unbounded") {
        cfg.keep_depth = KeepDepth::at_most(std::stoi(keep_depth));
    }
    if (format.empty()) {
        const bool tabular = cfg.command == Command::Bounds ||
                             cfg.command == Command::CompareRadix;
        cfg.format = tabular ? io::Format::Csv : io::Format::Json;
    } else {
        cfg.format = format == "csv" ? io::Format::Csv : io::Format::Json;
    }
    return run(cfg, out, err);
}

} // namespace qftq::cli
