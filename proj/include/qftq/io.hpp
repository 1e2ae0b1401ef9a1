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

#include <cctype>
#include <cstdio>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "analysis.hpp"
#include "numerics.hpp"

/**
 * Text formats for states, matrices and reports.
 *
 * State (JSON):  {"radix": q, "digits": n, "amplitudes": [[re, im], ...]}
 * State (CSV):   header "index,re,im", one row per amplitude
 * Matrix (JSON): {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major
 * Matrix (CSV):  header "row,col,re,im", one quadruple per entry
 *
 * Every real is written with 17 significant digits so parsing restores the
 * exact double.
 */
namespace qftq::io {

enum class Format { Json, Csv };

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Problems reading a state file, split by cause.
class StateFileError : public std::runtime_error {
  public:
    enum class Kind { Malformed, NormViolation, ShapeMismatch };

    StateFileError(Kind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

namespace detail {

inline void write_pair(std::ostream &os, const Complex &z) {
    os << '[' << format_real(z.real()) << ", " << format_real(z.imag()) << ']';
}

inline void write_pair_list(std::ostream &os, std::span<const Complex> zs) {
    os << "[\n";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        os << "    ";
        write_pair(os, zs[i]);
        os << (i + 1 < zs.size() ? ",\n" : "\n");
    }
    os << "  ]";
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

inline double parse_real(const std::string &cell) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) {
        throw StateFileError(StateFileError::Kind::Malformed,
                             "not a number: '" + cell + "'");
    }
    return v;
}

inline Complex parse_pair(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw StateFileError(StateFileError::Kind::Malformed,
                             "amplitude must be a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline StateVector make_state(int radix, int digits,
                              std::vector<Complex> amps) {
    try {
        return {radix, digits, std::move(amps)};
    } catch (const std::domain_error &e) {
        throw StateFileError(StateFileError::Kind::NormViolation, e.what());
    } catch (const std::overflow_error &e) {
        throw StateFileError(StateFileError::Kind::ShapeMismatch, e.what());
    } catch (const std::invalid_argument &e) {
        const std::string msg = e.what();
        const auto kind = msg.find("non-finite") != std::string::npos
                              ? StateFileError::Kind::Malformed
                              : StateFileError::Kind::ShapeMismatch;
        throw StateFileError(kind, msg);
    }
}

} // namespace detail

inline void write_state(std::ostream &os, const StateVector &s, Format f) {
    if (f == Format::Json) {
        os << "{\n  \"radix\": " << s.radix() << ",\n  \"digits\": "
           << s.digits() << ",\n  \"amplitudes\": ";
        detail::write_pair_list(os, s.amplitudes());
        os << "\n}\n";
        return;
    }
    os << "index,re,im\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << i << ',' << format_real(s[i].real()) << ','
           << format_real(s[i].imag()) << '\n';
    }
}

/**
 * @brief Parses a state document. JSON is recognised by a leading '{'; CSV
 * carries no shape, so `radix` and `digits` must be supplied for it.
 */
inline StateVector read_state(std::string_view text,
                              std::optional<int> radix = std::nullopt,
                              std::optional<int> digits = std::nullopt) {
    const auto body = detail::trim(text);
    if (body.empty()) {
        throw StateFileError(StateFileError::Kind::Malformed,
                             "state file is empty");
    }
    if (body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error &e) {
            throw StateFileError(StateFileError::Kind::Malformed,
                                 std::string("invalid JSON: ") + e.what());
        }
        for (const char *key : {"radix", "digits", "amplitudes"}) {
            if (!j.contains(key)) {
                throw StateFileError(StateFileError::Kind::Malformed,
                                     std::string("missing field '") + key +
                                         "'");
            }
        }
        if (!j["radix"].is_number_integer() ||
            !j["digits"].is_number_integer() || !j["amplitudes"].is_array()) {
            throw StateFileError(StateFileError::Kind::Malformed,
                                 "radix and digits must be integers and "
                                 "amplitudes an array");
        }
        std::vector<Complex> amps;
        amps.reserve(j["amplitudes"].size());
        for (const auto &p : j["amplitudes"]) {
            amps.push_back(detail::parse_pair(p));
        }
        return detail::make_state(j["radix"].get<int>(),
                                  j["digits"].get<int>(), std::move(amps));
    }

    if (!radix || !digits) {
        throw StateFileError(StateFileError::Kind::Malformed,
                             "CSV state needs radix and digits");
    }
    std::istringstream in{std::string(body)};
    std::string line;
    std::getline(in, line);
    if (detail::trim(line) != "index,re,im") {
        throw StateFileError(StateFileError::Kind::Malformed,
                             "CSV state header must be 'index,re,im'");
    }
    std::vector<Complex> amps;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_csv(line);
        if (cells.size() != 3) {
            throw StateFileError(StateFileError::Kind::Malformed,
                                 "CSV state row needs 3 fields: '" + line +
                                     "'");
        }
        if (detail::parse_real(cells[0]) != static_cast<double>(amps.size())) {
            throw StateFileError(StateFileError::Kind::Malformed,
                                 "CSV state rows must be in index order");
        }
        amps.emplace_back(detail::parse_real(cells[1]),
                          detail::parse_real(cells[2]));
    }
    return detail::make_state(*radix, *digits, std::move(amps));
}

inline void write_matrix(std::ostream &os, const ComplexMatrix &m, Format f) {
    if (f == Format::Json) {
        os << "{\n  \"rows\": " << m.rows() << ",\n  \"cols\": " << m.cols()
           << ",\n  \"entries\": ";
        detail::write_pair_list(os, m.entries());
        os << "\n}\n";
        return;
    }
    os << "row,col,re,im\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << i << ',' << j << ',' << format_real(m(i, j).real()) << ','
               << format_real(m(i, j).imag()) << '\n';
        }
    }
}

/// Inverse of write_matrix in JSON form.
inline ComplexMatrix read_matrix_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto &p : j.at("entries")) {
        entries.push_back(detail::parse_pair(p));
    }
    return {rows, cols, std::move(entries)};
}

inline constexpr std::string_view kBoundsHeader =
    "q,n,target_digit,L,m,measured_t1,measured_max_t,bound_new,"
    "bound_coppersmith";

inline void write_bounds(std::ostream &os, const std::vector<BoundRow> &rows,
                         Format f) {
    if (f == Format::Csv) {
        os << kBoundsHeader << '\n';
        for (const auto &r : rows) {
            os << r.radix << ',' << r.digits << ',' << r.target_digit << ','
               << r.fraction_length << ',' << r.dropped_count << ','
               << format_real(r.measured_t1) << ','
               << format_real(r.measured_max_t) << ','
               << format_real(r.bound_new) << ','
               << format_real(r.bound_coppersmith) << '\n';
        }
        return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        os << "  {\"q\": " << r.radix << ", \"n\": " << r.digits
           << ", \"target_digit\": " << r.target_digit
           << ", \"L\": " << r.fraction_length << ", \"m\": "
           << r.dropped_count
           << ", \"measured_t1\": " << format_real(r.measured_t1)
           << ", \"measured_max_t\": " << format_real(r.measured_max_t)
           << ", \"bound_new\": " << format_real(r.bound_new)
           << ", \"bound_coppersmith\": " << format_real(r.bound_coppersmith)
           << "}" << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    os << "]\n";
}

inline constexpr std::string_view kComparisonHeader =
    "radix,digits,state_space,gate_count,state_space_ratio,"
    "qudit_savings_factor";

inline void write_comparison(std::ostream &os,
                             const std::vector<RadixComparisonRow> &rows,
                             Format f) {
    if (f == Format::Csv) {
        os << kComparisonHeader << '\n';
        for (const auto &r : rows) {
            os << r.radix << ',' << r.digits << ',' << r.state_space << ','
               << r.gate_count << ',' << format_real(r.state_space_ratio)
               << ',' << format_real(r.qudit_savings_factor) << '\n';
        }
        return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        os << "  {\"radix\": " << r.radix << ", \"digits\": " << r.digits
           << ", \"state_space\": " << r.state_space
           << ", \"gate_count\": " << r.gate_count
           << ", \"state_space_ratio\": " << format_real(r.state_space_ratio)
           << ", \"qudit_savings_factor\": "
           << format_real(r.qudit_savings_factor) << "}"
           << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    os << "]\n";
}

} // namespace qftq::io
