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
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "qftq/cli.hpp"
#include "qftq/qftq.hpp"

namespace qftq {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qftq");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out,
                              err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string &name) {
    return std::string(QFTQ_TEST_TMPDIR) + "/cli_test_" + name;
}

std::string write_temp(const std::string &name, const std::string &content) {
    const auto path = temp_path(name);
    std::ofstream(path) << content;
    return path;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string basis_json(int q, int n, std::size_t index) {
    std::ostringstream os;
    io::write_state(os, StateVector::basis(q, n, index), io::Format::Json);
    return os.str();
}

TEST(GenMatrix, TernarySingleDigitIsChrestenson) {
    const auto r = run_cli({"gen-matrix", "--radix", "3", "--digits", "1"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto m = io::read_matrix_json(r.out);
    EXPECT_LT(max_entry_distance(m, chrestenson_gate(3)), kOracleTol);
}

TEST(GenMatrix, BinarySingleDigitIsWalshHadamard) {
    const auto r = run_cli({"gen-matrix", "--radix", "2", "--digits", "1"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_LT(max_entry_distance(io::read_matrix_json(r.out),
                                 walsh_hadamard_gate()),
              kOracleTol);
}

TEST(GenMatrix, KeepDepthOneIsReversedChrestensonTransform) {
    const auto r = run_cli({"gen-matrix", "--radix", "3", "--digits", "2",
                            "--keep-depth", "1"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto m = io::read_matrix_json(r.out);
    const auto ch2 = chrestenson_transform_matrix(3, 2);
    const auto rev = digit_reversal_perm(3, 2);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j) {
            EXPECT_LT(std::abs(m(rev(i), j) - ch2(i, j)), kOracleTol);
        }
    }
}

TEST(GenMatrix, CsvToFile) {
    const auto path = temp_path("w2.csv");
    const auto r = run_cli({"gen-matrix", "--radix", "2", "--digits", "1",
                            "--format", "csv", "--out", path});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(path).rfind("row,col,re,im\n0,0,0.70710678118654746,0\n", 0),
              0u);
}

TEST(GenMatrix, CapExceededAndUnwritablePath) {
    auto r = run_cli({"gen-matrix", "--radix", "3", "--digits", "2",
                      "--dim-cap", "8"});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("exceeds --dim-cap"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());

    r = run_cli({"gen-matrix", "--radix", "2", "--digits", "1", "--out",
                 "/nonexistent-dir/x.json"});
    EXPECT_EQ(r.code, cli::kIoError);
    EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST(Verify, TernaryFourDigitsPasses) {
    const auto r = run_cli({"verify", "--radix", "3", "--digits", "4"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LT(std::stod(j["checks"][0]["value"].get<std::string>()), 1e-10);
    EXPECT_EQ(j["checks"][2]["value"], "10");
}

TEST(Verify, BinaryFiveDigitsCsv) {
    const auto r = run_cli({"verify", "--radix", "2", "--digits", "5",
                            "--format", "csv"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("gate_count,15,15,PASS"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("chrestenson_count,5,5,PASS"), std::string::npos);
}

TEST(Verify, ToleranceFailureListsCheck) {
    const auto r = run_cli({"verify", "--radix", "3", "--digits", "3",
                            "--tolerance", "1e-300"});
    EXPECT_EQ(r.code, cli::kVerificationFailure);
    EXPECT_NE(r.err.find("oracle_distance failed"), std::string::npos) << r.err;
    EXPECT_EQ(r.err.find("gate_count failed"), std::string::npos);
}

TEST(Verify, RadixOneRejectedAtParse) {
    EXPECT_EQ(run_cli({"verify", "--radix", "1", "--digits", "3"}).code,
              cli::kUsageError);
    EXPECT_EQ(run_cli({"verify", "--digits", "3"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"verify", "--radix", "3", "--digits", "2",
                       "--keep-depth", "0"})
                  .code,
              cli::kUsageError);
    EXPECT_EQ(run_cli({"verify", "--radix", "3", "--digits", "2", "--format",
                       "xml"})
                  .code,
              cli::kUsageError);
    EXPECT_EQ(run_cli({}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kSuccess);
}

TEST(Apply, BasisZeroBinary) {
    const auto in = write_temp("b0.json", basis_json(2, 1, 0));
    const auto r = run_cli({"apply", "--radix", "2", "--digits", "1", "--in", in});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto s = io::read_state(r.out);
    EXPECT_NEAR(s[0].real(), 0.7071, 1e-4);
    EXPECT_NEAR(s[1].real(), 0.7071, 1e-4);
}

TEST(Apply, BasisZeroIsUniformForAnyRadix) {
    for (int q = 2; q <= 5; ++q) {
        const auto in = write_temp("z.json", basis_json(q, 3, 0));
        const auto r = run_cli({"apply", "--radix", std::to_string(q),
                                "--digits", "3", "--in", in});
        ASSERT_EQ(r.code, cli::kSuccess) << r.err;
        const auto s = io::read_state(r.out);
        const double u = 1.0 / std::sqrt(static_cast<double>(s.size()));
        for (const auto &a : s.amplitudes()) {
            EXPECT_LT(std::abs(a - u), 1e-14);
        }
    }
}

TEST(Apply, BasisOneTernary) {
    const auto in = write_temp("t1.json", basis_json(3, 1, 1));
    const auto r = run_cli({"apply", "--radix", "3", "--digits", "1", "--in", in});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto s = io::read_state(r.out);
    const Complex a = root_of_unity(3).value;
    const double k = 1.0 / std::sqrt(3.0);
    EXPECT_LT(std::abs(s[0] - k), 1e-15);
    EXPECT_LT(std::abs(s[1] - k * a), 1e-15);
    EXPECT_LT(std::abs(s[2] - k * a * a), 1e-15);
}

TEST(Apply, OutputRereadsAsInput) {
    const auto in = write_temp("rt_in.json", basis_json(3, 3, 14));
    const auto out_path = temp_path("rt_out.json");
    auto r = run_cli({"apply", "--radix", "3", "--digits", "3", "--in", in,
                      "--keep-depth", "2", "--out", out_path});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto first = io::read_state(slurp(out_path));
    std::ostringstream again;
    io::write_state(again, first, io::Format::Json);
    const auto second = io::read_state(again.str());
    for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_LT(std::abs(first[i] - second[i]), 1e-12);
    }
    // The written file can itself be fed back in.
    r = run_cli({"apply", "--radix", "3", "--digits", "3", "--in", out_path});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
}

TEST(Apply, CsvInputUsesFlagsForShape) {
    const auto in = write_temp("b.csv", "index,re,im\n0,0,0\n1,1,0\n");
    const auto r = run_cli({"apply", "--radix", "2", "--digits", "1", "--in", in,
                            "--format", "csv"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_EQ(r.out.rfind("index,re,im\n", 0), 0u);
    const auto s = io::read_state(r.out, 2, 1);
    const double k = 1.0 / std::sqrt(2.0);
    EXPECT_LT(std::abs(s[0] - k), 1e-15);
    EXPECT_LT(std::abs(s[1] + k), 1e-15);
}

TEST(Apply, DistinctDiagnostics) {
    auto r = run_cli({"apply", "--radix", "2", "--digits", "1", "--in",
                      write_temp("bad.json", "{not json")});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("malformed state file"), std::string::npos) << r.err;

    r = run_cli({"apply", "--radix", "2", "--digits", "1", "--in",
                 write_temp("norm.json", "{\"radix\": 2, \"digits\": 1, "
                                         "\"amplitudes\": [[1, 0], [1, 0]]}")});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("state norm violation"), std::string::npos) << r.err;

    r = run_cli({"apply", "--radix", "3", "--digits", "1", "--in",
                 write_temp("shape.json", basis_json(2, 1, 0))});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("state shape mismatch"), std::string::npos) << r.err;

    r = run_cli({"apply", "--radix", "2", "--digits", "1", "--in",
                 temp_path("does_not_exist.json")});
    EXPECT_EQ(r.code, cli::kIoError);

    r = run_cli({"apply", "--radix", "2", "--digits", "1"});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("--in"), std::string::npos);
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

TEST(Bounds, UnboundedIsAllZero) {
    const auto r = run_cli({"bounds", "--radix", "3", "--digits", "4"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (std::size_t c = 5; c < 9; ++c) {
            EXPECT_EQ(rows[i][c], "0");
        }
    }
}

TEST(Bounds, TernaryRow) {
    const auto r = run_cli({"bounds", "--radix", "3", "--digits", "3",
                            "--keep-depth", "2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0][0], "q");
    EXPECT_EQ(rows[0][8], "bound_coppersmith");
    const auto &row = rows[3];
    EXPECT_EQ(row[2], "2");
    EXPECT_NEAR(std::stod(row[5]), 0.46542, 1e-5);
    EXPECT_EQ(row[5], row[7]);
    EXPECT_NEAR(std::stod(row[8]), 1.39626, 1e-5);
    // Rows sorted by target digit.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][2], std::to_string(i - 1));
    }
}

TEST(Bounds, TernaryLimitBelowBinaryAtEqualGap) {
    // Last row of each table has L - m = keep depth.
    for (int depth = 1; depth <= 3; ++depth) {
        const auto b = parse_csv(run_cli({"bounds", "--radix", "2", "--digits",
                                          "6", "--keep-depth",
                                          std::to_string(depth)})
                                     .out);
        const auto t = parse_csv(run_cli({"bounds", "--radix", "3", "--digits",
                                          "6", "--keep-depth",
                                          std::to_string(depth)})
                                     .out);
        const auto &br = b.back();
        const auto &tr = t.back();
        ASSERT_EQ(std::stoi(br[3]) - std::stoi(br[4]), depth);
        ASSERT_EQ(std::stoi(tr[3]) - std::stoi(tr[4]), depth);
        EXPECT_LT(bound_limit(3, depth), bound_limit(2, depth));
        EXPECT_LT(std::stod(tr[7]), bound_limit(3, depth));
        EXPECT_LT(std::stod(br[7]), bound_limit(2, depth));
    }
}

TEST(CompareRadix, Columns) {
    auto rows = parse_csv(
        run_cli({"compare-radix", "--radix", "4", "--digits", "3"}).out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0][5], "qudit_savings_factor");
    EXPECT_EQ(std::stod(rows[2][5]), 2.0);
    EXPECT_EQ(std::stod(rows[1][4]), 1.0);

    rows = parse_csv(
        run_cli({"compare-radix", "--radix", "3", "--digits", "4"}).out);
    EXPECT_EQ(std::stod(rows[2][4]), 5.0625);
}

TEST(Determinism, IdenticalConfigIdenticalBytes) {
    const std::vector<std::vector<std::string>> configs{
        {"gen-matrix", "--radix", "3", "--digits", "3", "--keep-depth", "2"},
        {"bounds", "--radix", "2", "--digits", "5", "--keep-depth", "2"},
        {"verify", "--radix", "5", "--digits", "2"},
        {"compare-radix", "--radix", "5", "--digits", "3"},
    };
    for (const auto &cfg : configs) {
        const auto a = run_cli(cfg);
        const auto b = run_cli(cfg);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
    }
}

int run_binary(const std::string &args) {
    const std::string cmd =
        std::string(QFTQ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_binary("verify --radix 3 --digits 2"), 0);
    EXPECT_EQ(run_binary("verify --radix 3 --digits 2 --tolerance 1e-300"), 1);
    EXPECT_EQ(run_binary("verify --radix 1 --digits 2"), 2);
    EXPECT_EQ(run_binary("apply --radix 2 --digits 1 --in /nonexistent.json"), 3);
}

} // namespace
} // namespace qftq
