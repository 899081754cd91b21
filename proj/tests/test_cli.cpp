// Copyright 2026 The udisc Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "test_support.hpp"

namespace udisc::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string Sample(const std::string& name) { return std::string(UDISC_SAMPLES_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("udisc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string Write(const std::string& name, const std::string& text) const {
        const std::string path = (dir_ / name).string();
        std::ofstream(path) << text;
        return path;
    }

    std::filesystem::path dir_;
};

TEST_F(CliTest, SolveOrthogonalKernelExample) {
    const Result r = Invoke({"solve", Sample("orthogonal_kernels.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("exact"), std::string::npos);
    EXPECT_NE(r.out.find("0.5"), std::string::npos);
}

TEST_F(CliTest, SolveIdenticalStates) {
    const Result r = Invoke({"--format", "machine", "solve", Sample("identical_states.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j["p_lower"].get<double>(), 0.0);
    EXPECT_NEAR(j["p_upper"].get<double>(), 0.0, 1e-12);
}

TEST_F(CliTest, SolveRandomReportsBothBounds) {
    const std::string path = (dir_ / "r.json").string();
    ASSERT_EQ(Invoke({"random", "--dim", "4", "--rank0", "2", "--rank1", "2", "--seed", "3", "-o", path}).code,
              kExitOk);
    const Result r = Invoke({"solve", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("P_L"), std::string::npos);
    EXPECT_NE(r.out.find("P_U"), std::string::npos);
    EXPECT_NE(r.out.find("gap"), std::string::npos);
}

TEST_F(CliTest, MachineOutputIsIdempotent) {
    const Result first = Invoke({"solve", "--format", "machine", Sample("pure_pair.json")});
    ASSERT_EQ(first.code, kExitOk) << first.err;
    const std::string path = Write("report.json", first.out);
    const Result second = Invoke({"solve", "--format", "machine", path});
    ASSERT_EQ(second.code, kExitOk) << second.err;
    EXPECT_EQ(first.out, second.out);
}

TEST_F(CliTest, RandomIsDeterministic) {
    const std::vector<std::string> args{"random", "--dim", "4", "--rank0", "2", "--rank1", "2", "--seed", "7"};
    const Result a = Invoke(args);
    const Result b = Invoke(args);
    ASSERT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, Invoke({"random", "--dim", "4", "--rank0", "2", "--rank1", "2", "--seed", "8"}).out);
}

TEST_F(CliTest, RandomFullRankHasNoKernel) {
    const std::string path = (dir_ / "full.json").string();
    ASSERT_EQ(Invoke({"random", "--dim", "3", "--rank0", "3", "--rank1", "1", "-o", path}).code, kExitOk);
    const Result r = Invoke({"--format", "machine", "solve", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(parse_json_text(r.out)["kernel_ranks"][0].get<int>(), 0);
}

TEST_F(CliTest, RandomWithPriors) {
    const Result r = Invoke({"random", "--dim", "3", "--rank0", "1", "--rank1", "2", "--priors", "0.25", "0.75"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const ProblemFile f = read_problem(r.out);
    EXPECT_EQ(f.p0, 0.25);
    EXPECT_EQ(f.p1, 0.75);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(Invoke({"random", "--dim", "3", "--rank0", "1", "--rank1", "1", "-o", "/nonexistent/dir/x.json"}).code,
              kExitIo);
    EXPECT_EQ(Invoke({"random", "--dim", "3", "--rank0", "4", "--rank1", "1"}).code, kExitValidation);
    EXPECT_EQ(Invoke({"solve", (dir_ / "missing.json").string()}).code, kExitIo);
    EXPECT_EQ(Invoke({"solve", Write("corrupt.json", "{\"schema_version\": \"udisc-1\", ")}).code, kExitParse);
    EXPECT_EQ(Invoke({"verify", Write("corrupt2.json", "not json")}).code, kExitParse);
    const Result bad = Invoke({"solve", Write("bad.json", R"({"schema_version": "udisc-1", "dim": 2, "p0": 0.5,
        "p1": 0.5, "rho0": [[0.5, 0.2], [0, 0.5]], "rho1": [[1, 0], [0, 0]]})")});
    EXPECT_EQ(bad.code, kExitValidation);
    EXPECT_NE(bad.err.find("NotHermitian"), std::string::npos) << bad.err;
    EXPECT_EQ(Invoke({"frobnicate"}).code, kExitParse);
    EXPECT_EQ(Invoke({}).code, kExitParse);
    EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
    EXPECT_EQ(Invoke({"--format", "xml", "solve", Sample("pure_pair.json")}).code, kExitParse);
}

TEST_F(CliTest, ParseErrorsCarryLineDiagnostics) {
    const Result r = Invoke({"solve", Write("lines.json", "{\n\"dim\": 2,\n\"p0\": ]\n}")});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerifyPureStates) {
    const Result r = Invoke({"--format", "machine", "verify", Sample("pure_pair.json"), "--restarts", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j["p_lower"].get<double>(), 0.5, 1e-4);
    EXPECT_NEAR(j["p_star"].get<double>(), 0.5, 1e-4);
    EXPECT_NEAR(j["p_upper"].get<double>(), 0.5, 1e-4);
    EXPECT_TRUE(j["holds"].get<bool>());
}

TEST_F(CliTest, VerifyComparisonDerivedFile) {
    const ComparisonProblem cp = ComparisonProblem::make(
        testing::basis_vector(2, 0), (testing::basis_vector(2, 0) + testing::basis_vector(2, 1)).normalized());
    const DiscriminationProblem p = build_comparison(cp);
    const std::string path = Write("cmp.json", write_problem(make_problem_file(p.rho0.matrix(), p.rho1.matrix(),
                                                                               p.priors)));
    const Result r = Invoke({"verify", path, "--format", "machine", "--restarts", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j["p_lower"].get<double>(), j["p_star"].get<double>(), 1e-4);
    EXPECT_NEAR(j["p_upper"].get<double>(), j["p_star"].get<double>(), 1e-4);
}

TEST_F(CliTest, CompareOrthogonalStates) {
    const Result r = Invoke({"compare", "--psi1", "[1, 0]", "--psi2", "[0, 1]", "--format", "machine"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j["p_lower"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(j["closed_form"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, CompareFromFileAndComplexEntries) {
    const Result r = Invoke({"compare", "--file", Sample("compare.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("closed form"), std::string::npos);
    const Result c = Invoke({"compare", "--psi1", "[[1, 0], [0, 0]]", "--psi2", "[[0.6, 0], [0, 0.8]]"});
    EXPECT_EQ(c.code, kExitOk) << c.err;
    EXPECT_EQ(Invoke({"compare", "--psi1", "[1, 0]", "--psi2", "[0, 1"}).code, kExitParse);
    EXPECT_EQ(Invoke({"compare", "--psi1", "[1, 0]", "--psi2", "[2, 0]"}).code, kExitValidation);
    EXPECT_EQ(Invoke({"compare", "--psi1", "[1, 0]"}).code, kExitParse);
}

TEST_F(CliTest, FilterOrthogonalTarget) {
    const Result r = Invoke({"filter", "--target", "[1, 0]", "--others", "[[0, 1]]", "--etas", "[0.5, 0.5]",
                          "--format", "machine"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j["closed_form"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(j["p_lower"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, FilterGenericTriple) {
    const Result r = Invoke({"filter", "--file", Sample("filter.json"), "--format", "machine"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j["closed_form"].get<double>(), j["p_lower"].get<double>(), 1e-9);
    EXPECT_EQ(Invoke({"filter", "--target", "[1, 0]", "--others", "[]", "--etas", "[1]"}).code, kExitValidation);
    EXPECT_EQ(Invoke({"filter", "--target", "[1, 0]", "--others", "[[0, 1]]", "--etas", "[0.9, 0.9]"}).code,
              kExitValidation);
}

}  // namespace
}  // namespace udisc::cli
