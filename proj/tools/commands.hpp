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

#ifndef UDISC_TOOLS_COMMANDS_HPP
#define UDISC_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "udisc/udisc.hpp"

namespace udisc::cli {

// Exit-code ladder.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitVerifyFailed = 5;

/// Bracketing slack used by `verify`.
inline constexpr double kVerifyTol = 1e-6;

enum class Format { Text, Machine };

struct CommonOptions {
    Format format = Format::Text;
    double tol = kHermitianTol;
};

struct RandomSpec {
    Eigen::Index dim = 4;
    Eigen::Index rank0 = 2;
    Eigen::Index rank1 = 2;
    std::uint64_t seed = 0;
    std::optional<std::pair<double, double>> priors;
};

/// Deterministic random problem file contents for a spec.
std::string random_problem_text(const RandomSpec& spec);

int cmd_solve(const std::string& input_path, const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_random(const RandomSpec& spec, const std::string& output_path, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& input_path, const OracleConfig& oracle, const CommonOptions& opts,
               std::ostream& out, std::ostream& err);

/// Vectors are JSON arrays of numbers or [re, im] pairs; they are normalised
/// before use. If `file` is non-empty the arguments are read from it instead.
int cmd_compare(const std::string& psi1, const std::string& psi2, const std::string& file,
                const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_filter(const std::string& target, const std::string& others, const std::string& etas,
               const std::string& file, const CommonOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace udisc::cli

#endif  // UDISC_TOOLS_COMMANDS_HPP
