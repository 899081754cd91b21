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

// Problem files ("udisc-1") and machine-readable reports.
//
// A problem file is a JSON object
//
//   {"schema_version": "udisc-1", "dim": n, "p0": .., "p1": ..,
//    "rho0": [[[re, im], ...], ...], "rho1": ...}
//
// with matrices stored row-major as nested arrays of [re, im] pairs. Doubles
// are written in shortest round-trip form, so write-then-read is bit-exact.

#ifndef UDISC_IO_HPP
#define UDISC_IO_HPP

#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "udisc/solvers.hpp"

namespace udisc {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kProblemSchema = "udisc-1";
inline constexpr std::string_view kReportSchema = "udisc-report-1";

struct ProblemFile {
    std::string schema_version{kProblemSchema};
    Eigen::Index dim = 0;
    double p0 = 0.5;
    double p1 = 0.5;
    Matrix rho0;
    Matrix rho1;

    friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
        return a.schema_version == b.schema_version && a.dim == b.dim && a.p0 == b.p0 && a.p1 == b.p1 &&
               a.rho0 == b.rho0 && a.rho1 == b.rho1;
    }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

inline Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    parse_fail(where + ": expected a number or an [re, im] pair");
}

}  // namespace detail

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) detail::parse_fail(field + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) detail::parse_fail(field + "[0]: expected an array");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            detail::parse_fail(field + "[" + std::to_string(i) + "]: ragged row");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = detail::complex_from_json(row[static_cast<std::size_t>(k)],
                                                field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

/// Accepts [a, b, ...] with real entries or [re, im] pairs.
inline Vector vector_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) detail::parse_fail(field + ": expected a non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = detail::complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

inline Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
    return out;
}

inline Json problem_to_json(const ProblemFile& f) {
    Json j;
    j["schema_version"] = f.schema_version;
    j["dim"] = f.dim;
    j["p0"] = f.p0;
    j["p1"] = f.p1;
    j["rho0"] = matrix_to_json(f.rho0);
    j["rho1"] = matrix_to_json(f.rho1);
    return j;
}

inline ProblemFile problem_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("top level: expected an object");
    // A machine-format report embeds the problem it solved.
    if (j.contains("schema_version") && j["schema_version"] == std::string(kReportSchema)) {
        if (!j.contains("problem")) detail::parse_fail("report has no embedded problem");
        return problem_from_json(j["problem"]);
    }
    for (const char* key : {"schema_version", "dim", "p0", "p1", "rho0", "rho1"})
        if (!j.contains(key)) detail::parse_fail(std::string("missing field \"") + key + "\"");
    if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kProblemSchema)
        detail::parse_fail("schema_version must be \"" + std::string(kProblemSchema) + "\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        detail::parse_fail("dim: expected a positive integer");
    if (!j["p0"].is_number() || !j["p1"].is_number()) detail::parse_fail("p0/p1: expected numbers");

    ProblemFile f;
    f.schema_version = j["schema_version"].get<std::string>();
    f.dim = static_cast<Eigen::Index>(j["dim"].get<long long>());
    f.p0 = j["p0"].get<double>();
    f.p1 = j["p1"].get<double>();
    f.rho0 = matrix_from_json(j["rho0"], "rho0");
    f.rho1 = matrix_from_json(j["rho1"], "rho1");
    for (const Matrix* m : {&f.rho0, &f.rho1})
        if (m->rows() != f.dim || m->cols() != f.dim)
            detail::parse_fail("matrix shape " + std::to_string(m->rows()) + "x" + std::to_string(m->cols()) +
                               " does not match dim " + std::to_string(f.dim));
    return f;
}

/// Parses JSON text; syntax errors report the line and column.
inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream os;
        os << "line " << line << ", column " << column << ": " << e.what();
        detail::parse_fail(os.str());
    }
}

inline ProblemFile read_problem(std::string_view text) { return problem_from_json(parse_json_text(text)); }

inline std::string write_problem(const ProblemFile& f) { return problem_to_json(f).dump(2) + "\n"; }

inline ProblemFile make_problem_file(const Matrix& rho0, const Matrix& rho1, const Priors& priors) {
    ProblemFile f;
    f.dim = rho0.rows();
    f.p0 = priors.p0();
    f.p1 = priors.p1();
    f.rho0 = rho0;
    f.rho1 = rho1;
    return f;
}

/// Validates both states and reduces the problem. Throws the validation
/// error of the first state that fails (NotHermitian, BadTrace, ...).
inline DiscriminationProblem to_problem(const ProblemFile& f, double tol = kHermitianTol) {
    const Priors priors = Priors::make(f.p0, f.p1);
    return build_problem(validate_density(f.rho0, tol), validate_density(f.rho1, tol), priors);
}

inline Json povm_to_json(const ThreeOutcomePOVM& povm) {
    Json j;
    j["e0"] = matrix_to_json(povm.e0);
    j["e1"] = matrix_to_json(povm.e1);
    j["e_fail"] = matrix_to_json(povm.e_fail);
    return j;
}

/// Machine-format report. The POVM is expressed in the coordinates of the
/// original problem file; `problem` echoes the input so the report can be fed
/// back to `solve`.
inline Json report_to_json(const ProblemFile& input, const DiscriminationProblem& problem,
                           const DiscriminationReport& report) {
    Json j;
    j["schema_version"] = std::string(kReportSchema);
    j["method"] = std::string(to_string(report.method));
    j["p_lower"] = report.p_lower;
    j["p_upper"] = report.p_upper;
    j["gap"] = report.gap();
    j["exact"] = report.exact;
    j["fidelity"] = report.fidelity;
    j["dim"] = problem.original_dim();
    j["reduced_dim"] = problem.dim();
    j["kernel_ranks"] = Json::array({problem.r0(), problem.r1()});
    j["swapped"] = report.swapped;
    j["angles"] = report.angles;
    j["povm"] = povm_to_json(lift_povm(problem, report.povm));
    j["problem"] = problem_to_json(input);
    return j;
}

}  // namespace udisc

#endif  // UDISC_IO_HPP
