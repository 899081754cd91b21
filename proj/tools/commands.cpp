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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

namespace udisc::cli {
namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open " + path + " for writing");
    file << text;
    file.flush();
    if (!file) throw IoFailure("failed writing " + path);
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const IoFailure& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) {
            err << "parse error: " << e.what() << "\n";
            return kExitParse;
        }
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
}

std::string join_angles(const std::vector<double>& angles) {
    std::ostringstream os;
    os << std::setprecision(12);
    for (std::size_t i = 0; i < angles.size(); ++i) os << (i ? ", " : "") << angles[i];
    return angles.empty() ? "(none)" : os.str();
}

Vector normalized(Vector v, const std::string& what) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorKind::NotUnit, what + " has zero or invalid norm");
    return v / norm;
}

void print_report_text(const DiscriminationProblem& problem, const DiscriminationReport& r, std::ostream& out) {
    out << std::setprecision(12);
    out << "method:            " << to_string(r.method) << "\n";
    out << "dimension:         " << problem.original_dim() << " (reduced " << problem.dim() << ")\n";
    out << "kernel ranks:      " << problem.r0() << ", " << problem.r1() << "\n";
    out << "canonical angles:  " << join_angles(r.angles) << "\n";
    out << "fidelity:          " << r.fidelity << "\n";
    out << "P_L:               " << r.p_lower << "\n";
    out << "P_U:               " << r.p_upper << "\n";
    out << "gap:               " << r.gap() << "\n";
    out << "status:            " << (r.exact ? "exact" : "bounds only") << "\n";
}

}  // namespace

std::string random_problem_text(const RandomSpec& spec) {
    if (spec.dim < 1 || spec.rank0 < 1 || spec.rank1 < 1 || spec.rank0 > spec.dim || spec.rank1 > spec.dim)
        throw Error(ErrorKind::InvalidArgument, "random spec needs 1 <= rank0, rank1 <= dim");
    const Priors priors =
        spec.priors ? Priors::make(spec.priors->first, spec.priors->second) : Priors::equal();
    Rng rng(spec.seed);
    const Matrix rho0 = random_density_matrix(spec.dim, spec.rank0, rng);
    const Matrix rho1 = random_density_matrix(spec.dim, spec.rank1, rng);
    return write_problem(make_problem_file(rho0, rho1, priors));
}

int cmd_solve(const std::string& input_path, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile file = read_problem(read_file(input_path));
        const DiscriminationProblem problem = to_problem(file, opts.tol);
        const DiscriminationReport report = solve(problem);
        if (opts.format == Format::Machine)
            out << report_to_json(file, problem, report).dump(2) << "\n";
        else
            print_report_text(problem, report, out);
        return kExitOk;
    });
}

int cmd_random(const RandomSpec& spec, const std::string& output_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        write_output(output_path, random_problem_text(spec), out);
        return kExitOk;
    });
}

int cmd_verify(const std::string& input_path, const OracleConfig& oracle, const CommonOptions& opts,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile file = read_problem(read_file(input_path));
        const DiscriminationProblem problem = to_problem(file, opts.tol);
        const DiscriminationReport report = solve(problem);
        const OracleResult star = oracle_maximize(problem, oracle);
        const bool holds = report.p_lower - kVerifyTol <= star.p_star && star.p_star <= report.p_upper + kVerifyTol;
        if (opts.format == Format::Machine) {
            Json j;
            j["schema_version"] = "udisc-verify-1";
            j["method"] = std::string(to_string(report.method));
            j["p_lower"] = report.p_lower;
            j["p_star"] = star.p_star;
            j["p_upper"] = report.p_upper;
            j["tolerance"] = kVerifyTol;
            j["holds"] = holds;
            j["oracle_iterations"] = star.iterations_used;
            j["oracle_converged"] = star.converged;
            out << j.dump(2) << "\n";
        } else {
            out << std::setprecision(12);
            out << "method:  " << to_string(report.method) << "\n";
            out << "P_L:     " << report.p_lower << "\n";
            out << "P*:      " << star.p_star << (star.converged ? "" : " (oracle did not converge)") << "\n";
            out << "P_U:     " << report.p_upper << "\n";
            out << "verdict: P_L <= P* <= P_U " << (holds ? "holds" : "VIOLATED") << " (tolerance " << kVerifyTol
                << ")\n";
        }
        return holds ? kExitOk : kExitVerifyFailed;
    });
}

int cmd_compare(const std::string& psi1, const std::string& psi2, const std::string& file,
                const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json a;
        Json b;
        if (!file.empty()) {
            const Json j = parse_json_text(read_file(file));
            if (!j.is_object() || !j.contains("psi1") || !j.contains("psi2"))
                throw Error(ErrorKind::Parse, "comparison file needs \"psi1\" and \"psi2\"");
            a = j["psi1"];
            b = j["psi2"];
        } else {
            a = parse_json_text(psi1);
            b = parse_json_text(psi2);
        }
        const ComparisonProblem cp = ComparisonProblem::make(normalized(vector_from_json(a, "psi1"), "psi1"),
                                                             normalized(vector_from_json(b, "psi2"), "psi2"));
        const DiscriminationProblem problem = build_comparison(cp);
        const DiscriminationReport report = solve(problem);
        const double closed = 1.0 - report.fidelity;
        if (opts.format == Format::Machine) {
            Json j;
            j["schema_version"] = "udisc-compare-1";
            j["overlap_abs"] = std::abs(cp.overlap);
            j["closed_form"] = closed;
            j["p_lower"] = report.p_lower;
            j["p_upper"] = report.p_upper;
            j["exact"] = report.exact;
            j["method"] = std::string(to_string(report.method));
            j["angles"] = report.angles;
            out << j.dump(2) << "\n";
        } else {
            out << std::setprecision(12);
            out << "|<psi1|psi2>|:     " << std::abs(cp.overlap) << "\n";
            out << "closed form 1-F:   " << closed << "\n";
            out << "pipeline P_L:      " << report.p_lower << "\n";
            out << "pipeline P_U:      " << report.p_upper << "\n";
            out << "canonical angles:  " << join_angles(report.angles) << "\n";
            out << "status:            " << (report.exact ? "exact" : "bounds only") << "\n";
        }
        return kExitOk;
    });
}

int cmd_filter(const std::string& target, const std::string& others, const std::string& etas,
               const std::string& file, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json jt;
        Json jo;
        Json je;
        if (!file.empty()) {
            const Json j = parse_json_text(read_file(file));
            if (!j.is_object() || !j.contains("target") || !j.contains("others") || !j.contains("etas"))
                throw Error(ErrorKind::Parse, "filter file needs \"target\", \"others\" and \"etas\"");
            jt = j["target"];
            jo = j["others"];
            je = j["etas"];
        } else {
            jt = parse_json_text(target);
            jo = parse_json_text(others);
            je = parse_json_text(etas);
        }
        if (!jo.is_array()) throw Error(ErrorKind::Parse, "others: expected an array of vectors");
        std::vector<Vector> rest;
        for (std::size_t i = 0; i < jo.size(); ++i) {
            const std::string name = "others[" + std::to_string(i) + "]";
            rest.push_back(normalized(vector_from_json(jo[i], name), name));
        }
        if (!je.is_array()) throw Error(ErrorKind::Parse, "etas: expected an array of numbers");
        std::vector<double> priors;
        for (const Json& e : je) {
            if (!e.is_number()) throw Error(ErrorKind::Parse, "etas: expected numbers");
            priors.push_back(e.get<double>());
        }

        const FilteringProblem fp =
            FilteringProblem::make(normalized(vector_from_json(jt, "target"), "target"), std::move(rest), priors);
        const DiscriminationReport report = solve(build_filtering(fp));
        const double closed = filtering_closed_form(fp);
        const FilterBranch branch = filtering_branch(fp);
        if (opts.format == Format::Machine) {
            Json j;
            j["schema_version"] = "udisc-filter-1";
            j["closed_form"] = closed;
            j["branch"] = std::string(to_string(branch));
            j["cos_theta"] = fp.cos_theta;
            j["f_tilde"] = std::isfinite(fp.f_tilde) ? Json(fp.f_tilde) : Json(nullptr);
            j["fidelity"] = fp.fidelity;
            j["p_lower"] = report.p_lower;
            j["p_upper"] = report.p_upper;
            j["exact"] = report.exact;
            j["method"] = std::string(to_string(report.method));
            out << j.dump(2) << "\n";
        } else {
            out << std::setprecision(12);
            out << "branch:            " << to_string(branch) << "\n";
            out << "cos(theta):        " << fp.cos_theta << "\n";
            out << "F~:                " << fp.f_tilde << "\n";
            out << "closed form:       " << closed << "\n";
            out << "pipeline P_L:      " << report.p_lower << "\n";
            out << "pipeline P_U:      " << report.p_upper << "\n";
            out << "difference:        " << std::abs(closed - report.p_lower) << "\n";
            out << "status:            " << (report.exact ? "exact" : "bounds only") << "\n";
        }
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Error-free identification of one of two density matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    double tol = kHermitianTol;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--tol", tol, "Tolerance when validating density matrices")->check(CLI::PositiveNumber);

    std::string input;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
    solve_cmd->add_option("input", input, "Problem file")->required();

    RandomSpec spec;
    std::string output = "-";
    std::vector<double> priors;
    auto* random_cmd = app.add_subcommand("random", "Write a random problem file (Ginibre states)");
    random_cmd->add_option("--dim", spec.dim, "Hilbert space dimension")->required();
    random_cmd->add_option("--rank0", spec.rank0, "Rank of rho0")->required();
    random_cmd->add_option("--rank1", spec.rank1, "Rank of rho1")->required();
    random_cmd->add_option("--priors", priors, "Priors p0 p1 (default equal)")->expected(2);
    random_cmd->add_option("-o,--output", output, "Output path, '-' for stdout");

    OracleConfig oracle;
    auto* verify_cmd = app.add_subcommand("verify", "Check P_L <= P* <= P_U against the numerical oracle");
    verify_cmd->add_option("input", input, "Problem file")->required();
    verify_cmd->add_option("--restarts", oracle.restarts, "Oracle restarts")->check(CLI::PositiveNumber);

    std::uint64_t seed = 0;
    for (auto* cmd : {random_cmd, verify_cmd}) cmd->add_option("--seed", seed, "Random seed");

    std::string psi1, psi2, file;
    auto* compare_cmd = app.add_subcommand("compare", "State comparison of two pure states");
    compare_cmd->add_option("--psi1", psi1, "First state as a JSON array");
    compare_cmd->add_option("--psi2", psi2, "Second state as a JSON array");
    compare_cmd->add_option("--file", file, "JSON file with psi1 and psi2");

    std::string target, others, etas;
    auto* filter_cmd = app.add_subcommand("filter", "Filter one pure state against a set of others");
    filter_cmd->add_option("--target", target, "Target state as a JSON array");
    filter_cmd->add_option("--others", others, "JSON array of the other states");
    filter_cmd->add_option("--etas", etas, "JSON array of priors, target first");
    filter_cmd->add_option("--file", file, "JSON file with target, others and etas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    CommonOptions opts;
    opts.format = format == "machine" ? Format::Machine : Format::Text;
    opts.tol = tol;

    if (*solve_cmd) return cmd_solve(input, opts, out, err);
    if (*random_cmd) {
        spec.seed = seed;
        if (!priors.empty()) spec.priors = std::make_pair(priors[0], priors[1]);
        return cmd_random(spec, output, out, err);
    }
    if (*verify_cmd) {
        oracle.seed = seed;
        return cmd_verify(input, oracle, opts, out, err);
    }
    if (*compare_cmd) {
        if (file.empty() && (psi1.empty() || psi2.empty())) {
            err << "compare needs --psi1 and --psi2, or --file\n";
            return kExitParse;
        }
        return cmd_compare(psi1, psi2, file, opts, out, err);
    }
    if (*filter_cmd) {
        if (file.empty() && (target.empty() || others.empty() || etas.empty())) {
            err << "filter needs --target, --others and --etas, or --file\n";
            return kExitParse;
        }
        return cmd_filter(target, others, etas, file, opts, out, err);
    }
    return kExitParse;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"udisc"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace udisc::cli
