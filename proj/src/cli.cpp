#include "sinkhorn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinkhorn/engine.hpp"
#include "sinkhorn/errors.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/matrix_io.hpp"
#include "sinkhorn/quartic.hpp"

namespace sinkhorn::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kPrecisionEnvVar = "SINKHORN_PRECISION_BITS";

long env_default_precision() {
    if (const char* env = std::getenv(kPrecisionEnvVar)) {
        try {
            long bits = std::stol(env);
            if (bits >= 16 && bits <= 65536) {
                return bits;
            }
        } catch (const std::exception&) {
            // fall through to the built-in default
        }
    }
    return 256;
}

mpfr_prec_t validated_precision(long bits) {
    if (bits < 16 || bits > 65536) {
        throw ParseError("precision must lie in 16..65536 bits");
    }
    return static_cast<mpfr_prec_t>(bits);
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Matrix<Rational> load_matrix(const std::string& path, bool csv) {
    const std::string text = read_input(path);
    return csv ? parse_matrix_csv(text) : parse_matrix_json(text);
}

ordered_json diag_json(const DiagonalFactor<Rational>& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : d.diag()) {
        arr.push_back(v.str());
    }
    return arr;
}

ordered_json diag_json(const DiagonalFactor<BigFloat>& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : d.diag()) {
        arr.push_back(v.str());
    }
    return arr;
}

ordered_json poly_json(const UniPoly& p, const std::string& var) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : p.coeffs()) {
        coeffs.push_back(c.str());
    }
    return ordered_json{{"coefficients", coeffs}, {"text", p.str(var)}};
}

ordered_json make_report(const std::string& command, const ordered_json& input, ordered_json result,
                         ordered_json diagnostics) {
    return ordered_json{
        {"command", command},
        {"input_digest", input.dump()},
        {"result", std::move(result)},
        {"diagnostics", std::move(diagnostics)},
    };
}

void emit(const ordered_json& report, std::ostream& out) {
    out << report.dump(2) << "\n";
}

// ---------------------------------------------------------------- scale ----

struct ScaleOptions {
    std::string file;
    bool csv = false;
    bool exact = false;
    std::string tol = "1e-30";
    long max_half_steps = -1; // resolved per mode below
    long precision = env_default_precision();
};

int cmd_scale(const ScaleOptions& opt, std::ostream& out, std::ostream& err) {
    Matrix<Rational> a = load_matrix(opt.file, opt.csv);
    // Exact runs default to a small budget: per-entry numerators and
    // denominators grow quickly when the iteration does not terminate.
    const long max_steps = opt.max_half_steps > 0 ? opt.max_half_steps : (opt.exact ? 64 : 100000);

    ordered_json input{{"matrix", matrix_to_json(a)},
                       {"exact", opt.exact},
                       {"tol", opt.exact ? "0" : opt.tol},
                       {"max_half_steps", max_steps},
                       {"precision_bits", opt.exact ? 0 : opt.precision}};

    ordered_json result;
    ordered_json diagnostics;
    bool converged = false;
    if (opt.exact) {
        auto run = sinkhorn_iterate(a, Rational(0), max_steps);
        converged = run.converged;
        result["S"] = matrix_entries_json(run.limit);
        result["X"] = diag_json(run.row_factor);
        result["Y"] = diag_json(run.col_factor);
        result["half_steps"] = run.half_steps;
        result["residual"] = run.residual.str();
        result["terminated_finitely"] = run.terminated_finitely;
        result["converged"] = run.converged;
        result["finite_termination_half_steps"] =
            run.terminated_finitely ? ordered_json(run.half_steps) : ordered_json(nullptr);
        diagnostics["scalar_kind"] = "exact";
    } else {
        const mpfr_prec_t prec = validated_precision(opt.precision);
        const BigFloat tol = BigFloat::parse(opt.tol, prec);
        if (tol.sign() <= 0) {
            throw ParseError("tol must be positive");
        }
        auto run = sinkhorn_iterate(to_float(a, prec), tol, max_steps);
        converged = run.converged;
        result["S"] = matrix_entries_json(run.limit);
        result["X"] = diag_json(run.row_factor);
        result["Y"] = diag_json(run.col_factor);
        result["half_steps"] = run.half_steps;
        result["residual"] = run.residual.str();
        result["terminated_finitely"] = run.terminated_finitely;
        result["converged"] = run.converged;
        diagnostics["scalar_kind"] = "float";
        diagnostics["precision_bits"] = opt.precision;
    }
    diagnostics["warnings"] = ordered_json::array();
    if (!converged) {
        diagnostics["warnings"].push_back("half-step budget exhausted before convergence");
        err << "warning: not converged within " << max_steps << " half-steps\n";
    }
    emit(make_report("scale", input, std::move(result), std::move(diagnostics)), out);
    return converged ? kOk : kNotConverged;
}

// --------------------------------------------------------------- exact3 ----

struct Exact3Options {
    std::string file;
    bool csv = false;
    std::vector<std::string> kl;
    std::vector<std::string> klm;
    long precision = env_default_precision();
};

int cmd_exact3(const Exact3Options& opt, std::ostream& out, std::ostream& err) {
    const mpfr_prec_t prec = validated_precision(opt.precision);
    std::optional<QuarticSpec> quartic;
    std::optional<Matrix<Rational>> a;
    ordered_json input;
    if (!opt.kl.empty()) {
        const Rational k = Rational::parse(opt.kl[0]);
        const Rational l = Rational::parse(opt.kl[1]);
        a = kl_matrix(k, l);
        quartic = build_quartic_kl(k, l);
        input["kl"] = {k.str(), l.str()};
    } else if (!opt.klm.empty()) {
        const Rational k = Rational::parse(opt.klm[0]);
        const Rational l = Rational::parse(opt.klm[1]);
        const Rational m = Rational::parse(opt.klm[2]);
        a = klm_matrix(k, l, m);
        try {
            quartic = build_quartic_klm(k, l, m);
        } catch (const DegenerateQuarticError&) {
            // all-coefficients-zero falls through to the fallback path
        }
        input["klm"] = {k.str(), l.str(), m.str()};
    } else {
        a = load_matrix(opt.file, opt.csv);
    }
    input["matrix"] = matrix_to_json(*a);
    input["precision_bits"] = opt.precision;

    Exact3Result r = exact_limit3(*a, quartic, prec);

    ordered_json result;
    if (r.quartic) {
        result["quartic"] = ordered_json{{"c0", r.quartic->c[0].str()},
                                         {"c1", r.quartic->c[1].str()},
                                         {"c2", r.quartic->c[2].str()},
                                         {"c3", r.quartic->c[3].str()},
                                         {"c4", r.quartic->c[4].str()},
                                         {"provenance", r.quartic->provenance}};
    }
    if (r.root) {
        result["root_interval"] = ordered_json{{"lo", r.root->interval.lo.str()},
                                               {"hi", r.root->interval.hi.str()},
                                               {"multiplicity", r.root->interval.multiplicity}};
        result["z"] = r.root->z.str();
        result["z_exact"] = r.root->z_exact ? ordered_json(r.root->z_exact->str()) : ordered_json(nullptr);
        const Rational& a11 = a->at(0, 0);
        result["s11"] = (BigFloat::from_rational(a11, prec) * r.root->z).str();
        result["s11_exact"] =
            r.root->z_exact ? ordered_json((a11 * *r.root->z_exact).str()) : ordered_json(nullptr);
    }
    if (r.algebraic) {
        result["S"] = matrix_entries_json(r.algebraic->limit);
        result["X"] = diag_json(r.algebraic->factor);
        ordered_json res = ordered_json::array();
        for (const auto& v : r.algebraic->row_residuals) {
            res.push_back(v.str());
        }
        result["row_residuals"] = res;
    }
    if (r.rank1_limit) {
        result["S"] = matrix_entries_json(*r.rank1_limit);
        result["X"] = diag_json(*r.rank1_factor);
        result["fallback"] = "rank1";
    }
    if (r.numeric_fallback) {
        result["S"] = matrix_entries_json(r.numeric_fallback->limit);
        result["X"] = diag_json(r.numeric_fallback->row_factor);
        result["fallback"] = "numeric_balance";
    }
    result["oracle_delta"] = r.oracle_delta ? ordered_json(r.oracle_delta->str()) : ordered_json(nullptr);

    ordered_json diagnostics{{"precision_bits", opt.precision}, {"warnings", r.warnings}};
    for (const auto& w : r.warnings) {
        err << "warning: " << w << "\n";
    }
    emit(make_report("exact3", input, std::move(result), std::move(diagnostics)), out);
    return kOk;
}

// ------------------------------------------------------------ family-ar ----

struct FamilyOptions {
    std::string r;
    bool symbolic = false;
    int k = 0;
    long precision = env_default_precision();
};

int cmd_family_ar(const FamilyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.symbolic) {
        if (opt.k < 1 || opt.k > 6) {
            throw ParseError("--k must lie in 1..6");
        }
        ordered_json input{{"symbolic", true}, {"k", opt.k}};
        NumeratorComparison cmp = compare_row_sum_numerator(opt.k);
        ordered_json result{
            {"k", opt.k},
            {"numerator", poly_json(cmp.numerator, "r")},
            {"denominator", poly_json(cmp.denominator, "r")},
            {"target", poly_json(cmp.target, "r")},
            {"match", cmp.proportional},
            {"scale", cmp.scale ? ordered_json(cmp.scale->str()) : ordered_json(nullptr)},
        };
        ordered_json diagnostics{{"warnings", ordered_json::array()}};
        if (cmp.proportional && cmp.scale && !(*cmp.scale == Rational(1))) {
            diagnostics["warnings"].push_back("numerator matches the closed form up to the constant " +
                                              cmp.scale->str());
        }
        emit(make_report("family-ar", input, std::move(result), std::move(diagnostics)), out);
        return kOk;
    }

    const Rational r = Rational::parse(opt.r);
    if (r.sign() <= 0) {
        throw ParseError("--r must be positive");
    }
    const mpfr_prec_t prec = validated_precision(opt.precision);
    ordered_json input{{"symbolic", false}, {"r", r.str()}, {"precision_bits", opt.precision}};

    Matrix<Rational> a = ar_matrix(r);
    Matrix<Rational> s = ar_limit(r);
    DiagonalFactor<BigFloat> x = ar_diagonal(r, prec);
    auto x_exact = ar_diagonal_exact(r);

    // max |(X A X)_ij - S_ij| at the working precision
    Matrix<BigFloat> xax = scale_cols(scale_rows(x, to_float(a, prec)), x);
    BigFloat residual(0, prec);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            BigFloat dev = (xax.at(i, j) - BigFloat::from_rational(s.at(i, j), prec)).abs();
            if (dev > residual) {
                residual = std::move(dev);
            }
        }
    }

    ordered_json x_json = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
        x_json.push_back(x_exact[static_cast<std::size_t>(i)] ? ordered_json(x_exact[static_cast<std::size_t>(i)]->str())
                                                              : ordered_json(x[i].str()));
    }
    ordered_json result{
        {"A", matrix_entries_json(a)},
        {"S", matrix_entries_json(s)},
        {"X", x_json},
        {"identity_residual", residual.str()},
    };
    ordered_json diagnostics{{"precision_bits", opt.precision}, {"warnings", ordered_json::array()}};
    (void)err;
    emit(make_report("family-ar", input, std::move(result), std::move(diagnostics)), out);
    return kOk;
}

// ------------------------------------------------------------- gen-term ----

struct GenTermOptions {
    std::vector<std::string> row1;
    std::string t;
    long count = 0;
    std::uint64_t seed = 0;
};

ordered_json example_json(const TerminationExample& ex, long verified_steps) {
    return ordered_json{
        {"M", matrix_entries_json(ex.m)},
        {"A", matrix_entries_json(ex.a)},
        {"S", matrix_entries_json(ex.s)},
        {"half_steps", ex.half_steps},
        {"verified_half_steps", verified_steps},
        {"verified", verified_steps == ex.half_steps},
    };
}

int cmd_gen_term(const GenTermOptions& opt, std::ostream& out, std::ostream& err) {
    ordered_json input;
    ordered_json examples = ordered_json::array();
    bool all_verified = true;
    const auto verify = [&](const TerminationExample& ex) {
        auto steps = detect_finite_termination(ex.m, 10);
        long got = steps ? *steps : -1;
        all_verified = all_verified && got == ex.half_steps;
        examples.push_back(example_json(ex, got));
    };

    if (!opt.row1.empty()) {
        const std::array<Rational, 3> row1 = {Rational::parse(opt.row1[0]), Rational::parse(opt.row1[1]),
                                              Rational::parse(opt.row1[2])};
        const Rational t = Rational::parse(opt.t);
        input["row1"] = {row1[0].str(), row1[1].str(), row1[2].str()};
        input["t"] = t.str();
        verify(generate_finite_termination(row1, t));
    } else {
        input["count"] = opt.count;
        input["seed"] = opt.seed;
        for (long i = 0; i < opt.count; ++i) {
            verify(sample_finite_termination(opt.seed, static_cast<std::uint64_t>(i)));
        }
    }
    ordered_json result{{"examples", std::move(examples)}};
    ordered_json diagnostics{{"warnings", ordered_json::array()}};
    if (!all_verified) {
        diagnostics["warnings"].push_back("an example failed exact verification");
        err << "warning: generated example failed exact verification\n";
    }
    emit(make_report("gen-term", input, std::move(result), std::move(diagnostics)), out);
    return all_verified ? kOk : kFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sinkhorn scaling toolkit: numeric iteration, exact finite-termination "
                 "detection, exact 3x3 symmetric limits, and the one-parameter family."};
    app.require_subcommand(1);

    ScaleOptions scale_opt;
    CLI::App* scale = app.add_subcommand("scale", "Alternating row/column normalization");
    scale->add_option("matrix", scale_opt.file, "matrix file (JSON; '-' for stdin)")->required();
    scale->add_flag("--csv", scale_opt.csv, "parse the file as CSV of rational strings");
    scale->add_flag("--exact", scale_opt.exact, "iterate in exact rational arithmetic (tol = 0)");
    scale->add_option("--tol", scale_opt.tol, "convergence tolerance (float mode)");
    scale->add_option("--max-steps", scale_opt.max_half_steps, "half-step budget");
    scale->add_option("--precision", scale_opt.precision, "float mantissa bits");

    Exact3Options exact3_opt;
    CLI::App* exact3 = app.add_subcommand("exact3", "Exact limit of a symmetric 3x3 matrix");
    exact3->add_option("matrix", exact3_opt.file, "matrix file (JSON; '-' for stdin)");
    exact3->add_flag("--csv", exact3_opt.csv, "parse the file as CSV of rational strings");
    exact3->add_option("--kl", exact3_opt.kl, "pattern (K,1,1 / 1,L,1 / 1,1,1)")->expected(2);
    exact3->add_option("--klm", exact3_opt.klm, "pattern (K,1,1 / 1,L,1 / 1,1,M)")->expected(3);
    exact3->add_option("--precision", exact3_opt.precision, "float mantissa bits");

    FamilyOptions family_opt;
    CLI::App* family = app.add_subcommand("family-ar", "One-parameter family with closed-form limit");
    family->add_option("--r", family_opt.r, "family parameter (positive rational)");
    family->add_flag("--symbolic", family_opt.symbolic, "compare the symbolic row-sum difference");
    family->add_option("--k", family_opt.k, "number of symbolic double steps (1..6)");
    family->add_option("--precision", family_opt.precision, "float mantissa bits");

    GenTermOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen-term", "Generate finite-termination examples");
    gen->add_option("--row1", gen_opt.row1, "first row of the target limit")->expected(3);
    gen->add_option("--t", gen_opt.t, "perturbation in (-1,1/2), nonzero");
    gen->add_option("--count", gen_opt.count, "number of seeded random examples");
    gen->add_option("--seed", gen_opt.seed, "sampling seed");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (scale->parsed()) {
            return cmd_scale(scale_opt, out, err);
        }
        if (exact3->parsed()) {
            const int sources = (exact3_opt.file.empty() ? 0 : 1) + (exact3_opt.kl.empty() ? 0 : 1) +
                                (exact3_opt.klm.empty() ? 0 : 1);
            if (sources != 1) {
                throw ParseError("exact3 needs exactly one of: matrix file, --kl, --klm");
            }
            return cmd_exact3(exact3_opt, out, err);
        }
        if (family->parsed()) {
            if (family_opt.symbolic == !family_opt.r.empty()) {
                throw ParseError("family-ar needs either --r or --symbolic --k");
            }
            return cmd_family_ar(family_opt, out, err);
        }
        if (gen->parsed()) {
            const bool explicit_mode = !gen_opt.row1.empty() || !gen_opt.t.empty();
            if (explicit_mode && (gen_opt.row1.size() != 3 || gen_opt.t.empty())) {
                throw ParseError("gen-term needs --row1 A B C together with --t");
            }
            if (!explicit_mode && gen_opt.count <= 0) {
                throw ParseError("gen-term needs --row1/--t or a positive --count");
            }
            return cmd_gen_term(gen_opt, out, err);
        }
        err << "error: no subcommand\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const InvalidRowError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const InvalidTError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const NotSymmetricError& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const ExpressionTooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

} // namespace sinkhorn::cli
