#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sinkhorn/engine.hpp"
#include "sinkhorn/errors.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/quartic.hpp"
#include "sinkhorn/roots.hpp"

namespace py = pybind11;
using namespace sinkhorn;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

Matrix<Rational> matrix_from_strings(const StrMatrix& rows) {
    std::vector<std::vector<Rational>> parsed;
    parsed.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Rational> r;
        r.reserve(row.size());
        for (const auto& cell : row) {
            r.push_back(Rational::parse(cell));
        }
        parsed.push_back(std::move(r));
    }
    return Matrix<Rational>::from_rows(parsed);
}

StrMatrix matrix_to_strings(const Matrix<Rational>& a) {
    StrMatrix rows;
    for (int i = 0; i < a.size(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < a.size(); ++j) {
            row.push_back(a.at(i, j).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

StrMatrix matrix_to_strings(const Matrix<BigFloat>& a) {
    StrMatrix rows;
    for (int i = 0; i < a.size(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < a.size(); ++j) {
            row.push_back(a.at(i, j).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> diag_to_strings(const DiagonalFactor<Rational>& d) {
    std::vector<std::string> out;
    for (const auto& v : d.diag()) {
        out.push_back(v.str());
    }
    return out;
}

std::vector<std::string> diag_to_strings(const DiagonalFactor<BigFloat>& d) {
    std::vector<std::string> out;
    for (const auto& v : d.diag()) {
        out.push_back(v.str());
    }
    return out;
}

template <class Scalar>
py::dict scaling_result_dict(const ScalingResult<Scalar>& r) {
    py::dict d;
    d["S"] = matrix_to_strings(r.limit);
    d["X"] = diag_to_strings(r.row_factor);
    d["Y"] = diag_to_strings(r.col_factor);
    d["half_steps"] = r.half_steps;
    d["residual"] = r.residual.str();
    d["terminated_finitely"] = r.terminated_finitely;
    d["converged"] = r.converged;
    return d;
}

py::dict scale(const StrMatrix& entries, bool exact, const std::string& tol, long max_half_steps, long precision) {
    Matrix<Rational> a = matrix_from_strings(entries);
    if (exact) {
        return scaling_result_dict(sinkhorn_iterate(a, Rational(0), max_half_steps));
    }
    const auto prec = static_cast<mpfr_prec_t>(precision);
    return scaling_result_dict(sinkhorn_iterate(to_float(a, prec), BigFloat::parse(tol, prec), max_half_steps));
}

py::dict balance(const StrMatrix& entries, const std::string& tol, long max_steps, long precision) {
    Matrix<Rational> a = matrix_from_strings(entries);
    const auto prec = static_cast<mpfr_prec_t>(precision);
    return scaling_result_dict(symmetric_balance(a, prec, BigFloat::parse(tol, prec), max_steps));
}

std::optional<long> detect(const StrMatrix& entries, long max_half_steps) {
    return detect_finite_termination(matrix_from_strings(entries), max_half_steps);
}

py::dict exact3_common(const Matrix<Rational>& a, std::optional<QuarticSpec> q, long precision) {
    Exact3Result r = exact_limit3(a, std::move(q), static_cast<mpfr_prec_t>(precision));
    py::dict d;
    if (r.quartic) {
        std::vector<std::string> coeffs;
        for (const auto& c : r.quartic->c) {
            coeffs.push_back(c.str());
        }
        d["quartic"] = coeffs;
    }
    if (r.root) {
        d["z"] = r.root->z.str();
        d["z_exact"] = r.root->z_exact ? py::object(py::str(r.root->z_exact->str())) : py::object(py::none());
        d["root_interval"] = py::make_tuple(r.root->interval.lo.str(), r.root->interval.hi.str(),
                                            r.root->interval.multiplicity);
    }
    if (r.algebraic) {
        d["S"] = matrix_to_strings(r.algebraic->limit);
        d["X"] = diag_to_strings(r.algebraic->factor);
    }
    if (r.rank1_limit) {
        d["S"] = matrix_to_strings(*r.rank1_limit);
        d["X"] = diag_to_strings(*r.rank1_factor);
        d["fallback"] = "rank1";
    }
    if (r.numeric_fallback) {
        d["S"] = matrix_to_strings(r.numeric_fallback->limit);
        d["X"] = diag_to_strings(r.numeric_fallback->row_factor);
        d["fallback"] = "numeric_balance";
    }
    if (r.oracle_delta) {
        d["oracle_delta"] = r.oracle_delta->str();
    }
    d["warnings"] = r.warnings;
    return d;
}

py::dict exact3(const StrMatrix& entries, long precision) {
    return exact3_common(matrix_from_strings(entries), std::nullopt, precision);
}

py::dict exact3_kl(const std::string& k, const std::string& l, long precision) {
    const Rational kq = Rational::parse(k);
    const Rational lq = Rational::parse(l);
    return exact3_common(kl_matrix(kq, lq), build_quartic_kl(kq, lq), precision);
}

py::dict exact3_klm(const std::string& k, const std::string& l, const std::string& m, long precision) {
    const Rational kq = Rational::parse(k);
    const Rational lq = Rational::parse(l);
    const Rational mq = Rational::parse(m);
    std::optional<QuarticSpec> q;
    try {
        q = build_quartic_klm(kq, lq, mq);
    } catch (const DegenerateQuarticError&) {
        // fallback path inside exact_limit3
    }
    return exact3_common(klm_matrix(kq, lq, mq), std::move(q), precision);
}

py::dict family_ar(const std::string& r, long precision) {
    const Rational rq = Rational::parse(r);
    py::dict d;
    d["A"] = matrix_to_strings(ar_matrix(rq));
    d["S"] = matrix_to_strings(ar_limit(rq));
    d["X"] = diag_to_strings(ar_diagonal(rq, static_cast<mpfr_prec_t>(precision)));
    return d;
}

py::dict family_ar_symbolic(int k) {
    NumeratorComparison cmp = compare_row_sum_numerator(k);
    py::dict d;
    d["numerator"] = cmp.numerator.str("r");
    d["denominator"] = cmp.denominator.str("r");
    d["target"] = cmp.target.str("r");
    d["match"] = cmp.proportional;
    d["scale"] = cmp.scale ? py::object(py::str(cmp.scale->str())) : py::object(py::none());
    return d;
}

py::dict gen_term(const std::vector<std::string>& row1, const std::string& t) {
    const TerminationExample ex = generate_finite_termination(
        {Rational::parse(row1.at(0)), Rational::parse(row1.at(1)), Rational::parse(row1.at(2))}, Rational::parse(t));
    py::dict d;
    d["M"] = matrix_to_strings(ex.m);
    d["A"] = matrix_to_strings(ex.a);
    d["S"] = matrix_to_strings(ex.s);
    d["half_steps"] = ex.half_steps;
    return d;
}

py::list isolate_roots(const std::vector<std::string>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) {
        c.push_back(Rational::parse(s));
    }
    py::list out;
    for (const auto& iv : isolate_positive_roots(UniPoly(std::move(c)))) {
        out.append(py::make_tuple(iv.lo.str(), iv.hi.str(), iv.multiplicity));
    }
    return out;
}

py::tuple row_normalized(const StrMatrix& entries) {
    auto [m, d] = row_normalize(matrix_from_strings(entries));
    return py::make_tuple(matrix_to_strings(m), diag_to_strings(d));
}

py::tuple col_normalized(const StrMatrix& entries) {
    auto [m, d] = col_normalize(matrix_from_strings(entries));
    return py::make_tuple(matrix_to_strings(m), diag_to_strings(d));
}

bool doubly_stochastic(const StrMatrix& entries, const std::string& tol) {
    return is_doubly_stochastic(matrix_from_strings(entries), Rational::parse(tol));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sinkhorn scaling: exact and high-precision matrix balancing. "
              "Exact values travel as rational strings 'p/q'; approximations as decimal strings.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NotSymmetricError>(m, "NotSymmetricError", PyExc_ValueError);
    py::register_exception<InvalidRowError>(m, "InvalidRowError", PyExc_ValueError);
    py::register_exception<InvalidTError>(m, "InvalidTError", PyExc_ValueError);
    py::register_exception<DegenerateQuarticError>(m, "DegenerateQuarticError", PyExc_ArithmeticError);
    py::register_exception<NoValidRootError>(m, "NoValidRootError", PyExc_ArithmeticError);
    py::register_exception<ExpressionTooLargeError>(m, "ExpressionTooLargeError", PyExc_RuntimeError);

    m.def("scale", &scale, py::arg("entries"), py::arg("exact") = false, py::arg("tol") = "1e-30",
          py::arg("max_half_steps") = 100000, py::arg("precision") = 256,
          "Alternating row/column normalization; returns S, X, Y and run statistics.");
    m.def("symmetric_balance", &balance, py::arg("entries"), py::arg("tol") = "1e-30",
          py::arg("max_steps") = 100000, py::arg("precision") = 256,
          "Finds X with X*A*X doubly stochastic for symmetric positive A.");
    m.def("detect_finite_termination", &detect, py::arg("entries"), py::arg("max_half_steps") = 64,
          "First half-step count at which exact iteration is doubly stochastic, or None.");
    m.def("exact3", &exact3, py::arg("entries"), py::arg("precision") = 256,
          "Exact limit of a symmetric positive 3x3 matrix via its scaling quartic.");
    m.def("exact3_kl", &exact3_kl, py::arg("k"), py::arg("l"), py::arg("precision") = 256);
    m.def("exact3_klm", &exact3_klm, py::arg("k"), py::arg("l"), py::arg("m"), py::arg("precision") = 256);
    m.def("family_ar", &family_ar, py::arg("r"), py::arg("precision") = 256,
          "Closed-form A(r), S(r), X(r) of the one-parameter family.");
    m.def("family_ar_symbolic", &family_ar_symbolic, py::arg("k"),
          "Symbolic row-sum difference after k double steps vs its closed form.");
    m.def("generate_finite_termination", &gen_term, py::arg("row1"), py::arg("t"),
          "Two-half-step termination example from a first row and perturbation t.");
    m.def("isolate_positive_roots", &isolate_roots, py::arg("coefficients"),
          "Isolating intervals (lo, hi, multiplicity) for positive roots; coefficients lowest-first.");
    m.def("row_normalize", &row_normalized, py::arg("entries"));
    m.def("col_normalize", &col_normalized, py::arg("entries"));
    m.def("is_doubly_stochastic", &doubly_stochastic, py::arg("entries"), py::arg("tol") = "0");
}
