#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "sinkhorn/bigfloat.hpp"
#include "sinkhorn/errors.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Positive diagonal scaling factor.
template <class Scalar>
class DiagonalFactor {
public:
    explicit DiagonalFactor(std::vector<Scalar> diag) : d_(std::move(diag)) {
        for (const auto& x : d_) {
            if (x.sign() <= 0) {
                throw Error("diagonal factor entries must be positive");
            }
        }
    }

    static DiagonalFactor identity(int n) {
        return DiagonalFactor(std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(1)));
    }

    int size() const { return static_cast<int>(d_.size()); }
    const Scalar& operator[](int i) const { return d_[static_cast<std::size_t>(i)]; }
    const std::vector<Scalar>& diag() const { return d_; }

    /// Entrywise product (composition of diagonal scalings).
    DiagonalFactor compose(const DiagonalFactor& o) const {
        std::vector<Scalar> d;
        d.reserve(d_.size());
        for (std::size_t i = 0; i < d_.size(); ++i) {
            d.push_back(d_[i] * o.d_[i]);
        }
        return DiagonalFactor(std::move(d));
    }

private:
    std::vector<Scalar> d_;
};

/// Dense square matrix with strictly positive entries, row-major.
template <class Scalar>
class Matrix {
public:
    Matrix(int n, std::vector<Scalar> entries) : n_(n), e_(std::move(entries)) {
        if (n_ < 1 || e_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
            throw Error("matrix: dimension/entry count mismatch");
        }
        for (const auto& x : e_) {
            if (x.sign() <= 0) {
                throw Error("matrix entries must be strictly positive");
            }
        }
    }

    static Matrix constant(int n, const Scalar& v) {
        return Matrix(n, std::vector<Scalar>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), v));
    }

    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
        std::vector<Scalar> flat;
        for (const auto& row : rows) {
            if (row.size() != rows.size()) {
                throw Error("matrix: ragged rows");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Matrix(static_cast<int>(rows.size()), std::move(flat));
    }

    int size() const { return n_; }

    const Scalar& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
    }

    const std::vector<Scalar>& entries() const { return e_; }

    std::vector<Scalar> row_sums() const {
        std::vector<Scalar> sums;
        sums.reserve(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            Scalar s = at(i, 0);
            for (int j = 1; j < n_; ++j) {
                s += at(i, j);
            }
            sums.push_back(std::move(s));
        }
        return sums;
    }

    std::vector<Scalar> col_sums() const {
        std::vector<Scalar> sums;
        sums.reserve(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            Scalar s = at(0, j);
            for (int i = 1; i < n_; ++i) {
                s += at(i, j);
            }
            sums.push_back(std::move(s));
        }
        return sums;
    }

    Matrix transpose() const {
        std::vector<Scalar> t;
        t.reserve(e_.size());
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < n_; ++i) {
                t.push_back(at(i, j));
            }
        }
        return Matrix(n_, std::move(t));
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) {
                if (!(at(i, j) == at(j, i))) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    int n_;
    std::vector<Scalar> e_;
};

template <class Scalar>
struct NormalizeResult {
    Matrix<Scalar> matrix;
    DiagonalFactor<Scalar> factor;
};

/// Divides each row by its sum. Returns R(A) and the left factor D with
/// R(A) = D * A, so D holds the reciprocals of the row sums.
template <class Scalar>
NormalizeResult<Scalar> row_normalize(const Matrix<Scalar>& a) {
    const int n = a.size();
    auto sums = a.row_sums();
    std::vector<Scalar> d;
    d.reserve(sums.size());
    for (const auto& s : sums) {
        d.push_back(Scalar(1) / s);
    }
    std::vector<Scalar> e;
    e.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            e.push_back(a.at(i, j) * d[static_cast<std::size_t>(i)]);
        }
    }
    return {Matrix<Scalar>(n, std::move(e)), DiagonalFactor<Scalar>(std::move(d))};
}

/// Divides each column by its sum. Returns C(A) and the right factor D with
/// C(A) = A * D.
template <class Scalar>
NormalizeResult<Scalar> col_normalize(const Matrix<Scalar>& a) {
    const int n = a.size();
    auto sums = a.col_sums();
    std::vector<Scalar> d;
    d.reserve(sums.size());
    for (const auto& s : sums) {
        d.push_back(Scalar(1) / s);
    }
    std::vector<Scalar> e;
    e.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            e.push_back(a.at(i, j) * d[static_cast<std::size_t>(j)]);
        }
    }
    return {Matrix<Scalar>(n, std::move(e)), DiagonalFactor<Scalar>(std::move(d))};
}

/// Largest absolute deviation of any row or column sum from 1.
template <class Scalar>
Scalar stochastic_residual(const Matrix<Scalar>& a) {
    Scalar worst(0);
    const Scalar one(1);
    for (const auto& s : a.row_sums()) {
        Scalar dev = (s - one).abs();
        if (dev > worst) {
            worst = std::move(dev);
        }
    }
    for (const auto& s : a.col_sums()) {
        Scalar dev = (s - one).abs();
        if (dev > worst) {
            worst = std::move(dev);
        }
    }
    return worst;
}

/// True iff every row and column sum is within tol of 1 (exactly 1 for an
/// exact scalar with tol = 0).
template <class Scalar>
bool is_doubly_stochastic(const Matrix<Scalar>& a, const Scalar& tol) {
    return stochastic_residual(a) <= tol;
}

/// Left diagonal scaling D * A.
template <class Scalar>
Matrix<Scalar> scale_rows(const DiagonalFactor<Scalar>& d, const Matrix<Scalar>& a) {
    const int n = a.size();
    std::vector<Scalar> e;
    e.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            e.push_back(d[i] * a.at(i, j));
        }
    }
    return Matrix<Scalar>(n, std::move(e));
}

/// Right diagonal scaling A * D.
template <class Scalar>
Matrix<Scalar> scale_cols(const Matrix<Scalar>& a, const DiagonalFactor<Scalar>& d) {
    const int n = a.size();
    std::vector<Scalar> e;
    e.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            e.push_back(a.at(i, j) * d[j]);
        }
    }
    return Matrix<Scalar>(n, std::move(e));
}

inline Matrix<BigFloat> to_float(const Matrix<Rational>& a, mpfr_prec_t prec) {
    std::vector<BigFloat> e;
    e.reserve(a.entries().size());
    for (const auto& q : a.entries()) {
        e.push_back(BigFloat::from_rational(q, prec));
    }
    return Matrix<BigFloat>(a.size(), std::move(e));
}

inline DiagonalFactor<BigFloat> to_float(const DiagonalFactor<Rational>& d, mpfr_prec_t prec) {
    std::vector<BigFloat> e;
    e.reserve(d.diag().size());
    for (const auto& q : d.diag()) {
        e.push_back(BigFloat::from_rational(q, prec));
    }
    return DiagonalFactor<BigFloat>(std::move(e));
}

using RatMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<BigFloat>;

} // namespace sinkhorn
