#pragma once

// Minimal dense real linear algebra: just enough to represent group actions
// by matrices and to fit the outer layer of a shallow network by ridge
// regression.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"

namespace eqcoalg {

namespace detail {

inline void require_finite(std::span<const double> xs, const char* what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
    }
}

}  // namespace detail

class DenseVector {
public:
    DenseVector() = default;
    explicit DenseVector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
    DenseVector(std::initializer_list<double> xs) : data_(xs) {
        detail::require_finite(data_, "DenseVector");
    }
    explicit DenseVector(std::vector<double> xs) : data_(std::move(xs)) {
        detail::require_finite(data_, "DenseVector");
    }

    std::size_t dim() const noexcept { return data_.size(); }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> span() noexcept { return data_; }
    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    DenseVector& operator+=(const DenseVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    DenseVector& operator-=(const DenseVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    DenseVector& operator*=(double a) {
        for (double& x : data_) x *= a;
        return *this;
    }
    DenseVector& operator/=(double a) {
        for (double& x : data_) x /= a;
        return *this;
    }

    friend DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
    friend DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
    friend DenseVector operator*(double s, DenseVector a) { return a *= s; }
    friend DenseVector operator*(DenseVector a, double s) { return a *= s; }
    friend bool operator==(const DenseVector&, const DenseVector&) = default;

    double norm2() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    void check_same(const DenseVector& o) const {
        if (o.dim() != dim()) throw DimensionError("DenseVector: dimension mismatch");
    }

    std::vector<double> data_;
};

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw DimensionError("DenseMatrix: entry count != rows*cols");
        detail::require_finite(data_, "DenseMatrix");
    }
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        detail::require_finite(data_, "DenseMatrix");
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    DenseVector column(std::size_t c) const {
        DenseVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    const std::vector<double>& entries() const noexcept { return data_; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    DenseMatrix& operator*=(double a) {
        for (double& x : data_) x *= a;
        return *this;
    }
    friend DenseMatrix operator*(double a, DenseMatrix m) { return m *= a; }
    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline DenseVector matvec(const DenseMatrix& m, const DenseVector& x) {
    if (m.cols() != x.dim()) throw DimensionError("matvec: matrix cols != vector dim");
    DenseVector y(m.rows());
    const std::size_t n = m.cols();
    const double* xv = x.values().data();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* row = m.row(r).data();
        // Four independent partial sums; the fixed order keeps results reproducible.
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        std::size_t c = 0;
        for (; c + 4 <= n; c += 4) {
            s0 += row[c] * xv[c];
            s1 += row[c + 1] * xv[c + 1];
            s2 += row[c + 2] * xv[c + 2];
            s3 += row[c + 3] * xv[c + 3];
        }
        for (; c < n; ++c) s0 += row[c] * xv[c];
        y[r] = (s0 + s1) + (s2 + s3);
    }
    return y;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

/// Largest entrywise |a - b|.
inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double max_abs_diff(const DenseVector& a, const DenseVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double x : m.entries()) s += x * x;
    return std::sqrt(s);
}

/// Solves min_X ||A X - B||_F^2 + lambda ||X||_F^2 through the normal
/// equations (A^T A + lambda I) X = A^T B and a Cholesky factorization.
///
/// Throws SolverError when a pivot is not positive beyond rounding level; the attached
/// condition estimate is the largest accepted pivot over the failing one.
inline DenseMatrix ridge_solve(const DenseMatrix& a, const DenseMatrix& b, double lambda) {
    if (a.rows() == 0 || a.cols() == 0) throw DimensionError("ridge_solve: empty design matrix");
    if (a.rows() != b.rows()) throw DimensionError("ridge_solve: A and B row counts differ");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("ridge_solve: lambda must be finite and >= 0");

    const std::size_t s = a.rows();
    const std::size_t d = a.cols();
    const std::size_t w = b.cols();

    // Lower triangle of the Gram matrix, accumulated row by row of A.
    DenseMatrix gram(d, d);
    DenseMatrix rhs(d, w);
    for (std::size_t r = 0; r < s; ++r) {
        const auto ar = a.row(r);
        const auto br = b.row(r);
        for (std::size_t i = 0; i < d; ++i) {
            const double ai = ar[i];
            if (ai == 0.0) continue;
            for (std::size_t j = 0; j <= i; ++j) gram(i, j) += ai * ar[j];
            for (std::size_t k = 0; k < w; ++k) rhs(i, k) += ai * br[k];
        }
    }
    for (std::size_t i = 0; i < d; ++i) gram(i, i) += lambda;

    // Pivots at rounding level relative to the largest diagonal count as zero.
    double diag_scale = 0.0;
    for (std::size_t i = 0; i < d; ++i) diag_scale = std::max(diag_scale, gram(i, i));
    const double pivot_floor = static_cast<double>(d) * std::numeric_limits<double>::epsilon() * diag_scale;

    // In-place Cholesky: gram = L L^T, L stored in the lower triangle.
    double max_pivot = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double diag = gram(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= gram(j, k) * gram(j, k);
        if (!(diag > pivot_floor)) {
            const double failing = std::max(std::abs(diag), std::numeric_limits<double>::min());
            const double cond = j == 0 ? std::numeric_limits<double>::infinity() : max_pivot / failing;
            std::ostringstream msg;
            msg << "ridge_solve: normal matrix not positive definite at pivot " << j << " (pivot " << diag
                << ", lambda " << lambda << ", largest pivot / failing pivot " << cond << ")";
            throw SolverError(msg.str(), cond);
        }
        max_pivot = std::max(max_pivot, diag);
        const double ljj = std::sqrt(diag);
        gram(j, j) = ljj;
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = gram(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= gram(i, k) * gram(j, k);
            gram(i, j) = v / ljj;
        }
    }

    // Forward then backward substitution, one right-hand side column at a time.
    DenseMatrix x(d, w);
    std::vector<double> y(d);
    for (std::size_t k = 0; k < w; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            double v = rhs(i, k);
            for (std::size_t j = 0; j < i; ++j) v -= gram(i, j) * y[j];
            y[i] = v / gram(i, i);
        }
        for (std::size_t ii = d; ii-- > 0;) {
            double v = y[ii];
            for (std::size_t j = ii + 1; j < d; ++j) v -= gram(j, ii) * x(j, k);
            x(ii, k) = v / gram(ii, ii);
        }
    }
    return x;
}

using VectorFunction = std::function<DenseVector(const DenseVector&)>;

/// max over the sample of ||f(x) - g(x)||_2.
template <class F, class G>
double sup_distance(F&& f, G&& g, std::span<const DenseVector> points) {
    if (points.empty()) throw DomainError("sup_distance: empty sample");
    double m = 0.0;
    for (const auto& x : points) {
        const DenseVector fx = f(x);
        const DenseVector gx = g(x);
        if (fx.dim() != gx.dim()) throw DimensionError("sup_distance: output dimensions differ");
        m = std::max(m, (fx - gx).norm2());
    }
    return m;
}

}  // namespace eqcoalg
