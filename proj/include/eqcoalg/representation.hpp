#pragma once

// Linear representations g -> rho(g) by dense matrices.
//
// A LinearRep only enforces shapes on construction. The homomorphism,
// identity and inverse laws are measured by validate_rep so that corrupted
// representations can still be loaded and diagnosed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group.hpp"
#include "eqcoalg/linalg.hpp"
#include "eqcoalg/set_coalgebra.hpp"

namespace eqcoalg {

inline constexpr double kRepTolerance = 1e-12;

class LinearRep {
public:
    LinearRep(GroupTable group, std::size_t dim, std::vector<DenseMatrix> matrices, bool orthogonal = false)
        : group_(std::move(group)), dim_(dim), matrices_(std::move(matrices)), orthogonal_(orthogonal) {
        if (dim_ == 0) throw DimensionError("LinearRep: dimension must be positive");
        if (matrices_.size() != group_.order()) throw DimensionError("LinearRep: one matrix per group element required");
        for (const auto& m : matrices_)
            if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("LinearRep: matrix shape != declared dim");
        build_sparse();
    }

    const GroupTable& group() const noexcept { return group_; }
    std::size_t dim() const noexcept { return dim_; }
    const DenseMatrix& operator()(Element g) const { return matrices_.at(g); }
    const std::vector<DenseMatrix>& matrices() const noexcept { return matrices_; }

    /// Declared orthogonality; checked by validate_rep when set.
    bool orthogonal() const noexcept { return orthogonal_; }

    DenseVector act(Element g, const DenseVector& x) const {
        if (!sparse_) return matvec(matrices_.at(g), x);
        if (x.dim() != dim_) throw DimensionError("LinearRep::act: vector dim != representation dim");
        const Csr& m = sparse_->at(g);
        DenseVector y(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            double acc = 0.0;
            for (std::size_t k = m.row_start[r]; k < m.row_start[r + 1]; ++k) acc += m.val[k] * x[m.col[k]];
            y[r] = acc;
        }
        return y;
    }

    friend bool operator==(const LinearRep& a, const LinearRep& b) {
        return a.group_ == b.group_ && a.dim_ == b.dim_ && a.matrices_ == b.matrices_;
    }

private:
    struct Csr {
        std::vector<std::size_t> row_start, col;
        std::vector<double> val;
    };

    // Permutation-like reps are mostly zeros; act() then skips them.
    void build_sparse() {
        std::size_t nnz = 0;
        for (const auto& m : matrices_)
            for (double v : m.entries()) nnz += v != 0.0;
        if (dim_ < 8 || 4 * nnz > matrices_.size() * dim_ * dim_) return;
        auto all = std::make_shared<std::vector<Csr>>();
        for (const auto& m : matrices_) {
            Csr c;
            c.row_start.push_back(0);
            for (std::size_t r = 0; r < dim_; ++r) {
                for (std::size_t k = 0; k < dim_; ++k)
                    if (m(r, k) != 0.0) {
                        c.col.push_back(k);
                        c.val.push_back(m(r, k));
                    }
                c.row_start.push_back(c.col.size());
            }
            all->push_back(std::move(c));
        }
        sparse_ = std::move(all);
    }

    GroupTable group_;
    std::size_t dim_;
    std::vector<DenseMatrix> matrices_;
    bool orthogonal_;
    std::shared_ptr<const std::vector<Csr>> sparse_;
};

/// rho(g) e_a = e_{xi(g, a)}; the action must satisfy the action laws.
inline LinearRep permutation_rep(const FiniteSetCoalgebra& action) {
    if (const auto v = is_group_action(action); !v) {
        const auto& w = *v.witness();
        throw DomainError("permutation_rep: not a group action (point " + std::to_string(w.point) + ", elements " +
                          std::to_string(w.outer) + "," + std::to_string(w.inner) + ")");
    }
    const std::size_t n = action.carrier_size();
    std::vector<DenseMatrix> mats;
    mats.reserve(action.group().order());
    for (Element g = 0; g < action.group().order(); ++g) {
        DenseMatrix m(n, n);
        for (std::size_t a = 0; a < n; ++a) m(action.at(a, g), a) = 1.0;
        mats.push_back(std::move(m));
    }
    return LinearRep(action.group(), n, std::move(mats), true);
}

/// Left translation on R^G: rho(g) e_h = e_{g h}.
inline LinearRep regular_rep(const GroupTable& group) { return permutation_rep(regular_action(group)); }

/// Cyclic group of order n acting on R^2 by rotations through 2 pi k / n.
inline LinearRep rotation2d_rep(const GroupTable& group) {
    if (group.kind() != GroupKind::cyclic) throw DomainError("rotation2d_rep: only defined for built-in cyclic groups");
    const std::size_t n = group.order();
    std::vector<DenseMatrix> mats;
    for (Element k = 0; k < n; ++k) {
        double c = 1.0, s = 0.0;
        // Quarter turns are exact so that permutation-like rotations stay 0/+-1.
        if ((4 * k) % n == 0) {
            switch ((4 * k / n) % 4) {
                case 0: c = 1.0; s = 0.0; break;
                case 1: c = 0.0; s = 1.0; break;
                case 2: c = -1.0; s = 0.0; break;
                default: c = 0.0; s = -1.0; break;
            }
        } else {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            c = std::cos(t);
            s = std::sin(t);
        }
        mats.push_back(DenseMatrix{{c, -s}, {s, c}});
    }
    return LinearRep(group, 2, std::move(mats), true);
}

/// The trivial representation on R^dim.
inline LinearRep trivial_rep(const GroupTable& group, std::size_t dim) {
    return LinearRep(group, dim, std::vector<DenseMatrix>(group.order(), DenseMatrix::identity(dim)), true);
}

namespace detail {

// max |(a b - t)_ij|, one row of the product at a time.
inline double product_residual(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& t,
                               std::vector<double>& row) {
    const std::size_t n = a.rows();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        row.assign(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) row[j] += aik * bk[j];
        }
        const auto ti = t.row(i);
        for (std::size_t j = 0; j < n; ++j) r = std::max(r, std::abs(row[j] - ti[j]));
    }
    return r;
}

}  // namespace detail

/// Maximum entrywise residual of the representation laws: identity,
/// homomorphism over all pairs, rho(inv g) rho(g) = I, and orthogonality when
/// the flag is set.
inline double validate_rep(const LinearRep& rep) {
    const auto& G = rep.group();
    const DenseMatrix id = DenseMatrix::identity(rep.dim());
    std::vector<double> scratch;
    double r = max_abs_diff(rep(GroupTable::identity()), id);
    for (Element g = 0; g < G.order(); ++g) {
        for (Element h = 0; h < G.order(); ++h)
            r = std::max(r, detail::product_residual(rep(g), rep(h), rep(G.mul(g, h)), scratch));
        r = std::max(r, detail::product_residual(rep(G.inv(g)), rep(g), id, scratch));
        r = std::max(r, detail::product_residual(rep(g), rep(G.inv(g)), id, scratch));
        if (rep.orthogonal()) r = std::max(r, detail::product_residual(rep(g).transpose(), rep(g), id, scratch));
    }
    return r;
}

/// Text format: "m n" on the first line, then m blocks of n rows with n
/// numbers each (rho of element 0 first).
inline LinearRep parse_linear_rep(std::istream& in, const GroupTable& group) {
    std::size_t m = 0, n = 0;
    if (!(in >> m >> n) || n == 0) throw DomainError("rep file: expected 'order dim' header");
    if (m != group.order()) throw DimensionError("rep file: group order in header does not match the group");
    std::vector<DenseMatrix> mats;
    for (std::size_t g = 0; g < m; ++g) {
        std::vector<double> e(n * n);
        for (auto& x : e)
            if (!(in >> x)) throw DomainError("rep file: missing entry in matrix " + std::to_string(g));
        mats.emplace_back(n, n, std::move(e));
    }
    return LinearRep(group, n, std::move(mats), false);
}

inline LinearRep load_linear_rep(const std::string& path, const GroupTable& group) {
    std::ifstream in(path);
    if (!in) throw DomainError("rep file: cannot open " + path);
    return parse_linear_rep(in, group);
}

}  // namespace eqcoalg
