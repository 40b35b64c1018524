#pragma once

// The group-action comonad on finite-dimensional real vector spaces.
//
//   E(V) = V^G,  E(f)(phi) = f o phi,
//   delta(phi)(g)(h) = phi(h g),  epsilon(phi) = phi(1).
//
// A linear G-action on V is the comodule beta(x)(g) = rho(g) x, and Reynolds
// averaging gamma(phi) = 1/|G| sum_g rho(g^-1) phi(g) is a left
// (E, delta)-inverse of it. symmetrize composes the three into
// Phi(f) = gamma o E(f) o alpha.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group.hpp"
#include "eqcoalg/group_function.hpp"
#include "eqcoalg/linalg.hpp"
#include "eqcoalg/representation.hpp"

namespace eqcoalg {

using BlockVector = GroupFunction<DenseVector>;
using BlockBlockVector = GroupFunction<BlockVector>;

/// Common dimension of the blocks of phi.
inline std::size_t block_dim(const BlockVector& phi) {
    const std::size_t n = phi[0].dim();
    for (const auto& b : phi)
        if (b.dim() != n) throw DimensionError("BlockVector: blocks of different dimensions");
    return n;
}

inline BlockVector make_block_vector(const GroupTable& group, std::vector<DenseVector> blocks) {
    BlockVector phi(group, std::move(blocks));
    block_dim(phi);
    return phi;
}

/// E on morphisms: apply f blockwise.
template <class F, class T>
auto e_map(F&& f, const GroupFunction<T>& phi) {
    using R = std::decay_t<std::invoke_result_t<F&, const T&>>;
    return GroupFunction<R>::tabulate(phi.group(), [&](Element g) { return f(phi[g]); });
}

/// delta(phi)(g)(h) = phi(h g).
template <class T>
GroupFunction<GroupFunction<T>> delta(const GroupFunction<T>& phi) {
    const auto& G = phi.group();
    return GroupFunction<GroupFunction<T>>::tabulate(G, [&](Element g) {
        return GroupFunction<T>::tabulate(G, [&](Element h) { return phi[G.mul(h, g)]; });
    });
}

/// epsilon(phi) = phi(1).
template <class T>
const T& epsilon(const GroupFunction<T>& phi) {
    return phi[GroupTable::identity()];
}

namespace detail {

inline double residual(const DenseVector& a, const DenseVector& b) { return max_abs_diff(a, b); }

template <class T>
double residual(const GroupFunction<T>& a, const GroupFunction<T>& b) {
    require_same_group(a.group(), b.group(), "residual");
    double r = 0.0;
    for (Element g = 0; g < a.size(); ++g) r = std::max(r, residual(a[g], b[g]));
    return r;
}

}  // namespace detail

/// Largest entrywise difference between two (possibly nested) block vectors.
template <class T>
double max_abs_diff(const GroupFunction<T>& a, const GroupFunction<T>& b) {
    return detail::residual(a, b);
}

/// A linear G-action on V viewed as the E-coalgebra x -> (g -> rho(g) x).
class ActionCoalgebra {
public:
    /// Requires validate_rep(rep) <= 1e-12.
    explicit ActionCoalgebra(LinearRep rep) : rep_(std::move(rep)) {
        const double r = validate_rep(rep_);
        if (r > kRepTolerance) {
            throw DomainError("ActionCoalgebra: representation residual " + std::to_string(r) + " exceeds 1e-12");
        }
    }

    /// Skips validation; used to diagnose suspect representations.
    static ActionCoalgebra unchecked(LinearRep rep) { return ActionCoalgebra(std::move(rep), 0); }

    const LinearRep& rep() const noexcept { return rep_; }
    const GroupTable& group() const noexcept { return rep_.group(); }
    std::size_t dim() const noexcept { return rep_.dim(); }

private:
    ActionCoalgebra(LinearRep rep, int) : rep_(std::move(rep)) {}
    LinearRep rep_;
};

/// Reynolds averaging E(W) -> W for a linear G-action on W.
class ReynoldsAlgebra {
public:
    /// Requires validate_rep(rep) <= 1e-12.
    explicit ReynoldsAlgebra(LinearRep rep) : rep_(std::move(rep)) {
        const double r = validate_rep(rep_);
        if (r > kRepTolerance) {
            throw DomainError("ReynoldsAlgebra: representation residual " + std::to_string(r) + " exceeds 1e-12");
        }
    }

    static ReynoldsAlgebra unchecked(LinearRep rep) { return ReynoldsAlgebra(std::move(rep), 0); }

    const LinearRep& rep() const noexcept { return rep_; }
    const GroupTable& group() const noexcept { return rep_.group(); }
    std::size_t dim() const noexcept { return rep_.dim(); }

private:
    ReynoldsAlgebra(LinearRep rep, int) : rep_(std::move(rep)) {}
    LinearRep rep_;
};

/// beta(x)(g) = rho(g) x.
inline BlockVector beta_apply(const ActionCoalgebra& a, const DenseVector& x) {
    if (x.dim() != a.dim()) throw DimensionError("beta_apply: vector dim != representation dim");
    return BlockVector::tabulate(a.group(), [&](Element g) { return a.rep().act(g, x); });
}

/// gamma(phi) = (sum_g rho(g^-1) phi(g)) / |G|, summed in element order.
inline DenseVector gamma_apply(const ReynoldsAlgebra& r, const BlockVector& phi) {
    require_same_group(r.group(), phi.group(), "gamma_apply");
    if (block_dim(phi) != r.dim()) throw DimensionError("gamma_apply: block dim != representation dim");
    const auto& G = r.group();
    DenseVector sum(r.dim());
    for (Element g = 0; g < G.order(); ++g) sum += r.rep().act(G.inv(g), phi[g]);
    sum /= static_cast<double>(G.order());
    return sum;
}

/// Max residual of coassociativity and both counit laws over the samples.
inline double check_comonad_laws(const GroupTable& group, std::size_t dim, std::span<const BlockVector> samples) {
    if (samples.empty()) throw DomainError("check_comonad_laws: no samples");
    double r = 0.0;
    for (const auto& phi : samples) {
        require_same_group(group, phi.group(), "check_comonad_laws");
        if (block_dim(phi) != dim) throw DimensionError("check_comonad_laws: sample dim mismatch");
        const BlockBlockVector dphi = delta(phi);
        // delta_{E V} o delta_V = E(delta_V) o delta_V
        r = std::max(r, max_abs_diff(delta(dphi), e_map([](const BlockVector& b) { return delta(b); }, dphi)));
        // epsilon_{E V} o delta_V = id
        r = std::max(r, max_abs_diff(epsilon(dphi), phi));
        // E(epsilon_V) o delta_V = id
        r = std::max(r, max_abs_diff(e_map([](const BlockVector& b) { return epsilon(b); }, dphi), phi));
    }
    return r;
}

/// Max residual of delta o beta = E(beta) o beta and epsilon o beta = id.
inline double check_comodule_laws(const ActionCoalgebra& a, std::span<const DenseVector> samples) {
    if (samples.empty()) throw DomainError("check_comodule_laws: no samples");
    double r = 0.0;
    for (const auto& x : samples) {
        const BlockVector bx = beta_apply(a, x);
        const auto lhs = delta(bx);
        const auto rhs = e_map([&](const DenseVector& y) { return beta_apply(a, y); }, bx);
        r = std::max(r, max_abs_diff(lhs, rhs));
        r = std::max(r, max_abs_diff(epsilon(bx), x));
    }
    return r;
}

/// Max residual of gamma o beta = id (vector samples) and
/// beta o gamma = E(gamma) o delta (block samples).
inline double check_left_inverse(const ActionCoalgebra& b, const ReynoldsAlgebra& r,
                                 std::span<const DenseVector> vector_samples,
                                 std::span<const BlockVector> block_samples) {
    if (!(b.rep() == r.rep())) throw DomainError("check_left_inverse: coalgebra and algebra use different representations");
    if (vector_samples.empty() && block_samples.empty()) throw DomainError("check_left_inverse: no samples");
    double res = 0.0;
    for (const auto& x : vector_samples) res = std::max(res, max_abs_diff(gamma_apply(r, beta_apply(b, x)), x));
    for (const auto& phi : block_samples) {
        const BlockVector lhs = beta_apply(b, gamma_apply(r, phi));
        const BlockVector rhs = e_map([&](const BlockVector& row) { return gamma_apply(r, row); }, delta(phi));
        res = std::max(res, max_abs_diff(lhs, rhs));
    }
    return res;
}

/// Phi(f) = gamma o E(f) o alpha, i.e. x -> 1/|G| sum_g rho_W(g^-1) f(rho_V(g) x).
template <class F>
VectorFunction symmetrize(F f, const ActionCoalgebra& alpha, const ReynoldsAlgebra& gamma) {
    require_same_group(alpha.group(), gamma.group(), "symmetrize");
    return [f = std::move(f), alpha, gamma](const DenseVector& x) {
        return gamma_apply(gamma, e_map(f, beta_apply(alpha, x)));
    };
}

}  // namespace eqcoalg
