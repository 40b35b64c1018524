#pragma once

// Lifting set coalgebras along the free vector space functor.
//
// V(A) is R^A with basis {e_a}; eta_A : A -> V(A) is a -> e_a. The
// repackaging map lambda_A : V(A^X) -> V(A)^X sends a formal sum
// c_1 phi_1 + ... + c_k phi_k to x -> c_1 e_{phi_1(x)} + ... + c_k e_{phi_k(x)}.
// A coalgebra alpha : A -> A^G lifts to the linear map lambda_A o V(alpha),
// which on basis vectors is e_a -> (g -> e_{alpha(a)(g)}). kappa is the
// identity throughout.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group_function.hpp"
#include "eqcoalg/linalg.hpp"
#include "eqcoalg/set_coalgebra.hpp"
#include "eqcoalg/vect_coalgebra.hpp"

namespace eqcoalg {

/// Dense element of V(A): one coefficient per base element.
using FreeVector = DenseVector;

/// A function X -> A on finite sets.
struct FunctionTable {
    std::size_t codomain_size = 0;
    std::vector<std::size_t> values;

    FunctionTable(std::size_t codomain, std::vector<std::size_t> vals) : codomain_size(codomain), values(std::move(vals)) {
        for (std::size_t v : values)
            if (v >= codomain_size) throw DomainError("FunctionTable: value outside the codomain");
    }
    std::size_t domain_size() const noexcept { return values.size(); }
};

/// A formal linear combination of functions X -> A, i.e. an element of V(A^X).
struct FormalFunctionSum {
    std::size_t domain_size = 0;
    std::size_t codomain_size = 0;
    std::vector<std::pair<double, FunctionTable>> terms;

    FormalFunctionSum(std::size_t domain, std::size_t codomain) : domain_size(domain), codomain_size(codomain) {}

    FormalFunctionSum& add(double coeff, FunctionTable fn) {
        if (fn.domain_size() != domain_size || fn.codomain_size != codomain_size)
            throw DimensionError("FormalFunctionSum: term shape does not match the sum");
        terms.emplace_back(coeff, std::move(fn));
        return *this;
    }
};

inline FreeVector eta(std::size_t a, std::size_t base_size) {
    if (a >= base_size) throw DomainError("eta: index " + std::to_string(a) + " outside base of size " + std::to_string(base_size));
    FreeVector e(base_size);
    e[a] = 1.0;
    return e;
}

/// lambda_A: psi(x) = sum_i c_i e_{phi_i(x)}.
inline std::vector<FreeVector> lambda_repack(const FormalFunctionSum& s) {
    std::vector<FreeVector> psi(s.domain_size, FreeVector(s.codomain_size));
    for (const auto& [c, fn] : s.terms) {
        if (fn.domain_size() != s.domain_size || fn.codomain_size != s.codomain_size)
            throw DimensionError("lambda_repack: inconsistent term shapes");
        for (std::size_t x = 0; x < s.domain_size; ++x) psi[x][fn.values[x]] += c;
    }
    return psi;
}

/// Matrix of lambda_A o V(alpha) : V(A) -> V(A)^G, with block g occupying
/// rows g*|A| .. g*|A| + |A| - 1.
inline DenseMatrix lift_coalgebra(const FiniteSetCoalgebra& c) {
    const std::size_t n = c.carrier_size();
    const std::size_t m = c.group().order();
    DenseMatrix lifted(m * n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (Element g = 0; g < m; ++g) lifted(g * n + c.at(a, g), a) = 1.0;
    return lifted;
}

/// Applies a lifted structure matrix to v and splits the result into blocks.
inline BlockVector apply_lifted(const DenseMatrix& lifted, const GroupTable& group, const FreeVector& v) {
    const DenseVector flat = matvec(lifted, v);
    const std::size_t n = v.dim();
    if (flat.dim() != group.order() * n) throw DimensionError("apply_lifted: matrix is not a lifted structure over this group");
    return BlockVector::tabulate(group, [&](Element g) {
        DenseVector b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = flat[g * n + i];
        return b;
    });
}

/// eta is equivariant from (A, alpha) into the lifted coalgebra: the lifted
/// structure applied to e_a has block g equal to e_{alpha(a)(g)}.
inline Verdict<PointWitness> check_embedding_equivariance(const FiniteSetCoalgebra& c) {
    const DenseMatrix lifted = lift_coalgebra(c);
    const std::size_t n = c.carrier_size();
    for (std::size_t a = 0; a < n; ++a) {
        const BlockVector image = apply_lifted(lifted, c.group(), eta(a, n));
        for (Element g = 0; g < c.group().order(); ++g)
            if (!(image[g] == eta(c.at(a, g), n))) return Verdict<PointWitness>::fail({a, g});
    }
    return {};
}

/// F(eta) = kappa o U(lambda) o eta_F, evaluated at phi = alpha(a) for every a.
/// The left side maps phi to g -> e_{phi(g)}; the right side embeds phi as
/// the one-term formal sum 1*phi and repacks it.
inline Verdict<PointWitness> check_compatibility_identity(const FiniteSetCoalgebra& c) {
    const std::size_t n = c.carrier_size();
    const std::size_t m = c.group().order();
    for (std::size_t a = 0; a < n; ++a) {
        const auto phi = c.structure(a);
        const auto lhs = e_map([n](std::size_t b) { return eta(b, n); }, phi);
        FormalFunctionSum sum(m, n);
        sum.add(1.0, FunctionTable(n, phi.values()));
        const auto rhs = lambda_repack(sum);
        for (Element g = 0; g < m; ++g)
            if (!(lhs[g] == rhs[g])) return Verdict<PointWitness>::fail({a, g});
    }
    return {};
}

}  // namespace eqcoalg
