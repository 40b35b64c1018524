#pragma once

// Shallow networks, their symmetrization, and the factorization of a
// symmetrized network into a vector neural network.
//
// A ShallowNet computes f(x) = Q sigma(P x + b). Its symmetrization
// Phi(f)(x) = 1/|G| sum_g rho_W(g^-1) f(rho_V(g) x) is again a network, now
// with one hidden block of |G| units per original neuron:
//
//   P'[(j, g), :] = P[j, :] rho_V(g)
//   b'[(j, g)]    = b[j]
//   Q'[:, (j, g)] = rho_W(g^-1) Q[:, j] / |G|
//
// with the pair (j, g) stored at flat index j * |G| + g.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group.hpp"
#include "eqcoalg/linalg.hpp"
#include "eqcoalg/random.hpp"
#include "eqcoalg/representation.hpp"
#include "eqcoalg/vect_coalgebra.hpp"

namespace eqcoalg {

/// Continuous non-polynomial activations.
enum class Activation { tanh, relu, sigmoid };

inline std::string_view to_string(Activation a) {
    switch (a) {
        case Activation::tanh: return "tanh";
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
    }
    return "?";
}

inline std::optional<Activation> parse_activation(std::string_view s) {
    if (s == "tanh") return Activation::tanh;
    if (s == "relu") return Activation::relu;
    if (s == "sigmoid") return Activation::sigmoid;
    return std::nullopt;
}

inline double activate(Activation a, double t) {
    switch (a) {
        case Activation::tanh: return std::tanh(t);
        case Activation::relu: return t > 0.0 ? t : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-t));
    }
    return t;
}

namespace detail {

/// Q sigma(P x + b).
inline DenseVector affine_activate_linear(const DenseMatrix& p, const DenseVector& bias, const DenseMatrix& q,
                                          Activation act, const DenseVector& x) {
    DenseVector h = matvec(p, x);
    for (std::size_t i = 0; i < h.dim(); ++i) h[i] = activate(act, h[i] + bias[i]);
    return matvec(q, h);
}

}  // namespace detail

class ShallowNet {
public:
    ShallowNet(DenseMatrix p, DenseVector bias, DenseMatrix q, Activation act)
        : p_(std::move(p)), bias_(std::move(bias)), q_(std::move(q)), act_(act) {
        if (p_.rows() == 0 || p_.cols() == 0 || q_.rows() == 0) throw DimensionError("ShallowNet: empty layer");
        if (bias_.dim() != p_.rows()) throw DimensionError("ShallowNet: bias length != hidden width");
        if (q_.cols() != p_.rows()) throw DimensionError("ShallowNet: Q columns != hidden width");
    }

    std::size_t input_dim() const noexcept { return p_.cols(); }
    std::size_t width() const noexcept { return p_.rows(); }
    std::size_t output_dim() const noexcept { return q_.rows(); }

    const DenseMatrix& inner() const noexcept { return p_; }
    const DenseVector& bias() const noexcept { return bias_; }
    const DenseMatrix& outer() const noexcept { return q_; }
    Activation activation() const noexcept { return act_; }

    DenseVector operator()(const DenseVector& x) const {
        if (x.dim() != input_dim()) throw DimensionError("ShallowNet: input dim mismatch");
        return detail::affine_activate_linear(p_, bias_, q_, act_, x);
    }

    friend bool operator==(const ShallowNet&, const ShallowNet&) = default;

private:
    DenseMatrix p_;
    DenseVector bias_;
    DenseMatrix q_;
    Activation act_;
};

/// Network whose hidden layer consists of vector neurons with one coordinate
/// per group element; the activation acts on every coordinate of each block.
class VectorNet {
public:
    VectorNet(GroupTable group, DenseMatrix p, DenseVector bias, DenseMatrix q, Activation act)
        : group_(std::move(group)), p_(std::move(p)), bias_(std::move(bias)), q_(std::move(q)), act_(act) {
        const std::size_t m = group_.order();
        if (p_.rows() == 0 || p_.rows() % m != 0) throw DimensionError("VectorNet: P' rows not a multiple of |G|");
        if (bias_.dim() != p_.rows()) throw DimensionError("VectorNet: bias length != P' rows");
        if (q_.cols() != p_.rows()) throw DimensionError("VectorNet: Q' columns != P' rows");
    }

    const GroupTable& group() const noexcept { return group_; }
    std::size_t input_dim() const noexcept { return p_.cols(); }
    std::size_t neurons() const noexcept { return p_.rows() / group_.order(); }
    std::size_t output_dim() const noexcept { return q_.rows(); }

    static std::size_t flat_index(std::size_t neuron, Element g, std::size_t order) noexcept {
        return neuron * order + g;
    }

    const DenseMatrix& inner() const noexcept { return p_; }
    const DenseVector& bias() const noexcept { return bias_; }
    const DenseMatrix& outer() const noexcept { return q_; }
    Activation activation() const noexcept { return act_; }

    friend bool operator==(const VectorNet&, const VectorNet&) = default;

private:
    GroupTable group_;
    DenseMatrix p_;
    DenseVector bias_;
    DenseMatrix q_;
    Activation act_;
};

inline DenseVector eval_vector_net(const VectorNet& v, const DenseVector& x) {
    if (x.dim() != v.input_dim()) throw DimensionError("eval_vector_net: input dim mismatch");
    return detail::affine_activate_linear(v.inner(), v.bias(), v.outer(), v.activation(), x);
}

/// Finite point cloud standing in for a compact set.
class CompactSample {
public:
    CompactSample(std::size_t dim, std::vector<DenseVector> points) : dim_(dim), points_(std::move(points)) {
        if (points_.empty()) throw DomainError("CompactSample: no points");
        for (const auto& p : points_) {
            if (p.dim() != dim_) throw DimensionError("CompactSample: point dim mismatch");
            detail::require_finite(p.span(), "CompactSample");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<DenseVector>& points() const noexcept { return points_; }
    std::span<const DenseVector> span() const noexcept { return points_; }
    const DenseVector& operator[](std::size_t i) const { return points_[i]; }

    friend bool operator==(const CompactSample&, const CompactSample&) = default;

private:
    std::size_t dim_;
    std::vector<DenseVector> points_;
};

struct Interval {
    double lower;
    double upper;
};

/// `count` points uniform in the box, coordinates drawn in order.
inline CompactSample sample_box(std::span<const Interval> bounds, std::size_t count, std::uint64_t seed) {
    if (bounds.empty()) throw DomainError("sample_box: no coordinates");
    if (count == 0) throw DomainError("sample_box: count must be >= 1");
    for (const auto& b : bounds)
        if (!(b.lower <= b.upper) || !std::isfinite(b.lower) || !std::isfinite(b.upper))
            throw DomainError("sample_box: invalid interval");
    Rng rng(seed);
    std::vector<DenseVector> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        DenseVector x(bounds.size());
        for (std::size_t j = 0; j < bounds.size(); ++j) x[j] = rng.uniform(bounds[j].lower, bounds[j].upper);
        pts.push_back(std::move(x));
    }
    return CompactSample(bounds.size(), std::move(pts));
}

/// Union of the translates rho(g) K, ordered by group element then point.
inline CompactSample symmetrize_sample(const CompactSample& k, const LinearRep& rep) {
    if (k.dim() != rep.dim()) throw DimensionError("symmetrize_sample: sample dim != representation dim");
    std::vector<DenseVector> pts;
    pts.reserve(k.size() * rep.group().order());
    for (Element g = 0; g < rep.group().order(); ++g)
        for (const auto& x : k.points()) pts.push_back(rep.act(g, x));
    return CompactSample(k.dim(), std::move(pts));
}

/// Random-feature fit: P ~ N(0, 1/n) entrywise and b ~ U[-1, 1] are drawn
/// from the seeded generator (P row-major first, then b), and Q solves the
/// ridge problem on the hidden features against the target values.
template <class Target>
ShallowNet fit_random_features(Target&& target, const CompactSample& train, std::size_t width, Activation act,
                               double lambda, std::uint64_t seed) {
    if (width == 0) throw DomainError("fit_random_features: width must be >= 1");
    const std::size_t n = train.dim();
    Rng rng(seed);
    DenseMatrix p(width, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < width; ++j)
        for (std::size_t i = 0; i < n; ++i) p(j, i) = scale * rng.normal();
    DenseVector bias(width);
    for (std::size_t j = 0; j < width; ++j) bias[j] = rng.uniform(-1.0, 1.0);

    std::vector<DenseVector> ys;
    ys.reserve(train.size());
    for (const auto& x : train.points()) ys.push_back(target(x));
    const std::size_t w = ys.front().dim();
    if (w == 0) throw DimensionError("fit_random_features: target has empty output");

    DenseMatrix features(train.size(), width);
    DenseMatrix targets(train.size(), w);
    for (std::size_t s = 0; s < train.size(); ++s) {
        if (ys[s].dim() != w) throw DimensionError("fit_random_features: target output dim varies");
        DenseVector h = matvec(p, train[s]);
        for (std::size_t j = 0; j < width; ++j) features(s, j) = activate(act, h[j] + bias[j]);
        for (std::size_t k = 0; k < w; ++k) targets(s, k) = ys[s][k];
    }
    DenseMatrix coeffs = ridge_solve(features, targets, lambda);
    return ShallowNet(std::move(p), std::move(bias), coeffs.transpose(), act);
}

/// Compiles Phi(net) = gamma o E(net) o alpha into explicit weights.
inline VectorNet to_vector_net(const ShallowNet& net, const ActionCoalgebra& alpha, const ReynoldsAlgebra& gamma) {
    require_same_group(alpha.group(), gamma.group(), "to_vector_net");
    if (net.input_dim() != alpha.dim()) throw DimensionError("to_vector_net: net input dim != domain representation dim");
    if (net.output_dim() != gamma.dim()) throw DimensionError("to_vector_net: net output dim != codomain representation dim");
    const auto& G = alpha.group();
    const std::size_t m = G.order();
    const std::size_t d = net.width();
    const std::size_t n = net.input_dim();
    const std::size_t w = net.output_dim();

    DenseMatrix pp(m * d, n);
    DenseVector bp(m * d);
    DenseMatrix qp(w, m * d);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (Element g = 0; g < m; ++g) {
        const DenseMatrix& rv = alpha.rep()(g);
        const DenseMatrix& rw_inv = gamma.rep()(G.inv(g));
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t idx = VectorNet::flat_index(j, g, m);
            for (std::size_t c = 0; c < n; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += net.inner()(j, k) * rv(k, c);
                pp(idx, c) = s;
            }
            bp[idx] = net.bias()[j];
            for (std::size_t r = 0; r < w; ++r) {
                double s = 0.0;
                for (std::size_t k = 0; k < w; ++k) s += rw_inv(r, k) * net.outer()(k, j);
                qp(r, idx) = s * inv_m;
            }
        }
    }
    return VectorNet(G, std::move(pp), std::move(bp), std::move(qp), net.activation());
}

/// max over points x and elements g of ||f(rho_in(g) x) - rho_out(g) f(x)||_2.
template <class F>
double equivariance_residual(F&& f, const LinearRep& rep_in, const LinearRep& rep_out, const CompactSample& points) {
    require_same_group(rep_in.group(), rep_out.group(), "equivariance_residual");
    if (points.dim() != rep_in.dim()) throw DimensionError("equivariance_residual: sample dim != input representation dim");
    double r = 0.0;
    for (const auto& x : points.points()) {
        const DenseVector fx = f(x);
        if (fx.dim() != rep_out.dim()) throw DimensionError("equivariance_residual: output dim != output representation dim");
        for (Element g = 0; g < rep_in.group().order(); ++g)
            r = std::max(r, (f(rep_in.act(g, x)) - rep_out.act(g, fx)).norm2());
    }
    return r;
}

/// max over the sample of ||f(x)||_2; the scale used by relative tolerances.
template <class F>
double max_output_norm(F&& f, const CompactSample& points) {
    double s = 0.0;
    for (const auto& x : points.points()) s = std::max(s, f(x).norm2());
    return s;
}

}  // namespace eqcoalg
