#pragma once

// Coalgebras for the functor X -> X^G on finite sets.
//
// A FiniteSetCoalgebra is any map alpha: A -> A^G, stored as the table
// (a, g) -> alpha(a)(g). It is a group action exactly when alpha(a)(1) = a
// and alpha(alpha(a)(h))(g) = alpha(a)(g h); the orbit machinery below is
// only defined for such tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group.hpp"
#include "eqcoalg/group_function.hpp"

namespace eqcoalg {

using Subset = std::vector<std::size_t>;

class FiniteSetCoalgebra {
public:
    /// `table[a][g]` is alpha(a)(g).
    FiniteSetCoalgebra(GroupTable group, const std::vector<std::vector<std::size_t>>& table)
        : group_(std::move(group)), carrier_(table.size()) {
        if (carrier_ == 0) throw DimensionError("FiniteSetCoalgebra: empty carrier");
        const std::size_t m = group_.order();
        flat_.reserve(carrier_ * m);
        for (std::size_t a = 0; a < carrier_; ++a) {
            if (table[a].size() != m) throw DimensionError("FiniteSetCoalgebra: row length != group order");
            for (std::size_t g = 0; g < m; ++g) {
                if (table[a][g] >= carrier_) {
                    throw DomainError("FiniteSetCoalgebra: entry (" + std::to_string(a) + "," + std::to_string(g) +
                                      ") outside the carrier");
                }
                flat_.push_back(table[a][g]);
            }
        }
    }

    /// Builds the table from xi(g, a).
    template <class Xi>
    static FiniteSetCoalgebra from_action(const GroupTable& group, std::size_t carrier_size, Xi&& xi) {
        std::vector<std::vector<std::size_t>> t(carrier_size, std::vector<std::size_t>(group.order()));
        for (std::size_t a = 0; a < carrier_size; ++a)
            for (Element g = 0; g < group.order(); ++g) t[a][g] = xi(g, a);
        return FiniteSetCoalgebra(group, t);
    }

    const GroupTable& group() const noexcept { return group_; }
    std::size_t carrier_size() const noexcept { return carrier_; }

    std::size_t at(std::size_t a, Element g) const { return flat_[a * group_.order() + g]; }

    /// alpha(a) as an element of A^G.
    GroupFunction<std::size_t> structure(std::size_t a) const {
        return GroupFunction<std::size_t>::tabulate(group_, [&](Element g) { return at(a, g); });
    }

    std::vector<std::vector<std::size_t>> table() const {
        std::vector<std::vector<std::size_t>> t(carrier_, std::vector<std::size_t>(group_.order()));
        for (std::size_t a = 0; a < carrier_; ++a)
            for (Element g = 0; g < group_.order(); ++g) t[a][g] = at(a, g);
        return t;
    }

    friend bool operator==(const FiniteSetCoalgebra& x, const FiniteSetCoalgebra& y) {
        return x.group_ == y.group_ && x.carrier_ == y.carrier_ && x.flat_ == y.flat_;
    }

private:
    GroupTable group_;
    std::size_t carrier_;
    std::vector<std::size_t> flat_;
};

enum class ActionLaw { unit, compatibility };

/// unit: alpha(point)(1) != point (outer = inner = identity).
/// compatibility: alpha(alpha(point)(inner))(outer) != alpha(point)(outer*inner).
struct ActionWitness {
    ActionLaw law;
    std::size_t point;
    Element outer;
    Element inner;
    friend bool operator==(const ActionWitness&, const ActionWitness&) = default;
};

struct PointWitness {
    std::size_t point;
    Element g;
    friend bool operator==(const PointWitness&, const PointWitness&) = default;
};

inline Verdict<ActionWitness> is_group_action(const FiniteSetCoalgebra& c) {
    const auto& G = c.group();
    for (std::size_t a = 0; a < c.carrier_size(); ++a) {
        if (c.at(a, GroupTable::identity()) != a) {
            return Verdict<ActionWitness>::fail({ActionLaw::unit, a, GroupTable::identity(), GroupTable::identity()});
        }
    }
    for (std::size_t a = 0; a < c.carrier_size(); ++a)
        for (Element g1 = 0; g1 < G.order(); ++g1)
            for (Element g2 = 0; g2 < G.order(); ++g2) {
                if (c.at(c.at(a, g2), g1) != c.at(a, G.mul(g1, g2))) {
                    return Verdict<ActionWitness>::fail({ActionLaw::compatibility, a, g1, g2});
                }
            }
    return {};
}

/// f is a homomorphism src -> dst iff f(src(a)(g)) = dst(f(a))(g) for all a, g.
inline Verdict<PointWitness> is_homomorphism(const std::vector<std::size_t>& f, const FiniteSetCoalgebra& src,
                                             const FiniteSetCoalgebra& dst) {
    require_same_group(src.group(), dst.group(), "is_homomorphism");
    if (f.size() != src.carrier_size()) throw DimensionError("is_homomorphism: map length != source carrier size");
    for (std::size_t b : f)
        if (b >= dst.carrier_size()) throw DomainError("is_homomorphism: map value outside target carrier");
    for (std::size_t a = 0; a < src.carrier_size(); ++a)
        for (Element g = 0; g < src.group().order(); ++g)
            if (f[src.at(a, g)] != dst.at(f[a], g)) return Verdict<PointWitness>::fail({a, g});
    return {};
}

namespace detail {

inline void require_action(const FiniteSetCoalgebra& c, const char* where) {
    if (!is_group_action(c)) throw DomainError(std::string(where) + ": coalgebra is not a group action");
}

inline bool subset_less(const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace detail

/// Orbits of a group action, each sorted, listed by least element.
inline std::vector<Subset> orbits(const FiniteSetCoalgebra& c) {
    detail::require_action(c, "orbits");
    std::vector<bool> seen(c.carrier_size(), false);
    std::vector<Subset> out;
    for (std::size_t a = 0; a < c.carrier_size(); ++a) {
        if (seen[a]) continue;
        Subset orbit;
        for (Element g = 0; g < c.group().order(); ++g) {
            const std::size_t b = c.at(a, g);
            if (!seen[b]) {
                seen[b] = true;
                orbit.push_back(b);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

inline Verdict<PointWitness> is_subuniverse(const Subset& s, const FiniteSetCoalgebra& c) {
    std::vector<bool> member(c.carrier_size(), false);
    for (std::size_t x : s) {
        if (x >= c.carrier_size()) throw DomainError("is_subuniverse: index outside the carrier");
        member[x] = true;
    }
    for (std::size_t x : s)
        for (Element g = 0; g < c.group().order(); ++g)
            if (!member[c.at(x, g)]) return Verdict<PointWitness>::fail({x, g});
    return {};
}

inline constexpr std::size_t kMaxSubuniverseCarrier = 16;

/// Every invariant subset, built as unions of orbits, ordered by size and
/// then lexicographically. The empty set comes first.
inline std::vector<Subset> enumerate_subuniverses(const FiniteSetCoalgebra& c) {
    if (c.carrier_size() > kMaxSubuniverseCarrier) throw DomainError("enumerate_subuniverses: carrier larger than 16");
    const auto orbs = orbits(c);
    std::vector<Subset> out;
    out.reserve(std::size_t{1} << orbs.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << orbs.size()); ++mask) {
        Subset s;
        for (std::size_t i = 0; i < orbs.size(); ++i)
            if (mask & (std::uint32_t{1} << i)) s.insert(s.end(), orbs[i].begin(), orbs[i].end());
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), detail::subset_less);
    return out;
}

/// The action every built-in group comes with: shifts of Z_n for cyclic n,
/// v -> +-v + k on Z_n for dihedral n, the defining action on {0..n-1} for
/// symmetric n, and left multiplication on the group itself for tables.
inline FiniteSetCoalgebra natural_action(const GroupTable& group) {
    const std::size_t n = group.parameter();
    switch (group.kind()) {
        case GroupKind::cyclic:
            return FiniteSetCoalgebra::from_action(group, n, [n](Element g, std::size_t a) { return (g + a) % n; });
        case GroupKind::dihedral:
            return FiniteSetCoalgebra::from_action(group, n, [n](Element g, std::size_t a) {
                const std::size_t f = g / n, k = g % n;
                return f == 0 ? (a + k) % n : (k + n - a) % n;
            });
        case GroupKind::symmetric: {
            const auto perms = lexicographic_permutations(n);
            return FiniteSetCoalgebra::from_action(group, n, [&perms](Element g, std::size_t a) { return perms[g][a]; });
        }
        case GroupKind::table: break;
    }
    return FiniteSetCoalgebra::from_action(group, group.order(),
                                           [&group](Element g, std::size_t a) { return group.mul(g, a); });
}

/// Left multiplication of the group on its own elements.
inline FiniteSetCoalgebra regular_action(const GroupTable& group) {
    return FiniteSetCoalgebra::from_action(group, group.order(),
                                           [&group](Element g, std::size_t a) { return group.mul(g, a); });
}

}  // namespace eqcoalg
