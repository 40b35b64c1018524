#pragma once

// Finite groups as validated multiplication tables.
//
// Elements are the indices 0..order-1 and index 0 is always the identity.
// A GroupTable is immutable; copies share the underlying table.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"

namespace eqcoalg {

using Element = std::size_t;

enum class GroupKind { cyclic, dihedral, symmetric, table };

inline std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::cyclic: return "cyclic";
        case GroupKind::dihedral: return "dihedral";
        case GroupKind::symmetric: return "symmetric";
        case GroupKind::table: return "table";
    }
    return "?";
}

enum class GroupAxiom { shape, closure, identity, inverse, associativity };

inline std::string to_string(GroupAxiom a) {
    switch (a) {
        case GroupAxiom::shape: return "shape";
        case GroupAxiom::closure: return "closure";
        case GroupAxiom::identity: return "identity";
        case GroupAxiom::inverse: return "inverse";
        case GroupAxiom::associativity: return "associativity";
    }
    return "?";
}

/// Raised by GroupTable::from_table with the first violated axiom and a
/// witness (pair or triple of element indices, depending on the axiom).
class GroupAxiomError : public Error {
public:
    GroupAxiomError(GroupAxiom axiom, std::vector<std::size_t> witness, const std::string& what)
        : Error(what), axiom_(axiom), witness_(std::move(witness)) {}

    GroupAxiom axiom() const noexcept { return axiom_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    GroupAxiom axiom_;
    std::vector<std::size_t> witness_;
};

class GroupTable {
public:
    /// Validates a raw multiplication table. Checks run in the order
    /// shape, closure, identity (at index 0), inverses, associativity.
    static GroupTable from_table(const std::vector<std::vector<std::size_t>>& raw) {
        const std::size_t m = raw.size();
        if (m == 0) throw GroupAxiomError(GroupAxiom::shape, {}, "group table: empty table");
        for (std::size_t r = 0; r < m; ++r) {
            if (raw[r].size() != m) {
                throw GroupAxiomError(GroupAxiom::shape, {r},
                                      "group table: row " + std::to_string(r) + " has wrong length");
            }
        }
        std::vector<Element> mul(m * m);
        for (std::size_t g = 0; g < m; ++g) {
            for (std::size_t h = 0; h < m; ++h) {
                if (raw[g][h] >= m) {
                    throw GroupAxiomError(GroupAxiom::closure, {g, h},
                                          "group table: closure fails at (" + std::to_string(g) + "," +
                                              std::to_string(h) + ")");
                }
                mul[g * m + h] = raw[g][h];
            }
        }
        for (std::size_t g = 0; g < m; ++g) {
            if (mul[g] != g || mul[g * m] != g) {
                throw GroupAxiomError(GroupAxiom::identity, {g},
                                      "group table: element 0 is not an identity for element " + std::to_string(g));
            }
        }
        std::vector<Element> inv(m);
        for (std::size_t g = 0; g < m; ++g) {
            std::optional<Element> found;
            for (std::size_t h = 0; h < m && !found; ++h) {
                if (mul[g * m + h] == 0 && mul[h * m + g] == 0) found = h;
            }
            if (!found) {
                throw GroupAxiomError(GroupAxiom::inverse, {g},
                                      "group table: no inverse for element " + std::to_string(g));
            }
            inv[g] = *found;
        }
        for (std::size_t g = 0; g < m; ++g)
            for (std::size_t h = 0; h < m; ++h)
                for (std::size_t k = 0; k < m; ++k) {
                    if (mul[mul[g * m + h] * m + k] != mul[g * m + mul[h * m + k]]) {
                        throw GroupAxiomError(GroupAxiom::associativity, {g, h, k},
                                              "group table: associativity fails at (" + std::to_string(g) + "," +
                                                  std::to_string(h) + "," + std::to_string(k) + ")");
                    }
                }
        return GroupTable(m, std::move(mul), std::move(inv), GroupKind::table, m);
    }

    std::size_t order() const noexcept { return data_->order; }
    static constexpr Element identity() noexcept { return 0; }

    Element mul(Element g, Element h) const { return data_->mul[g * data_->order + h]; }
    Element inv(Element g) const { return data_->inv[g]; }

    /// How the table was produced; `parameter` is n for the built-in families
    /// and the order for tables read from data.
    GroupKind kind() const noexcept { return data_->kind; }
    std::size_t parameter() const noexcept { return data_->parameter; }

    std::string name() const {
        switch (kind()) {
            case GroupKind::cyclic: return "C" + std::to_string(parameter());
            case GroupKind::dihedral: return "D" + std::to_string(parameter());
            case GroupKind::symmetric: return "S" + std::to_string(parameter());
            case GroupKind::table: return "table(" + std::to_string(order()) + ")";
        }
        return "?";
    }

    bool is_abelian() const {
        for (Element g = 0; g < order(); ++g)
            for (Element h = 0; h < g; ++h)
                if (mul(g, h) != mul(h, g)) return false;
        return true;
    }

    /// Same multiplication table (the construction label is ignored).
    friend bool operator==(const GroupTable& a, const GroupTable& b) {
        return a.data_ == b.data_ || a.data_->mul == b.data_->mul;
    }

    GroupTable relabeled(GroupKind kind, std::size_t parameter) const {
        return GroupTable(order(), data_->mul, data_->inv, kind, parameter);
    }

private:
    struct Data {
        std::size_t order;
        std::vector<Element> mul;
        std::vector<Element> inv;
        GroupKind kind;
        std::size_t parameter;
    };

    GroupTable(std::size_t m, std::vector<Element> mul, std::vector<Element> inv, GroupKind kind,
               std::size_t parameter)
        : data_(std::make_shared<const Data>(Data{m, std::move(mul), std::move(inv), kind, parameter})) {}

    std::shared_ptr<const Data> data_;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> table_from(std::size_t m, auto&& product) {
    std::vector<std::vector<std::size_t>> raw(m, std::vector<std::size_t>(m));
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) raw[g][h] = product(g, h);
    return raw;
}

}  // namespace detail

/// Permutations of {0..n-1} in lexicographic order; the identity comes first.
inline std::vector<std::vector<std::size_t>> lexicographic_permutations(std::size_t n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

inline constexpr std::size_t kMaxSymmetricDegree = 5;

/// Built-in families with deterministic element orderings:
///  - cyclic n: element k is the k-th power of the generator, product (a+b) mod n;
///  - dihedral n (order 2n): index f*n + k is the map v -> (-1)^f v + k on Z_n,
///    so rotations come first and reflections second;
///  - symmetric n: permutations in lexicographic order, (p q)(i) = p(q(i)).
inline GroupTable build_group(GroupKind kind, std::size_t n) {
    if (n < 1) throw DomainError("build_group: n must be >= 1");
    std::vector<std::vector<std::size_t>> raw;
    switch (kind) {
        case GroupKind::cyclic:
            raw = detail::table_from(n, [n](std::size_t a, std::size_t b) { return (a + b) % n; });
            break;
        case GroupKind::dihedral:
            raw = detail::table_from(2 * n, [n](std::size_t a, std::size_t b) {
                const std::size_t fa = a / n, ka = a % n, fb = b / n, kb = b % n;
                const std::size_t k = fa == 0 ? (ka + kb) % n : (ka + n - kb) % n;
                return (fa ^ fb) * n + k;
            });
            break;
        case GroupKind::symmetric: {
            if (n > kMaxSymmetricDegree) throw DomainError("build_group: symmetric group limited to n <= 5");
            const auto perms = lexicographic_permutations(n);
            auto index_of = [&perms](const std::vector<std::size_t>& p) {
                return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
            };
            raw = detail::table_from(perms.size(), [&](std::size_t a, std::size_t b) {
                std::vector<std::size_t> c(n);
                for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
                return index_of(c);
            });
            break;
        }
        case GroupKind::table:
            throw DomainError("build_group: use GroupTable::from_table for explicit tables");
    }
    return GroupTable::from_table(raw).relabeled(kind, n);
}

/// Reads "m" followed by m rows of m whitespace-separated indices.
inline GroupTable parse_group_table(std::istream& in) {
    std::size_t m = 0;
    if (!(in >> m) || m == 0) throw DomainError("group table file: expected a positive order on the first line");
    std::vector<std::vector<std::size_t>> raw(m, std::vector<std::size_t>(m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            long long v = 0;
            if (!(in >> v) || v < 0) {
                throw DomainError("group table file: bad or missing entry at row " + std::to_string(r) + ", column " +
                                  std::to_string(c));
            }
            raw[r][c] = static_cast<std::size_t>(v);
        }
    std::string extra;
    if (in >> extra) throw DomainError("group table file: trailing content after " + std::to_string(m) + " rows");
    return GroupTable::from_table(raw);
}

inline GroupTable load_group_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("group table file: cannot open " + path);
    return parse_group_table(in);
}

inline std::string format_group_table(const GroupTable& g) {
    std::ostringstream out;
    out << g.order() << '\n';
    for (Element a = 0; a < g.order(); ++a) {
        for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
        out << '\n';
    }
    return out.str();
}

}  // namespace eqcoalg
