#pragma once

// X^G for a finite group G: one value per group element.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcoalg/error.hpp"
#include "eqcoalg/group.hpp"

namespace eqcoalg {

/// A function G -> T, stored as one value per element in index order.
template <class T>
class GroupFunction {
public:
    using value_type = T;

    GroupFunction(GroupTable group, std::vector<T> values) : group_(std::move(group)), values_(std::move(values)) {
        if (values_.size() != group_.order()) {
            throw DimensionError("GroupFunction: expected " + std::to_string(group_.order()) + " values, got " +
                                 std::to_string(values_.size()));
        }
    }

    /// Tabulates f over the group.
    template <class F>
    static GroupFunction tabulate(const GroupTable& group, F&& f) {
        std::vector<T> values;
        values.reserve(group.order());
        for (Element g = 0; g < group.order(); ++g) values.push_back(f(g));
        return GroupFunction(group, std::move(values));
    }

    const GroupTable& group() const noexcept { return group_; }
    std::size_t size() const noexcept { return values_.size(); }

    const T& operator()(Element g) const { return values_.at(g); }
    const T& operator[](Element g) const { return values_[g]; }
    const std::vector<T>& values() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
        return a.group_ == b.group_ && a.values_ == b.values_;
    }

private:
    GroupTable group_;
    std::vector<T> values_;
};

/// Result of a law check: holds, or fails with the first witness found.
template <class Witness>
class Verdict {
public:
    Verdict() = default;
    static Verdict fail(Witness w) { return Verdict(std::move(w)); }

    bool holds() const noexcept { return !witness_.has_value(); }
    explicit operator bool() const noexcept { return holds(); }
    const std::optional<Witness>& witness() const noexcept { return witness_; }

private:
    explicit Verdict(Witness w) : witness_(std::move(w)) {}
    std::optional<Witness> witness_;
};

inline void require_same_group(const GroupTable& a, const GroupTable& b, const char* where) {
    if (!(a == b)) throw GroupMismatchError(std::string(where) + ": objects live over different groups");
}

}  // namespace eqcoalg
