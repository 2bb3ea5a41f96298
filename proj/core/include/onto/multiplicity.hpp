// multiplicity.hpp - UML-style multiplicity intervals
#pragma once

#include <optional>
#include <string>

namespace onto {

/// A closed interval [min, max] where max may be unbounded.
struct Multiplicity {
    int min = 0;
    std::optional<int> max;  // nullopt = unbounded

    bool unbounded() const { return !max.has_value(); }
    bool contains(int n) const { return n >= min && (!max || n <= *max); }

    static Multiplicity exactly(int n) { return {n, n}; }
    static Multiplicity at_least(int n) { return {n, std::nullopt}; }
    static Multiplicity any() { return {0, std::nullopt}; }

    /// Canonical token form: "N", "*", "N..M" or "N..*".
    std::string to_string() const;
};

bool operator==(const Multiplicity& a, const Multiplicity& b);

}  // namespace onto
