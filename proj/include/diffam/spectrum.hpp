#pragma once

#include <vector>

#include "diffam/group.hpp"

namespace diffam {

/// A multiset of group elements as a dense count vector: counts[g] is
/// the multiplicity of element g.  All difference counting below is
/// exact (no hashing, no sampling): every ordered pair is enumerated.
struct Spectrum {
    std::vector<long long> counts;

    long long at(Elem g) const { return counts[g]; }
    long long total() const;

    /// Elements with nonzero count, ascending.
    std::vector<Elem> support() const;

    /// True if every element of `where` has count `value`.
    bool constant_on(const std::vector<Elem>& where, long long value) const;

    /// If all elements of `where` share one count, returns it.  An
    /// empty `where` returns std::nullopt (no uniform value exists
    /// vacuously; callers decide how to treat it).
    std::optional<long long> uniform_value(const std::vector<Elem>& where) const;
};

/// Multiset { x * y^-1 : x, y in block, x != y }.
Spectrum internal_differences(const FiniteGroup& group, const std::vector<Elem>& block);

/// Multiset { x * y^-1 : x in a, y in b } (all ordered pairs; if the
/// sets intersect the identity shows up with multiplicity |a n b|).
Spectrum external_differences(const FiniteGroup& group, const std::vector<Elem>& a,
                              const std::vector<Elem>& b);

/// Union over blocks of their internal differences.
Spectrum family_internal(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks);

/// Union over ordered pairs of distinct blocks of their external differences.
Spectrum family_external(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks);

} // namespace diffam
