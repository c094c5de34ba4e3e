#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "diffam/error.hpp"

namespace diffam {

/// Index of a group element, always in [0, order()).
using Elem = int;

/// Largest group order the library will materialize.  Every group is
/// stored as a dense multiplication table, so this bounds memory at
/// order^2 16-bit entries (~200 MB at the cap).
inline constexpr int kMaxGroupOrder = 10000;

/// Which concrete family a group was built from.  The kind decides the
/// canonical element naming used in certificates: integer-labelled
/// kinds (cyclic, spence) serialize elements as JSON numbers, all
/// others as label strings.
enum class GroupKind {
    cyclic,
    gf_additive,
    gf_multiplicative,
    semidirect,
    alternating,
    spence,
    cayley,
};

/// Parsed form of a group spec string.  The accepted grammar:
///
///   Z:<v>              cyclic group of order v
///   GFadd:<p>^<r>      additive group of GF(p^r)
///   GFmul:<p>^<r>      multiplicative group of GF(p^r)
///   SD:<n>:<m>:<t>     semidirect product Z_n x| Z_m, b a b^-1 = a^t
///   A:<n>              alternating group on n points (2 <= n <= 7)
///   Spence:<p>:<h>:<v> Spence-type group of order (p^h)^v - 1
///   Cayley:@<path>     explicit table loaded from a JSON file
struct GroupSpec {
    GroupKind kind = GroupKind::cyclic;
    long long a = 0; ///< v / p / n / p  (per kind, in grammar order)
    long long b = 0; ///< r / m / h
    long long c = 0; ///< t / v
    std::string path; ///< cayley only; "-" marks an inline table

    /// Canonical text form (parses back to an equal spec).
    std::string text() const;
    static GroupSpec parse(const std::string& text);
    bool operator==(const GroupSpec&) const = default;
};

/// Order in which two permutations are composed.
enum class PermComposition {
    right_to_left, ///< (s*t)(x) = s(t(x)): apply t first
    left_to_right, ///< (s*t)(x) = t(s(x)): apply s first
};

/// Which side a coset or translate is formed on.
enum class Side { left, right };

/// A finite group given by a fully validated multiplication table.
///
/// Instances are immutable and cheap to copy (shared internal state).
/// Construction validates the table eagerly: every row and column must
/// be a permutation, a two-sided identity and two-sided inverses must
/// exist, and associativity is checked exhaustively up to order 256
/// (10 * order deterministic pseudo-random triples above that).
class FiniteGroup {
  public:
    FiniteGroup() = default; ///< empty handle; any use throws

    int order() const { return data().order; }
    Elem identity() const { return data().identity; }
    bool is_abelian() const { return data().abelian; }
    const GroupSpec& spec() const { return data().spec; }
    GroupKind kind() const { return data().spec.kind; }

    /// Product of two elements.
    Elem op(Elem x, Elem y) const {
        const Data& d = data();
        require_elem(x);
        require_elem(y);
        return d.table[static_cast<size_t>(x) * d.order + y];
    }

    Elem inverse(Elem x) const {
        require_elem(x);
        return data().inverse[x];
    }

    /// x * y^-1 (the "difference" used throughout the counting engine).
    Elem difference(Elem x, Elem y) const { return op(x, inverse(y)); }

    /// Display label of an element.
    const std::string& label(Elem x) const {
        require_elem(x);
        return data().labels[x];
    }

    /// Element with exactly this label; throws parse_error if unknown.
    Elem element(const std::string& label) const;

    /// Element with exactly this label, or std::nullopt if none.
    std::optional<Elem> find_element(const std::string& label) const;

    /// True if both handles share the same underlying table.
    bool same_group(const FiniteGroup& other) const { return data_ == other.data_; }

    /// Builds a group from an explicit table, running full validation.
    /// `table` is row-major: table[x*n + y] = x * y.
    static FiniteGroup from_table(GroupSpec spec,
                                  std::vector<std::string> labels,
                                  const std::vector<int>& table);

    /// Builds a group from an op callback, running the same validation
    /// without materializing an intermediate table.
    static FiniteGroup from_op(GroupSpec spec, std::vector<std::string> labels,
                               const std::function<int(Elem, Elem)>& op);

  private:
    struct Data {
        GroupSpec spec;
        int order = 0;
        Elem identity = 0;
        bool abelian = false;
        std::vector<std::uint16_t> table;
        std::vector<std::uint16_t> inverse;
        std::vector<std::string> labels;
        std::unordered_map<std::string, Elem> label_to_elem;
    };

    const Data& data() const {
        if (!data_) throw Error(ErrorKind::invalid_parameter, "use of an empty group handle");
        return *data_;
    }
    void require_elem(Elem x) const {
        if (x < 0 || x >= data().order)
            throw Error(ErrorKind::invalid_parameter,
                        "element index " + std::to_string(x) + " out of range for group of order " +
                            std::to_string(data().order));
    }

    std::shared_ptr<const Data> data_;
};

/// A validated subgroup.  Carries a handle to its parent group, the
/// sorted element list, a membership mask, and whether conjugation by
/// every group element preserves it.
struct Subgroup {
    FiniteGroup parent;
    std::vector<Elem> elements; ///< sorted ascending
    std::vector<char> member;   ///< size parent.order()
    bool is_normal = false;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(Elem x) const {
        return x >= 0 && x < static_cast<int>(member.size()) && member[x] != 0;
    }
};

// ---- builders ----

/// Cyclic group Z_v with elements named by their residues.
FiniteGroup build_cyclic(int v);

/// Semidirect product Z_n x| Z_m with b a b^-1 = a^t, elements a^i b^j
/// indexed as i + n*j.  Requires gcd(t, n) = 1 and t^m = 1 (mod n).
FiniteGroup build_semidirect_cyclic(int n, int m, long long t);

/// Alternating group on n points, 2 <= n <= 7.  Elements are the even
/// permutations in lexicographic one-line order (identity is index 0)
/// and are labelled in cycle notation with 1-based points.
FiniteGroup build_alternating(int n, PermComposition comp = PermComposition::right_to_left);

/// Group of order q^v - 1 (q = p^h) on residues {0, ..., q^v - 2} with
///   i (+) j = i * q^r(j) + j  (mod q^v - 1),
/// where r(j) is the unique i in [0, v) with q^i = 1 + j(q-1) modulo
/// v(q-1).  Abelian (cyclic) exactly when v = 1.
FiniteGroup build_spence(int p, int h, int v);

/// Group from an explicit labelled table (see FiniteGroup::from_table).
FiniteGroup build_from_cayley(std::vector<std::string> labels,
                              const std::vector<std::vector<int>>& table,
                              GroupSpec spec = GroupSpec{GroupKind::cayley, 0, 0, 0, "-"});

/// Builds the group a spec string / parsed spec describes.  Cayley
/// specs load {"labels": [...], "table": [[...]]} from spec.path.
FiniteGroup group_from_spec(const GroupSpec& spec);
FiniteGroup group_from_spec(const std::string& spec_text);

// ---- subgroups, cosets, translates ----

/// Smallest subgroup containing the generators (empty list gives the
/// trivial subgroup).
Subgroup subgroup_from(const FiniteGroup& group, const std::vector<Elem>& generators);

/// Wraps an explicit element list as a subgroup, verifying closure;
/// throws validation_failure naming a witness pair if it is not one.
Subgroup subgroup_from_elements(const FiniteGroup& group, std::vector<Elem> elements);

/// Every subgroup (trivial and full included), sorted by order then by
/// element list.  Complete by construction: all cyclic subgroups are
/// found first and closed under pairwise join until a fixpoint.
/// Only available for groups of order <= 128 (throws not_applicable
/// above that; callers pass explicit subgroups instead).
std::vector<Subgroup> all_subgroups(const FiniteGroup& group);

/// Throws invalid_parameter unless the subgroup was built over this
/// group (or over a structurally identical one built from the same
/// non-Cayley spec).
void require_subgroup_of(const FiniteGroup& group, const Subgroup& subgroup);

/// Cosets of a subgroup, the subgroup itself first and the rest in
/// ascending order of their minimum element.  Each coset is sorted.
std::vector<std::vector<Elem>> cosets_of(const FiniteGroup& group, const Subgroup& subgroup,
                                         Side side = Side::left);

/// g*S (left) or S*g (right), returned sorted.
std::vector<Elem> translate(const FiniteGroup& group, Elem g, const std::vector<Elem>& set,
                            Side side = Side::left);

// ---- element parsing ----

/// Liberal element lookup.  Cyclic groups read bare integers as
/// residues.  Elsewhere an exact display label wins first (labels
/// always round-trip), then a bare integer is an element index, then
/// kind-specific forms are tried: words in a and b (semidirect groups)
/// or cycle notation (alternating groups).
Elem parse_element(const FiniteGroup& group, const std::string& token);

/// Comma/space separated list of element tokens.
std::vector<Elem> parse_element_list(const FiniteGroup& group, const std::string& csv);

// ---- permutation helpers (used by the alternating builder and tests) ----

namespace perm {

/// One-line notation: p[i] = image of point i (0-based).
using Perm = std::vector<int>;

/// Parses cycle notation with 1-based single-digit points, e.g.
/// "(13)(45)" or "(12345)"; "id", "()" and "e" denote the identity.
Perm parse_cycles(const std::string& text, int n);

/// Canonical cycle notation: cycles sorted by smallest point, each
/// cycle started at its smallest point; fixed points omitted; the
/// identity prints as "id".
std::string format_cycles(const Perm& p);

/// Parity: true if the permutation is a product of an even number of
/// transpositions.
bool is_even(const Perm& p);

/// Composition under the given convention.
Perm compose(const Perm& s, const Perm& t, PermComposition comp);

} // namespace perm

} // namespace diffam
