#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffam/group.hpp"
#include "diffam/spectrum.hpp"

namespace diffam {

// ---- extracted parameter records ----

/// (v,k,lambda): every non-identity element appears lambda times among
/// the differences of D.
struct DsParams {
    long long v = 0, k = 0, lambda = 0;
};

/// (v,k,lambda,mu): differences hit D-members lambda times and
/// non-members mu times.  `proper` means lambda != mu; `regular` means
/// the identity is outside D and D is closed under inverses.
struct PdsParams {
    long long v = 0, k = 0, lambda = 0, mu = 0;
    bool proper = false;
    bool regular = false;
};

/// (v,s,k,lambda) for a family whose internal (DDF) or external (EDF)
/// differences are uniform over all non-identity elements.
struct DdfParams {
    long long v = 0, s = 0, k = 0, lambda = 0;
};

/// (v,s,k,lambda,mu) for a family whose internal (DPDF) or external
/// (EPDF) differences hit union members lambda times and the remaining
/// non-identity elements mu times.
struct PdfParams {
    long long v = 0, s = 0, k = 0, lambda = 0, mu = 0;
};

/// One block avoiding a subgroup: differences miss H entirely and hit
/// every element outside H exactly lambda times.
struct RdsEntry {
    int block_index = 0;
    long long m = 0, n = 0, k = 0, lambda = 0;
    std::vector<Elem> subgroup;
    bool subgroup_normal = false; ///< false = relaxed-normality entry
    bool relation_holds = false;  ///< k(k-1) == lambda * n * (m-1)
};

/// One block with distinct uniform difference counts inside and outside
/// a subgroup (lambda on H\{e}, mu on G\H, lambda != mu).
struct DdsEntry {
    int block_index = 0;
    long long m = 0, n = 0, k = 0, lambda = 0, mu = 0;
    std::vector<Elem> subgroup;
    bool subgroup_normal = false;
};

/// A single design verdict: either extracted parameters or a reason why
/// the definition is not satisfied.
template <typename Params> struct Verdict {
    std::optional<Params> params;
    std::string reason; ///< non-empty when not satisfied
    bool satisfied() const { return params.has_value(); }
};

/// What the union of the blocks partitions.
enum class PartitionTarget {
    all_non_identity,       ///< union = G \ {e}
    complement_of_subgroup, ///< union = G \ H for a subgroup H
    subgroup_minus_identity,///< union = H \ {e} for a subgroup H
    other,                  ///< a set with no recognized structure
    none,                   ///< blocks overlap; nothing is partitioned
};
const char* to_string(PartitionTarget t);

/// A recomputed integer identity, recorded so certificates show their
/// own cross-checks.
struct IdentityCheck {
    std::string name;
    long long lhs = 0, rhs = 0;
    bool holds = false;
};

/// Full classification of a block or block family by exhaustive
/// difference counting.  Every verdict slot is either parameters or a
/// NOT-SATISFIED reason; nothing is inferred from theory.
struct DesignReport {
    GroupSpec group_spec;
    std::vector<std::vector<Elem>> blocks; ///< sanitized: each sorted
    long long v = 0;
    long long s = 0;            ///< number of blocks
    std::optional<long long> k; ///< common block size; empty = NOT-UNIFORM
    bool disjoint = true;
    bool identity_free = true;
    bool identity_count_anomaly = false; ///< overlap mass on the identity
    bool near_complete = false;          ///< union = G \ {e}
    std::vector<Elem> union_set;

    Spectrum internal;       ///< within-block differences, all blocks
    Spectrum external;       ///< cross-block differences, ordered pairs
    Spectrum union_internal; ///< differences of the union as one set

    Verdict<DsParams> ds;   ///< union as a difference set
    Verdict<PdsParams> pds; ///< union as a partial difference set
    Verdict<DdfParams> ddf;
    Verdict<DdfParams> edf;
    Verdict<PdfParams> dpdf;
    Verdict<PdfParams> epdf;
    std::vector<RdsEntry> rds; ///< per block, per qualifying subgroup
    std::vector<DdsEntry> dds;

    PartitionTarget partition_target = PartitionTarget::none;
    std::vector<Elem> partition_subgroup; ///< H witness when applicable
    bool partition_subgroup_normal = false;

    std::vector<IdentityCheck> identities_checked;

    /// Uniform counts, recorded even when a verdict is withheld because
    /// the outside class is empty (mu vacuous).
    std::optional<long long> internal_on_union, internal_outside;
    std::optional<long long> external_on_union, external_outside;
    bool outside_empty = false;
};

/// Classifies a family of blocks.  If `subgroup` is given it is always
/// among the tried forbidden-subgroup candidates; subgroups are also
/// discovered automatically when the group order is at most 128.
/// `subgroup_analysis` = false skips the per-block RDS/DDS scan (used
/// by the search inner loop; partition-target detection is unaffected).
DesignReport classify_family(const FiniteGroup& group, std::vector<std::vector<Elem>> blocks,
                             const std::optional<Subgroup>& subgroup = std::nullopt,
                             bool subgroup_analysis = true);

/// Classifies a single block (a one-block family; the family verdicts
/// then describe the block itself).
DesignReport classify_block(const FiniteGroup& group, std::vector<Elem> block,
                            const std::optional<Subgroup>& subgroup = std::nullopt);

// ---- integer identities ----

/// sk(k-1) = lambda*sk + mu*(v-1-sk): internal counting identity.
bool check_internal_identity(long long v, long long s, long long k, long long lambda,
                             long long mu);

/// s(s-1)k^2 = lambda*sk + mu*(v-1-sk): external counting identity.
bool check_external_identity(long long v, long long s, long long k, long long lambda,
                             long long mu);

/// k(k-1) = lambda * n * (m-1): forbidden-subgroup counting identity.
bool check_rds_relation(long long m, long long n, long long k, long long lambda);

// ---- predicted parameter menus ----

/// Constraints on (lambda1, mu1) / (lambda2, mu2) for a family of s
/// k-subsets partitioning G\H, |G| = v = m*n, |H| = n:
///  - n divides both mu values;
///  - when gcd(v-n, v-1) = 1 (always true for n = 2), the parameters
///    are one of exactly two alternatives;
///  - when gcd(sk, v-1) = 1, each mu is 0 or sk.
struct ParameterMenu {
    long long v = 0, s = 0, k = 0, n = 0;
    long long mu_divisor = 1; ///< n (1 = no constraint)
    bool alternatives_apply = false;
    std::pair<long long, long long> dpdf_option_a, epdf_option_a;
    std::pair<long long, long long> dpdf_option_b, epdf_option_b;
    bool mu_two_valued = false;
    std::vector<long long> mu_candidates; ///< {0, sk} when mu_two_valued
};
ParameterMenu parameter_constraints(long long v, long long s, long long k, long long n);

} // namespace diffam
