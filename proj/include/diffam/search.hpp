#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffam/classify.hpp"
#include "diffam/construct.hpp"
#include "diffam/group.hpp"

namespace diffam {

enum class SearchGoal {
  dpdf,    // families whose internal counts split uniformly
  epdf,    // families whose external counts split uniformly
  rds,     // single blocks avoiding a forbidden subgroup
  family,  // families selected by an explicit predicate
};
const char* to_string(SearchGoal goal);
SearchGoal parse_search_goal(const std::string& text);

enum class SearchPredicate {
  none,
  epdf_not_dpdf,
  dpdf_not_epdf,
  dpdf_and_epdf,
  dpdf_and_epdf_proper_pds,  // both verdicts and the union a proper PDS
};
const char* to_string(SearchPredicate predicate);
SearchPredicate parse_search_predicate(const std::string& text);

struct SearchSpec {
  explicit SearchSpec(FiniteGroup g) : group(std::move(g)) {}

  FiniteGroup group;
  SearchGoal goal = SearchGoal::dpdf;
  long long s = 1;  // number of blocks
  long long k = 1;  // block size
  // RDS goal only: the forbidden subgroup and the target count.
  std::optional<Subgroup> subgroup;
  long long rds_lambda = 1;
  SearchPredicate predicate = SearchPredicate::none;
  // Opt-in reduction: pins the first block's minimum to the smallest
  // non-identity element.  Off by default so exhaustiveness speaks about
  // the full canonical space.
  bool symmetry_reduction = false;
  long long limit = -1;              // max solutions; -1 = unlimited
  long long budget = 100000000;      // node cap
  long long max_order = 64;          // exhaustive-mode group order bound
};

struct SearchSolution {
  std::vector<std::vector<Elem>> family;
  DesignReport report;
};

/// exhausted=true together with empty solutions is a nonexistence
/// certificate for the canonical-representative space that was declared
/// (reduced or full, per symmetry_reduced).
struct SearchOutcome {
  std::vector<SearchSolution> solutions;
  bool exhausted = false;
  long long nodes_visited = 0;
  bool symmetry_reduced = false;
};

/// Depth-first search over families in canonical form: blocks ordered by
/// strictly increasing minimum element, elements ascending, pairwise
/// disjoint, identity excluded.  Pruning uses only bounds implied by the
/// integer counting identities; every emitted family is re-verified by
/// the classifier.
SearchOutcome search_families(const SearchSpec& spec);

/// Search for k-element blocks fixed (setwise) by a group automorphism,
/// given as the image table automorphism[x]; blocks are unions of orbits.
/// Solutions are classifier-verified (m, n, k, lambda)-RDSs relative to
/// the subgroup.  The identity map degenerates to an unrestricted RDS
/// search.
SearchOutcome find_fixed_rds(const FiniteGroup& group, const Subgroup& subgroup, long long k,
                             long long lambda, const std::vector<Elem>& automorphism);

/// Outcome of carrying a block from a cyclic group into a twisted-addition
/// group over the same element carrier.
struct SpenceTransferReport {
  GroupSpec base_spec;
  GroupSpec spence_spec;
  std::vector<Elem> block;
  std::vector<Elem> subgroup;
  bool subgroup_normal_in_spence = false;
  DesignReport base_report;    // the block in the cyclic group
  DesignReport spence_report;  // the block under the twisted operation
  bool transfers = false;      // RDS parameters carry over unchanged
  // When the transfer holds and the translate-family preconditions are
  // met, the chained family construction and its verification.
  std::optional<ConstructionResult> chained;
  std::optional<VerificationOutcome> chained_outcome;
  std::vector<std::string> notes;
};

/// Verifies that `block` is an affine (m, m-2, m-1, 1)-RDS relative to
/// `subgroup_elems` in the cyclic base group, that it is fixed by
/// x -> p*x, and reports whether the same parameters hold under the
/// twisted operation; chains into the translate-family construction when
/// they do.
SpenceTransferReport spence_transfer(const FiniteGroup& base, const FiniteGroup& spence,
                                     const std::vector<Elem>& block,
                                     const std::vector<Elem>& subgroup_elems);

}  // namespace diffam
