#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffam/classify.hpp"
#include "diffam/group.hpp"

namespace diffam {

// ---------------------------------------------------------------------------
// Claims: machine-checkable statements attached to a constructed family.
// ---------------------------------------------------------------------------

enum class ClaimKind {
  ds,              // params {v, k, lambda} on the family union
  pds,             // params {v, k, lambda, mu} on the family union
  ddf,             // params {v, s, k, lambda}
  edf,             // params {v, s, k, lambda}
  dpdf,            // params {v, s, k, lambda1, mu1}
  epdf,            // params {v, s, k, lambda2, mu2}
  rds,             // params {m, n, k, lambda}; block_index/elements + subgroup
  dds,             // params {m, n, k, lambda, mu}; block_index/elements + subgroup
  block_spectrum,  // expected_counts = internal difference counts of one block
  union_spectrum,  // expected_counts = internal difference counts of the union set
};

const char* to_string(ClaimKind kind);

struct Claim {
  ClaimKind kind{};
  // When false the claim is that the verdict is NOT satisfied.
  bool expect_satisfied = true;
  std::vector<long long> params;
  // Block the claim applies to (rds/dds/block_spectrum); -1 = whole family.
  int block_index = -1;
  // Explicit element set overriding block_index (e.g. a block augmented by
  // the identity); empty means "use block_index / the family".
  std::vector<Elem> elements;
  // Forbidden subgroup elements for rds/dds claims.
  std::vector<Elem> subgroup;
  // True when the subgroup is known not to be normal and the claim is made
  // under the relaxed (non-normal) reading.
  bool relaxed_normality = false;
  // Expected dense count vector for *_spectrum claims.
  std::vector<long long> expected_counts;
};

// Human-readable one-line label, e.g. "(60,2,29,28,0)-DPDF".
std::string claim_label(const Claim& claim);

struct ConstructionResult {
  std::string construction;                                 // registered name
  std::vector<std::pair<std::string, std::string>> params;  // ordered inputs
  FiniteGroup group;
  std::optional<Subgroup> subgroup;  // the H of the construction, if any
  std::vector<std::vector<Elem>> family;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Verification: every claim is re-checked by the counting engine.
// ---------------------------------------------------------------------------

struct ClaimCheck {
  Claim claim;
  bool confirmed = false;
  std::string detail;  // what was actually computed, on mismatch or success
};

struct VerificationOutcome {
  DesignReport report;  // full classification of the family
  std::vector<ClaimCheck> checks;
  bool all_confirmed = false;
};

VerificationOutcome verify_construction(const ConstructionResult& result);

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

// Family of all nontrivial cosets of a normal subgroup H with 2 <= |H| < |G|.
ConstructionResult coset_dpdf(const FiniteGroup& group, const Subgroup& subgroup);

// Z_{2m} for odd m > 3: blocks {i, m-i, m+i, 2m-i} for 1 <= i <= (m-1)/2.
ConstructionResult cyclic_quadruple_dpdf(long long m);

// Z_{2p} for prime p = 1 (mod 4): quadratic-residue doubling.
ConstructionResult qr_doubling_dpdf(long long p);

// Z_{12d+4}: d cosets split along K = {0, 6d+2}, the other 2d cosets split
// into difference-(3d+1) pairs per `choices` (one bit per such coset).
// `split_cosets` selects which d of the 3d coset indices 1..3d are split
// along K; defaults to {1, ..., d}.
ConstructionResult coset_partition_dpdf(long long d, const std::vector<int>& choices,
                                        std::vector<long long> split_cosets = {});

enum class BoseForm { additive, multiplicative };
const char* to_string(BoseForm form);
BoseForm parse_bose_form(const std::string& text);

// Line-based family over GF(q^2): blocks S_c for c in GF(q)*, realized in a
// cyclic group of order q^2-1 (additive form: plain integers; multiplicative
// form: the same group labeled by field elements).
ConstructionResult bose_dpdf(long long q, BoseForm form);

// Translate family {hD : h in H} of a normalized (m, n, m-1, (m-2)/n)-RDS.
ConstructionResult rds_translate_dpdf(const FiniteGroup& group, const Subgroup& subgroup,
                                      const std::vector<Elem>& rds_block);

// Strip H from an (mn, (n-1)^2+n, n)-DS containing it, m = (n-1)^2+1, and
// translate the remainder around H.
ConstructionResult ds_strip_dpdf(const FiniteGroup& group, const Subgroup& subgroup,
                                 const std::vector<Elem>& ds_block);

// Z_{3m} for odd m > 3: blocks {i, 3m-i}, 1 <= i <= (3m-1)/2, i != m.
ConstructionResult pair_family_z3m(long long m);

// Push a near-complete DDF through an injective homomorphism onto a subgroup.
// `embedding[x]` is the image in `ambient` of source element x.
ConstructionResult embed_ddf_dpdf(const FiniteGroup& ambient, const Subgroup& subgroup,
                                  const FiniteGroup& source,
                                  const std::vector<std::vector<Elem>>& ddf_blocks,
                                  const std::vector<Elem>& embedding);

// Z_{2t+1} for t > 2: blocks {2,3},{4,5},...,{2t-2,2t-1}; a DPDF whose
// external spectrum is provably non-constant (EPDF claimed NOT satisfied).
ConstructionResult dpdf_not_epdf_pairs(long long t);

// Hard-coded designs, loaded with their original claims.
ConstructionResult catalog(const std::string& name);
std::vector<std::string> catalog_names();

// ---------------------------------------------------------------------------
// Structural category of a family partitioning G \ H.
// ---------------------------------------------------------------------------

enum class StructureCategory {
  all_cosets,        // every block is a full nontrivial coset
  union_of_cosets,   // every block is a union of >= 2 full cosets
  coset_subdivision, // every block is a proper subset of a single coset
  transversal_type,  // every block meets each coset at most once
  other,
};

const char* to_string(StructureCategory category);

// Requires result.subgroup and a family partitioning G \ H; cross-checks the
// category's forced zero/nonzero parameter pattern against the classifier.
StructureCategory category_of(const ConstructionResult& result);

}  // namespace diffam
