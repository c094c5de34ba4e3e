#include "diffam/classify.hpp"

#include <algorithm>
#include <numeric>

namespace diffam {

const char* to_string(PartitionTarget t) {
    switch (t) {
    case PartitionTarget::all_non_identity: return "all-non-identity";
    case PartitionTarget::complement_of_subgroup: return "complement-of-subgroup";
    case PartitionTarget::subgroup_minus_identity: return "subgroup-minus-identity";
    case PartitionTarget::other: return "other";
    case PartitionTarget::none: return "none";
    }
    return "?";
}

bool check_internal_identity(long long v, long long s, long long k, long long lambda,
                             long long mu) {
    return s * k * (k - 1) == lambda * s * k + mu * (v - 1 - s * k);
}

bool check_external_identity(long long v, long long s, long long k, long long lambda,
                             long long mu) {
    return s * (s - 1) * k * k == lambda * s * k + mu * (v - 1 - s * k);
}

bool check_rds_relation(long long m, long long n, long long k, long long lambda) {
    return k * (k - 1) == lambda * n * (m - 1);
}

ParameterMenu parameter_constraints(long long v, long long s, long long k, long long n) {
    ParameterMenu menu;
    menu.v = v;
    menu.s = s;
    menu.k = k;
    menu.n = n;
    if (n < 1 || v < 1 || n > v || v % n != 0)
        throw Error(ErrorKind::invalid_parameter,
                    "parameter_constraints needs a subgroup order n dividing v");
    menu.mu_divisor = n;
    if (n > 1 && std::gcd(v - n, v - 1) == 1) {
        menu.alternatives_apply = true;
        // union size is v - n; with mu forced to 0 or v - n on each side:
        menu.dpdf_option_a = {k - 1, 0};
        menu.epdf_option_a = {v - 2 * n - k + 1, v - n};
        menu.dpdf_option_b = {k - n, v - n};
        menu.epdf_option_b = {v - n - k, 0};
    }
    if (v - 1 > 0 && std::gcd(s * k, v - 1) == 1) {
        menu.mu_two_valued = true;
        menu.mu_candidates = {0, s * k};
    }
    return menu;
}

namespace {

std::vector<std::vector<Elem>> sanitize_blocks(const FiniteGroup& group,
                                               std::vector<std::vector<Elem>> blocks) {
    for (size_t i = 0; i < blocks.size(); ++i) {
        auto& b = blocks[i];
        if (b.empty())
            throw Error(ErrorKind::invalid_parameter, "block " + std::to_string(i) + " is empty");
        for (Elem x : b)
            if (x < 0 || x >= group.order())
                throw Error(ErrorKind::invalid_parameter,
                            "block " + std::to_string(i) + " has out-of-range element index " +
                                std::to_string(x));
        std::sort(b.begin(), b.end());
        for (size_t j = 1; j < b.size(); ++j)
            if (b[j] == b[j - 1])
                throw Error(ErrorKind::invalid_parameter,
                            "block " + std::to_string(i) + " repeats element '" +
                                group.label(b[j]) + "'");
    }
    return blocks;
}

/// True if `set` (given by a membership mask with `size` members,
/// containing the identity) is closed under the group operation.
bool mask_is_subgroup(const FiniteGroup& g, const std::vector<char>& mask) {
    std::vector<Elem> members;
    for (Elem x = 0; x < g.order(); ++x)
        if (mask[x]) members.push_back(x);
    for (Elem x : members)
        for (Elem y : members)
            if (!mask[g.op(x, y)]) return false;
    return true;
}

} // namespace

DesignReport classify_family(const FiniteGroup& group, std::vector<std::vector<Elem>> blocks_in,
                             const std::optional<Subgroup>& subgroup, bool subgroup_analysis) {
    DesignReport r;
    r.group_spec = group.spec();
    r.blocks = sanitize_blocks(group, std::move(blocks_in));
    const int v = group.order();
    const Elem e = group.identity();
    r.v = v;
    r.s = static_cast<long long>(r.blocks.size());

    // Union, disjointness, identity freedom.
    std::vector<int> occupancy(v, 0);
    for (const auto& b : r.blocks)
        for (Elem x : b) ++occupancy[x];
    r.disjoint = true;
    for (int x = 0; x < v; ++x)
        if (occupancy[x] > 1) r.disjoint = false;
    for (int x = 0; x < v; ++x)
        if (occupancy[x] > 0) r.union_set.push_back(x);
    r.identity_free = occupancy[e] == 0;

    // Uniform block size.
    if (!r.blocks.empty()) {
        size_t k0 = r.blocks.front().size();
        bool uniform = true;
        for (const auto& b : r.blocks) uniform = uniform && b.size() == k0;
        if (uniform) r.k = static_cast<long long>(k0);
    }

    // Spectra.
    r.internal = family_internal(group, r.blocks);
    r.external = family_external(group, r.blocks);
    r.union_internal = internal_differences(group, r.union_set);
    r.identity_count_anomaly = r.external.counts.empty() ? false : r.external.counts[e] > 0;

    std::vector<Elem> g_star;
    g_star.reserve(v - 1);
    for (Elem x = 0; x < v; ++x)
        if (x != e) g_star.push_back(x);
    std::vector<Elem> union_non_identity;
    std::vector<Elem> outside;
    {
        std::vector<char> in_union(v, 0);
        for (Elem x : r.union_set) in_union[x] = 1;
        for (Elem x : g_star) {
            if (in_union[x]) union_non_identity.push_back(x);
            else outside.push_back(x);
        }
    }
    r.near_complete = r.identity_free && outside.empty() && !r.union_set.empty();
    r.outside_empty = outside.empty();

    // ---- union-as-a-set verdicts (DS / PDS) ----
    if (r.union_set.empty()) {
        r.ds.reason = "the family is empty";
        r.pds.reason = "the family is empty";
    } else {
        if (auto lam = r.union_internal.uniform_value(g_star)) {
            r.ds.params = DsParams{v, static_cast<long long>(r.union_set.size()), *lam};
        } else {
            r.ds.reason = g_star.empty()
                              ? "the group has no non-identity elements"
                              : "union differences are not uniform over non-identity elements";
        }
        if (union_non_identity.empty()) {
            r.pds.reason = "the union contains no non-identity element";
        } else if (outside.empty()) {
            r.pds.reason =
                "the union covers all non-identity elements; the outside count is vacuous";
        } else {
            auto lam = r.union_internal.uniform_value(union_non_identity);
            auto mu = r.union_internal.uniform_value(outside);
            if (lam && mu) {
                bool inv_closed = true;
                std::vector<char> in_union(v, 0);
                for (Elem x : r.union_set) in_union[x] = 1;
                for (Elem x : r.union_set) inv_closed = inv_closed && in_union[group.inverse(x)];
                PdsParams p{v, static_cast<long long>(r.union_set.size()), *lam, *mu,
                            *lam != *mu, r.identity_free && inv_closed};
                r.pds.params = p;
            } else {
                r.pds.reason = "union differences are not uniform on the member/non-member split";
            }
        }
    }

    // ---- family verdicts (DDF/EDF, DPDF/EPDF) ----
    std::string ineligible;
    if (r.blocks.empty()) ineligible = "the family is empty";
    else if (!r.k) ineligible = "block sizes are not uniform";
    else if (!r.disjoint) ineligible = "blocks are not pairwise disjoint";
    else if (!r.identity_free) ineligible = "the identity element lies inside a block";

    r.internal_on_union = r.internal.uniform_value(union_non_identity);
    r.internal_outside = r.internal.uniform_value(outside);
    r.external_on_union = r.external.uniform_value(union_non_identity);
    r.external_outside = r.external.uniform_value(outside);

    auto classify_side = [&](const char* what, const std::optional<long long>& on_union,
                             const std::optional<long long>& on_outside, const Spectrum& spec,
                             Verdict<DdfParams>& full, Verdict<PdfParams>& partial) {
        (void)what;
        if (!ineligible.empty()) {
            full.reason = ineligible;
            partial.reason = ineligible;
            return;
        }
        const long long k = *r.k;
        if (auto lam = spec.uniform_value(g_star)) {
            full.params = DdfParams{v, r.s, k, *lam};
        } else {
            full.reason = "counts are not uniform over all non-identity elements";
        }
        if (!on_union) {
            partial.reason = "counts are not uniform over the union";
            return;
        }
        if (outside.empty()) {
            partial.reason = "the family partitions all non-identity elements; the outside "
                             "count is vacuous";
            return;
        }
        if (!on_outside) {
            partial.reason = "counts are not uniform outside the union";
            return;
        }
        partial.params = PdfParams{v, r.s, k, *on_union, *on_outside};
    };
    classify_side("internal", r.internal_on_union, r.internal_outside, r.internal, r.ddf, r.dpdf);
    classify_side("external", r.external_on_union, r.external_outside, r.external, r.edf, r.epdf);

    // ---- per-block forbidden-subgroup verdicts (RDS / DDS) ----
    std::vector<Subgroup> candidates;
    if (subgroup) {
        require_subgroup_of(group, *subgroup);
        candidates.push_back(*subgroup);
    }
    if (subgroup_analysis && v <= 128) {
        for (auto& h : all_subgroups(group)) {
            bool dup = false;
            for (const auto& c : candidates) dup = dup || c.elements == h.elements;
            if (!dup) candidates.push_back(std::move(h));
        }
    }
    if (subgroup_analysis) {
        for (size_t b = 0; b < r.blocks.size(); ++b) {
            Spectrum dspec = r.s == 1 ? r.internal : internal_differences(group, r.blocks[b]);
            for (const auto& h : candidates) {
                const long long n = h.order();
                if (n <= 1 || n >= v) continue; // degenerate forbidden subgroups
                std::vector<Elem> h_star, outside_h;
                for (Elem x : g_star)
                    (h.contains(x) ? h_star : outside_h).push_back(x);
                auto lam = dspec.uniform_value(h_star);
                auto mu = dspec.uniform_value(outside_h);
                if (!lam || !mu) continue;
                const long long kb = static_cast<long long>(r.blocks[b].size());
                if (*lam == 0 && *mu > 0) {
                    RdsEntry entry;
                    entry.block_index = static_cast<int>(b);
                    entry.m = v / n;
                    entry.n = n;
                    entry.k = kb;
                    entry.lambda = *mu;
                    entry.subgroup = h.elements;
                    entry.subgroup_normal = h.is_normal;
                    entry.relation_holds = check_rds_relation(entry.m, n, kb, *mu);
                    r.rds.push_back(std::move(entry));
                } else if (*lam != *mu) {
                    DdsEntry entry;
                    entry.block_index = static_cast<int>(b);
                    entry.m = v / n;
                    entry.n = n;
                    entry.k = kb;
                    entry.lambda = *lam;
                    entry.mu = *mu;
                    entry.subgroup = h.elements;
                    entry.subgroup_normal = h.is_normal;
                    r.dds.push_back(std::move(entry));
                }
            }
        }
    }

    // ---- partition target ----
    if (!r.disjoint || r.blocks.empty()) {
        r.partition_target = PartitionTarget::none;
    } else if (r.identity_free && outside.empty()) {
        r.partition_target = PartitionTarget::all_non_identity;
    } else {
        std::vector<char> in_union(v, 0);
        for (Elem x : r.union_set) in_union[x] = 1;
        // union = G \ H?  Then H := complement must be a subgroup.
        std::vector<char> complement(v, 0);
        bool has_identity = false;
        for (Elem x = 0; x < v; ++x)
            if (!in_union[x]) {
                complement[x] = 1;
                if (x == e) has_identity = true;
            }
        std::vector<char> union_plus_e = in_union;
        union_plus_e[e] = 1;
        if (r.identity_free && has_identity && mask_is_subgroup(group, complement)) {
            r.partition_target = PartitionTarget::complement_of_subgroup;
            for (Elem x = 0; x < v; ++x)
                if (complement[x]) r.partition_subgroup.push_back(x);
        } else if (r.identity_free && mask_is_subgroup(group, union_plus_e)) {
            r.partition_target = PartitionTarget::subgroup_minus_identity;
            for (Elem x = 0; x < v; ++x)
                if (union_plus_e[x]) r.partition_subgroup.push_back(x);
        } else {
            r.partition_target = PartitionTarget::other;
        }
        if (!r.partition_subgroup.empty()) {
            Subgroup h = subgroup_from_elements(group, r.partition_subgroup);
            r.partition_subgroup_normal = h.is_normal;
        }
    }

    // ---- recorded identities ----
    auto push_check = [&](const std::string& name, long long lhs, long long rhs) {
        r.identities_checked.push_back(IdentityCheck{name, lhs, rhs, lhs == rhs});
    };
    if (r.k) {
        const long long k = *r.k;
        push_check("internal-total", r.internal.total(), r.s * k * (k - 1));
        push_check("external-total", r.external.total(), r.s * (r.s - 1) * k * k);
    }
    if (r.dpdf.satisfied()) {
        const auto& p = *r.dpdf.params;
        push_check("internal-identity", p.s * p.k * (p.k - 1),
                   p.lambda * p.s * p.k + p.mu * (p.v - 1 - p.s * p.k));
    }
    if (r.epdf.satisfied()) {
        const auto& p = *r.epdf.params;
        push_check("external-identity", p.s * (p.s - 1) * p.k * p.k,
                   p.lambda * p.s * p.k + p.mu * (p.v - 1 - p.s * p.k));
    }
    for (const auto& entry : r.rds)
        push_check("rds-relation", entry.k * (entry.k - 1),
                   entry.lambda * entry.n * (entry.m - 1));
    if (r.pds.satisfied() && r.dpdf.satisfied() && r.epdf.satisfied()) {
        push_check("triangle-lambda", r.pds.params->lambda,
                   r.dpdf.params->lambda + r.epdf.params->lambda);
        push_check("triangle-mu", r.pds.params->mu, r.dpdf.params->mu + r.epdf.params->mu);
    }
    if (r.partition_target == PartitionTarget::complement_of_subgroup) {
        const long long n = static_cast<long long>(r.partition_subgroup.size());
        if (r.dpdf.satisfied())
            push_check("subgroup-order-divides-internal-mu", r.dpdf.params->mu % n, 0);
        if (r.epdf.satisfied())
            push_check("subgroup-order-divides-external-mu", r.epdf.params->mu % n, 0);
    }

    return r;
}

DesignReport classify_block(const FiniteGroup& group, std::vector<Elem> block,
                            const std::optional<Subgroup>& subgroup) {
    return classify_family(group, {std::move(block)}, subgroup, true);
}

} // namespace diffam
