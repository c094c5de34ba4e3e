#include "diffam/construct.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diffam/field.hpp"
#include "diffam/spectrum.hpp"

namespace diffam {

namespace {

[[noreturn]] void refuse(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

std::string join_ll(const std::vector<long long>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    return out.str();
}

std::string join_labels(const FiniteGroup& group, const std::vector<Elem>& elems) {
    std::ostringstream out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out << ',';
        out << group.label(elems[i]);
    }
    return out.str();
}

std::string tuple_text(const std::vector<long long>& values) {
    return "(" + join_ll(values) + ")";
}

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Claim family_claim(ClaimKind kind, std::vector<long long> params, bool expect = true) {
    Claim claim;
    claim.kind = kind;
    claim.expect_satisfied = expect;
    claim.params = std::move(params);
    return claim;
}

Claim rds_claim(int block_index, std::vector<long long> params, std::vector<Elem> subgroup,
                bool relaxed = false) {
    Claim claim;
    claim.kind = ClaimKind::rds;
    claim.params = std::move(params);
    claim.block_index = block_index;
    claim.subgroup = std::move(subgroup);
    std::sort(claim.subgroup.begin(), claim.subgroup.end());
    claim.relaxed_normality = relaxed;
    return claim;
}

std::vector<Elem> sorted_copy(std::vector<Elem> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// First index where two count vectors differ, rendered with labels.
std::string spectrum_diff(const FiniteGroup& group, const std::vector<long long>& got,
                          const std::vector<long long>& want) {
    if (got.size() != want.size()) {
        return "count vector length " + std::to_string(got.size()) + ", expected " +
               std::to_string(want.size());
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i] != want[i]) {
            return "count at '" + group.label(static_cast<Elem>(i)) + "' is " +
                   std::to_string(got[i]) + ", expected " + std::to_string(want[i]);
        }
    }
    return {};
}

template <typename Params>
std::vector<long long> params_tuple(const Params& p);

template <> std::vector<long long> params_tuple(const DsParams& p) { return {p.v, p.k, p.lambda}; }
template <> std::vector<long long> params_tuple(const PdsParams& p) {
    return {p.v, p.k, p.lambda, p.mu};
}
template <> std::vector<long long> params_tuple(const DdfParams& p) {
    return {p.v, p.s, p.k, p.lambda};
}
template <> std::vector<long long> params_tuple(const PdfParams& p) {
    return {p.v, p.s, p.k, p.lambda, p.mu};
}

template <typename Params>
void check_family_verdict(const Verdict<Params>& verdict, const Claim& claim, const char* kind_name,
                          ClaimCheck& check) {
    bool holds = verdict.satisfied();
    std::string computed;
    if (verdict.satisfied()) {
        std::vector<long long> actual = params_tuple(*verdict.params);
        computed = tuple_text(actual) + "-" + kind_name;
        if (!claim.params.empty() && actual != claim.params) holds = false;
    } else {
        const bool vowel = kind_name[0] == 'E';
        computed = std::string(vowel ? "NOT an " : "NOT a ") + kind_name + " (" +
                   verdict.reason + ")";
    }
    check.confirmed = (holds == claim.expect_satisfied);
    check.detail = "computed: " + computed;
}

const std::vector<Elem>& claim_target_block(const ConstructionResult& result, const Claim& claim) {
    if (!claim.elements.empty()) return claim.elements;
    if (claim.block_index < 0 ||
        claim.block_index >= static_cast<int>(result.family.size())) {
        refuse(ErrorKind::invalid_parameter,
               "claim refers to block " + std::to_string(claim.block_index) +
                   " but the family has " + std::to_string(result.family.size()) + " blocks");
    }
    return result.family[static_cast<std::size_t>(claim.block_index)];
}

void check_rds_claim(const ConstructionResult& result, const Claim& claim, ClaimCheck& check) {
    const std::vector<Elem>& block = claim_target_block(result, claim);
    Subgroup sg = subgroup_from_elements(result.group, claim.subgroup);
    DesignReport block_report = classify_block(result.group, block, sg);
    const std::vector<RdsEntry>* entries = &block_report.rds;
    for (const RdsEntry& entry : *entries) {
        if (entry.subgroup != sg.elements) continue;
        std::vector<long long> actual{entry.m, entry.n, entry.k, entry.lambda};
        bool holds = actual == claim.params &&
                     entry.subgroup_normal == !claim.relaxed_normality && entry.relation_holds;
        check.confirmed = (holds == claim.expect_satisfied);
        check.detail = "computed: " + tuple_text(actual) + "-RDS, subgroup " +
                       std::string(entry.subgroup_normal ? "normal" : "not normal") +
                       ", relation k(k-1) = lambda*n*(m-1) " +
                       (entry.relation_holds ? "holds" : "fails");
        return;
    }
    check.confirmed = !claim.expect_satisfied;
    check.detail = "computed: no RDS verdict relative to {" +
                   join_labels(result.group, sg.elements) + "}";
}

void check_dds_claim(const ConstructionResult& result, const Claim& claim, ClaimCheck& check) {
    const std::vector<Elem>& block = claim_target_block(result, claim);
    Subgroup sg = subgroup_from_elements(result.group, claim.subgroup);
    DesignReport block_report = classify_block(result.group, block, sg);
    for (const DdsEntry& entry : block_report.dds) {
        if (entry.subgroup != sg.elements) continue;
        std::vector<long long> actual{entry.m, entry.n, entry.k, entry.lambda, entry.mu};
        bool holds = actual == claim.params;
        check.confirmed = (holds == claim.expect_satisfied);
        check.detail = "computed: " + tuple_text(actual) + "-DDS, subgroup " +
                       std::string(entry.subgroup_normal ? "normal" : "not normal");
        return;
    }
    check.confirmed = !claim.expect_satisfied;
    check.detail = "computed: no DDS verdict relative to {" +
                   join_labels(result.group, sg.elements) + "}";
}

void check_spectrum_claim(const ConstructionResult& result, const DesignReport& report,
                          const Claim& claim, ClaimCheck& check) {
    std::vector<long long> got;
    if (claim.kind == ClaimKind::union_spectrum) {
        got = report.union_internal.counts;
    } else {
        got = internal_differences(result.group, claim_target_block(result, claim)).counts;
    }
    std::string diff = spectrum_diff(result.group, got, claim.expected_counts);
    bool holds = diff.empty();
    check.confirmed = (holds == claim.expect_satisfied);
    check.detail = holds ? "computed: spectrum matches all " + std::to_string(got.size()) +
                               " expected counts"
                         : "computed: " + diff;
}

} // namespace

const char* to_string(ClaimKind kind) {
    switch (kind) {
    case ClaimKind::ds: return "DS";
    case ClaimKind::pds: return "PDS";
    case ClaimKind::ddf: return "DDF";
    case ClaimKind::edf: return "EDF";
    case ClaimKind::dpdf: return "DPDF";
    case ClaimKind::epdf: return "EPDF";
    case ClaimKind::rds: return "RDS";
    case ClaimKind::dds: return "DDS";
    case ClaimKind::block_spectrum: return "block-spectrum";
    case ClaimKind::union_spectrum: return "union-spectrum";
    }
    return "?";
}

std::string claim_label(const Claim& claim) {
    std::string label;
    switch (claim.kind) {
    case ClaimKind::block_spectrum:
        label = "block " + std::to_string(claim.block_index) + " internal spectrum";
        break;
    case ClaimKind::union_spectrum:
        label = "union internal spectrum";
        break;
    default:
        if (!claim.params.empty()) label = tuple_text(claim.params) + "-";
        label += to_string(claim.kind);
        if (claim.kind == ClaimKind::rds || claim.kind == ClaimKind::dds) {
            if (claim.block_index >= 0) label += " [block " + std::to_string(claim.block_index) + "]";
            if (claim.relaxed_normality) label += " (relaxed normality)";
        }
        break;
    }
    if (!claim.expect_satisfied) label = "NOT " + label;
    return label;
}

VerificationOutcome verify_construction(const ConstructionResult& result) {
    VerificationOutcome out{classify_family(result.group, result.family, result.subgroup), {}, true};
    for (const Claim& claim : result.claims) {
        ClaimCheck check;
        check.claim = claim;
        switch (claim.kind) {
        case ClaimKind::ds: check_family_verdict(out.report.ds, claim, "DS", check); break;
        case ClaimKind::pds: check_family_verdict(out.report.pds, claim, "PDS", check); break;
        case ClaimKind::ddf: check_family_verdict(out.report.ddf, claim, "DDF", check); break;
        case ClaimKind::edf: check_family_verdict(out.report.edf, claim, "EDF", check); break;
        case ClaimKind::dpdf: check_family_verdict(out.report.dpdf, claim, "DPDF", check); break;
        case ClaimKind::epdf: check_family_verdict(out.report.epdf, claim, "EPDF", check); break;
        case ClaimKind::rds: check_rds_claim(result, claim, check); break;
        case ClaimKind::dds: check_dds_claim(result, claim, check); break;
        case ClaimKind::block_spectrum:
        case ClaimKind::union_spectrum:
            check_spectrum_claim(result, out.report, claim, check);
            break;
        }
        out.all_confirmed = out.all_confirmed && check.confirmed;
        out.checks.push_back(std::move(check));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

ConstructionResult coset_dpdf(const FiniteGroup& group, const Subgroup& subgroup) {
    require_subgroup_of(group, subgroup);
    const long long v = group.order();
    const long long n = subgroup.order();
    const long long m = v / n;
    if (!subgroup.is_normal)
        refuse(ErrorKind::not_applicable, "the subgroup is not normal; refusing the coset family");
    if (n < 2)
        refuse(ErrorKind::invalid_parameter,
               "the trivial subgroup leaves no outside class: the coset family would cover "
               "every non-identity element and the internal count would be vacuous");
    if (m < 2)
        refuse(ErrorKind::invalid_parameter,
               "the subgroup is the whole group; there are no nontrivial cosets");

    ConstructionResult result{"coset",
                              {{"group", group.spec().text()},
                               {"subgroup", join_labels(group, subgroup.elements)}},
                              group,
                              subgroup,
                              {},
                              {},
                              {}};
    std::vector<std::vector<Elem>> cosets = cosets_of(group, subgroup);
    result.family.assign(cosets.begin() + 1, cosets.end());
    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, m - 1, n, 0, v - n}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {v, m - 1, n, v - 2 * n, 0}));
    if (m == 2)
        result.notes.push_back("single-block family: the external spectrum is empty and the "
                               "external counts are both 0");
    return result;
}

ConstructionResult cyclic_quadruple_dpdf(long long m) {
    if (m <= 3 || m % 2 == 0)
        refuse(ErrorKind::invalid_parameter,
               "m must be odd and greater than 3 (m = " + std::to_string(m) +
                   " leaves fewer than two blocks)");
    const long long v = 2 * m;
    FiniteGroup group = build_cyclic(v);
    Subgroup h = subgroup_from_elements(group, {0, static_cast<Elem>(m)});

    ConstructionResult result{
        "cyclic-quadruple", {{"m", std::to_string(m)}}, group, h, {}, {}, {}};
    for (long long i = 1; i <= (m - 1) / 2; ++i) {
        result.family.push_back(sorted_copy({static_cast<Elem>(i), static_cast<Elem>(m - i),
                                             static_cast<Elem>(m + i), static_cast<Elem>(2 * m - i)}));
    }
    const long long s = (m - 1) / 2;
    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, s, 4, 2, 2 * m - 2}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {v, s, 4, 2 * m - 6, 0}));
    return result;
}

ConstructionResult qr_doubling_dpdf(long long p) {
    if (!is_prime_ll(p) || p % 4 != 1)
        refuse(ErrorKind::invalid_parameter,
               "p must be a prime congruent to 1 mod 4 (got " + std::to_string(p) + ")");
    const long long v = 2 * p;
    FiniteGroup group = build_cyclic(v);
    Subgroup h = subgroup_from_elements(group, {0, static_cast<Elem>(p)});

    std::vector<int> qr = quadratic_residues(static_cast<int>(p));
    std::vector<char> is_qr(static_cast<std::size_t>(p), 0);
    for (int r : qr) is_qr[static_cast<std::size_t>(r)] = 1;

    std::vector<Elem> a0, a1;
    for (long long x = 1; x < p; ++x) {
        auto& dst = is_qr[static_cast<std::size_t>(x)] ? a0 : a1;
        dst.push_back(static_cast<Elem>(x));
        dst.push_back(static_cast<Elem>(x + p));
    }
    std::sort(a0.begin(), a0.end());
    std::sort(a1.begin(), a1.end());

    ConstructionResult result{"qr-doubling", {{"p", std::to_string(p)}}, group, h, {a0, a1}, {}, {}};
    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, 2, p - 1, p - 3, 2 * p - 2}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {v, 2, p - 1, p - 1, 0}));

    // Within-block spectra: each block's differences cover the block
    // (p-5)/2 times, the other block (p-1)/2 times, and p itself p-1 times.
    for (int b = 0; b < 2; ++b) {
        const std::vector<Elem>& self = b == 0 ? a0 : a1;
        const std::vector<Elem>& othr = b == 0 ? a1 : a0;
        Claim claim;
        claim.kind = ClaimKind::block_spectrum;
        claim.block_index = b;
        claim.expected_counts.assign(static_cast<std::size_t>(v), 0);
        for (Elem x : self) claim.expected_counts[static_cast<std::size_t>(x)] = (p - 5) / 2;
        for (Elem x : othr) claim.expected_counts[static_cast<std::size_t>(x)] = (p - 1) / 2;
        claim.expected_counts[static_cast<std::size_t>(p)] = p - 1;
        result.claims.push_back(std::move(claim));
    }

    // A0 together with 0 has two distinct uniform counts split along H.
    Claim dds;
    dds.kind = ClaimKind::dds;
    dds.params = {p, 2, p, p - 1, (p - 1) / 2};
    dds.elements = sorted_copy([&] {
        std::vector<Elem> e = a0;
        e.push_back(0);
        return e;
    }());
    dds.subgroup = {0, static_cast<Elem>(p)};
    result.claims.push_back(std::move(dds));
    return result;
}

ConstructionResult coset_partition_dpdf(long long d, const std::vector<int>& choices,
                                        std::vector<long long> split_cosets) {
    if (d < 1) refuse(ErrorKind::invalid_parameter, "d must be at least 1");
    const long long v = 12 * d + 4;
    if (static_cast<long long>(choices.size()) != 2 * d)
        refuse(ErrorKind::invalid_parameter,
               "choices must have exactly 2d = " + std::to_string(2 * d) + " entries (got " +
                   std::to_string(choices.size()) + ")");
    for (int c : choices)
        if (c != 0 && c != 1)
            refuse(ErrorKind::invalid_parameter, "choices entries must be 0 or 1");

    if (split_cosets.empty())
        for (long long j = 1; j <= d; ++j) split_cosets.push_back(j);
    std::sort(split_cosets.begin(), split_cosets.end());
    if (static_cast<long long>(split_cosets.size()) != d ||
        std::adjacent_find(split_cosets.begin(), split_cosets.end()) != split_cosets.end())
        refuse(ErrorKind::invalid_parameter,
               "split_cosets must name d = " + std::to_string(d) + " distinct coset indices");
    for (long long j : split_cosets)
        if (j < 1 || j > 3 * d)
            refuse(ErrorKind::invalid_parameter, "split coset index " + std::to_string(j) +
                                                     " is outside 1.." + std::to_string(3 * d));

    FiniteGroup group = build_cyclic(v);
    const Elem q1 = static_cast<Elem>(3 * d + 1); // generator offsets within a coset of H
    const Elem q2 = static_cast<Elem>(6 * d + 2);
    const Elem q3 = static_cast<Elem>(9 * d + 3);
    Subgroup h = subgroup_from_elements(group, {0, q1, q2, q3});

    std::vector<char> split(static_cast<std::size_t>(3 * d + 1), 0);
    for (long long j : split_cosets) split[static_cast<std::size_t>(j)] = 1;

    auto pair_block = [&](long long x, long long y) {
        return sorted_copy({static_cast<Elem>(x % v), static_cast<Elem>(y % v)});
    };

    ConstructionResult result{"coset-partition",
                              {{"d", std::to_string(d)},
                               {"choices", [&] {
                                    std::vector<long long> c(choices.begin(), choices.end());
                                    return join_ll(c);
                                }()},
                               {"split_cosets", join_ll(split_cosets)}},
                              group,
                              h,
                              {},
                              {},
                              {}};

    // The d selected cosets of H split along K = {0, 6d+2}.
    for (long long j : split_cosets) {
        result.family.push_back(pair_block(j, j + q2));
        result.family.push_back(pair_block(j + q1, j + q3));
    }
    // The remaining 2d cosets split into difference-(3d+1) pairs two ways.
    std::size_t choice_at = 0;
    for (long long j = 1; j <= 3 * d; ++j) {
        if (split[static_cast<std::size_t>(j)]) continue;
        if (choices[choice_at] == 0) {
            result.family.push_back(pair_block(j, j + q3));
            result.family.push_back(pair_block(j + q1, j + q2));
        } else {
            result.family.push_back(pair_block(j, j + q1));
            result.family.push_back(pair_block(j + q2, j + q3));
        }
        ++choice_at;
    }

    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, 6 * d, 2, 0, 4 * d}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {v, 6 * d, 2, 12 * d - 4, 8 * d}));
    return result;
}

const char* to_string(BoseForm form) {
    return form == BoseForm::additive ? "additive" : "multiplicative";
}

BoseForm parse_bose_form(const std::string& text) {
    if (text == "additive") return BoseForm::additive;
    if (text == "multiplicative") return BoseForm::multiplicative;
    refuse(ErrorKind::invalid_parameter,
           "unknown form '" + text + "' (expected additive or multiplicative)");
}

ConstructionResult bose_dpdf(long long q, BoseForm form) {
    if (q < 2 || q > 256) refuse(ErrorKind::invalid_parameter, "q must lie in 2..256");
    long long p = 0;
    for (long long cand = 2; cand * cand <= q; ++cand) {
        if (q % cand == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) p = q; // q itself prime
    int r = 0;
    for (long long t = q; t > 1; t /= p) {
        if (t % p != 0)
            refuse(ErrorKind::invalid_parameter, std::to_string(q) + " is not a prime power");
        ++r;
    }

    FiniteField field = FiniteField::build(static_cast<int>(p), 2 * r);
    const long long big_n = q * q - 1;
    FiniteGroup group =
        form == BoseForm::additive ? build_cyclic(big_n) : build_gf_multiplicative(field);

    std::vector<Elem> h_elems;
    for (long long i = 0; i < big_n; i += q + 1) h_elems.push_back(static_cast<Elem>(i));
    Subgroup h = subgroup_from_elements(group, h_elems);

    // Decompose a^i = a_i + b_i*a over the order-q subfield for i = 1..q.
    const long long alpha = field.exp(1);
    const long long alpha_inv = field.inv(alpha);
    std::vector<long long> subfield; // all of GF(q) inside GF(q^2)
    for (long long x = 0; x < q * q; ++x)
        if (field.in_subfield(x, q)) subfield.push_back(x);

    std::vector<long long> log_b(static_cast<std::size_t>(q) + 1, -1);
    for (long long i = 1; i <= q; ++i) {
        const long long x = field.exp(i);
        bool found = false;
        for (long long a : subfield) {
            const long long t = field.sub(x, a);
            if (t == 0) continue;
            const long long b = field.mul(t, alpha_inv);
            if (!field.in_subfield(b, q) || b == 0) continue;
            log_b[static_cast<std::size_t>(i)] = field.log(b);
            found = true;
            break;
        }
        if (!found)
            refuse(ErrorKind::construction_failure,
                   "no subfield decomposition found for a^" + std::to_string(i));
    }

    ConstructionResult result{
        "bose", {{"q", std::to_string(q)}, {"form", to_string(form)}}, group, h, {}, {}, {}};
    {
        const std::vector<int>& poly = field.primitive_poly();
        std::ostringstream note;
        note << "GF(" << q * q << ") built with primitive polynomial";
        for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
            if (poly[static_cast<std::size_t>(i)] == 0) continue;
            note << ' ';
            if (i < static_cast<int>(poly.size()) - 1) note << "+ ";
            if (i == 0 || poly[static_cast<std::size_t>(i)] != 1)
                note << poly[static_cast<std::size_t>(i)];
            if (i >= 1) note << "x";
            if (i >= 2) note << "^" << i;
        }
        result.notes.push_back(note.str());
    }

    // One block per nonzero subfield element c, ascending by packed value.
    int block_index = 0;
    for (long long c : subfield) {
        if (c == 0) continue;
        const long long log_c = field.log(c);
        std::vector<Elem> block;
        for (long long i = 1; i <= q; ++i) {
            long long e = (log_c - log_b[static_cast<std::size_t>(i)] + i) % big_n;
            if (e < 0) e += big_n;
            block.push_back(static_cast<Elem>(e));
        }
        result.family.push_back(sorted_copy(block));
        result.claims.push_back(rds_claim(block_index, {q + 1, q - 1, q, 1}, h_elems));
        ++block_index;
    }

    result.claims.push_back(family_claim(ClaimKind::dpdf, {big_n, q - 1, q, q - 1, 0}));
    result.claims.push_back(
        family_claim(ClaimKind::epdf, {big_n, q - 1, q, (q - 1) * (q - 2), q * q - q}));
    return result;
}

ConstructionResult rds_translate_dpdf(const FiniteGroup& group, const Subgroup& subgroup,
                                      const std::vector<Elem>& rds_block) {
    require_subgroup_of(group, subgroup);
    const long long v = group.order();
    const long long n = subgroup.order();
    const long long m = v / n;
    if (!subgroup.is_normal)
        refuse(ErrorKind::not_applicable, "the subgroup is not normal; translates of the block "
                                          "need not preserve its difference counts");
    if (n < 2)
        refuse(ErrorKind::invalid_parameter,
               "a trivial forbidden subgroup gives a difference set, out of scope here");
    if (static_cast<long long>(rds_block.size()) != m - 1)
        refuse(ErrorKind::invalid_parameter,
               "the block has " + std::to_string(rds_block.size()) +
                   " elements; exactly m-1 = " + std::to_string(m - 1) + " are required");
    if ((m - 2) % n != 0)
        refuse(ErrorKind::invalid_parameter,
               "block size m-1 forces lambda = (m-2)/n, but " + std::to_string(n) +
                   " does not divide " + std::to_string(m - 2));
    const long long lambda = (m - 2) / n;

    DesignReport block_report = classify_block(group, rds_block, subgroup);
    bool confirmed = false;
    for (const RdsEntry& entry : block_report.rds) {
        if (entry.subgroup == subgroup.elements && entry.m == m && entry.n == n &&
            entry.k == m - 1 && entry.lambda == lambda)
            confirmed = true;
    }
    if (!confirmed)
        refuse(ErrorKind::validation_failure,
               "the supplied block is not a (" + std::to_string(m) + "," + std::to_string(n) +
                   "," + std::to_string(m - 1) + "," + std::to_string(lambda) +
                   ")-RDS relative to the subgroup: its differences either meet the subgroup "
                   "or are not uniform outside it");

    // Normalize: translate so the block misses exactly the subgroup's coset.
    std::vector<Elem> d_block = rds_block;
    std::sort(d_block.begin(), d_block.end());
    Elem shift = group.identity();
    {
        bool ok = false;
        for (Elem g = 0; g < group.order(); ++g) {
            std::vector<Elem> cand = translate(group, g, d_block);
            bool hits_h = false;
            for (Elem x : cand)
                if (subgroup.contains(x)) hits_h = true;
            if (!hits_h) {
                shift = g;
                d_block = std::move(cand);
                ok = true;
                break;
            }
        }
        if (!ok)
            refuse(ErrorKind::construction_failure,
                   "no translate of the block avoids the subgroup; this contradicts the "
                   "verified block structure");
    }

    ConstructionResult result{"rds-translate",
                              {{"group", group.spec().text()},
                               {"subgroup", join_labels(group, subgroup.elements)},
                               {"block", join_labels(group, sorted_copy(rds_block))}},
                              group,
                              subgroup,
                              {},
                              {},
                              {}};
    if (shift != group.identity())
        result.notes.push_back("block normalized by the left translate g = '" +
                               group.label(shift) + "' so that it avoids the subgroup");
    for (Elem hh : subgroup.elements) result.family.push_back(translate(group, hh, d_block));
    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, n, m - 1, m - 2, 0}));
    result.claims.push_back(
        family_claim(ClaimKind::epdf, {v, n, m - 1, (m - 2) * (n - 1), (m - 1) * n}));
    return result;
}

ConstructionResult ds_strip_dpdf(const FiniteGroup& group, const Subgroup& subgroup,
                                 const std::vector<Elem>& ds_block) {
    require_subgroup_of(group, subgroup);
    const long long v = group.order();
    const long long n = subgroup.order();
    if (!subgroup.is_normal)
        refuse(ErrorKind::not_applicable, "the subgroup is not normal; refusing");
    if (n < 2) refuse(ErrorKind::invalid_parameter, "the subgroup must be nontrivial");
    const long long m = (n - 1) * (n - 1) + 1;
    if (v != m * n)
        refuse(ErrorKind::invalid_parameter,
               "the group order must be n[(n-1)^2+1] = " + std::to_string(m * n) + " (got " +
                   std::to_string(v) + ")");
    const long long k_ds = (n - 1) * (n - 1) + n;
    std::vector<Elem> d_sorted = sorted_copy(ds_block);
    if (static_cast<long long>(d_sorted.size()) != k_ds)
        refuse(ErrorKind::invalid_parameter,
               "the block has " + std::to_string(d_sorted.size()) + " elements; exactly (n-1)^2+n = " +
                   std::to_string(k_ds) + " are required");
    for (Elem hh : subgroup.elements)
        if (!std::binary_search(d_sorted.begin(), d_sorted.end(), hh))
            refuse(ErrorKind::invalid_parameter, "the subgroup element '" + group.label(hh) +
                                                     "' is missing from the block; the whole "
                                                     "subgroup must be contained in it");

    DesignReport block_report = classify_block(group, d_sorted, subgroup);
    if (!block_report.ds.satisfied() || block_report.ds.params->lambda != n)
        refuse(ErrorKind::validation_failure,
               "the block is not a (" + std::to_string(v) + "," + std::to_string(k_ds) + "," +
                   std::to_string(n) + ")-DS: " +
                   (block_report.ds.satisfied() ? "its difference count is " +
                                                      std::to_string(block_report.ds.params->lambda)
                                                : block_report.ds.reason));

    std::vector<Elem> r_block;
    for (Elem x : d_sorted)
        if (!subgroup.contains(x)) r_block.push_back(x);

    ConstructionResult result{"ds-strip",
                              {{"group", group.spec().text()},
                               {"subgroup", join_labels(group, subgroup.elements)},
                               {"block", join_labels(group, d_sorted)}},
                              group,
                              subgroup,
                              {},
                              {},
                              {}};
    for (Elem hh : subgroup.elements) result.family.push_back(translate(group, hh, r_block));
    result.claims.push_back(
        rds_claim(0, {m, n, (n - 1) * (n - 1), n - 2}, subgroup.elements));
    result.claims.push_back(
        family_claim(ClaimKind::dpdf, {v, n, (n - 1) * (n - 1), n * (n - 2), 0}));
    result.claims.push_back(family_claim(
        ClaimKind::epdf, {v, n, (n - 1) * (n - 1), n * (n - 1) * (n - 2), n * (n - 1) * (n - 1)}));
    return result;
}

ConstructionResult pair_family_z3m(long long m) {
    if (m <= 3 || m % 2 == 0)
        refuse(ErrorKind::invalid_parameter, "m must be odd and greater than 3");
    const long long v = 3 * m;
    FiniteGroup group = build_cyclic(v);
    Subgroup h =
        subgroup_from_elements(group, {0, static_cast<Elem>(m), static_cast<Elem>(2 * m)});

    ConstructionResult result{"pair-family", {{"m", std::to_string(m)}}, group, h, {}, {}, {}};
    for (long long i = 1; i <= (3 * m - 1) / 2; ++i) {
        if (i == m) continue;
        result.family.push_back(
            sorted_copy({static_cast<Elem>(i), static_cast<Elem>(3 * m - i)}));
    }
    const long long s = (3 * m - 3) / 2;
    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, s, 2, 1, 0}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {v, s, 2, 3 * m - 7, 3 * m - 3}));
    return result;
}

ConstructionResult embed_ddf_dpdf(const FiniteGroup& ambient, const Subgroup& subgroup,
                                  const FiniteGroup& source,
                                  const std::vector<std::vector<Elem>>& ddf_blocks,
                                  const std::vector<Elem>& embedding) {
    require_subgroup_of(ambient, subgroup);
    const long long n = source.order();
    if (static_cast<long long>(embedding.size()) != n)
        refuse(ErrorKind::invalid_parameter,
               "the embedding must map all " + std::to_string(n) + " source elements (got " +
                   std::to_string(embedding.size()) + ")");
    for (Elem img : embedding)
        if (img < 0 || img >= ambient.order())
            refuse(ErrorKind::invalid_parameter, "embedding image out of range");

    // Injective homomorphism whose image is exactly the subgroup.
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
            if (ambient.op(embedding[static_cast<std::size_t>(x)],
                           embedding[static_cast<std::size_t>(y)]) !=
                embedding[static_cast<std::size_t>(source.op(x, y))])
                refuse(ErrorKind::validation_failure,
                       "the map is not a homomorphism: it fails on the pair ('" +
                           source.label(x) + "', '" + source.label(y) + "')");
        }
    }
    std::vector<Elem> image = sorted_copy(embedding);
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
        refuse(ErrorKind::validation_failure, "the map is not injective");
    if (image != subgroup.elements)
        refuse(ErrorKind::validation_failure,
               "the image of the map is not exactly the given subgroup");

    DesignReport src = classify_family(source, ddf_blocks, std::nullopt, false);
    if (!src.ddf.satisfied())
        refuse(ErrorKind::validation_failure,
               "the source family is not a disjoint difference family: " + src.ddf.reason);
    if (!src.near_complete)
        refuse(ErrorKind::validation_failure,
               "the source family does not cover every non-identity source element");

    ConstructionResult result{"embed-ddf",
                              {{"ambient", ambient.spec().text()},
                               {"source", source.spec().text()},
                               {"subgroup", join_labels(ambient, subgroup.elements)},
                               {"embedding", join_labels(ambient, embedding)}},
                              ambient,
                              subgroup,
                              {},
                              {},
                              {}};
    for (const std::vector<Elem>& block : src.blocks) {
        std::vector<Elem> img_block;
        for (Elem x : block) img_block.push_back(embedding[static_cast<std::size_t>(x)]);
        result.family.push_back(sorted_copy(img_block));
    }

    const long long big_v = ambient.order();
    const long long s = src.s;
    const long long k = src.k.value();
    const long long lambda = src.ddf.params->lambda;
    if (big_v == n) {
        result.claims.push_back(family_claim(ClaimKind::ddf, {big_v, s, k, lambda}));
        if (src.edf.satisfied())
            result.claims.push_back(
                family_claim(ClaimKind::edf, {big_v, s, k, src.edf.params->lambda}));
        result.notes.push_back("the subgroup is the whole group: the image family covers every "
                               "non-identity element, so the outside counts are vacuous");
    } else {
        result.claims.push_back(family_claim(ClaimKind::dpdf, {big_v, s, k, lambda, 0}));
        if (src.edf.satisfied())
            result.claims.push_back(
                family_claim(ClaimKind::epdf, {big_v, s, k, src.edf.params->lambda, 0}));
    }
    return result;
}

ConstructionResult dpdf_not_epdf_pairs(long long t) {
    if (t <= 2) refuse(ErrorKind::invalid_parameter, "t must be greater than 2");
    const long long v = 2 * t + 1;
    FiniteGroup group = build_cyclic(v);

    ConstructionResult result{
        "dpdf-not-epdf-pairs", {{"t", std::to_string(t)}}, group, std::nullopt, {}, {}, {}};
    for (long long i = 1; i <= t - 1; ++i)
        result.family.push_back({static_cast<Elem>(2 * i), static_cast<Elem>(2 * i + 1)});

    result.claims.push_back(family_claim(ClaimKind::dpdf, {v, t - 1, 2, 0, t - 1}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {}, false));

    // The union {2, ..., 2t-1} is an interval: its own differences occur
    // v-4 times at distance 1, v-5 at distance 2, v-6 at all other values.
    Claim spectrum;
    spectrum.kind = ClaimKind::union_spectrum;
    spectrum.expected_counts.assign(static_cast<std::size_t>(v), 0);
    for (long long g = 1; g < v; ++g) {
        const long long dist = std::min(g, v - g);
        spectrum.expected_counts[static_cast<std::size_t>(g)] =
            dist == 1 ? v - 4 : dist == 2 ? v - 5 : v - 6;
    }
    result.claims.push_back(std::move(spectrum));
    result.notes.push_back("the external spectrum is provably non-constant, so no external "
                           "design parameters exist for this family");
    return result;
}

const char* to_string(StructureCategory category) {
    switch (category) {
    case StructureCategory::all_cosets: return "all-cosets";
    case StructureCategory::union_of_cosets: return "union-of-cosets";
    case StructureCategory::coset_subdivision: return "coset-subdivision";
    case StructureCategory::transversal_type: return "transversal-type";
    case StructureCategory::other: return "other";
    }
    return "?";
}

StructureCategory category_of(const ConstructionResult& result) {
    if (!result.subgroup)
        refuse(ErrorKind::not_applicable,
               "the construction carries no subgroup; categories are defined for families "
               "partitioning the complement of a subgroup");
    const FiniteGroup& group = result.group;
    const Subgroup& h = *result.subgroup;
    DesignReport report = classify_family(group, result.family, h, false);
    if (report.partition_target != PartitionTarget::complement_of_subgroup ||
        report.partition_subgroup != h.elements)
        refuse(ErrorKind::not_applicable,
               "the family does not partition the complement of the given subgroup");

    const long long n = h.order();
    std::vector<std::vector<Elem>> cosets = cosets_of(group, h);
    std::vector<int> coset_id(static_cast<std::size_t>(group.order()), -1);
    for (std::size_t c = 0; c < cosets.size(); ++c)
        for (Elem x : cosets[c]) coset_id[static_cast<std::size_t>(x)] = static_cast<int>(c);

    bool all_full_cosets = true;  // every block is a union of full cosets
    bool all_single_coset = true; // every block lies inside one coset
    bool all_proper_subset = true;// every block is smaller than a coset
    bool all_transversal = true;  // every block meets each coset at most once
    for (const std::vector<Elem>& block : report.blocks) {
        std::map<int, long long> per_coset;
        for (Elem x : block) ++per_coset[coset_id[static_cast<std::size_t>(x)]];
        if (per_coset.size() > 1) all_single_coset = false;
        for (const auto& [coset, count] : per_coset) {
            (void)coset;
            if (count != n) all_full_cosets = false;
            if (count >= n) all_proper_subset = false;
            if (count > 1) all_transversal = false;
        }
    }

    StructureCategory category = StructureCategory::other;
    if (all_full_cosets && all_single_coset) category = StructureCategory::all_cosets;
    else if (all_full_cosets) category = StructureCategory::union_of_cosets;
    else if (all_single_coset && all_proper_subset) category = StructureCategory::coset_subdivision;
    else if (all_transversal) category = StructureCategory::transversal_type;

    // Each category forces a zero/nonzero pattern on the verified parameters.
    if (report.dpdf.satisfied() && report.epdf.satisfied()) {
        const long long l1 = report.dpdf.params->lambda, m1 = report.dpdf.params->mu;
        const long long m2 = report.epdf.params->mu;
        bool ok = true;
        switch (category) {
        case StructureCategory::all_cosets: ok = l1 == 0 && m2 == 0; break;
        case StructureCategory::union_of_cosets: ok = l1 > 0 && m1 > 0 && m2 == 0; break;
        case StructureCategory::coset_subdivision: ok = l1 == 0 && m1 > 0 && m2 > 0; break;
        case StructureCategory::transversal_type: ok = m1 == 0 && m2 > 0; break;
        case StructureCategory::other: break;
        }
        if (!ok)
            refuse(ErrorKind::validation_failure,
                   std::string("the geometric category ") + to_string(category) +
                       " contradicts the computed parameter pattern (lambda1=" +
                       std::to_string(l1) + ", mu1=" + std::to_string(m1) +
                       ", mu2=" + std::to_string(m2) + ")");
    }
    return category;
}

} // namespace diffam
