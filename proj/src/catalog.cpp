#include <algorithm>
#include <set>
#include <sstream>

#include "diffam/construct.hpp"

namespace diffam {

namespace {

std::vector<Elem> parse_all(const FiniteGroup& group, const std::vector<std::string>& tokens) {
    std::vector<Elem> out;
    out.reserve(tokens.size());
    for (const std::string& token : tokens) out.push_back(parse_element(group, token));
    std::sort(out.begin(), out.end());
    return out;
}

Claim family_claim(ClaimKind kind, std::vector<long long> params, bool expect = true) {
    Claim claim;
    claim.kind = kind;
    claim.expect_satisfied = expect;
    claim.params = std::move(params);
    return claim;
}

Claim rds_claim(int block_index, std::vector<long long> params, std::vector<Elem> subgroup,
                bool relaxed) {
    Claim claim;
    claim.kind = ClaimKind::rds;
    claim.params = std::move(params);
    claim.block_index = block_index;
    claim.subgroup = std::move(subgroup);
    std::sort(claim.subgroup.begin(), claim.subgroup.end());
    claim.relaxed_normality = relaxed;
    return claim;
}

ConstructionResult base_entry(const std::string& name, FiniteGroup group) {
    return ConstructionResult{"catalog", {{"name", name}}, std::move(group), std::nullopt,
                              {},        {},               {}};
}

// Two 29-element permutation sets R and R' = alpha*R in the even
// permutations on five points, avoiding the order-2 subgroup generated
// by alpha = (25)(34).
ConstructionResult a5_rds_pair() {
    const std::vector<std::string> r_tokens{
        "(13542)", "(154)",    "(14)(23)", "(13254)", "(12543)", "(15324)", "(245)",
        "(132)",   "(152)",    "(13)(45)", "(12435)", "(235)",   "(15234)", "(15342)",
        "(125)",   "(14)(25)", "(13)(25)", "(123)",   "(14325)", "(23)(45)", "(14235)",
        "(253)",   "(254)",    "(13452)",  "(12453)", "(145)",   "(12)(35)", "(14523)",
        "(15)(24)"};
    const std::vector<std::string> rp_tokens{
        "(13245)", "(15243)", "(14253)", "(13)(24)", "(124)",   "(15423)", "(354)",
        "(13425)", "(15)(34)", "(13524)", "(12)(45)", "(345)",  "(153)",   "(15)(23)",
        "(12)(34)", "(143)",   "(134)",   "(12534)", "(142)",   "(24)(35)", "(14532)",
        "(234)",   "(243)",    "(135)",   "(12354)", "(14352)", "(12345)", "(14)(35)",
        "(15432)"};

    FiniteGroup group = build_alternating(5);
    std::vector<Elem> r = parse_all(group, r_tokens);
    std::vector<Elem> rp = parse_all(group, rp_tokens);
    const Elem alpha = parse_element(group, "(25)(34)");

    // Internal consistency of the stored data: R' must equal alpha*R.
    std::vector<Elem> alpha_r;
    for (Elem x : r) alpha_r.push_back(group.op(alpha, x));
    std::sort(alpha_r.begin(), alpha_r.end());
    if (alpha_r != rp)
        throw Error(ErrorKind::construction_failure,
                    "catalog data corrupt: the second block is not alpha times the first");

    ConstructionResult result = base_entry("a5_rds_pair", group);
    result.subgroup = subgroup_from_elements(group, {group.identity(), alpha});
    result.family = {r, rp};
    const std::vector<Elem> h = result.subgroup->elements;
    result.claims.push_back(rds_claim(0, {30, 2, 29, 14}, h, /*relaxed=*/true));
    result.claims.push_back(rds_claim(1, {30, 2, 29, 14}, h, /*relaxed=*/true));
    result.claims.push_back(family_claim(ClaimKind::dpdf, {60, 2, 29, 28, 0}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {60, 2, 29, 28, 58}));
    result.notes.push_back("the forbidden subgroup is not normal; the block difference counts "
                           "are read in the relaxed sense");
    return result;
}

ConstructionResult z40_ds() {
    ConstructionResult result = base_entry("z40_ds", build_cyclic(40));
    result.family = {{0, 6, 7, 8, 10, 11, 14, 19, 20, 23, 25, 30, 32}};
    result.claims.push_back(family_claim(ClaimKind::ds, {40, 13, 4}));
    return result;
}

ConstructionResult sd40_ds() {
    FiniteGroup group = build_semidirect_cyclic(5, 8, 4);
    const std::vector<std::string> words{"a^4",   "1",     "a",   "a^4b", "a^2b",
                                         "b^2",   "a^2b^2", "a^3b^2", "b^4", "b^5",
                                         "ab^5",  "b^6",   "a^3b^7"};
    ConstructionResult result = base_entry("sd40_ds", group);
    result.family = {parse_all(group, words)};
    result.claims.push_back(family_claim(ClaimKind::ds, {40, 13, 4}));
    return result;
}

ConstructionResult z85_ds() {
    ConstructionResult result = base_entry("z85_ds", build_cyclic(85));
    result.family = {{0,  1,  2,  4,  7,  8,  14, 16, 17, 23, 27,
                      28, 32, 34, 43, 46, 51, 54, 56, 64, 68}};
    result.claims.push_back(family_claim(ClaimKind::ds, {85, 21, 5}));
    return result;
}

ConstructionResult z8_rds() {
    ConstructionResult result = base_entry("z8_rds", build_cyclic(8));
    result.subgroup = subgroup_from_elements(result.group, {0, 4});
    result.family = {{1, 6, 7}};
    result.claims.push_back(rds_claim(0, {4, 2, 3, 1}, {0, 4}, /*relaxed=*/false));
    return result;
}

ConstructionResult z13_qr_dpdf() {
    ConstructionResult result = base_entry("z13_qr_dpdf", build_cyclic(13));
    result.family = {{1, 3, 9}, {4, 10, 12}};
    result.claims.push_back(family_claim(ClaimKind::dpdf, {13, 2, 3, 0, 2}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {13, 2, 3, 2, 1}));
    return result;
}

ConstructionResult z16_pairs() {
    ConstructionResult result = base_entry("z16_pairs", build_cyclic(16));
    result.subgroup = subgroup_from_elements(result.group, {0, 4, 8, 12});
    result.family = {{1, 9}, {5, 13}, {2, 14}, {6, 10}, {3, 15}, {7, 11}};
    result.claims.push_back(family_claim(ClaimKind::dpdf, {16, 6, 2, 0, 4}));
    result.claims.push_back(family_claim(ClaimKind::epdf, {16, 6, 2, 8, 8}));
    result.notes.push_back("lambda2 = 8 is the exact external count on union members; it is "
                           "also the unique value satisfying s(s-1)k^2 = lambda2*sk + "
                           "mu2*(v-1-sk) with mu2 = 8");
    return result;
}

ConstructionResult z9_epdf_not_dpdf() {
    ConstructionResult result = base_entry("z9_epdf_not_dpdf", build_cyclic(9));
    result.family = {{1, 8}, {3, 6}};
    result.claims.push_back(family_claim(ClaimKind::epdf, {9, 2, 2, 0, 2}));
    result.claims.push_back(family_claim(ClaimKind::dpdf, {}, /*expect=*/false));
    return result;
}

ConstructionResult z13_epdf_not_dpdf() {
    ConstructionResult result = base_entry("z13_epdf_not_dpdf", build_cyclic(13));
    result.family = {{1, 2, 11, 12}, {3, 5, 8, 10}};
    result.claims.push_back(family_claim(ClaimKind::epdf, {13, 2, 4, 2, 4}));
    result.claims.push_back(family_claim(ClaimKind::dpdf, {}, /*expect=*/false));
    return result;
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"a5_rds_pair",      "z40_ds",  "sd40_ds",          "z85_ds",           "z8_rds",
            "z13_qr_dpdf",      "z16_pairs", "z9_epdf_not_dpdf", "z13_epdf_not_dpdf"};
}

ConstructionResult catalog(const std::string& name) {
    if (name == "a5_rds_pair") return a5_rds_pair();
    if (name == "z40_ds") return z40_ds();
    if (name == "sd40_ds") return sd40_ds();
    if (name == "z85_ds") return z85_ds();
    if (name == "z8_rds") return z8_rds();
    if (name == "z13_qr_dpdf") return z13_qr_dpdf();
    if (name == "z16_pairs") return z16_pairs();
    if (name == "z9_epdf_not_dpdf") return z9_epdf_not_dpdf();
    if (name == "z13_epdf_not_dpdf") return z13_epdf_not_dpdf();
    std::ostringstream message;
    message << "unknown catalog entry '" << name << "'; valid names:";
    for (const std::string& valid : catalog_names()) message << ' ' << valid;
    throw Error(ErrorKind::invalid_parameter, message.str());
}

} // namespace diffam
