// Acceptance gate: nine criteria, one [PASS]/[FAIL] line each, nonzero
// exit when any criterion fails.  Families verified by the early
// criteria feed the identity suites, so every reported tuple is
// cross-checked twice: once by the claim verifier, once here.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diffam/classify.hpp"
#include "diffam/construct.hpp"
#include "diffam/group.hpp"
#include "diffam/search.hpp"

using namespace diffam;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Criterion {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& text) { notes.push_back(text); }
};

/// Families verified by criteria 1-3, cached with their classification
/// so the identity suites (criteria 4-5) cover exactly the same data.
struct Entry {
    std::string tag;
    FiniteGroup group;
    std::vector<std::vector<Elem>> family;
    DesignReport report;
};

std::vector<Entry> collected;

const DesignReport& collect(const std::string& tag, const FiniteGroup& group,
                            const std::vector<std::vector<Elem>>& family) {
    collected.push_back(Entry{tag, group, family, classify_family(group, family)});
    return collected.back().report;
}

const DesignReport& collect_verified(Criterion& c, const std::string& tag,
                                     const ConstructionResult& result) {
    VerificationOutcome outcome = verify_construction(result);
    for (const ClaimCheck& check : outcome.checks)
        c.expect(check.confirmed, tag + ": " + claim_label(check.claim) + " -- " + check.detail);
    collected.push_back(Entry{tag, result.group, result.family, std::move(outcome.report)});
    return collected.back().report;
}

std::string tuple_str(std::initializer_list<long long> values) {
    std::ostringstream out;
    out << '(';
    bool first = true;
    for (long long v : values) {
        if (!first) out << ',';
        out << v;
        first = false;
    }
    out << ')';
    return out.str();
}

void expect_dpdf(Criterion& c, const DesignReport& r, const std::string& tag, long long v,
                 long long s, long long k, long long lambda, long long mu) {
    if (!r.dpdf.satisfied()) {
        c.expect(false, tag + ": internal verdict not satisfied (" + r.dpdf.reason + ")");
        return;
    }
    const PdfParams& p = *r.dpdf.params;
    c.expect(p.v == v && p.s == s && p.k == k && p.lambda == lambda && p.mu == mu,
             tag + ": internal tuple " + tuple_str({p.v, p.s, p.k, p.lambda, p.mu}) +
                 " != " + tuple_str({v, s, k, lambda, mu}));
}

void expect_epdf(Criterion& c, const DesignReport& r, const std::string& tag, long long v,
                 long long s, long long k, long long lambda, long long mu) {
    if (!r.epdf.satisfied()) {
        c.expect(false, tag + ": external verdict not satisfied (" + r.epdf.reason + ")");
        return;
    }
    const PdfParams& p = *r.epdf.params;
    c.expect(p.v == v && p.s == s && p.k == k && p.lambda == lambda && p.mu == mu,
             tag + ": external tuple " + tuple_str({p.v, p.s, p.k, p.lambda, p.mu}) +
                 " != " + tuple_str({v, s, k, lambda, mu}));
}

// ---------------------------------------------------------------------
// Criterion 1: the fixed worked examples, exact, < 1 s each.
// ---------------------------------------------------------------------
void criterion_worked_examples(Criterion& c) {
    struct Example {
        std::string tag;
        std::function<const DesignReport&(Criterion&)> run;
    };
    const std::vector<Example> examples{
        {"order-13 residue triples",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect("order-13 residue triples", build_cyclic(13), {{1, 3, 9}, {4, 10, 12}});
             expect_dpdf(cc, r, "order-13 residue triples", 13, 2, 3, 0, 2);
             expect_epdf(cc, r, "order-13 residue triples", 13, 2, 3, 2, 1);
             return r;
         }},
        {"order-16 coset pairs",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect_verified(cc, "order-16 coset pairs", catalog("z16_pairs"));
             expect_dpdf(cc, r, "order-16 coset pairs", 16, 6, 2, 0, 4);
             expect_epdf(cc, r, "order-16 coset pairs", 16, 6, 2, 8, 8);
             cc.note("order-16 coset pairs: external lambda verifies as 8, not the widely "
                     "quoted 14; 14 fails the counting identity 6*5*4 = lambda*12 + mu*3 "
                     "while (8,8) satisfies it");
             return r;
         }},
        {"order-10 doubled pairs",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect("order-10 doubled pairs", build_cyclic(10), {{2, 8}, {4, 6}});
             expect_dpdf(cc, r, "order-10 doubled pairs", 10, 2, 2, 1, 0);
             expect_epdf(cc, r, "order-10 doubled pairs", 10, 2, 2, 2, 0);
             return r;
         }},
        {"order-10 quadruples",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect_verified(cc, "order-10 quadruples", cyclic_quadruple_dpdf(5));
             expect_dpdf(cc, r, "order-10 quadruples", 10, 2, 4, 2, 8);
             expect_epdf(cc, r, "order-10 quadruples", 10, 2, 4, 4, 0);
             return r;
         }},
        {"order-18 quadruples",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect_verified(cc, "order-18 quadruples", cyclic_quadruple_dpdf(9));
             expect_dpdf(cc, r, "order-18 quadruples", 18, 4, 4, 2, 16);
             expect_epdf(cc, r, "order-18 quadruples", 18, 4, 4, 12, 0);
             return r;
         }},
        {"order-26 residue doubling",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect_verified(cc, "order-26 residue doubling", qr_doubling_dpdf(13));
             expect_dpdf(cc, r, "order-26 residue doubling", 26, 2, 12, 10, 24);
             expect_epdf(cc, r, "order-26 residue doubling", 26, 2, 12, 12, 0);
             return r;
         }},
        {"field-of-25 line blocks",
         [](Criterion& cc) -> const DesignReport& {
             ConstructionResult result = bose_dpdf(5, BoseForm::additive);
             const std::vector<std::vector<Elem>> frozen{{1, 10, 14, 15, 17},
                                                         {7, 16, 20, 21, 23},
                                                         {4, 8, 9, 11, 19},
                                                         {2, 3, 5, 13, 22}};
             cc.expect(result.family == frozen,
                       "field-of-25 line blocks: block exponents changed");
             const DesignReport& r = collect_verified(cc, "field-of-25 line blocks", result);
             expect_dpdf(cc, r, "field-of-25 line blocks", 24, 4, 5, 4, 0);
             expect_epdf(cc, r, "field-of-25 line blocks", 24, 4, 5, 12, 20);
             return r;
         }},
        {"order-8 translate pair",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect("order-8 translate pair", build_cyclic(8), {{1, 6, 7}, {2, 3, 5}});
             expect_dpdf(cc, r, "order-8 translate pair", 8, 2, 3, 2, 0);
             expect_epdf(cc, r, "order-8 translate pair", 8, 2, 3, 2, 6);
             return r;
         }},
        {"order-40 cyclic strip",
         [](Criterion& cc) -> const DesignReport& {
             ConstructionResult source = catalog("z40_ds");
             collect_verified(cc, "order-40 cyclic source set", source);
             const DesignReport& r = collect_verified(
                 cc, "order-40 cyclic strip",
                 ds_strip_dpdf(source.group, subgroup_from(source.group, {10}),
                               source.family[0]));
             expect_dpdf(cc, r, "order-40 cyclic strip", 40, 4, 9, 8, 0);
             expect_epdf(cc, r, "order-40 cyclic strip", 40, 4, 9, 24, 36);
             return r;
         }},
        {"order-40 semidirect strip",
         [](Criterion& cc) -> const DesignReport& {
             ConstructionResult source = catalog("sd40_ds");
             collect_verified(cc, "order-40 semidirect source set", source);
             Subgroup centre =
                 subgroup_from(source.group, {parse_element(source.group, "b^2")});
             const DesignReport& r =
                 collect_verified(cc, "order-40 semidirect strip",
                                  ds_strip_dpdf(source.group, centre, source.family[0]));
             expect_dpdf(cc, r, "order-40 semidirect strip", 40, 4, 9, 8, 0);
             expect_epdf(cc, r, "order-40 semidirect strip", 40, 4, 9, 24, 36);
             return r;
         }},
        {"order-85 strip",
         [](Criterion& cc) -> const DesignReport& {
             ConstructionResult source = catalog("z85_ds");
             collect_verified(cc, "order-85 source set", source);
             const DesignReport& r = collect_verified(
                 cc, "order-85 strip",
                 ds_strip_dpdf(source.group, subgroup_from(source.group, {17}),
                               source.family[0]));
             expect_dpdf(cc, r, "order-85 strip", 85, 5, 16, 15, 0);
             expect_epdf(cc, r, "order-85 strip", 85, 5, 16, 60, 80);
             return r;
         }},
        {"order-15 pair family",
         [](Criterion& cc) -> const DesignReport& {
             const DesignReport& r =
                 collect_verified(cc, "order-15 pair family", pair_family_z3m(5));
             expect_dpdf(cc, r, "order-15 pair family", 15, 6, 2, 1, 0);
             expect_epdf(cc, r, "order-15 pair family", 15, 6, 2, 8, 12);
             return r;
         }},
    };

    for (const Example& example : examples) {
        const Clock::time_point start = Clock::now();
        example.run(c);
        const double ms = elapsed_ms(start);
        c.expect(ms < 1000.0, example.tag + ": took " + std::to_string(ms) + " ms (limit 1000)");
    }
}

// ---------------------------------------------------------------------
// Criterion 2: the order-60 non-abelian pair, exact, < 5 s.
// ---------------------------------------------------------------------
void criterion_flagship_pair(Criterion& c) {
    ConstructionResult result = catalog("a5_rds_pair");
    bool relaxed_claim_present = false;
    for (const Claim& claim : result.claims)
        if (claim.kind == ClaimKind::rds && claim.relaxed_normality) relaxed_claim_present = true;
    c.expect(relaxed_claim_present, "flagship pair: no relaxed-normality claim recorded");

    const DesignReport& r = collect_verified(c, "order-60 flagship pair", result);
    expect_dpdf(c, r, "order-60 flagship pair", 60, 2, 29, 28, 0);
    expect_epdf(c, r, "order-60 flagship pair", 60, 2, 29, 28, 58);

    int rds_blocks_seen = 0;
    for (const RdsEntry& entry : r.rds) {
        if (entry.m == 30 && entry.n == 2 && entry.k == 29 && entry.lambda == 14) {
            ++rds_blocks_seen;
            c.expect(!entry.subgroup_normal,
                     "flagship pair: the forbidden subgroup unexpectedly reads as normal");
            c.expect(entry.relation_holds, "flagship pair: block relation k(k-1)=lambda*n*(m-1) "
                                           "failed");
        }
    }
    c.expect(rds_blocks_seen == 2, "flagship pair: expected both blocks as (30,2,29,14) "
                                   "forbidden-subgroup designs, saw " +
                                       std::to_string(rds_blocks_seen));
}

// ---------------------------------------------------------------------
// Criterion 3: every construction sweep verifies, < 60 s total.
// ---------------------------------------------------------------------
void criterion_sweeps(Criterion& c) {
    for (long long m = 5; m <= 99; m += 2)
        collect_verified(c, "quadruple m=" + std::to_string(m), cyclic_quadruple_dpdf(m));

    for (long long p : {5, 13, 17, 29, 37, 41})
        collect_verified(c, "residue doubling p=" + std::to_string(p), qr_doubling_dpdf(p));

    for (long long d = 1; d <= 10; ++d) {
        const std::size_t bits = static_cast<std::size_t>(2 * d);
        std::vector<std::vector<int>> variants;
        variants.emplace_back(bits, 0);
        variants.emplace_back(bits, 1);
        std::vector<int> alt01(bits), alt10(bits);
        for (std::size_t i = 0; i < bits; ++i) {
            alt01[i] = static_cast<int>(i % 2);
            alt10[i] = static_cast<int>(1 - i % 2);
        }
        variants.push_back(alt01);
        variants.push_back(alt10);
        std::set<std::vector<int>> distinct(variants.begin(), variants.end());
        c.expect(distinct.size() >= 4 || bits < 2,
                 "coset partition d=" + std::to_string(d) + ": fewer than 4 choice vectors");
        int index = 0;
        for (const std::vector<int>& choices : variants)
            collect_verified(c,
                             "coset partition d=" + std::to_string(d) + " variant " +
                                 std::to_string(index++),
                             coset_partition_dpdf(d, choices));
    }

    for (long long q : {3, 4, 5, 7, 8, 9, 11, 13})
        for (BoseForm form : {BoseForm::additive, BoseForm::multiplicative})
            collect_verified(c,
                             "bose q=" + std::to_string(q) +
                                 (form == BoseForm::additive ? " additive" : " multiplicative"),
                             bose_dpdf(q, form));

    for (long long m = 5; m <= 33; m += 2)
        collect_verified(c, "pair family m=" + std::to_string(m), pair_family_z3m(m));

    std::vector<std::string> group_specs;
    for (int v = 2; v <= 48; ++v) group_specs.push_back("Z:" + std::to_string(v));
    for (int n = 3; n <= 24; ++n)
        group_specs.push_back("SD:" + std::to_string(n) + ":2:" + std::to_string(n - 1));
    group_specs.insert(group_specs.end(),
                       {"SD:5:8:4", "SD:3:4:2", "A:4", "Spence:3:1:2", "Spence:5:1:2",
                        "Spence:7:1:2"});
    long long coset_rows = 0;
    for (const std::string& spec_text : group_specs) {
        FiniteGroup group = group_from_spec(spec_text);
        for (const Subgroup& subgroup : all_subgroups(group)) {
            if (subgroup.order() < 2 || subgroup.order() >= group.order()) continue;
            if (!subgroup.is_normal) continue;
            collect_verified(c,
                             "coset family " + spec_text + " |H|=" +
                                 std::to_string(subgroup.order()),
                             coset_dpdf(group, subgroup));
            ++coset_rows;
        }
    }
    c.expect(coset_rows >= 200, "coset sweep unexpectedly small: " + std::to_string(coset_rows));
    c.note("coset families swept: " + std::to_string(coset_rows));
}

// ---------------------------------------------------------------------
// Criterion 4: union-PDS families obey lambda2 = lambda - lambda1 and
// mu2 = mu - mu1, exactly.
// ---------------------------------------------------------------------
void criterion_triangle(Criterion& c) {
    long long applicable = 0;
    for (const Entry& entry : collected) {
        const DesignReport& r = entry.report;
        if (!r.pds.satisfied() || !r.pds.params->regular) continue;
        if (!r.dpdf.satisfied() || !r.epdf.satisfied()) continue;
        ++applicable;
        const PdsParams& u = *r.pds.params;
        const PdfParams& in = *r.dpdf.params;
        const PdfParams& ex = *r.epdf.params;
        c.expect(ex.lambda == u.lambda - in.lambda,
                 entry.tag + ": external lambda " + std::to_string(ex.lambda) +
                     " != " + std::to_string(u.lambda) + " - " + std::to_string(in.lambda));
        c.expect(ex.mu == u.mu - in.mu, entry.tag + ": external mu " + std::to_string(ex.mu) +
                                            " != " + std::to_string(u.mu) + " - " +
                                            std::to_string(in.mu));
    }
    c.expect(applicable >= 200,
             "too few union-PDS families to be meaningful: " + std::to_string(applicable));
    c.note("families with a regular union PDS: " + std::to_string(applicable) + " of " +
           std::to_string(collected.size()));
}

// ---------------------------------------------------------------------
// Criterion 5: counting identities on every reported tuple, exactly.
// ---------------------------------------------------------------------
void criterion_counting_identities(Criterion& c) {
    long long internal_checked = 0, external_checked = 0, rds_checked = 0, divisor_checked = 0;
    for (const Entry& entry : collected) {
        const DesignReport& r = entry.report;
        if (r.dpdf.satisfied()) {
            const PdfParams& p = *r.dpdf.params;
            ++internal_checked;
            c.expect(check_internal_identity(p.v, p.s, p.k, p.lambda, p.mu),
                     entry.tag + ": internal counting identity failed for " +
                         tuple_str({p.v, p.s, p.k, p.lambda, p.mu}));
        }
        if (r.epdf.satisfied()) {
            const PdfParams& p = *r.epdf.params;
            ++external_checked;
            c.expect(check_external_identity(p.v, p.s, p.k, p.lambda, p.mu),
                     entry.tag + ": external counting identity failed for " +
                         tuple_str({p.v, p.s, p.k, p.lambda, p.mu}));
        }
        for (const RdsEntry& e : r.rds) {
            ++rds_checked;
            c.expect(check_rds_relation(e.m, e.n, e.k, e.lambda),
                     entry.tag + ": k(k-1) != (mn-n)lambda for block " +
                         std::to_string(e.block_index));
            c.expect(e.relation_holds, entry.tag + ": recorded relation flag is false");
        }
        if (r.partition_target == PartitionTarget::complement_of_subgroup) {
            const long long n = static_cast<long long>(r.partition_subgroup.size());
            if (r.dpdf.satisfied()) {
                ++divisor_checked;
                c.expect(r.dpdf.params->mu % n == 0,
                         entry.tag + ": subgroup order does not divide the internal mu");
            }
            if (r.epdf.satisfied()) {
                ++divisor_checked;
                c.expect(r.epdf.params->mu % n == 0,
                         entry.tag + ": subgroup order does not divide the external mu");
            }
        }
        for (const IdentityCheck& check : r.identities_checked)
            c.expect(check.holds, entry.tag + ": recorded identity '" + check.name +
                                      "' does not hold (" + std::to_string(check.lhs) +
                                      " != " + std::to_string(check.rhs) + ")");
    }
    c.expect(internal_checked > 0 && external_checked > 0 && rds_checked > 0 &&
                 divisor_checked > 0,
             "identity suite covered no tuples");
    c.note("tuples checked: " + std::to_string(internal_checked) + " internal, " +
           std::to_string(external_checked) + " external, " + std::to_string(rds_checked) +
           " forbidden-subgroup, " + std::to_string(divisor_checked) + " divisibility");
}

// ---------------------------------------------------------------------
// Criterion 6: search reproduction and a nonexistence certificate,
// < 120 s.
// ---------------------------------------------------------------------
void criterion_search(Criterion& c) {
    {
        SearchSpec spec(build_cyclic(9));
        spec.goal = SearchGoal::epdf;
        spec.s = 2;
        spec.k = 2;
        spec.predicate = SearchPredicate::epdf_not_dpdf;
        SearchOutcome outcome = search_families(spec);
        c.expect(outcome.exhausted, "order-9 search did not exhaust its space");
        bool found = false;
        for (const SearchSolution& sol : outcome.solutions)
            if (sol.family == std::vector<std::vector<Elem>>{{1, 8}, {3, 6}}) found = true;
        c.expect(found, "order-9 search missed the {1,8},{3,6} family");
    }
    {
        SearchSpec spec(build_cyclic(13));
        spec.goal = SearchGoal::epdf;
        spec.s = 2;
        spec.k = 4;
        spec.predicate = SearchPredicate::epdf_not_dpdf;
        SearchOutcome outcome = search_families(spec);
        c.expect(outcome.exhausted, "order-13 search did not exhaust its space");
        bool found = false;
        for (const SearchSolution& sol : outcome.solutions)
            if (sol.family == std::vector<std::vector<Elem>>{{1, 2, 11, 12}, {3, 5, 8, 10}})
                found = true;
        c.expect(found, "order-13 search missed the {1,2,11,12},{3,5,8,10} family");
    }
    long long combos = 0;
    for (long long s = 1; s <= 6; ++s)
        for (long long k = 1; s * k <= 6; ++k) {
            SearchSpec spec(build_cyclic(7));
            spec.goal = SearchGoal::dpdf;
            spec.s = s;
            spec.k = k;
            spec.predicate = SearchPredicate::dpdf_and_epdf_proper_pds;
            SearchOutcome outcome = search_families(spec);
            ++combos;
            c.expect(outcome.exhausted, "order-7 nonexistence sweep not exhaustive at s=" +
                                            std::to_string(s) + " k=" + std::to_string(k));
            c.expect(outcome.solutions.empty(),
                     "order-7 family found where none should exist at s=" + std::to_string(s) +
                         " k=" + std::to_string(k));
        }
    c.note("order-7 nonexistence certified over " + std::to_string(combos) +
           " shape combinations");
}

// ---------------------------------------------------------------------
// Criterion 7: pruned search counts equal naive generate-and-test over
// the same canonical space, for all groups of order <= 16, < 300 s.
// ---------------------------------------------------------------------
struct NaiveCounter {
    const FiniteGroup& group;
    long long s, k;
    std::vector<Elem> pool;
    std::vector<char> used;
    std::vector<std::vector<Elem>> family;
    long long internal_hits = 0, external_hits = 0;

    NaiveCounter(const FiniteGroup& g, long long s_, long long k_) : group(g), s(s_), k(k_) {
        for (Elem x = 0; x < g.order(); ++x)
            if (x != g.identity()) pool.push_back(x);
        used.assign(pool.size(), 0);
    }

    void run() { next_block(0); }

    // canonical space: each block ascending, block minima strictly
    // increasing, blocks disjoint, identity excluded
    void next_block(std::size_t min_index) {
        if (static_cast<long long>(family.size()) == s) {
            DesignReport report = classify_family(group, family, std::nullopt,
                                                  /*subgroup_analysis=*/false);
            if (report.dpdf.satisfied()) ++internal_hits;
            if (report.epdf.satisfied()) ++external_hits;
            return;
        }
        for (std::size_t i = min_index; i < pool.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            std::vector<std::size_t> picked{i};
            extend(i, i + 1, picked);
            used[i] = 0;
        }
    }

    void extend(std::size_t head, std::size_t from, std::vector<std::size_t>& picked) {
        if (static_cast<long long>(picked.size()) == k) {
            std::vector<Elem> block;
            block.reserve(picked.size());
            for (std::size_t index : picked) block.push_back(pool[index]);
            family.push_back(std::move(block));
            next_block(head + 1);
            family.pop_back();
            return;
        }
        for (std::size_t j = from; j < pool.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            picked.push_back(j);
            extend(head, j + 1, picked);
            picked.pop_back();
            used[j] = 0;
        }
    }
};

void criterion_search_vs_naive(Criterion& c) {
    std::vector<std::string> group_specs;
    for (int v = 2; v <= 16; ++v) group_specs.push_back("Z:" + std::to_string(v));
    group_specs.insert(group_specs.end(), {"SD:3:2:2", "SD:4:2:3", "SD:5:2:4", "SD:3:4:2",
                                           "SD:7:2:6", "SD:4:4:3", "A:3", "A:4", "Spence:3:1:2"});
    long long comparisons = 0;
    for (const std::string& spec_text : group_specs) {
        FiniteGroup group = group_from_spec(spec_text);
        for (long long s = 1; s <= 2; ++s)
            for (long long k = 1; k <= 3; ++k) {
                if (s * k > group.order() - 1) continue;
                NaiveCounter naive(group, s, k);
                naive.run();

                SearchSpec internal_spec(group);
                internal_spec.goal = SearchGoal::dpdf;
                internal_spec.s = s;
                internal_spec.k = k;
                const long long pruned_internal =
                    static_cast<long long>(search_families(internal_spec).solutions.size());

                SearchSpec external_spec(group);
                external_spec.goal = SearchGoal::epdf;
                external_spec.s = s;
                external_spec.k = k;
                const long long pruned_external =
                    static_cast<long long>(search_families(external_spec).solutions.size());

                const std::string where =
                    spec_text + " s=" + std::to_string(s) + " k=" + std::to_string(k);
                c.expect(pruned_internal == naive.internal_hits,
                         where + ": internal counts differ (pruned " +
                             std::to_string(pruned_internal) + ", naive " +
                             std::to_string(naive.internal_hits) + ")");
                c.expect(pruned_external == naive.external_hits,
                         where + ": external counts differ (pruned " +
                             std::to_string(pruned_external) + ", naive " +
                             std::to_string(naive.external_hits) + ")");
                comparisons += 2;
            }
    }
    c.note(std::to_string(comparisons) + " count comparisons over " +
           std::to_string(group_specs.size()) + " groups");
}

// ---------------------------------------------------------------------
// Criterion 8: the twisted-group chain, < 10 s.  The transfer verdict
// below is the recorded golden value from running the oracle; the
// assertions check the hypothesis tests and agreement with it.
// ---------------------------------------------------------------------
void criterion_twisted_chain(Criterion& c) {
    FiniteGroup twisted = build_spence(3, 1, 2);
    c.expect(twisted.order() == 8, "twisted group: wrong order");
    c.expect(!twisted.is_abelian(), "twisted group: should be non-abelian");
    const Elem e = twisted.identity();
    bool axioms = true;
    for (Elem x = 0; x < twisted.order() && axioms; ++x) {
        if (twisted.op(e, x) != x || twisted.op(x, e) != x) axioms = false;
        if (twisted.op(x, twisted.inverse(x)) != e) axioms = false;
        for (Elem y = 0; y < twisted.order() && axioms; ++y)
            for (Elem z = 0; z < twisted.order() && axioms; ++z)
                if (twisted.op(twisted.op(x, y), z) != twisted.op(x, twisted.op(y, z)))
                    axioms = false;
    }
    c.expect(axioms, "twisted group: group axioms failed");

    FiniteGroup base = build_cyclic(8);
    Subgroup h = subgroup_from(base, {4});
    SearchOutcome fixed = find_fixed_rds(base, h, 3, 1, {0, 3, 6, 1, 4, 7, 2, 5});
    c.expect(fixed.exhausted, "fixed-block search not exhaustive");
    bool has_block = false;
    for (const SearchSolution& sol : fixed.solutions)
        if (sol.family == std::vector<std::vector<Elem>>{{0, 1, 3}}) has_block = true;
    c.expect(has_block, "fixed-block search missed {0,1,3}");
    c.expect(fixed.solutions.size() == 4, "fixed-block search found " +
                                              std::to_string(fixed.solutions.size()) +
                                              " blocks, golden count is 4");

    SpenceTransferReport transfer = spence_transfer(base, twisted, {0, 1, 3}, {0, 4});
    c.expect(transfer.subgroup_normal_in_spence,
             "transfer: forbidden subgroup not normal in the twisted group");
    c.expect(transfer.transfers, "transfer: golden verdict is TRUE, oracle disagreed");
    c.expect(transfer.chained.has_value() && transfer.chained_outcome.has_value(),
             "transfer: chained construction missing");
    if (transfer.chained_outcome)
        c.expect(transfer.chained_outcome->all_confirmed,
                 "transfer: chained construction claims failed");
    c.note("golden transfer verdict: transfers=true with a verified chained family");
}

// ---------------------------------------------------------------------
// Criterion 9: the verified block-family lambda is q-1 for every swept
// q (the constructions' internal count; q itself never verifies).
// ---------------------------------------------------------------------
void criterion_lambda_regression(Criterion& c) {
    for (long long q : {3, 4, 5, 7, 8, 9, 11, 13})
        for (BoseForm form : {BoseForm::additive, BoseForm::multiplicative}) {
            ConstructionResult result = bose_dpdf(q, form);
            DesignReport report = classify_family(result.group, result.family);
            const std::string tag =
                "bose q=" + std::to_string(q) +
                (form == BoseForm::additive ? " additive" : " multiplicative");
            if (!report.dpdf.satisfied()) {
                c.expect(false, tag + ": internal verdict missing");
                continue;
            }
            c.expect(report.dpdf.params->lambda == q - 1,
                     tag + ": internal lambda " + std::to_string(report.dpdf.params->lambda) +
                         " != q-1 = " + std::to_string(q - 1));
            c.expect(report.dpdf.params->lambda != q,
                     tag + ": internal lambda equals q, contradicting the verified count");
        }
    c.note("every swept q verifies lambda = q-1, never q");
}

} // namespace

int main() {
    struct Item {
        int number;
        const char* name;
        double budget_ms; // 0 = no stated limit
        void (*run)(Criterion&);
    };
    const std::vector<Item> items{
        {1, "worked examples verify exactly", 0.0, criterion_worked_examples},
        {2, "order-60 flagship pair", 5000.0, criterion_flagship_pair},
        {3, "construction sweeps", 60000.0, criterion_sweeps},
        {4, "union-PDS triangle identity", 0.0, criterion_triangle},
        {5, "counting identities on every tuple", 0.0, criterion_counting_identities},
        {6, "search reproduction and nonexistence", 120000.0, criterion_search},
        {7, "pruned search matches naive enumeration", 300000.0, criterion_search_vs_naive},
        {8, "twisted-group chain", 10000.0, criterion_twisted_chain},
        {9, "block-family lambda regression", 0.0, criterion_lambda_regression},
    };

    int failed = 0;
    for (const Item& item : items) {
        Criterion criterion;
        const Clock::time_point start = Clock::now();
        try {
            item.run(criterion);
        } catch (const std::exception& err) {
            criterion.expect(false, std::string("unhandled exception: ") + err.what());
        }
        const double ms = elapsed_ms(start);
        if (item.budget_ms > 0.0 && ms >= item.budget_ms)
            criterion.expect(false, "over time budget: " + std::to_string(ms) + " ms >= " +
                                        std::to_string(item.budget_ms) + " ms");
        const bool ok = criterion.failures.empty();
        if (!ok) ++failed;
        std::printf("[%s] %d. %s (%.0f ms)\n", ok ? "PASS" : "FAIL", item.number, item.name, ms);
        for (const std::string& note : criterion.notes)
            std::printf("       note: %s\n", note.c_str());
        std::size_t shown = 0;
        for (const std::string& failure : criterion.failures) {
            if (shown++ == 10) {
                std::printf("       ... %zu more failures\n", criterion.failures.size() - 10);
                break;
            }
            std::printf("       - %s\n", failure.c_str());
        }
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
