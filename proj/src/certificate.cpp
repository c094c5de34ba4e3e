#include "diffam/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace diffam {

namespace {

bool integer_elements(const FiniteGroup& group) {
    return group.kind() == GroupKind::cyclic || group.kind() == GroupKind::spence;
}

std::string tuple_text(const std::vector<long long>& values) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    out << ')';
    return out.str();
}

Json ds_params_json(const DsParams& p) {
    return Json{{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}};
}
Json pds_params_json(const PdsParams& p) {
    return Json{{"v", p.v},   {"k", p.k},           {"lambda", p.lambda},
                {"mu", p.mu}, {"proper", p.proper}, {"regular", p.regular}};
}
Json ddf_params_json(const DdfParams& p) {
    return Json{{"v", p.v}, {"s", p.s}, {"k", p.k}, {"lambda", p.lambda}};
}
Json pdf_params_json(const PdfParams& p) {
    return Json{{"v", p.v}, {"s", p.s}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}};
}

template <typename Params, typename Renderer>
Json verdict_json(const Verdict<Params>& verdict, Renderer&& render) {
    Json out;
    out["satisfied"] = verdict.satisfied();
    if (verdict.satisfied()) out["params"] = render(*verdict.params);
    else out["reason"] = verdict.reason;
    return out;
}

std::vector<long long> ds_tuple(const DsParams& p) { return {p.v, p.k, p.lambda}; }
std::vector<long long> pds_tuple(const PdsParams& p) { return {p.v, p.k, p.lambda, p.mu}; }
std::vector<long long> ddf_tuple(const DdfParams& p) { return {p.v, p.s, p.k, p.lambda}; }
std::vector<long long> pdf_tuple(const PdfParams& p) { return {p.v, p.s, p.k, p.lambda, p.mu}; }

template <typename Params, typename Tuple>
std::string verdict_line(const Verdict<Params>& verdict, Tuple&& tuple) {
    if (verdict.satisfied()) return tuple_text(tuple(*verdict.params));
    return "NOT SATISFIED - " + verdict.reason;
}

Json counts_json(const Spectrum& spectrum) { return Json(spectrum.counts); }

// Claims render with their target block/subgroup context when present.
Json claim_json(const ConstructionResult& result, const Claim& claim) {
    Json out;
    out["kind"] = to_string(claim.kind);
    out["expect"] = claim.expect_satisfied ? "satisfied" : "not-satisfied";
    out["label"] = claim_label(claim);
    if (!claim.params.empty()) out["params"] = claim.params;
    if (claim.block_index >= 0) out["block"] = claim.block_index;
    if (!claim.elements.empty()) out["elements"] = elements_json(result.group, claim.elements);
    if (!claim.subgroup.empty()) out["subgroup"] = elements_json(result.group, claim.subgroup);
    if (claim.relaxed_normality) out["relaxed_normality"] = true;
    if (!claim.expected_counts.empty()) out["expected_counts"] = claim.expected_counts;
    return out;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

} // namespace

Json element_json(const FiniteGroup& group, Elem x) {
    if (integer_elements(group)) return Json(static_cast<long long>(x));
    return Json(group.label(x));
}

Elem element_from_json(const FiniteGroup& group, const Json& value) {
    if (value.is_number_integer()) {
        const long long x = value.get<long long>();
        if (x < 0 || x >= group.order())
            throw Error(ErrorKind::parse_error, "element index " + std::to_string(x) +
                                                    " is outside [0, " +
                                                    std::to_string(group.order()) + ")");
        return static_cast<Elem>(x);
    }
    if (value.is_string()) return parse_element(group, value.get<std::string>());
    throw Error(ErrorKind::parse_error, "elements must be integers or label strings");
}

Json elements_json(const FiniteGroup& group, const std::vector<Elem>& elems) {
    Json out = Json::array();
    for (Elem x : elems) out.push_back(element_json(group, x));
    return out;
}

Json blocks_json(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks) {
    Json out = Json::array();
    for (const std::vector<Elem>& block : blocks) out.push_back(elements_json(group, block));
    return out;
}

std::vector<std::vector<Elem>> blocks_from_json(const FiniteGroup& group, const Json& value) {
    if (!value.is_array())
        throw Error(ErrorKind::parse_error, "blocks must be an array of arrays");
    std::vector<std::vector<Elem>> blocks;
    for (const Json& row : value) {
        if (!row.is_array())
            throw Error(ErrorKind::parse_error, "each block must be an array of elements");
        std::vector<Elem> block;
        for (const Json& cell : row) block.push_back(element_from_json(group, cell));
        blocks.push_back(std::move(block));
    }
    return blocks;
}

Json report_json(const FiniteGroup& group, const DesignReport& report) {
    Json out;
    out["group"] = report.group_spec.text();
    out["v"] = report.v;
    out["blocks"] = blocks_json(group, report.blocks);
    out["s"] = report.s;
    if (report.k) out["k"] = *report.k;
    else out["k"] = nullptr;
    out["disjoint"] = report.disjoint;
    out["identity_free"] = report.identity_free;
    out["identity_count_anomaly"] = report.identity_count_anomaly;
    out["near_complete"] = report.near_complete;
    out["union"] = elements_json(group, report.union_set);

    Json partition;
    partition["target"] = to_string(report.partition_target);
    if (!report.partition_subgroup.empty()) {
        partition["subgroup"] = elements_json(group, report.partition_subgroup);
        partition["subgroup_normal"] = report.partition_subgroup_normal;
    }
    out["partition"] = std::move(partition);

    Json counts;
    counts["internal"] = counts_json(report.internal);
    counts["external"] = counts_json(report.external);
    counts["union_internal"] = counts_json(report.union_internal);
    out["counts"] = std::move(counts);

    Json uniform;
    uniform["internal_on_union"] =
        report.internal_on_union ? Json(*report.internal_on_union) : Json(nullptr);
    uniform["internal_outside"] =
        report.internal_outside ? Json(*report.internal_outside) : Json(nullptr);
    uniform["external_on_union"] =
        report.external_on_union ? Json(*report.external_on_union) : Json(nullptr);
    uniform["external_outside"] =
        report.external_outside ? Json(*report.external_outside) : Json(nullptr);
    uniform["outside_empty"] = report.outside_empty;
    out["uniform"] = std::move(uniform);

    Json verdicts;
    verdicts["ds"] = verdict_json(report.ds, ds_params_json);
    verdicts["pds"] = verdict_json(report.pds, pds_params_json);
    verdicts["ddf"] = verdict_json(report.ddf, ddf_params_json);
    verdicts["edf"] = verdict_json(report.edf, ddf_params_json);
    verdicts["dpdf"] = verdict_json(report.dpdf, pdf_params_json);
    verdicts["epdf"] = verdict_json(report.epdf, pdf_params_json);
    Json rds = Json::array();
    for (const RdsEntry& entry : report.rds) {
        rds.push_back(Json{{"block", entry.block_index},
                           {"m", entry.m},
                           {"n", entry.n},
                           {"k", entry.k},
                           {"lambda", entry.lambda},
                           {"subgroup", elements_json(group, entry.subgroup)},
                           {"subgroup_normal", entry.subgroup_normal},
                           {"relation_holds", entry.relation_holds}});
    }
    verdicts["rds"] = std::move(rds);
    Json dds = Json::array();
    for (const DdsEntry& entry : report.dds) {
        dds.push_back(Json{{"block", entry.block_index},
                           {"m", entry.m},
                           {"n", entry.n},
                           {"k", entry.k},
                           {"lambda", entry.lambda},
                           {"mu", entry.mu},
                           {"subgroup", elements_json(group, entry.subgroup)},
                           {"subgroup_normal", entry.subgroup_normal}});
    }
    verdicts["dds"] = std::move(dds);
    out["verdicts"] = std::move(verdicts);

    Json identities = Json::array();
    for (const IdentityCheck& check : report.identities_checked) {
        identities.push_back(Json{{"name", check.name},
                                  {"lhs", check.lhs},
                                  {"rhs", check.rhs},
                                  {"holds", check.holds}});
    }
    out["identities"] = std::move(identities);
    return out;
}

Json construction_json(const ConstructionResult& result) {
    Json out;
    out["construction"] = result.construction;
    Json params;
    for (const auto& [key, value] : result.params) {
        if (all_digits(value)) params[key] = std::stoll(value);
        else params[key] = value;
    }
    out["params"] = std::move(params);
    out["group"] = result.group.spec().text();
    if (result.subgroup)
        out["subgroup"] = elements_json(result.group, result.subgroup->elements);
    out["family"] = blocks_json(result.group, result.family);
    Json claims = Json::array();
    for (const Claim& claim : result.claims) claims.push_back(claim_json(result, claim));
    out["claims"] = std::move(claims);
    if (!result.notes.empty()) out["notes"] = result.notes;
    return out;
}

Json verification_json(const ConstructionResult& result, const VerificationOutcome& outcome) {
    Json out;
    out["construction"] = construction_json(result);
    Json checks = Json::array();
    for (const ClaimCheck& check : outcome.checks) {
        checks.push_back(Json{{"label", claim_label(check.claim)},
                              {"confirmed", check.confirmed},
                              {"detail", check.detail}});
    }
    out["checks"] = std::move(checks);
    out["all_confirmed"] = outcome.all_confirmed;
    out["report"] = report_json(result.group, outcome.report);
    return out;
}

Json search_json(const SearchSpec& spec, const SearchOutcome& outcome) {
    Json spec_json;
    spec_json["group"] = spec.group.spec().text();
    spec_json["goal"] = to_string(spec.goal);
    if (spec.goal == SearchGoal::rds) {
        spec_json["k"] = spec.k;
        spec_json["lambda"] = spec.rds_lambda;
        if (spec.subgroup)
            spec_json["subgroup"] = elements_json(spec.group, spec.subgroup->elements);
    } else {
        spec_json["s"] = spec.s;
        spec_json["k"] = spec.k;
    }
    spec_json["predicate"] = to_string(spec.predicate);
    spec_json["symmetry_reduction"] = spec.symmetry_reduction;
    spec_json["limit"] = spec.limit;
    spec_json["budget"] = spec.budget;

    Json out;
    out["spec"] = std::move(spec_json);
    out["exhausted"] = outcome.exhausted;
    out["nodes_visited"] = outcome.nodes_visited;
    Json solutions = Json::array();
    for (const SearchSolution& solution : outcome.solutions) {
        solutions.push_back(Json{{"family", blocks_json(spec.group, solution.family)},
                                 {"report", report_json(spec.group, solution.report)}});
    }
    out["solutions"] = std::move(solutions);
    return out;
}

Json transfer_json(const FiniteGroup& base, const FiniteGroup& spence,
                   const SpenceTransferReport& report) {
    Json out;
    out["base_group"] = report.base_spec.text();
    out["twisted_group"] = report.spence_spec.text();
    out["block"] = elements_json(base, report.block);
    out["subgroup"] = elements_json(base, report.subgroup);
    out["subgroup_normal_in_twisted_group"] = report.subgroup_normal_in_spence;
    out["transfers"] = report.transfers;
    out["base_report"] = report_json(base, report.base_report);
    out["twisted_report"] = report_json(spence, report.spence_report);
    if (report.chained && report.chained_outcome)
        out["chained"] = verification_json(*report.chained, *report.chained_outcome);
    else
        out["chained"] = nullptr;
    if (!report.notes.empty()) out["notes"] = report.notes;
    return out;
}

// ---------------------------------------------------------------------------
// Text renderings.
// ---------------------------------------------------------------------------

std::string set_text(const FiniteGroup& group, const std::vector<Elem>& elems) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out << ", ";
        out << group.label(elems[i]);
    }
    out << '}';
    return out.str();
}

std::string report_text(const FiniteGroup& group, const DesignReport& report) {
    std::ostringstream out;
    out << "group " << report.group_spec.text() << " (order " << report.v << ")\n";
    out << "family: " << report.s << " block(s)";
    if (report.k) out << ", k = " << *report.k;
    else out << ", block sizes NOT uniform";
    out << (report.disjoint ? ", disjoint" : ", OVERLAPPING");
    out << (report.identity_free ? ", identity-free" : ", contains the identity");
    out << '\n';
    for (std::size_t i = 0; i < report.blocks.size(); ++i)
        out << "  S" << i + 1 << " = " << set_text(group, report.blocks[i]) << '\n';
    out << "partition: " << to_string(report.partition_target);
    if (!report.partition_subgroup.empty()) {
        out << " " << set_text(group, report.partition_subgroup)
            << (report.partition_subgroup_normal ? " (normal)" : " (not normal)");
    }
    out << '\n';
    if (report.internal_on_union) {
        out << "uniform counts: internal " << *report.internal_on_union << " on the union";
        if (report.internal_outside) out << ", " << *report.internal_outside << " outside";
        else if (report.outside_empty) out << ", outside class empty";
        out << '\n';
    }
    if (report.external_on_union) {
        out << "                external " << *report.external_on_union << " on the union";
        if (report.external_outside) out << ", " << *report.external_outside << " outside";
        else if (report.outside_empty) out << ", outside class empty";
        out << '\n';
    }
    out << "verdicts:\n";
    out << "  DS  : " << verdict_line(report.ds, ds_tuple) << '\n';
    out << "  PDS : " << verdict_line(report.pds, pds_tuple);
    if (report.pds.satisfied())
        out << (report.pds.params->proper ? " proper" : " improper")
            << (report.pds.params->regular ? " regular" : "");
    out << '\n';
    out << "  DDF : " << verdict_line(report.ddf, ddf_tuple) << '\n';
    out << "  EDF : " << verdict_line(report.edf, ddf_tuple) << '\n';
    out << "  DPDF: " << verdict_line(report.dpdf, pdf_tuple) << '\n';
    out << "  EPDF: " << verdict_line(report.epdf, pdf_tuple) << '\n';
    for (const RdsEntry& entry : report.rds) {
        out << "  RDS : block " << entry.block_index << ": (" << entry.m << ',' << entry.n << ','
            << entry.k << ',' << entry.lambda << ") relative to "
            << set_text(group, entry.subgroup)
            << (entry.subgroup_normal ? "" : " [subgroup not normal]") << '\n';
    }
    for (const DdsEntry& entry : report.dds) {
        out << "  DDS : block " << entry.block_index << ": (" << entry.m << ',' << entry.n << ','
            << entry.k << ',' << entry.lambda << ',' << entry.mu << ") relative to "
            << set_text(group, entry.subgroup)
            << (entry.subgroup_normal ? "" : " [subgroup not normal]") << '\n';
    }
    if (!report.identities_checked.empty()) {
        out << "identities:\n";
        for (const IdentityCheck& check : report.identities_checked)
            out << "  " << (check.holds ? "[ok]  " : "[FAIL]") << ' ' << check.name << ": "
                << check.lhs << " == " << check.rhs << '\n';
    }
    return out.str();
}

std::string verification_text(const ConstructionResult& result,
                              const VerificationOutcome& outcome) {
    std::ostringstream out;
    out << "construction " << result.construction;
    if (!result.params.empty()) {
        out << " (";
        for (std::size_t i = 0; i < result.params.size(); ++i) {
            if (i) out << ", ";
            out << result.params[i].first << '=' << result.params[i].second;
        }
        out << ')';
    }
    out << " over " << result.group.spec().text() << '\n';
    if (result.subgroup)
        out << "subgroup: " << set_text(result.group, result.subgroup->elements)
            << (result.subgroup->is_normal ? " (normal)" : " (not normal)") << '\n';
    for (std::size_t i = 0; i < result.family.size(); ++i)
        out << "  S" << i + 1 << " = " << set_text(result.group, result.family[i]) << '\n';
    for (const std::string& note : result.notes) out << "note: " << note << '\n';
    out << "claims:\n";
    for (const ClaimCheck& check : outcome.checks) {
        out << "  " << (check.confirmed ? "[ok]  " : "[FAIL]") << ' '
            << claim_label(check.claim) << " -- " << check.detail << '\n';
    }
    out << (outcome.all_confirmed ? "ALL CLAIMS VERIFIED" : "CLAIM MISMATCH") << '\n';
    return out.str();
}

std::string search_text(const SearchSpec& spec, const SearchOutcome& outcome) {
    std::ostringstream out;
    out << "search over " << spec.group.spec().text() << ": goal " << to_string(spec.goal);
    if (spec.goal == SearchGoal::rds) {
        out << ", k = " << spec.k << ", lambda = " << spec.rds_lambda;
        if (spec.subgroup)
            out << ", subgroup " << set_text(spec.group, spec.subgroup->elements);
    } else {
        out << ", s = " << spec.s << ", k = " << spec.k;
    }
    if (spec.predicate != SearchPredicate::none)
        out << ", predicate " << to_string(spec.predicate);
    if (spec.symmetry_reduction) out << ", symmetry reduction ON";
    out << '\n';
    out << "nodes visited: " << outcome.nodes_visited << '\n';
    out << "exhausted: " << (outcome.exhausted ? "true" : "false") << '\n';
    out << "solutions: " << outcome.solutions.size() << '\n';
    for (std::size_t i = 0; i < outcome.solutions.size(); ++i) {
        out << "  #" << i + 1 << ':';
        for (const std::vector<Elem>& block : outcome.solutions[i].family)
            out << ' ' << set_text(spec.group, block);
        const DesignReport& report = outcome.solutions[i].report;
        if (report.dpdf.satisfied()) out << "  DPDF" << tuple_text(pdf_tuple(*report.dpdf.params));
        if (report.epdf.satisfied()) out << "  EPDF" << tuple_text(pdf_tuple(*report.epdf.params));
        for (const RdsEntry& entry : report.rds)
            if (!spec.subgroup || entry.subgroup == spec.subgroup->elements)
                out << "  RDS(" << entry.m << ',' << entry.n << ',' << entry.k << ','
                    << entry.lambda << ')';
        out << '\n';
    }
    if (outcome.exhausted && outcome.solutions.empty())
        out << "nonexistence certificate: the canonical space was fully covered\n";
    return out.str();
}

std::string transfer_text(const FiniteGroup& base, const FiniteGroup& spence,
                          const SpenceTransferReport& report) {
    (void)spence; // labels match the base carrier; kept for signature symmetry
    std::ostringstream out;
    out << "transfer of " << set_text(base, report.block) << " from " << report.base_spec.text()
        << " into " << report.spence_spec.text() << '\n';
    out << "subgroup " << set_text(base, report.subgroup) << " (twisted-group normality: "
        << (report.subgroup_normal_in_spence ? "normal" : "not normal") << ")\n";
    out << "transfers: " << (report.transfers ? "true" : "false") << '\n';
    for (const std::string& note : report.notes) out << "note: " << note << '\n';
    if (report.chained && report.chained_outcome) {
        out << "chained construction:\n"
            << verification_text(*report.chained, *report.chained_outcome);
    }
    return out.str();
}

} // namespace diffam
