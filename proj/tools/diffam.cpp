// Command-line front end: construct, verify, search, catalog, sweep.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diffam/certificate.hpp"
#include "diffam/classify.hpp"
#include "diffam/construct.hpp"
#include "diffam/field.hpp"
#include "diffam/group.hpp"
#include "diffam/search.hpp"

namespace {

using diffam::Json;

struct GlobalOptions {
    std::string format = "text";
    std::string out_path;
};

void emit(const GlobalOptions& global, const std::string& text, const Json& json) {
    const std::string payload = global.format == "json" ? json.dump(2) + "\n" : text;
    if (global.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(global.out_path, std::ios::binary);
    if (!out)
        throw diffam::Error(diffam::ErrorKind::io_error,
                            "cannot open output path '" + global.out_path + "'");
    out << payload;
}

std::vector<std::vector<diffam::Elem>> parse_blocks_text(const diffam::FiniteGroup& group,
                                                         const std::string& text) {
    std::vector<std::vector<diffam::Elem>> blocks;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, ';'))
        if (!current.empty()) blocks.push_back(diffam::parse_element_list(group, current));
    return blocks;
}

// Accepts a bare array of blocks, or any certificate object that carries
// "group" plus "family"/"blocks" (construction and verification outputs
// can be piped straight back in).
Json load_json(const std::string& path) {
    Json parsed;
    try {
        if (path == "-") {
            parsed = Json::parse(std::cin);
        } else {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw diffam::Error(diffam::ErrorKind::io_error,
                                    "cannot open file '" + path + "'");
            parsed = Json::parse(in);
        }
    } catch (const Json::parse_error& err) {
        throw diffam::Error(diffam::ErrorKind::parse_error,
                            std::string("invalid JSON: ") + err.what());
    }
    return parsed;
}

struct LoadedBlocks {
    std::optional<std::string> group_spec;
    Json blocks;
    std::optional<Json> subgroup;
};

LoadedBlocks extract_blocks(Json parsed) {
    if (parsed.is_object() && parsed.contains("construction"))
        parsed = parsed["construction"]; // verification certificate
    LoadedBlocks loaded;
    if (parsed.is_array()) {
        loaded.blocks = std::move(parsed);
        return loaded;
    }
    if (!parsed.is_object())
        throw diffam::Error(diffam::ErrorKind::parse_error,
                            "expected an array of blocks or a certificate object");
    if (parsed.contains("group") && parsed["group"].is_string())
        loaded.group_spec = parsed["group"].get<std::string>();
    if (parsed.contains("family")) loaded.blocks = parsed["family"];
    else if (parsed.contains("blocks")) loaded.blocks = parsed["blocks"];
    else
        throw diffam::Error(diffam::ErrorKind::parse_error,
                            "the object carries no 'family' or 'blocks' array");
    if (parsed.contains("subgroup")) loaded.subgroup = parsed["subgroup"];
    return loaded;
}

int finish_construction(const GlobalOptions& global, const diffam::ConstructionResult& result) {
    diffam::VerificationOutcome outcome = diffam::verify_construction(result);
    emit(global, diffam::verification_text(result, outcome),
         diffam::verification_json(result, outcome));
    return outcome.all_confirmed ? 0 : 1;
}

// ---- range parsing for sweeps: "5..99", "5..99:odd", "5,13,17" ----
std::vector<long long> parse_range(const std::string& text) {
    std::vector<long long> values;
    const auto fail = [&] {
        throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                            "cannot parse range '" + text +
                                "' (expected a..b, a..b:odd, a..b:even, or v1,v2,...)");
    };
    if (text.find("..") != std::string::npos) {
        std::string body = text, filter;
        if (const auto colon = text.find(':'); colon != std::string::npos) {
            body = text.substr(0, colon);
            filter = text.substr(colon + 1);
        }
        const auto dots = body.find("..");
        long long lo = 0, hi = 0;
        try {
            lo = std::stoll(body.substr(0, dots));
            hi = std::stoll(body.substr(dots + 2));
        } catch (...) {
            fail();
        }
        if (!filter.empty() && filter != "odd" && filter != "even") fail();
        for (long long v = lo; v <= hi; ++v) {
            if (filter == "odd" && v % 2 == 0) continue;
            if (filter == "even" && v % 2 != 0) continue;
            values.push_back(v);
        }
        return values;
    }
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            values.push_back(std::stoll(token));
        } catch (...) {
            fail();
        }
    }
    if (values.empty()) fail();
    return values;
}

struct SweepRow {
    std::vector<std::pair<std::string, std::string>> params;
    bool verified = false;
    std::string summary;
};

SweepRow run_row(const diffam::ConstructionResult& result) {
    SweepRow row;
    row.params = result.params;
    diffam::VerificationOutcome outcome = diffam::verify_construction(result);
    row.verified = outcome.all_confirmed;
    std::ostringstream summary;
    for (const diffam::ClaimCheck& check : outcome.checks) {
        if (check.confirmed) continue;
        summary << "  FAILED " << diffam::claim_label(check.claim) << ": " << check.detail;
    }
    if (row.verified) {
        for (const diffam::ClaimCheck& check : outcome.checks)
            summary << ' ' << diffam::claim_label(check.claim);
    }
    row.summary = summary.str();
    return row;
}

int emit_sweep(const GlobalOptions& global, const std::string& name,
               const std::vector<SweepRow>& rows, bool keep_going) {
    bool all_ok = true;
    std::ostringstream text;
    Json json_rows = Json::array();
    for (const SweepRow& row : rows) {
        all_ok = all_ok && row.verified;
        text << (row.verified ? "[ok]  " : "[FAIL]") << ' ' << name;
        Json params;
        for (const auto& [key, value] : row.params) {
            text << ' ' << key << '=' << value;
            params[key] = value;
        }
        text << row.summary << '\n';
        json_rows.push_back(
            Json{{"params", params}, {"verified", row.verified}, {"summary", row.summary}});
        if (!row.verified && !keep_going) break;
    }
    text << (all_ok ? "SWEEP VERIFIED" : "SWEEP FAILED") << " (" << rows.size() << " row(s))\n";
    Json json{{"sweep", name}, {"rows", json_rows}, {"all_verified", all_ok}};
    emit(global, text.str(), json);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"difference-family toolkit: exact construction and verification of "
                 "disjoint/external partial difference families in finite groups"};
    app.require_subcommand(1);
    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--out", global.out_path, "write output to this path instead of stdout");

    // ---- construct ----
    auto* construct_cmd = app.add_subcommand("construct", "run a registered construction");
    construct_cmd->fallthrough();
    std::string c_name, c_group, c_subgroup, c_block, c_form = "additive", c_choices, c_split;
    std::string c_source, c_source_blocks, c_map;
    long long c_m = 0, c_p = 0, c_d = 0, c_q = 0, c_t = 0;
    construct_cmd->add_option("name", c_name, "construction name")->required();
    construct_cmd->add_option("--group", c_group, "group spec, e.g. Z:16 or SD:5:8:4");
    construct_cmd->add_option("--subgroup", c_subgroup, "subgroup generators (comma separated)");
    construct_cmd->add_option("--block", c_block, "block elements (comma separated)");
    construct_cmd->add_option("--m", c_m, "parameter m");
    construct_cmd->add_option("--p", c_p, "parameter p");
    construct_cmd->add_option("--d", c_d, "parameter d");
    construct_cmd->add_option("--q", c_q, "parameter q");
    construct_cmd->add_option("--t", c_t, "parameter t");
    construct_cmd->add_option("--form", c_form, "bose form: additive|multiplicative");
    construct_cmd->add_option("--choices", c_choices, "coset-partition bits, e.g. 0,1");
    construct_cmd->add_option("--split", c_split, "coset-partition split coset indices");
    construct_cmd->add_option("--source", c_source, "embed-ddf source group spec");
    construct_cmd->add_option("--source-blocks", c_source_blocks,
                              "embed-ddf source blocks, ';' separated");
    construct_cmd->add_option("--map", c_map, "embed-ddf images of source elements 0..n-1");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "classify a block family exactly");
    verify_cmd->fallthrough();
    std::string v_group, v_blocks, v_file, v_subgroup, v_require = "any";
    verify_cmd->add_option("--group", v_group, "group spec");
    verify_cmd->add_option("--blocks", v_blocks, "inline blocks, ';' separated");
    verify_cmd->add_option("--file", v_file, "blocks file (JSON; '-' reads stdin)");
    verify_cmd->add_option("--subgroup", v_subgroup, "forbidden subgroup generators");
    verify_cmd->add_option("--require", v_require, "exit successfully only if this verdict holds")
        ->check(CLI::IsMember({"any", "ds", "pds", "ddf", "edf", "dpdf", "epdf", "rds", "dds"}))
        ->capture_default_str();

    // ---- search ----
    auto* search_cmd = app.add_subcommand("search", "exhaustive canonical family search");
    search_cmd->fallthrough();
    std::string s_group, s_goal = "dpdf", s_predicate = "none", s_subgroup, s_fixed_by;
    long long s_s = 1, s_k = 1, s_lambda = 1, s_limit = -1, s_budget = 100000000,
              s_max_order = 64;
    bool s_reduce = false;
    search_cmd->add_option("--group", s_group, "group spec")->required();
    search_cmd->add_option("--goal", s_goal, "dpdf|epdf|rds|family")->capture_default_str();
    search_cmd->add_option("--s", s_s, "number of blocks")->capture_default_str();
    search_cmd->add_option("--k", s_k, "block size")->capture_default_str();
    search_cmd->add_option("--lambda", s_lambda, "rds goal: target count")->capture_default_str();
    search_cmd->add_option("--subgroup", s_subgroup, "rds goal: forbidden subgroup generators");
    search_cmd->add_option("--predicate", s_predicate,
                           "none|epdf-not-dpdf|dpdf-not-epdf|dpdf-and-epdf|"
                           "dpdf-and-epdf-proper-pds")
        ->capture_default_str();
    search_cmd->add_option("--fixed-by", s_fixed_by,
                           "rds goal: search blocks fixed by this element map (images of "
                           "0..v-1, comma separated)");
    search_cmd->add_flag("--symmetry-reduction", s_reduce,
                         "pin the first block's minimum (reduced canonical space)");
    search_cmd->add_option("--limit", s_limit, "stop after this many solutions (-1 = all)")
        ->capture_default_str();
    search_cmd->add_option("--budget", s_budget, "node budget")->capture_default_str();
    search_cmd->add_option("--max-order", s_max_order, "largest group order accepted")
        ->capture_default_str();

    // ---- catalog ----
    auto* catalog_cmd = app.add_subcommand("catalog", "load and verify a stored design");
    catalog_cmd->fallthrough();
    std::string k_name;
    catalog_cmd->add_option("name", k_name, "catalog entry (omit to list)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "run a construction across a parameter range");
    sweep_cmd->fallthrough();
    std::string w_name, w_range, w_form = "both", w_groups;
    bool w_keep_going = false;
    sweep_cmd->add_option("name", w_name, "construction to sweep")->required();
    sweep_cmd->add_option("--m", w_range, "range for m (cyclic-quadruple, pair-family)");
    std::string w_p, w_d, w_q;
    sweep_cmd->add_option("--p", w_p, "range for p (qr-doubling)");
    sweep_cmd->add_option("--d", w_d, "range for d (coset-partition)");
    sweep_cmd->add_option("--q", w_q, "range for q (bose)");
    sweep_cmd->add_option("--form", w_form, "bose form: additive|multiplicative|both")
        ->capture_default_str();
    sweep_cmd->add_option("--groups", w_groups,
                          "comma-separated group specs (coset: all eligible subgroups)");
    sweep_cmd->add_flag("--keep-going", w_keep_going, "report all rows before failing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; every other parse failure is a usage error
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*construct_cmd) {
            const auto need_group = [&]() {
                if (c_group.empty())
                    throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                        "--group is required for this construction");
                return diffam::group_from_spec(c_group);
            };
            const auto need_subgroup = [&](const diffam::FiniteGroup& group) {
                if (c_subgroup.empty())
                    throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                        "--subgroup is required for this construction");
                return diffam::subgroup_from(group,
                                             diffam::parse_element_list(group, c_subgroup));
            };
            if (c_name == "coset") {
                diffam::FiniteGroup group = need_group();
                return finish_construction(global,
                                           diffam::coset_dpdf(group, need_subgroup(group)));
            }
            if (c_name == "cyclic-quadruple")
                return finish_construction(global, diffam::cyclic_quadruple_dpdf(c_m));
            if (c_name == "qr-doubling")
                return finish_construction(global, diffam::qr_doubling_dpdf(c_p));
            if (c_name == "coset-partition") {
                std::vector<int> choices;
                if (!c_choices.empty()) {
                    std::istringstream in(c_choices);
                    std::string token;
                    while (std::getline(in, token, ','))
                        choices.push_back(std::stoi(token));
                } else {
                    choices.assign(static_cast<std::size_t>(2 * c_d), 0);
                }
                std::vector<long long> split;
                if (!c_split.empty())
                    for (long long s : parse_range(c_split)) split.push_back(s);
                return finish_construction(global,
                                           diffam::coset_partition_dpdf(c_d, choices, split));
            }
            if (c_name == "bose")
                return finish_construction(global,
                                           diffam::bose_dpdf(c_q, diffam::parse_bose_form(c_form)));
            if (c_name == "rds-translate") {
                diffam::FiniteGroup group = need_group();
                diffam::Subgroup subgroup = need_subgroup(group);
                return finish_construction(
                    global, diffam::rds_translate_dpdf(
                                group, subgroup, diffam::parse_element_list(group, c_block)));
            }
            if (c_name == "ds-strip") {
                diffam::FiniteGroup group = need_group();
                diffam::Subgroup subgroup = need_subgroup(group);
                return finish_construction(
                    global, diffam::ds_strip_dpdf(group, subgroup,
                                                  diffam::parse_element_list(group, c_block)));
            }
            if (c_name == "pair-family")
                return finish_construction(global, diffam::pair_family_z3m(c_m));
            if (c_name == "embed-ddf") {
                diffam::FiniteGroup ambient = need_group();
                diffam::Subgroup subgroup = need_subgroup(ambient);
                if (c_source.empty() || c_source_blocks.empty() || c_map.empty())
                    throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                        "embed-ddf needs --source, --source-blocks and --map");
                diffam::FiniteGroup source = diffam::group_from_spec(c_source);
                return finish_construction(
                    global, diffam::embed_ddf_dpdf(ambient, subgroup, source,
                                                   parse_blocks_text(source, c_source_blocks),
                                                   diffam::parse_element_list(ambient, c_map)));
            }
            if (c_name == "dpdf-not-epdf-pairs")
                return finish_construction(global, diffam::dpdf_not_epdf_pairs(c_t));
            throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                "unknown construction '" + c_name +
                                    "'; valid: coset, cyclic-quadruple, qr-doubling, "
                                    "coset-partition, bose, rds-translate, ds-strip, "
                                    "pair-family, embed-ddf, dpdf-not-epdf-pairs");
        }

        if (*verify_cmd) {
            std::optional<Json> file_blocks;
            std::string group_spec = v_group;
            std::optional<Json> file_subgroup;
            if (!v_file.empty()) {
                LoadedBlocks loaded = extract_blocks(load_json(v_file));
                file_blocks = loaded.blocks;
                if (group_spec.empty() && loaded.group_spec) group_spec = *loaded.group_spec;
                file_subgroup = loaded.subgroup;
            }
            if (group_spec.empty())
                throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                    "--group is required (or a certificate file carrying one)");
            diffam::FiniteGroup group = diffam::group_from_spec(group_spec);
            std::vector<std::vector<diffam::Elem>> blocks;
            if (file_blocks) blocks = diffam::blocks_from_json(group, *file_blocks);
            else if (!v_blocks.empty()) blocks = parse_blocks_text(group, v_blocks);
            else
                throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                    "no blocks given: use --blocks or --file");
            std::optional<diffam::Subgroup> subgroup;
            if (!v_subgroup.empty())
                subgroup =
                    diffam::subgroup_from(group, diffam::parse_element_list(group, v_subgroup));
            else if (file_subgroup) {
                std::vector<diffam::Elem> elems;
                for (const Json& cell : *file_subgroup)
                    elems.push_back(diffam::element_from_json(group, cell));
                subgroup = diffam::subgroup_from_elements(group, std::move(elems));
            }
            diffam::DesignReport report = diffam::classify_family(group, blocks, subgroup);
            emit(global, diffam::report_text(group, report),
                 diffam::report_json(group, report));
            bool ok = false;
            if (v_require == "any")
                ok = report.ds.satisfied() || report.pds.satisfied() || report.ddf.satisfied() ||
                     report.edf.satisfied() || report.dpdf.satisfied() ||
                     report.epdf.satisfied() || !report.rds.empty() || !report.dds.empty();
            else if (v_require == "ds") ok = report.ds.satisfied();
            else if (v_require == "pds") ok = report.pds.satisfied();
            else if (v_require == "ddf") ok = report.ddf.satisfied();
            else if (v_require == "edf") ok = report.edf.satisfied();
            else if (v_require == "dpdf") ok = report.dpdf.satisfied();
            else if (v_require == "epdf") ok = report.epdf.satisfied();
            else if (v_require == "rds") ok = !report.rds.empty();
            else if (v_require == "dds") ok = !report.dds.empty();
            return ok ? 0 : 1;
        }

        if (*search_cmd) {
            diffam::SearchSpec spec(diffam::group_from_spec(s_group));
            spec.goal = diffam::parse_search_goal(s_goal);
            spec.s = s_s;
            spec.k = s_k;
            spec.rds_lambda = s_lambda;
            spec.predicate = diffam::parse_search_predicate(s_predicate);
            spec.symmetry_reduction = s_reduce;
            spec.limit = s_limit;
            spec.budget = s_budget;
            spec.max_order = s_max_order;
            if (!s_subgroup.empty())
                spec.subgroup = diffam::subgroup_from(
                    spec.group, diffam::parse_element_list(spec.group, s_subgroup));
            diffam::SearchOutcome outcome;
            if (!s_fixed_by.empty()) {
                if (spec.goal != diffam::SearchGoal::rds || !spec.subgroup)
                    throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                        "--fixed-by needs --goal rds and --subgroup");
                outcome = diffam::find_fixed_rds(
                    spec.group, *spec.subgroup, spec.k, spec.rds_lambda,
                    diffam::parse_element_list(spec.group, s_fixed_by));
            } else {
                outcome = diffam::search_families(spec);
            }
            emit(global, diffam::search_text(spec, outcome),
                 diffam::search_json(spec, outcome));
            return 0;
        }

        if (*catalog_cmd) {
            if (k_name.empty()) {
                std::ostringstream text;
                Json names = Json::array();
                for (const std::string& name : diffam::catalog_names()) {
                    text << name << '\n';
                    names.push_back(name);
                }
                emit(global, text.str(), Json{{"catalog", names}});
                return 0;
            }
            return finish_construction(global, diffam::catalog(k_name));
        }

        if (*sweep_cmd) {
            std::vector<SweepRow> rows;
            bool abort_early = false;
            const auto push_row = [&](const diffam::ConstructionResult& result) {
                if (abort_early) return;
                rows.push_back(run_row(result));
                if (!rows.back().verified && !w_keep_going) abort_early = true;
            };
            if (w_name == "cyclic-quadruple") {
                for (long long m : parse_range(w_range.empty() ? "5..99:odd" : w_range))
                    push_row(diffam::cyclic_quadruple_dpdf(m));
            } else if (w_name == "pair-family") {
                for (long long m : parse_range(w_range.empty() ? "5..33:odd" : w_range))
                    push_row(diffam::pair_family_z3m(m));
            } else if (w_name == "qr-doubling") {
                for (long long p : parse_range(w_p.empty() ? "5,13,17,29,37,41" : w_p))
                    push_row(diffam::qr_doubling_dpdf(p));
            } else if (w_name == "coset-partition") {
                for (long long d : parse_range(w_d.empty() ? "1..10" : w_d)) {
                    const std::size_t bits = static_cast<std::size_t>(2 * d);
                    std::vector<std::vector<int>> variants;
                    variants.emplace_back(bits, 0);
                    variants.emplace_back(bits, 1);
                    std::vector<int> alt01(bits), alt10(bits);
                    for (std::size_t i = 0; i < bits; ++i) {
                        alt01[i] = static_cast<int>(i % 2);
                        alt10[i] = static_cast<int>((i + 1) % 2);
                    }
                    variants.push_back(alt01);
                    variants.push_back(alt10);
                    for (const std::vector<int>& choices : variants)
                        push_row(diffam::coset_partition_dpdf(d, choices));
                }
            } else if (w_name == "bose") {
                std::vector<diffam::BoseForm> forms;
                if (w_form == "both")
                    forms = {diffam::BoseForm::additive, diffam::BoseForm::multiplicative};
                else forms = {diffam::parse_bose_form(w_form)};
                for (long long q : parse_range(w_q.empty() ? "3,4,5,7,8,9,11,13" : w_q))
                    for (diffam::BoseForm form : forms) push_row(diffam::bose_dpdf(q, form));
            } else if (w_name == "coset") {
                if (w_groups.empty())
                    throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                        "sweep coset needs --groups");
                std::istringstream in(w_groups);
                std::string spec_text;
                while (std::getline(in, spec_text, ',')) {
                    diffam::FiniteGroup group = diffam::group_from_spec(spec_text);
                    for (const diffam::Subgroup& subgroup : diffam::all_subgroups(group)) {
                        if (subgroup.order() < 2 || subgroup.order() >= group.order()) continue;
                        if (!subgroup.is_normal) continue;
                        push_row(diffam::coset_dpdf(group, subgroup));
                    }
                }
            } else {
                throw diffam::Error(diffam::ErrorKind::invalid_parameter,
                                    "unknown sweep '" + w_name +
                                        "'; valid: cyclic-quadruple, qr-doubling, "
                                        "coset-partition, bose, pair-family, coset");
            }
            return emit_sweep(global, w_name, rows, w_keep_going);
        }
    } catch (const diffam::Error& err) {
        std::cerr << "error (" << diffam::to_string(err.kind()) << "): " << err.what() << '\n';
        switch (err.kind()) {
        case diffam::ErrorKind::invalid_parameter:
        case diffam::ErrorKind::parse_error:
        case diffam::ErrorKind::io_error: return 2;
        default: return 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
