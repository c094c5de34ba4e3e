#include "diffam/search.hpp"

#include <algorithm>

namespace diffam {

namespace {

// Feasible (on-union, off-union) count pairs allowed by the integer
// counting identity total = on*s*k + off*(v-1-s*k).  An empty menu is a
// proof that no family with these parameters can satisfy the design, so
// the search may return exhausted immediately.
struct Menu {
    std::vector<std::pair<long long, long long>> pairs;
    long long max_on_union = -1;
    long long max_anywhere = -1;
    bool empty() const { return pairs.empty(); }
};

Menu make_menu(long long v, long long s, long long k, long long total, long long on_cap) {
    Menu menu;
    const long long outside = v - 1 - s * k;
    for (long long on = 0; on <= on_cap; ++on) {
        const long long rem = total - on * s * k;
        if (rem < 0) break;
        if (outside == 0) {
            // The outside class is empty: the verdict is withheld as
            // vacuous, so no (on, off) pair is admissible.
            continue;
        }
        if (rem % outside != 0) continue;
        const long long off = rem / outside;
        menu.pairs.emplace_back(on, off);
        menu.max_on_union = std::max(menu.max_on_union, on);
        menu.max_anywhere = std::max({menu.max_anywhere, on, off});
    }
    return menu;
}

Menu internal_menu(long long v, long long s, long long k) {
    return make_menu(v, s, k, s * k * (k - 1), k - 1);
}

Menu external_menu(long long v, long long s, long long k) {
    return make_menu(v, s, k, s * (s - 1) * k * k, (s - 1) * k);
}

bool predicate_holds(SearchPredicate predicate, const DesignReport& report) {
    switch (predicate) {
    case SearchPredicate::none: return true;
    case SearchPredicate::epdf_not_dpdf:
        return report.epdf.satisfied() && !report.dpdf.satisfied();
    case SearchPredicate::dpdf_not_epdf:
        return report.dpdf.satisfied() && !report.epdf.satisfied();
    case SearchPredicate::dpdf_and_epdf:
        return report.dpdf.satisfied() && report.epdf.satisfied();
    case SearchPredicate::dpdf_and_epdf_proper_pds:
        return report.dpdf.satisfied() && report.epdf.satisfied() && report.pds.satisfied() &&
               report.pds.params->proper;
    }
    return false;
}

bool goal_holds(const SearchSpec& spec, const DesignReport& report) {
    bool ok = true;
    switch (spec.goal) {
    case SearchGoal::dpdf: ok = report.dpdf.satisfied(); break;
    case SearchGoal::epdf: ok = report.epdf.satisfied(); break;
    case SearchGoal::family: ok = true; break;
    case SearchGoal::rds: ok = true; break; // handled by the RDS searcher
    }
    return ok && predicate_holds(spec.predicate, report);
}

// Which sides the goal/predicate require to come out uniform; used both
// for pruning and for the cheap pre-classifier screen at the leaves.
void required_sides(const SearchSpec& spec, bool& need_int, bool& need_ext) {
    need_int = false;
    need_ext = false;
    switch (spec.goal) {
    case SearchGoal::dpdf: need_int = true; break;
    case SearchGoal::epdf: need_ext = true; break;
    default: break;
    }
    switch (spec.predicate) {
    case SearchPredicate::none: break;
    case SearchPredicate::epdf_not_dpdf: need_ext = true; break;
    case SearchPredicate::dpdf_not_epdf: need_int = true; break;
    case SearchPredicate::dpdf_and_epdf:
    case SearchPredicate::dpdf_and_epdf_proper_pds:
        need_int = true;
        need_ext = true;
        break;
    }
}

class FamilySearcher {
  public:
    FamilySearcher(const SearchSpec& spec, SearchOutcome& outcome)
        : spec_(spec), group_(spec.group), outcome_(outcome), v_(group_.order()) {
        required_sides(spec_, need_int_, need_ext_);
        if (need_int_) int_menu_ = internal_menu(v_, spec_.s, spec_.k);
        if (need_ext_) ext_menu_ = external_menu(v_, spec_.s, spec_.k);
        int_count_.assign(static_cast<std::size_t>(v_), 0);
        ext_count_.assign(static_cast<std::size_t>(v_), 0);
        in_union_.assign(static_cast<std::size_t>(v_), 0);
        for (Elem x = 0; x < v_; ++x)
            if (x != group_.identity()) candidates_.push_back(x);
    }

    // True when a required menu is empty: the identity has no integer
    // solution, so emptiness is certified without walking the tree.
    bool infeasible() const {
        return (need_int_ && int_menu_.empty()) || (need_ext_ && ext_menu_.empty());
    }

    void run() {
        if (infeasible()) return;
        blocks_.clear();
        place_block(0, -1);
    }

    bool aborted() const { return aborted_; }

  private:
    bool bump_node() {
        if (++outcome_.nodes_visited >= spec_.budget) aborted_ = true;
        return !aborted_;
    }

    bool count_ok(Elem d, bool internal) const {
        const Menu& menu = internal ? int_menu_ : ext_menu_;
        if (!(internal ? need_int_ : need_ext_)) return true;
        const long long count =
            internal ? int_count_[static_cast<std::size_t>(d)] : ext_count_[static_cast<std::size_t>(d)];
        const long long cap = in_union_[static_cast<std::size_t>(d)] ? menu.max_on_union
                                                                     : menu.max_anywhere;
        return count <= cap;
    }

    // Adds x to the block under construction, updating both spectra.
    // Returns false (after fully updating, so undo stays symmetric) when
    // a count exceeds every still-feasible design value.
    bool add_element(Elem x) {
        bool ok = true;
        for (Elem y : current_) {
            const Elem d1 = group_.difference(x, y);
            const Elem d2 = group_.difference(y, x);
            ++int_count_[static_cast<std::size_t>(d1)];
            ++int_count_[static_cast<std::size_t>(d2)];
            ok = ok && count_ok(d1, true) && count_ok(d2, true);
        }
        for (const std::vector<Elem>& block : blocks_) {
            for (Elem y : block) {
                const Elem d1 = group_.difference(x, y);
                const Elem d2 = group_.difference(y, x);
                ++ext_count_[static_cast<std::size_t>(d1)];
                ++ext_count_[static_cast<std::size_t>(d2)];
                ok = ok && count_ok(d1, false) && count_ok(d2, false);
            }
        }
        current_.push_back(x);
        in_union_[static_cast<std::size_t>(x)] = 1;
        // Joining the union tightens x's own caps.
        if (need_int_ && int_count_[static_cast<std::size_t>(x)] > int_menu_.max_on_union)
            ok = false;
        if (need_ext_ && ext_count_[static_cast<std::size_t>(x)] > ext_menu_.max_on_union)
            ok = false;
        return ok;
    }

    void remove_element(Elem x) {
        in_union_[static_cast<std::size_t>(x)] = 0;
        current_.pop_back();
        for (Elem y : current_) {
            --int_count_[static_cast<std::size_t>(group_.difference(x, y))];
            --int_count_[static_cast<std::size_t>(group_.difference(y, x))];
        }
        for (const std::vector<Elem>& block : blocks_) {
            for (Elem y : block) {
                --ext_count_[static_cast<std::size_t>(group_.difference(x, y))];
                --ext_count_[static_cast<std::size_t>(group_.difference(y, x))];
            }
        }
    }

    void place_block(long long block_index, Elem prev_min) {
        if (aborted_) return;
        if (block_index == spec_.s) {
            emit_leaf();
            return;
        }
        for (Elem min_elem : candidates_) {
            if (aborted_) return;
            if (min_elem <= prev_min) continue;
            if (in_union_[static_cast<std::size_t>(min_elem)]) continue;
            if (spec_.symmetry_reduction && block_index == 0 && min_elem != candidates_.front())
                break;
            if (!bump_node()) return;
            const bool ok = add_element(min_elem);
            if (ok) extend_block(block_index, min_elem, min_elem);
            remove_element(min_elem);
        }
    }

    void extend_block(long long block_index, Elem block_min, Elem last) {
        if (aborted_) return;
        if (static_cast<long long>(current_.size()) == spec_.k) {
            blocks_.push_back(current_);
            std::vector<Elem> saved;
            saved.swap(current_);
            place_block(block_index + 1, block_min);
            current_.swap(saved);
            blocks_.pop_back();
            return;
        }
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
            if (aborted_) return;
            const Elem x = candidates_[i];
            if (x <= last) continue;
            if (in_union_[static_cast<std::size_t>(x)]) continue;
            if (!bump_node()) return;
            const bool ok = add_element(x);
            if (ok) extend_block(block_index, block_min, x);
            remove_element(x);
        }
    }

    // Quick uniformity screen on the maintained counts before paying for
    // the classifier.
    bool screen() const {
        const auto uniform_split = [&](const std::vector<long long>& counts) {
            long long on = -1, off = -1;
            for (Elem x = 0; x < v_; ++x) {
                if (x == group_.identity()) continue;
                const long long c = counts[static_cast<std::size_t>(x)];
                long long& slot = in_union_[static_cast<std::size_t>(x)] ? on : off;
                if (slot == -1) slot = c;
                else if (slot != c) return false;
            }
            return true;
        };
        if (need_int_ && !uniform_split(int_count_)) return false;
        if (need_ext_ && !uniform_split(ext_count_)) return false;
        return true;
    }

    void emit_leaf() {
        if (!screen()) return;
        DesignReport report = classify_family(group_, blocks_, std::nullopt);
        if (!goal_holds(spec_, report)) return;
        outcome_.solutions.push_back({blocks_, std::move(report)});
        if (spec_.limit >= 0 &&
            static_cast<long long>(outcome_.solutions.size()) >= spec_.limit)
            aborted_ = true;
    }

    const SearchSpec& spec_;
    const FiniteGroup& group_;
    SearchOutcome& outcome_;
    long long v_;
    bool need_int_ = false, need_ext_ = false;
    Menu int_menu_, ext_menu_;
    std::vector<Elem> candidates_;
    std::vector<std::vector<Elem>> blocks_;
    std::vector<Elem> current_;
    std::vector<long long> int_count_, ext_count_;
    mutable std::vector<char> in_union_;
    bool aborted_ = false;
};

class RdsSearcher {
  public:
    RdsSearcher(const SearchSpec& spec, SearchOutcome& outcome)
        : spec_(spec), group_(spec.group), subgroup_(*spec.subgroup), outcome_(outcome),
          v_(group_.order()) {
        count_.assign(static_cast<std::size_t>(v_), 0);
    }

    void run() { extend(0, -1); }
    bool aborted() const { return aborted_; }

  private:
    bool bump_node() {
        if (++outcome_.nodes_visited >= spec_.budget) aborted_ = true;
        return !aborted_;
    }

    bool add_element(Elem x) {
        bool ok = true;
        for (Elem y : block_) {
            for (Elem d : {group_.difference(x, y), group_.difference(y, x)}) {
                ++count_[static_cast<std::size_t>(d)];
                if (subgroup_.contains(d)) ok = false; // lands in H \ {e}
                else if (count_[static_cast<std::size_t>(d)] > spec_.rds_lambda) ok = false;
            }
        }
        block_.push_back(x);
        return ok;
    }

    void remove_element(Elem x) {
        block_.pop_back();
        for (Elem y : block_) {
            --count_[static_cast<std::size_t>(group_.difference(x, y))];
            --count_[static_cast<std::size_t>(group_.difference(y, x))];
        }
    }

    void extend(Elem first_allowed, Elem last) {
        if (aborted_) return;
        if (static_cast<long long>(block_.size()) == spec_.k) {
            emit_leaf();
            return;
        }
        for (Elem x = std::max(first_allowed, static_cast<Elem>(last + 1)); x < v_; ++x) {
            if (aborted_) return;
            if (spec_.symmetry_reduction && block_.empty() && x != 0) break;
            if (!bump_node()) return;
            const bool ok = add_element(x);
            if (ok) extend(first_allowed, x);
            remove_element(x);
        }
    }

    void emit_leaf() {
        DesignReport report = classify_block(group_, block_, subgroup_);
        const long long n = subgroup_.order();
        const long long m = v_ / n;
        for (const RdsEntry& entry : report.rds) {
            if (entry.subgroup != subgroup_.elements) continue;
            if (entry.m != m || entry.n != n || entry.k != spec_.k ||
                entry.lambda != spec_.rds_lambda)
                continue;
            std::vector<Elem> sorted = block_;
            std::sort(sorted.begin(), sorted.end());
            outcome_.solutions.push_back({{sorted}, std::move(report)});
            if (spec_.limit >= 0 &&
                static_cast<long long>(outcome_.solutions.size()) >= spec_.limit)
                aborted_ = true;
            return;
        }
    }

    const SearchSpec& spec_;
    const FiniteGroup& group_;
    const Subgroup& subgroup_;
    SearchOutcome& outcome_;
    long long v_;
    std::vector<Elem> block_;
    std::vector<long long> count_;
    bool aborted_ = false;
};

} // namespace

const char* to_string(SearchGoal goal) {
    switch (goal) {
    case SearchGoal::dpdf: return "dpdf";
    case SearchGoal::epdf: return "epdf";
    case SearchGoal::rds: return "rds";
    case SearchGoal::family: return "family";
    }
    return "?";
}

SearchGoal parse_search_goal(const std::string& text) {
    if (text == "dpdf") return SearchGoal::dpdf;
    if (text == "epdf") return SearchGoal::epdf;
    if (text == "rds") return SearchGoal::rds;
    if (text == "family") return SearchGoal::family;
    throw Error(ErrorKind::invalid_parameter,
                "unknown search goal '" + text + "' (expected dpdf, epdf, rds or family)");
}

const char* to_string(SearchPredicate predicate) {
    switch (predicate) {
    case SearchPredicate::none: return "none";
    case SearchPredicate::epdf_not_dpdf: return "epdf-not-dpdf";
    case SearchPredicate::dpdf_not_epdf: return "dpdf-not-epdf";
    case SearchPredicate::dpdf_and_epdf: return "dpdf-and-epdf";
    case SearchPredicate::dpdf_and_epdf_proper_pds: return "dpdf-and-epdf-proper-pds";
    }
    return "?";
}

SearchPredicate parse_search_predicate(const std::string& text) {
    if (text.empty() || text == "none") return SearchPredicate::none;
    if (text == "epdf-not-dpdf") return SearchPredicate::epdf_not_dpdf;
    if (text == "dpdf-not-epdf") return SearchPredicate::dpdf_not_epdf;
    if (text == "dpdf-and-epdf") return SearchPredicate::dpdf_and_epdf;
    if (text == "dpdf-and-epdf-proper-pds") return SearchPredicate::dpdf_and_epdf_proper_pds;
    throw Error(ErrorKind::invalid_parameter, "unknown search predicate '" + text + "'");
}

SearchOutcome search_families(const SearchSpec& spec) {
    const long long v = spec.group.order();
    if (v > spec.max_order)
        throw Error(ErrorKind::invalid_parameter,
                    "group order " + std::to_string(v) + " exceeds the exhaustive-search bound " +
                        std::to_string(spec.max_order));
    if (spec.budget <= 0) throw Error(ErrorKind::invalid_parameter, "budget must be positive");
    if (spec.s < 1 || spec.k < 1)
        throw Error(ErrorKind::invalid_parameter, "s and k must be at least 1");
    if (spec.goal == SearchGoal::family && spec.predicate == SearchPredicate::none)
        throw Error(ErrorKind::invalid_parameter,
                    "goal 'family' needs an explicit predicate");

    SearchOutcome outcome;
    outcome.symmetry_reduced = spec.symmetry_reduction;

    if (spec.goal == SearchGoal::rds) {
        if (!spec.subgroup)
            throw Error(ErrorKind::invalid_parameter,
                        "the rds goal needs a forbidden subgroup");
        require_subgroup_of(spec.group, *spec.subgroup);
        if (spec.k > v)
            throw Error(ErrorKind::invalid_parameter, "k exceeds the group order");
        RdsSearcher searcher(spec, outcome);
        searcher.run();
        outcome.exhausted = !searcher.aborted();
        return outcome;
    }

    if (spec.s * spec.k > v - 1)
        throw Error(ErrorKind::invalid_parameter,
                    "s*k = " + std::to_string(spec.s * spec.k) +
                        " exceeds v-1 = " + std::to_string(v - 1));
    FamilySearcher searcher(spec, outcome);
    searcher.run();
    outcome.exhausted = !searcher.aborted();
    return outcome;
}

SearchOutcome find_fixed_rds(const FiniteGroup& group, const Subgroup& subgroup, long long k,
                             long long lambda, const std::vector<Elem>& automorphism) {
    require_subgroup_of(group, subgroup);
    const long long v = group.order();
    if (static_cast<long long>(automorphism.size()) != v)
        throw Error(ErrorKind::invalid_parameter,
                    "the map must assign an image to every element (got " +
                        std::to_string(automorphism.size()) + " of " + std::to_string(v) + ")");
    std::vector<char> seen(static_cast<std::size_t>(v), 0);
    for (Elem img : automorphism) {
        if (img < 0 || img >= v)
            throw Error(ErrorKind::invalid_parameter, "map image out of range");
        if (seen[static_cast<std::size_t>(img)])
            throw Error(ErrorKind::validation_failure, "the map is not a bijection");
        seen[static_cast<std::size_t>(img)] = 1;
    }
    for (Elem x = 0; x < v; ++x)
        for (Elem y = 0; y < v; ++y)
            if (automorphism[static_cast<std::size_t>(group.op(x, y))] !=
                group.op(automorphism[static_cast<std::size_t>(x)],
                         automorphism[static_cast<std::size_t>(y)]))
                throw Error(ErrorKind::validation_failure,
                            "the map is not a group automorphism: it fails on ('" +
                                group.label(x) + "', '" + group.label(y) + "')");
    if (k < 1 || k > v) throw Error(ErrorKind::invalid_parameter, "k must lie in 1..v");
    if (lambda < 0) throw Error(ErrorKind::invalid_parameter, "lambda must be non-negative");

    // Orbits of the map, each sorted, ordered by minimum element.
    std::vector<std::vector<Elem>> orbits;
    std::vector<char> visited(static_cast<std::size_t>(v), 0);
    for (Elem x = 0; x < v; ++x) {
        if (visited[static_cast<std::size_t>(x)]) continue;
        std::vector<Elem> orbit;
        Elem cur = x;
        while (!visited[static_cast<std::size_t>(cur)]) {
            visited[static_cast<std::size_t>(cur)] = 1;
            orbit.push_back(cur);
            cur = automorphism[static_cast<std::size_t>(cur)];
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }

    SearchOutcome outcome;
    const long long n = subgroup.order();
    const long long m = v / n;
    std::vector<long long> count(static_cast<std::size_t>(v), 0);
    std::vector<Elem> chosen;
    bool aborted = false;
    const long long budget = 100000000;

    // DFS over orbit subsets with incremental difference counts.
    auto add_orbit = [&](const std::vector<Elem>& orbit) {
        bool ok = true;
        for (Elem x : orbit) {
            for (Elem y : chosen) {
                for (Elem d : {group.difference(x, y), group.difference(y, x)}) {
                    ++count[static_cast<std::size_t>(d)];
                    if (subgroup.contains(d) || count[static_cast<std::size_t>(d)] > lambda)
                        ok = false;
                }
            }
            chosen.push_back(x);
        }
        return ok;
    };
    auto remove_orbit = [&](const std::vector<Elem>& orbit) {
        for (std::size_t i = orbit.size(); i-- > 0;) {
            chosen.pop_back();
            const Elem x = orbit[i];
            for (Elem y : chosen) {
                --count[static_cast<std::size_t>(group.difference(x, y))];
                --count[static_cast<std::size_t>(group.difference(y, x))];
            }
        }
    };

    const std::function<void(std::size_t)> walk = [&](std::size_t next) {
        if (aborted) return;
        if (static_cast<long long>(chosen.size()) == k) {
            std::vector<Elem> block = chosen;
            std::sort(block.begin(), block.end());
            DesignReport report = classify_block(group, block, subgroup);
            for (const RdsEntry& entry : report.rds) {
                if (entry.subgroup == subgroup.elements && entry.m == m && entry.n == n &&
                    entry.k == k && entry.lambda == lambda) {
                    outcome.solutions.push_back({{block}, std::move(report)});
                    break;
                }
            }
            return;
        }
        for (std::size_t i = next; i < orbits.size(); ++i) {
            if (aborted) return;
            if (static_cast<long long>(chosen.size() + orbits[i].size()) > k) continue;
            if (++outcome.nodes_visited >= budget) {
                aborted = true;
                return;
            }
            const bool ok = add_orbit(orbits[i]);
            if (ok) walk(i + 1);
            remove_orbit(orbits[i]);
        }
    };
    walk(0);
    outcome.exhausted = !aborted;
    return outcome;
}

SpenceTransferReport spence_transfer(const FiniteGroup& base, const FiniteGroup& spence,
                                     const std::vector<Elem>& block,
                                     const std::vector<Elem>& subgroup_elems) {
    if (base.order() != spence.order())
        throw Error(ErrorKind::invalid_parameter,
                    "the two groups must share one element carrier (orders " +
                        std::to_string(base.order()) + " and " + std::to_string(spence.order()) +
                        ")");
    if (spence.kind() != GroupKind::spence)
        throw Error(ErrorKind::invalid_parameter,
                    "the second group must be a twisted-addition group");
    const long long p = spence.spec().a;
    const long long v = base.order();

    SpenceTransferReport out;
    out.base_spec = base.spec();
    out.spence_spec = spence.spec();
    out.block = block;
    std::sort(out.block.begin(), out.block.end());
    out.subgroup = subgroup_elems;
    std::sort(out.subgroup.begin(), out.subgroup.end());

    Subgroup h_base = subgroup_from_elements(base, subgroup_elems);
    out.base_report = classify_block(base, block, h_base);
    const long long n = h_base.order();
    const long long m = v / n;
    bool affine = false;
    for (const RdsEntry& entry : out.base_report.rds) {
        if (entry.subgroup == h_base.elements && entry.k == entry.m - 1 && entry.lambda == 1 &&
            entry.n == entry.m - 2)
            affine = true;
    }
    if (!affine)
        throw Error(ErrorKind::validation_failure,
                    "the block is not an affine (" + std::to_string(m) + "," + std::to_string(n) +
                        "," + std::to_string(m - 1) +
                        ",1)-RDS relative to the subgroup in the base group");

    for (Elem x : out.block) {
        const Elem image = static_cast<Elem>((static_cast<long long>(x) * p) % v);
        if (!std::binary_search(out.block.begin(), out.block.end(), image))
            throw Error(ErrorKind::validation_failure,
                        "the block is not fixed by x -> " + std::to_string(p) + "*x: element " +
                            std::to_string(x) + " maps outside it");
    }

    Subgroup h_spence = subgroup_from_elements(spence, subgroup_elems);
    out.subgroup_normal_in_spence = h_spence.is_normal;
    out.spence_report = classify_block(spence, out.block, h_spence);
    for (const RdsEntry& entry : out.spence_report.rds) {
        if (entry.subgroup == h_spence.elements && entry.m == m && entry.n == n &&
            entry.k == m - 1 && entry.lambda == 1)
            out.transfers = true;
    }
    out.notes.push_back(out.transfers
                            ? "the RDS parameters hold unchanged under the twisted operation"
                            : "the RDS parameters do NOT hold under the twisted operation");

    if (out.transfers) {
        if (!h_spence.is_normal) {
            out.notes.push_back("the subgroup is not normal under the twisted operation; the "
                                "translate-family construction is skipped");
        } else if (n < 2 || (m - 2) % n != 0) {
            out.notes.push_back("the translate-family construction needs n >= 2 and n | m-2; "
                                "skipped");
        } else {
            out.chained = rds_translate_dpdf(spence, h_spence, out.block);
            out.chained_outcome = verify_construction(*out.chained);
            out.notes.push_back("chained into the translate family over the twisted group");
        }
    }
    return out;
}

} // namespace diffam
