#include "diffam/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>

namespace diffam {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::validation_failure: return "validation-failure";
    case ErrorKind::construction_failure: return "construction-failure";
    case ErrorKind::not_applicable: return "not-applicable";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

namespace {

long long powmod(long long base, long long exp, long long mod) {
    if (mod == 1) return 0;
    long long r = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long checked_pow(long long base, long long exp, long long limit) {
    long long r = 1;
    for (long long i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw Error(ErrorKind::invalid_parameter,
                        std::to_string(base) + "^" + std::to_string(exp) + " exceeds " +
                            std::to_string(limit));
        r *= base;
    }
    return r;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_ll(const std::string& s, long long& out) {
    std::string t = trim(s);
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (size_t j = i; j < t.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(t[j]))) return false;
    try {
        out = std::stoll(t);
    } catch (...) {
        return false;
    }
    return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

} // namespace

// ---- GroupSpec ----

std::string GroupSpec::text() const {
    switch (kind) {
    case GroupKind::cyclic: return "Z:" + std::to_string(a);
    case GroupKind::gf_additive: return "GFadd:" + std::to_string(a) + "^" + std::to_string(b);
    case GroupKind::gf_multiplicative:
        return "GFmul:" + std::to_string(a) + "^" + std::to_string(b);
    case GroupKind::semidirect:
        return "SD:" + std::to_string(a) + ":" + std::to_string(b) + ":" + std::to_string(c);
    case GroupKind::alternating: return "A:" + std::to_string(a);
    case GroupKind::spence:
        return "Spence:" + std::to_string(a) + ":" + std::to_string(b) + ":" + std::to_string(c);
    case GroupKind::cayley: return "Cayley:@" + path;
    }
    return "?";
}

GroupSpec GroupSpec::parse(const std::string& text) {
    std::string t = trim(text);
    size_t colon = t.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::parse_error, "group spec '" + t + "' has no ':'");
    std::string head = t.substr(0, colon);
    std::string rest = t.substr(colon + 1);
    GroupSpec spec;
    auto need_ints = [&](size_t n) {
        std::vector<std::string> parts = split(rest, ':');
        if (parts.size() != n)
            throw Error(ErrorKind::parse_error,
                        "group spec '" + t + "' needs " + std::to_string(n) + " parameter(s)");
        std::vector<long long> vals(n);
        for (size_t i = 0; i < n; ++i)
            if (!parse_ll(parts[i], vals[i]))
                throw Error(ErrorKind::parse_error,
                            "group spec '" + t + "': '" + parts[i] + "' is not an integer");
        return vals;
    };
    if (head == "Z") {
        spec.kind = GroupKind::cyclic;
        spec.a = need_ints(1)[0];
    } else if (head == "GFadd" || head == "GFmul") {
        spec.kind = (head == "GFadd") ? GroupKind::gf_additive : GroupKind::gf_multiplicative;
        std::vector<std::string> pr = split(rest, '^');
        if (pr.size() != 2 || !parse_ll(pr[0], spec.a) || !parse_ll(pr[1], spec.b))
            throw Error(ErrorKind::parse_error,
                        "group spec '" + t + "' must look like " + head + ":<p>^<r>");
    } else if (head == "SD") {
        spec.kind = GroupKind::semidirect;
        auto v = need_ints(3);
        spec.a = v[0];
        spec.b = v[1];
        spec.c = v[2];
    } else if (head == "A") {
        spec.kind = GroupKind::alternating;
        spec.a = need_ints(1)[0];
    } else if (head == "Spence") {
        spec.kind = GroupKind::spence;
        auto v = need_ints(3);
        spec.a = v[0];
        spec.b = v[1];
        spec.c = v[2];
    } else if (head == "Cayley") {
        spec.kind = GroupKind::cayley;
        if (rest.empty() || rest[0] != '@')
            throw Error(ErrorKind::parse_error, "Cayley spec must look like Cayley:@<path>");
        spec.path = rest.substr(1);
    } else {
        throw Error(ErrorKind::parse_error, "unknown group spec prefix '" + head + "'");
    }
    return spec;
}

// ---- FiniteGroup ----

Elem FiniteGroup::element(const std::string& label) const {
    const Data& d = data();
    auto it = d.label_to_elem.find(label);
    if (it == d.label_to_elem.end())
        throw Error(ErrorKind::parse_error,
                    "unknown element label '" + label + "' in group " + d.spec.text());
    return it->second;
}

std::optional<Elem> FiniteGroup::find_element(const std::string& label) const {
    const Data& d = data();
    auto it = d.label_to_elem.find(label);
    if (it == d.label_to_elem.end()) return std::nullopt;
    return it->second;
}

FiniteGroup FiniteGroup::from_op(GroupSpec spec, std::vector<std::string> labels,
                                 const std::function<int(Elem, Elem)>& op) {
    const int n = static_cast<int>(labels.size());
    if (n < 1)
        throw Error(ErrorKind::invalid_parameter, "a group needs at least one element");
    if (n > kMaxGroupOrder)
        throw Error(ErrorKind::invalid_parameter,
                    "group order " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxGroupOrder));

    auto data = std::make_shared<Data>();
    data->spec = std::move(spec);
    data->order = n;
    data->labels = std::move(labels);
    for (int i = 0; i < n; ++i) {
        if (!data->label_to_elem.emplace(data->labels[i], i).second)
            throw Error(ErrorKind::validation_failure,
                        "duplicate element label '" + data->labels[i] + "'");
    }

    data->table.resize(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int z = op(x, y);
            if (z < 0 || z >= n)
                throw Error(ErrorKind::validation_failure,
                            "table entry at (" + std::to_string(x) + ", " + std::to_string(y) +
                                ") is " + std::to_string(z) + ", outside [0, " +
                                std::to_string(n) + ")");
            data->table[static_cast<size_t>(x) * n + y] = static_cast<std::uint16_t>(z);
        }
    auto at = [&](int x, int y) {
        return static_cast<int>(data->table[static_cast<size_t>(x) * n + y]);
    };

    // Rows and columns must be permutations (the cancellation laws).
    std::vector<char> seen(n);
    for (int x = 0; x < n; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int y = 0; y < n; ++y) {
            int z = at(x, y);
            if (seen[z])
                throw Error(ErrorKind::validation_failure,
                            "row " + std::to_string(x) + " ('" + data->labels[x] +
                                "') repeats the value " + std::to_string(z));
            seen[z] = 1;
        }
    }
    for (int y = 0; y < n; ++y) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int x = 0; x < n; ++x) {
            int z = at(x, y);
            if (seen[z])
                throw Error(ErrorKind::validation_failure,
                            "column " + std::to_string(y) + " ('" + data->labels[y] +
                                "') repeats the value " + std::to_string(z));
            seen[z] = 1;
        }
    }

    // Two-sided identity.
    data->identity = -1;
    for (int e = 0; e < n && data->identity < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
        if (ok) data->identity = e;
    }
    if (data->identity < 0)
        throw Error(ErrorKind::validation_failure, "no two-sided identity element exists");

    // Two-sided inverses.
    data->inverse.resize(n);
    for (int x = 0; x < n; ++x) {
        int inv = -1;
        for (int y = 0; y < n; ++y)
            if (at(x, y) == data->identity) {
                inv = y;
                break;
            }
        if (inv < 0 || at(inv, x) != data->identity)
            throw Error(ErrorKind::validation_failure,
                        "element " + std::to_string(x) + " ('" + data->labels[x] +
                            "') has no two-sided inverse");
        data->inverse[x] = static_cast<std::uint16_t>(inv);
    }

    // Associativity: exhaustive up to order 256, sampled above.
    auto check_triple = [&](int a, int b, int c) {
        if (at(at(a, b), c) != at(a, at(b, c)))
            throw Error(ErrorKind::validation_failure,
                        "associativity fails: (a*b)*c != a*(b*c) for (a, b, c) = ('" +
                            data->labels[a] + "', '" + data->labels[b] + "', '" +
                            data->labels[c] + "')");
    };
    if (n <= 256) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check_triple(a, b, c);
    } else {
        std::mt19937 rng(0x5eedu);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < 10 * n; ++i) check_triple(pick(rng), pick(rng), pick(rng));
    }

    data->abelian = true;
    for (int x = 0; x < n && data->abelian; ++x)
        for (int y = x + 1; y < n && data->abelian; ++y) data->abelian = at(x, y) == at(y, x);

    FiniteGroup g;
    g.data_ = std::move(data);
    return g;
}

FiniteGroup FiniteGroup::from_table(GroupSpec spec, std::vector<std::string> labels,
                                    const std::vector<int>& table) {
    const size_t n = labels.size();
    if (table.size() != n * n)
        throw Error(ErrorKind::validation_failure,
                    "table has " + std::to_string(table.size()) + " entries, expected " +
                        std::to_string(n * n));
    return from_op(std::move(spec), std::move(labels),
                   [&table, n](Elem x, Elem y) { return table[static_cast<size_t>(x) * n + y]; });
}

// ---- builders ----

FiniteGroup build_cyclic(int v) {
    if (v < 1)
        throw Error(ErrorKind::invalid_parameter,
                    "cyclic group order must be positive, got " + std::to_string(v));
    std::vector<std::string> labels(v);
    for (int i = 0; i < v; ++i) labels[i] = std::to_string(i);
    return FiniteGroup::from_op(GroupSpec{GroupKind::cyclic, v, 0, 0, ""}, std::move(labels),
                                [v](Elem x, Elem y) { return (x + y) % v; });
}

namespace {

std::string sd_label(int i, int j) {
    if (i == 0 && j == 0) return "1";
    std::string s;
    if (i == 1) s += "a";
    else if (i > 1) s += "a^" + std::to_string(i);
    if (j == 1) s += "b";
    else if (j > 1) s += "b^" + std::to_string(j);
    return s;
}

} // namespace

FiniteGroup build_semidirect_cyclic(int n, int m, long long t) {
    if (n < 1 || m < 1)
        throw Error(ErrorKind::invalid_parameter, "semidirect factors must have positive order");
    if (static_cast<long long>(n) * m > kMaxGroupOrder)
        throw Error(ErrorKind::invalid_parameter,
                    "group order " + std::to_string(static_cast<long long>(n) * m) +
                        " exceeds the cap of " + std::to_string(kMaxGroupOrder));
    long long tm = ((t % n) + n) % n;
    if (std::gcd(tm, static_cast<long long>(n)) != 1)
        throw Error(ErrorKind::invalid_parameter,
                    "t = " + std::to_string(t) + " is not a unit modulo n = " + std::to_string(n));
    if (powmod(tm, m, n) != 1 % n)
        throw Error(ErrorKind::invalid_parameter,
                    "t^m mod n = " + std::to_string(powmod(tm, m, n)) +
                        " but the action must satisfy t^m = 1 (mod n)");

    std::vector<long long> tpow(m);
    tpow[0] = 1 % n;
    for (int j = 1; j < m; ++j) tpow[j] = tpow[j - 1] * tm % n;

    std::vector<std::string> labels(static_cast<size_t>(n) * m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) labels[i + static_cast<size_t>(n) * j] = sd_label(i, j);

    auto op = [n, m, tpow](Elem x, Elem y) {
        int i1 = x % n, j1 = x / n;
        int i2 = y % n, j2 = y / n;
        int i = static_cast<int>((i1 + i2 * tpow[j1]) % n);
        int j = (j1 + j2) % m;
        return i + n * j;
    };
    return FiniteGroup::from_op(GroupSpec{GroupKind::semidirect, n, m, tm, ""}, std::move(labels),
                                op);
}

FiniteGroup build_alternating(int n, PermComposition comp) {
    if (n < 2 || n > 7)
        throw Error(ErrorKind::invalid_parameter,
                    "alternating groups are supported for 2 <= n <= 7, got n = " +
                        std::to_string(n));
    std::vector<perm::Perm> evens;
    perm::Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (perm::is_even(p)) evens.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    auto encode = [n](const perm::Perm& q) {
        long long code = 0;
        for (int i = 0; i < n; ++i) code = code * n + q[i];
        return code;
    };
    std::unordered_map<long long, int> index;
    index.reserve(evens.size() * 2);
    for (size_t i = 0; i < evens.size(); ++i) index[encode(evens[i])] = static_cast<int>(i);

    std::vector<std::string> labels(evens.size());
    for (size_t i = 0; i < evens.size(); ++i) labels[i] = perm::format_cycles(evens[i]);

    auto op = [&](Elem x, Elem y) {
        return index.at(encode(perm::compose(evens[x], evens[y], comp)));
    };
    return FiniteGroup::from_op(GroupSpec{GroupKind::alternating, n, 0, 0, ""}, std::move(labels),
                                op);
}

FiniteGroup build_spence(int p, int h, int v) {
    if (!is_prime(p))
        throw Error(ErrorKind::invalid_parameter, "p = " + std::to_string(p) + " is not prime");
    if (h < 1 || v < 1)
        throw Error(ErrorKind::invalid_parameter, "h and v must be positive");
    long long q = checked_pow(p, h, 1LL << 40);
    long long order = checked_pow(q, v, 1LL << 40) - 1;
    if (order < 1 || order > kMaxGroupOrder)
        throw Error(ErrorKind::invalid_parameter,
                    "group order q^v - 1 = " + std::to_string(order) + " is outside [1, " +
                        std::to_string(kMaxGroupOrder) + "]");

    // Every prime factor of v must divide q - 1.
    {
        long long rest = v;
        for (long long f = 2; f * f <= rest; ++f)
            while (rest % f == 0) {
                if ((q - 1) % f != 0)
                    throw Error(ErrorKind::invalid_parameter,
                                "prime factor " + std::to_string(f) + " of v does not divide q-1");
                rest /= f;
            }
        if (rest > 1 && (q - 1) % rest != 0)
            throw Error(ErrorKind::invalid_parameter,
                        "prime factor " + std::to_string(rest) + " of v does not divide q-1");
    }
    if (q % 4 == 3 && v % 4 == 0)
        throw Error(ErrorKind::invalid_parameter,
                    "v must not be divisible by 4 when q = 3 (mod 4)");

    // r(j): the exponent i in [0, v) with q^i = 1 + j(q-1) modulo v(q-1).
    const long long M = static_cast<long long>(v) * (q - 1);
    std::vector<long long> qpow_r(v);
    for (int jm = 0; jm < v; ++jm) {
        long long target = M == 1 ? 0 : (1 + jm * (q - 1)) % M;
        int found = -1, count = 0;
        for (int i = 0; i < v; ++i)
            if (powmod(q, i, M) == target) {
                found = i;
                ++count;
            }
        if (count != 1)
            throw Error(ErrorKind::construction_failure,
                        "the exponent r(j) is not uniquely determined for j = " +
                            std::to_string(jm) + " (found " + std::to_string(count) +
                            " candidates)");
        qpow_r[jm] = powmod(q, found, order);
    }

    const int N = static_cast<int>(order);
    std::vector<std::string> labels(N);
    for (int i = 0; i < N; ++i) labels[i] = std::to_string(i);
    auto op = [N, v, qpow_r](Elem x, Elem y) {
        return static_cast<int>((x * qpow_r[y % v] + y) % N);
    };
    return FiniteGroup::from_op(GroupSpec{GroupKind::spence, p, h, v, ""}, std::move(labels), op);
}

FiniteGroup build_from_cayley(std::vector<std::string> labels,
                              const std::vector<std::vector<int>>& table, GroupSpec spec) {
    const size_t n = labels.size();
    if (table.size() != n)
        throw Error(ErrorKind::validation_failure,
                    "table has " + std::to_string(table.size()) + " rows but there are " +
                        std::to_string(n) + " labels");
    std::vector<int> flat;
    flat.reserve(n * n);
    for (size_t r = 0; r < n; ++r) {
        if (table[r].size() != n)
            throw Error(ErrorKind::validation_failure,
                        "table row " + std::to_string(r) + " has " +
                            std::to_string(table[r].size()) + " entries, expected " +
                            std::to_string(n));
        flat.insert(flat.end(), table[r].begin(), table[r].end());
    }
    return FiniteGroup::from_table(std::move(spec), std::move(labels), flat);
}

// ---- subgroups, cosets, translates ----

namespace {

std::vector<Elem> closure_of(const FiniteGroup& g, const std::vector<Elem>& gens) {
    const int n = g.order();
    std::vector<char> in(n, 0);
    std::vector<Elem> list;
    auto add = [&](Elem x) {
        if (!in[x]) {
            in[x] = 1;
            list.push_back(x);
        }
    };
    add(g.identity());
    for (Elem x : gens) {
        if (x < 0 || x >= n)
            throw Error(ErrorKind::invalid_parameter,
                        "generator index " + std::to_string(x) + " out of range");
        add(x);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        const size_t sz = list.size();
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = 0; j < sz; ++j) {
                Elem z = g.op(list[i], list[j]);
                if (!in[z]) {
                    in[z] = 1;
                    list.push_back(z);
                    changed = true;
                }
            }
    }
    std::sort(list.begin(), list.end());
    return list;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> sorted_elems) {
    Subgroup h;
    h.parent = g;
    h.member.assign(g.order(), 0);
    for (Elem x : sorted_elems) h.member[x] = 1;
    h.elements = std::move(sorted_elems);
    h.is_normal = true;
    for (Elem x = 0; x < g.order() && h.is_normal; ++x)
        for (Elem y : h.elements) {
            if (!h.member[g.op(g.op(x, y), g.inverse(x))]) {
                h.is_normal = false;
                break;
            }
        }
    return h;
}

} // namespace

void require_subgroup_of(const FiniteGroup& group, const Subgroup& subgroup) {
    if (subgroup.parent.same_group(group)) return;
    // Accept a structurally identical group built separately.
    if (subgroup.parent.order() == group.order() && subgroup.parent.spec() == group.spec() &&
        group.spec().kind != GroupKind::cayley)
        return;
    throw Error(ErrorKind::invalid_parameter, "subgroup belongs to a different group");
}

Subgroup subgroup_from(const FiniteGroup& group, const std::vector<Elem>& generators) {
    return make_subgroup(group, closure_of(group, generators));
}

Subgroup subgroup_from_elements(const FiniteGroup& group, std::vector<Elem> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty())
        throw Error(ErrorKind::invalid_parameter, "a subgroup cannot be empty");
    std::vector<char> in(group.order(), 0);
    for (Elem x : elements) {
        if (x < 0 || x >= group.order())
            throw Error(ErrorKind::invalid_parameter,
                        "element index " + std::to_string(x) + " out of range");
        in[x] = 1;
    }
    for (Elem x : elements)
        for (Elem y : elements) {
            Elem z = group.op(x, y);
            if (!in[z])
                throw Error(ErrorKind::validation_failure,
                            "set is not closed: '" + group.label(x) + "' * '" + group.label(y) +
                                "' = '" + group.label(z) + "' is outside the set");
        }
    return make_subgroup(group, std::move(elements));
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& group) {
    if (group.order() > 128)
        throw Error(ErrorKind::not_applicable,
                    "subgroup enumeration is limited to groups of order <= 128 (got " +
                        std::to_string(group.order()) + "); pass an explicit subgroup instead");

    std::set<std::vector<Elem>> seen;
    std::vector<std::vector<Elem>> seeds;
    for (Elem g = 0; g < group.order(); ++g) {
        std::vector<Elem> cyc = closure_of(group, {g});
        if (seen.insert(cyc).second) seeds.push_back(cyc);
    }
    // Close the cyclic subgroups under pairwise join; joining with every
    // cyclic seed in turn reaches every join of two known subgroups.
    std::vector<std::vector<Elem>> pool(seen.begin(), seen.end());
    for (size_t i = 0; i < pool.size(); ++i) {
        for (const auto& s : seeds) {
            std::vector<Elem> gens = pool[i];
            gens.insert(gens.end(), s.begin(), s.end());
            std::vector<Elem> joined = closure_of(group, gens);
            if (seen.insert(joined).second) pool.push_back(std::move(joined));
        }
    }
    std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    std::vector<Subgroup> out;
    out.reserve(pool.size());
    for (auto& elems : pool) out.push_back(make_subgroup(group, std::move(elems)));
    return out;
}

std::vector<std::vector<Elem>> cosets_of(const FiniteGroup& group, const Subgroup& subgroup,
                                         Side side) {
    require_subgroup_of(group, subgroup);
    const int n = group.order();
    std::vector<char> visited(n, 0);
    std::vector<std::vector<Elem>> cosets;
    auto emit = [&](Elem g) {
        std::vector<Elem> coset;
        coset.reserve(subgroup.elements.size());
        for (Elem h : subgroup.elements)
            coset.push_back(side == Side::left ? group.op(g, h) : group.op(h, g));
        std::sort(coset.begin(), coset.end());
        for (Elem x : coset) visited[x] = 1;
        cosets.push_back(std::move(coset));
    };
    emit(group.identity()); // the subgroup itself comes first
    for (Elem g = 0; g < n; ++g)
        if (!visited[g]) emit(g);
    return cosets;
}

std::vector<Elem> translate(const FiniteGroup& group, Elem g, const std::vector<Elem>& set,
                            Side side) {
    if (g < 0 || g >= group.order())
        throw Error(ErrorKind::invalid_parameter,
                    "translate element index " + std::to_string(g) + " out of range");
    std::vector<Elem> out;
    out.reserve(set.size());
    for (Elem x : set) {
        if (x < 0 || x >= group.order())
            throw Error(ErrorKind::invalid_parameter,
                        "set element index " + std::to_string(x) + " out of range");
        out.push_back(side == Side::left ? group.op(g, x) : group.op(x, g));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- element parsing ----

namespace {

Elem parse_sd_word(const FiniteGroup& group, const std::string& token) {
    const GroupSpec& spec = group.spec();
    const long long n = spec.a, m = spec.b, t = spec.c;
    long long i = 0, j = 0;
    size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::parse_error,
                    "cannot parse '" + token + "' as a word in a and b: " + why);
    };
    while (pos < token.size()) {
        char ch = token[pos];
        if (ch == ' ' || ch == '*' || ch == '\t') {
            ++pos;
            continue;
        }
        if (ch == '1') {
            ++pos;
            continue;
        }
        if (ch != 'a' && ch != 'b') fail(std::string("unexpected character '") + ch + "'");
        ++pos;
        long long exp = 1;
        if (pos < token.size() && token[pos] == '^') {
            ++pos;
            bool neg = false;
            if (pos < token.size() && token[pos] == '-') {
                neg = true;
                ++pos;
            }
            if (pos >= token.size() || !std::isdigit(static_cast<unsigned char>(token[pos])))
                fail("'^' must be followed by an integer");
            exp = 0;
            while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos])))
                exp = exp * 10 + (token[pos++] - '0');
            if (neg) exp = -exp;
        }
        if (ch == 'a') {
            long long e = ((exp % n) + n) % n;
            // (a^i b^j) * a^e = a^(i + e * t^j) b^j
            i = (i + e % n * powmod(t, j, n)) % n;
        } else {
            j = ((j + exp) % m + m) % m;
        }
    }
    return static_cast<Elem>(i + n * j);
}

} // namespace

Elem parse_element(const FiniteGroup& group, const std::string& token) {
    std::string t = trim(token);
    if (t.empty()) throw Error(ErrorKind::parse_error, "empty element token");
    long long value;
    if (group.kind() == GroupKind::cyclic) {
        if (parse_ll(t, value)) {
            long long v = group.order();
            return static_cast<Elem>(((value % v) + v) % v);
        }
        return group.element(t);
    }
    // An exact display label always wins, so labels round-trip even when
    // they look numeric (the semidirect identity "1", field values in a
    // multiplicative group).  Only then is a bare integer read as an index.
    if (std::optional<Elem> hit = group.find_element(t)) return *hit;
    if (parse_ll(t, value)) {
        if (value < 0 || value >= group.order())
            throw Error(ErrorKind::parse_error, "element index " + std::to_string(value) +
                                                    " out of range for group of order " +
                                                    std::to_string(group.order()));
        return static_cast<Elem>(value);
    }
    const auto& spec = group.spec();
    if (spec.kind == GroupKind::semidirect) return parse_sd_word(group, t);
    if (spec.kind == GroupKind::alternating) {
        perm::Perm p = perm::parse_cycles(t, static_cast<int>(spec.a));
        return group.element(perm::format_cycles(p));
    }
    return group.element(t);
}

std::vector<Elem> parse_element_list(const FiniteGroup& group, const std::string& csv) {
    std::vector<Elem> out;
    std::string cur;
    auto flush = [&]() {
        std::string t = trim(cur);
        cur.clear();
        if (!t.empty()) out.push_back(parse_element(group, t));
    };
    int depth = 0;
    for (char ch : csv) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            flush();
            continue;
        }
        cur += ch;
    }
    flush();
    return out;
}

// ---- permutation helpers ----

namespace perm {

Perm parse_cycles(const std::string& text, int n) {
    std::string t = trim(text);
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    if (t == "id" || t == "e" || t == "()" || t == "1") return p;
    std::vector<char> used(n, 0);
    size_t pos = 0;
    bool any = false;
    while (pos < t.size()) {
        if (t[pos] == ' ') {
            ++pos;
            continue;
        }
        if (t[pos] != '(')
            throw Error(ErrorKind::parse_error, "expected '(' in cycle notation '" + t + "'");
        ++pos;
        std::vector<int> cycle;
        while (pos < t.size() && t[pos] != ')') {
            char ch = t[pos];
            if (ch == ' ' || ch == ',') {
                ++pos;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw Error(ErrorKind::parse_error,
                            std::string("unexpected character '") + ch + "' in cycle notation");
            int point = ch - '1';
            if (point < 0 || point >= n)
                throw Error(ErrorKind::parse_error, "point " + std::string(1, ch) +
                                                        " out of range 1.." + std::to_string(n));
            if (used[point])
                throw Error(ErrorKind::parse_error,
                            "point " + std::string(1, ch) + " appears twice in '" + t + "'");
            used[point] = 1;
            cycle.push_back(point);
            ++pos;
        }
        if (pos >= t.size())
            throw Error(ErrorKind::parse_error, "unterminated cycle in '" + t + "'");
        ++pos; // skip ')'
        if (cycle.size() == 1)
            throw Error(ErrorKind::parse_error, "a cycle needs at least two points");
        if (!cycle.empty()) {
            any = true;
            for (size_t i = 0; i < cycle.size(); ++i)
                p[cycle[i]] = cycle[(i + 1) % cycle.size()];
        }
    }
    if (!any && t != "id" && t != "e" && t != "()" && t != "1" && !t.empty() && t[0] != '(')
        throw Error(ErrorKind::parse_error, "cannot parse '" + t + "' as cycles");
    return p;
}

std::string format_cycles(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> visited(n, 0);
    std::string out;
    for (int start = 0; start < n; ++start) {
        if (visited[start] || p[start] == start) {
            visited[start] = 1;
            continue;
        }
        out += '(';
        int x = start;
        while (!visited[x]) {
            visited[x] = 1;
            out += static_cast<char>('1' + x);
            x = p[x];
        }
        out += ')';
    }
    return out.empty() ? "id" : out;
}

bool is_even(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> visited(n, 0);
    int transpositions = 0;
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        int len = 0, x = start;
        while (!visited[x]) {
            visited[x] = 1;
            x = p[x];
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

Perm compose(const Perm& s, const Perm& t, PermComposition comp) {
    const int n = static_cast<int>(s.size());
    Perm out(n);
    for (int x = 0; x < n; ++x)
        out[x] = comp == PermComposition::right_to_left ? s[t[x]] : t[s[x]];
    return out;
}

} // namespace perm

} // namespace diffam
