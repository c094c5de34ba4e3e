#include "diffam/field.hpp"

#include <algorithm>

namespace diffam {

namespace {

bool prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Multiplies the residue `cur` (length r, low-first, mod f) by x.
void mul_by_x(std::vector<int>& cur, const std::vector<int>& poly, int p, int r) {
    int carry = cur[r - 1];
    for (int i = r - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (carry != 0) {
        // subtract carry * (f - x^r), i.e. reduce x^r = -(f_0 + ... + f_{r-1} x^{r-1})
        for (int i = 0; i < r; ++i) {
            cur[i] = (cur[i] - carry * poly[i]) % p;
            if (cur[i] < 0) cur[i] += p;
        }
    }
}

long long pack_vec(const std::vector<int>& c, int p) {
    long long v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
    return v;
}

// Tries to build the exp table for a candidate monic polynomial; returns
// false if x's residue does not generate all q-1 nonzero elements.
bool try_exp_table(const std::vector<int>& poly, int p, int r, long long q,
                   std::vector<long long>& exp_out) {
    std::vector<int> cur(r, 0);
    cur[0] = 1; // a^0 = 1
    std::vector<char> seen(static_cast<size_t>(q), 0);
    exp_out.assign(static_cast<size_t>(q - 1), 0);
    for (long long i = 0; i < q - 1; ++i) {
        long long packed = pack_vec(cur, p);
        if (packed == 0 || seen[packed]) return false;
        seen[packed] = 1;
        exp_out[i] = packed;
        mul_by_x(cur, poly, p, r);
    }
    // after q-1 steps we must be back at 1
    return pack_vec(cur, p) == 1;
}

} // namespace

FiniteField FiniteField::build(int p, int r, const std::vector<int>* poly_override) {
    if (!prime(p))
        throw Error(ErrorKind::invalid_parameter,
                    "field characteristic " + std::to_string(p) + " is not prime");
    if (r < 1)
        throw Error(ErrorKind::invalid_parameter, "field degree must be positive");
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > (1LL << 16))
            throw Error(ErrorKind::invalid_parameter,
                        "field order p^r exceeds the supported bound 2^16");
    }

    FiniteField f;
    f.p_ = p;
    f.r_ = r;
    f.q_ = q;

    if (poly_override) {
        std::vector<int> poly = *poly_override;
        if (static_cast<int>(poly.size()) != r + 1)
            throw Error(ErrorKind::invalid_parameter,
                        "polynomial must have r+1 = " + std::to_string(r + 1) + " coefficients");
        for (int& c : poly) {
            c %= p;
            if (c < 0) c += p;
        }
        if (poly[r] != 1)
            throw Error(ErrorKind::invalid_parameter, "polynomial must be monic");
        if (!try_exp_table(poly, p, r, q, f.exp_))
            throw Error(ErrorKind::validation_failure,
                        "supplied polynomial is not primitive over GF(" + std::to_string(p) + ")");
        f.poly_ = std::move(poly);
    } else {
        // Smallest monic polynomial, ranking candidates by the non-leading
        // coefficients read as a base-p number, highest degree first.
        std::vector<int> poly(r + 1, 0);
        poly[r] = 1;
        bool found = false;
        long long combos = 1;
        for (int i = 0; i < r; ++i) combos *= p;
        for (long long code = 0; code < combos && !found; ++code) {
            long long c = code;
            for (int i = 0; i < r; ++i) {
                poly[i] = static_cast<int>(c % p);
                c /= p;
            }
            found = try_exp_table(poly, p, r, q, f.exp_);
        }
        if (!found)
            throw Error(ErrorKind::construction_failure,
                        "no primitive polynomial found (unexpected)");
        f.poly_ = std::move(poly);
    }

    f.log_.assign(static_cast<size_t>(q), -1);
    for (long long i = 0; i < q - 1; ++i) f.log_[f.exp_[i]] = i;
    return f;
}

void FiniteField::require_elem(long long x) const {
    if (x < 0 || x >= q_)
        throw Error(ErrorKind::invalid_parameter,
                    "packed field element " + std::to_string(x) + " out of range [0, " +
                        std::to_string(q_) + ")");
}

long long FiniteField::exp(long long i) const {
    long long m = q_ - 1;
    return exp_[((i % m) + m) % m];
}

long long FiniteField::log(long long x) const {
    require_elem(x);
    if (x == 0)
        throw Error(ErrorKind::not_applicable, "the discrete log of 0 is undefined");
    return log_[x];
}

long long FiniteField::add(long long x, long long y) const {
    require_elem(x);
    require_elem(y);
    long long out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        out += (x % p_ + y % p_) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return out;
}

long long FiniteField::neg(long long x) const {
    require_elem(x);
    long long out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        out += (p_ - x % p_) % p_ * mult;
        x /= p_;
        mult *= p_;
    }
    return out;
}

long long FiniteField::sub(long long x, long long y) const { return add(x, neg(y)); }

long long FiniteField::mul(long long x, long long y) const {
    require_elem(x);
    require_elem(y);
    if (x == 0 || y == 0) return 0;
    return exp(log_[x] + log_[y]);
}

long long FiniteField::inv(long long x) const {
    require_elem(x);
    if (x == 0) throw Error(ErrorKind::not_applicable, "0 has no multiplicative inverse");
    return exp(q_ - 1 - log_[x]);
}

std::vector<int> FiniteField::coeffs(long long x) const {
    require_elem(x);
    std::vector<int> c(r_);
    for (int i = 0; i < r_; ++i) {
        c[i] = static_cast<int>(x % p_);
        x /= p_;
    }
    return c;
}

long long FiniteField::pack(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) != r_)
        throw Error(ErrorKind::invalid_parameter,
                    "coefficient vector must have length r = " + std::to_string(r_));
    long long v = 0;
    for (int i = r_ - 1; i >= 0; --i) {
        if (c[i] < 0 || c[i] >= p_)
            throw Error(ErrorKind::invalid_parameter, "coefficient out of range [0, p)");
        v = v * p_ + c[i];
    }
    return v;
}

std::string FiniteField::format(long long x) const {
    std::vector<int> c = coeffs(x);
    std::string out;
    for (int i = 0; i < r_; ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) out += std::to_string(c[i]);
        else {
            if (c[i] != 1) out += std::to_string(c[i]);
            out += (i == 1) ? "a" : "a^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

bool FiniteField::in_subfield(long long x, long long q0) const {
    require_elem(x);
    if (q0 < 2 || (q_ - 1) % (q0 - 1) != 0)
        throw Error(ErrorKind::invalid_parameter,
                    std::to_string(q0) + " is not the order of a subfield of GF(" +
                        std::to_string(q_) + ")");
    if (x == 0) return true;
    return log_[x] % ((q_ - 1) / (q0 - 1)) == 0;
}

std::pair<int, int> FiniteField::decompose_deg2(long long x) const {
    if (r_ != 2)
        throw Error(ErrorKind::invalid_parameter,
                    "decompose_deg2 requires a degree-2 field, got degree " + std::to_string(r_));
    require_elem(x);
    return {static_cast<int>(x % p_), static_cast<int>(x / p_)};
}

std::vector<int> quadratic_residues(int p) {
    if (!prime(p) || p == 2)
        throw Error(ErrorKind::invalid_parameter,
                    std::to_string(p) + " is not an odd prime");
    std::vector<char> is_qr(p, 0);
    for (int i = 1; i < p; ++i) is_qr[static_cast<long long>(i) * i % p] = 1;
    std::vector<int> out;
    for (int i = 1; i < p; ++i)
        if (is_qr[i]) out.push_back(i);
    return out;
}

FiniteGroup build_gf_additive(const FiniteField& field) {
    const long long q = field.order();
    if (q > kMaxGroupOrder)
        throw Error(ErrorKind::invalid_parameter,
                    "additive group order " + std::to_string(q) + " exceeds the cap");
    std::vector<std::string> labels(static_cast<size_t>(q));
    for (long long x = 0; x < q; ++x) labels[x] = field.format(x);
    GroupSpec spec{GroupKind::gf_additive, field.characteristic(), field.degree(), 0, ""};
    return FiniteGroup::from_op(spec, std::move(labels), [&field](Elem x, Elem y) {
        return static_cast<int>(field.add(x, y));
    });
}

FiniteGroup build_gf_multiplicative(const FiniteField& field) {
    const long long n = field.order() - 1;
    if (n < 1)
        throw Error(ErrorKind::invalid_parameter, "multiplicative group needs q >= 2");
    if (n > kMaxGroupOrder)
        throw Error(ErrorKind::invalid_parameter,
                    "multiplicative group order " + std::to_string(n) + " exceeds the cap");
    std::vector<std::string> labels(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) labels[i] = field.format(field.exp(i));
    GroupSpec spec{GroupKind::gf_multiplicative, field.characteristic(), field.degree(), 0, ""};
    return FiniteGroup::from_op(spec, std::move(labels), [n](Elem x, Elem y) {
        return static_cast<int>((x + y) % n);
    });
}

} // namespace diffam
