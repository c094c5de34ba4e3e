#pragma once

#include <string>
#include <vector>

#include "diffam/error.hpp"
#include "diffam/group.hpp"

namespace diffam {

/// GF(p^r) with exp/log tables over a primitive element.
///
/// Elements are packed integers in [0, p^r): the polynomial
/// c0 + c1*x + ... + c_{r-1}*x^{r-1} packs as c0 + c1*p + ... (base-p
/// digits, low coefficient first).  The generator `a` is the residue of
/// x modulo the primitive polynomial (for r = 1 it is the smallest
/// primitive root picked by the default polynomial x + c).
class FiniteField {
  public:
    /// Builds GF(p^r).  Without an override the primitive polynomial is
    /// the smallest monic one, ranking candidates by their non-leading
    /// coefficients read as a base-p number from degree r-1 down to the
    /// constant term.  A supplied polynomial (length r+1, low-first,
    /// monic) is validated and rejected if not primitive.
    static FiniteField build(int p, int r, const std::vector<int>* poly_override = nullptr);

    int characteristic() const { return p_; }
    int degree() const { return r_; }
    long long order() const { return q_; }

    /// The monic primitive polynomial in use, low-degree-first (r+1 coefficients).
    const std::vector<int>& primitive_poly() const { return poly_; }

    /// a^i as a packed element (i taken modulo q-1).
    long long exp(long long i) const;

    /// Discrete log base a; throws not_applicable for 0 (log undefined).
    long long log(long long x) const;

    long long add(long long x, long long y) const;
    long long sub(long long x, long long y) const;
    long long neg(long long x) const;
    long long mul(long long x, long long y) const;
    long long inv(long long x) const;

    /// Packed value <-> coefficient vector (length r, low-first).
    std::vector<int> coeffs(long long x) const;
    long long pack(const std::vector<int>& c) const;

    /// Human-readable form, e.g. "0", "3", "a", "3+4a", "1+a^2".
    std::string format(long long x) const;

    /// Membership in the subfield of order q0 (requires q0-1 | q-1 and
    /// q0 a power of p); 0 and elements whose log is divisible by
    /// (q-1)/(q0-1) belong to it.
    bool in_subfield(long long x, long long q0) const;

    /// For r = 2 only: the pair (c0, c1) with x = c0 + c1*a; throws
    /// invalid_parameter for other degrees.
    std::pair<int, int> decompose_deg2(long long x) const;

  private:
    int p_ = 0, r_ = 0;
    long long q_ = 0;
    std::vector<int> poly_;        // length r+1, monic, low-first
    std::vector<long long> exp_;   // size q-1: exp_[i] = packed a^i
    std::vector<long long> log_;   // size q: log_[0] = -1
    void require_elem(long long x) const;
};

/// The quadratic residues modulo an odd prime p, sorted ascending
/// (nonzero residues only).
std::vector<int> quadratic_residues(int p);

/// Additive group of GF(p^r): element index = packed field value.
FiniteGroup build_gf_additive(const FiniteField& field);

/// Multiplicative group of GF(p^r): element index i represents a^i.
FiniteGroup build_gf_multiplicative(const FiniteField& field);

} // namespace diffam
