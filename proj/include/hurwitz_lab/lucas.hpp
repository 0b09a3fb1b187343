#pragma once

// Lucas-type polynomials L_0 = 2, L_1 = x, L_n = x L_(n-1) - L_(n-2), the
// curves y^n = L_n(x), their point counts against the Hasse-Weil bound and
// total inflection censuses.

#include <string>
#include <vector>

#include "curve.hpp"
#include "hurwitz.hpp"

namespace hlab {

struct LucasPoly {
    unsigned n = 0;
    Field field;  // GF(p)
    UniPoly poly;
};

inline void require_odd_characteristic(u64 p) {
    if (!nt::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (p == 2) throw Error(Errc::CharTwo, "Lucas-type polynomials need odd characteristic");
}

/// L_n over the given field (any characteristic but 2).
inline UniPoly lucas_over(const Field& F, unsigned n) {
    if (F.characteristic() == 2) throw Error(Errc::CharTwo, "Lucas-type polynomials need odd characteristic");
    UniPoly a = UniPoly::constant(F.from_int(2)), b = poly::x_poly(F);
    if (n == 0) return a;
    for (unsigned k = 2; k <= n; ++k) {
        UniPoly c = poly::sub(F, poly::mul(F, poly::x_poly(F), b), a);
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

inline LucasPoly lucas_poly(unsigned n, u64 p) {
    require_odd_characteristic(p);
    LucasPoly L{n, Field::make(p, 1), {}};
    L.poly = lucas_over(L.field, n);
    require(L.poly.degree() == static_cast<long>(n), "deg L_n = n");
    if (n > 0 && n % p != 0)
        require(poly::gcd(L.field, L.poly, poly::derivative(L.field, L.poly)).degree() == 0, "L_n is separable when p does not divide n");
    return L;
}

/// x^n L_n((x^2+1)/x) == x^(2n) + 1, expanded term by term with the denominator cleared.
inline bool verify_fundamental_identity(unsigned n, u64 p) {
    const LucasPoly L = lucas_poly(n, p);
    const Field& F = L.field;
    const UniPoly x = poly::x_poly(F);
    const UniPoly x2p1({F.one(), F.zero(), F.one()});
    UniPoly lhs;
    UniPoly num = UniPoly::constant(F.one());  // (x^2+1)^k
    for (unsigned k = 0; k <= n; ++k) {
        const Fe c = L.poly[k];
        if (c.code != 0) lhs = poly::add(F, lhs, poly::scale(F, poly::mul(F, num, UniPoly::monomial(F.one(), n - k)), c));
        num = poly::mul(F, num, x2p1);
    }
    const UniPoly rhs = poly::add(F, UniPoly::monomial(F.one(), 2 * n), UniPoly::constant(F.one()));
    return lhs == rhs;
}

/// Y^n - Z^n L_n(X/Z) over F.
inline TriForm cn_curve(const Field& F, unsigned n) {
    const u64 p = F.characteristic();
    if (p == 2) throw Error(Errc::CharTwo, "C_n needs odd characteristic");
    if (n == 0 || n % p == 0) throw Error(Errc::CharDividesN, std::to_string(p) + " divides n = " + std::to_string(n));
    const UniPoly L = lucas_over(F, n);
    TriForm f;
    f.d = n;
    f.add_term(F, {0, n, 0}, F.one());
    for (unsigned k = 0; k <= n; ++k) f.add_term(F, {k, 0, n - k}, F.neg(L[k]));
    return f;
}

inline TriForm cn_curve(unsigned n, u64 p) {
    require_odd_characteristic(p);
    return cn_curve(Field::make(p, 1), n);
}

struct MaximalityReport {
    u64 p = 0;
    unsigned r = 0, n = 0;
    u64 q = 0;
    u64 genus = 0;
    u64 point_count = 0;
    u64 hw_bound = 0;
    bool is_maximal = false;
    bool nonsingular_at_points = false;
    bool roots_rational = false;  // all n roots of L_n lie in GF(q)
};

inline void require_lucas_hypotheses(unsigned n, u64 p, unsigned r) {
    require_odd_characteristic(p);
    if (n % p == 0) throw Error(Errc::CharDividesN, std::to_string(p) + " divides n = " + std::to_string(n));
    const u64 pr = nt::checked_pow(p, r);
    if (pr == 0 || n == 0 || ((pr + 1) / 2) % n != 0)
        throw Error(Errc::PreconditionViolated,
                    "n = " + std::to_string(n) + " must divide (p^r+1)/2 = " + std::to_string((pr + 1) / 2));
}

inline MaximalityReport check_maximality(unsigned n, u64 p, unsigned r, const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    require_lucas_hypotheses(n, p, r);
    const Field F = Field::make(p, 2 * r, caps);
    F.require_enumerable("check_maximality");
    const TriForm f = cn_curve(F, n);
    MaximalityReport R;
    R.p = p;
    R.r = r;
    R.n = n;
    R.q = F.order();
    R.genus = u64{n - 1} * (n - 2) / 2;
    const u64 sqrt_q = nt::checked_pow(p, r);
    R.hw_bound = R.q + 1 + 2 * R.genus * sqrt_q;
    const auto pts = enumerate_points(F, f);
    R.point_count = pts.size();
    R.nonsingular_at_points = std::all_of(pts.begin(), pts.end(), [&](const ProjPoint& P) {
        return !is_zero_vec(poly::gradient(F, f, P));
    });
    R.roots_rational = gf::distinct_roots(F, lucas_over(F, n)).size() == n;
    require(R.point_count <= R.hw_bound, "Hasse-Weil upper bound");
    R.is_maximal = R.point_count == R.hw_bound;
    return R;
}

struct FlexCensus {
    std::string curve;
    Field field;
    unsigned degree = 0;
    std::vector<FlexRecord> flexes;  // points with contact order equal to the degree
    u64 total_flex_count = 0;
    std::optional<u64> expected;     // when a closed form applies
    bool canonical_flexes_present = true;
    bool verdict = true;
};

/// Rational points whose tangent meets the curve only there.
inline FlexCensus total_flex_census(const Field& F, const TriForm& f, const std::string& label = "curve") {
    F.require_enumerable("total_flex_census");
    FlexCensus c;
    c.curve = label;
    c.field = F;
    c.degree = f.d;
    for (const auto& P : enumerate_points(F, f)) {
        FlexRecord r = intersection_order(F, f, P);
        if (r.j == f.d) c.flexes.push_back(std::move(r));
    }
    c.total_flex_count = c.flexes.size();
    return c;
}

/// Census of C_n over GF(p^(2r)): for n > 3 the count is 3n exactly when n = (p^r+1)/2, n otherwise.
/// The points (x_i : 0 : 1) over the roots of L_n must be among the flexes, with tangent X = x_i Z.
inline FlexCensus lucas_flex_census(unsigned n, u64 p, unsigned r, const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    require_lucas_hypotheses(n, p, r);
    const Field F = Field::make(p, 2 * r, caps);
    const TriForm f = cn_curve(F, n);
    FlexCensus c = total_flex_census(F, f, "C_" + std::to_string(n));
    for (Fe x : gf::distinct_roots(F, lucas_over(F, n))) {
        const ProjPoint P = ProjPoint::make(F, x, F.zero(), F.one());
        bool found = false;
        for (const auto& rec : c.flexes) found = found || rec.point == P;
        const bool tangent_ok = tangent_line(F, f, P) == ProjLine::make(F, F.one(), F.zero(), F.neg(x));
        if (!found || !tangent_ok) c.canonical_flexes_present = false;
    }
    if (n > 3) {
        const u64 half = (nt::checked_pow(p, r) + 1) / 2;
        c.expected = n == half ? 3 * u64{n} : u64{n};
        c.verdict = c.total_flex_count == *c.expected && c.canonical_flexes_present;
    } else {
        c.verdict = c.canonical_flexes_present && (c.total_flex_count == n || c.total_flex_count == 3 * u64{n});
    }
    return c;
}

/// Total inflections of H_n over GF(p^k); none are expected.
inline FlexCensus hurwitz_flex_census(const HurwitzSpec& s, unsigned k, const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    const Field F = Field::make(s.p, k, caps);
    FlexCensus c = total_flex_census(F, hurwitz_form(F, s.n), "H_" + std::to_string(s.n));
    c.expected = 0;
    c.verdict = c.total_flex_count == 0;
    return c;
}

}  // namespace hlab
