#pragma once

// Plane curve geometry over an explicit field: rational points, tangents,
// tangent contact orders and flex scans.

#include <algorithm>
#include <vector>

#include "projective.hpp"
#include "roots.hpp"
#include "triform.hpp"

namespace hlab {

using poly::TriForm;
using poly::UniPoly;

struct FlexRecord {
    ProjPoint point;
    unsigned j = 0;
    Field field;

    friend bool operator==(const FlexRecord& a, const FlexRecord& b) { return a.point == b.point && a.j == b.j; }
};

/// Fields above this size use gcd-based root finding for each vertical line.
inline constexpr gf::u64 kEnumerationScanLimit = 1024;

/// All F-rational zeros of the form, normalized and sorted.
inline std::vector<ProjPoint> enumerate_points(const Field& F, const TriForm& f) {
    F.require_enumerable("enumerate_points");
    std::vector<ProjPoint> out;
    const gf::u64 q = F.order();
    const bool scan = q <= kEnumerationScanLimit;
    auto roots = [&](const UniPoly& g) {
        return scan ? gf::distinct_roots(F, g) : gf::distinct_roots_by_splitting(F, g);
    };
    auto column = [&](Fe x, bool at_infinity) {
        // coefficients in y of f(x, y, 1) or f(x, 1, 0)
        std::vector<Fe> c(f.d + 1, F.zero());
        for (const auto& [e, coef] : f.terms) {
            if (at_infinity && e[2] != 0) continue;
            const Fe v = F.mul(coef, F.pow(x, e[0]));
            const std::size_t slot = at_infinity ? 0 : e[1];
            c[slot] = F.add(c[slot], v);
        }
        return UniPoly(std::move(c));
    };

    for (gf::u64 i = 0; i < q; ++i) {
        const Fe x = F.element(i);
        const UniPoly g = column(x, false);
        if (g.is_zero()) {
            for (gf::u64 k = 0; k < q; ++k) out.push_back(ProjPoint{{x, F.element(k), F.one()}});
        } else {
            for (Fe y : roots(g)) out.push_back(ProjPoint{{x, y, F.one()}});
        }
        if (column(x, true).is_zero()) out.push_back(ProjPoint{{x, F.one(), F.zero()}});
    }
    if (poly::eval(F, f, ProjPoint::vertex(F, 0)).code == 0) out.push_back(ProjPoint::vertex(F, 0));
    std::sort(out.begin(), out.end());
    return out;
}

/// The line F_X(P) X + F_Y(P) Y + F_Z(P) Z = 0; throws SingularPoint when the gradient vanishes.
inline ProjLine tangent_line(const Field& F, const TriForm& f, const ProjPoint& P) {
    if (poly::eval(F, f, P).code != 0) throw Error(Errc::PreconditionViolated, "point " + to_string(F, P) + " is not on the curve");
    const auto g = poly::gradient(F, f, P);
    if (is_zero_vec(g)) throw Error(Errc::SingularPoint, "gradient vanishes at " + to_string(F, P));
    const ProjLine L = ProjLine::make(F, g[0], g[1], g[2]);
    require(L.contains(F, P), "tangent line passes through its point");
    return L;
}

/// Contact order with the tangent line, computed with two auxiliary points
/// on the tangent that must agree.
inline FlexRecord intersection_order(const Field& F, const TriForm& f, const ProjPoint& P) {
    const ProjLine T = tangent_line(F, f, P);
    std::vector<ProjPoint> aux;
    for (const auto& Q : line_points(F, T, 3))
        if (Q != P) aux.push_back(Q);
    long j = -1;
    for (std::size_t i = 0; i < aux.size() && i < 2; ++i) {
        const long v = poly::vanishing_order(poly::restrict_to_line(F, f, P, aux[i]));
        if (v < 0) throw Error(Errc::InvariantViolated, "tangent line at " + to_string(F, P) + " is a component of the curve");
        if (i == 0) j = v;
        require(v == j, "contact order is independent of the auxiliary point");
    }
    require(j >= 2 && j <= static_cast<long>(f.d), "2 <= contact order <= degree");
    return FlexRecord{P, static_cast<unsigned>(j), F};
}

/// Every rational point with contact order above eps; singular points abort the scan.
inline std::vector<FlexRecord> flex_scan(const Field& F, const TriForm& f, unsigned eps) {
    std::vector<FlexRecord> out;
    for (const auto& P : enumerate_points(F, f)) {
        FlexRecord r = intersection_order(F, f, P);
        if (r.j > eps) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hlab
