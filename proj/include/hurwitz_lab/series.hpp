#pragma once

// Truncated power-series branches of an affine plane curve f(x, y) = 0.

#include <map>
#include <utility>
#include <vector>

#include "triform.hpp"
#include "unipoly.hpp"

namespace hlab::poly {

/// Affine polynomial in two variables, keyed by (deg_u, deg_v).
struct BiPoly {
    std::map<std::pair<unsigned, unsigned>, Fe> terms;

    void add_term(const Field& F, unsigned i, unsigned j, Fe c) {
        if (c.code == 0) return;
        Fe& slot = terms[{i, j}];
        slot = F.add(slot, c);
        if (slot.code == 0) terms.erase({i, j});
    }
};

/// Sets coordinate `chart` to 1; the remaining two coordinates become (u, v) in order.
inline BiPoly dehomogenize(const Field& F, const TriForm& f, int chart) {
    BiPoly out;
    int a = chart == 0 ? 1 : 0;
    int b = chart == 2 ? 1 : 2;
    for (const auto& [e, c] : f.terms) out.add_term(F, e[a], e[b], c);
    return out;
}

inline Fe eval(const Field& F, const BiPoly& f, Fe u, Fe v) {
    Fe s = F.zero();
    for (const auto& [e, c] : f.terms) s = F.add(s, F.mul(c, F.mul(F.pow(u, e.first), F.pow(v, e.second))));
    return s;
}

/// Formal partial in u (var = 0) or v (var = 1).
inline BiPoly partial(const Field& F, const BiPoly& f, int var) {
    BiPoly out;
    const gf::u64 p = F.characteristic();
    for (const auto& [e, c] : f.terms) {
        const unsigned k = var == 0 ? e.first : e.second;
        if (k == 0) continue;
        const Fe m = F.mul(F.from_int(static_cast<long long>(k % p)), c);
        if (var == 0)
            out.add_term(F, e.first - 1, e.second, m);
        else
            out.add_term(F, e.first, e.second - 1, m);
    }
    return out;
}

/// f(u(t), v(t)) modulo t^n.
inline UniPoly substitute_series(const Field& F, const BiPoly& f, const UniPoly& u, const UniPoly& v, std::size_t n) {
    unsigned max_u = 0, max_v = 0;
    for (const auto& [e, c] : f.terms) {
        max_u = std::max(max_u, e.first);
        max_v = std::max(max_v, e.second);
    }
    std::vector<UniPoly> pu{UniPoly::constant(F.one())}, pv{UniPoly::constant(F.one())};
    for (unsigned i = 1; i <= max_u; ++i) pu.push_back(mul_trunc(F, pu.back(), u, n));
    for (unsigned i = 1; i <= max_v; ++i) pv.push_back(mul_trunc(F, pv.back(), v, n));
    UniPoly r;
    for (const auto& [e, c] : f.terms) r = add(F, r, scale(F, mul_trunc(F, pu[e.first], pv[e.second], n), c));
    return r;
}

enum class Param { U, V };

/// A branch through (u0, v0): the parameter variable is (u0 + t) or (v0 + t),
/// the other coordinate is sum coeffs[i] t^i, valid modulo t^(N+1).
struct Series {
    Fe u0, v0;
    Param param = Param::U;
    unsigned N = 0;
    std::vector<Fe> coeffs;

    UniPoly param_poly() const { return UniPoly({param == Param::U ? u0 : v0, Fe{1}}); }
    UniPoly dependent() const { return UniPoly(coeffs); }
    UniPoly u_series() const { return param == Param::U ? param_poly() : dependent(); }
    UniPoly v_series() const { return param == Param::U ? dependent() : param_poly(); }
};

/// Successive linear solves for the dependent coordinate; throws SingularBranch
/// when the partial in the dependent variable vanishes at the base point.
inline Series solve_series(const Field& F, const BiPoly& f, Fe u0, Fe v0, Param param, unsigned N) {
    if (eval(F, f, u0, v0).code != 0) throw Error(Errc::PreconditionViolated, "base point is not on the curve");
    const int dep_var = param == Param::U ? 1 : 0;
    const Fe fd = eval(F, partial(F, f, dep_var), u0, v0);
    if (fd.code == 0) throw Error(Errc::SingularBranch, "partial derivative in the dependent variable vanishes");
    const Fe neg_inv = F.neg(F.inv(fd));

    Series s;
    s.u0 = u0;
    s.v0 = v0;
    s.param = param;
    s.N = N;
    s.coeffs.assign(N + 1, F.zero());
    s.coeffs[0] = param == Param::U ? v0 : u0;
    const UniPoly par({param == Param::U ? u0 : v0, F.one()});
    for (unsigned i = 1; i <= N; ++i) {
        const UniPoly dep(std::vector<Fe>(s.coeffs.begin(), s.coeffs.begin() + i));
        const UniPoly r = param == Param::U ? substitute_series(F, f, par, dep, i + 1)
                                            : substitute_series(F, f, dep, par, i + 1);
        s.coeffs[i] = F.mul(r[i], neg_inv);
    }
    return s;
}

/// Valuation in t of f evaluated on the series, or -1 when it vanishes modulo t^(limit).
inline long remainder_valuation(const Field& F, const BiPoly& f, const Series& s, std::size_t limit) {
    const UniPoly r = substitute_series(F, f, s.u_series(), s.v_series(), limit);
    return vanishing_order(r);
}

}  // namespace hlab::poly
