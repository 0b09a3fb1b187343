#pragma once

// Homogeneous forms in X, Y, Z stored sparsely by exponent triple.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gf.hpp"
#include "projective.hpp"
#include "unipoly.hpp"

namespace hlab::poly {

using Exponents = std::array<unsigned, 3>;
using Matrix3 = std::array<std::array<Fe, 3>, 3>;

struct TriForm {
    unsigned d = 0;
    std::map<Exponents, Fe> terms;  // no zero coefficients, every key sums to d

    /// Adds c * X^e0 Y^e1 Z^e2 to the form.
    void add_term(const Field& F, Exponents e, Fe c) {
        if (e[0] + e[1] + e[2] != d) throw Error(Errc::PreconditionViolated, "term degree does not match form degree");
        if (c.code == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
            return;
        }
        it->second = F.add(it->second, c);
        if (it->second.code == 0) terms.erase(it);
    }

    static TriForm from_ints(const Field& F, unsigned d, std::initializer_list<std::pair<Exponents, long long>> t) {
        TriForm f;
        f.d = d;
        for (auto& [e, c] : t) f.add_term(F, e, F.from_int(c));
        return f;
    }
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const TriForm&, const TriForm&) = default;
};

inline Fe eval(const Field& F, const TriForm& f, const std::array<Fe, 3>& v) {
    Fe s = F.zero();
    for (const auto& [e, c] : f.terms) {
        Fe t = c;
        for (int i = 0; i < 3; ++i)
            if (e[i]) t = F.mul(t, F.pow(v[i], e[i]));
        s = F.add(s, t);
    }
    return s;
}

inline Fe eval(const Field& F, const TriForm& f, const ProjPoint& P) { return eval(F, f, P.c); }

/// Formal partial derivative with respect to variable `var` (0 = X, 1 = Y, 2 = Z).
inline TriForm partial(const Field& F, const TriForm& f, int var) {
    TriForm out;
    out.d = f.d == 0 ? 0 : f.d - 1;
    for (const auto& [e, c] : f.terms) {
        if (e[var] == 0) continue;
        Exponents ne = e;
        --ne[var];
        out.add_term(F, ne, F.mul(F.from_int(static_cast<long long>(e[var] % F.characteristic())), c));
    }
    return out;
}

inline std::array<Fe, 3> gradient(const Field& F, const TriForm& f, const ProjPoint& P) {
    return {eval(F, partial(F, f, 0), P), eval(F, partial(F, f, 1), P), eval(F, partial(F, f, 2), P)};
}

/// t -> f(A + tB) for representatives of A and B; throws DegeneratePair when A == B.
inline UniPoly restrict_to_line(const Field& F, const TriForm& f, const ProjPoint& A, const ProjPoint& B) {
    if (A == B) throw Error(Errc::DegeneratePair, "restriction to a line needs two distinct points");
    std::array<std::vector<UniPoly>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        const UniPoly lin({A.c[i], B.c[i]});
        pw[i].push_back(UniPoly::constant(F.one()));
        for (unsigned e = 1; e <= f.d; ++e) pw[i].push_back(mul(F, pw[i].back(), lin));
    }
    UniPoly r;
    for (const auto& [e, c] : f.terms) {
        UniPoly t = scale(F, pw[0][e[0]], c);
        t = mul(F, t, pw[1][e[1]]);
        t = mul(F, t, pw[2][e[2]]);
        r = add(F, r, t);
    }
    return r;
}

namespace detail {

using Sparse3 = std::map<Exponents, Fe>;

inline Sparse3 mul3(const Field& F, const Sparse3& a, const Sparse3& b) {
    Sparse3 r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            const Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            Fe& slot = r[e];
            slot = F.add(slot, F.mul(ca, cb));
        }
    std::erase_if(r, [](const auto& kv) { return kv.second.code == 0; });
    return r;
}

}  // namespace detail

/// The form v -> f(M v), i.e. f composed with the linear map of M acting on columns.
inline TriForm substitute_linear(const Field& F, const TriForm& f, const Matrix3& M) {
    std::array<std::vector<detail::Sparse3>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        detail::Sparse3 lin;
        for (int j = 0; j < 3; ++j) {
            if (M[i][j].code == 0) continue;
            Exponents e{0, 0, 0};
            e[j] = 1;
            lin[e] = M[i][j];
        }
        pw[i].push_back({{Exponents{0, 0, 0}, F.one()}});
        for (unsigned e = 1; e <= f.d; ++e) pw[i].push_back(detail::mul3(F, pw[i].back(), lin));
    }
    TriForm out;
    out.d = f.d;
    for (const auto& [e, c] : f.terms) {
        auto t = detail::mul3(F, detail::mul3(F, pw[0][e[0]], pw[1][e[1]]), pw[2][e[2]]);
        for (const auto& [te, tc] : t) out.add_term(F, te, F.mul(c, tc));
    }
    return out;
}

inline std::string to_string(const Field& F, const TriForm& f) {
    if (f.is_zero()) return "0";
    std::string s;
    static const char* names[3] = {"X", "Y", "Z"};
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += F.to_string(it->second);
        for (int i = 0; i < 3; ++i) {
            if (it->first[i] == 0) continue;
            s += std::string("*") + names[i];
            if (it->first[i] > 1) s += "^" + std::to_string(it->first[i]);
        }
    }
    return s;
}

}  // namespace hlab::poly
