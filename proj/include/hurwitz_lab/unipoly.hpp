#pragma once

// Dense univariate polynomials over a gf::Field, ascending coefficients.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace hlab::poly {

using gf::Fe;
using gf::Field;
using gf::u64;

struct UniPoly {
    std::vector<Fe> coeffs;  // coeffs[i] multiplies x^i; empty == zero polynomial

    UniPoly() = default;
    explicit UniPoly(std::vector<Fe> c) : coeffs(std::move(c)) { trim(); }

    static UniPoly constant(Fe c) { return UniPoly({c}); }
    static UniPoly monomial(Fe c, std::size_t deg) {
        std::vector<Fe> v(deg + 1);
        v[deg] = c;
        return UniPoly(std::move(v));
    }
    /// Polynomial from signed integer coefficients, ascending.
    static UniPoly from_ints(const Field& F, std::initializer_list<long long> c) {
        std::vector<Fe> v;
        for (long long x : c) v.push_back(F.from_int(x));
        return UniPoly(std::move(v));
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back().code == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Fe lead() const { return coeffs.empty() ? Fe{0} : coeffs.back(); }
    Fe operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Fe{0}; }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

inline UniPoly add(const Field& F, const UniPoly& a, const UniPoly& b) {
    std::vector<Fe> r(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
    return UniPoly(std::move(r));
}

inline UniPoly sub(const Field& F, const UniPoly& a, const UniPoly& b) {
    std::vector<Fe> r(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return UniPoly(std::move(r));
}

inline UniPoly scale(const Field& F, const UniPoly& a, Fe c) {
    std::vector<Fe> r(a.coeffs.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.coeffs[i], c);
    return UniPoly(std::move(r));
}

inline UniPoly mul(const Field& F, const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Fe> r(a.coeffs.size() + b.coeffs.size() - 1);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].code == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
    return UniPoly(std::move(r));
}

/// Truncated product modulo t^n.
inline UniPoly mul_trunc(const Field& F, const UniPoly& a, const UniPoly& b, std::size_t n) {
    if (a.is_zero() || b.is_zero() || n == 0) return {};
    std::vector<Fe> r(std::min(n, a.coeffs.size() + b.coeffs.size() - 1));
    for (std::size_t i = 0; i < a.coeffs.size() && i < r.size(); ++i) {
        if (a.coeffs[i].code == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size() && i + j < r.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
    return UniPoly(std::move(r));
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<UniPoly, UniPoly> divmod(const Field& F, const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::PreconditionViolated, "polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Fe> r = a.coeffs;
    const std::size_t db = b.coeffs.size() - 1;
    std::vector<Fe> q(r.size() - db);
    const Fe inv_lead = F.inv(b.lead());
    for (std::size_t i = r.size(); i-- > db;) {
        const Fe c = F.mul(r[i], inv_lead);
        q[i - db] = c;
        if (c.code == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.coeffs[j]));
    }
    r.resize(db);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

inline UniPoly mod(const Field& F, const UniPoly& a, const UniPoly& b) { return divmod(F, a, b).second; }

inline UniPoly monic(const Field& F, const UniPoly& a) {
    if (a.is_zero()) return a;
    return scale(F, a, F.inv(a.lead()));
}

/// Monic gcd (zero when both inputs are zero).
inline UniPoly gcd(const Field& F, UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline UniPoly mulmod(const Field& F, const UniPoly& a, const UniPoly& b, const UniPoly& m) {
    return mod(F, mul(F, a, b), m);
}

inline UniPoly powmod(const Field& F, UniPoly base, u64 e, const UniPoly& m) {
    UniPoly r = UniPoly::constant(F.one());
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, base, m);
        base = mulmod(F, base, base, m);
        e >>= 1;
    }
    return mod(F, r, m);
}

inline Fe eval(const Field& F, const UniPoly& a, Fe x) {
    Fe r = F.zero();
    for (std::size_t i = a.coeffs.size(); i-- > 0;) r = F.add(F.mul(r, x), a.coeffs[i]);
    return r;
}

inline UniPoly derivative(const Field& F, const UniPoly& a) {
    if (a.coeffs.size() <= 1) return {};
    std::vector<Fe> r(a.coeffs.size() - 1);
    for (std::size_t i = 1; i < a.coeffs.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i % F.characteristic())), a.coeffs[i]);
    return UniPoly(std::move(r));
}

/// D^(r) sum c_m x^m = sum C(m, r) c_m x^(m-r), binomials reduced mod p.
inline UniPoly hasse_derivative(const Field& F, const UniPoly& a, std::size_t r) {
    if (a.coeffs.size() <= r) return {};
    std::vector<Fe> out(a.coeffs.size() - r);
    const u64 p = F.characteristic();
    for (std::size_t m = r; m < a.coeffs.size(); ++m) {
        const u64 b = nt::binomial_mod_p(m, r, p);
        out[m - r] = F.mul(F.element(b), a.coeffs[m]);
    }
    return UniPoly(std::move(out));
}

/// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
inline long vanishing_order(const UniPoly& a) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i].code != 0) return static_cast<long>(i);
    return -1;
}

inline UniPoly x_poly(const Field& F) { return UniPoly({F.zero(), F.one()}); }

/// Composition a(b(x)).
inline UniPoly compose(const Field& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) r = add(F, mul(F, r, b), UniPoly::constant(a.coeffs[i]));
    return r;
}

inline std::string to_string(const Field& F, const UniPoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        if (a.coeffs[i].code == 0) continue;
        if (!s.empty()) s += " + ";
        s += F.to_string(a.coeffs[i]);
        if (i > 0) s += "*x^" + std::to_string(i);
    }
    return s;
}

}  // namespace hlab::poly
