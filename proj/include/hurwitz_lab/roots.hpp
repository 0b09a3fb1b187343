#pragma once

// Root finding, splitting degrees and subfield embeddings.

#include <numeric>
#include <random>

#include "gf.hpp"
#include "unipoly.hpp"

namespace hlab::gf {

using poly::UniPoly;

/// Fields up to this size are searched exhaustively by roots_of.
inline constexpr u64 kRootScanLimit = u64{1} << 16;

/// Roots with multiplicity, ascending canonical order, by evaluating at every element.
inline std::vector<Fe> roots_by_scan(const Field& F, const UniPoly& f) {
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "roots of the zero polynomial");
    F.require_enumerable("roots_by_scan");
    std::vector<Fe> out;
    UniPoly rest = f;
    for (u64 c = 0; c < F.order() && rest.degree() > 0; ++c) {
        const Fe x = F.element(c);
        UniPoly lin({F.neg(x), F.one()});
        while (rest.degree() > 0 && poly::eval(F, rest, x) == F.zero()) {
            rest = poly::divmod(F, rest, lin).first;
            out.push_back(x);
        }
    }
    return out;
}

namespace detail {

inline void equal_degree_split(const Field& F, const UniPoly& g, std::mt19937_64& rng, std::vector<Fe>& out) {
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        const UniPoly m = poly::monic(F, g);
        out.push_back(F.neg(m.coeffs[0]));
        return;
    }
    const u64 p = F.characteristic();
    std::uniform_int_distribution<u64> pick(0, F.order() - 1);
    for (;;) {
        const Fe a = F.element(pick(rng));
        UniPoly w;
        if (p == 2) {
            // absolute trace of a*x modulo g
            UniPoly y = poly::mod(F, UniPoly({F.zero(), a}), g);
            UniPoly acc = y;
            for (unsigned i = 1; i < F.degree(); ++i) {
                y = poly::mulmod(F, y, y, g);
                acc = poly::add(F, acc, y);
            }
            w = acc;
        } else {
            w = poly::powmod(F, UniPoly({a, F.one()}), (F.order() - 1) / 2, g);
            w = poly::sub(F, w, UniPoly::constant(F.one()));
        }
        const UniPoly d = poly::gcd(F, g, w);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            equal_degree_split(F, d, rng, out);
            equal_degree_split(F, poly::divmod(F, g, d).first, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Distinct roots, ascending, via gcd with x^q - x and equal-degree splitting.
inline std::vector<Fe> distinct_roots_by_splitting(const Field& F, const UniPoly& f) {
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "roots of the zero polynomial");
    if (f.degree() <= 0) return {};
    const UniPoly x = poly::x_poly(F);
    const UniPoly xq = poly::powmod(F, x, F.order(), f);
    const UniPoly g = poly::gcd(F, f, poly::sub(F, xq, x));
    std::vector<Fe> out;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    detail::equal_degree_split(F, g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Roots with multiplicity via distinct_roots_by_splitting and repeated division.
inline std::vector<Fe> roots_by_splitting(const Field& F, const UniPoly& f) {
    std::vector<Fe> out;
    for (Fe r : distinct_roots_by_splitting(F, f)) {
        UniPoly rest = f;
        const UniPoly lin({F.neg(r), F.one()});
        for (;;) {
            auto [q, rem] = poly::divmod(F, rest, lin);
            if (!rem.is_zero()) break;
            out.push_back(r);
            rest = std::move(q);
        }
    }
    return out;
}

/// All roots in F with multiplicity, in canonical order.
inline std::vector<Fe> roots_of(const Field& F, const UniPoly& f) {
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "roots of the zero polynomial");
    if (F.order() <= kRootScanLimit && F.enumerable()) return roots_by_scan(F, f);
    return roots_by_splitting(F, f);
}

inline std::vector<Fe> distinct_roots(const Field& F, const UniPoly& f) {
    auto r = roots_of(F, f);
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

/// Least s such that f splits into linear factors over the degree-s extension of F.
inline unsigned splitting_degree(const Field& F, const UniPoly& f) {
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "splitting degree of zero");
    UniPoly rest = poly::monic(F, f);
    const UniPoly x = poly::x_poly(F);
    unsigned result = 1;
    UniPoly frob = x;  // x^(q^i) mod rest
    for (unsigned i = 1; rest.degree() > 0; ++i) {
        frob = poly::powmod(F, frob, F.order(), rest);
        UniPoly h = poly::gcd(F, rest, poly::sub(F, frob, x));
        if (h.degree() > 0) {
            result = std::lcm(result, i);
            // strip every irreducible factor of degree dividing i, repeated ones included
            while (h.degree() > 0) {
                rest = poly::divmod(F, rest, h).first;
                h = poly::gcd(F, rest, h);
            }
            if (rest.degree() > 0) frob = poly::mod(F, frob, rest);
        }
    }
    return result;
}

/// An inclusion GF(p^a) -> GF(p^b), a | b, fixed by the image of the power-basis generator.
struct Embedding {
    Field src;
    Field dst;
    Fe image_of_generator;

    Fe apply(Fe e) const {
        const auto d = src.digits(e);
        Fe r = dst.zero();
        for (std::size_t i = d.size(); i-- > 0;) r = dst.add(dst.mul(r, image_of_generator), dst.element(d[i]));
        return r;
    }
};

/// The embedding sending the generator to the least root of src's modulus in dst.
inline Embedding embed(const Field& src, const Field& dst) {
    if (src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0)
        throw Error(Errc::PreconditionViolated, src.name() + " does not embed in " + dst.name());
    if (src == dst) return Embedding{src, dst, src.gen()};
    std::vector<Fe> mod;
    for (u64 c : src.modulus()) mod.push_back(dst.element(c));
    const auto roots = distinct_roots(dst, UniPoly(mod));
    if (roots.empty()) throw Error(Errc::NoRoot, "modulus of " + src.name() + " has no root in " + dst.name());
    return Embedding{src, dst, roots.front()};
}

}  // namespace hlab::gf
