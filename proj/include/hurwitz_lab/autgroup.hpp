#pragma once

// Automorphisms of the Hurwitz curve in the generic case: the group
// C_m x| C_3 generated by sigma = diag(xi^(1-n), xi, 1) and the cyclic
// coordinate shift mu, its subgroups up to conjugacy, fixed points,
// ramification filtrations and quotient genera.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "curve.hpp"
#include "hurwitz.hpp"
#include "series.hpp"

namespace hlab {

using poly::Matrix3;

// ---------------------------------------------------------------------------
// Projective maps

inline Fe det3(const Field& F, const Matrix3& a) {
    auto minor = [&](int r0, int r1, int c0, int c1) {
        return F.sub(F.mul(a[r0][c0], a[r1][c1]), F.mul(a[r0][c1], a[r1][c0]));
    };
    Fe d = F.mul(a[0][0], minor(1, 2, 1, 2));
    d = F.sub(d, F.mul(a[0][1], minor(1, 2, 0, 2)));
    return F.add(d, F.mul(a[0][2], minor(1, 2, 0, 1)));
}

/// An element of PGL(3), scaled so the first nonzero entry in row-major order is 1.
struct ProjMap {
    Matrix3 a{};

    static ProjMap make(const Field& F, Matrix3 m) {
        if (det3(F, m).code == 0) throw Error(Errc::PreconditionViolated, "singular matrix");
        Fe lead = F.zero();
        for (const auto& row : m)
            for (Fe x : row)
                if (lead.code == 0) lead = x;
        const Fe s = F.inv(lead);
        for (auto& row : m)
            for (Fe& x : row) x = F.mul(x, s);
        return ProjMap{m};
    }
    static ProjMap identity(const Field& F) {
        Matrix3 m{};
        for (int i = 0; i < 3; ++i) m[i][i] = F.one();
        return ProjMap{m};
    }
    friend auto operator<=>(const ProjMap&, const ProjMap&) = default;
};

inline ProjMap compose(const Field& F, const ProjMap& A, const ProjMap& B) {
    Matrix3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fe s = F.zero();
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A.a[i][k], B.a[k][j]));
            c[i][j] = s;
        }
    return ProjMap::make(F, c);
}

inline std::array<Fe, 3> apply_vec(const Field& F, const Matrix3& a, const std::array<Fe, 3>& v) {
    std::array<Fe, 3> w{};
    for (int i = 0; i < 3; ++i) {
        Fe s = F.zero();
        for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[i][k], v[k]));
        w[i] = s;
    }
    return w;
}

inline ProjPoint apply(const Field& F, const ProjMap& M, const ProjPoint& P) {
    const auto w = apply_vec(F, M.a, P.c);
    return ProjPoint::make(F, w[0], w[1], w[2]);
}

inline ProjMap map_pow(const Field& F, const ProjMap& M, u64 e) {
    ProjMap r = ProjMap::identity(F), b = M;
    for (; e; e >>= 1) {
        if (e & 1) r = compose(F, r, b);
        b = compose(F, b, b);
    }
    return r;
}

/// Order in PGL(3); gives up (returns 0) past `cap`.
inline u64 map_order(const Field& F, const ProjMap& M, u64 cap) {
    const ProjMap I = ProjMap::identity(F);
    ProjMap cur = M;
    for (u64 k = 1; k <= cap; ++k) {
        if (cur == I) return k;
        cur = compose(F, cur, M);
    }
    return 0;
}

/// gamma with f(Mv) = gamma f(v), or nullopt.
inline std::optional<Fe> is_automorphism(const Field& F, const TriForm& f, const ProjMap& M) {
    const TriForm g = poly::substitute_linear(F, f, M.a);
    if (f.is_zero() || g.terms.size() != f.terms.size()) return std::nullopt;
    const auto& [e0, c0] = *f.terms.begin();
    auto it = g.terms.find(e0);
    if (it == g.terms.end()) return std::nullopt;
    const Fe gamma = F.div(it->second, c0);
    for (const auto& [e, c] : f.terms) {
        auto jt = g.terms.find(e);
        if (jt == g.terms.end() || jt->second != F.mul(gamma, c)) return std::nullopt;
    }
    return gamma;
}

inline std::string to_string(const Field& F, const ProjMap& M) {
    std::string s = "[";
    for (int i = 0; i < 3; ++i) {
        if (i) s += "; ";
        for (int j = 0; j < 3; ++j) {
            if (j) s += " ";
            s += F.to_string(M.a[i][j]);
        }
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// The abstract group: (i, s) stands for sigma^i mu^s

struct AbstractElt {
    u64 i = 0;
    unsigned s = 0;
    friend auto operator<=>(const AbstractElt&, const AbstractElt&) = default;
};

using ElementSet = std::vector<AbstractElt>;  // sorted

class AbstractGroup {
   public:
    explicit AbstractGroup(unsigned n) : n_(n), m_(u64{n} * n - n + 1) {
        upow_[0] = 1 % m_;
        upow_[1] = (n - 1) % m_;
        upow_[2] = nt::mulmod(upow_[1], upow_[1], m_);
        require(nt::mulmod(upow_[2], upow_[1], m_) == 1 % m_, "(n-1)^3 = 1 mod n^2-n+1");
    }

    unsigned n() const { return n_; }
    u64 m() const { return m_; }
    u64 size() const { return 3 * m_; }
    /// (n-1)^s mod m
    u64 twist(unsigned s) const { return upow_[s % 3]; }

    AbstractElt mul(AbstractElt a, AbstractElt b) const {
        return {(a.i + nt::mulmod(b.i, upow_[a.s], m_)) % m_, (a.s + b.s) % 3};
    }
    AbstractElt inv(AbstractElt a) const {
        const unsigned s = (3 - a.s) % 3;
        return {(m_ - nt::mulmod(a.i, upow_[s], m_)) % m_, s};
    }
    AbstractElt conj(AbstractElt g, AbstractElt x) const { return mul(mul(g, x), inv(g)); }
    AbstractElt identity() const { return {0, 0}; }

    u64 index(AbstractElt a) const { return a.s * m_ + a.i; }
    AbstractElt element(u64 idx) const { return {idx % m_, static_cast<unsigned>(idx / m_)}; }

    /// Subgroup generated by `gens`, sorted.
    ElementSet closure(const std::vector<AbstractElt>& gens) const {
        std::set<AbstractElt> seen{identity()};
        std::vector<AbstractElt> stack{identity()};
        while (!stack.empty()) {
            const AbstractElt x = stack.back();
            stack.pop_back();
            for (const auto& g : gens) {
                const AbstractElt y = mul(x, g);
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
        return {seen.begin(), seen.end()};
    }
    ElementSet conjugate(const ElementSet& H, AbstractElt g) const {
        ElementSet out;
        out.reserve(H.size());
        for (const auto& h : H) out.push_back(conj(g, h));
        std::sort(out.begin(), out.end());
        return out;
    }
    /// Number of distinct conjugates of H.
    u64 conjugate_count(const ElementSet& H) const {
        std::set<ElementSet> seen;
        for (u64 k = 0; k < size(); ++k) seen.insert(conjugate(H, element(k)));
        return seen.size();
    }

   private:
    unsigned n_;
    u64 m_;
    std::array<u64, 3> upow_{};
};

// ---------------------------------------------------------------------------
// Subgroups up to conjugacy

enum class SubgroupKind { S, T0, T, TS };

inline std::string to_string(SubgroupKind k) {
    switch (k) {
        case SubgroupKind::S: return "S_d";
        case SubgroupKind::T0: return "T_0";
        case SubgroupKind::T: return "T_i";
        case SubgroupKind::TS: return "T_i*S_d";
    }
    return "?";
}

/// T-type classes carry the index i of a representative T_i = <mu sigma^i>,
/// with i in {m/3, 2m/3, m} when there are three classes and i = m otherwise.
struct SubgroupClass {
    SubgroupKind kind = SubgroupKind::S;
    u64 d = 1;   // order of the cyclic part
    u64 i = 0;   // T index (0 for S and T_0)
    u64 order = 1;
    u64 class_size = 1;
    ElementSet representative;
    std::string label;
};

/// Largest size of the abstract group for which class sizes are recounted by conjugation.
inline constexpr u64 kClassRecountLimit = 3 * 1024;

inline bool n_is_2_mod_3(unsigned n) { return n % 3 == 2; }

inline std::vector<SubgroupClass> subgroup_classes(unsigned n) {
    if (n < 4) throw Error(Errc::ExcludedCase, "n = 3 has a larger automorphism group");
    const AbstractGroup G(n);
    const u64 m = G.m();
    const bool two = n_is_2_mod_3(n);
    std::vector<SubgroupClass> out;

    for (u64 d : nt::divisors(m)) {
        SubgroupClass c;
        c.d = d;
        c.order = d;
        c.representative = G.closure({{m / d, 0}});
        c.kind = two && d == 3 ? SubgroupKind::T0 : SubgroupKind::S;
        c.label = c.kind == SubgroupKind::T0 ? "T_0" : "S_" + std::to_string(d);
        out.push_back(std::move(c));
    }
    for (u64 d : nt::divisors(m)) {
        // mu sigma^i = sigma^(i(n-1)) mu
        auto make = [&](u64 i, u64 size) {
            SubgroupClass c;
            c.kind = d == 1 ? SubgroupKind::T : SubgroupKind::TS;
            c.d = d;
            c.i = i;
            c.order = 3 * d;
            c.class_size = size;
            c.representative = G.closure({{m / d % m, 0}, {nt::mulmod(i % m, G.twist(1), m), 1}});
            c.label = "T_" + std::to_string(i) + (d == 1 ? "" : "*S_" + std::to_string(d));
            out.push_back(std::move(c));
        };
        if (two && d % 3 != 0) {
            for (u64 j = 1; j <= 3; ++j) make(j * m / 3, m / (3 * d));
        } else {
            make(m, m / d);
        }
    }
    if (G.size() <= kClassRecountLimit) {
        for (const auto& c : out) {
            require(c.representative.size() == c.order, "|representative| = order for " + c.label);
            require(G.conjugate_count(c.representative) == c.class_size, "class size of " + c.label);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form quotient genera

struct Rational {
    long long num = 0, den = 1;
};

/// g(H_n / H) for the class, as an unreduced fraction.
inline Rational closed_form_genus(unsigned n, const SubgroupClass& c) {
    const long long m = static_cast<long long>(u64{n} * n - n + 1);
    const long long d = static_cast<long long>(c.d);
    const bool two = n_is_2_mod_3(n);
    switch (c.kind) {
        case SubgroupKind::S: return {m - d, 2 * d};
        case SubgroupKind::T0: return {static_cast<long long>(n) * n - n - 2, 6};
        case SubgroupKind::T:
        case SubgroupKind::TS:
            if (!two || d % 3 == 0) return {m - d, 6 * d};
            if (static_cast<long long>(c.i) == m) return {m + 3 * d, 6 * d};
            return {m - 3 * d, 6 * d};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Matrix group

/// Degree k of the least GF(p^k) holding a primitive (n^2-n+1)-th root of unity.
inline unsigned automorphism_field_degree(const HurwitzSpec& s) {
    return static_cast<unsigned>(nt::multiplicative_order_mod(s.p % s.m(), s.m()));
}

/// Degree of the least field that also holds the cube roots of unity.
inline unsigned scan_field_degree(const HurwitzSpec& s) {
    unsigned k = automorphism_field_degree(s);
    if (s.p != 3) k = std::lcm(k, static_cast<unsigned>(nt::multiplicative_order_mod(s.p % 3, 3)));
    return k;
}

struct Generators {
    Fe xi;
    ProjMap sigma, mu;
};

inline Generators generators(const HurwitzSpec& s, const Field& F) {
    const u64 m = s.m();
    if ((F.order() - 1) % m != 0)
        throw Error(Errc::FieldLacksRoot, F.name() + " has no primitive " + std::to_string(m) + "-th root of unity");
    Generators g;
    g.xi = gf::nth_roots_of_unity(F, m).primitive;
    const Fe o = F.one(), z = F.zero();
    g.sigma = ProjMap::make(F, {{{F.pow_signed(g.xi, 1 - static_cast<long long>(s.n)), z, z}, {z, g.xi, z}, {z, z, o}}});
    g.mu = ProjMap::make(F, {{{z, o, z}, {z, z, o}, {o, z, z}}});

    require(map_order(F, g.sigma, m) == m, "sigma has order n^2-n+1");
    require(map_order(F, g.mu, 3) == 3, "mu has order 3");
    for (u64 k = 1; k < m; ++k) {
        const ProjMap sk = map_pow(F, g.sigma, k);
        require(sk != g.mu && sk != compose(F, g.mu, g.mu), "<sigma> and <mu> meet trivially");
    }
    const ProjMap mu_inv = compose(F, g.mu, g.mu);
    require(compose(F, compose(F, g.mu, g.sigma), mu_inv) == map_pow(F, g.sigma, s.n - 1),
            "mu sigma mu^-1 = sigma^(n-1)");
    return g;
}

struct AutGroup {
    HurwitzSpec spec;
    Field field;
    Generators gens;
    AbstractGroup abs{4};
    std::vector<ProjMap> elements;  // elements[abs.index(a)]
    std::vector<Fe> gammas;         // f o g = gamma f
    u64 closure_size = 0;
    bool products_checked_exhaustively = false;

    const ProjMap& at(AbstractElt a) const { return elements[abs.index(a)]; }
    std::optional<AbstractElt> find(const ProjMap& M) const {
        auto it = lookup.find(M);
        if (it == lookup.end()) return std::nullopt;
        return abs.element(it->second);
    }
    std::map<ProjMap, u64> lookup;
};

/// Groups this small have every product compared; larger ones only right
/// multiplication by the generators, which suffices for a bijection.
inline constexpr u64 kAllPairsLimit = 300;

inline void require_generic_case(const HurwitzSpec& s) {
    if (s.n == 3) throw Error(Errc::ExcludedCase, "n = 3: the automorphism group is not C_m x| C_3");
    if (nt::is_power_of(s.n, s.p))
        throw Error(Errc::ExcludedCase, "n = " + std::to_string(s.n) + " is a power of p = " + std::to_string(s.p) +
                                            ": the automorphism group is not C_m x| C_3");
}

inline AutGroup generate_group(const HurwitzSpec& s, const Field& F) {
    require_generic_case(s);
    AutGroup G;
    G.spec = s;
    G.field = F;
    G.gens = generators(s, F);
    G.abs = AbstractGroup(s.n);
    const u64 m = s.m(), N = G.abs.size();

    std::set<ProjMap> seen{ProjMap::identity(F)};
    std::queue<ProjMap> todo;
    todo.push(ProjMap::identity(F));
    while (!todo.empty()) {
        const ProjMap x = todo.front();
        todo.pop();
        for (const ProjMap* g : {&G.gens.sigma, &G.gens.mu}) {
            ProjMap y = compose(F, x, *g);
            if (seen.insert(y).second) todo.push(std::move(y));
            if (seen.size() > N) throw Error(Errc::InvariantViolated, "closure of {sigma, mu} exceeds 3(n^2-n+1)");
        }
    }
    G.closure_size = seen.size();
    require(G.closure_size == N, "closure of {sigma, mu} has 3(n^2-n+1) elements");

    G.elements.resize(N);
    const ProjMap mu2 = compose(F, G.gens.mu, G.gens.mu);
    ProjMap sp = ProjMap::identity(F);
    for (u64 i = 0; i < m; ++i) {
        G.elements[G.abs.index({i, 0})] = sp;
        G.elements[G.abs.index({i, 1})] = compose(F, sp, G.gens.mu);
        G.elements[G.abs.index({i, 2})] = compose(F, sp, mu2);
        sp = compose(F, sp, G.gens.sigma);
    }
    for (u64 k = 0; k < N; ++k) {
        require(seen.count(G.elements[k]) == 1, "sigma^i mu^s lies in the closure");
        G.lookup.emplace(G.elements[k], k);
    }
    require(G.lookup.size() == N, "sigma^i mu^s are pairwise distinct");

    G.products_checked_exhaustively = N <= kAllPairsLimit;
    const std::vector<AbstractElt> right = G.products_checked_exhaustively ? std::vector<AbstractElt>{} :
                                                                             std::vector<AbstractElt>{{1, 0}, {0, 1}};
    for (u64 a = 0; a < N; ++a) {
        const AbstractElt ea = G.abs.element(a);
        auto check = [&](AbstractElt eb) {
            require(compose(F, G.elements[a], G.at(eb)) == G.at(G.abs.mul(ea, eb)), "matrix product follows the abstract law");
        };
        if (G.products_checked_exhaustively)
            for (u64 b = 0; b < N; ++b) check(G.abs.element(b));
        else
            for (const auto& eb : right) check(eb);
    }

    const TriForm f = hurwitz_form(F, s.n);
    G.gammas.reserve(N);
    for (const auto& M : G.elements) {
        auto gamma = is_automorphism(F, f, M);
        require(gamma.has_value(), "every group element preserves the curve form up to a scalar");
        G.gammas.push_back(*gamma);
    }
    return G;
}

// ---------------------------------------------------------------------------
// Fixed points

inline std::vector<ProjPoint> fixed_points(const Field& F, const ProjMap& M, const std::vector<ProjPoint>& pts) {
    std::vector<ProjPoint> out;
    for (const auto& P : pts)
        if (apply(F, M, P) == P) out.push_back(P);
    return out;
}

/// Every rational curve point fixed by M.
inline std::vector<ProjPoint> fixed_points(const ProjMap& M, const HurwitzSpec& s, const Field& F) {
    return fixed_points(F, M, enumerate_points(F, hurwitz_form(F, s.n)));
}

enum class NamedElement { Sigma, Mu, Tau, TauMu, Tau2Mu };

inline std::string to_string(NamedElement e) {
    switch (e) {
        case NamedElement::Sigma: return "sigma";
        case NamedElement::Mu: return "mu";
        case NamedElement::Tau: return "tau";
        case NamedElement::TauMu: return "tau*mu";
        case NamedElement::Tau2Mu: return "tau^2*mu";
    }
    return "?";
}

inline AbstractElt named_abstract(const HurwitzSpec& s, NamedElement e) {
    const u64 m = s.m();
    const bool needs_tau = e == NamedElement::Tau || e == NamedElement::TauMu || e == NamedElement::Tau2Mu;
    if (needs_tau && !n_is_2_mod_3(s.n)) throw Error(Errc::PreconditionViolated, "tau needs n = 2 mod 3");
    switch (e) {
        case NamedElement::Sigma: return {1, 0};
        case NamedElement::Mu: return {0, 1};
        case NamedElement::Tau: return {m / 3, 0};
        case NamedElement::TauMu: return {m / 3, 1};
        case NamedElement::Tau2Mu: return {2 * m / 3, 1};
    }
    return {};
}

/// The fixed points on the curve predicted for the named element. The cube
/// root attached to tau is xi^(m/3).
inline std::vector<ProjPoint> expected_fixed_points(const AutGroup& G, NamedElement e) {
    const Field& F = G.field;
    const auto& s = G.spec;
    const Fe o = F.one(), z = F.zero();
    std::vector<ProjPoint> out;
    auto omega = [&] {
        for (int i = 0; i < 3; ++i) out.push_back(ProjPoint::vertex(F, i));
    };
    switch (e) {
        case NamedElement::Sigma:
        case NamedElement::Tau: omega(); break;
        case NamedElement::Mu:
            if (n_is_2_mod_3(s.n)) break;
            if (s.p == 3) {
                out.push_back(ProjPoint::make(F, o, o, o));
                break;
            }
            if ((F.order() - 1) % 3 != 0) throw Error(Errc::FieldTooSmall, F.name() + " lacks the cube roots of unity");
            {
                const Fe a = gf::nth_roots_of_unity(F, 3).primitive;
                const Fe a2 = F.mul(a, a);
                out.push_back(ProjPoint::make(F, a, a2, o));
                out.push_back(ProjPoint::make(F, a2, a, o));
            }
            break;
        case NamedElement::TauMu:
        case NamedElement::Tau2Mu: {
            Fe a = F.pow(G.gens.xi, s.m() / 3);
            if (e == NamedElement::Tau2Mu) a = F.mul(a, a);
            out.push_back(ProjPoint::make(F, a, o, o));
            out.push_back(ProjPoint::make(F, o, a, o));
            out.push_back(ProjPoint::make(F, o, o, a));
            (void)z;
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct FixedPointReport {
    NamedElement which;
    std::vector<ProjPoint> scanned;
    std::vector<ProjPoint> expected;
    bool agree = false;
};

inline FixedPointReport check_fixed_points(const AutGroup& G, NamedElement e, const std::vector<ProjPoint>& pts) {
    FixedPointReport r{e, fixed_points(G.field, G.at(named_abstract(G.spec, e)), pts), expected_fixed_points(G, e), false};
    r.agree = r.scanned == r.expected;
    return r;
}

/// True when the characteristic polynomial of M splits over F, so every fixed point of M in the plane is rational.
inline bool fixed_points_rational(const Field& F, const ProjMap& M) {
    const auto& a = M.a;
    const Fe tr = F.add(F.add(a[0][0], a[1][1]), a[2][2]);
    Fe c2 = F.zero();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) c2 = F.add(c2, F.sub(F.mul(a[i][i], a[j][j]), F.mul(a[i][j], a[j][i])));
    const UniPoly chi({F.neg(det3(F, a)), c2, F.neg(tr), F.one()});
    return gf::roots_of(F, chi).size() == 3;
}

// ---------------------------------------------------------------------------
// Local parameters and ramification filtrations

/// A branch at P in the chart where coordinate `chart` is 1; the coordinate
/// `param` minus its value at P is the local parameter t.
struct LocalBranch {
    ProjPoint point;
    int chart = 2;
    int param = 0;
    unsigned N = 0;
    std::array<UniPoly, 3> coords;  // homogeneous coordinates as series in t, valid mod t^(N+1)
    poly::Series series;
};

inline LocalBranch local_branch(const Field& F, const TriForm& f, const ProjPoint& P, unsigned N) {
    LocalBranch b;
    b.point = P;
    b.N = N;
    b.chart = P.c[2].code ? 2 : (P.c[1].code ? 1 : 0);
    std::array<int, 2> other{};
    for (int i = 0, k = 0; i < 3; ++i)
        if (i != b.chart) other[k++] = i;
    const Fe inv = F.inv(P.c[b.chart]);
    const Fe u0 = F.mul(P.c[other[0]], inv), v0 = F.mul(P.c[other[1]], inv);
    const poly::BiPoly g = poly::dehomogenize(F, f, b.chart);
    const bool dv = poly::eval(F, poly::partial(F, g, 1), u0, v0).code != 0;
    const bool du = poly::eval(F, poly::partial(F, g, 0), u0, v0).code != 0;
    if (!dv && !du) throw Error(Errc::SingularPoint, "no local parameter at " + to_string(F, P));
    const poly::Param param = dv ? poly::Param::U : poly::Param::V;
    b.param = dv ? other[0] : other[1];
    b.series = poly::solve_series(F, g, u0, v0, param, N);
    b.coords[b.chart] = UniPoly::constant(F.one());
    b.coords[other[0]] = b.series.u_series();
    b.coords[other[1]] = b.series.v_series();
    return b;
}

namespace detail {

// 1/c mod t^n for c(0) != 0
inline UniPoly series_inverse(const Field& F, const UniPoly& c, std::size_t n) {
    std::vector<Fe> r(n, F.zero());
    const Fe c0inv = F.inv(c[0]);
    for (std::size_t k = 0; k < n; ++k) {
        Fe s = k == 0 ? F.one() : F.zero();
        for (std::size_t j = 1; j <= k; ++j) s = F.sub(s, F.mul(c[j], r[k - j]));
        r[k] = F.mul(s, c0inv);
    }
    return UniPoly(std::move(r));
}

}  // namespace detail

/// v_P(g*(t) - t) for a nonidentity g fixing P; throws SeriesTruncationTooShort
/// when the difference vanishes to the branch precision.
inline long lower_ramification_index(const Field& F, const LocalBranch& b, const ProjMap& g) {
    const std::size_t n = b.N + 1;
    std::array<UniPoly, 3> w;
    for (int i = 0; i < 3; ++i) {
        UniPoly s;
        for (int k = 0; k < 3; ++k) s = poly::add(F, s, poly::scale(F, b.coords[k], g.a[i][k]));
        w[i] = s;
    }
    if (w[b.chart][0].code == 0) throw Error(Errc::PreconditionViolated, "map does not fix " + to_string(F, b.point));
    const UniPoly ratio = poly::mul_trunc(F, w[b.param], detail::series_inverse(F, w[b.chart], n), n);
    const UniPoly t({b.coords[b.param][0], F.one()});
    const UniPoly diff = poly::sub(F, ratio, t);
    if (diff.is_zero())
        throw Error(Errc::SeriesTruncationTooShort, "g(t) - t vanishes modulo t^" + std::to_string(n));
    const long v = poly::vanishing_order(diff);
    require(v >= 1, "g fixes P, so g(t) - t vanishes at P");
    return v;
}

inline constexpr unsigned kSeriesStart = 8;
inline constexpr unsigned kSeriesMax = 256;

/// Lower indices of each element at P, retrying with longer series as needed.
inline std::vector<long> lower_indices(const Field& F, const TriForm& f, const ProjPoint& P, const std::vector<ProjMap>& gs) {
    for (unsigned N = kSeriesStart;; N *= 2) {
        try {
            const LocalBranch b = local_branch(F, f, P, N);
            std::vector<long> out;
            for (const auto& g : gs) out.push_back(lower_ramification_index(F, b, g));
            return out;
        } catch (const Error& e) {
            if (e.code() != Errc::SeriesTruncationTooShort || N >= kSeriesMax) throw;
        }
    }
}

/// |G_P^(i)| for i = 0, 1, ... from the lower indices of the nonidentity elements; ends with 1.
inline std::vector<u64> filtration_from_indices(const std::vector<long>& idx) {
    std::vector<u64> orders;
    for (long i = 0;; ++i) {
        u64 c = 1;
        for (long v : idx) c += v >= i + 1;
        orders.push_back(c);
        if (c == 1) break;
    }
    return orders;
}

struct Filtration {
    ProjPoint point;
    std::vector<u64> orders;
    std::vector<long> lower_indices;  // per nonidentity element of the stabilizer, in input order
};

/// Ramification groups of <stab> at P; identity entries in `stab` are ignored.
inline Filtration ramification_filtration(const HurwitzSpec& s, const Field& F, const ProjPoint& P,
                                          const std::vector<ProjMap>& stab) {
    const TriForm f = hurwitz_form(F, s.n);
    if (poly::eval(F, f, P).code != 0) throw Error(Errc::PreconditionViolated, to_string(F, P) + " is not on the curve");
    std::vector<ProjMap> nontrivial;
    const ProjMap I = ProjMap::identity(F);
    for (const auto& g : stab) {
        if (g == I) continue;
        if (apply(F, g, P) != P) throw Error(Errc::PreconditionViolated, "stabilizer element moves " + to_string(F, P));
        nontrivial.push_back(g);
    }
    Filtration r;
    r.point = P;
    r.lower_indices = lower_indices(F, f, P, nontrivial);
    r.orders = filtration_from_indices(r.lower_indices);
    return r;
}

// ---------------------------------------------------------------------------
// Quotient genera

struct GenusRow {
    SubgroupClass cls;
    long long genus_closed = 0;
    bool closed_integral = true;
    long long genus_rh = 0;
    bool rh_integral = true;
    long long different = 0;  // sum over points and i of (|H_P^(i)| - 1)
    u64 ramified_points = 0;
    bool agree() const { return closed_integral && rh_integral && genus_closed == genus_rh && genus_rh >= 0; }
};

struct PointStabilizer {
    ProjPoint point;
    std::vector<u64> elements;  // nonidentity, as indices into AutGroup::elements
    std::vector<long> lower;     // lower ramification index of each
    std::vector<u64> filtration;
};

struct GenusTable {
    HurwitzSpec spec;
    Field field;
    u64 point_count = 0;
    bool fixed_points_rational = false;  // every group element has a split characteristic polynomial
    bool sigma_fixes_exactly_omega = false;
    bool vertex_stabilizers_in_sigma = false;
    bool stabilizers_cyclic_part_or_order_3 = false;
    bool rh_full_group_identity = false;
    std::vector<PointStabilizer> stabilizers;
    std::vector<GenusRow> rows;
};

inline GenusTable genus_table(const HurwitzSpec& s, std::optional<Field> ctx = std::nullopt,
                              const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    require_generic_case(s);
    const Field F = ctx ? *ctx : Field::make(s.p, scan_field_degree(s), caps);
    F.require_enumerable("genus_table");
    const AutGroup G = generate_group(s, F);
    const TriForm f = hurwitz_form(F, s.n);
    const u64 N = G.abs.size();

    GenusTable T;
    T.spec = s;
    T.field = F;
    T.fixed_points_rational = std::all_of(G.elements.begin(), G.elements.end(),
                                          [&](const ProjMap& M) { return fixed_points_rational(F, M); });
    const auto pts = enumerate_points(F, f);
    T.point_count = pts.size();

    for (const auto& P : pts) {
        PointStabilizer st;
        st.point = P;
        for (u64 k = 1; k < N; ++k)  // index 0 is the identity
            if (apply(F, G.elements[k], P) == P) st.elements.push_back(k);
        if (st.elements.empty()) continue;
        std::vector<ProjMap> ms;
        for (u64 k : st.elements) ms.push_back(G.elements[k]);
        st.lower = lower_indices(F, f, P, ms);
        st.filtration = filtration_from_indices(st.lower);
        T.stabilizers.push_back(std::move(st));
    }

    const auto sigma_fixed = fixed_points(F, G.gens.sigma, pts);
    std::vector<ProjPoint> omega{ProjPoint::vertex(F, 0), ProjPoint::vertex(F, 1), ProjPoint::vertex(F, 2)};
    std::sort(omega.begin(), omega.end());
    T.sigma_fixes_exactly_omega = sigma_fixed == omega;
    T.vertex_stabilizers_in_sigma = true;
    T.stabilizers_cyclic_part_or_order_3 = true;
    for (const auto& st : T.stabilizers) {
        const bool in_sigma = std::all_of(st.elements.begin(), st.elements.end(),
                                          [&](u64 k) { return G.abs.element(k).s == 0; });
        if (!vertex_tag(st.point).empty() && !in_sigma) T.vertex_stabilizers_in_sigma = false;
        if (!in_sigma && st.elements.size() + 1 != 3) T.stabilizers_cyclic_part_or_order_3 = false;
        if (s.p != 3 || n_is_2_mod_3(s.n))
            require(st.filtration.size() < 2 || st.filtration[1] == 1, "ramification is tame unless p = 3 and n != 2 mod 3");
    }
    const long long d = s.degree();
    const long long two_g_minus_2 = static_cast<long long>(2 * s.genus()) - 2;
    T.rh_full_group_identity = d * (d - 3) == two_g_minus_2;

    for (auto& cls : subgroup_classes(s.n)) {
        GenusRow row;
        const Rational q = closed_form_genus(s.n, cls);
        row.closed_integral = q.num % q.den == 0;
        row.genus_closed = q.num / q.den;

        std::set<u64> H;
        for (const auto& a : cls.representative) H.insert(G.abs.index(a));
        for (const auto& st : T.stabilizers) {
            long long contrib = 0;
            for (std::size_t k = 0; k < st.elements.size(); ++k)
                if (H.count(st.elements[k])) contrib += st.lower[k];
            if (contrib) {
                row.different += contrib;
                ++row.ramified_points;
            }
        }
        // 2g - 2 = |H| (2g' - 2) + different
        const long long h = static_cast<long long>(cls.order);
        const long long rest = two_g_minus_2 - row.different;
        row.rh_integral = rest % h == 0 && (rest / h) % 2 == 0;
        row.genus_rh = rest / h / 2 + 1;
        row.cls = std::move(cls);
        T.rows.push_back(std::move(row));
    }
    return T;
}

}  // namespace hlab
