#pragma once

// The Hurwitz curve X Y^n + Y Z^n + X^n Z: generic contact order, divisors of
// coordinate functions, the auxiliary cubic and its Weierstrass points.

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curve.hpp"
#include "roots.hpp"

namespace hlab {

using gf::u64;

struct HurwitzSpec {
    unsigned n = 0;
    u64 p = 0;

    u64 m() const { return u64{n} * n - n + 1; }
    u64 genus() const { return u64{n} * (n - 1) / 2; }
    unsigned degree() const { return n + 1; }

    /// Validates n >= 3, p prime and smoothness (p does not divide n^2 - n + 1).
    static HurwitzSpec make(unsigned n, u64 p) {
        if (n < 3) throw Error(Errc::PreconditionViolated, "n must be at least 3");
        if (!nt::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
        HurwitzSpec s{n, p};
        if (s.m() % p == 0)
            throw Error(Errc::PreconditionViolated, std::to_string(p) + " divides n^2-n+1 = " + std::to_string(s.m()) +
                                                        ": the curve is singular");
        return s;
    }
};

inline TriForm hurwitz_form(const Field& F, unsigned n) {
    return TriForm::from_ints(F, n + 1, {{{1, n, 0}, 1}, {{0, 1, n}, 1}, {{n, 0, 1}, 1}});
}

// ---------------------------------------------------------------------------
// Generic order

enum class EpsTag { P_DIVIDES_N, CHAR2_N1MOD4, CHAR2_N3MOD4, GENERIC_ODD, P_DIVIDES_N_MINUS_1 };

inline std::string to_string(EpsTag t) {
    switch (t) {
        case EpsTag::P_DIVIDES_N: return "P_DIVIDES_N";
        case EpsTag::CHAR2_N1MOD4: return "CHAR2_N1MOD4";
        case EpsTag::CHAR2_N3MOD4: return "CHAR2_N3MOD4";
        case EpsTag::GENERIC_ODD: return "GENERIC_ODD";
        case EpsTag::P_DIVIDES_N_MINUS_1: return "P_DIVIDES_N_MINUS_1";
    }
    return "?";
}

struct EpsCase {
    unsigned eps = 2;
    EpsTag tag = EpsTag::GENERIC_ODD;
    unsigned r = 0;     // P_DIVIDES_N only: n = p^r m'
    u64 m_prime = 0;
};

inline EpsCase epsilon(const HurwitzSpec& s) {
    EpsCase e;
    if (s.n % s.p == 0) {
        e.tag = EpsTag::P_DIVIDES_N;
        e.r = nt::valuation(s.n, s.p);
        const u64 pr = nt::checked_pow(s.p, e.r);
        e.eps = static_cast<unsigned>(pr);
        e.m_prime = s.n / pr;
    } else if (s.p == 2) {
        e.tag = s.n % 4 == 1 ? EpsTag::CHAR2_N1MOD4 : EpsTag::CHAR2_N3MOD4;
    } else if ((s.n - 1) % s.p == 0) {
        e.tag = EpsTag::P_DIVIDES_N_MINUS_1;
    }
    return e;
}

inline long long deg_R(const HurwitzSpec& s, unsigned eps) {
    return static_cast<long long>(1 + eps) * static_cast<long long>(s.m()) + 3LL * (static_cast<long long>(s.n) - eps);
}

// ---------------------------------------------------------------------------
// Formal divisors

struct FormalDivisor {
    std::map<ProjPoint, long long> terms;  // nonzero coefficients only

    void add(const ProjPoint& P, long long c) {
        if (c == 0) return;
        auto& slot = terms[P];
        slot += c;
        if (slot == 0) terms.erase(P);
    }
    long long degree() const {
        long long d = 0;
        for (const auto& [P, c] : terms) d += c;
        return d;
    }
    long long coefficient(const ProjPoint& P) const {
        auto it = terms.find(P);
        return it == terms.end() ? 0 : it->second;
    }
    friend FormalDivisor operator-(FormalDivisor a, const FormalDivisor& b) {
        for (const auto& [P, c] : b.terms) a.add(P, -c);
        return a;
    }
    friend FormalDivisor operator+(FormalDivisor a, const FormalDivisor& b) {
        for (const auto& [P, c] : b.terms) a.add(P, c);
        return a;
    }
    friend bool operator==(const FormalDivisor&, const FormalDivisor&) = default;
};

/// Vertices first as P1, P2, P3, then the remaining points in canonical order.
inline std::string to_string(const Field& F, const FormalDivisor& D) {
    if (D.terms.empty()) return "0";
    std::vector<std::pair<std::string, long long>> items;
    for (int i = 0; i < 3; ++i)
        if (long long c = D.coefficient(ProjPoint::vertex(F, i))) items.emplace_back("P" + std::to_string(i + 1), c);
    for (const auto& [P, c] : D.terms)
        if (vertex_tag(P).empty()) items.emplace_back(to_string(F, P), c);
    std::string s;
    for (const auto& [name, c] : items) {
        if (!s.empty())
            s += c < 0 ? " - " : " + ";
        else if (c < 0)
            s += "-";
        const long long a = c < 0 ? -c : c;
        s += (a == 1 ? "" : std::to_string(a)) + name;
    }
    return s;
}

/// Intersection cycle of the curve with the line through distinct points A and B.
/// Multiplicities come from the roots of t -> f(A + tB); B itself absorbs the degree deficit.
inline FormalDivisor line_cut(const Field& F, const TriForm& f, const ProjPoint& A, const ProjPoint& B) {
    const UniPoly r = poly::restrict_to_line(F, f, A, B);
    if (r.is_zero()) throw Error(Errc::InvariantViolated, "line is a component of the curve");
    FormalDivisor D;
    const auto roots = gf::roots_of(F, r);
    for (Fe t : roots)
        D.add(ProjPoint::make(F, F.add(A.c[0], F.mul(t, B.c[0])), F.add(A.c[1], F.mul(t, B.c[1])),
                              F.add(A.c[2], F.mul(t, B.c[2]))),
              1);
    D.add(B, static_cast<long long>(f.d) - r.degree());
    require(static_cast<long long>(roots.size()) == r.degree(), "line cut is rational over the working field");
    return D;
}

struct FundamentalDivisors {
    FormalDivisor div_x, div_y;
    std::array<FormalDivisor, 3> lines;  // Z = 0, X = 0, Y = 0
};

inline FundamentalDivisors fundamental_divisors(const HurwitzSpec& s, const Field& F) {
    const TriForm f = hurwitz_form(F, s.n);
    const ProjPoint P1 = ProjPoint::vertex(F, 0), P2 = ProjPoint::vertex(F, 1), P3 = ProjPoint::vertex(F, 2);
    const long long n = s.n;
    FundamentalDivisors out;
    out.lines[0] = line_cut(F, f, P1, P2);
    out.lines[1] = line_cut(F, f, P2, P3);
    out.lines[2] = line_cut(F, f, P3, P1);
    out.div_x.add(P2, n - 1);
    out.div_x.add(P3, 1);
    out.div_x.add(P1, -n);
    out.div_y.add(P3, n);
    out.div_y.add(P1, -(n - 1));
    out.div_y.add(P2, -1);

    FormalDivisor expect1, expect2, expect3;
    expect1.add(P1, n);
    expect1.add(P2, 1);
    expect2.add(P2, n);
    expect2.add(P3, 1);
    expect3.add(P1, 1);
    expect3.add(P3, n);
    require(out.lines[0] == expect1, "Z=0 cuts nP1 + P2");
    require(out.lines[1] == expect2, "X=0 cuts nP2 + P3");
    require(out.lines[2] == expect3, "Y=0 cuts P1 + nP3");
    require(out.div_x == out.lines[1] - out.lines[0], "div(x) is the difference of the X=0 and Z=0 cuts");
    require(out.div_y == out.lines[2] - out.lines[0], "div(y) is the difference of the Y=0 and Z=0 cuts");
    return out;
}

// ---------------------------------------------------------------------------
// Construction fields

/// Least K with s | K such that t^m = c has all m solutions in GF(p^K) for every c
/// of multiplicative order dividing o, i.e. m*o | p^K - 1.
inline unsigned construction_degree(u64 p, unsigned s, u64 m, u64 o) {
    const u64 mo = m * o;
    const u64 ord = mo == 1 ? 1 : nt::multiplicative_order_mod(p % mo, mo);
    return static_cast<unsigned>(std::lcm(static_cast<u64>(s), ord));
}

inline Field construction_field(u64 p, unsigned K, const gf::FieldCaps& caps) {
    const u64 q = nt::checked_pow(p, K);
    if (q == 0 || K > gf::kMaxDegree || q > caps.arithmetic_cap || p >= (u64{1} << 31))
        throw Error(Errc::FieldConstructionTooLarge,
                    "required field GF(" + std::to_string(p) + "^" + std::to_string(K) + ") is beyond the arithmetic limit");
    return Field::make(p, K, caps);
}

// ---------------------------------------------------------------------------
// div(dx)

enum class DxBranch { P_DIVIDES_N, P_DIVIDES_N_MINUS_1, GENERIC };

struct DxDivisor {
    DxBranch branch;
    Field field;
    FormalDivisor divisor;
};

/// div(dx); the generic branch needs all Q_i, rational over ctx when given
/// (FieldTooSmall otherwise) or over the least field containing them.
inline DxDivisor div_dx(const HurwitzSpec& s, std::optional<Field> ctx = std::nullopt,
                        const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    const long long n = s.n;
    DxDivisor out;
    if (s.n % s.p == 0 || (s.n - 1) % s.p == 0) {
        out.field = ctx ? *ctx : Field::make(s.p, 1, caps);
        const Field& F = out.field;
        const ProjPoint P1 = ProjPoint::vertex(F, 0), P2 = ProjPoint::vertex(F, 1);
        if (s.n % s.p == 0) {
            out.branch = DxBranch::P_DIVIDES_N;
            out.divisor.add(P1, n * n - 2 * n);
            out.divisor.add(P2, n - 2);
        } else {
            out.branch = DxBranch::P_DIVIDES_N_MINUS_1;
            out.divisor.add(P1, -(n + 1));
            out.divisor.add(P2, n * n - 1);
        }
    } else {
        out.branch = DxBranch::GENERIC;
        const Field Fp = Field::make(s.p, 1, caps);
        // x^m = -(1-n)^(n-1) / n^n
        const Fe c = Fp.neg(Fp.div(Fp.pow(Fp.from_int(1 - n), s.n - 1), Fp.pow(Fp.from_int(n), s.n)));
        const u64 o = Fp.element_order(c);
        if (ctx) {
            const u64 q1 = ctx->order() - 1;
            if (q1 % (s.m() * o) != 0)
                throw Error(Errc::FieldTooSmall, ctx->name() + " does not contain the points of div(dx)");
            out.field = *ctx;
        } else {
            out.field = construction_field(s.p, construction_degree(s.p, 1, s.m(), o), caps);
        }
        const Field& F = out.field;
        const Fe cF = F.from_int(static_cast<long long>(c.code));
        const auto x0 = gf::nth_root(F, cF, s.m());
        require(x0.has_value(), "x^m = c is solvable in the construction field");
        const Fe coef = F.div(F.from_int(n), F.from_int(1 - n));
        const TriForm f = hurwitz_form(F, s.n);
        for (Fe z : gf::nth_roots_of_unity(F, s.m()).all) {
            const Fe x = F.mul(*x0, z);
            const ProjPoint Q = ProjPoint::make(F, x, F.mul(coef, F.pow(x, s.n)), F.one());
            require(poly::eval(F, f, Q).code == 0, "Q_i lies on the curve");
            // the y-partial n x y^(n-1) + 1 vanishes at Q_i
            require(F.add(F.mul(F.from_int(n), F.mul(Q.c[0], F.pow(Q.c[1], s.n - 1))), F.one()).code == 0,
                    "dx vanishes at Q_i");
            out.divisor.add(Q, 1);
        }
        require(out.divisor.terms.size() == s.m(), "the Q_i are distinct");
        out.divisor.add(ProjPoint::vertex(F, 0), -(n + 1));
        out.divisor.add(ProjPoint::vertex(F, 1), n - 2);
    }
    require(out.divisor.degree() == (n + 1) * (n - 2), "deg div(dx) = 2g - 2");
    return out;
}

// ---------------------------------------------------------------------------
// The cubic g(T)

struct CubicReport {
    Field field;      // GF(p)
    UniPoly g;        // over GF(p)
    std::array<long long, 4> integer_coeffs;  // ascending: -(n-1), n^3-3n^2+3n+1, n^3-3n^2+6n-2, n-1
    Fe discriminant;
    Fe expected_discriminant;  // m^4 (n^2-4n+7)^2 mod p
    bool triple_root = false;  // p | n^2 - 4n + 7
    std::optional<Fe> alpha;   // the triple root, a primitive cube root of unity in GF(p)
    unsigned splitting_degree = 0;
};

inline std::array<long long, 4> cubic_g_coefficients(long long n) {
    return {-(n - 1), n * n * n - 3 * n * n + 3 * n + 1, n * n * n - 3 * n * n + 6 * n - 2, n - 1};
}

/// Discriminant of a3 T^3 + a2 T^2 + a1 T + a0 over a field.
inline Fe cubic_discriminant(const Field& F, const UniPoly& g) {
    const Fe a = g[3], b = g[2], c = g[1], d = g[0];
    auto k = [&](long long v) { return F.from_int(v); };
    auto m = [&](std::initializer_list<Fe> xs) {
        Fe r = F.one();
        for (Fe x : xs) r = F.mul(r, x);
        return r;
    };
    Fe D = m({k(18), a, b, c, d});
    D = F.sub(D, m({k(4), b, b, b, d}));
    D = F.add(D, m({b, b, c, c}));
    D = F.sub(D, m({k(4), a, c, c, c}));
    D = F.sub(D, m({k(27), a, a, d, d}));
    return D;
}

inline CubicReport cubic_g(const HurwitzSpec& s, const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    const long long n = s.n;
    const u64 p = s.p;
    if (p == 2 || (static_cast<u64>(n * n - n) % p) == 0)
        throw Error(Errc::PreconditionViolated, "the cubic needs p > 2 and p not dividing n^2 - n");
    CubicReport r;
    r.field = Field::make(p, 1, caps);
    const Field& F = r.field;
    r.integer_coeffs = cubic_g_coefficients(n);
    r.g = UniPoly({F.from_int(r.integer_coeffs[0]), F.from_int(r.integer_coeffs[1]), F.from_int(r.integer_coeffs[2]),
                   F.from_int(r.integer_coeffs[3])});
    r.discriminant = cubic_discriminant(F, r.g);
    const Fe mm = F.from_int(static_cast<long long>(s.m() % p));
    const Fe w = F.from_int(n * n - 4 * n + 7);
    r.expected_discriminant = F.mul(F.pow(mm, 4), F.pow(w, 2));
    require(r.discriminant == r.expected_discriminant, "disc g = (n^2-n+1)^4 (n^2-4n+7)^2");
    r.triple_root = (n * n - 4 * n + 7) % static_cast<long long>(p) == 0;
    r.splitting_degree = gf::splitting_degree(F, r.g);
    if (r.triple_root) {
        const auto roots = gf::roots_of(F, r.g);
        require(roots.size() == 3 && roots[0] == roots[1] && roots[1] == roots[2], "g has a triple root");
        const Fe a = roots[0];
        require(F.pow(a, 3) == F.one() && a != F.one(), "the triple root is a primitive cube root of unity");
        UniPoly cube = UniPoly::constant(F.from_int(n - 1));
        for (int i = 0; i < 3; ++i) cube = poly::mul(F, cube, UniPoly({F.neg(a), F.one()}));
        require(cube == r.g, "g = (n-1)(T - alpha)^3");
        r.alpha = a;
    } else {
        // roots are permuted by eta -> -1/(eta+1) -> -(eta+1)/eta
        const Field E = Field::make(p, r.splitting_degree, caps);
        const UniPoly gE = UniPoly({E.from_int(r.integer_coeffs[0]), E.from_int(r.integer_coeffs[1]),
                                    E.from_int(r.integer_coeffs[2]), E.from_int(r.integer_coeffs[3])});
        const auto roots = gf::roots_of(E, gE);
        require(roots.size() == 3, "g splits in its splitting field");
        std::set<Fe> rs(roots.begin(), roots.end());
        require(rs.size() == 3, "g is separable away from the triple-root case");
        for (Fe eta : roots) {
            const Fe e1 = E.neg(E.inv(E.add(eta, E.one())));
            const Fe e2 = E.neg(E.div(E.add(eta, E.one()), eta));
            require(rs.count(e1) && rs.count(e2), "root orbit eta, -1/(eta+1), -(eta+1)/eta");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Weierstrass points

enum class WCase { P_DIVIDES_N, CHAR2_EMPTY, CHAR2_J3, P_DIVIDES_N_MINUS_1_EMPTY, TRIPLE_ROOT_J5, GENERIC_J3 };

inline std::string to_string(WCase c) {
    switch (c) {
        case WCase::P_DIVIDES_N: return "P_DIVIDES_N";
        case WCase::CHAR2_EMPTY: return "CHAR2_N1MOD4_EMPTY";
        case WCase::CHAR2_J3: return "CHAR2_N3MOD4_J3";
        case WCase::P_DIVIDES_N_MINUS_1_EMPTY: return "P_DIVIDES_N_MINUS_1_EMPTY";
        case WCase::TRIPLE_ROOT_J5: return "TRIPLE_ROOT_J5";
        case WCase::GENERIC_J3: return "GENERIC_J3";
    }
    return "?";
}

inline WCase weierstrass_case(const HurwitzSpec& s) {
    const long long n = s.n, p = static_cast<long long>(s.p);
    if (n % p == 0) return WCase::P_DIVIDES_N;
    if (p == 2) return n % 4 == 1 ? WCase::CHAR2_EMPTY : WCase::CHAR2_J3;
    if ((n - 1) % p == 0) return WCase::P_DIVIDES_N_MINUS_1_EMPTY;
    if ((n * n - 4 * n + 7) % p == 0) return WCase::TRIPLE_ROOT_J5;
    return WCase::GENERIC_J3;
}

inline bool weierstrass_empty(WCase c) { return c == WCase::CHAR2_EMPTY || c == WCase::P_DIVIDES_N_MINUS_1_EMPTY; }

struct WeierstrassSet {
    HurwitzSpec spec;
    EpsCase eps_case;
    WCase wcase;
    long long degR = 0;
    Field field;                     // every record is rational here
    std::vector<FlexRecord> omega;   // the three vertices, j = n
    std::vector<FlexRecord> w;       // canonical order
    unsigned claimed_j = 0;          // 0 for the empty branches
    u64 claimed_size = 0;
    long long bookkeeping = 0;       // sum (j - eps) over omega and w
    bool bookkeeping_asserted = false;
};

namespace detail {

struct Branch {
    UniPoly lambda_poly;       // over GF(p)
    unsigned j;
    u64 size;
    // right-hand side c(lambda) of t^m = c and the point for (lambda, t)
    std::function<Fe(const Field&, Fe)> rhs;
    std::function<ProjPoint(const Field&, Fe, Fe)> point;
};

inline Branch make_branch(const HurwitzSpec& s, WCase c, const Field& Fp) {
    const unsigned n = s.n;
    const u64 m = s.m();
    Branch b;
    auto vertical = [n](const Field& F, Fe lambda, Fe t) {
        return ProjPoint::make(F, lambda, F.pow(t, n), F.pow(t, n - 1));
    };
    auto horizontal = [n](const Field& F, Fe lambda, Fe t) {
        return ProjPoint::make(F, t, F.mul(lambda, F.pow(t, n)), F.one());
    };
    switch (c) {
        case WCase::P_DIVIDES_N: {
            const unsigned r = nt::valuation(n, s.p);
            const u64 pr = nt::checked_pow(s.p, r);
            std::vector<Fe> coeffs(pr + 2, Fp.zero());
            coeffs[0] = Fp.one();
            coeffs[1] = Fp.one();
            coeffs[pr + 1] = Fp.one();
            b.lambda_poly = UniPoly(coeffs);
            b.j = static_cast<unsigned>(pr + 1);
            b.size = (pr + 1) * m;
            const long long e = static_cast<long long>(n) - static_cast<long long>(pr) - 1;
            b.rhs = [e](const Field& F, Fe lambda) { return F.pow_signed(lambda, e); };
            b.point = vertical;
            break;
        }
        case WCase::CHAR2_J3:
            b.lambda_poly = UniPoly::from_ints(Fp, {1, 1, 0, 1});
            b.j = 3;
            b.size = 3 * m;
            b.rhs = [n](const Field& F, Fe lambda) { return F.pow(lambda, n - 3); };
            b.point = vertical;
            break;
        case WCase::TRIPLE_ROOT_J5: {
            const CubicReport cr = cubic_g(s);
            b.lambda_poly = UniPoly({Fp.neg(*cr.alpha), Fp.one()});
            b.j = 5;
            b.size = m;
            b.rhs = [n](const Field& F, Fe lambda) { return F.pow(lambda, 2 * (n + 1)); };
            b.point = horizontal;
            break;
        }
        case WCase::GENERIC_J3: {
            const CubicReport cr = cubic_g(s);
            b.lambda_poly = cr.g;
            b.j = 3;
            b.size = 3 * m;
            b.rhs = [n](const Field& F, Fe lambda) {
                return F.neg(F.mul(F.add(lambda, F.one()), F.pow_signed(lambda, -static_cast<long long>(n))));
            };
            b.point = horizontal;
            break;
        }
        default:
            throw Error(Errc::PreconditionViolated, "empty branch has no parametrization");
    }
    return b;
}

inline UniPoly lift(const Field& F, const Field& Fp, const UniPoly& g) {
    std::vector<Fe> c;
    for (Fe x : g.coeffs) c.push_back(F.from_int(static_cast<long long>(x.code)));
    (void)Fp;
    return UniPoly(std::move(c));
}

}  // namespace detail

inline std::vector<FlexRecord> omega_records(const Field& F, unsigned n) {
    return {FlexRecord{ProjPoint::vertex(F, 2), n, F}, FlexRecord{ProjPoint::vertex(F, 1), n, F},
            FlexRecord{ProjPoint::vertex(F, 0), n, F}};
}

/// The Weierstrass set in closed form, materialized over the least field that holds it.
inline WeierstrassSet weierstrass_closed_form(const HurwitzSpec& s, const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    WeierstrassSet W;
    W.spec = s;
    W.eps_case = epsilon(s);
    W.wcase = weierstrass_case(s);
    W.degR = deg_R(s, W.eps_case.eps);
    const long long eps = W.eps_case.eps;

    if (weierstrass_empty(W.wcase)) {
        W.field = Field::make(s.p, 1, caps);
        W.omega = omega_records(W.field, s.n);
        W.bookkeeping = 3 * (static_cast<long long>(s.n) - eps);
        return W;
    }

    const Field Fp = Field::make(s.p, 1, caps);
    const detail::Branch b = detail::make_branch(s, W.wcase, Fp);
    W.claimed_j = b.j;
    W.claimed_size = b.size;

    // lambdas and right-hand sides in the splitting field decide the construction degree
    const unsigned sdeg = gf::splitting_degree(Fp, b.lambda_poly);
    const Field Fs = construction_field(s.p, sdeg, caps);
    u64 o = 1;
    for (Fe lambda : gf::distinct_roots(Fs, detail::lift(Fs, Fp, b.lambda_poly))) {
        const Fe c = b.rhs(Fs, lambda);
        require(c.code != 0, "right-hand side of the t-equation is nonzero");
        o = std::lcm(o, Fs.element_order(c));
    }
    const unsigned K = construction_degree(s.p, sdeg, s.m(), o);
    W.field = construction_field(s.p, K, caps);
    const Field& F = W.field;

    const auto lambdas = gf::distinct_roots(F, detail::lift(F, Fp, b.lambda_poly));
    const auto unity = gf::nth_roots_of_unity(F, s.m()).all;
    std::set<ProjPoint> pts;
    for (Fe lambda : lambdas) {
        const auto t0 = gf::nth_root(F, b.rhs(F, lambda), s.m());
        require(t0.has_value(), "t-equation is solvable in the construction field");
        for (Fe z : unity) pts.insert(b.point(F, lambda, F.mul(*t0, z)));
    }
    require(pts.size() == b.size, "|W| matches the branch count");
    const TriForm f = hurwitz_form(F, s.n);
    for (const auto& P : pts) {
        require(poly::eval(F, f, P).code == 0, "every point of W lies on the curve");
        require(!P.has_zero_coordinate(), "W avoids the coordinate triangle");
        W.w.push_back(FlexRecord{P, b.j, F});
    }
    W.omega = omega_records(F, s.n);
    W.bookkeeping = 3 * (static_cast<long long>(s.n) - eps) + static_cast<long long>(b.size) * (b.j - eps);
    W.bookkeeping_asserted = true;
    require(W.bookkeeping == W.degR, "sum of (j - eps) over the support equals deg R");
    return W;
}

struct WeierstrassVerification {
    WeierstrassSet closed;
    unsigned scan_degree = 0;
    Field scan_field;
    std::vector<FlexRecord> scan;      // flex_scan result over the scan field
    bool soundness = false;
    bool completeness = false;
    bool omega_exact = false;          // no scanned point outside the vertices reaches j = n
    std::size_t w_rational = 0;        // points of W rational over the scan field
    std::vector<std::string> failures;
};

/// Two-sided check: every closed-form point has its claimed contact order, and a
/// full scan over GF(p^k0) finds exactly the vertices and the rational part of W.
inline WeierstrassVerification verify_weierstrass(const HurwitzSpec& s, unsigned k0,
                                                  const gf::FieldCaps& caps = gf::FieldCaps::defaults()) {
    WeierstrassVerification v;
    v.closed = weierstrass_closed_form(s, caps);
    v.scan_degree = k0;
    const WeierstrassSet& W = v.closed;
    const long long eps = W.eps_case.eps;

    // soundness
    {
        const Field& F = W.field;
        const TriForm f = hurwitz_form(F, s.n);
        bool ok = true;
        for (const auto* set : {&W.omega, &W.w})
            for (const auto& rec : *set) {
                const FlexRecord got = intersection_order(F, f, rec.point);
                if (got.j != rec.j) {
                    ok = false;
                    v.failures.push_back("contact order at " + to_string(F, rec.point) + " is " + std::to_string(got.j) +
                                         ", claimed " + std::to_string(rec.j));
                }
            }
        v.soundness = ok;
    }

    // completeness
    v.scan_field = Field::make(s.p, k0, caps);
    v.scan_field.require_enumerable("completeness scan");
    const Field& E = v.scan_field;
    v.scan = flex_scan(E, hurwitz_form(E, s.n), static_cast<unsigned>(eps));

    bool ok = true;
    bool omega_exact = true;
    for (const auto& r : v.scan)
        if (!vertex_tag(r.point).empty() ? r.j != s.n : r.j == s.n) omega_exact = false;
    v.omega_exact = omega_exact;

    std::set<ProjPoint> omega_E;
    for (const auto& r : omega_records(E, s.n)) omega_E.insert(r.point);
    std::size_t omega_seen = 0;
    for (const auto& r : v.scan) omega_seen += omega_E.count(r.point);
    if (omega_seen != 3) {
        ok = false;
        v.failures.push_back("scan misses a vertex");
    }

    if (weierstrass_empty(W.wcase)) {
        for (const auto& r : v.scan)
            if (!omega_E.count(r.point)) {
                ok = false;
                v.failures.push_back("flex outside the vertices at " + to_string(E, r.point));
            }
    } else {
        const Field& F = W.field;
        const u64 Kd = F.degree();
        if (Kd % k0 != 0)
            throw Error(Errc::PreconditionViolated, "scan degree " + std::to_string(k0) +
                                                        " must divide the construction degree " + std::to_string(Kd));
        const auto emb = gf::embed(E, F);
        std::map<ProjPoint, unsigned> closed_j;
        for (const auto* set : {&W.omega, &W.w})
            for (const auto& r : *set) closed_j[r.point] = r.j;
        std::set<ProjPoint> seen;
        for (const auto& r : v.scan) {
            const ProjPoint P{{emb.apply(r.point.c[0]), emb.apply(r.point.c[1]), emb.apply(r.point.c[2])}};
            auto it = closed_j.find(P);
            if (it == closed_j.end()) {
                ok = false;
                v.failures.push_back("scanned flex " + to_string(E, r.point) + " is not in the closed form");
            } else if (it->second != r.j) {
                ok = false;
                v.failures.push_back("contact order mismatch at " + to_string(E, r.point));
            }
            seen.insert(P);
        }
        // every closed-form point rational over the scan field must have been found
        for (const auto& r : W.w) {
            bool rational = true;
            for (Fe c : r.point.c) rational = rational && F.frobenius(c, k0) == c;
            if (!rational) continue;
            ++v.w_rational;
            if (!seen.count(r.point)) {
                ok = false;
                v.failures.push_back("closed-form point " + to_string(F, r.point) + " missing from the scan");
            }
        }
    }
    v.completeness = ok;
    return v;
}

}  // namespace hlab
