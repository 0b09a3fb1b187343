// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <hurwitz_lab/autgroup.hpp>
#include <hurwitz_lab/lucas.hpp>

#include "subgroup_oracle.hpp"

using namespace hlab;
using gf::u64;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("violated: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

// Everything later criteria re-examine.
std::map<std::string, Field> g_fields;
std::vector<std::pair<FlexRecord, TriForm>> g_flexes;

void keep(const std::vector<FlexRecord>& rs, const TriForm& f) {
    for (const auto& r : rs) g_flexes.emplace_back(r, f);
}

void remember(const Field& F) { g_fields.emplace(F.name(), F); }

std::string str(u64 v) { return std::to_string(v); }

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome weierstrass_matrix() {
    struct Row {
        unsigned n;
        u64 p;
        unsigned k0;
        unsigned eps;
        u64 w;       // 0 for the empty branches
        unsigned j;
        long long degR;
        double budget;
    };
    const std::vector<Row> rows = {
        {6, 3, 6, 3, 124, 4, 133, 60}, {4, 5, 4, 2, 39, 3, 45, 30}, {6, 19, 3, 2, 31, 5, 105, 60},
        {7, 2, 6, 2, 129, 3, 144, 30}, {5, 2, 8, 0, 0, 0, 0, 30},   {4, 3, 6, 0, 0, 0, 0, 30},
    };
    Outcome out;
    for (const auto& r : rows) {
        const std::string tag = "(n=" + str(r.n) + ", p=" + str(r.p) + ")";
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = HurwitzSpec::make(r.n, r.p);
        const auto v = verify_weierstrass(s, r.k0);
        const double dt = since(t0);
        const auto& W = v.closed;
        remember(W.field);
        remember(v.scan_field);
        out.check(v.soundness, tag + " every closed-form point has its claimed contact order");
        out.check(v.completeness, tag + " the scan over " + v.scan_field.name() + " finds nothing else");
        out.check(v.omega_exact, tag + " only the vertices reach j = n");
        for (const auto& f : v.failures) out.note(tag + " " + f);
        if (r.w == 0) {
            out.check(W.w.empty(), tag + " W is empty");
            for (const auto& rec : v.scan) out.check(!vertex_tag(rec.point).empty(), tag + " no flex outside the vertices");
        } else {
            out.check(W.eps_case.eps == r.eps, tag + " eps = " + str(r.eps));
            out.check(W.w.size() == r.w, tag + " |W| = " + str(r.w));
            for (const auto& rec : W.w) out.check(rec.j == r.j, tag + " j = " + str(r.j) + " on W");
            out.check(W.degR == r.degR, tag + " deg R = " + std::to_string(r.degR));
            long long books = 0;
            for (const auto& rec : W.omega) books += static_cast<long long>(rec.j) - r.eps;
            for (const auto& rec : W.w) books += static_cast<long long>(rec.j) - r.eps;
            out.check(books == r.degR, tag + " sum of (j - eps) = deg R");
            out.check(W.bookkeeping == books, tag + " reported bookkeeping");
        }
        out.check(dt < r.budget, tag + " within " + secs(r.budget));
        out.note(tag + ": " + str(W.w.size()) + " points in W, scan " + v.scan_field.name() + " found " +
                 str(v.scan.size()) + " flexes above eps, " + secs(dt));
        keep(W.omega, hurwitz_form(W.field, r.n));
        keep(W.w, hurwitz_form(W.field, r.n));
        keep(v.scan, hurwitz_form(v.scan_field, r.n));
    }
    return out;
}

// a^4 prod (ri - rj)^2 from the roots in a splitting field, independent of any closed formula.
Fe discriminant_from_roots(u64 p, const std::array<long long, 4>& c) {
    const Field Fp = Field::make(p, 1);
    UniPoly g({Fp.from_int(c[0]), Fp.from_int(c[1]), Fp.from_int(c[2]), Fp.from_int(c[3])});
    if (gf::roots_of(Fp, g).size() == 3 && g.degree() == 3) {
        const auto r = gf::roots_of(Fp, g);
        Fe d = Fp.pow(g[3], 4);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) d = Fp.mul(d, Fp.pow(Fp.sub(r[i], r[j]), 2));
        return d;
    }
    for (unsigned k : {2u, 3u, 6u}) {
        const Field E = Field::make(p, k);
        UniPoly gE({E.from_int(c[0]), E.from_int(c[1]), E.from_int(c[2]), E.from_int(c[3])});
        const auto r = gf::roots_of(E, gE);
        if (r.size() != 3) continue;
        Fe d = E.pow(gE[3], 4);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) d = E.mul(d, E.pow(E.sub(r[i], r[j]), 2));
        require(E.in_prime_field(d), "discriminant lies in the prime field");
        return Fe{d.code};
    }
    throw Error(Errc::InvariantViolated, "cubic does not split over GF(p^6)");
}

Outcome discriminant_identity() {
    Outcome out;
    u64 pairs = 0, passed = 0;
    for (unsigned n = 3; n <= 60; ++n)
        for (u64 p = 3; p <= 60; ++p) {
            if (!nt::is_prime(p)) continue;
            const long long nn = n;
            if (u64(nn * nn - nn + 1) % p == 0 || u64(nn * nn - nn) % p == 0) continue;
            ++pairs;
            const auto s = HurwitzSpec::make(n, p);
            const auto rep = cubic_g(s);
            const auto c = cubic_g_coefficients(nn);
            const Fe d = discriminant_from_roots(p, c);
            const u64 m = u64(nn * nn - nn + 1) % p, w = u64(nn * nn - 4 * nn + 7) % p;
            const u64 rhs = nt::powmod(m, 4, p) * nt::powmod(w, 2, p) % p;
            const bool ok = d.code == rhs && rep.discriminant.code == rhs;
            passed += ok;
            if (!ok) out.check(false, "discriminant identity at n=" + str(n) + " p=" + str(p));
        }
    out.note(str(passed) + "/" + str(pairs) + " admissible pairs (p odd, p not dividing n^2-n or n^2-n+1)");
    return out;
}

Outcome fundamental_divisors_check() {
    Outcome out;
    std::set<DxBranch> branches;
    for (unsigned n = 4; n <= 7; ++n)
        for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
            const u64 m = u64{n} * n - n + 1;
            if (m % p == 0) continue;
            const auto s = HurwitzSpec::make(n, p);
            const Field F = Field::make(p, 1);
            const auto D = fundamental_divisors(s, F);
            const ProjPoint P1 = ProjPoint::vertex(F, 0), P2 = ProjPoint::vertex(F, 1), P3 = ProjPoint::vertex(F, 2);
            const long long nn = n;
            const std::string tag = "n=" + str(n) + " p=" + str(p);
            out.check(D.lines[0].coefficient(P1) == nn && D.lines[0].coefficient(P2) == 1 && D.lines[0].degree() == nn + 1,
                      tag + " Z=0 cuts nP1 + P2");
            out.check(D.lines[1].coefficient(P2) == nn && D.lines[1].coefficient(P3) == 1 && D.lines[1].degree() == nn + 1,
                      tag + " X=0 cuts nP2 + P3");
            out.check(D.lines[2].coefficient(P1) == 1 && D.lines[2].coefficient(P3) == nn && D.lines[2].degree() == nn + 1,
                      tag + " Y=0 cuts P1 + nP3");
            try {
                const auto dx = div_dx(s);
                remember(dx.field);
                branches.insert(dx.branch);
                out.check(dx.divisor.degree() == (nn + 1) * (nn - 2), tag + " deg div(dx) = (n+1)(n-2)");
            } catch (const Error& e) {
                if (e.code() != Errc::FieldConstructionTooLarge) throw;
                out.note(tag + ": div(dx) field beyond the arithmetic limit, skipped");
            }
        }
    out.check(branches.size() == 3, "all three div(dx) branches exercised");
    return out;
}

Outcome automorphism_groups() {
    Outcome out;
    const std::vector<std::pair<unsigned, u64>> rows = {{4, 5}, {5, 2}, {5, 3}, {6, 5}};
    for (auto [n, p] : rows) {
        const std::string tag = "(n=" + str(n) + ", p=" + str(p) + ")";
        try {
            const auto s = HurwitzSpec::make(n, p);
            const Field F = Field::make(p, automorphism_field_degree(s));
            remember(F);
            const auto G = generate_group(s, F);
            out.check(G.closure_size == 3 * s.m(), tag + " order 3(n^2-n+1) = " + str(3 * s.m()));
            const TriForm f = hurwitz_form(F, n);
            bool all = true;
            for (const auto& M : G.elements) all = all && is_automorphism(F, f, M).has_value();
            out.check(all, tag + " every element fixes the form up to a scalar");
            const ProjMap mu_inv = compose(F, G.gens.mu, G.gens.mu);
            out.check(compose(F, compose(F, G.gens.mu, G.gens.sigma), mu_inv) == map_pow(F, G.gens.sigma, n - 1),
                      tag + " mu sigma mu^-1 = sigma^(n-1)");
            out.note(tag + ": order " + str(G.closure_size) + " over " + F.name());
        } catch (const Error& e) {
            out.check(false, tag + " group constructed: " + e.what());
            if ((u64{n} * n - n + 1) % p == 0)
                out.note(tag + ": H_n is singular in this characteristic and no GF(p^k) has a primitive (n^2-n+1)-th "
                               "root of unity, so sigma cannot be built; reported as a failure, not skipped");
        }
    }
    return out;
}

Outcome subgroup_classification() {
    Outcome out;
    for (unsigned n : {4u, 5u, 6u}) {
        const u64 m = u64{n} * n - n + 1;
        const oracle::Oracle O{m, n - 1};
        const auto classes = O.classes();
        const auto mine = subgroup_classes(n);
        const std::string tag = "m=" + str(m);
        std::multiset<std::pair<u64, u64>> a, b;
        for (const auto& c : mine) a.insert({c.order, c.class_size});
        for (const auto& c : classes) b.insert({c.begin()->size(), c.size()});
        out.check(a == b, tag + " (order, class size) multisets agree");
        std::set<std::size_t> hit;
        for (const auto& c : mine) {
            oracle::Oracle::Sub rep;
            for (const auto& e : c.representative) rep.insert({e.i, e.s});
            for (std::size_t k = 0; k < classes.size(); ++k)
                if (classes[k].count(rep)) hit.insert(k);
        }
        out.check(hit.size() == classes.size() && mine.size() == classes.size(),
                  tag + " representatives meet every class once");
        out.note(tag + ": " + str(classes.size()) + " classes");
        if (n == 5) {
            int t = 0, t0 = 0;
            for (const auto& c : mine) {
                t += c.kind == SubgroupKind::T && c.class_size == 7;
                t0 += c.kind == SubgroupKind::T0 && c.class_size == 1;
            }
            out.check(t == 3, "m=21 has three T_i classes of size 7");
            out.check(t0 == 1, "m=21 has a central T_0");
        }
    }
    return out;
}

Outcome fixed_points_and_filtration() {
    Outcome out;
    {
        const auto s = HurwitzSpec::make(4, 3);
        const Field F = Field::make(3, scan_field_degree(s));
        remember(F);
        const auto G = generate_group(s, F);
        const auto pts = enumerate_points(F, hurwitz_form(F, 4));
        const auto r = check_fixed_points(G, NamedElement::Mu, pts);
        const ProjPoint P = ProjPoint::make(F, F.one(), F.one(), F.one());
        out.check(r.scanned == std::vector<ProjPoint>{P}, "n=4 p=3: mu fixes exactly (1:1:1)");
        const auto fl = ramification_filtration(s, F, P, {G.at({0, 1}), G.at({0, 2})});
        out.check(fl.orders == std::vector<u64>{3, 3, 1}, "filtration orders (3, 3, 1) at (1:1:1)");
        const auto b = local_branch(F, hurwitz_form(F, 4), P, 6);
        out.check(b.series.coeffs[2] == F.from_int(2) && b.series.coeffs[2] != F.one(), "a2 = n/(n+1) = 2 != 1 in GF(3)");
        std::ostringstream o;
        o << "n=4 p=3: filtration (";
        for (std::size_t i = 0; i < fl.orders.size(); ++i) o << (i ? ", " : "") << fl.orders[i];
        o << ") over " << F.name();
        out.note(o.str());
    }
    {
        const auto s = HurwitzSpec::make(5, 2);
        const Field F = Field::make(2, scan_field_degree(s));
        remember(F);
        const auto G = generate_group(s, F);
        const auto pts = enumerate_points(F, hurwitz_form(F, 5));
        out.check(check_fixed_points(G, NamedElement::Mu, pts).scanned.empty(), "n=5: mu has no fixed points");
        for (auto e : {NamedElement::TauMu, NamedElement::Tau2Mu}) {
            const auto r = check_fixed_points(G, e, pts);
            out.check(r.agree && r.scanned.size() == 3, "n=5: " + to_string(e) + " fixes (a:1:1), (1:a:1), (1:1:a)");
        }
        out.note("n=5 p=2 over " + F.name() + ": mu none, tau*mu and tau^2*mu three each");
    }
    return out;
}

Outcome genus_tables() {
    Outcome out;
    std::map<std::string, long long> seen5, seen4;
    for (auto [n, p] : std::vector<std::pair<unsigned, u64>>{{4, 3}, {4, 5}, {5, 2}}) {
        const auto s = HurwitzSpec::make(n, p);
        const auto T = genus_table(s);
        remember(T.field);
        const std::string tag = "n=" + str(n) + " p=" + str(p);
        for (const auto& r : T.rows) {
            out.check(r.agree(), tag + " " + r.cls.label + ": closed form " + std::to_string(r.genus_closed) +
                                     " vs Riemann-Hurwitz " + std::to_string(r.genus_rh));
            (n == 5 ? seen5 : seen4)[r.cls.label] = r.genus_rh;
        }
        out.check(T.sigma_fixes_exactly_omega && T.vertex_stabilizers_in_sigma && T.stabilizers_cyclic_part_or_order_3 &&
                      T.rh_full_group_identity && T.fixed_points_rational,
                  tag + " stabilizer structure");
        out.note(tag + ": " + str(T.rows.size()) + " rows over " + T.field.name());
    }
    auto want = [&](std::map<std::string, long long>& m, const std::string& label, long long g) {
        out.check(m.count(label) && m[label] == g, label + " has genus " + std::to_string(g));
    };
    want(seen5, "T_0", 3);
    want(seen5, "T_21", 4);
    want(seen4, "S_13", 0);
    want(seen5, "T_21*S_7", 1);
    want(seen5, "T_7*S_7", 0);
    want(seen5, "T_14*S_7", 0);
    return out;
}

u64 brute_lucas_count(const Field& F, unsigned n) {
    const UniPoly L = lucas_over(F, n);
    std::map<u64, u64> nth;  // value -> number of y with y^n = value
    for (u64 y = 0; y < F.order(); ++y) ++nth[F.pow(Fe{y}, n).code];
    u64 count = nth[1];  // points at infinity: Y^n = X^n, X = 1
    for (u64 x = 0; x < F.order(); ++x) count += nth[poly::eval(F, L, Fe{x}).code];
    return count;
}

Outcome lucas_family() {
    Outcome out;
    u64 ids = 0, ok = 0;
    for (u64 p : {3u, 5u, 7u, 13u, 19u})
        for (unsigned n = 1; n <= 50; ++n) {
            ++ids;
            ok += verify_fundamental_identity(n, p);
        }
    out.check(ok == ids, "x^n L_n(x + 1/x) = x^(2n) + 1");
    out.note("identity: " + str(ok) + "/" + str(ids));
    struct Row {
        unsigned n;
        u64 p;
        unsigned r;
        u64 count;
    };
    for (const Row& row : {Row{3, 5, 1, 36}, Row{4, 7, 1, 92}, Row{5, 3, 2, 190}}) {
        const auto R = check_maximality(row.n, row.p, row.r);
        const Field F = Field::make(row.p, 2 * row.r);
        remember(F);
        const std::string tag = "C_" + str(row.n) + "/" + F.name();
        out.check(R.point_count == row.count && R.hw_bound == row.count, tag + " has " + str(row.count) + " points");
        out.check(brute_lucas_count(F, row.n) == row.count, tag + " brute-force count");
        out.check(R.nonsingular_at_points, tag + " nonsingular");
    }
    const auto a = lucas_flex_census(4, 7, 1);
    const auto b = lucas_flex_census(5, 19, 1);
    const auto h = hurwitz_flex_census(HurwitzSpec::make(4, 5), 4);
    for (const auto* c : {&a, &b, &h}) remember(c->field);
    keep(a.flexes, cn_curve(a.field, 4));
    keep(b.flexes, cn_curve(b.field, 5));
    keep(h.flexes, hurwitz_form(h.field, 4));
    out.check(a.total_flex_count == 12 && a.verdict, "C_4/GF(7^2) has 12 total inflections");
    out.check(b.total_flex_count == 5 && b.verdict, "C_5/GF(19^2) has 5 total inflections");
    out.check(h.total_flex_count == 0, "H_4/GF(5^4) has no total inflections");
    out.note("censuses: " + str(a.total_flex_count) + ", " + str(b.total_flex_count) + ", " + str(h.total_flex_count));
    return out;
}

Fe random_element(const Field& F, std::mt19937_64& rng) {
    return F.element(std::uniform_int_distribution<u64>(0, F.order() - 1)(rng));
}

Outcome property_suites() {
    Outcome out;
    std::mt19937_64 rng(2024);
    for (const auto& [name, F] : g_fields) {
        bool ok = true;
        const unsigned k = F.degree();
        for (int i = 0; i < 10000 && ok; ++i) {
            const Fe a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
            ok = ok && F.add(a, b) == F.add(b, a) && F.mul(a, b) == F.mul(b, a);
            ok = ok && F.add(F.add(a, b), c) == F.add(a, F.add(b, c));
            ok = ok && F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c));
            ok = ok && F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c));
            ok = ok && F.add(a, F.neg(a)) == F.zero() && F.mul(a, F.one()) == a;
            ok = ok && (F.is_zero(a) || F.mul(a, F.inv(a)) == F.one());
            ok = ok && F.frobenius(a) == F.pow(a, F.characteristic());
            ok = ok && F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b));
            ok = ok && F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b));
            ok = ok && F.frobenius(a, k) == a;
        }
        out.check(ok, name + " field axioms and Frobenius");
    }
    out.note(str(g_fields.size()) + " fields, 10^4 samples each");

    std::vector<Field> fields;
    for (const auto& [name, F] : g_fields) fields.push_back(F);
    int hasse_ok = 0;
    for (int t = 0; t < 1000; ++t) {
        const Field& F = fields[t % fields.size()];
        const std::size_t deg = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
        std::vector<Fe> c(deg + 1);
        for (auto& x : c) x = random_element(F, rng);
        const UniPoly f(std::move(c));
        const std::size_t r = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
        const std::size_t s = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
        const UniPoly lhs = poly::hasse_derivative(F, poly::hasse_derivative(F, f, s), r);
        const u64 bin = nt::binomial_mod_p(r + s, r, F.characteristic());
        const UniPoly rhs = poly::scale(F, poly::hasse_derivative(F, f, r + s), F.from_int(static_cast<long long>(bin)));
        hasse_ok += lhs == rhs;
    }
    out.check(hasse_ok == 1000, "D^(r) D^(s) = C(r+s, r) D^(r+s)");
    out.note("Hasse composition: " + std::to_string(hasse_ok) + "/1000");

    // contact order against up to five auxiliary points on the tangent line
    u64 checked = 0, agreed = 0;
    for (const auto& [rec, f] : g_flexes) {
        const Field& F = rec.field;
        const ProjLine T = tangent_line(F, f, rec.point);
        bool same = true;
        int used = 0;
        for (const auto& B : line_points(F, T, 6)) {
            if (B == rec.point) continue;
            ++used;
            same = same && poly::vanishing_order(poly::restrict_to_line(F, f, rec.point, B)) == static_cast<long>(rec.j);
        }
        ++checked;
        agreed += same && used >= 2;
    }
    out.check(checked > 0 && agreed == checked, "contact order independent of the auxiliary point");
    out.note("auxiliary-point independence: " + str(agreed) + "/" + str(checked) + " flex records");
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "Weierstrass cross-validation matrix", 0, weierstrass_matrix},
        {2, "discriminant identity of the cubic", 10, discriminant_identity},
        {3, "fundamental divisors and div(dx)", 10, fundamental_divisors_check},
        {4, "automorphism groups", 30, automorphism_groups},
        {5, "subgroup classification", 30, subgroup_classification},
        {6, "fixed points and wild ramification", 30, fixed_points_and_filtration},
        {7, "quotient genus tables", 60, genus_tables},
        {8, "Lucas family", 120, lucas_family},
        {9, "property suites", 0, property_suites},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const Error& e) {
            o.check(false, "unexpected " + std::string(errc_name(e.code())) + ": " + e.what());
        }
        const double dt = since(t0);
        if (c.budget > 0) o.check(dt < c.budget, "runtime under " + secs(c.budget));
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << secs(dt) << ")\n";
        for (const auto& n : o.notes) std::cout << "       " << n << "\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
