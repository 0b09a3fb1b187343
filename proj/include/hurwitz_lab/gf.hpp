#pragma once

// Finite fields GF(p^k) in the power basis of a canonical irreducible modulus.
//
// An element is stored as its canonical code: the base-p integer whose digits
// are the power-basis coordinates, constant coordinate least significant. The
// code doubles as the canonical element ordering and as the enumeration index.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace hlab::gf {

using nt::u128;
using nt::u64;

inline constexpr unsigned kMaxDegree = 64;

struct FieldCaps {
    u64 arithmetic_cap = ~u64{0};      // p^k <= arithmetic_cap
    u64 enumeration_cap = u64{1} << 24;  // full scans need |F| <= enumeration_cap
    u64 table_cap = u64{1} << 20;      // log/exp tables are built below this size

    /// Defaults, with HURWITZ_LAB_CAP (decimal, or "2^e") overriding the enumeration cap.
    static FieldCaps defaults() {
        FieldCaps caps;
        if (const char* env = std::getenv("HURWITZ_LAB_CAP")) {
            std::string s(env);
            if (auto pos = s.find('^'); pos != std::string::npos) {
                const u64 base = std::stoull(s.substr(0, pos));
                const unsigned e = static_cast<unsigned>(std::stoul(s.substr(pos + 1)));
                if (u64 v = nt::checked_pow(base, e)) caps.enumeration_cap = v;
            } else if (!s.empty()) {
                caps.enumeration_cap = std::stoull(s);
            }
        }
        return caps;
    }
};

struct Fe {
    u64 code = 0;
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

class Field {
   public:
    Field() = default;

    /// Canonical GF(p^k); throws NotPrime or SizeCapExceeded.
    static Field make(u64 p, unsigned k, const FieldCaps& caps = FieldCaps::defaults());

    u64 characteristic() const { return impl_->p; }
    unsigned degree() const { return impl_->k; }
    u64 order() const { return impl_->q; }
    const FieldCaps& caps() const { return impl_->caps; }
    /// Monic modulus, ascending coefficients, length k+1.
    const std::vector<u64>& modulus() const { return impl_->modulus; }
    bool valid() const { return static_cast<bool>(impl_); }
    bool has_tables() const { return !impl_->log.empty(); }
    /// Factorization of q - 1.
    const std::map<u64, unsigned>& unit_group_factors() const { return impl_->unit_factors; }

    bool enumerable() const { return impl_->q <= impl_->caps.enumeration_cap; }
    void require_enumerable(const std::string& what) const {
        if (!enumerable())
            throw Error(Errc::SizeCapExceeded,
                        what + ": |GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k) +
                            ")| exceeds the enumeration cap " + std::to_string(impl_->caps.enumeration_cap));
    }

    friend bool operator==(const Field& a, const Field& b) {
        if (a.impl_ == b.impl_) return true;
        if (!a.impl_ || !b.impl_) return false;
        return a.impl_->p == b.impl_->p && a.impl_->k == b.impl_->k && a.impl_->modulus == b.impl_->modulus;
    }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    /// The class of x in GF(p)[x]/(modulus).
    Fe gen() const {
        if (impl_->k == 1) return Fe{(impl_->p - impl_->modulus[0]) % impl_->p};
        return Fe{impl_->p};
    }
    Fe from_int(long long v) const { return Fe{nt::residue(v, impl_->p)}; }
    Fe element(u64 index) const { return Fe{index}; }
    bool is_zero(Fe a) const { return a.code == 0; }
    bool in_prime_field(Fe a) const { return a.code < impl_->p; }

    std::vector<u64> digits(Fe a) const {
        std::vector<u64> d(impl_->k);
        unpack(a.code, d.data());
        return d;
    }
    Fe from_digits(std::span<const u64> d) const {
        std::array<u64, kMaxDegree> buf{};
        for (std::size_t i = 0; i < d.size() && i < impl_->k; ++i) buf[i] = d[i] % impl_->p;
        return Fe{pack(buf.data())};
    }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, u64 e) const;
    /// a^k for a signed exponent; a must be nonzero when k < 0.
    Fe pow_signed(Fe a, long long e) const {
        if (e >= 0) return pow(a, static_cast<u64>(e));
        return inv(pow(a, static_cast<u64>(-e)));
    }
    Fe frobenius(Fe a, unsigned times = 1) const {
        for (unsigned i = 0; i < times; ++i) a = pow(a, impl_->p);
        return a;
    }
    /// Multiplication that always takes the polynomial route, bypassing tables.
    Fe mul_generic(Fe a, Fe b) const;

    /// Multiplicative order of a nonzero element.
    u64 element_order(Fe a) const;

    std::string to_string(Fe a) const {
        if (impl_->k == 1) return std::to_string(a.code);
        std::string s = "[";
        auto d = digits(a);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(d[i]);
        }
        return s + "]";
    }
    std::string name() const {
        return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + ")";
    }

   private:
    struct Impl {
        u64 p = 0;
        unsigned k = 0;
        u64 q = 0;
        FieldCaps caps;
        std::vector<u64> modulus;
        std::array<u64, kMaxDegree + 1> pw{};
        std::map<u64, unsigned> unit_factors;
        std::vector<std::uint32_t> log;  // log[code], code != 0
        std::vector<u64> exp;             // exp[i] for 0 <= i < 2(q-1)
    };
    std::shared_ptr<const Impl> impl_;

    void unpack(u64 code, u64* d) const {
        const u64 p = impl_->p;
        if (p == 2) {
            for (unsigned i = 0; i < impl_->k; ++i) d[i] = (code >> i) & 1;
            return;
        }
        for (unsigned i = 0; i < impl_->k; ++i) {
            d[i] = code % p;
            code /= p;
        }
    }
    u64 pack(const u64* d) const {
        if (impl_->p == 2) {
            u64 c = 0;
            for (unsigned i = 0; i < impl_->k; ++i) c |= (d[i] & 1) << i;
            return c;
        }
        u64 c = 0;
        for (unsigned i = impl_->k; i-- > 0;) c = c * impl_->p + d[i];
        return c;
    }

    static bool irreducible_over_prime(const std::vector<u64>& f, u64 p);
    static std::vector<u64> canonical_modulus(u64 p, unsigned k);
};

// ---------------------------------------------------------------------------
// Dense polynomials over GF(p), used only to find and test moduli.

namespace detail {

using Zp = std::vector<u64>;

inline void zp_trim(Zp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Zp zp_mod(Zp a, const Zp& m, u64 p) {
    zp_trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 inv_lead = nt::powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        const u64 c = nt::mulmod(a.back(), inv_lead, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + p - nt::mulmod(c, m[i], p)) % p;
        zp_trim(a);
    }
    return a;
}

inline Zp zp_mulmod(const Zp& a, const Zp& b, const Zp& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    Zp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + nt::mulmod(a[i], b[j], p)) % p;
    return zp_mod(std::move(r), m, p);
}

inline Zp zp_powmod(Zp base, u64 e, const Zp& m, u64 p) {
    Zp r{1};
    base = zp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = zp_mulmod(r, base, m, p);
        base = zp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return zp_mod(std::move(r), m, p);
}

inline Zp zp_gcd(Zp a, Zp b, u64 p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        Zp r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

inline bool Field::irreducible_over_prime(const std::vector<u64>& f, u64 p) {
    using namespace detail;
    const std::size_t k = f.size() - 1;
    if (k == 1) return true;
    if (f[0] == 0) return false;
    // gcd(f, x^{p^i} - x) == 1 for all i <= k/2
    Zp xp{0, 1};
    for (std::size_t i = 1; i <= k / 2; ++i) {
        xp = zp_powmod(xp, p, f, p);
        Zp d = xp;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        zp_trim(d);
        if (d.empty()) return false;
        if (zp_gcd(d, f, p).size() > 1) return false;
    }
    return true;
}

inline std::vector<u64> Field::canonical_modulus(u64 p, unsigned k) {
    std::vector<u64> f(k + 1, 0);
    f[k] = 1;
    if (k == 1) return f;  // the modulus x
    // Lexicographic over (c0, c1, ..., c_{k-1}) with c0 most significant.
    const u64 total = nt::checked_pow(p, k);
    for (u64 idx = total / p; idx < total; ++idx) {
        u64 v = idx;
        for (unsigned i = k; i-- > 0;) {
            f[i] = v % p;
            v /= p;
        }
        if (irreducible_over_prime(f, p)) return f;
    }
    throw Error(Errc::InvariantViolated, "no irreducible polynomial found");
}

inline Field Field::make(u64 p, unsigned k, const FieldCaps& caps) {
    if (!nt::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (k == 0) throw Error(Errc::PreconditionViolated, "extension degree must be >= 1");
    if (p >= (u64{1} << 31)) throw Error(Errc::SizeCapExceeded, "characteristic must be below 2^31");
    const u64 q = nt::checked_pow(p, k);
    if (q == 0 || k > kMaxDegree || q > caps.arithmetic_cap)
        throw Error(Errc::SizeCapExceeded,
                    "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds the arithmetic cap");
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->k = k;
    impl->q = q;
    impl->caps = caps;
    impl->modulus = canonical_modulus(p, k);
    impl->pw[0] = 1;
    for (unsigned i = 1; i <= k; ++i) impl->pw[i] = impl->pw[i - 1] * p;
    impl->unit_factors = q > 2 ? nt::factorize(q - 1) : std::map<u64, unsigned>{};

    Field f;
    f.impl_ = impl;
    if (q <= caps.table_cap && q > 2) {
        // least primitive element, then discrete log tables
        u64 g = 1;
        for (u64 c = 2; c < q; ++c) {
            if (f.element_order(Fe{c}) == q - 1) {
                g = c;
                break;
            }
        }
        impl->exp.resize(2 * (q - 1));
        impl->log.assign(q, 0);
        u64 cur = 1;
        for (u64 i = 0; i < q - 1; ++i) {
            impl->exp[i] = cur;
            impl->exp[i + q - 1] = cur;
            impl->log[cur] = static_cast<std::uint32_t>(i);
            cur = f.mul_generic(Fe{cur}, Fe{g}).code;
        }
    }
    return f;
}

inline Fe Field::add(Fe a, Fe b) const {
    const u64 p = impl_->p;
    if (impl_->k == 1) return Fe{(a.code + b.code) % p};
    if (p == 2) return Fe{a.code ^ b.code};
    std::array<u64, kMaxDegree> da, db;
    unpack(a.code, da.data());
    unpack(b.code, db.data());
    for (unsigned i = 0; i < impl_->k; ++i) {
        da[i] += db[i];
        if (da[i] >= p) da[i] -= p;
    }
    return Fe{pack(da.data())};
}

inline Fe Field::neg(Fe a) const {
    const u64 p = impl_->p;
    if (p == 2 || a.code == 0) return a;
    if (impl_->k == 1) return Fe{p - a.code};
    std::array<u64, kMaxDegree> da;
    unpack(a.code, da.data());
    for (unsigned i = 0; i < impl_->k; ++i) da[i] = da[i] ? p - da[i] : 0;
    return Fe{pack(da.data())};
}

inline Fe Field::sub(Fe a, Fe b) const { return add(a, neg(b)); }

inline Fe Field::mul_generic(Fe a, Fe b) const {
    const u64 p = impl_->p;
    const unsigned k = impl_->k;
    if (a.code == 0 || b.code == 0) return Fe{0};
    if (k == 1) return Fe{nt::mulmod(a.code, b.code, p)};
    const auto& m = impl_->modulus;
    if (p == 2) {
        // carry-less product, then bitwise reduction by the modulus
        u128 prod = 0;
        u64 bb = b.code;
        for (unsigned i = 0; bb; ++i, bb >>= 1)
            if (bb & 1) prod ^= static_cast<u128>(a.code) << i;
        u128 mod_bits = 0;
        for (unsigned i = 0; i <= k; ++i)
            if (m[i]) mod_bits |= static_cast<u128>(1) << i;
        for (unsigned d = 2 * k - 2; d >= k; --d)
            if ((prod >> d) & 1) prod ^= mod_bits << (d - k);
        return Fe{static_cast<u64>(prod)};
    }
    std::array<u64, kMaxDegree> da, db;
    std::array<u64, 2 * kMaxDegree> r{};
    unpack(a.code, da.data());
    unpack(b.code, db.data());
    const bool small = p < (u64{1} << 26);
    for (unsigned i = 0; i < k; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < k; ++j) {
            if (small)
                r[i + j] += da[i] * db[j];
            else
                r[i + j] = (r[i + j] + da[i] * db[j]) % p;
        }
    }
    for (unsigned i = 0; i < 2 * k - 1; ++i) r[i] %= p;
    for (unsigned d = 2 * k - 2; d >= k; --d) {
        const u64 c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (unsigned j = 0; j < k; ++j)
            if (m[j]) r[d - k + j] = (r[d - k + j] + (p - m[j]) * c) % p;
    }
    return Fe{pack(r.data())};
}

inline Fe Field::mul(Fe a, Fe b) const {
    if (a.code == 0 || b.code == 0) return Fe{0};
    if (!impl_->log.empty()) return Fe{impl_->exp[impl_->log[a.code] + impl_->log[b.code]]};
    return mul_generic(a, b);
}

inline Fe Field::pow(Fe a, u64 e) const {
    if (e == 0) return one();
    if (a.code == 0) return zero();
    if (!impl_->log.empty()) {
        const u64 n = impl_->q - 1;
        const u64 l = static_cast<u64>(static_cast<u128>(impl_->log[a.code]) * (e % n) % n);
        return Fe{impl_->exp[l]};
    }
    Fe r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

inline Fe Field::inv(Fe a) const {
    if (a.code == 0) throw Error(Errc::PreconditionViolated, "inverse of zero");
    if (!impl_->log.empty()) {
        const u64 n = impl_->q - 1;
        return Fe{impl_->exp[(n - impl_->log[a.code]) % n]};
    }
    return pow(a, impl_->q - 2);
}

inline u64 Field::element_order(Fe a) const {
    if (a.code == 0) throw Error(Errc::PreconditionViolated, "order of zero");
    u64 order = impl_->q - 1;
    for (auto [ell, e] : impl_->unit_factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (pow(a, order / ell) == one())
                order /= ell;
            else
                break;
        }
    }
    return order;
}

// ---------------------------------------------------------------------------

struct RootsOfUnity {
    Fe primitive;
    std::vector<Fe> all;  // canonical order
};

/// All m-th roots of unity in F plus the least primitive one; throws OrderNotDividing.
inline RootsOfUnity nth_roots_of_unity(const Field& F, u64 m) {
    const u64 n = F.order() - 1;
    if (m == 0 || n % m != 0)
        throw Error(Errc::OrderNotDividing,
                    std::to_string(m) + " does not divide |" + F.name() + "^*| = " + std::to_string(n));
    const auto primes = nt::prime_divisors(m);
    RootsOfUnity out;
    out.primitive = F.one();
    if (m > 1) {
        bool found = false;
        for (u64 c = 1; c < F.order() && !found; ++c) {
            const Fe z = F.pow(F.element(c), n / m);
            bool prim = true;
            for (u64 ell : primes)
                if (F.pow(z, m / ell) == F.one()) prim = false;
            if (prim) {
                out.primitive = z;
                found = true;
            }
        }
    }
    Fe cur = F.one();
    for (u64 i = 0; i < m; ++i) {
        out.all.push_back(cur);
        cur = F.mul(cur, out.primitive);
    }
    std::sort(out.all.begin(), out.all.end());
    return out;
}

namespace detail {

// x with x == r_i mod m_i, moduli pairwise coprime
inline u64 crt(const std::vector<std::pair<u64, u64>>& parts) {
    u128 x = 0, mod = 1;
    for (auto [r, m] : parts) {
        const u64 diff = (r + m - static_cast<u64>(x % m)) % m;
        const u64 s = nt::mulmod(diff, nt::inv_mod(static_cast<u64>(mod % m), m), m);
        x += mod * s;
        mod *= m;
    }
    return static_cast<u64>(x % mod);
}

}  // namespace detail

/// One solution of t^m = c with m | q-1, or nullopt when c is not an m-th power.
///
/// The unit group splits as (order L part, m-smooth) x (order M part, prime to m).
/// On the M part the m-th root is unique; on the L part it is read off from
/// a Pohlig-Hellman logarithm relative to a generator of that subgroup.
inline std::optional<Fe> nth_root(const Field& F, Fe c, u64 m) {
    const u64 n = F.order() - 1;
    if (m == 0 || n % m != 0)
        throw Error(Errc::OrderNotDividing, std::to_string(m) + " does not divide " + std::to_string(n));
    if (c == F.zero()) return F.zero();
    if (m == 1) return c;
    if (F.pow(c, n / m) != F.one()) return std::nullopt;

    u64 L = 1;
    std::vector<std::pair<u64, unsigned>> lparts;
    for (auto [ell, e] : F.unit_group_factors()) {
        if (m % ell == 0) {
            lparts.emplace_back(ell, e);
            for (unsigned i = 0; i < e; ++i) L *= ell;
        }
    }
    const u64 M = n / L;

    Fe root_m = F.one();
    Fe y_l = c;
    if (M > 1) {
        // a*M + b*L == 1, so c = c^(aM) * c^(bL)
        const u64 ea = static_cast<u64>(static_cast<u128>(nt::inv_mod(M % L, L)) * M % n);
        const u64 eb = (1 + n - ea) % n;
        y_l = F.pow(c, ea);
        root_m = F.pow(F.pow(c, eb), nt::inv_mod(m % M, M));
    }

    // generator of the order-L subgroup
    Fe h = F.one();
    for (u64 idx = 2; idx < F.order(); ++idx) {
        const Fe cand = F.pow(F.element(idx), M);
        bool full = true;
        for (auto [ell, e] : lparts)
            if (F.pow(cand, L / ell) == F.one()) full = false;
        if (full) {
            h = cand;
            break;
        }
    }

    std::vector<std::pair<u64, u64>> residues;
    for (auto [ell, s] : lparts) {
        u64 ls = 1;
        for (unsigned i = 0; i < s; ++i) ls *= ell;
        const Fe hl = F.pow(h, L / ls);
        const Fe yl = F.pow(y_l, L / ls);
        const Fe gamma = F.pow(hl, ls / ell);
        const Fe hl_inv = F.inv(hl);
        u64 x = 0, ell_i = 1;
        for (unsigned i = 0; i < s; ++i) {
            const Fe z = F.pow(F.mul(yl, F.pow(hl_inv, x)), ls / ell / ell_i);
            u64 d = 0;
            Fe acc = F.one();
            while (acc != z) {
                acc = F.mul(acc, gamma);
                if (++d >= ell) throw Error(Errc::InvariantViolated, "discrete log digit not found");
            }
            x += d * ell_i;
            ell_i *= ell;
        }
        residues.emplace_back(x, ls);
    }
    // m | L because every prime of m divides q - 1 to at least its power in m
    const u64 e = L > 1 ? detail::crt(residues) : 0;
    if (e % m != 0) return std::nullopt;
    const u64 el = e / m;
    const Fe root_l = F.pow(h, el);
    const Fe t = F.mul(root_l, root_m);
    require(F.pow(t, m) == c, "nth_root: t^m == c");
    return t;
}

}  // namespace hlab::gf
