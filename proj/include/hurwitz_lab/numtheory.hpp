#pragma once

// Integer helpers on 64-bit values: primality, factoring, modular powers,
// multiplicative orders and binomials mod p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace hlab::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for all 64-bit n
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (u64 sp = 2; sp < 1000; ++sp) {
        if (n % sp == 0) {
            while (n % sp == 0) {
                ++out[sp];
                n /= sp;
            }
            factor_into(n, out);
            return;
        }
    }
    u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization as an ordered prime -> exponent map.
inline std::map<u64, unsigned> factorize(u64 n) {
    std::map<u64, unsigned> out;
    detail::factor_into(n, out);
    return out;
}

inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto [q, e] : factorize(n)) out.push_back(q);
    return out;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [q, e] : factorize(n)) {
        const std::size_t base = out.size();
        u64 pw = 1;
        for (unsigned i = 0; i < e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Least s >= 1 with a^s == 1 (mod m). Requires gcd(a, m) == 1 and m >= 2.
inline u64 multiplicative_order_mod(u64 a, u64 m) {
    if (m == 1) return 1;
    u64 phi = m;
    for (auto [q, e] : factorize(m)) phi = phi / q * (q - 1);
    u64 order = phi;
    for (auto [q, e] : factorize(phi)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, order / q, m) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

/// Largest r with p^r | n, for n != 0.
inline unsigned valuation(u64 n, u64 p) {
    unsigned r = 0;
    while (n % p == 0) {
        n /= p;
        ++r;
    }
    return r;
}

/// True when n = p^r for some r >= 1.
inline bool is_power_of(u64 n, u64 p) {
    if (n < p) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

/// p^k, or 0 when it does not fit in 64 bits.
inline u64 checked_pow(u64 p, unsigned k) {
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= p;
        if (r > static_cast<u128>(~u64{0})) return 0;
    }
    return static_cast<u64>(r);
}

/// C(m, r) mod p through the base-p digits of m and r (Lucas).
inline u64 binomial_mod_p(u64 m, u64 r, u64 p) {
    if (r > m) return 0;
    u64 result = 1;
    while (m > 0 || r > 0) {
        const u64 mi = m % p, ri = r % p;
        if (ri > mi) return 0;
        // small binomial C(mi, ri) mod p via multiplicative formula
        u64 num = 1, den = 1;
        for (u64 i = 0; i < ri; ++i) {
            num = mulmod(num, (mi - i) % p, p);
            den = mulmod(den, (i + 1) % p, p);
        }
        result = mulmod(result, mulmod(num, powmod(den, p - 2, p), p), p);
        m /= p;
        r /= p;
    }
    return result;
}

/// Inverse of a modulo m (gcd(a, m) == 1, m >= 1).
inline u64 inv_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    using i128 = __int128;
    i128 old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        const i128 q = old_r / r;
        i128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    i128 res = old_s % static_cast<i128>(m);
    if (res < 0) res += m;
    return static_cast<u64>(res);
}

/// Residue of a signed integer mod p.
inline u64 residue(long long v, u64 p) {
    const long long pm = static_cast<long long>(p);
    long long r = v % pm;
    if (r < 0) r += pm;
    return static_cast<u64>(r);
}

}  // namespace hlab::nt
