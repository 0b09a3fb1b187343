#include <gtest/gtest.h>

#include <hurwitz_lab/numtheory.hpp>

using namespace hlab::nt;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(NumTheory, PrimalityAgreesWithTrialDivision) {
    for (u64 n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
    EXPECT_TRUE(is_prime(2305843009213693951ull));   // 2^61 - 1
    EXPECT_FALSE(is_prime(3215031751ull));           // strong pseudoprime to 2,3,5,7
    EXPECT_FALSE(is_prime(4611686014132420609ull));  // (2^31-1)^2
}

TEST(NumTheory, FactorizationMultipliesBack) {
    const u64 samples[] = {1, 2, 12, 1000000007ull * 998244353ull, 19ull * 19 * 19 * 19 * 19 * 19 * 19 - 1,
                           (u64{1} << 42) - 1, 1853020188851840ull};
    for (u64 n : samples) {
        u64 prod = 1;
        for (auto [p, e] : factorize(n)) {
            EXPECT_TRUE(trial_prime(p) || is_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(NumTheory, DivisorsAreSortedAndComplete) {
    for (u64 n = 1; n < 500; ++n) {
        std::vector<u64> brute;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) brute.push_back(d);
        EXPECT_EQ(divisors(n), brute);
    }
}

TEST(NumTheory, MultiplicativeOrderAgreesWithIteration) {
    for (u64 m = 2; m < 200; ++m)
        for (u64 a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            u64 k = 1, x = a % m;
            while (x != 1) {
                x = x * a % m;
                ++k;
            }
            EXPECT_EQ(multiplicative_order_mod(a, m), k);
        }
}

TEST(NumTheory, FrozenOrders) {
    EXPECT_EQ(multiplicative_order_mod(3, 31), 30u);
    EXPECT_EQ(multiplicative_order_mod(5, 13), 4u);
    EXPECT_EQ(multiplicative_order_mod(19, 93), 15u);
    EXPECT_EQ(multiplicative_order_mod(2, 301), 42u);
    EXPECT_EQ(multiplicative_order_mod(2, 21), 6u);
}

TEST(NumTheory, BinomialModPMatchesPascal) {
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        std::vector<std::vector<u64>> row(60, std::vector<u64>(60, 0));
        for (u64 m = 0; m < 60; ++m) {
            row[m][0] = 1;
            for (u64 r = 1; r <= m; ++r) row[m][r] = (row[m - 1][r - 1] + row[m - 1][r]) % p;
            for (u64 r = 0; r < 60; ++r) EXPECT_EQ(binomial_mod_p(m, r, p), row[m][r]) << m << " " << r << " " << p;
        }
    }
}

TEST(NumTheory, InverseAndResidue) {
    const u64 big = 2213314919066160ull;  // 19^12 - 1
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
        if (std::gcd(a, big) == 1) {
            EXPECT_EQ(mulmod(a, inv_mod(a, big), big), 1u);
        }
    EXPECT_EQ(residue(-1, 7), 6u);
    EXPECT_EQ(residue(-15, 5), 0u);
    EXPECT_EQ(valuation(48, 2), 4u);
    EXPECT_TRUE(is_power_of(243, 3));
    EXPECT_FALSE(is_power_of(6, 2));
    EXPECT_EQ(checked_pow(2, 64), 0u);
    EXPECT_EQ(checked_pow(19, 15), 15181127029874798299ull);
}
