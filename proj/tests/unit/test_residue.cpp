#include "doctest.h"

#include <random>

#include "cqlab/residue.hpp"
#include "oracles.hpp"

using namespace cqlab;

namespace {

std::vector<KPrime> primes_below(Family fam, u64 bound) {
    std::vector<KPrime> out;
    const u64 d = static_cast<u64>(character_order(fam));
    for (u64 p : primes_up_to(bound)) {
        if (p % d != 1) continue;
        auto [x, y] = split_prime(fam, Integer(static_cast<unsigned long>(p)));
        out.push_back(x);
        out.push_back(y);
    }
    return out;
}

}  // namespace

TEST_CASE("symbol of 1 mod p is trivial, of p is zero") {
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        for (const auto& kp : primes_below(fam, 200)) {
            const i64 p = static_cast<i64>(kp.p);
            CHECK(prime_symbol(1, kp).exponent() == 0);
            CHECK(prime_symbol(1 + 5 * p, kp).exponent() == 0);
            CHECK(prime_symbol(p, kp).is_zero());
            CHECK(prime_symbol(-3 * p, kp).is_zero());
        }
    }
    const auto [w7, w7b] = split_prime(Family::Cubic, Integer(7));
    CHECK(prime_symbol(7, w7).is_zero());
}

TEST_CASE("symbol of 2 above 7 matches root matching") {
    const auto [x, y] = split_prime(Family::Cubic, Integer(7));
    for (const auto& kp : {x, y}) {
        // 2^2 = 4 mod 7 is a primitive cube root of unity.
        const u64 r = kp.omega_image;
        const int expected = (4 == r) ? 1 : (4 == mulmod(r, r, 7) ? 2 : -1);
        REQUIRE(expected > 0);
        CHECK(prime_symbol(2, kp).exponent() == expected);
        CHECK(prime_symbol(2, kp).exponent() ==
              oracle::symbol_exponent(2, {kp.gen_a.get_si(), kp.gen_b.get_si()}, true));
    }
}

TEST_CASE("prime_symbol equals the two-coordinate oracle for p <= 1000, m <= 200") {
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        const bool cubic = fam == Family::Cubic;
        for (const auto& kp : primes_below(fam, 1000)) {
            const oracle::Small pi{kp.gen_a.get_si(), kp.gen_b.get_si()};
            for (i64 m = 1; m <= 200; ++m) {
                REQUIRE(prime_symbol(m, kp).exponent() == oracle::symbol_exponent(m, pi, cubic));
            }
        }
    }
}

TEST_CASE("symbol properties: periodicity, order, conjugation") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<i64> dist(-1000000, 1000000);
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        const int d = character_order(fam);
        for (const auto& kp : primes_below(fam, 2000)) {
            const KPrime conj = kp.conjugate();
            for (int t = 0; t < 20; ++t) {
                const i64 m = dist(rng);
                const i64 k = dist(rng) % 50;
                const SymbolValue s = prime_symbol(m, kp);
                REQUIRE(s == prime_symbol(m + k * static_cast<i64>(kp.p), kp));
                REQUIRE(s == prime_symbol(Integer(static_cast<long>(m)), kp));
                if (!s.is_zero()) REQUIRE(s.pow(d).exponent() == 0);
                REQUIRE(prime_symbol(m, conj) == s.conj());
            }
        }
    }
}

TEST_CASE("composite symbol") {
    const auto [a, abar] = split_prime(Family::Cubic, Integer(7));
    const auto [b, bbar] = split_prime(Family::Cubic, Integer(13));
    for (i64 m = -50; m <= 50; ++m) {
        CHECK(composite_symbol(m, Family::Cubic, {}).exponent() == 0);
        CHECK(composite_symbol(m, Family::Cubic, {{a, 1}, {b, 1}}) == prime_symbol(m, a) * prime_symbol(m, b));
        CHECK(composite_symbol(m, Family::Cubic, {{a, 2}, {bbar, 1}}) ==
              prime_symbol(m, a).pow(2) * prime_symbol(m, bbar));
        CHECK(composite_symbol(m, Family::Cubic, {{a, 1}, {b, 1}}).is_zero() == (m % 7 == 0 || m % 13 == 0));
    }
}

TEST_CASE("complete multiplicativity in m") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<i64> dist(-100000, 100000);
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        const auto primes = primes_below(fam, 300);
        std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
        for (int t = 0; t < 1000; ++t) {
            const std::vector<std::pair<KPrime, int>> factors{{primes[pick(rng)], 1}, {primes[pick(rng)], 2}};
            const i64 m1 = dist(rng), m2 = dist(rng);
            REQUIRE(composite_symbol(m1 * m2, fam, factors) ==
                    composite_symbol(m1, fam, factors) * composite_symbol(m2, fam, factors));
        }
    }
}

TEST_CASE("SymbolValue group law") {
    for (int d : {3, 4}) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                CHECK((SymbolValue::root(d, i) * SymbolValue::root(d, j)).exponent() == (i + j) % d);
            }
            CHECK((SymbolValue::root(d, i) * SymbolValue::zero(d)).is_zero());
            const auto z = SymbolValue::root(d, i).to_complex();
            CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
        }
    }
}
