#include "doctest.h"

#include <random>

#include "cqlab/ring.hpp"
#include "oracles.hpp"

using namespace cqlab;

namespace {

template <class T>
QuadInt<T> random_element(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    return QuadInt<T>(dist(rng), dist(rng));
}

template <class T>
bool is_associate(const QuadInt<T>& x, const QuadInt<T>& y) {
    for (const auto& u : QuadInt<T>::units())
        if (u * x == y) return true;
    return false;
}

oracle::Small small(const EisensteinInt& x) { return {x.a().get_si(), x.b().get_si()}; }
oracle::Small small(const GaussianInt& x) { return {x.a().get_si(), x.b().get_si()}; }

}  // namespace

TEST_CASE("norm on small elements") {
    CHECK(EisensteinInt(1L, 0L).norm() == 1);
    CHECK(EisensteinInt(3L, 1L).norm() == 7);
    CHECK(GaussianInt(2L, 1L).norm() == 5);
    CHECK(EisensteinInt(0L, 0L).norm() == 0);
}

TEST_CASE("w^2 = -1 - w and i^2 = -1") {
    const EisensteinInt w(0L, 1L);
    CHECK(w * w == EisensteinInt(-1L, -1L));
    CHECK(w * w * w == EisensteinInt(1L, 0L));
    const GaussianInt i(0L, 1L);
    CHECK(i * i == GaussianInt(-1L, 0L));
}

TEST_CASE_TEMPLATE("norm is multiplicative and nonnegative", T, EisensteinTraits, GaussianTraits) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10000; ++t) {
        const auto x = random_element<T>(rng, 1000000);
        const auto y = random_element<T>(rng, 1000000);
        REQUIRE((x * y).norm() == x.norm() * y.norm());
        REQUIRE(x.norm() >= 0);
        REQUIRE((x.norm() == 0) == x.is_zero());
    }
}

TEST_CASE_TEMPLATE("multiplication is commutative and associative", T, EisensteinTraits, GaussianTraits) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 1000; ++t) {
        const auto x = random_element<T>(rng, 5000);
        const auto y = random_element<T>(rng, 5000);
        const auto z = random_element<T>(rng, 5000);
        REQUIRE(x * y == y * x);
        REQUIRE((x * y) * z == x * (y * z));
    }
}

TEST_CASE("primary_normalize examples") {
    auto [u, y] = primary_normalize(EisensteinInt(1L, 0L));
    CHECK(u == EisensteinInt(1L, 0L));
    CHECK(y == EisensteinInt(1L, 0L));

    const EisensteinInt x(3L, 1L);
    int passing = 0;
    EisensteinInt expected;
    for (const auto& unit : EisensteinInt::units()) {
        const auto candidate = unit * x;
        if (oracle::primary_by_definition(small(candidate), true)) {
            ++passing;
            expected = candidate;
        }
    }
    CHECK(passing == 1);
    CHECK(primary_normalize(x).second == expected);
    CHECK(primary_normalize(x).first * x == expected);
}

TEST_CASE_TEMPLATE("exactly one primary associate", T, EisensteinTraits, GaussianTraits) {
    const bool cubic = T::family == Family::Cubic;
    std::mt19937_64 rng(13);
    int tested = 0;
    while (tested < 1000) {
        const auto x = random_element<T>(rng, 10000);
        const Integer n = x.norm();
        if (n == 0 || n % static_cast<unsigned long>(ramified_prime(T::family)) == 0) {
            if (n != 0) CHECK_THROWS_AS(primary_normalize(x), NotCoprimeToRamified);
            continue;
        }
        ++tested;
        int passing = 0;
        QuadInt<T> found;
        for (const auto& u : QuadInt<T>::units()) {
            if (oracle::primary_by_definition(small(u * x), cubic)) {
                ++passing;
                found = u * x;
            }
        }
        REQUIRE(passing == 1);
        const auto [unit, y] = primary_normalize(x);
        REQUIRE(y == found);
        REQUIRE(unit * x == y);
        REQUIRE(is_primary(y));
    }
}

TEST_CASE("primary_normalize rejects the ramified prime") {
    CHECK_THROWS_AS(primary_normalize(EisensteinInt(2L, 1L)), NotCoprimeToRamified);  // norm 3
    CHECK_THROWS_AS(primary_normalize(GaussianInt(1L, 1L)), NotCoprimeToRamified);    // norm 2
    CHECK_THROWS_AS(primary_normalize(GaussianInt(0L, 0L)), NotCoprimeToRamified);
}

TEST_CASE("round_div ties toward zero") {
    CHECK(round_div(Integer(5), Integer(2)) == 2);
    CHECK(round_div(Integer(-5), Integer(2)) == -2);
    CHECK(round_div(Integer(7), Integer(2)) == 3);
    CHECK(round_div(Integer(-7), Integer(2)) == -3);
    CHECK(round_div(Integer(8), Integer(3)) == 3);
    CHECK(round_div(Integer(-8), Integer(3)) == -3);
    CHECK(round_div(Integer(4), Integer(3)) == 1);
}

TEST_CASE_TEMPLATE("Euclidean division shrinks the norm", T, EisensteinTraits, GaussianTraits) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 2000; ++t) {
        const auto x = random_element<T>(rng, 100000);
        const auto y = random_element<T>(rng, 1000);
        if (y.is_zero()) continue;
        const auto [q, r] = divmod(x, y);
        REQUIRE(q * y + r == x);
        REQUIRE(r.norm() < y.norm());
    }
}

TEST_CASE("split_prime small cases against exhaustive search") {
    const auto [p1, p2] = split_prime(Family::Cubic, Integer(7));
    for (const auto& kp : {p1, p2}) {
        const long a = kp.gen_a.get_si(), b = kp.gen_b.get_si();
        CHECK(a * a - a * b + b * b == 7);
        CHECK(oracle::primary_by_definition({a, b}, true));
    }
    CHECK(p1.eisenstein().norm() * p2.eisenstein().norm() == 49);
    CHECK_FALSE(p1 == p2);

    // All primary elements of norm 7 by exhaustive search.
    std::vector<std::pair<long, long>> found;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b)
            if (a * a - a * b + b * b == 7 && oracle::primary_by_definition({a, b}, true)) found.push_back({a, b});
    CHECK(found.size() == 2);
    for (auto [a, b] : found) {
        const bool match = (p1.gen_a == a && p1.gen_b == b) || (p2.gen_a == a && p2.gen_b == b);
        CHECK(match);
    }

    const auto [g1, g2] = split_prime(Family::Quartic, Integer(5));
    std::vector<std::pair<long, long>> gfound;
    for (long a = -5; a <= 5; ++a)
        for (long b = -5; b <= 5; ++b)
            if (a * a + b * b == 5 && oracle::primary_by_definition({a, b}, false)) gfound.push_back({a, b});
    CHECK(gfound.size() == 2);
    for (const auto& kp : {g1, g2}) {
        bool match = false;
        for (auto [a, b] : gfound) match = match || (kp.gen_a == a && kp.gen_b == b);
        CHECK(match);
    }
}

TEST_CASE("split_prime rejects non-split input") {
    CHECK_THROWS_AS(split_prime(Family::Cubic, Integer(11)), NotSplitPrime);
    CHECK_THROWS_AS(split_prime(Family::Cubic, Integer(3)), NotSplitPrime);
    CHECK_THROWS_AS(split_prime(Family::Quartic, Integer(7)), NotSplitPrime);
    CHECK_THROWS_AS(split_prime(Family::Quartic, Integer(2)), NotSplitPrime);
    CHECK_THROWS_AS(split_prime(Family::Cubic, Integer(91)), NotSplitPrime);
}

TEST_CASE("split_prime for every split p below 10^5") {
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        const u64 d = static_cast<u64>(character_order(fam));
        for (u64 p : primes_up_to(100000)) {
            if (p % d != 1) continue;
            const auto [x, y] = split_prime(fam, Integer(static_cast<unsigned long>(p)));
            for (const auto& kp : {x, y}) {
                const long a = kp.gen_a.get_si(), b = kp.gen_b.get_si();
                const bool cubic = fam == Family::Cubic;
                REQUIRE(oracle::norm({a, b}, cubic) == static_cast<long>(p));
                REQUIRE(oracle::primary_by_definition({a, b}, cubic));
                REQUIRE(kp.p == p);
                const u64 r = kp.omega_image;
                REQUIRE(r < p);
                if (cubic) {
                    REQUIRE(powmod(r, 3, p) == 1);
                    REQUIRE(r != 1);
                } else {
                    REQUIRE(mulmod(r, r, p) == p - 1);
                }
                // w - r (resp. i - r) is divisible by the prime.
                REQUIRE(oracle::divisible({-static_cast<long>(r), 1}, {a, b}, cubic));
            }
            REQUIRE(x.conjugate() == y);
            REQUIRE(lex_less(x.eisenstein(), y.eisenstein()) == (cmp(x.gen_a, y.gen_a) < 0 || (x.gen_a == y.gen_a && x.gen_b < y.gen_b)));
        }
    }
}

TEST_CASE_TEMPLATE("gcd_k basics", T, EisensteinTraits, GaussianTraits) {
    std::mt19937_64 rng(15);
    CHECK_THROWS_AS(gcd_k(QuadInt<T>(0L, 0L), QuadInt<T>(0L, 0L)), BothZero);
    for (int t = 0; t < 500; ++t) {
        const auto x = random_element<T>(rng, 1000);
        const auto y = random_element<T>(rng, 1000);
        if (x.is_zero() || y.is_zero()) continue;
        REQUIRE(is_associate(x, gcd_k(x, QuadInt<T>(0L, 0L))));
        REQUIRE(is_associate(x, gcd_k(x, x * y)));
        const auto g = gcd_k(x, y);
        REQUIRE(divides(g, x));
        REQUIRE(divides(g, y));
    }
}

TEST_CASE("gcd of conjugate primes is a unit") {
    for (Family fam : {Family::Cubic, Family::Quartic}) {
        const u64 d = static_cast<u64>(character_order(fam));
        for (u64 p : primes_up_to(3000)) {
            if (p % d != 1) continue;
            const auto [x, y] = split_prime(fam, Integer(static_cast<unsigned long>(p)));
            if (fam == Family::Cubic) {
                REQUIRE(gcd_k(x.eisenstein(), y.eisenstein()).norm() == 1);
            } else {
                REQUIRE(gcd_k(x.gaussian(), y.gaussian()).norm() == 1);
            }
        }
    }
}

TEST_CASE("make_kprime validates its input") {
    CHECK_THROWS_AS(make_kprime(Family::Cubic, Integer(4), Integer(0)), NotSplitPrime);   // norm 16
    CHECK_THROWS_AS(make_kprime(Family::Cubic, Integer(-1), Integer(-3)), NotCoprimeToRamified);  // norm 7, not primary
}
