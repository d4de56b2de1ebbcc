#pragma once

// Exact arithmetic in the Eisenstein integers Z[w] (w = exp(2 pi i / 3)) and
// the Gaussian integers Z[i], in the basis {1, w} resp. {1, i}.

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "cqlab/arith.hpp"
#include "cqlab/errors.hpp"

namespace cqlab {

using Integer = mpz_class;

enum class Family { Cubic, Quartic };

// Order of the characters in the family: 3 for cubic, 4 for quartic.
constexpr int character_order(Family f) { return f == Family::Cubic ? 3 : 4; }

// The rational prime below the ramified prime of O_K: 3 for Z[w], 2 for Z[i].
constexpr u64 ramified_prime(Family f) { return f == Family::Cubic ? 3 : 2; }

// |D_K|: 3 for Q(w), 4 for Q(i).
constexpr u64 abs_discriminant(Family f) { return f == Family::Cubic ? 3 : 4; }

std::string_view to_string(Family f);
Family parse_family(std::string_view name);  // throws UsageError

struct EisensteinTraits {
    static constexpr Family family = Family::Cubic;
    static constexpr std::size_t unit_count = 6;
    static constexpr const char* symbol = "w";
    // (a + b w)(c + d w) with w^2 = -1 - w
    static std::pair<Integer, Integer> mul(const Integer& a, const Integer& b, const Integer& c,
                                           const Integer& d) {
        Integer bd = b * d;
        return {a * c - bd, a * d + b * c - bd};
    }
    static Integer norm(const Integer& a, const Integer& b) { return a * a - a * b + b * b; }
    static std::pair<Integer, Integer> conj(const Integer& a, const Integer& b) { return {a - b, -b}; }
    static std::array<std::pair<int, int>, 6> units() {
        return {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}}};
    }
};

struct GaussianTraits {
    static constexpr Family family = Family::Quartic;
    static constexpr std::size_t unit_count = 4;
    static constexpr const char* symbol = "i";
    static std::pair<Integer, Integer> mul(const Integer& a, const Integer& b, const Integer& c,
                                           const Integer& d) {
        return {a * c - b * d, a * d + b * c};
    }
    static Integer norm(const Integer& a, const Integer& b) { return a * a + b * b; }
    static std::pair<Integer, Integer> conj(const Integer& a, const Integer& b) { return {a, -b}; }
    static std::array<std::pair<int, int>, 4> units() { return {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}; }
};

template <class Traits>
class QuadInt {
public:
    using traits = Traits;

    QuadInt() = default;
    QuadInt(Integer a, Integer b = 0) : a_(std::move(a)), b_(std::move(b)) {}
    QuadInt(long a, long b = 0) : a_(a), b_(b) {}

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    Integer norm() const { return Traits::norm(a_, b_); }
    QuadInt conj() const {
        auto [x, y] = Traits::conj(a_, b_);
        return {std::move(x), std::move(y)};
    }
    bool is_unit() const { return norm() == 1; }

    static std::array<QuadInt, Traits::unit_count> units() {
        std::array<QuadInt, Traits::unit_count> out;
        auto raw = Traits::units();
        for (std::size_t k = 0; k < raw.size(); ++k) out[k] = QuadInt(raw[k].first, raw[k].second);
        return out;
    }

    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend QuadInt operator-(const QuadInt& x) { return {-x.a_, -x.b_}; }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        auto [u, v] = Traits::mul(x.a_, x.b_, y.a_, y.b_);
        return {std::move(u), std::move(v)};
    }
    friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    // Lexicographic on (a, b); the canonical generator order.
    friend bool lex_less(const QuadInt& x, const QuadInt& y) {
        const int c = cmp(x.a_, y.a_);
        return c < 0 || (c == 0 && cmp(x.b_, y.b_) < 0);
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
        return os << '(' << x.a_ << (x.b_ < 0 ? " - " : " + ") << abs(x.b_) << Traits::symbol << ')';
    }

private:
    Integer a_{0};
    Integer b_{0};
};

using EisensteinInt = QuadInt<EisensteinTraits>;
using GaussianInt = QuadInt<GaussianTraits>;

// Round n / d to the nearest integer, ties toward zero. Requires d > 0.
Integer round_div(const Integer& n, const Integer& d);

// Euclidean division x = q*y + r with q from coordinate-wise nearest rounding
// (ties toward zero); N(r) < N(y). Throws BothZero if y == 0.
template <class T>
std::pair<QuadInt<T>, QuadInt<T>> divmod(const QuadInt<T>& x, const QuadInt<T>& y) {
    if (y.is_zero()) throw BothZero("divmod: division by zero");
    const Integer n = y.norm();
    const QuadInt<T> num = x * y.conj();
    QuadInt<T> q(round_div(num.a(), n), round_div(num.b(), n));
    QuadInt<T> r = x - q * y;
    return {std::move(q), std::move(r)};
}

template <class T>
bool divides(const QuadInt<T>& y, const QuadInt<T>& x) {
    if (y.is_zero()) return x.is_zero();
    const Integer n = y.norm();
    const QuadInt<T> num = x * y.conj();
    return mpz_divisible_p(num.a().get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(num.b().get_mpz_t(), n.get_mpz_t());
}

// Is x primary: x = 1 mod 3 in Z[w], x = 1 mod (1+i)^3 in Z[i].
bool is_primary(const EisensteinInt& x);
bool is_primary(const GaussianInt& x);

// The unique unit u with u*x primary. Throws NotCoprimeToRamified when the
// norm of x shares a factor with the ramified prime (3 resp. 2), or x == 0.
template <class T>
std::pair<QuadInt<T>, QuadInt<T>> primary_normalize(const QuadInt<T>& x) {
    const Integer n = x.norm();
    const unsigned long ram = ramified_prime(T::family);
    if (n == 0 || mpz_divisible_ui_p(n.get_mpz_t(), ram)) {
        throw NotCoprimeToRamified("primary_normalize: element not coprime to the ramified prime");
    }
    for (const auto& u : QuadInt<T>::units()) {
        QuadInt<T> y = u * x;
        if (is_primary(y)) return {u, std::move(y)};
    }
    throw std::logic_error("primary_normalize: no primary associate (unreachable)");
}

// Greatest common divisor by the Euclidean algorithm. The result is made
// primary when its norm is coprime to the ramified prime.
template <class T>
QuadInt<T> gcd_k(QuadInt<T> x, QuadInt<T> y) {
    if (x.is_zero() && y.is_zero()) throw BothZero("gcd_k: both arguments are zero");
    while (!y.is_zero()) {
        auto [q, r] = divmod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    const Integer n = x.norm();
    if (!mpz_divisible_ui_p(n.get_mpz_t(), ramified_prime(T::family))) return primary_normalize(x).second;
    return x;
}

// A primary prime of O_K of rational prime norm p. `omega_image` is the
// residue r in [0, p) that w (resp. i) maps to under O_K/(pi) = F_p.
struct KPrime {
    Family family = Family::Cubic;
    Integer gen_a;
    Integer gen_b;
    u64 p = 0;
    u64 omega_image = 0;

    EisensteinInt eisenstein() const { return {gen_a, gen_b}; }
    GaussianInt gaussian() const { return {gen_a, gen_b}; }

    // The conjugate prime above the same p.
    KPrime conjugate() const;

    friend bool operator==(const KPrime& x, const KPrime& y) {
        return x.family == y.family && x.gen_a == y.gen_a && x.gen_b == y.gen_b;
    }
};

// Builds the KPrime for a primary generator of prime norm (computes
// omega_image). Throws NotSplitPrime if the norm is not a split rational prime.
KPrime make_kprime(Family family, const Integer& a, const Integer& b);

// The conjugate pair of primary primes above a split rational prime, ordered
// lexicographically by generator. Throws NotSplitPrime unless p is prime and
// p = 1 mod 3 (cubic) resp. p = 1 mod 4 (quartic).
std::pair<KPrime, KPrime> split_prime(Family family, const Integer& p);

// Square root of n modulo an odd prime p (Tonelli-Shanks). n must be a QR.
Integer sqrt_mod(const Integer& n, const Integer& p);

}  // namespace cqlab
