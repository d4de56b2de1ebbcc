#pragma once

// Small-integer number theory used across the library: sieves, modular
// exponentiation in F_p, and factorization by smallest prime factor.

#include <cstdint>
#include <utility>
#include <vector>

namespace cqlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Reduce a signed value into [0, m).
inline u64 reduce_mod(i64 value, u64 m) {
    const i64 r = value % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 gcd_u64(u64 a, u64 b);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// All primes <= limit, ascending.
std::vector<u64> primes_up_to(u64 limit);

// Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0).
class SpfTable {
public:
    explicit SpfTable(std::uint32_t limit);

    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
    bool is_prime(std::uint32_t n) const { return n >= 2 && spf_[n] == n; }

    // (prime, exponent) pairs in increasing prime order.
    std::vector<std::pair<u64, int>> factor(std::uint32_t n) const;

private:
    std::vector<std::uint32_t> spf_;
};

// Trial-division factorization; fine for the twist and constant sizes used here.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// Radical: product of the distinct primes dividing n.
u64 radical(u64 n);

// Least primitive root modulo an odd prime p.
u64 primitive_root(u64 p);

}  // namespace cqlab
