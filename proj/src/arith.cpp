#include "cqlab/arith.hpp"

#include <stdexcept>

namespace cqlab {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
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

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i <= limit / i) {
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    return out;
}

SpfTable::SpfTable(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes.push_back(i);
        }
        for (std::uint32_t p : primes) {
            const u64 ip = static_cast<u64>(i) * p;
            if (p > spf_[i] || ip > limit) break;
            spf_[ip] = p;
        }
    }
}

std::vector<std::pair<u64, int>> SpfTable::factor(std::uint32_t n) const {
    std::vector<std::pair<u64, int>> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 radical(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factor_u64(n)) r *= p;
    return r;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    const auto factors = factor_u64(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found (input not prime?)");
}

}  // namespace cqlab
