#include "cqlab/residue.hpp"

#include <cmath>
#include <stdexcept>

namespace cqlab {

std::complex<double> root_of_unity(int order, int j) {
    j = ((j % order) + order) % order;
    if (order == 4) {
        static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
        static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
        return {re[j], im[j]};
    }
    if (order == 3) {
        static const double h = std::sqrt(3.0) / 2.0;
        static const double im[3] = {0.0, h, -h};
        return {j == 0 ? 1.0 : -0.5, im[j]};
    }
    const double theta = 2.0 * M_PI * j / order;
    return {std::cos(theta), std::sin(theta)};
}

SymbolValue SymbolValue::pow(int k) const {
    if (is_zero()) return k == 0 ? root(order_, 0) : *this;
    return root(order_, static_cast<int>((static_cast<long>(exponent_) * k) % order_));
}

int prime_symbol_exponent(u64 m_mod_p, const KPrime& prime) {
    if (m_mod_p == 0) return -1;
    const u64 p = prime.p;
    const int d = character_order(prime.family);
    const u64 t = powmod(m_mod_p, (p - 1) / static_cast<u64>(d), p);
    u64 rj = 1;
    for (int j = 0; j < d; ++j) {
        if (t == rj) return j;
        rj = mulmod(rj, prime.omega_image, p);
    }
    throw std::logic_error("prime_symbol: power is not a root of unity mod p (invalid KPrime?)");
}

SymbolValue prime_symbol(i64 m, const KPrime& prime) {
    const int d = character_order(prime.family);
    const int j = prime_symbol_exponent(reduce_mod(m, prime.p), prime);
    return j < 0 ? SymbolValue::zero(d) : SymbolValue::root(d, j);
}

SymbolValue prime_symbol(const Integer& m, const KPrime& prime) {
    const u64 r = mpz_fdiv_ui(m.get_mpz_t(), prime.p);
    const int d = character_order(prime.family);
    const int j = prime_symbol_exponent(r, prime);
    return j < 0 ? SymbolValue::zero(d) : SymbolValue::root(d, j);
}

namespace {

template <class M>
SymbolValue composite_impl(const M& m, Family family, const std::vector<std::pair<KPrime, int>>& factors) {
    SymbolValue acc = SymbolValue::root(character_order(family), 0);
    for (const auto& [prime, mult] : factors) {
        acc = acc * prime_symbol(m, prime).pow(mult);
        if (acc.is_zero()) break;
    }
    return acc;
}

}  // namespace

SymbolValue composite_symbol(i64 m, Family family, const std::vector<std::pair<KPrime, int>>& factors) {
    return composite_impl(m, family, factors);
}

SymbolValue composite_symbol(const Integer& m, Family family, const std::vector<std::pair<KPrime, int>>& factors) {
    return composite_impl(m, family, factors);
}

}  // namespace cqlab
