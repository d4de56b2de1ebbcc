#pragma once

// Cubic and quartic residue symbols (m / n)_3, (m / n)_4 at rational integers
// m, evaluated exactly as exponents of a root of unity.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "cqlab/ring.hpp"

namespace cqlab {

// exp(2 pi i j / order) for order 3 or 4, with exactly representable parts
// wherever the value allows it.
std::complex<double> root_of_unity(int order, int j);

// w^j (order 3) or i^j (order 4), or Zero.
class SymbolValue {
public:
    static SymbolValue zero(int order) { return SymbolValue(order, -1); }
    static SymbolValue root(int order, int j) { return SymbolValue(order, ((j % order) + order) % order); }

    int order() const { return order_; }
    bool is_zero() const { return exponent_ < 0; }
    // Exponent j in [0, order); -1 for Zero.
    int exponent() const { return exponent_; }

    SymbolValue conj() const { return is_zero() ? *this : root(order_, -exponent_); }
    SymbolValue pow(int k) const;
    std::complex<double> to_complex() const {
        return is_zero() ? std::complex<double>(0.0, 0.0) : root_of_unity(order_, exponent_);
    }

    friend SymbolValue operator*(SymbolValue x, SymbolValue y) {
        if (x.is_zero() || y.is_zero()) return zero(x.order_);
        return root(x.order_, x.exponent_ + y.exponent_);
    }
    friend bool operator==(SymbolValue x, SymbolValue y) = default;

private:
    SymbolValue(int order, int exponent) : order_(static_cast<std::int8_t>(order)), exponent_(static_cast<std::int8_t>(exponent)) {}
    std::int8_t order_;
    std::int8_t exponent_;
};

// Exponent of (m / pi)_d for m already reduced to [0, p); -1 when m == 0.
int prime_symbol_exponent(u64 m_mod_p, const KPrime& prime);

// (m / pi)_d: m^{(p-1)/d} mod p matched against powers of omega_image.
SymbolValue prime_symbol(i64 m, const KPrime& prime);
SymbolValue prime_symbol(const Integer& m, const KPrime& prime);

// Multiplicative extension over a factored primary modulus. An empty
// factor list is the unit modulus, whose symbol is identically 1.
SymbolValue composite_symbol(i64 m, Family family, const std::vector<std::pair<KPrime, int>>& factors);
SymbolValue composite_symbol(const Integer& m, Family family, const std::vector<std::pair<KPrime, int>>& factors);

}  // namespace cqlab
