#pragma once

// The families of primitive cubic characters of conductor coprime to 3 and
// primitive quartic characters (with primitive square) of odd conductor:
// chi_n(m) = (m / n)_d for n primary, square-free, free of rational primes.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cqlab/arith.hpp"
#include "cqlab/residue.hpp"
#include "cqlab/ring.hpp"

namespace cqlab {

// Identifies a family member independently of how it was computed.
struct CharacterId {
    Family family = Family::Cubic;
    u64 q = 0;
    Integer gen_a;
    Integer gen_b;

    friend bool operator==(const CharacterId& x, const CharacterId& y) {
        return x.family == y.family && x.q == y.q && x.gen_a == y.gen_a && x.gen_b == y.gen_b;
    }
    // Canonical order: family, conductor, then generator (a, b).
    friend bool operator<(const CharacterId& x, const CharacterId& y);
};

class PrimitiveCharacter {
public:
    PrimitiveCharacter(Family family, std::vector<KPrime> factors);

    Family family() const { return family_; }
    int order() const { return character_order(family_); }
    u64 conductor() const { return conductor_; }
    const Integer& gen_a() const { return gen_a_; }
    const Integer& gen_b() const { return gen_b_; }
    // One KPrime per rational prime dividing q, ascending in p.
    const std::vector<KPrime>& factors() const { return factors_; }
    int parity() const { return parity_; }
    CharacterId id() const { return {family_, conductor_, gen_a_, gen_b_}; }

    // Exponent j with chi(m) = zeta_d^j, or -1 when gcd(m, q) > 1.
    int exponent(i64 m) const;
    SymbolValue symbol(i64 m) const;

    PrimitiveCharacter conjugate() const;

private:
    Family family_;
    std::vector<KPrime> factors_;
    u64 conductor_ = 1;
    Integer gen_a_;
    Integer gen_b_;
    int parity_ = 0;
};

struct FamilySlice {
    Family family = Family::Cubic;
    u64 X = 0;
    std::vector<PrimitiveCharacter> members;  // sorted by (q, gen_a, gen_b)

    // Index range [first, last) of members with lo <= q <= hi.
    std::pair<std::size_t, std::size_t> conductor_range(u64 lo, u64 hi) const;
};

// All family members of conductor <= X.
FamilySlice enumerate_family(Family family, u64 X);

// chi(m) on the unit circle, or 0 when gcd(m, q) > 1.
std::complex<double> eval_character(const PrimitiveCharacter& chi, i64 m);

// a in {0, 1} with chi(-1) = (-1)^a. Throws InvalidCharacterValue if chi(-1)
// is not +-1.
int parity(const PrimitiveCharacter& chi);

// Exponents e[m] for 0 <= m <= limit (e = -1 where chi(m) = 0), built
// multiplicatively from symbols at primes. `spf` must cover `limit`.
std::vector<std::int8_t> character_exponents(const PrimitiveCharacter& chi, std::uint32_t limit, const SpfTable& spf);

// Gaussian periods eta_c = sum_{k = c mod d} e(g^k / p) for a split prime p
// and its least primitive root g; a prime-conductor Gauss sum is
// sum_c zeta_d^{j c} eta_c with j the exponent of chi(g).
struct GaussPeriods {
    u64 p = 0;
    u64 generator = 0;
    int order = 0;
    std::vector<std::complex<double>> eta;
};
GaussPeriods gauss_periods(u64 p, int order);

// Immutable cache of periods for every prime dividing some conductor in a slice.
class GaussPeriodTable {
public:
    GaussPeriodTable() = default;
    GaussPeriodTable(const FamilySlice& slice, unsigned threads);
    const GaussPeriods* find(u64 p) const;
    std::size_t size() const { return table_.size(); }

private:
    std::map<u64, GaussPeriods> table_;
};

// tau(chi) = sum_{a mod q} chi(a) e(a/q), assembled from prime conductors by
// twisted multiplicativity. Periods come from `table` when present.
std::complex<double> gauss_sum(const PrimitiveCharacter& chi, const GaussPeriodTable* table = nullptr);

// The O(q) definition, for cross-checking.
std::complex<double> gauss_sum_direct(const PrimitiveCharacter& chi);

// epsilon(chi) = i^{-a} q^{-1/2} tau(chi).
std::complex<double> root_number(const PrimitiveCharacter& chi, const GaussPeriodTable* table = nullptr);

// CSV columns: family,q,gen_a,gen_b,parity
void write_family_csv(const FamilySlice& slice, std::ostream& os);

}  // namespace cqlab
