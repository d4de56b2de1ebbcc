#pragma once

// Central values L(1/2, chi) by the approximate functional equation with
// G = 1, and by a direct Hurwitz-zeta sum used as an oracle.

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cqlab/characters.hpp"

namespace cqlab {

enum class LMethod { AFE, Direct };

std::string_view to_string(LMethod m);
LMethod parse_method(std::string_view name);  // throws UsageError

struct LValueRecord {
    CharacterId id;
    std::complex<double> value;
    LMethod method = LMethod::AFE;
    double truncation_error = 0.0;
    double split_A = 0.0;  // 0 for the direct method
};

// V_a(x) = Q(c, pi x^2), c = (1/2 + a)/2, the AFE weight for G = 1.
struct WeightKernel {
    int parity = 0;
    double c() const { return (0.5 + parity) / 2.0; }
};

// Throws NonPositiveArgument unless x > 0.
double v_weight(const WeightKernel& kernel, double x);

// Bound on sum_{m > M} m^{-1/2} V_a(m / A), from Gamma(c, y) <= y^{c-1} e^{-y}
// (c <= 1) and a geometric majorant in m.
double afe_tail_bound(const WeightKernel& kernel, double A, std::uint64_t M);

// Least M with afe_tail_bound(kernel, A, M) <= target.
std::uint64_t afe_cutoff(const WeightKernel& kernel, double A, double target);

struct AfeOptions {
    double target = 5e-11;    // per-sum tail target; the two sums give <= 1e-10
    std::uint64_t M_A = 0;    // explicit cutoffs override the target when nonzero
    std::uint64_t M_B = 0;
};

// sum chi(m) m^{-1/2} V(m/A) + eps(chi) sum conj chi(m) m^{-1/2} V(m/B), AB = q.
LValueRecord afe_central_value(const PrimitiveCharacter& chi, double A, const AfeOptions& options = {},
                               const GaussPeriodTable* periods = nullptr);

// q^{-1/2} sum_{a=1}^{q} chi(a) zeta(1/2, a/q). Throws ConductorTooLargeForOracle
// when q exceeds `cap`.
inline constexpr u64 kDirectConductorCap = 5000;
LValueRecord direct_central_value(const PrimitiveCharacter& chi, u64 cap = kDirectConductorCap);

// Balanced (A = sqrt q) AFE values for members [first, last) of a slice.
// Members sharing a conductor share one weight table; result i belongs to
// member first + i whatever the thread count. `target` is the per-sum tail
// bound, as in AfeOptions.
std::vector<LValueRecord> afe_central_values(const FamilySlice& slice, std::size_t first, std::size_t last,
                                             unsigned threads, const GaussPeriodTable* periods = nullptr,
                                             double target = AfeOptions{}.target);

// Direct-method values for members [first, last).
std::vector<LValueRecord> direct_central_values(const FamilySlice& slice, std::size_t first, std::size_t last,
                                                unsigned threads, u64 cap = kDirectConductorCap);

}  // namespace cqlab
