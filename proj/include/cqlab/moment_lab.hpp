#pragma once

// Experiments on family averages: twisted first moments against their main
// terms, 2k-th moments, character sums over the family, the mollifier and
// the lower-bounds inequality, the conditional log |L| bound, non-vanishing
// counts and moments of short prime sums.
//
// Central values are passed as a span aligned with slice.members; a NaN
// entry marks a value that has not been computed.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqlab/characters.hpp"
#include "cqlab/constants.hpp"

namespace cqlab {

// l = l1 l2^2 l3^3 (cubic) or l1 l2^2 l3^3 l4^4 (quartic) with the lower
// parts square-free and pairwise coprime; parts[3] = 1 in the cubic case.
struct DecomposedTwist {
    Family family = Family::Cubic;
    u64 ell = 1;
    std::array<u64, 4> parts{1, 1, 1, 1};

    u64 reconstruct() const;
};

DecomposedTwist decompose_twist(Family family, u64 ell);

// c_K g(3l) X (l1^2 l2)^{-1/2} Phi^(1) Z_K(3/2, l) for Q(w) and
// c_K g(2l) X (l1^3 l2^2 l3)^{-1/2} Phi^(1) Z_K(2, l) for Q(i).
Certified predicted_first_moment(Family family, double X, u64 ell);

// Throws MissingLValues naming the conductor range when a member with
// lo <= q <= hi has no value, or when the slice does not reach hi.
void require_lvalues(const FamilySlice& slice, std::span<const std::complex<double>> L, u64 lo, u64 hi);

// sum of L(1/2, chi) chi(l) Phi(q/X) over members with X < q < 2X.
std::complex<double> empirical_first_moment(const FamilySlice& slice, std::span<const std::complex<double>> L,
                                            double X, u64 ell);

// sum of |L(1/2, chi)|^{2k} over members with q <= X.
double moment_2k(const FamilySlice& slice, std::span<const std::complex<double>> L, double X, double k);

// Least-squares slope of log(moment / X) against log log X.
double moment_growth_slope(std::span<const double> X, std::span<const double> moments);

struct PolyaResult {
    std::complex<double> empirical;
    Certified predicted;  // zero unless c is a cube (fourth power)
    bool is_power = false;
};

// sum of chi(c) Phi(q/X) over the family, against c_K Phi^(1) X g(3c)
// (cubic) or c_K Phi^(1) X g(2c) (quartic). Throws MissingFamily when the
// slice stops short of 2X.
PolyaResult polya_sum(const FamilySlice& slice, double X, u64 c);

// E_l(x) = sum_{j=0}^{ceil l} x^j / j!.
std::complex<double> truncated_exponential(double ell, std::complex<double> x);

// r_k = ceil(k / (2k - 1)) + 2; requires k > 1/2.
int r_k(double k);

// The ladder l_1 > ... > l_R and the prime blocks P_j attached to it.
struct MollifierConfig {
    double X = 0.0;
    std::vector<u64> ladder;
    std::vector<std::vector<u64>> blocks;

    std::size_t R() const { return ladder.size(); }

    // l_1 = 2 ceil(N log log X), l_{j+1} = 2 ceil(N log l_j), keeping every
    // term above 10^M. Throws EmptyLadder when no term survives and
    // InvalidLadder when the conditions below fail.
    static MollifierConfig from_parameters(double X, int N, int M);

    // Explicit ladder; must satisfy l_j > l_{j+1}^2 and sum 1/l_j < 1.
    static MollifierConfig with_ladder(double X, std::vector<u64> ladder);
};

// Largest integer n with n^e <= X.
u64 integer_root_floor(double X, u64 e);

// P_j(chi) = sum_{p in P_j} chi(p) / sqrt p, one entry per block.
std::vector<std::complex<double>> block_sums(const PrimitiveCharacter& chi, const MollifierConfig& config);

// N(chi, alpha) = prod_j E_{l_j}(alpha P_j(chi)). Throws EmptyLadder if R = 0.
std::complex<double> mollifier_value(const PrimitiveCharacter& chi, const MollifierConfig& config, double alpha);
std::complex<double> mollifier_from_blocks(std::span<const std::complex<double>> P, const MollifierConfig& config,
                                           double alpha);

// The same product expanded as sum_n n^{-1/2} alpha^{Omega(n)} w(n)^{-1} b_j(n) chi(n)
// per block, with w(p^a) = a! and Omega counting prime factors with multiplicity.
std::complex<double> mollifier_divisor_sum(const PrimitiveCharacter& chi, const MollifierConfig& config,
                                           double alpha);

// Q_j(chi, k) = (12 k^2 P_j(chi) / l_j)^{r_k l_j} for j = 1..R.
std::vector<std::complex<double>> q_factor_value(const PrimitiveCharacter& chi, const MollifierConfig& config,
                                                 double k);
std::vector<std::complex<double>> q_factor_from_blocks(std::span<const std::complex<double>> P,
                                                       const MollifierConfig& config, double k);

struct HolderReport {
    double k = 0.0;
    double X = 0.0;
    std::complex<double> lhs;     // sum L N(chi, k-1) N(conj chi, k) Phi
    double moment_sum = 0.0;      // sum |L|^{2k} Phi
    std::optional<double> mollifier_sum;  // sum prod (|N_j|^2 + |Q_j|^2) Phi; unused at k = 1/2
    double rhs = 0.0;
    std::size_t terms = 0;
    bool holds = false;  // Re lhs <= rhs (1 + 1e-9)
};

HolderReport holder_check(const FamilySlice& slice, std::span<const std::complex<double>> L, double X, double k,
                          const MollifierConfig& config, unsigned threads = 1);

// The positive root of e^{-l} = l + l^2/2.
double lambda0();

enum class LogBoundVariant { Lambda0, One };

struct LogBoundResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// log |L(1/2, chi)| against the prime-sum bound at length x, with log X
// the family scale and the O-term replaced by slack * max(1, log log log X)
// (Lambda0) or slack (One). Throws ZeroCentralValue when L = 0.
LogBoundResult grh_log_bound_check(const PrimitiveCharacter& chi, std::complex<double> L, double x, double X,
                                   LogBoundVariant variant, double slack = 2.0);

struct NonvanishingResult {
    std::size_t count = 0;
    std::size_t total = 0;
    double proportion = 0.0;
    std::vector<std::size_t> below;  // member indices with |L| <= threshold
};

NonvanishingResult nonvanishing_count(const FamilySlice& slice, std::span<const std::complex<double>> L, double X,
                                      double threshold);

struct PrimeSumMoment {
    double empirical = 0.0;   // sum over X/2 < q <= X of |sum a(p) chi(p) p^{-1/2}|^{2m}
    double main_shape = 0.0;  // X sum_i m! C(m, ji) C(ji, i) C((j-1)i, i) a_j S2^{m-ji} Sj^{2i}
    double error_shape = 0.0; // X^{1/2} y^{2m} S2^m
    std::size_t terms = 0;
};

// Throws MissingFamily when the slice stops short of X.
PrimeSumMoment prime_sum_moment(const FamilySlice& slice, double X, u64 y, int m,
                                const std::function<std::complex<double>(u64)>& a, unsigned threads = 1);

}  // namespace cqlab
