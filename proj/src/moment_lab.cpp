#include "cqlab/moment_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cqlab/errors.hpp"
#include "cqlab/numerics.hpp"
#include "cqlab/parallel.hpp"

namespace cqlab {

namespace {

u64 ipow(u64 base, u64 e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

// Members with lo <= q <= hi, clamped to what the slice holds.
std::pair<std::size_t, std::size_t> range_of(const FamilySlice& slice, u64 lo, u64 hi) {
    if (hi < lo) return {0, 0};
    return slice.conductor_range(lo, hi);
}

// Integer conductors strictly inside (X, 2X).
std::pair<u64, u64> phi_support(double X) {
    const u64 lo = static_cast<u64>(std::floor(X)) + 1;
    const double top = 2.0 * X;
    u64 hi = static_cast<u64>(std::ceil(top));
    if (hi > 0) --hi;
    return {lo, hi};
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::complex<double> complex_ipow(std::complex<double> z, u64 e) {
    std::complex<double> r = 1.0;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

std::complex<double> chi_at(const PrimitiveCharacter& chi, i64 m) {
    const int j = chi.exponent(m);
    return j < 0 ? std::complex<double>(0.0, 0.0) : root_of_unity(chi.order(), j);
}

}  // namespace

u64 DecomposedTwist::reconstruct() const {
    const int d = character_order(family);
    u64 r = 1;
    for (int i = 0; i < d; ++i) r *= ipow(parts[i], static_cast<u64>(i + 1));
    return r;
}

DecomposedTwist decompose_twist(Family family, u64 ell) {
    if (ell == 0) throw NonPositiveArgument("decompose_twist: l must be positive");
    const int d = character_order(family);
    DecomposedTwist t;
    t.family = family;
    t.ell = ell;
    for (const auto& [p, e] : factor_u64(ell)) {
        const int r = e % d;
        if (r > 0) t.parts[r - 1] *= p;
        t.parts[d - 1] *= ipow(p, static_cast<u64>((e - r) / d));
    }
    return t;
}

Certified predicted_first_moment(Family family, double X, u64 ell) {
    const auto& K = euler_constants(family);
    const DecomposedTwist t = decompose_twist(family, ell);
    const bool cubic = family == Family::Cubic;
    const double u = cubic ? 1.5 : 2.0;
    const u64 scale = cubic ? 3 : 2;
    const double denom = cubic ? static_cast<double>(t.parts[0]) * t.parts[0] * t.parts[1]
                               : static_cast<double>(t.parts[0]) * t.parts[0] * t.parts[0] * t.parts[1] *
                                     t.parts[1] * t.parts[2];
    const double g = g_factor(family, scale * ell);
    const Certified Z = Z_K_euler(family, u, ell);
    const double value = K.c_K * g * X / std::sqrt(denom) * K.phi_hat_1 * Z.value;
    const double rel = K.precision / K.c_K + K.precision / K.phi_hat_1 + Z.error / Z.value + 1e-14;
    return {value, std::abs(value) * rel};
}

void require_lvalues(const FamilySlice& slice, std::span<const std::complex<double>> L, u64 lo, u64 hi) {
    if (hi < lo) return;
    if (L.size() != slice.members.size()) throw std::invalid_argument("require_lvalues: values not aligned with slice");
    u64 missing_lo = 0, missing_hi = 0;
    if (slice.X < hi) {
        missing_lo = std::max<u64>(lo, slice.X + 1);
        missing_hi = hi;
    }
    const auto [first, last] = range_of(slice, lo, hi);
    for (std::size_t i = first; i < last; ++i) {
        if (std::isnan(L[i].real()) || std::isnan(L[i].imag())) {
            const u64 q = slice.members[i].conductor();
            if (missing_lo == 0 || q < missing_lo) missing_lo = q;
            missing_hi = std::max(missing_hi, q);
        }
    }
    if (missing_lo != 0) {
        std::ostringstream msg;
        msg << "missing L-values for " << to_string(slice.family) << " conductors in [" << missing_lo << ", "
            << missing_hi << "]; populate the cache with lvalues --xmax " << missing_hi;
        throw MissingLValues(msg.str());
    }
}

std::complex<double> empirical_first_moment(const FamilySlice& slice, std::span<const std::complex<double>> L,
                                            double X, u64 ell) {
    const auto [lo, hi] = phi_support(X);
    require_lvalues(slice, L, lo, hi);
    const auto [first, last] = range_of(slice, lo, hi);
    ComplexCompensatedSum sum;
    for (std::size_t i = first; i < last; ++i) {
        const auto& chi = slice.members[i];
        const double w = phi_weight(static_cast<double>(chi.conductor()) / X);
        if (w == 0.0) continue;
        sum += L[i] * chi_at(chi, static_cast<i64>(ell)) * w;
    }
    return sum.value();
}

double moment_2k(const FamilySlice& slice, std::span<const std::complex<double>> L, double X, double k) {
    if (k < 0) throw NonPositiveArgument("moment_2k: k must be nonnegative");
    const u64 hi = static_cast<u64>(std::floor(X));
    require_lvalues(slice, L, 1, hi);
    const auto [first, last] = range_of(slice, 1, hi);
    if (k == 0.0) return static_cast<double>(last - first);
    CompensatedSum sum;
    for (std::size_t i = first; i < last; ++i) sum += std::pow(std::abs(L[i]), 2.0 * k);
    return sum.value();
}

double moment_growth_slope(std::span<const double> X, std::span<const double> moments) {
    if (X.size() != moments.size() || X.size() < 2) throw std::invalid_argument("moment_growth_slope: need two points");
    const std::size_t n = X.size();
    double mx = 0, my = 0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(std::log(X[i]));
        ys[i] = std::log(moments[i] / X[i]);
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

PolyaResult polya_sum(const FamilySlice& slice, double X, u64 c) {
    if (c == 0) throw NonPositiveArgument("polya_sum: c must be positive");
    const auto [lo, hi] = phi_support(X);
    if (slice.X < hi) {
        std::ostringstream msg;
        msg << "family enumerated to " << slice.X << " but the sum needs conductors up to " << hi;
        throw MissingFamily(msg.str());
    }
    const int d = character_order(slice.family);
    PolyaResult result;
    result.is_power = true;
    for (const auto& [p, e] : factor_u64(c)) {
        if (e % d != 0) result.is_power = false;
    }
    const auto [first, last] = range_of(slice, lo, hi);
    ComplexCompensatedSum sum;
    for (std::size_t i = first; i < last; ++i) {
        const auto& chi = slice.members[i];
        const double w = phi_weight(static_cast<double>(chi.conductor()) / X);
        if (w == 0.0) continue;
        sum += chi_at(chi, static_cast<i64>(c)) * w;
    }
    result.empirical = sum.value();
    if (result.is_power) {
        const auto& K = euler_constants(slice.family);
        const u64 scale = slice.family == Family::Cubic ? 3 : 2;
        const double value = K.c_K * K.phi_hat_1 * X * g_factor(slice.family, scale * c);
        const double rel = K.precision / K.c_K + K.precision / K.phi_hat_1 + 1e-14;
        result.predicted = {value, std::abs(value) * rel};
    }
    return result;
}

std::complex<double> truncated_exponential(double ell, std::complex<double> x) {
    if (ell < 0) throw NonPositiveArgument("truncated_exponential: l must be nonnegative");
    const auto n = static_cast<u64>(std::ceil(ell));
    ComplexCompensatedSum sum;
    std::complex<double> term = 1.0;
    sum += term;
    for (u64 j = 1; j <= n; ++j) {
        term *= x / static_cast<double>(j);
        sum += term;
    }
    return sum.value();
}

int r_k(double k) {
    if (!(k > 0.5)) throw DivergentParameter("r_k: requires k > 1/2");
    return static_cast<int>(std::ceil(k / (2.0 * k - 1.0))) + 2;
}

u64 integer_root_floor(double X, u64 e) {
    if (X < 1 || e == 0) throw NonPositiveArgument("integer_root_floor: needs X >= 1, e >= 1");
    auto fits = [&](u64 n) {
        long double r = 1;
        for (u64 i = 0; i < e; ++i) {
            r *= n;
            if (r > X) return false;
        }
        return true;
    };
    auto n = static_cast<u64>(std::floor(std::pow(X, 1.0 / static_cast<double>(e))));
    while (n > 1 && !fits(n)) --n;
    while (fits(n + 1)) ++n;
    return n;
}

MollifierConfig MollifierConfig::from_parameters(double X, int N, int M) {
    if (X <= std::exp(1.0) || N <= 0 || M < 0) throw InvalidLadder("ladder parameters out of range");
    const double threshold = std::pow(10.0, M);
    std::vector<u64> ladder;
    auto ell = static_cast<u64>(2 * std::ceil(N * std::log(std::log(X))));
    while (static_cast<double>(ell) > threshold) {
        ladder.push_back(ell);
        const auto next = static_cast<u64>(2 * std::ceil(N * std::log(static_cast<double>(ell))));
        if (next >= ell) throw InvalidLadder("ladder does not decrease below 10^M");
        ell = next;
    }
    if (ladder.empty()) {
        std::ostringstream msg;
        msg << "l_1 = " << ell << " does not exceed 10^" << M << " at X = " << X;
        throw EmptyLadder(msg.str());
    }
    return with_ladder(X, std::move(ladder));
}

MollifierConfig MollifierConfig::with_ladder(double X, std::vector<u64> ladder) {
    if (ladder.empty()) throw EmptyLadder("ladder has no terms");
    double inverse_sum = 0.0;
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        if (ladder[j] == 0) throw InvalidLadder("ladder terms must be positive");
        inverse_sum += 1.0 / static_cast<double>(ladder[j]);
        if (j + 1 < ladder.size() && !(ladder[j] > ladder[j + 1] * ladder[j + 1])) {
            std::ostringstream msg;
            msg << "l_" << j + 1 << " = " << ladder[j] << " is not above l_" << j + 2 << "^2";
            throw InvalidLadder(msg.str());
        }
    }
    if (!(inverse_sum < 1.0)) throw InvalidLadder("sum of 1/l_j must be below 1");
    if (X < 1) throw InvalidLadder("X must be at least 1");

    MollifierConfig config;
    config.X = X;
    config.ladder = std::move(ladder);
    std::vector<u64> bounds;
    for (u64 ell : config.ladder) bounds.push_back(integer_root_floor(X, ell * ell));
    if (bounds.back() > 100000000ULL) throw InvalidLadder("last prime block too long");
    const auto primes = primes_up_to(bounds.back());
    u64 lower = 2;  // P_1 holds odd primes only
    for (u64 upper : bounds) {
        std::vector<u64> block;
        for (u64 p : primes) {
            if (p > lower && p <= upper) block.push_back(p);
        }
        config.blocks.push_back(std::move(block));
        lower = std::max(lower, upper);
    }
    return config;
}

std::vector<std::complex<double>> block_sums(const PrimitiveCharacter& chi, const MollifierConfig& config) {
    std::vector<std::complex<double>> out;
    out.reserve(config.blocks.size());
    for (const auto& block : config.blocks) {
        ComplexCompensatedSum sum;
        for (u64 p : block) sum += chi_at(chi, static_cast<i64>(p)) / std::sqrt(static_cast<double>(p));
        out.push_back(sum.value());
    }
    return out;
}

std::complex<double> mollifier_from_blocks(std::span<const std::complex<double>> P, const MollifierConfig& config,
                                           double alpha) {
    if (config.R() == 0) throw EmptyLadder("mollifier needs at least one block");
    std::complex<double> value = 1.0;
    for (std::size_t j = 0; j < config.R(); ++j) {
        value *= truncated_exponential(static_cast<double>(config.ladder[j]), alpha * P[j]);
    }
    return value;
}

std::complex<double> mollifier_value(const PrimitiveCharacter& chi, const MollifierConfig& config, double alpha) {
    if (config.R() == 0) throw EmptyLadder("mollifier needs at least one block");
    const auto P = block_sums(chi, config);
    return mollifier_from_blocks(P, config, alpha);
}

std::complex<double> mollifier_divisor_sum(const PrimitiveCharacter& chi, const MollifierConfig& config,
                                           double alpha) {
    if (config.R() == 0) throw EmptyLadder("mollifier needs at least one block");
    std::complex<double> product = 1.0;
    for (std::size_t j = 0; j < config.R(); ++j) {
        const auto& block = config.blocks[j];
        const u64 max_omega = config.ladder[j];
        ComplexCompensatedSum sum;
        // n = prod p_i^{a_i} over the block, Omega(n) = sum a_i <= l_j.
        auto visit = [&](auto&& self, std::size_t start, u64 n, u64 omega, double w) -> void {
            double alpha_power = 1.0;
            for (u64 i = 0; i < omega; ++i) alpha_power *= alpha;
            sum += chi_at(chi, static_cast<i64>(n)) * (alpha_power / (std::sqrt(static_cast<double>(n)) * w));
            for (std::size_t i = start; i < block.size(); ++i) {
                u64 m = n;
                double wi = w;
                for (u64 a = 1; omega + a <= max_omega; ++a) {
                    m *= block[i];
                    wi *= static_cast<double>(a);
                    self(self, i + 1, m, omega + a, wi);
                }
            }
        };
        visit(visit, 0, 1, 0, 1.0);
        product *= sum.value();
    }
    return product;
}

std::vector<std::complex<double>> q_factor_from_blocks(std::span<const std::complex<double>> P,
                                                       const MollifierConfig& config, double k) {
    if (config.R() == 0) throw EmptyLadder("Q factors need at least one block");
    const int r = r_k(k);
    std::vector<std::complex<double>> out;
    for (std::size_t j = 0; j < config.R(); ++j) {
        const double ell = static_cast<double>(config.ladder[j]);
        out.push_back(complex_ipow(12.0 * k * k * P[j] / ell, static_cast<u64>(r) * config.ladder[j]));
    }
    return out;
}

std::vector<std::complex<double>> q_factor_value(const PrimitiveCharacter& chi, const MollifierConfig& config,
                                                 double k) {
    if (config.R() == 0) throw EmptyLadder("Q factors need at least one block");
    const auto P = block_sums(chi, config);
    return q_factor_from_blocks(P, config, k);
}

HolderReport holder_check(const FamilySlice& slice, std::span<const std::complex<double>> L, double X, double k,
                          const MollifierConfig& config, unsigned threads) {
    if (k < 0.5) throw NonPositiveArgument("holder_check: requires k >= 1/2");
    const auto [lo, hi] = phi_support(X);
    require_lvalues(slice, L, lo, hi);
    const auto [first, last] = range_of(slice, lo, hi);
    const std::size_t n = last - first;
    const bool degenerate = k == 0.5;

    std::vector<std::complex<double>> lhs_terms(n);
    std::vector<double> moment_terms(n), mollifier_terms(n);
    parallel_for(n, threads, [&](std::size_t t) {
        const std::size_t i = first + t;
        const auto& chi = slice.members[i];
        const double w = phi_weight(static_cast<double>(chi.conductor()) / X);
        const auto P = block_sums(chi, config);
        const auto N_km1 = mollifier_from_blocks(P, config, k - 1.0);
        const auto N_k = mollifier_from_blocks(P, config, k);
        lhs_terms[t] = L[i] * N_km1 * std::conj(N_k) * w;
        moment_terms[t] = std::pow(std::abs(L[i]), 2.0 * k) * w;
        if (!degenerate) {
            const auto Q = q_factor_from_blocks(P, config, k);
            double prod = 1.0;
            for (std::size_t j = 0; j < config.R(); ++j) {
                const double Nj = std::abs(truncated_exponential(static_cast<double>(config.ladder[j]), k * P[j]));
                const double Qj = std::abs(Q[j]);
                prod *= Nj * Nj + Qj * Qj;
            }
            mollifier_terms[t] = prod * w;
        }
    });

    HolderReport report;
    report.k = k;
    report.X = X;
    report.terms = n;
    ComplexCompensatedSum lhs;
    CompensatedSum moment, mollifier;
    for (std::size_t t = 0; t < n; ++t) {
        lhs += lhs_terms[t];
        moment += moment_terms[t];
        mollifier += mollifier_terms[t];
    }
    report.lhs = lhs.value();
    report.moment_sum = moment.value();
    report.rhs = std::pow(report.moment_sum, 1.0 / (2.0 * k));
    if (!degenerate) {
        report.mollifier_sum = mollifier.value();
        report.rhs *= std::pow(*report.mollifier_sum, (2.0 * k - 1.0) / (2.0 * k));
    }
    report.holds = report.lhs.real() <= report.rhs * (1.0 + 1e-9);
    return report;
}

double lambda0() {
    double l = 0.5;
    for (int it = 0; it < 50; ++it) {
        const double f = std::exp(-l) - l - 0.5 * l * l;
        const double df = -std::exp(-l) - 1.0 - l;
        const double step = f / df;
        l -= step;
        if (std::abs(step) < 1e-17) break;
    }
    return l;
}

LogBoundResult grh_log_bound_check(const PrimitiveCharacter& chi, std::complex<double> L, double x, double X,
                                   LogBoundVariant variant, double slack) {
    if (!(x >= 2.0)) throw NonPositiveArgument("grh_log_bound_check: x must be at least 2");
    if (!(X > 1.0)) throw NonPositiveArgument("grh_log_bound_check: X must exceed 1");
    const double modulus = std::abs(L);
    if (modulus == 0.0) throw ZeroCentralValue("log |L(1/2, chi)| is undefined at a zero");

    const double lx = std::log(x);
    const double logX = std::log(X);
    const double lambda = variant == LogBoundVariant::Lambda0 ? lambda0() : 1.0;
    const auto primes = primes_up_to(static_cast<u64>(std::floor(x)));

    CompensatedSum s;
    for (u64 p : primes) {
        const double pd = static_cast<double>(p);
        const double re = chi_at(chi, static_cast<i64>(p)).real();
        if (re == 0.0) continue;
        s += re * std::pow(pd, -0.5 - lambda / lx) * std::log(x / pd) / lx;
    }
    double rhs = 0.0;
    if (variant == LogBoundVariant::Lambda0) {
        const double lll = X > std::exp(std::exp(1.0)) ? std::log(std::log(logX)) : 0.0;
        rhs = s.value() + (1.0 + lambda) / 2.0 * logX / lx + slack * std::max(1.0, lll);
    } else {
        const double cap = std::min(std::sqrt(x), logX);
        for (u64 p : primes) {
            const double pd = static_cast<double>(p);
            if (pd > cap) break;
            const double re = chi_at(chi, static_cast<i64>(p * p)).real();
            if (re == 0.0) continue;
            s += re * std::pow(pd, -1.0 - 2.0 / lx) * std::log(x / (pd * pd)) / lx;
        }
        rhs = s.value() + logX / lx + slack;
    }
    LogBoundResult result;
    result.lhs = std::log(modulus);
    result.rhs = rhs;
    result.holds = result.lhs <= result.rhs;
    return result;
}

NonvanishingResult nonvanishing_count(const FamilySlice& slice, std::span<const std::complex<double>> L, double X,
                                      double threshold) {
    const u64 hi = static_cast<u64>(std::floor(X));
    require_lvalues(slice, L, 1, hi);
    const auto [first, last] = range_of(slice, 1, hi);
    NonvanishingResult r;
    r.total = last - first;
    for (std::size_t i = first; i < last; ++i) {
        if (std::abs(L[i]) > threshold) {
            ++r.count;
        } else {
            r.below.push_back(i);
        }
    }
    r.proportion = r.total == 0 ? 0.0 : static_cast<double>(r.count) / static_cast<double>(r.total);
    return r;
}

PrimeSumMoment prime_sum_moment(const FamilySlice& slice, double X, u64 y, int m,
                                const std::function<std::complex<double>(u64)>& a, unsigned threads) {
    if (m < 1) throw NonPositiveArgument("prime_sum_moment: m must be positive");
    const u64 hi = static_cast<u64>(std::floor(X));
    if (slice.X < hi) {
        std::ostringstream msg;
        msg << "family enumerated to " << slice.X << " but the moment needs conductors up to " << hi;
        throw MissingFamily(msg.str());
    }
    const u64 lo = static_cast<u64>(std::floor(X / 2.0)) + 1;
    const auto primes = primes_up_to(y);
    std::vector<std::complex<double>> coeff(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) coeff[i] = a(primes[i]);

    const auto [first, last] = range_of(slice, lo, hi);
    const std::size_t n = last - first;
    std::vector<double> terms(n);
    parallel_for(n, threads, [&](std::size_t t) {
        const auto& chi = slice.members[first + t];
        ComplexCompensatedSum s;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (coeff[i] == 0.0) continue;
            s += coeff[i] * chi_at(chi, static_cast<i64>(primes[i])) / std::sqrt(static_cast<double>(primes[i]));
        }
        terms[t] = std::pow(std::norm(s.value()), m);
    });

    PrimeSumMoment out;
    out.terms = n;
    out.empirical = compensated_total(terms);

    const int j = character_order(slice.family);
    CompensatedSum S2, Sj;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const double pd = static_cast<double>(primes[i]);
        const double ab = std::abs(coeff[i]);
        S2 += ab * ab / pd;
        Sj += std::pow(ab, j) / std::pow(pd, j / 2.0);
    }
    CompensatedSum shape;
    const int top = (m + j - 1) / j;
    for (int i = 0; i <= top; ++i) {
        if (j * i > m) continue;
        const double aj = j == 3 ? binomial(2 * i, i) * factorial(i) / std::pow(36.0, i)
                                 : binomial(3 * i, i) * factorial(2 * i) / std::pow(576.0, i);
        shape += factorial(m) * binomial(m, j * i) * binomial(j * i, i) * binomial((j - 1) * i, i) * aj *
                 std::pow(S2.value(), m - j * i) * std::pow(Sj.value(), 2 * i);
    }
    out.main_shape = X * shape.value();
    out.error_shape = std::sqrt(X) * std::pow(static_cast<double>(y), 2.0 * m) * std::pow(S2.value(), m);
    return out;
}

}  // namespace cqlab
