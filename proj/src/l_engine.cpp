#include "cqlab/l_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cqlab/numerics.hpp"
#include "cqlab/parallel.hpp"

namespace cqlab {

namespace {

// Rounding allowance per unit of sum |m^{-1/2} V|: V carries ~1e-15 absolute
// error and the compensated sums add almost nothing.
constexpr double kWeightRelError = 1e-14;

// Sums of a weight table split by character exponent class.
struct ClassSums {
    std::array<CompensatedSum, 4> by_class;
    double abs_total = 0.0;
};

ClassSums class_sums(const std::vector<double>& weights, const std::vector<std::int8_t>& exps, std::uint64_t M) {
    ClassSums out;
    CompensatedSum total;
    for (std::uint64_t m = 1; m <= M; ++m) {
        const int e = exps[m];
        if (e < 0) continue;
        out.by_class[static_cast<std::size_t>(e)].add(weights[m]);
        total.add(weights[m]);
    }
    out.abs_total = total.value();
    return out;
}

// sum_j zeta^{sign j} S_j
std::complex<double> combine(const ClassSums& s, int order, int sign) {
    ComplexCompensatedSum acc;
    for (int j = 0; j < order; ++j) acc.add(root_of_unity(order, sign * j) * s.by_class[static_cast<std::size_t>(j)].value());
    return acc.value();
}

std::vector<double> weight_table(const WeightKernel& kernel, double A, std::uint64_t M) {
    std::vector<double> w(M + 1, 0.0);
    for (std::uint64_t m = 1; m <= M; ++m) {
        const double x = static_cast<double>(m) / A;
        w[m] = v_weight(kernel, x) / std::sqrt(static_cast<double>(m));
    }
    return w;
}

LValueRecord assemble(const PrimitiveCharacter& chi, double A, const WeightKernel& kernel,
                      const std::vector<double>& wA, std::uint64_t MA, const std::vector<double>& wB, std::uint64_t MB,
                      const std::vector<std::int8_t>& exps, std::complex<double> eps) {
    const int d = chi.order();
    const ClassSums sA = class_sums(wA, exps, MA);
    const ClassSums sB = class_sums(wB, exps, MB);
    const std::complex<double> first = combine(sA, d, 1);
    const std::complex<double> second = eps * combine(sB, d, -1);
    LValueRecord rec;
    rec.id = chi.id();
    rec.value = first + second;
    rec.method = LMethod::AFE;
    rec.split_A = A;
    const double B = static_cast<double>(chi.conductor()) / A;
    rec.truncation_error = afe_tail_bound(kernel, A, MA) + afe_tail_bound(kernel, B, MB) +
                           kWeightRelError * (sA.abs_total + sB.abs_total);
    return rec;
}

std::uint32_t sieve_bound(std::uint64_t M) {
    if (M > 0xFFFFFFF0ull) throw DivergentParameter("afe: truncation point too large");
    return static_cast<std::uint32_t>(M);
}

}  // namespace

std::string_view to_string(LMethod m) { return m == LMethod::AFE ? "afe" : "direct"; }

LMethod parse_method(std::string_view name) {
    if (name == "afe") return LMethod::AFE;
    if (name == "direct") return LMethod::Direct;
    throw UsageError("unknown method '" + std::string(name) + "' (expected afe or direct)");
}

double v_weight(const WeightKernel& kernel, double x) {
    if (!(x > 0.0)) throw NonPositiveArgument("v_weight: x must be positive");
    return gamma_q(kernel.c(), M_PI * x * x);
}

double afe_tail_bound(const WeightKernel& kernel, double A, std::uint64_t M) {
    if (!(A > 0.0)) throw NonPositiveArgument("afe_tail_bound: A must be positive");
    const double m1 = static_cast<double>(M) + 1.0;
    const double y = M_PI * m1 * m1 / (A * A);
    const double h = 2.0 * M_PI * m1 / (A * A);
    const double head = gamma_q_upper_bound(kernel.c(), y) / std::sqrt(m1);
    return head / -std::expm1(-h);
}

std::uint64_t afe_cutoff(const WeightKernel& kernel, double A, double target) {
    if (!(target > 0.0)) throw NonPositiveArgument("afe_cutoff: target must be positive");
    // The bound decreases in M once y > c; grow then bisect.
    std::uint64_t hi = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(A));
    while (afe_tail_bound(kernel, A, hi) > target) hi *= 2;
    std::uint64_t lo = 0;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (afe_tail_bound(kernel, A, mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

LValueRecord afe_central_value(const PrimitiveCharacter& chi, double A, const AfeOptions& options,
                               const GaussPeriodTable* periods) {
    if (!(A > 0.0)) throw NonPositiveArgument("afe_central_value: A must be positive");
    const WeightKernel kernel{chi.parity()};
    const double B = static_cast<double>(chi.conductor()) / A;
    const std::uint64_t MA = options.M_A ? options.M_A : afe_cutoff(kernel, A, options.target);
    const std::uint64_t MB = options.M_B ? options.M_B : afe_cutoff(kernel, B, options.target);
    const std::uint32_t limit = sieve_bound(std::max(MA, MB));
    const SpfTable spf(limit);
    const auto exps = character_exponents(chi, limit, spf);
    const auto wA = weight_table(kernel, A, MA);
    const auto wB = weight_table(kernel, B, MB);
    return assemble(chi, A, kernel, wA, MA, wB, MB, exps, root_number(chi, periods));
}

LValueRecord direct_central_value(const PrimitiveCharacter& chi, u64 cap) {
    const u64 q = chi.conductor();
    if (q > cap) {
        throw ConductorTooLargeForOracle("direct_central_value: conductor " + std::to_string(q) +
                                         " exceeds the oracle cap " + std::to_string(cap));
    }
    const int d = chi.order();
    std::array<CompensatedSum, 4> by_class;
    double remainder = 0.0;
    double magnitude = 0.0;
    for (u64 a = 1; a <= q; ++a) {
        const int e = chi.exponent(static_cast<i64>(a));
        if (e < 0) continue;
        const HurwitzValue h = hurwitz_zeta(0.5, static_cast<double>(a) / static_cast<double>(q));
        by_class[static_cast<std::size_t>(e)].add(h.value);
        remainder += h.remainder_bound;
        magnitude += std::abs(h.value);
    }
    ComplexCompensatedSum acc;
    for (int j = 0; j < d; ++j) acc.add(root_of_unity(d, j) * by_class[static_cast<std::size_t>(j)].value());
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    LValueRecord rec;
    rec.id = chi.id();
    rec.value = acc.value() * scale;
    rec.method = LMethod::Direct;
    rec.split_A = 0.0;
    rec.truncation_error = (remainder + 1e-15 * magnitude) * scale;
    return rec;
}

std::vector<LValueRecord> afe_central_values(const FamilySlice& slice, std::size_t first, std::size_t last,
                                             unsigned threads, const GaussPeriodTable* periods, double target) {
    if (!(target > 0)) throw NonPositiveArgument("afe_central_values: target must be positive");
    last = std::min(last, slice.members.size());
    if (first >= last) return {};
    // Group consecutive members of equal conductor.
    std::vector<std::size_t> starts;
    for (std::size_t i = first; i < last; ++i) {
        if (i == first || slice.members[i].conductor() != slice.members[i - 1].conductor()) starts.push_back(i);
    }
    starts.push_back(last);

    u64 qmax = 0;
    for (std::size_t i = first; i < last; ++i) qmax = std::max(qmax, slice.members[i].conductor());
    const double Amax = std::sqrt(static_cast<double>(qmax));
    const std::uint64_t Mmax = std::max(afe_cutoff(WeightKernel{0}, Amax, target),
                                        afe_cutoff(WeightKernel{1}, Amax, target));
    const SpfTable spf(sieve_bound(Mmax));

    std::vector<LValueRecord> out(last - first);
    parallel_for(starts.size() - 1, threads, [&](std::size_t g) {
        const PrimitiveCharacter& lead = slice.members[starts[g]];
        const double A = std::sqrt(static_cast<double>(lead.conductor()));
        const WeightKernel kernel{lead.parity()};
        const std::uint64_t M = afe_cutoff(kernel, A, target);
        const auto w = weight_table(kernel, A, M);
        for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) {
            const PrimitiveCharacter& chi = slice.members[i];
            if (chi.parity() != lead.parity()) throw std::logic_error("afe: parity differs within a conductor");
            const auto exps = character_exponents(chi, static_cast<std::uint32_t>(M), spf);
            out[i - first] = assemble(chi, A, kernel, w, M, w, M, exps, root_number(chi, periods));
        }
    });
    return out;
}

std::vector<LValueRecord> direct_central_values(const FamilySlice& slice, std::size_t first, std::size_t last,
                                                unsigned threads, u64 cap) {
    last = std::min(last, slice.members.size());
    if (first >= last) return {};
    std::vector<LValueRecord> out(last - first);
    parallel_for(last - first, threads, [&](std::size_t i) { out[i] = direct_central_value(slice.members[first + i], cap); });
    return out;
}

}  // namespace cqlab
