#include "cqlab/constants.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "cqlab/errors.hpp"
#include "cqlab/numerics.hpp"

namespace cqlab {

namespace {

// chi_D for D = -3 and D = -4, on residues mod |D|.
int kronecker_D(Family family, u64 n) {
    if (family == Family::Cubic) {
        const u64 r = n % 3;
        return r == 0 ? 0 : (r == 1 ? 1 : -1);
    }
    const u64 r = n % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

// prod_{pi | p} (1 - N pi^{-2})^{-1}
double local_zeta_2(Family family, u64 p) {
    const double x = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    switch (splitting_type(family, p)) {
        case SplitType::Split:
            return 1.0 / ((1.0 - x) * (1.0 - x));
        case SplitType::Inert:
            return 1.0 / (1.0 - x * x);
        case SplitType::Ramified:
            return 1.0 / (1.0 - x);
    }
    return 1.0;
}

// The c_K factor 1 - p^{-2} prod_{pi | p} (1 - N pi^{-2})^{-1}.
double ck_factor(Family family, u64 p) {
    const double x = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    return 1.0 - x * local_zeta_2(family, p);
}

constexpr double kEps = 2.220446049250313e-16;

}  // namespace

SplitType splitting_type(Family family, u64 p) {
    if (p == ramified_prime(family)) return SplitType::Ramified;
    return p % static_cast<u64>(character_order(family)) == 1 ? SplitType::Split : SplitType::Inert;
}

double c_K_local_factor(Family family, u64 p) { return ck_factor(family, p); }

double g_local(Family family, u64 p) {
    const double dp = static_cast<double>(p);
    double first = 1.0;
    switch (splitting_type(family, p)) {
        case SplitType::Split:
            first = 1.0 / ((1.0 + 1.0 / dp) * (1.0 + 1.0 / dp));
            break;
        case SplitType::Inert:
            first = 1.0 / (1.0 + 1.0 / (dp * dp));
            break;
        case SplitType::Ramified:
            first = 1.0 / (1.0 + 1.0 / dp);
            break;
    }
    return first / ck_factor(family, p);
}

double g_factor(Family family, u64 c) {
    if (c == 0) throw NonPositiveArgument("g_factor: c must be positive");
    double g = 1.0;
    for (auto [p, e] : factor_u64(c)) g *= g_local(family, p);
    return g;
}

double g_supremum(Family family) {
    static const double sup[2] = {
        [] {
            double g = 1.0;
            for (u64 p : primes_up_to(100000)) g *= std::max(1.0, g_local(Family::Cubic, p));
            return g * (1.0 + 1e-9);  // inert factors are 1 + O(p^{-4}); covers p > 10^5
        }(),
        [] {
            double g = 1.0;
            for (u64 p : primes_up_to(100000)) g *= std::max(1.0, g_local(Family::Quartic, p));
            return g * (1.0 + 1e-9);
        }()};
    return sup[family == Family::Cubic ? 0 : 1];
}

double prime_tail_bound(double s, double P) {
    if (!(s > 1.0) || !(P >= 2.0)) throw DivergentParameter("prime_tail_bound: need s > 1 and P >= 2");
    return 1.25506 * s / ((s - 1.0) * std::pow(P, s - 1.0) * std::log(P));
}

Certified residue_rK(Family family) {
    const double v = family == Family::Cubic ? M_PI / (3.0 * std::sqrt(3.0)) : M_PI / 4.0;
    return {v, 4 * kEps};
}

Certified residue_rK_digamma(Family family) {
    const u64 D = abs_discriminant(family);
    CompensatedSum acc;
    for (u64 a = 1; a < D; ++a) acc.add(kronecker_D(family, a) * digamma(static_cast<double>(a) / D));
    return {-acc.value() / static_cast<double>(D), 1e-14};
}

Certified zeta_K_at_2(Family family) {
    const u64 D = abs_discriminant(family);
    CompensatedSum acc;
    double rem = 0.0;
    for (u64 a = 1; a < D; ++a) {
        const int chi = kronecker_D(family, a);
        if (chi == 0) continue;
        const HurwitzValue h = hurwitz_zeta(2.0, static_cast<double>(a) / D);
        acc.add(chi * h.value);
        rem += h.remainder_bound;
    }
    const double d2 = static_cast<double>(D * D);
    const double L2 = acc.value() / d2;
    const double z2 = M_PI * M_PI / 6.0;
    return {z2 * L2, z2 * (rem / d2 + 8 * kEps)};
}

Certified zeta_K_at_2_series(Family family, u64 N) {
    CompensatedSum acc;
    for (u64 n = N; n >= 1; --n) {
        const int chi = kronecker_D(family, n);
        if (chi == 0) continue;
        const double dn = static_cast<double>(n);
        acc.add(chi / (dn * dn));
    }
    const double z2 = M_PI * M_PI / 6.0;
    const double dN = static_cast<double>(N);
    return {z2 * acc.value(), z2 * (2.0 / (dN * dN) + 4 * kEps)};
}

Certified zeta_K_at_2_euler(Family family, u64 P) {
    double log_sum = 0.0;
    CompensatedSum logs;
    for (u64 p : primes_up_to(P)) logs.add(std::log(local_zeta_2(family, p)));
    log_sum = logs.value();
    const double value = std::exp(log_sum);
    // Each omitted factor is at most (1 - p^{-2})^{-2}: log <= 2.0001 p^{-2}.
    const double t = 2.0001 * prime_tail_bound(2.0, static_cast<double>(P));
    return {value, value * std::expm1(t) + 1e-14};
}

Certified c_K_constant(Family family, u64 P) {
    const Certified rK = residue_rK(family);
    const Certified zK2 = zeta_K_at_2(family);
    const double ram = static_cast<double>(ramified_prime(family));
    // prod_{p != ram} (1 - p^{-2}) = 1 / (zeta(2) (1 - ram^{-2}))
    const double base = 1.0 / ((M_PI * M_PI / 6.0) * (1.0 - 1.0 / (ram * ram)));
    CompensatedSum logs;
    for (u64 p : primes_up_to(P)) {
        if (p == ramified_prime(family)) continue;
        const double x = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
        logs.add(std::log1p((ck_factor(family, p) - (1.0 - x)) / (1.0 - x)));
    }
    const double prod = std::exp(logs.value());
    const double value = rK.value / zK2.value * base * prod;
    // |log h(p)| <= 3 p^{-4} for p >= 5, and sum_{n > P} 3 n^{-4} <= P^{-3}.
    const double dP = static_cast<double>(P);
    const double tail = 1.0 / (dP * dP * dP);
    const double err = value * (tail + rK.error / rK.value + zK2.error / zK2.value + 64 * kEps);
    return {value, err};
}

Certified c_K_euler(Family family, u64 P) {
    const Certified rK = residue_rK_digamma(family);
    const Certified zK2 = zeta_K_at_2_series(family);
    CompensatedSum logs;
    for (u64 p : primes_up_to(P)) {
        if (p == ramified_prime(family)) continue;
        logs.add(std::log(ck_factor(family, p)));
    }
    const double value = rK.value / zK2.value * std::exp(logs.value());
    // Omitted factors lie in [1 - 1.0001 p^{-2}, 1].
    const double tail = 1.0002 * prime_tail_bound(2.0, static_cast<double>(P));
    const double err = value * (tail + rK.error / rK.value + zK2.error / zK2.value + 1e-13);
    return {value, err};
}

ZKPartial Z_K_truncated(Family family, double u, u64 ell, u64 M) {
    if (!(u > 1.0)) throw DivergentParameter("Z_K: the series diverges for u <= 1");
    if (ell == 0) throw NonPositiveArgument("Z_K: l must be positive");
    if (M > 0xFFFFFFF0ull) throw DivergentParameter("Z_K: cutoff too large");
    const u64 N = abs_discriminant(family) * ell;
    const SpfTable spf(static_cast<std::uint32_t>(M));
    CompensatedSum acc;
    for (u64 m = 1; m <= M; ++m) {
        double g = 1.0;
        for (auto [p, e] : spf.factor(static_cast<std::uint32_t>(m))) {
            // p divides m / (m, N) iff v_p(m) > v_p(N)
            int vN = 0;
            for (u64 n = N; n % p == 0; n /= p) ++vN;
            if (e > vN) g *= g_local(family, p);
        }
        acc.add(g * std::pow(static_cast<double>(m), -u));
    }
    return {acc.value(), g_supremum(family) * std::pow(static_cast<double>(M), 1.0 - u) / (u - 1.0)};
}

Certified Z_K_euler(Family family, double u, u64 ell, u64 P) {
    if (!(u > 1.0)) throw DivergentParameter("Z_K: the series diverges for u <= 1");
    if (ell == 0) throw NonPositiveArgument("Z_K: l must be positive");
    if (P < 100) throw DivergentParameter("Z_K_euler: prime cutoff must be at least 100");
    const u64 N = abs_discriminant(family) * ell;
    CompensatedSum logs;
    for (u64 p : primes_up_to(P)) {
        int v = 0;
        for (u64 n = N; n % p == 0; n /= p) ++v;
        const double x = (1.0 - g_local(family, p)) * std::pow(static_cast<double>(p), -(v + 1) * u);
        logs.add(std::log1p(-x));
    }
    const HurwitzValue z = hurwitz_zeta(u, 1.0);
    const double value = z.value * std::exp(logs.value());
    // |1 - g_p| <= 2/p, so each omitted factor is within 2 p^{-1-u} of 1;
    // prime divisors of N beyond P only bring their factor closer to 1.
    const double dP = static_cast<double>(P);
    const double t = 1.002 * 2.0 * std::pow(dP, -u) / u;
    const double err = value * std::expm1(t) + z.remainder_bound * std::exp(logs.value()) + value * 1e-13;
    return {value, err};
}

double phi_weight(double x) {
    // S(t) = h(t) / (h(t) + h(1 - t)), h(t) = exp(-1/t)
    auto step = [](double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
    };
    if (x <= 1.0 || x >= 2.0) return 0.0;
    if (x < 1.25) return step(4.0 * (x - 1.0));
    if (x <= 1.75) return 1.0;
    return step(4.0 * (2.0 - x));
}

namespace {

ComplexIntegrand phi_integrand(std::complex<double> s) {
    return [s](double x) -> std::complex<double> {
        const double w = phi_weight(x);
        if (w == 0.0) return {0.0, 0.0};
        return w * std::exp((s - 1.0) * std::log(x));
    };
}

}  // namespace

std::complex<double> phi_hat(std::complex<double> s, double tol) {
    const auto f = phi_integrand(s);
    const double cuts[] = {1.0, 1.25, 1.75, 2.0};
    std::complex<double> total(0.0, 0.0);
    for (int k = 0; k < 3; ++k) total += integrate_adaptive(f, cuts[k], cuts[k + 1], tol / 3.0, 50).value;
    return total;
}

std::complex<double> phi_hat_fixed(std::complex<double> s, int panels, int order) {
    const auto f = phi_integrand(s);
    const double cuts[] = {1.0, 1.25, 1.75, 2.0};
    std::complex<double> total(0.0, 0.0);
    for (int k = 0; k < 3; ++k) total += integrate_fixed(f, cuts[k], cuts[k + 1], panels, order);
    return total;
}

const EulerConstants& euler_constants(Family family) {
    auto build = [](Family f) {
        EulerConstants c;
        c.family = f;
        const Certified rK = residue_rK(f);
        const Certified z2 = zeta_K_at_2(f);
        const Certified cK = c_K_constant(f);
        c.r_K = rK.value;
        c.zeta_K2 = z2.value;
        c.c_K = cK.value;
        const QuadratureResult q1 = integrate_adaptive(phi_integrand({1.0, 0.0}), 1.0, 1.25, 1e-14, 50);
        const QuadratureResult q2 = integrate_adaptive(phi_integrand({1.0, 0.0}), 1.75, 2.0, 1e-14, 50);
        c.phi_hat_1 = (q1.value + 0.5 + q2.value).real();
        c.precision = std::max({rK.error, z2.error, cK.error, q1.error_estimate + q2.error_estimate + 1e-16});
        return c;
    };
    static const EulerConstants cubic = build(Family::Cubic);
    static const EulerConstants quartic = build(Family::Quartic);
    return family == Family::Cubic ? cubic : quartic;
}

}  // namespace cqlab
