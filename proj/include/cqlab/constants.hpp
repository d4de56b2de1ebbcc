#pragma once

// Arithmetic constants of the main terms for K = Q(w) and Q(i): the local
// factors g(c), the residue r_K, zeta_K(2), c_K, the series Z_K(u, l), and
// the smooth weight Phi with its Mellin transform.

#include <complex>
#include <cstdint>

#include "cqlab/arith.hpp"
#include "cqlab/ring.hpp"

namespace cqlab {

enum class SplitType { Split, Inert, Ramified };

// By residue class: p = 1 mod 3 (resp. 4) splits, p = 3 (resp. 2) ramifies,
// everything else is inert.
SplitType splitting_type(Family family, u64 p);

// A value together with a bound on its absolute error.
struct Certified {
    double value = 0.0;
    double error = 0.0;
};

// The c_K Euler factor 1 - p^{-2} prod_{pi | p} (1 - N pi^{-2})^{-1}.
double c_K_local_factor(Family family, u64 p);

// The factor of g attached to a single prime p:
// prod_{pi | p} (1 + N pi^{-1})^{-1} (1 - p^{-2} prod_{pi | p} (1 - N pi^{-2})^{-1})^{-1}.
double g_local(Family family, u64 p);

// g(c) = prod over primes p | c of g_local(p); g(1) = 1.
double g_factor(Family family, u64 c);

// sup_c g(c). Split primes give factors below 1, but an inert prime gives a
// factor slightly above 1 (12/11 at p = 2 for Q(w)), so the supremum is the
// product of the inert factors that exceed 1.
double g_supremum(Family family);

// Sum_{p > P} p^{-s} <= 1.25506 s / ((s - 1) P^{s-1} log P), from
// pi(x) < 1.25506 x / log x. Requires s > 1, P >= 2.
double prime_tail_bound(double s, double P);

// r_K = L(1, chi_D): pi / (3 sqrt 3) for Q(w), pi / 4 for Q(i).
Certified residue_rK(Family family);
// The same through -(1/|D|) sum chi_D(a) psi(a / |D|).
Certified residue_rK_digamma(Family family);

// zeta_K(2) = zeta(2) L(2, chi_D), with L(2, chi_D) = |D|^{-2} sum chi_D(a) zeta(2, a/|D|).
Certified zeta_K_at_2(Family family);
// zeta(2) times the partial Dirichlet series of L(2, chi_D) to N, tail <= 2/N^2
// by partial summation (the character sums are bounded by 1).
Certified zeta_K_at_2_series(Family family, u64 N = 1000000);
// Euler product over p <= P, with the tail bounded through prime_tail_bound.
Certified zeta_K_at_2_euler(Family family, u64 P);

// c_K = r_K zeta_K(2)^{-1} prod_{p not dividing D} (1 - p^{-2} prod_{pi | p} (1 - N pi^{-2})^{-1}).
// Evaluated after dividing each factor by (1 - p^{-2}), whose product is known
// exactly; the remaining factors are 1 + O(p^{-4}).
Certified c_K_constant(Family family, u64 P = 1000000);
// Plain truncated Euler product over p <= P.
Certified c_K_euler(Family family, u64 P = 10000000);

// Z_K(u, l) = sum_m m^{-u} g(m / (m, |D| l)).
struct ZKPartial {
    double value = 0.0;
    double tail_bound = 0.0;  // sup g * M^{1-u} / (u - 1)
};
// Partial sum over m <= M. Throws DivergentParameter if u <= 1.
ZKPartial Z_K_truncated(Family family, double u, u64 ell, u64 M);
// zeta(u) prod_p (1 - (1 - g_p) p^{-(v_p(|D| l) + 1) u}) over p <= P.
Certified Z_K_euler(Family family, double u, u64 ell, u64 P = 1000000);

// Phi: support [1, 2], plateau [5/4, 7/4], ramps from the exp(-1/t) glue.
double phi_weight(double x);
// int_1^2 Phi(x) x^{s-1} dx by adaptive Gauss-Kronrod. Throws
// QuadratureNonConvergence.
std::complex<double> phi_hat(std::complex<double> s, double tol = 1e-12);
// The same with a fixed composite Gauss-Legendre rule.
std::complex<double> phi_hat_fixed(std::complex<double> s, int panels = 64, int order = 20);

struct EulerConstants {
    Family family = Family::Cubic;
    double r_K = 0.0;
    double zeta_K2 = 0.0;
    double c_K = 0.0;
    double phi_hat_1 = 0.0;
    double precision = 0.0;  // largest certified absolute error of the four
};

// Computed once per family and shared.
const EulerConstants& euler_constants(Family family);

}  // namespace cqlab
