#pragma once

// Floating-point building blocks: compensated summation, the normalized
// incomplete gamma function, Hurwitz zeta by Euler-Maclaurin, digamma, and
// quadrature rules.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cqlab {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    ComplexCompensatedSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

double compensated_total(std::span<const double> xs);

// Q(a, x) = Gamma(a, x) / Gamma(a) for a > 0, x >= 0: power series for
// x < a + 1, Lentz continued fraction otherwise. Absolute error ~1e-15.
double gamma_q(double a, double x);

// Upper bound for Q(a, x) valid for 0 < a <= 1 and x > 0:
// Gamma(a, x) <= x^{a-1} e^{-x}.
double gamma_q_upper_bound(double a, double x);

struct HurwitzValue {
    double value;
    double remainder_bound;  // bound on the Euler-Maclaurin remainder
};

// zeta(s, a) for real s != 1, a > 0, by Euler-Maclaurin with an explicit
// remainder bound (first omitted term; f(x) = (x+a)^{-s} is completely
// monotone for s > 0, so that bound is rigorous there).
HurwitzValue hurwitz_zeta(double s, double a);

// Riemann zeta for real s != 1, s > 0 (via hurwitz_zeta(s, 1)).
double riemann_zeta(double s);

// psi(x) = Gamma'(x)/Gamma(x) for x > 0.
double digamma(double x);

// Bernoulli numbers B_{2k}, k = 1..14.
double bernoulli_even(int k);

struct QuadratureResult {
    std::complex<double> value;
    double error_estimate;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Adaptive Gauss-Kronrod (7/15) on [a, b] to absolute tolerance `tol`.
// Throws QuadratureNonConvergence when the subdivision budget is exhausted.
QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double tol,
                                    int max_depth = 40);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

// Composite fixed-order Gauss-Legendre: `panels` equal panels of `order` nodes.
std::complex<double> integrate_fixed(const ComplexIntegrand& f, double a, double b, int panels, int order);

}  // namespace cqlab
