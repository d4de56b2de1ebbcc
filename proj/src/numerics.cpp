#include "cqlab/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cqlab/errors.hpp"

namespace cqlab {

double compensated_total(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma_q: a must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
    if (x < a + 1.0) {
        // P(a, x) = x^a e^{-x} / Gamma(a) * sum_n x^n / (a (a+1) ... (a+n))
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return 1.0 - sum * std::exp(log_prefactor);
    }
    // Modified Lentz evaluation of the continued fraction for Gamma(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(log_prefactor) * h;
}

double gamma_q_upper_bound(double a, double x) {
    return std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a));
}

double bernoulli_even(int k) {
    static constexpr double table[] = {
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
        8553103.0 / 6.0,
        -23749461029.0 / 870.0,
    };
    if (k < 1 || k > 14) throw std::out_of_range("bernoulli_even: k out of range");
    return table[k - 1];
}

HurwitzValue hurwitz_zeta(double s, double a) {
    if (s == 1.0) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
    if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: a must be positive");
    constexpr int shift = 16;
    constexpr int terms = 12;

    CompensatedSum sum;
    for (int n = 0; n < shift; ++n) sum.add(std::pow(n + a, -s));
    const double x = shift + a;
    const double x_pow = std::pow(x, -s);
    sum.add(x * x_pow / (s - 1.0));
    sum.add(0.5 * x_pow);

    // k-th correction: B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * x^{-s-2k+1}
    double rising = s * x_pow / x;  // s * x^{-s-1}
    double factorial = 2.0;         // (2k)!
    for (int k = 1; k <= terms; ++k) {
        sum.add(bernoulli_even(k) / factorial * rising);
        rising *= (s + 2 * k - 1) * (s + 2 * k) / (x * x);
        factorial *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    const double next = std::abs(bernoulli_even(terms + 1) / factorial * rising);
    return {sum.value(), next};
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0).value; }

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be positive");
    double shift = 0.0;
    while (x < 12.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ log x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    const double inv2 = 1.0 / (x * x);
    double power = inv2;
    double series = 0.0;
    for (int k = 1; k <= 10; ++k) {
        series += bernoulli_even(k) / (2.0 * k) * power;
        power *= inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    std::complex<double> kronrod;
    double error;
};

Panel gauss_kronrod_15(const ComplexIntegrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::complex<double> fc = f(center);
    std::complex<double> k = fc * kWgk[7];
    std::complex<double> g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const std::complex<double> sum = f(center - dx) + f(center + dx);
        k += kWgk[j] * sum;
        if (j % 2 == 1) g += kWg[j / 2] * sum;
    }
    return {k * half, std::abs((k - g) * half)};
}

void adaptive_step(const ComplexIntegrand& f, double a, double b, double tol, int depth, int max_depth,
                   ComplexCompensatedSum& acc, double& err) {
    const Panel p = gauss_kronrod_15(f, a, b);
    if (p.error <= tol || b - a < 1e-14 * (std::abs(a) + std::abs(b))) {
        acc.add(p.kronrod);
        err += p.error;
        return;
    }
    if (depth >= max_depth) {
        throw QuadratureNonConvergence("integrate_adaptive: subdivision limit reached");
    }
    const double mid = 0.5 * (a + b);
    adaptive_step(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc, err);
    adaptive_step(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc, err);
}

}  // namespace

QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double tol, int max_depth) {
    ComplexCompensatedSum acc;
    double err = 0.0;
    adaptive_step(f, a, b, tol, 0, max_depth, acc, err);
    return {acc.value(), err};
}

GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

std::complex<double> integrate_fixed(const ComplexIntegrand& f, double a, double b, int panels, int order) {
    const GaussLegendreRule rule = gauss_legendre(order);
    const double width = (b - a) / panels;
    ComplexCompensatedSum acc;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double center = lo + 0.5 * width;
        for (int j = 0; j < order; ++j) {
            acc.add(0.5 * width * rule.weights[j] * f(center + 0.5 * width * rule.nodes[j]));
        }
    }
    return acc.value();
}

}  // namespace cqlab
