#include "cqlab/ring.hpp"

#include <stdexcept>

namespace cqlab {

std::string_view to_string(Family f) { return f == Family::Cubic ? "cubic" : "quartic"; }

Family parse_family(std::string_view name) {
    if (name == "cubic") return Family::Cubic;
    if (name == "quartic") return Family::Quartic;
    throw UsageError("unknown family '" + std::string(name) + "' (expected cubic or quartic)");
}

Integer round_div(const Integer& n, const Integer& d) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    // n/d = q + r/d with 0 <= r < d
    const Integer twice = 2 * r;
    const int c = cmp(twice, d);
    if (c > 0) return q + 1;
    if (c < 0) return q;
    // exact half: q + 1/2, round toward zero
    return q >= 0 ? q : Integer(q + 1);
}

namespace {

bool divisible(const Integer& x, unsigned long m) { return mpz_divisible_ui_p(x.get_mpz_t(), m) != 0; }

Integer mod_floor(const Integer& x, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

bool is_primary(const EisensteinInt& x) {
    // a + b w = 1 (mod 3)  <=>  a = 1 (mod 3) and b = 0 (mod 3)
    return divisible(x.a() - 1, 3) && divisible(x.b(), 3);
}

bool is_primary(const GaussianInt& x) {
    // a + b i = 1 (mod (1+i)^3)  <=>  b even and a - 1 = b (mod 4)
    return divisible(x.b(), 2) && divisible(x.a() - 1 - x.b(), 4);
}

Integer sqrt_mod(const Integer& n_in, const Integer& p) {
    Integer n = mod_floor(n_in, p);
    if (n == 0) return 0;
    if (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != 1) {
        throw std::invalid_argument("sqrt_mod: not a quadratic residue");
    }
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

    Integer c, t, r, tmp;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Integer e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        tmp = t;
        while (tmp != 1) {
            tmp = mod_floor(tmp * tmp, p);
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod_floor(b * b, p);
        m = i;
        c = mod_floor(b * b, p);
        t = mod_floor(t * c, p);
        r = mod_floor(r * b, p);
    }
    return r;
}

KPrime make_kprime(Family family, const Integer& a, const Integer& b) {
    const Integer n = family == Family::Cubic ? EisensteinTraits::norm(a, b) : GaussianTraits::norm(a, b);
    const unsigned long d = static_cast<unsigned long>(character_order(family));
    if (!n.fits_ulong_p() || n >= (Integer(1) << 62)) {
        throw NotSplitPrime("make_kprime: norm exceeds the supported range");
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 || mpz_fdiv_ui(n.get_mpz_t(), d) != 1) {
        throw NotSplitPrime("make_kprime: norm is not a split rational prime");
    }
    const bool primary = family == Family::Cubic ? is_primary(EisensteinInt(a, b)) : is_primary(GaussianInt(a, b));
    if (!primary) throw NotCoprimeToRamified("make_kprime: generator is not primary");

    KPrime out;
    out.family = family;
    out.gen_a = a;
    out.gen_b = b;
    out.p = n.get_ui();
    // a + b*r = 0 (mod p)  =>  r = -a / b
    Integer binv;
    Integer bmod = mod_floor(b, n);
    if (mpz_invert(binv.get_mpz_t(), bmod.get_mpz_t(), n.get_mpz_t()) == 0) {
        throw std::logic_error("make_kprime: b not invertible mod p");
    }
    out.omega_image = Integer(mod_floor(-a * binv, n)).get_ui();
    return out;
}

KPrime KPrime::conjugate() const {
    if (family == Family::Cubic) {
        auto [x, y] = EisensteinTraits::conj(gen_a, gen_b);
        return make_kprime(family, x, y);
    }
    auto [x, y] = GaussianTraits::conj(gen_a, gen_b);
    return make_kprime(family, x, y);
}

namespace {

template <class T>
std::pair<KPrime, KPrime> split_in(const Integer& p, const Integer& root) {
    // (p, w - r) resp. (p, i - s) is a prime ideal of norm p; its gcd
    // generator comes out of the Euclidean algorithm already primary.
    const QuadInt<T> g = gcd_k(QuadInt<T>(p, 0), QuadInt<T>(Integer(-root), 1));
    if (g.norm() != p) throw std::logic_error("split_prime: descent did not produce a norm-p element");
    KPrime first = make_kprime(T::family, g.a(), g.b());
    KPrime second = first.conjugate();
    if (lex_less(QuadInt<T>(second.gen_a, second.gen_b), QuadInt<T>(first.gen_a, first.gen_b))) {
        std::swap(first, second);
    }
    return {std::move(first), std::move(second)};
}

}  // namespace

std::pair<KPrime, KPrime> split_prime(Family family, const Integer& p) {
    const unsigned long d = static_cast<unsigned long>(character_order(family));
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0 || mpz_fdiv_ui(p.get_mpz_t(), d) != 1) {
        throw NotSplitPrime("split_prime: " + p.get_str() + " is not a prime = 1 mod " + std::to_string(d));
    }
    if (family == Family::Cubic) {
        // w is a root of x^2 + x + 1: r = (-1 + sqrt(-3)) / 2 mod p
        const Integer s = sqrt_mod(Integer(-3), p);
        Integer inv2;
        Integer two = 2;
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
        const Integer r = mod_floor((s - 1) * inv2, p);
        return split_in<EisensteinTraits>(p, r);
    }
    const Integer s = sqrt_mod(Integer(-1), p);
    return split_in<GaussianTraits>(p, s);
}

}  // namespace cqlab
