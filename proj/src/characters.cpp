#include "cqlab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "cqlab/numerics.hpp"
#include "cqlab/parallel.hpp"

namespace cqlab {

bool operator<(const CharacterId& x, const CharacterId& y) {
    if (x.family != y.family) return x.family < y.family;
    if (x.q != y.q) return x.q < y.q;
    const int c = cmp(x.gen_a, y.gen_a);
    if (c != 0) return c < 0;
    return cmp(x.gen_b, y.gen_b) < 0;
}

namespace {

std::pair<Integer, Integer> product_generator(Family family, const std::vector<KPrime>& factors) {
    if (family == Family::Cubic) {
        EisensteinInt n(1L, 0L);
        for (const auto& f : factors) n = n * f.eisenstein();
        return {n.a(), n.b()};
    }
    GaussianInt n(1L, 0L);
    for (const auto& f : factors) n = n * f.gaussian();
    return {n.a(), n.b()};
}

}  // namespace

PrimitiveCharacter::PrimitiveCharacter(Family family, std::vector<KPrime> factors)
    : family_(family), factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(), [](const KPrime& x, const KPrime& y) { return x.p < y.p; });
    for (const auto& f : factors_) {
        if (f.family != family_) throw std::invalid_argument("PrimitiveCharacter: factor from the wrong ring");
        conductor_ *= f.p;
    }
    std::tie(gen_a_, gen_b_) = product_generator(family_, factors_);
    parity_ = cqlab::parity(*this);
}

int PrimitiveCharacter::exponent(i64 m) const {
    const int d = order();
    int e = 0;
    for (const auto& f : factors_) {
        const int j = prime_symbol_exponent(reduce_mod(m, f.p), f);
        if (j < 0) return -1;
        e += j;
    }
    return e % d;
}

SymbolValue PrimitiveCharacter::symbol(i64 m) const {
    const int j = exponent(m);
    return j < 0 ? SymbolValue::zero(order()) : SymbolValue::root(order(), j);
}

PrimitiveCharacter PrimitiveCharacter::conjugate() const {
    std::vector<KPrime> conj;
    conj.reserve(factors_.size());
    for (const auto& f : factors_) conj.push_back(f.conjugate());
    return PrimitiveCharacter(family_, std::move(conj));
}

std::pair<std::size_t, std::size_t> FamilySlice::conductor_range(u64 lo, u64 hi) const {
    auto first = std::lower_bound(members.begin(), members.end(), lo,
                                  [](const PrimitiveCharacter& c, u64 v) { return c.conductor() < v; });
    auto last = std::upper_bound(members.begin(), members.end(), hi,
                                 [](u64 v, const PrimitiveCharacter& c) { return v < c.conductor(); });
    if (last < first) last = first;
    return {static_cast<std::size_t>(first - members.begin()), static_cast<std::size_t>(last - members.begin())};
}

FamilySlice enumerate_family(Family family, u64 X) {
    FamilySlice slice;
    slice.family = family;
    slice.X = X;
    const u64 d = static_cast<u64>(character_order(family));

    std::vector<std::pair<KPrime, KPrime>> pairs;
    for (u64 p : primes_up_to(X)) {
        if (p % d == 1) pairs.push_back(split_prime(family, Integer(static_cast<unsigned long>(p))));
    }

    std::vector<std::size_t> chosen;
    std::vector<KPrime> factors;
    // Depth-first over square-free products of split primes, then every
    // choice of conjugate at each prime.
    std::function<void(std::size_t, u64)> visit = [&](std::size_t start, u64 q) {
        if (!chosen.empty()) {
            const std::size_t k = chosen.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
                factors.clear();
                for (std::size_t t = 0; t < k; ++t) {
                    const auto& pr = pairs[chosen[t]];
                    factors.push_back(((mask >> t) & 1) ? pr.second : pr.first);
                }
                slice.members.emplace_back(family, factors);
            }
        }
        for (std::size_t i = start; i < pairs.size(); ++i) {
            const u64 p = pairs[i].first.p;
            if (q > X / p) break;
            chosen.push_back(i);
            visit(i + 1, q * p);
            chosen.pop_back();
        }
    };
    visit(0, 1);

    std::sort(slice.members.begin(), slice.members.end(),
              [](const PrimitiveCharacter& x, const PrimitiveCharacter& y) { return x.id() < y.id(); });
    return slice;
}

std::complex<double> eval_character(const PrimitiveCharacter& chi, i64 m) {
    const int j = chi.exponent(m);
    return j < 0 ? std::complex<double>(0.0, 0.0) : root_of_unity(chi.order(), j);
}

int parity(const PrimitiveCharacter& chi) {
    const int j = chi.exponent(-1);
    if (j == 0) return 0;
    if (chi.order() == 4 && j == 2) return 1;
    throw InvalidCharacterValue("parity: chi(-1) is not +1 or -1");
}

std::vector<std::int8_t> character_exponents(const PrimitiveCharacter& chi, std::uint32_t limit, const SpfTable& spf) {
    if (spf.limit() < limit) throw std::invalid_argument("character_exponents: sieve too small");
    const int d = chi.order();
    std::vector<std::int8_t> e(static_cast<std::size_t>(limit) + 1, 0);
    e[0] = chi.conductor() == 1 ? 0 : -1;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        const std::uint32_t p = spf.spf(n);
        if (p == n) {
            e[n] = static_cast<std::int8_t>(chi.exponent(n));
        } else {
            const int x = e[p];
            const int y = e[n / p];
            e[n] = static_cast<std::int8_t>((x < 0 || y < 0) ? -1 : (x + y) % d);
        }
    }
    return e;
}

GaussPeriods gauss_periods(u64 p, int order) {
    GaussPeriods out;
    out.p = p;
    out.order = order;
    out.generator = primitive_root(p);
    std::vector<ComplexCompensatedSum> acc(static_cast<std::size_t>(order));
    // e(x/p) = e(hi*B/p) e(lo/p) with x = hi*B + lo: two tables of ~sqrt(p)
    // entries instead of one transcendental call per term.
    const u64 B = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p))));
    std::vector<std::complex<double>> low(B), high(p / B + 1);
    const double scale = 2.0 * M_PI / static_cast<double>(p);
    for (u64 k = 0; k < B; ++k) low[k] = std::polar(1.0, scale * static_cast<double>(k));
    for (u64 k = 0; k < high.size(); ++k) high[k] = std::polar(1.0, scale * static_cast<double>(k * B));
    u64 x = 1;
    for (u64 k = 0; k + 1 < p; ++k) {
        acc[k % static_cast<u64>(order)].add(high[x / B] * low[x % B]);
        x = mulmod(x, out.generator, p);
    }
    out.eta.reserve(acc.size());
    for (const auto& s : acc) out.eta.push_back(s.value());
    return out;
}

GaussPeriodTable::GaussPeriodTable(const FamilySlice& slice, unsigned threads) {
    std::vector<u64> primes;
    for (const auto& chi : slice.members) {
        for (const auto& f : chi.factors()) primes.push_back(f.p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    const int d = character_order(slice.family);
    std::vector<GaussPeriods> periods(primes.size());
    parallel_for(primes.size(), threads, [&](std::size_t i) { periods[i] = gauss_periods(primes[i], d); });
    for (auto& g : periods) table_.emplace(g.p, std::move(g));
}

const GaussPeriods* GaussPeriodTable::find(u64 p) const {
    auto it = table_.find(p);
    return it == table_.end() ? nullptr : &it->second;
}

std::complex<double> gauss_sum(const PrimitiveCharacter& chi, const GaussPeriodTable* table) {
    const int d = chi.order();
    const u64 q = chi.conductor();
    std::complex<double> result(1.0, 0.0);
    int twist = 0;
    for (const auto& f : chi.factors()) {
        GaussPeriods local;
        const GaussPeriods* gp = table ? table->find(f.p) : nullptr;
        if (!gp) {
            local = gauss_periods(f.p, d);
            gp = &local;
        }
        const int j0 = prime_symbol_exponent(gp->generator % f.p, f);
        ComplexCompensatedSum tau;
        for (int c = 0; c < d; ++c) tau.add(root_of_unity(d, j0 * c) * gp->eta[static_cast<std::size_t>(c)]);
        result *= tau.value();
        // chi_p(q / p): the twist in tau(chi_1 chi_2) = chi_1(q_2) chi_2(q_1) tau(chi_1) tau(chi_2).
        twist += prime_symbol_exponent((q / f.p) % f.p, f);
    }
    return result * root_of_unity(d, twist);
}

std::complex<double> gauss_sum_direct(const PrimitiveCharacter& chi) {
    const u64 q = chi.conductor();
    ComplexCompensatedSum acc;
    const double scale = 2.0 * M_PI / static_cast<double>(q);
    for (u64 a = 1; a < q; ++a) {
        const int j = chi.exponent(static_cast<i64>(a));
        if (j < 0) continue;
        const double theta = scale * static_cast<double>(a);
        acc.add(root_of_unity(chi.order(), j) * std::complex<double>(std::cos(theta), std::sin(theta)));
    }
    return acc.value();
}

std::complex<double> root_number(const PrimitiveCharacter& chi, const GaussPeriodTable* table) {
    const std::complex<double> tau = gauss_sum(chi, table);
    const std::complex<double> i_pow = chi.parity() == 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, -1.0);
    return i_pow * tau / std::sqrt(static_cast<double>(chi.conductor()));
}

void write_family_csv(const FamilySlice& slice, std::ostream& os) {
    os << "family,q,gen_a,gen_b,parity\n";
    for (const auto& chi : slice.members) {
        os << to_string(slice.family) << ',' << chi.conductor() << ',' << chi.gen_a() << ',' << chi.gen_b() << ','
           << chi.parity() << '\n';
    }
}

}  // namespace cqlab
