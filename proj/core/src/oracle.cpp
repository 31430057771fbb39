#include "padyn/oracle.hpp"

#include <random>
#include <stdexcept>

#include "padyn/errors.hpp"
#include "padyn/newton.hpp"

namespace padyn {

namespace {

// (1+x)^a - 1 by the falling-factorial recursion C(a,i) = C(a,i-1)(a-i+1)/i,
// in p-adic floats. `a` should carry v_p(K!) guard digits beyond N.
PadicSeries binomial_series(const PrimeContext& ctx, const PadicNumber& a, std::optional<long> stop_after) {
    const int p = ctx.p();
    const std::int64_t exact_prec = 4 * (static_cast<std::int64_t>(ctx.N()) + factorial_valuation(ctx.K(), p)) + 64;
    PadicSeries out(ctx, Ring::integral);
    PadicNumber c = PadicNumber::from_integer(p, 1, exact_prec);
    for (int i = 1; i <= ctx.K(); ++i) {
        if (stop_after && i > *stop_after) break; // exact zeros from here on
        c = c * (a - PadicNumber::from_integer(p, i - 1, exact_prec)) / PadicNumber::from_integer(p, i, exact_prec);
        if (!c.is_integral()) {
            throw std::logic_error("binomial coefficient " + std::to_string(i) + " is not integral: " + c.to_string());
        }
        out.set(i, c.with_precision(std::min<std::int64_t>(ctx.N(), c.precision())));
    }
    return out;
}

bool is_lubin_tate_shape(const PadicSeries& f) {
    const PrimeContext& ctx = f.ctx();
    const auto v = f[1].valuation();
    if (!v || *v != 1) return false;
    for (const auto& c : f.coeffs()) {
        if (!c.is_integral()) return false;
    }
    const ResidueSeries bar = reduce_mod_p(f);
    return bar == ResidueSeries::monomial(ctx, Ring::residue, Residue::from_int(ctx, 1), ctx.p());
}

PadicSeries integral_view(const PadicSeries& s) {
    return s.ring() == Ring::integral ? s : s.with_ring(Ring::integral);
}

} // namespace

PadicSeries gm_endomorphism(const PrimeContext& ctx, const mpz_class& a) {
    const std::int64_t guard = factorial_valuation(ctx.K(), ctx.p());
    const PadicNumber pa = PadicNumber::from_integer(ctx.p(), a, ctx.N() + guard);
    std::optional<long> stop;
    if (a >= 0 && a <= ctx.K()) stop = a.get_si();
    return binomial_series(ctx, pa, stop);
}

PadicSeries gm_endomorphism(const PrimeContext& ctx, const PadicNumber& a) {
    if (!a.is_integral()) throw PreconditionError("gm_endomorphism needs an integral exponent");
    return binomial_series(ctx, a, std::nullopt);
}

PadicSeries lubin_tate_endo(const PadicSeries& f_in, const PadicNumber& a) {
    if (!is_lubin_tate_shape(f_in)) {
        throw PreconditionError("f is not of Lubin-Tate shape (v_p(f'(0)) = 1, f = x^p mod p)");
    }
    if (!a.is_integral()) throw PreconditionError("[a]_f needs an integral a");
    const PadicSeries f = integral_view(f_in);
    const PrimeContext& ctx = f.ctx();
    const PadicNumber& a1 = f[1];

    PadicSeries z = PadicSeries::monomial(ctx, Ring::integral, a, 1);
    for (int n = 2; n <= ctx.K(); ++n) {
        const PadicNumber lhs = compose_trunc(f, z, n)[n];
        const PadicNumber rhs = compose_trunc(z, f, n)[n];
        const PadicNumber divisor = a1.pow(static_cast<std::uint64_t>(n)) - a1;
        const PadicNumber numerator = lhs - rhs;
        if (numerator.is_zero() && numerator.precision() < *divisor.valuation()) {
            throw PrecisionError("[a]_f: coefficient of x^" + std::to_string(n) + " exhausted the precision");
        }
        PadicNumber d = numerator / divisor;
        if (!d.is_integral()) {
            throw std::logic_error("[a]_f: inexact division at x^" + std::to_string(n));
        }
        z.set(n, std::move(d));
    }
    return z;
}

MinimalPairReport validate_minimal_pair(const PadicSeries& f, const PadicSeries& u) {
    f.require_compatible(u);
    const PrimeContext& ctx = f.ctx();
    MinimalPairReport r;
    for (const auto* s : {&f, &u}) {
        for (const auto& c : s->coeffs()) {
            if (!c.is_integral()) {
                r.failures.emplace_back(s == &f ? "f has a non-integral coefficient" : "u has a non-integral coefficient");
                return r;
            }
        }
    }

    r.wideg_f = weierstrass_degree(f);
    if (!r.wideg_f || *r.wideg_f != ctx.p()) {
        r.failures.push_back("wideg(f) = " + (r.wideg_f ? std::to_string(*r.wideg_f) : std::string("undetermined")) +
                             ", expected " + std::to_string(ctx.p()));
    }
    r.v_f_prime = f[1].valuation();
    if (!r.v_f_prime || *r.v_f_prime != 1) r.failures.emplace_back("v_p(f'(0)) != 1");

    const PadicNumber one = PadicNumber::from_int(ctx, 1);
    r.u_invertible = u[1].is_unit();
    if (!r.u_invertible) r.failures.emplace_back("u is not invertible: u'(0) is not a unit");
    r.v_u_shift = (u[1] - one).valuation();
    if (!r.v_u_shift || *r.v_u_shift != ctx.delta()) {
        r.failures.push_back("v_p(u'(0) - 1) = " + (r.v_u_shift ? std::to_string(*r.v_u_shift) : std::string("undetermined")) +
                             ", expected " + std::to_string(ctx.delta()));
    }
    // Roots of unity in Z_p have order dividing e.
    r.u_nontorsion = r.u_invertible && !(u[1].pow(static_cast<std::uint64_t>(ctx.e())) - one).is_zero();
    if (r.u_invertible && !r.u_nontorsion) r.failures.emplace_back("u'(0) is (to precision) a root of unity");

    r.commute_precision = agreement_precision(compose(f, u), compose(u, f));
    r.commutes = r.commute_precision.has_value() && *r.commute_precision >= 1;
    if (!r.commutes) r.failures.emplace_back("f(u) != u(f)");

    r.is_minimal = r.failures.empty();
    return r;
}

std::pair<PadicSeries, PadicSeries> conjugate_pair(const PadicSeries& f, const PadicSeries& u, const PadicSeries& h) {
    f.require_compatible(u);
    f.require_compatible(h);
    const PrimeContext& ctx = h.ctx();
    if (!h[1].is_unit()) throw PreconditionError("conjugator is not invertible");
    if (!(h[1] - PadicNumber::from_int(ctx, 1)).is_zero() && *(h[1] - PadicNumber::from_int(ctx, 1)).valuation() < 1) {
        throw PreconditionError("conjugator must satisfy h'(0) = 1 mod p");
    }
    const PadicSeries hinv = comp_inverse(h);
    PadicSeries fc = compose(h, compose(f, hinv));
    PadicSeries uc = compose(h, compose(u, hinv));
    const auto report = validate_minimal_pair(fc, uc);
    if (!report.is_minimal) {
        std::string why;
        for (const auto& s : report.failures) why += (why.empty() ? "" : "; ") + s;
        throw PrecisionError("conjugated pair lost minimality: " + why);
    }
    return {std::move(fc), std::move(uc)};
}

std::string to_string(PairKind kind) {
    switch (kind) {
    case PairKind::gm: return "gm";
    case PairKind::lt: return "lt";
    case PairKind::conjugated: return "conjugated";
    }
    return "unknown";
}

PairBundle gm_minimal_pair(const PrimeContext& ctx) {
    const mpz_class shift = 1 + pow_p(ctx.p(), ctx.delta());
    return {gm_endomorphism(ctx, mpz_class(ctx.p())), gm_endomorphism(ctx, shift), PairKind::gm, std::nullopt};
}

PairBundle lt_minimal_pair(const PrimeContext& ctx) {
    PadicSeries f(ctx, Ring::integral);
    f.set(1, PadicNumber::from_int(ctx, ctx.p()));
    if (ctx.p() <= ctx.K()) f.set(ctx.p(), PadicNumber::from_int(ctx, 1));
    const PadicNumber a = PadicNumber::from_integer(ctx.p(), 1 + pow_p(ctx.p(), ctx.delta()), ctx.N());
    PadicSeries u = lubin_tate_endo(f, a);
    return {std::move(f), std::move(u), PairKind::lt, std::nullopt};
}

PairBundle conjugated_pair(const PrimeContext& ctx, std::uint64_t seed) {
    const PairBundle base = gm_minimal_pair(ctx);
    auto [f, u] = conjugate_pair(base.f, base.u, random_conjugator(ctx, seed));
    return {std::move(f), std::move(u), PairKind::conjugated, seed};
}

mpz_class random_residue(std::uint64_t& state, int p, int digits) {
    const mpz_class& modulus = pow_p(p, digits);
    std::mt19937_64 gen(state);
    mpz_class acc = 0;
    // 64 spare bits keep the modular bias below 2^-64.
    const std::size_t words = mpz_sizeinbase(modulus.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t i = 0; i < words; ++i) {
        const std::uint64_t w = gen();
        acc <<= 32;
        acc += static_cast<unsigned long>(w >> 32);
        acc <<= 32;
        acc += static_cast<unsigned long>(w & 0xffffffffULL);
    }
    state = gen();
    return acc % modulus;
}

PadicSeries random_conjugator(const PrimeContext& ctx, std::uint64_t seed) {
    std::uint64_t state = seed;
    PadicSeries h = PadicSeries::identity(ctx, Ring::integral);
    for (int i = 2; i <= std::min(3, ctx.K()); ++i) {
        h.set(i, PadicNumber::from_integer(ctx.p(), random_residue(state, ctx.p(), ctx.N()), ctx.N()));
    }
    return h;
}

PadicSeries perturb(const PadicSeries& u, std::uint64_t seed) {
    const PrimeContext& ctx = u.ctx();
    const int p = ctx.p();
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    PadicSeries out = u;
    for (int k = 0; k <= 3 && k + 2 <= ctx.K(); ++k) {
        mpz_class r = random_residue(state, p, ctx.N());
        if (k == 0 && r % p == 0) r += 1;
        const PadicNumber term = PadicNumber::from_integer(p, p * r, ctx.N());
        out.set(k + 2, out[k + 2] + term);
    }
    return out;
}

} // namespace padyn
