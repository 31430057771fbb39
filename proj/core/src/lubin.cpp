#include "padyn/lubin.hpp"

#include <string>

#include "padyn/errors.hpp"
#include "padyn/newton.hpp"
#include "padyn/oracle.hpp"

namespace padyn {

namespace {

void require_noninvertible(const PadicSeries& f) {
    if (f.ring() == Ring::residue) throw RingMismatch("expected a p-adic series");
    for (const auto& c : f.coeffs()) {
        if (!c.is_integral()) throw PreconditionError("f must have integral coefficients");
    }
    const auto v = f[1].valuation();
    if (!v || *v <= 0) throw PreconditionError("f'(0) must have finite positive valuation");
}

struct Solve {
    std::vector<PadicNumber> coeffs; // index n -> z_n, entry 0 unused
    std::optional<TorsionWitness> stop;
    TorsionOutcome stop_kind = TorsionOutcome::integral;
};

// Triangular solve of z(f) = f(z) with z'(0) = a. The powers z^j are kept
// column by column: [x^n] z^j (j >= 2) only involves z_1 .. z_{n-1}.
Solve solve_commutant(const PadicSeries& f, const PadicNumber& a, bool integral) {
    const PrimeContext& ctx = f.ctx();
    const int K = ctx.K();
    const auto powers = power_table(f);
    const auto zero = PadicNumber::exact_zero(ctx.p());
    const PadicNumber& a1 = f[1];

    Solve out;
    out.coeffs.assign(static_cast<std::size_t>(K) + 1, zero);
    out.coeffs[1] = a;
    std::vector<std::vector<PadicNumber>> zpow(static_cast<std::size_t>(K) + 1,
                                               std::vector<PadicNumber>(static_cast<std::size_t>(K) + 1, zero));
    zpow[1][1] = a;

    for (int n = 2; n <= K; ++n) {
        const auto un = static_cast<std::size_t>(n);
        for (std::size_t j = 2; j <= un; ++j) {
            PadicNumber sum = zero;
            for (std::size_t m = 1; m + j - 1 <= un; ++m) {
                const auto& zm = out.coeffs[m];
                const auto& prev = zpow[j - 1][un - m];
                if (zm.is_exact_zero() || prev.is_exact_zero()) continue;
                sum += zm * prev;
            }
            zpow[j][un] = std::move(sum);
        }

        PadicNumber numerator = zero;
        for (std::size_t j = 2; j <= un; ++j) {
            const auto& fj = f[static_cast<int>(j)];
            if (fj.is_exact_zero() || zpow[j][un].is_exact_zero()) continue;
            numerator += fj * zpow[j][un];
        }
        for (std::size_t i = 1; i < un; ++i) {
            const auto& zi = out.coeffs[i];
            const auto& fin = powers[i][un];
            if (zi.is_exact_zero() || fin.is_exact_zero()) continue;
            numerator -= zi * fin;
        }

        const PadicNumber divisor = a1.pow(static_cast<std::uint64_t>(n)) - a1;
        if (divisor.is_zero()) throw PrecisionError("a_1^n - a_1 vanishes at tracked precision");
        const std::int64_t vdiv = *divisor.valuation();

        if (numerator.is_zero()) {
            if (numerator.precision() < vdiv || (!integral && numerator.precision() - vdiv <= 0)) {
                if (!integral) {
                    throw PrecisionError("commutant coefficient of x^" + std::to_string(n) +
                                         " is undetermined at precision N = " + std::to_string(ctx.N()));
                }
                out.stop = TorsionWitness{n, numerator.precision(), vdiv};
                out.stop_kind = TorsionOutcome::inconclusive;
                return out;
            }
        } else if (integral && *numerator.valuation() < vdiv) {
            out.stop = TorsionWitness{n, *numerator.valuation(), vdiv};
            out.stop_kind = TorsionOutcome::non_integral;
            return out;
        }
        out.coeffs[un] = numerator / divisor;
        zpow[1][un] = out.coeffs[un];
    }
    return out;
}

PadicSeries to_series(const PrimeContext& ctx, Ring ring, const std::vector<PadicNumber>& coeffs) {
    return PadicSeries(ctx, ring, std::vector<PadicNumber>(coeffs.begin() + 1, coeffs.end()));
}

} // namespace

std::string to_string(TorsionOutcome outcome) {
    switch (outcome) {
    case TorsionOutcome::integral: return "integral";
    case TorsionOutcome::non_integral: return "non-integral";
    case TorsionOutcome::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Linearization linearize(const PadicSeries& f) {
    require_noninvertible(f);
    const PrimeContext& ctx = f.ctx();
    const int K = ctx.K();
    const PadicSeries ff = f.with_ring(Ring::padic_float);
    const auto powers = power_table(ff);
    const PadicNumber& a1 = ff[1];

    Linearization lin{PadicSeries(ctx, Ring::padic_float), {}};
    lin.series.set(1, PadicNumber::from_int(ctx, 1));
    lin.min_valuation_profile.push_back(0);
    for (int n = 2; n <= K; ++n) {
        const auto un = static_cast<std::size_t>(n);
        PadicNumber sum = PadicNumber::exact_zero(ctx.p());
        for (int i = 1; i < n; ++i) {
            const auto& ci = lin.series[i];
            const auto& fin = powers[static_cast<std::size_t>(i)][un];
            if (ci.is_exact_zero() || fin.is_exact_zero()) continue;
            sum += ci * fin;
        }
        PadicNumber c = -sum / (a1.pow(static_cast<std::uint64_t>(n)) - a1);
        if (!c.is_zero() && *c.valuation() < -(ctx.N() / 2)) {
            throw PrecisionError("linearization coefficient of x^" + std::to_string(n) + " has valuation " +
                                 std::to_string(*c.valuation()) + ", below the budget -N/2");
        }
        lin.min_valuation_profile.push_back(c.is_exact_zero() ? PadicNumber::kInfinitePrecision : c.valuation_bound());
        lin.series.set(n, std::move(c));
    }
    return lin;
}

PadicSeries commutant(const PadicSeries& f, const PadicNumber& a) {
    require_noninvertible(f);
    const PadicSeries ff = f.with_ring(Ring::padic_float);
    auto solved = solve_commutant(ff, a, false);
    return to_series(f.ctx(), Ring::padic_float, solved.coeffs);
}

PadicSeries commutant_via_linearization(const PadicSeries& f, const PadicNumber& a) {
    const Linearization lin = linearize(f);
    const PadicSeries inverse = comp_inverse(lin.series);
    return compose(inverse, a * lin.series);
}

TorsionCertificate torsion_check(const PadicSeries& f, const std::optional<PadicSeries>& u, TorsionOptions options) {
    const PrimeContext& ctx = f.ctx();
    if (f.ring() != Ring::integral) throw RingMismatch("torsion_check expects f over the integral ring");
    require_noninvertible(f);
    const auto w = weierstrass_degree(f);
    if (!w || *w != ctx.p()) {
        throw PreconditionError("f is not minimal: wideg(f) = " + (w ? std::to_string(*w) : std::string("undetermined")) +
                                ", expected p = " + std::to_string(ctx.p()));
    }
    if (*f[1].valuation() != 1) throw PreconditionError("f is not minimal: v_p(f'(0)) must be 1");
    if (u) {
        const auto report = validate_minimal_pair(f, *u);
        if (!report.is_minimal) {
            std::string why;
            for (const auto& s : report.failures) why += (why.empty() ? "" : "; ") + s;
            throw PreconditionError("(f, u) is not a minimal commuting pair: " + why);
        }
    }
    if (ctx.N() < ctx.K() + options.output_precision) {
        throw PrecisionError("precision budget: need N >= K + " + std::to_string(options.output_precision) + " = " +
                             std::to_string(ctx.K() + options.output_precision) + ", have N = " + std::to_string(ctx.N()));
    }

    TorsionCertificate cert;
    cert.N = ctx.N();
    cert.K = ctx.K();
    const auto solved = solve_commutant(f, zeta_e(ctx), true);
    if (ctx.p() == 2 && (!solved.stop || solved.stop->index > 2)) cert.d2 = solved.coeffs[2];
    if (solved.stop) {
        cert.outcome = solved.stop_kind;
        cert.witness = solved.stop;
        return cert;
    }

    cert.outcome = TorsionOutcome::integral;
    PadicSeries z = to_series(ctx, Ring::integral, solved.coeffs);
    cert.series_precision = min_precision(z);
    const auto order = agreement_precision(iterate(z, static_cast<std::uint64_t>(ctx.e())),
                                           PadicSeries::identity(ctx, Ring::integral));
    cert.verified_order = order.has_value() && *order >= 1;
    if (u) cert.commutes_with_u = equal_to_precision(compose(z, *u), compose(*u, z));
    cert.series = std::move(z);
    return cert;
}

} // namespace padyn
