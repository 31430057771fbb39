#include <doctest.h>

#include <padyn/errors.hpp>
#include <padyn/lubin.hpp>
#include <padyn/oracle.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

PadicSeries gm(const PrimeContext& ctx, long a) { return gm_endomorphism(ctx, mpz_class(a)); }

PadicSeries poly(const PrimeContext& ctx, std::vector<long> cs) {
    std::vector<PadicNumber> out;
    for (long c : cs) out.push_back(c == 0 ? PadicNumber::exact_zero(ctx.p()) : PadicNumber::from_int(ctx, c));
    return PadicSeries(ctx, Ring::integral, out);
}

PadicSeries geometric(const PrimeContext& ctx, Ring ring) {
    std::vector<PadicNumber> cs;
    for (const auto& c : oracle::geometric_alternating(ctx.K())) cs.push_back(PadicNumber::from_integer(ctx.p(), c, ctx.N()));
    return PadicSeries(ctx, ring, cs);
}

} // namespace

TEST_CASE("linearization of the multiplicative group is the logarithm") {
    const PrimeContext ctx(3, 40, 12);
    const auto f = gm(ctx, 3);
    const auto lin = linearize(f);
    CHECK(lin.series[1] == PadicNumber::from_int(ctx, 1));
    for (int i = 1; i <= 12; ++i) {
        // log(1+x) = sum (-1)^(i+1) x^i / i
        const auto want = PadicNumber::from_int(ctx, i % 2 ? 1 : -1) / PadicNumber::from_int(ctx, i);
        CHECK(equal_to_precision(lin.series[i], want));
    }
    CHECK(lin.series[3].valuation() == -1);
    CHECK(lin.min_valuation_profile[2] == -1);
    const auto ff = f.with_ring(Ring::padic_float);
    CHECK(equal_to_precision(compose(lin.series, ff), ff[1] * lin.series));
}

TEST_CASE("linearization edge cases") {
    const PrimeContext ctx(3, 16, 8);
    CHECK(linearize(poly(ctx, {3})).series == PadicSeries::identity(ctx, Ring::padic_float));
    CHECK_THROWS_AS(linearize(poly(ctx, {1, 1})), PreconditionError);
    // log-type denominators outrun a small budget
    CHECK_THROWS_AS(linearize(gm(PrimeContext(3, 4, 40), 3)), PrecisionError);
}

TEST_CASE("commutant examples") {
    const PrimeContext ctx(3, 40, 16);
    const auto f = gm(ctx, 3);
    const auto ff = f.with_ring(Ring::padic_float);
    CHECK(equal_to_precision(commutant(f, PadicNumber::from_int(ctx, 1)), PadicSeries::identity(ctx, Ring::padic_float)));
    CHECK(equal_to_precision(commutant(f, f[1]), ff));
    CHECK(equal_to_precision(commutant(f, PadicNumber::from_int(ctx, -1)), geometric(ctx, Ring::padic_float)));
}

TEST_CASE("commutant routes agree") {
    const PrimeContext ctx(3, 40, 12);
    const auto f = gm(ctx, 3);
    for (long a : {-1L, 2L, 4L, 10L}) {
        const auto pa = PadicNumber::from_int(ctx, a);
        const auto direct = commutant(f, pa);
        CHECK(equal_to_precision(direct, commutant_via_linearization(f, pa)));
        CHECK(equal_to_precision(direct, gm(ctx, a).with_ring(Ring::padic_float)));
        CHECK(commutant(f, pa) == direct);
    }
}

TEST_CASE("commutant composition law") {
    for (int p : {2, 3, 5}) {
        const PrimeContext ctx(p, 48, 12);
        const auto f = gm(ctx, p);
        const std::vector<PadicNumber> scalars{PadicNumber::from_int(ctx, 2), PadicNumber::from_int(ctx, -3), zeta_e(ctx)};
        for (const auto& a : scalars) {
            for (const auto& b : scalars) {
                CHECK(equal_to_precision(compose(commutant(f, a), commutant(f, b)), commutant(f, a * b)));
            }
        }
    }
}

TEST_CASE("torsion check on the multiplicative group") {
    const PrimeContext c2(2, 72, 64);
    const auto cert = torsion_check(gm(c2, 2), gm(c2, 5));
    CHECK(cert.outcome == TorsionOutcome::integral);
    REQUIRE(cert.d2);
    CHECK(equal_to_precision(*cert.d2, PadicNumber::from_int(c2, 1)));
    CHECK(equal_to_precision(*cert.series, geometric(c2, Ring::integral)));
    CHECK(cert.verified_order);
    CHECK(cert.commutes_with_u == true);
    CHECK(cert.N == 72);
    CHECK(cert.K == 64);

    const PrimeContext c3(3, 40, 32);
    const auto c = torsion_check(gm(c3, 3), gm(c3, 4));
    CHECK(c.outcome == TorsionOutcome::integral);
    CHECK(equal_to_precision(*c.series, geometric(c3, Ring::integral)));
    CHECK(c.verified_order);
    CHECK_FALSE(c.d2);
    CHECK(c.series_precision >= 8);

    // p = 5: z is (1+x)^zeta - 1 with zeta a primitive 4th root of unity
    const PrimeContext c5(5, 40, 24);
    const auto z5 = torsion_check(gm(c5, 5), std::nullopt);
    CHECK(z5.outcome == TorsionOutcome::integral);
    CHECK(equal_to_precision(*z5.series, gm_endomorphism(c5, zeta_e(c5))));
}

TEST_CASE("torsion check gates") {
    const PrimeContext c3(3, 40, 16);
    CHECK_THROWS_AS(torsion_check(poly(c3, {3, 1}), std::nullopt), PreconditionError);
    CHECK_THROWS_AS(torsion_check(gm(c3, 3), gm(c3, 3)), PreconditionError);
    CHECK_THROWS_AS(torsion_check(gm(PrimeContext(3, 20, 16), 3), std::nullopt), PrecisionError);
    CHECK_THROWS_AS(torsion_check(gm(c3, 3).with_ring(Ring::padic_float), std::nullopt), RingMismatch);
}

TEST_CASE("non-integral witness is sound") {
    // wideg p and v(f'(0)) = 1, but the reduction is not x^p
    for (int p : {2, 3}) {
        const PrimeContext ctx(p, 40, 16);
        std::vector<long> cs(static_cast<std::size_t>(p) + 1, 0);
        cs[0] = p;
        cs[static_cast<std::size_t>(p) - 1] = 1;
        cs[static_cast<std::size_t>(p)] = 1;
        const auto cert = torsion_check(poly(ctx, cs), std::nullopt);
        CHECK(cert.outcome == TorsionOutcome::non_integral);
        REQUIRE(cert.witness);
        CHECK(cert.witness->numerator_valuation < cert.witness->divisor_valuation);
        CHECK_FALSE(cert.series);
        CHECK_FALSE(cert.verified_order);
        // independent recomputation: the float commutant at twice the precision
        const PrimeContext hi(p, 80, 16);
        const auto z = commutant(poly(hi, cs), zeta_e(hi));
        CHECK(z[cert.witness->index].valuation() == cert.witness->numerator_valuation - cert.witness->divisor_valuation);
        for (int i = 1; i < cert.witness->index; ++i) CHECK(z[i].is_integral());
    }
}

TEST_CASE("outcome names") {
    CHECK(to_string(TorsionOutcome::integral) == "integral");
    CHECK(to_string(TorsionOutcome::non_integral) == "non-integral");
    CHECK(to_string(TorsionOutcome::inconclusive) == "inconclusive");
}
