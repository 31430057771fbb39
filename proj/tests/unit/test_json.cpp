#include <doctest.h>

#include <padyn/errors.hpp>
#include <padyn/json.hpp>

using namespace padyn;

TEST_CASE("p-adic numbers round trip") {
    const PrimeContext ctx(3, 10, 4);
    const auto x = PadicNumber::from_parts(3, 2, 5, 9);
    CHECK(to_json(x) == json({{"v", 2}, {"u", "5"}, {"prec", 9}}));
    CHECK(padic_from_json(to_json(x), ctx) == x);
    CHECK(to_json(PadicNumber::exact_zero(3)) == json({{"v", "inf"}, {"u", "0"}, {"prec", "inf"}}));
    CHECK(padic_from_json(to_json(PadicNumber::zero_at(3, 4)), ctx) == PadicNumber::zero_at(3, 4));
    CHECK(padic_from_json(json(-1), ctx) == PadicNumber::from_int(ctx, -1));
    CHECK(padic_from_json(json("123456789012345678901234567890"), ctx).precision() == 10);
    CHECK_THROWS_AS(padic_from_json(json({{"v", 0}, {"u", "3"}, {"prec", 4}}), ctx), PreconditionError);
    CHECK_THROWS_AS(padic_from_json(json("12x"), ctx), PreconditionError);
    CHECK_THROWS_AS(padic_from_json(json({{"v", 0}}), ctx), PreconditionError);
}

TEST_CASE("series round trip") {
    const PrimeContext ctx(2, 8, 4);
    const auto s = gm_endomorphism(ctx, mpz_class(5));
    const json j = to_json(s);
    CHECK(j.at("ring") == "integral");
    CHECK(j.at("ctx") == json({{"p", 2}, {"N", 8}, {"K", 4}}));
    CHECK(padic_series_from_json(j) == s);
    const auto r = reduce_mod_p(s);
    CHECK(to_json(r).at("coeffs") == json({1, 0, 0, 1}));
    CHECK(residue_series_from_json(to_json(r)) == r);
    CHECK(to_json(s.with_ring(Ring::padic_float)).at("ring") == "float");
    CHECK_THROWS_AS(residue_series_from_json(j), RingMismatch);
    CHECK_THROWS_AS(series_from_json(json({{"coeffs", {1}}})), PreconditionError);
    CHECK_THROWS_AS(series_from_json(json({{"coeffs", {1}}, {"ring", "complex"}}), &ctx), PreconditionError);
    CHECK(std::holds_alternative<PadicSeries>(series_from_json(json({{"coeffs", {1, 2}}}), &ctx)));
}

TEST_CASE("polygon and profile formats") {
    const PrimeContext ctx(2, 16, 64);
    const auto u = gm_endomorphism(ctx, mpz_class(5));
    const auto neg = negative_part(iterate(u, 2) - PadicSeries::identity(ctx, Ring::integral));
    CHECK(to_json(neg).at("vertices") == json::parse(R"([[1,"3"],[2,"2"],[4,"1"],[8,"0"]])"));
    const auto prof = lower_ramification(reduce_mod_p(u), 3);
    const json pj = to_json(prof);
    CHECK(pj.at("i") == json::parse(R"([3,7,15,31])"));
    CHECK(pj.at("e_estimates") == json::parse(R"(["3/2","7/4","15/8","31/16"])"));
    CHECK(pj.at("e") == 2);
    const auto cut = to_json(lower_ramification(reduce_mod_p(u), 6));
    CHECK(cut.at("i").back() == "undetermined");
    CHECK(cut.at("sen").back().is_null());
}

TEST_CASE("certificate and pair formats") {
    const PrimeContext ctx(2, 72, 64);
    const auto pair = gm_minimal_pair(ctx);
    const json cert = to_json(torsion_check(pair.f, pair.u));
    CHECK(cert.at("outcome") == "integral");
    CHECK(cert.at("verified_order") == true);
    CHECK(cert.at("precision") == json({{"N", 72}, {"K", 64}}));
    CHECK(cert.contains("series"));
    CHECK_FALSE(cert.contains("witness_index"));

    const json bundle = to_json(conjugated_pair(PrimeContext(3, 20, 8), 9));
    CHECK(bundle.at("provenance") == json({{"kind", "conjugated"}, {"seed", 9}}));
    const auto back = pair_from_json(bundle);
    CHECK(back.kind == PairKind::conjugated);
    CHECK(back.seed == 9u);
    CHECK(to_json(back) == bundle);
}

TEST_CASE("keys are sorted") {
    const std::string dumped = to_json(PadicNumber::from_parts(5, 1, 2, 6)).dump();
    CHECK(dumped == R"({"prec":6,"u":"2","v":1})");
}
