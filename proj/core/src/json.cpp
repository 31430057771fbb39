#include "padyn/json.hpp"

#include <string>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

mpz_class as_mpz(const json& j, const char* what) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        mpz_class v;
        if (v.set_str(j.get<std::string>(), 10) != 0) malformed(std::string(what) + " is not a decimal integer");
        return v;
    }
    malformed(std::string(what) + " must be an integer or a decimal string");
}

PrimeContext resolve_ctx(const json& j, const PrimeContext* fallback) {
    if (j.is_object() && j.contains("ctx")) return context_from_json(j.at("ctx"));
    if (fallback) return *fallback;
    malformed("series has no \"ctx\" and none was supplied");
}

template <class Entries>
json entries_to_json(const Entries& xs) {
    json arr = json::array();
    for (const auto& x : xs) arr.push_back(to_json(x));
    return arr;
}

json optional_int(const std::optional<std::int64_t>& v, const char* none) {
    return v ? json(*v) : json(none);
}

} // namespace

void malformed(const std::string& what) { throw PreconditionError(what, "malformed_input"); }

json to_json(const PrimeContext& ctx) { return {{"p", ctx.p()}, {"N", ctx.N()}, {"K", ctx.K()}}; }

PrimeContext context_from_json(const json& j) {
    const auto p = as_int(field(j, "p"), "p");
    const auto N = as_int(field(j, "N"), "N");
    const auto K = as_int(field(j, "K"), "K");
    if (p > 1'000'000 || N > 1'000'000 || K > 100'000 || p < 0 || N < 0 || K < 0) {
        throw PreconditionError("context out of supported range", "invalid_context");
    }
    return {static_cast<int>(p), static_cast<int>(N), static_cast<int>(K)};
}

json to_json(const PadicNumber& x) {
    if (x.is_zero()) {
        return {{"v", "inf"}, {"u", "0"}, {"prec", x.is_exact_zero() ? json("inf") : json(x.precision())}};
    }
    return {{"v", *x.valuation()}, {"u", x.unit().get_str()}, {"prec", x.precision()}};
}

PadicNumber padic_from_json(const json& j, const PrimeContext& ctx) {
    if (!j.is_object()) return PadicNumber::from_integer(ctx.p(), as_mpz(j, "coefficient"), ctx.N());
    const json& v = field(j, "v");
    const json& prec = field(j, "prec");
    const bool inf_prec = prec.is_string() && prec.get<std::string>() == "inf";
    if (!inf_prec && !prec.is_number_integer()) malformed("\"prec\" must be an integer or \"inf\"");
    if (v.is_string() && v.get<std::string>() == "inf") {
        return inf_prec ? PadicNumber::exact_zero(ctx.p()) : PadicNumber::zero_at(ctx.p(), prec.get<std::int64_t>());
    }
    if (inf_prec) malformed("only zero may carry infinite precision");
    const auto val = as_int(v, "\"v\"");
    const auto q = prec.get<std::int64_t>();
    if (q <= val) malformed("a nonzero coefficient needs prec > v");
    const mpz_class u = as_mpz(field(j, "u"), "\"u\"");
    if (u % ctx.p() == 0) malformed("\"u\" must be a p-adic unit");
    return PadicNumber::from_parts(ctx.p(), val, u, q);
}

json to_json(const PadicSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(to_json(c));
    return {{"ctx", to_json(s.ctx())}, {"ring", to_string(s.ring())}, {"coeffs", coeffs}};
}

json to_json(const ResidueSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(c.value());
    return {{"ctx", to_json(s.ctx())}, {"ring", to_string(s.ring())}, {"coeffs", coeffs}};
}

json to_json(const AnySeries& s) {
    return std::visit([](const auto& x) { return to_json(x); }, s);
}

AnySeries series_from_json(const json& j, const PrimeContext* fallback) {
    if (!j.is_object()) malformed("a series must be a JSON object");
    const PrimeContext ctx = resolve_ctx(j, fallback);
    Ring ring = Ring::integral;
    if (j.contains("ring")) {
        if (!j.at("ring").is_string()) malformed("\"ring\" must be a string");
        ring = ring_from_string(j.at("ring").get<std::string>());
    }
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) malformed("\"coeffs\" must be an array");
    if (ring == Ring::residue) {
        std::vector<Residue> cs;
        for (const auto& c : coeffs) {
            const mpz_class v = as_mpz(c, "residue coefficient");
            mpz_class r = v % ctx.p();
            if (r < 0) r += ctx.p();
            cs.emplace_back(ctx.p(), r.get_si());
        }
        return ResidueSeries(ctx, ring, std::move(cs));
    }
    std::vector<PadicNumber> cs;
    for (const auto& c : coeffs) cs.push_back(padic_from_json(c, ctx));
    return PadicSeries(ctx, ring, std::move(cs));
}

PadicSeries padic_series_from_json(const json& j, const PrimeContext* fallback) {
    auto s = series_from_json(j, fallback);
    if (auto* ps = std::get_if<PadicSeries>(&s)) return std::move(*ps);
    throw RingMismatch("expected a p-adic series, got one over the residue field");
}

ResidueSeries residue_series_from_json(const json& j, const PrimeContext* fallback) {
    auto s = series_from_json(j, fallback);
    if (auto* rs = std::get_if<ResidueSeries>(&s)) return std::move(*rs);
    throw RingMismatch("expected a series over the residue field");
}

json to_json(const Rational& r) { return r.to_string(); }

json to_json(const NewtonPolygon& poly) {
    json vertices = json::array();
    for (const auto& v : poly.vertices()) vertices.push_back(json::array({v.index, v.valuation.to_string()}));
    json segments = json::array();
    for (const auto& s : poly.segments()) segments.push_back({{"slope", s.slope.to_string()}, {"length", s.length}});
    return {{"vertices", vertices}, {"segments", segments}};
}

json to_json(const RootValuationMultiset& roots) {
    json arr = json::array();
    for (const auto& [lambda, count] : roots.entries) arr.push_back(json::array({lambda.to_string(), count}));
    return arr;
}

json to_json(const WeierstrassFactorization& w) {
    return {{"distinguished", to_json(w.distinguished)},
            {"unit", entries_to_json(w.unit)},
            {"degree", w.degree},
            {"residual", {{"p_digits", w.residual_digits}, {"x_order", w.residual_x_order}}},
            {"iterations", w.iterations}};
}

json to_json(const LambdaCheckReport& r) {
    return {{"equal", r.equal}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"n", r.n}, {"delta", r.delta}};
}

json to_json(const Linearization& lin) {
    json profile = json::array();
    for (auto v : lin.min_valuation_profile) {
        profile.push_back(v == PadicNumber::kInfinitePrecision ? json("inf") : json(v));
    }
    return {{"series", to_json(lin.series)}, {"valuation_profile", profile}};
}

json to_json(const TorsionCertificate& cert) {
    json j = {{"outcome", to_string(cert.outcome)},
              {"verified_order", cert.verified_order},
              {"precision", {{"N", cert.N}, {"K", cert.K}}}};
    if (cert.series) {
        j["series"] = to_json(*cert.series);
        j["series_precision"] = cert.series_precision;
    }
    if (cert.witness) {
        j["witness_index"] = cert.witness->index;
        j["witness"] = {{"numerator_valuation", cert.witness->numerator_valuation},
                        {"divisor_valuation", cert.witness->divisor_valuation}};
    }
    if (cert.commutes_with_u) j["commutes_with_u"] = *cert.commutes_with_u;
    if (cert.d2) j["d2"] = to_json(*cert.d2);
    return j;
}

json to_json(const MinimalPairReport& r) {
    return {{"wideg_f", r.wideg_f ? json(*r.wideg_f) : json("undetermined")},
            {"v_f_prime", optional_int(r.v_f_prime, "inf")},
            {"v_u_shift", optional_int(r.v_u_shift, "inf")},
            {"u_invertible", r.u_invertible},
            {"u_nontorsion", r.u_nontorsion},
            {"commutes", r.commutes},
            {"commute_precision", r.commute_precision ? json(*r.commute_precision) : json(nullptr)},
            {"is_minimal", r.is_minimal},
            {"failures", r.failures}};
}

json to_json(const PairBundle& b) {
    json provenance = {{"kind", to_string(b.kind)}};
    if (b.seed) provenance["seed"] = *b.seed;
    return {{"f", to_json(b.f)}, {"u", to_json(b.u)}, {"provenance", provenance}};
}

PairBundle pair_from_json(const json& j, const PrimeContext* fallback) {
    PadicSeries f = padic_series_from_json(field(j, "f"), fallback);
    PadicSeries u = padic_series_from_json(field(j, "u"), fallback);
    PairBundle b{std::move(f), std::move(u), PairKind::gm, std::nullopt};
    if (j.contains("provenance")) {
        const json& prov = j.at("provenance");
        const std::string kind = field(prov, "kind").is_string() ? prov.at("kind").get<std::string>() : "";
        if (kind == "gm") b.kind = PairKind::gm;
        else if (kind == "lt") b.kind = PairKind::lt;
        else if (kind == "conjugated") b.kind = PairKind::conjugated;
        else malformed("unknown pair kind \"" + kind + "\"");
        if (prov.contains("seed")) {
            if (!prov.at("seed").is_number_unsigned()) malformed("\"seed\" must be a nonnegative integer");
            b.seed = prov.at("seed").get<std::uint64_t>();
        }
    }
    return b;
}

json to_json(const RamificationProfile& prof) {
    json i = json::array();
    for (const auto& v : prof.i) i.push_back(prof.identity ? json("inf") : optional_int(v, "undetermined"));
    json sen = json::array();
    for (const auto& s : prof.sen) sen.push_back(s ? json(*s) : json(nullptr));
    return {{"i", i},
            {"sen", sen},
            {"e_estimates", entries_to_json(prof.e_estimates)},
            {"e", optional_int(prof.e, "undetermined")},
            {"identity", prof.identity},
            {"K", prof.K}};
}

json to_json(const TorsionInvariant& inv) {
    json j = {{"order", inv.order ? json(*inv.order) : json("not torsion within bounds")}, {"K", inv.K}};
    if (inv.ell) j["ell"] = *inv.ell;
    if (inv.a) j["a"] = inv.a->value();
    return j;
}

json to_json(const G0Order& ord) {
    return {{"order", ord.order ? json(*ord.order) : json("not torsion within bounds")},
            {"linear_order", ord.linear_order},
            {"K", ord.K}};
}

json to_json(const NormalizerWitness& w) {
    json j = {{"m", w.m}, {"K", w.K}};
    if (w.a) j["a"] = w.a->get_str();
    if (w.failed_stage) j["failed_stage"] = *w.failed_stage;
    j["member"] = w.a.has_value();
    return j;
}

} // namespace padyn
