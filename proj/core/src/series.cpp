#include "padyn/series.hpp"

namespace padyn {

std::string to_string(Ring ring) {
    switch (ring) {
    case Ring::integral: return "integral";
    case Ring::padic_float: return "float";
    case Ring::residue: return "residue";
    }
    return "unknown";
}

Ring ring_from_string(const std::string& name) {
    if (name == "integral") return Ring::integral;
    if (name == "float") return Ring::padic_float;
    if (name == "residue") return Ring::residue;
    throw PreconditionError("unknown ring '" + name + "'", "malformed_input");
}

std::int64_t min_precision(const PadicSeries& s) {
    std::int64_t prec = PadicNumber::kInfinitePrecision;
    for (const auto& c : s.coeffs()) prec = std::min(prec, c.precision());
    return prec;
}

ResidueSeries reduce_mod_p(const PadicSeries& g) {
    const PrimeContext& ctx = g.ctx();
    std::vector<Residue> coeffs;
    coeffs.reserve(static_cast<std::size_t>(ctx.K()));
    for (int i = 1; i <= ctx.K(); ++i) {
        const auto& c = g[i];
        if (!c.is_integral()) throw PreconditionError("reduction mod p of a series with a negative-valuation coefficient at x^" + std::to_string(i));
        coeffs.emplace_back(ctx.p(), static_cast<long>(c.residue()));
    }
    return ResidueSeries(ctx, Ring::residue, std::move(coeffs));
}

PadicSeries lift(const ResidueSeries& g) {
    const PrimeContext& ctx = g.ctx();
    std::vector<PadicNumber> coeffs;
    coeffs.reserve(static_cast<std::size_t>(ctx.K()));
    for (int i = 1; i <= ctx.K(); ++i) {
        const auto v = g[i].value();
        coeffs.push_back(v == 0 ? PadicNumber::exact_zero(ctx.p())
                                : PadicNumber::from_integer(ctx.p(), mpz_class(static_cast<unsigned long>(v)), ctx.N()));
    }
    return PadicSeries(ctx, Ring::integral, std::move(coeffs));
}

} // namespace padyn
