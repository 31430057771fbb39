#pragma once

#include <variant>

#include <nlohmann/json.hpp>

#include "padyn/context.hpp"
#include "padyn/lubin.hpp"
#include "padyn/newton.hpp"
#include "padyn/oracle.hpp"
#include "padyn/padic.hpp"
#include "padyn/ramification.hpp"
#include "padyn/series.hpp"

namespace padyn {

using json = nlohmann::json;
using AnySeries = std::variant<PadicSeries, ResidueSeries>;

// Every parse failure raises PreconditionError with code "malformed_input".
[[noreturn]] void malformed(const std::string& what);

json to_json(const PrimeContext& ctx);
PrimeContext context_from_json(const json& j);

// {"v": int|"inf", "u": decimal string, "prec": int|"inf"}
json to_json(const PadicNumber& x);
// Also accepts a bare integer or a decimal string, read to precision N.
PadicNumber padic_from_json(const json& j, const PrimeContext& ctx);

json to_json(const PadicSeries& s);
json to_json(const ResidueSeries& s);
json to_json(const AnySeries& s);
// {"ctx": ..., "ring": "integral"|"float"|"residue", "coeffs": [...]};
// `fallback` supplies the context when the object has none.
AnySeries series_from_json(const json& j, const PrimeContext* fallback = nullptr);
PadicSeries padic_series_from_json(const json& j, const PrimeContext* fallback = nullptr);
ResidueSeries residue_series_from_json(const json& j, const PrimeContext* fallback = nullptr);

json to_json(const Rational& r);
json to_json(const NewtonPolygon& poly);
json to_json(const RootValuationMultiset& roots);
json to_json(const WeierstrassFactorization& w);
json to_json(const LambdaCheckReport& r);
json to_json(const Linearization& lin);
json to_json(const TorsionCertificate& cert);
json to_json(const MinimalPairReport& r);
json to_json(const PairBundle& b);
PairBundle pair_from_json(const json& j, const PrimeContext* fallback = nullptr);
json to_json(const RamificationProfile& prof);
json to_json(const TorsionInvariant& inv);
json to_json(const G0Order& ord);
json to_json(const NormalizerWitness& w);

} // namespace padyn
