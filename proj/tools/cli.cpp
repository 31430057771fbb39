#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <padyn/errors.hpp>

namespace padyn::cli {

namespace {

const json& need(const json& inputs, const char* key) {
    if (!inputs.is_object() || !inputs.contains(key)) malformed(std::string("missing input \"") + key + "\"");
    return inputs.at(key);
}

std::int64_t int_or(const json& inputs, const char* key, std::int64_t fallback) {
    if (!inputs.contains(key)) return fallback;
    const json& v = inputs.at(key);
    if (!v.is_number_integer()) malformed(std::string("\"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

int small_int(const json& inputs, const char* key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    const auto v = int_or(inputs, key, fallback);
    if (v < lo || v > hi) {
        throw PreconditionError(std::string("\"") + key + "\" must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
}

mpz_class big_int(const json& v, const char* what) {
    mpz_class out;
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
    if (!v.is_string() || out.set_str(v.get<std::string>(), 10) != 0) malformed(std::string(what) + " must be an integer");
    return out;
}

PadicSeries padic(const AnySeries& s, const char* what) {
    if (const auto* ps = std::get_if<PadicSeries>(&s)) return *ps;
    throw RingMismatch(std::string(what) + " must be a p-adic series");
}

ResidueSeries residue(const AnySeries& s, const char* what) {
    if (const auto* rs = std::get_if<ResidueSeries>(&s)) return *rs;
    throw RingMismatch(std::string(what) + " must be a series over the residue field (wrap it in {\"reduce\": ...})");
}

std::pair<const json*, const json*> binary_args(const json& expr, const char* op) {
    const json& args = expr.at(op);
    if (!args.is_array() || args.size() != 2) malformed(std::string("\"") + op + "\" takes two operands");
    return {&args[0], &args[1]};
}

template <class F>
AnySeries lift_binary(const AnySeries& a, const AnySeries& b, F&& op) {
    return std::visit(
        [&](const auto& x, const auto& y) -> AnySeries {
            using X = std::decay_t<decltype(x)>;
            using Y = std::decay_t<decltype(y)>;
            if constexpr (std::is_same_v<X, Y>) {
                return op(x, y);
            } else {
                throw RingMismatch("operands live over different rings");
            }
        },
        a, b);
}

struct Command {
    std::function<json(const JobSpec&, const PrimeContext&)> handler;
};

PadicSeries padic_input(const JobSpec& job, const PrimeContext& ctx, const char* key) {
    return padic(eval_series(need(job.inputs, key), ctx), key);
}

ResidueSeries residue_input(const JobSpec& job, const PrimeContext& ctx, const char* key) {
    return residue(eval_series(need(job.inputs, key), ctx), key);
}

std::pair<PadicSeries, PadicSeries> pair_input(const JobSpec& job, const PrimeContext& ctx) {
    if (job.inputs.contains("pair")) {
        auto b = pair_from_json(job.inputs.at("pair"), &ctx);
        return {std::move(b.f), std::move(b.u)};
    }
    return {padic_input(job, ctx, "f"), padic_input(job, ctx, "u")};
}

json cmd_polygon(const JobSpec& job, const PrimeContext& ctx) {
    const PadicSeries g = padic_input(job, ctx, "series");
    const NewtonPolygon full = newton_polygon(g);
    const NewtonPolygon neg = negative_part(g);
    json out = to_json(neg);
    out["polygon"] = to_json(full);
    out["roots"] = to_json(root_valuations(neg));
    // per-coefficient valuations for the plot
    json points = json::array();
    for (int i = 1; i <= g.order(); ++i) {
        const auto& c = g[i];
        points.push_back(c.is_zero() ? json(nullptr) : json(*c.valuation()));
    }
    out["points"] = points;
    return out;
}

json cmd_wprep(const JobSpec& job, const PrimeContext& ctx) { return to_json(wprep(padic_input(job, ctx, "series"))); }

json cmd_wideg(const JobSpec& job, const PrimeContext& ctx) {
    const AnySeries s = eval_series(need(job.inputs, "series"), ctx);
    const auto d = std::visit([](const auto& x) { return weierstrass_degree(x); }, s);
    return {{"wideg", d ? json(*d) : json("undetermined")}, {"K", ctx.K()}};
}

json cmd_linearize(const JobSpec& job, const PrimeContext& ctx) { return to_json(linearize(padic_input(job, ctx, "series"))); }

json cmd_commutant(const JobSpec& job, const PrimeContext& ctx) {
    const PadicSeries f = padic_input(job, ctx, "series");
    const PadicNumber a = padic_from_json(need(job.inputs, "a"), ctx);
    const std::string route = job.inputs.value("route", std::string("recursion"));
    if (route == "recursion") return {{"series", to_json(commutant(f, a))}, {"route", route}};
    if (route == "linearization") return {{"series", to_json(commutant_via_linearization(f, a))}, {"route", route}};
    if (route == "lubin-tate") return {{"series", to_json(lubin_tate_endo(f, a))}, {"route", route}};
    malformed("unknown route \"" + route + "\"");
}

json cmd_torsion(const JobSpec& job, const PrimeContext& ctx) {
    std::optional<PadicSeries> u;
    PadicSeries f(ctx, Ring::integral);
    if (job.inputs.contains("pair")) {
        auto [ff, uu] = pair_input(job, ctx);
        f = std::move(ff);
        u = std::move(uu);
    } else {
        f = padic_input(job, ctx, "f");
        if (job.inputs.contains("u")) u = padic_input(job, ctx, "u");
    }
    TorsionOptions opts;
    opts.output_precision = small_int(job.inputs, "output_precision", opts.output_precision, 1, 1 << 20);
    return to_json(torsion_check(f, u, opts));
}

json cmd_ramification(const JobSpec& job, const PrimeContext& ctx) {
    return to_json(lower_ramification(residue_input(job, ctx, "series"), small_int(job.inputs, "n_max", 3, 0, 16)));
}

json cmd_order(const JobSpec& job, const PrimeContext& ctx) {
    const ResidueSeries w = residue_input(job, ctx, "series");
    const int d_max = small_int(job.inputs, "d_max", 8, 0, 30);
    if (w[1] == Residue::from_int(ctx, 1)) {
        json out = to_json(nottingham_order(w, d_max));
        out["group"] = "nottingham";
        return out;
    }
    json out = to_json(g0_order(w, d_max));
    out["group"] = "G0";
    return out;
}

json cmd_normalizer(const JobSpec& job, const PrimeContext& ctx) {
    return to_json(normalizer_witness(residue_input(job, ctx, "theta"), residue_input(job, ctx, "omega"),
                                      small_int(job.inputs, "m", 4, 1, 30)));
}

json cmd_lambda(const JobSpec& job, const PrimeContext& ctx) {
    auto [f, u] = pair_input(job, ctx);
    return to_json(lambda_polygon_check(f, u, small_int(job.inputs, "n", 1, 0, 12),
                                        small_int(job.inputs, "delta", ctx.delta(), 0, 12)));
}

json cmd_gen_pair(const JobSpec& job, const PrimeContext& ctx) {
    const std::string kind = job.inputs.value("kind", std::string("gm"));
    if (kind == "gm") return to_json(gm_minimal_pair(ctx));
    if (kind == "lt") return to_json(lt_minimal_pair(ctx));
    if (kind == "conjugated") {
        std::uint64_t seed = job.seed.value_or(0);
        if (!job.seed && job.inputs.contains("seed")) {
            if (!job.inputs.at("seed").is_number_unsigned()) malformed("\"seed\" must be a nonnegative integer");
            seed = job.inputs.at("seed").get<std::uint64_t>();
        }
        return to_json(conjugated_pair(ctx, seed));
    }
    malformed("unknown pair kind \"" + kind + "\"");
}

json cmd_validate(const JobSpec& job, const PrimeContext& ctx) {
    auto [f, u] = pair_input(job, ctx);
    return to_json(validate_minimal_pair(f, u));
}

json cmd_zp_iterate(const JobSpec& job, const PrimeContext& ctx) {
    const ResidueSeries w = residue_input(job, ctx, "series");
    const int m = small_int(job.inputs, "m", 4, 0, 30);
    return {{"series", to_json(zp_iterate(w, big_int(need(job.inputs, "a"), "\"a\""), m))}, {"certified", true}, {"m", m}};
}

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"polygon", {cmd_polygon}},
        {"wprep", {cmd_wprep}},
        {"wideg", {cmd_wideg}},
        {"linearize", {cmd_linearize}},
        {"commutant", {cmd_commutant}},
        {"torsion-check", {cmd_torsion}},
        {"ramification", {cmd_ramification}},
        {"order", {cmd_order}},
        {"normalizer", {cmd_normalizer}},
        {"lambda-check", {cmd_lambda}},
        {"gen-pair", {cmd_gen_pair}},
        {"validate-pair", {cmd_validate}},
        {"zp-iterate", {cmd_zp_iterate}},
    };
    return table;
}

json error_report(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

} // namespace

JobSpec job_from_json(const json& doc, const JobSpec& base) {
    if (!doc.is_object()) malformed("a job must be a JSON object");
    JobSpec job = base;
    if (job.command.empty()) {
        if (!doc.contains("command") || !doc.at("command").is_string()) malformed("missing \"command\"");
        job.command = doc.at("command").get<std::string>();
    }
    if (!job.ctx && doc.contains("ctx")) job.ctx = context_from_json(doc.at("ctx"));
    if (!job.seed && doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) malformed("\"seed\" must be a nonnegative integer");
        job.seed = doc.at("seed").get<std::uint64_t>();
    }
    json inputs = doc;
    for (const char* key : {"command", "ctx", "seed"}) inputs.erase(key);
    for (auto& [k, v] : base.inputs.items()) inputs[k] = v;
    job.inputs = std::move(inputs);
    return job;
}

AnySeries eval_series(const json& expr, const PrimeContext& ctx) {
    if (expr.is_string()) {
        if (expr.get<std::string>() == "x") return PadicSeries::identity(ctx, Ring::integral);
        malformed("unknown series literal \"" + expr.get<std::string>() + "\"");
    }
    if (!expr.is_object()) malformed("a series expression must be an object or \"x\"");
    if (expr.contains("binom")) return gm_endomorphism(ctx, big_int(expr.at("binom"), "\"binom\""));
    if (expr.contains("coeffs")) return series_from_json(expr, &ctx);
    if (expr.contains("add")) {
        auto [a, b] = binary_args(expr, "add");
        return lift_binary(eval_series(*a, ctx), eval_series(*b, ctx), [](const auto& x, const auto& y) { return x + y; });
    }
    if (expr.contains("sub")) {
        auto [a, b] = binary_args(expr, "sub");
        return lift_binary(eval_series(*a, ctx), eval_series(*b, ctx), [](const auto& x, const auto& y) { return x - y; });
    }
    if (expr.contains("compose")) {
        auto [a, b] = binary_args(expr, "compose");
        return lift_binary(eval_series(*a, ctx), eval_series(*b, ctx),
                           [](const auto& x, const auto& y) { return compose(x, y); });
    }
    if (expr.contains("iterate")) {
        const auto n = int_or(expr, "n", 1);
        if (n < 0 || n > (1LL << 40)) throw PreconditionError("iterate count out of range");
        return std::visit([&](const auto& s) -> AnySeries { return iterate(s, static_cast<std::uint64_t>(n)); },
                          eval_series(expr.at("iterate"), ctx));
    }
    if (expr.contains("inverse")) {
        return std::visit([](const auto& s) -> AnySeries { return comp_inverse(s); }, eval_series(expr.at("inverse"), ctx));
    }
    if (expr.contains("reduce")) {
        const AnySeries inner = eval_series(expr.at("reduce"), ctx);
        if (std::holds_alternative<ResidueSeries>(inner)) return inner;
        return reduce_mod_p(std::get<PadicSeries>(inner));
    }
    malformed("unrecognized series expression");
}

JobResult run(const JobSpec& job) {
    JobResult result;
    try {
        const auto& table = commands();
        const auto it = table.find(job.command);
        if (it == table.end()) malformed("unknown command \"" + job.command + "\"");
        if (!job.ctx) malformed("no context: pass --p, --N and --K or a \"ctx\" object");
        result.report = it->second.handler(job, *job.ctx);
        result.report["command"] = job.command;
        result.report["ctx"] = to_json(*job.ctx);
    } catch (const Error& e) {
        result.exit_code = e.code() == "malformed_input" ? 1 : 2;
        result.report = error_report(e.code(), e.what());
    } catch (const json::exception& e) {
        result.exit_code = 1;
        result.report = error_report("malformed_input", e.what());
    } catch (const std::invalid_argument& e) {
        result.exit_code = 1;
        result.report = error_report("malformed_input", e.what());
    } catch (const std::domain_error& e) {
        result.exit_code = 1;
        result.report = error_report("malformed_input", e.what());
    } catch (const std::out_of_range& e) {
        result.exit_code = 1;
        result.report = error_report("malformed_input", e.what());
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.report = error_report("internal", e.what());
    }
    return result;
}

namespace {

// Valuation up, index right; '*' vertex, '-' hull, 'o' coefficient above
// the hull, ':' marks the column past which nothing is known.
std::string plot_polygon(const json& report) {
    const json& verts = report.at("polygon").at("vertices");
    const json& points = report.at("points");
    if (verts.empty()) return {};
    std::vector<std::pair<int, double>> hull;
    for (const auto& v : verts) {
        const Rational r = Rational::parse(v[1].get<std::string>());
        hull.emplace_back(v[0].get<int>(), static_cast<double>(r.num()) / static_cast<double>(r.den()));
    }
    const int width = std::min<int>(static_cast<int>(points.size()), 72);
    double top = 0;
    for (const auto& [i, v] : hull) {
        if (i <= width) top = std::max(top, v);
    }
    const int height = std::min(16, static_cast<int>(std::ceil(top)));
    auto hull_at = [&](int i) -> std::optional<double> {
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const auto [i0, v0] = hull[k];
            const auto [i1, v1] = hull[k + 1];
            if (i >= i0 && i <= i1) return v0 + (v1 - v0) * (i - i0) / static_cast<double>(i1 - i0);
        }
        if (hull.size() == 1 && i == hull[0].first) return hull[0].second;
        return std::nullopt;
    };

    std::ostringstream os;
    for (int row = height; row >= 0; --row) {
        os << (row < 10 ? " " : "") << row << " |";
        for (int i = 1; i <= width; ++i) {
            char c = ' ';
            const json& pt = points[static_cast<std::size_t>(i - 1)];
            if (!pt.is_null() && pt.get<std::int64_t>() == row) c = 'o';
            if (const auto h = hull_at(i); h && std::lround(*h) == row) c = '-';
            for (const auto& [vi, vv] : hull) {
                if (vi == i && std::abs(vv - row) < 1e-9) c = '*';
            }
            os << c;
        }
        if (static_cast<int>(points.size()) > width) os << "...";
        else os << ':';
        os << '\n';
    }
    os << "   +" << std::string(static_cast<std::size_t>(width), '-') << "> i\n";
    return os.str();
}

} // namespace

std::string render_text(const std::string& command, const json& report) {
    std::string out = report.dump(2) + "\n";
    if (command == "polygon" && !report.contains("error")) out += plot_polygon(report);
    return out;
}

} // namespace padyn::cli
