#include "padyn/newton.hpp"

#include <algorithm>
#include <string>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

struct Point {
    int index;
    Rational valuation;
};

Rational slope(const Point& a, const Point& b) {
    return (b.valuation - a.valuation) / Rational(b.index - a.index);
}

// Monotone chain; collinear points are dropped so only corners survive.
std::vector<Vertex> lower_hull(const std::vector<Point>& pts) {
    std::vector<Point> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && slope(hull[hull.size() - 2], hull.back()) >= slope(hull.back(), pt)) {
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    std::vector<Vertex> out;
    out.reserve(hull.size());
    for (const auto& h : hull) out.push_back({h.index, h.valuation});
    return out;
}

Rational hull_value(const std::vector<Vertex>& hull, int index) {
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& a = hull[k];
        const auto& b = hull[k + 1];
        if (index >= a.index && index <= b.index) {
            return a.valuation + (b.valuation - a.valuation) * Rational(index - a.index, b.index - a.index);
        }
    }
    return hull.back().valuation;
}

// Hull of the coefficients with index <= last; coefficients known only as
// O(p^q) must sit on or above it.
std::vector<Vertex> hull_of(const PadicSeries& g, int last) {
    std::vector<Point> pts;
    std::vector<Point> bounds;
    for (int i = 1; i <= last; ++i) {
        const auto& c = g[i];
        if (c.is_exact_zero()) continue;
        if (c.is_zero()) {
            bounds.push_back({i, Rational(c.precision())});
        } else {
            pts.push_back({i, Rational(*c.valuation())});
        }
    }
    if (pts.empty()) throw PreconditionError("Newton polygon of a zero series");
    auto hull = lower_hull(pts);
    for (const auto& b : bounds) {
        if (b.index > hull.back().index) continue;
        if (b.index < hull.front().index || b.valuation < hull_value(hull, b.index)) {
            throw PrecisionError("coefficient of x^" + std::to_string(b.index) + " is only known mod p^" +
                                 b.valuation.to_string() + ", which does not determine the Newton polygon");
        }
    }
    return hull;
}

template <class Series_>
std::optional<int> first_unit(const Series_& g) {
    for (int i = 1; i <= g.order(); ++i) {
        if (g[i].is_unit()) return i;
    }
    return std::nullopt;
}

} // namespace

NewtonPolygon::NewtonPolygon(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
        if (vertices_[k].index <= vertices_[k - 1].index) throw std::invalid_argument("polygon vertices must have increasing indices");
    }
}

std::vector<Segment> NewtonPolygon::segments() const {
    std::vector<Segment> segs;
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
        const auto& a = vertices_[k - 1];
        const auto& b = vertices_[k];
        segs.push_back({(b.valuation - a.valuation) / Rational(b.index - a.index), b.index - a.index});
    }
    return segs;
}

int RootValuationMultiset::total() const {
    int n = 0;
    for (const auto& [lambda, count] : entries) n += count;
    return n;
}

std::optional<int> weierstrass_degree(const PadicSeries& g) {
    for (int i = 1; i <= g.order(); ++i) {
        const auto& c = g[i];
        if (!c.is_integral()) throw PreconditionError("Weierstrass degree of a non-integral series");
        if (c.is_zero() && c.precision() < 1) {
            throw PrecisionError("residue of the x^" + std::to_string(i) + " coefficient is unknown");
        }
        if (c.is_unit()) return i;
    }
    return std::nullopt;
}

std::optional<int> weierstrass_degree(const ResidueSeries& g) { return first_unit(g); }

NewtonPolygon newton_polygon(const PadicSeries& g) {
    return NewtonPolygon(hull_of(g, g.order()));
}

NewtonPolygon negative_part(const NewtonPolygon& poly) {
    std::vector<Vertex> out;
    for (const auto& v : poly.vertices()) {
        if (v.valuation < Rational(0)) throw PreconditionError("negative part of a non-integral polygon");
        out.push_back(v);
        if (v.valuation == Rational(0)) return NewtonPolygon(std::move(out));
    }
    throw PrecisionError("polygon has no valuation-0 vertex within the truncation; its negative part is incomplete");
}

NewtonPolygon negative_part(const PadicSeries& g) {
    const auto w = weierstrass_degree(g);
    if (!w) {
        throw PrecisionError("Weierstrass degree exceeds K = " + std::to_string(g.order()) +
                             "; the negative part of the polygon is incomplete");
    }
    return negative_part(NewtonPolygon(hull_of(g, *w)));
}

RootValuationMultiset root_valuations(const NewtonPolygon& negative) {
    RootValuationMultiset out;
    for (const auto& seg : negative.segments()) {
        if (seg.slope >= Rational(0)) throw PreconditionError("root_valuations expects a negative-slope polygon");
        out.entries.emplace_back(-seg.slope, seg.length);
    }
    return out;
}

RootValuationMultiset root_valuations(const PadicSeries& g) {
    return root_valuations(negative_part(g));
}

WeierstrassFactorization wprep(const PadicSeries& g) {
    const PrimeContext& ctx = g.ctx();
    const int K = ctx.K();
    const auto w = weierstrass_degree(g);
    if (!w) throw PrecisionError("Weierstrass degree undetermined within K = " + std::to_string(K));
    const int d = *w;
    if (2 * d > K) {
        throw PreconditionError("Weierstrass preparation needs wideg(g) <= K - wideg(g); got wideg " +
                                std::to_string(d) + " with K = " + std::to_string(K));
    }

    const auto len = static_cast<std::size_t>(K) + 1;
    const auto zero = PadicNumber::exact_zero(ctx.p());
    DenseSeries<PadicNumber> full(len, zero);
    for (int i = 1; i <= K; ++i) full[static_cast<std::size_t>(i)] = g[i];

    auto high_part = [&](const DenseSeries<PadicNumber>& q) {
        DenseSeries<PadicNumber> hi(len, zero);
        for (std::size_t j = 0; j + static_cast<std::size_t>(d) < len; ++j) hi[j] = q[j + static_cast<std::size_t>(d)];
        return hi;
    };

    // Drive g * V towards x^d + (lower terms); V^{-1} is then the unit.
    DenseSeries<PadicNumber> inv_unit = dense_inverse(high_part(full), len, ctx);
    DenseSeries<PadicNumber> q;
    const PadicNumber one = PadicNumber::from_int(ctx, 1);
    const int max_iterations = ctx.N() + K + 8;
    int it = 0;
    bool converged = false;
    for (; it <= max_iterations; ++it) {
        q = detail::dense_mul(full, inv_unit, len, ctx);
        auto hi = high_part(q);
        bool settled = (hi[0] - one).is_zero();
        for (std::size_t j = 1; settled && j < hi.size(); ++j) settled = hi[j].is_zero();
        if (settled) {
            converged = true;
            break;
        }
        inv_unit = detail::dense_mul(inv_unit, dense_inverse(hi, len, ctx), len, ctx);
    }
    if (!converged) throw PrecisionError("Weierstrass preparation did not converge at precision N = " + std::to_string(ctx.N()));

    WeierstrassFactorization out{PadicSeries(ctx, Ring::integral), dense_inverse(inv_unit, len, ctx), d, 0, K + 1, it};
    for (int i = 1; i < d; ++i) out.distinguished.set(i, q[static_cast<std::size_t>(i)]);
    out.distinguished.set(d, one);

    const PadicSeries residual = g - mul_dense(out.distinguished, out.unit);
    if (!residual.is_zero()) throw PrecisionError("Weierstrass residual is nonzero at tracked precision");
    out.residual_digits = min_precision(residual);
    return out;
}

LambdaCheckReport lambda_polygon_check(const PadicSeries& f, const PadicSeries& u, int n, int delta) {
    if (n < delta) throw PreconditionError("lambda check needs n >= delta");
    if (f.ring() != Ring::integral || u.ring() != Ring::integral) throw PreconditionError("lambda check needs integral series");
    const int p = f.ctx().p();
    std::uint64_t steps = 1;
    for (int k = 0; k < n - delta; ++k) steps *= static_cast<std::uint64_t>(p);

    LambdaCheckReport report;
    report.n = n;
    report.delta = delta;
    report.lhs = root_valuations(iterate(f, static_cast<std::uint64_t>(n)));
    const PadicSeries fixed = iterate(u, steps) - PadicSeries::identity(u.ctx(), u.ring());
    report.rhs = root_valuations(fixed);
    report.equal = report.lhs == report.rhs;
    return report;
}

} // namespace padyn
