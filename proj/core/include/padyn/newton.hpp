#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "padyn/rational.hpp"
#include "padyn/series.hpp"

namespace padyn {

struct Vertex {
    int index;
    Rational valuation;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Segment {
    Rational slope;
    int length;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Lower convex hull of the points (i, v_p(a_i)). Polygons are always those
/// of the series itself: the trivial root 0 contributes the column at i = 1,
/// so the polygon of P(x)/x is this one shifted left by one.
class NewtonPolygon {
public:
    NewtonPolygon() = default;
    explicit NewtonPolygon(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    std::vector<Segment> segments() const;

    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Root valuations read off the negative slopes: entry (lambda, l) means l
/// roots of valuation lambda. Valuations strictly decreasing.
struct RootValuationMultiset {
    std::vector<std::pair<Rational, int>> entries;

    int total() const;
    friend bool operator==(const RootValuationMultiset&, const RootValuationMultiset&) = default;
};

/// Weierstrass degree: index of the first unit coefficient, or nullopt when
/// the reduction vanishes through x^K (undetermined, >= K+1).
std::optional<int> weierstrass_degree(const PadicSeries& g);
std::optional<int> weierstrass_degree(const ResidueSeries& g);

/// Lower hull over all known coefficients. Throws PrecisionError if a
/// coefficient known only as O(p^q) could fall below the hull.
NewtonPolygon newton_polygon(const PadicSeries& g);

/// The negative-slope part: the hull up to its first valuation-0 vertex.
/// Throws PrecisionError when no such vertex exists (polygon incomplete).
NewtonPolygon negative_part(const NewtonPolygon& poly);
/// Same, computed from the series directly so that coefficients past the
/// Weierstrass degree never matter.
NewtonPolygon negative_part(const PadicSeries& g);

RootValuationMultiset root_valuations(const NewtonPolygon& negative);
RootValuationMultiset root_valuations(const PadicSeries& g);

/// g = P * U with P monic distinguished of degree wideg(g) and U a unit
/// series; the identity holds mod (p^residual_digits, x^(K+1)).
struct WeierstrassFactorization {
    PadicSeries distinguished;           // P, coefficients above its degree are zero
    DenseSeries<PadicNumber> unit;       // U, indices 0..K
    int degree = 0;
    std::int64_t residual_digits = 0;
    int residual_x_order = 0;
    int iterations = 0;
};

WeierstrassFactorization wprep(const PadicSeries& g);

struct LambdaCheckReport {
    bool equal = false;
    RootValuationMultiset lhs; // zeros of f^{o n}
    RootValuationMultiset rhs; // fixed points of u^{o p^(n - delta)}
    int n = 0;
    int delta = 0;
};

/// Compares the root valuations of f^{o n} with those of u^{o p^(n-delta)} - x.
LambdaCheckReport lambda_polygon_check(const PadicSeries& f, const PadicSeries& u, int n, int delta);

} // namespace padyn
