#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padyn/context.hpp"
#include "padyn/errors.hpp"
#include "padyn/padic.hpp"
#include "padyn/residue.hpp"

namespace padyn {

enum class Ring {
    integral,    // Z_p, tracked as p-adic numbers of nonnegative valuation
    padic_float, // Q_p floating point
    residue,     // F_p
};

std::string to_string(Ring ring);
Ring ring_from_string(const std::string& name);

template <class C>
concept Coefficient = requires(C a, const C& b, const PrimeContext& ctx) {
    { C::zero(ctx) } -> std::same_as<C>;
    { C::from_int(ctx, 1L) } -> std::same_as<C>;
    { a + b } -> std::same_as<C>;
    { a - b } -> std::same_as<C>;
    { a * b } -> std::same_as<C>;
    { a / b } -> std::same_as<C>;
    { -a } -> std::same_as<C>;
    { b.is_zero() } -> std::same_as<bool>;
    { b.is_exact_zero() } -> std::same_as<bool>;
    { b.is_unit() } -> std::same_as<bool>;
};

/// Membership of a series in S_nc and G_0.
struct SncClass {
    bool is_snc = false;
    bool is_invertible = false;
    bool is_noninvertible = false;
};

/// A power series with zero constant term, truncated mod x^(K+1).
/// Coefficients are addressed 1..K; there is no slot for a constant term.
template <Coefficient C>
class Series {
public:
    Series(PrimeContext ctx, Ring ring) : ctx_(ctx), ring_(ring), coeffs_(ctx.K(), C::zero(ctx)) {
        check_ring();
    }

    /// `coeffs[0]` is the coefficient of x. Shorter inputs are zero-padded,
    /// longer ones truncated mod x^(K+1).
    Series(PrimeContext ctx, Ring ring, std::vector<C> coeffs)
        : ctx_(ctx), ring_(ring), coeffs_(std::move(coeffs)) {
        coeffs_.resize(static_cast<std::size_t>(ctx.K()), C::zero(ctx));
        check_ring();
    }

    static Series identity(PrimeContext ctx, Ring ring) {
        Series s(ctx, ring);
        s.coeffs_[0] = C::from_int(ctx, 1);
        return s;
    }

    static Series monomial(PrimeContext ctx, Ring ring, C c, int degree) {
        Series s(ctx, ring);
        if (degree >= 1 && degree <= ctx.K()) s.coeffs_[static_cast<std::size_t>(degree - 1)] = std::move(c);
        return s;
    }

    const PrimeContext& ctx() const noexcept { return ctx_; }
    Ring ring() const noexcept { return ring_; }
    int order() const noexcept { return ctx_.K(); }

    /// Coefficient of x^i, 1 <= i <= K.
    const C& operator[](int i) const { return coeffs_[index(i)]; }
    void set(int i, C value) { coeffs_[index(i)] = std::move(value); }

    std::span<const C> coeffs() const noexcept { return coeffs_; }

    /// Every coefficient is zero (exactly or to its precision).
    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return c.is_zero(); });
    }

    SncClass classify() const {
        SncClass cls;
        const C& a1 = coeffs_.front();
        cls.is_snc = !a1.is_zero();
        cls.is_invertible = a1.is_unit();
        cls.is_noninvertible = cls.is_snc && !cls.is_invertible;
        return cls;
    }

    Series& operator+=(const Series& rhs) {
        require_compatible(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + rhs.coeffs_[i];
        return *this;
    }
    Series& operator-=(const Series& rhs) {
        require_compatible(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - rhs.coeffs_[i];
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    Series operator-() const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    /// Cauchy product mod x^(K+1).
    friend Series operator*(const Series& a, const Series& b) {
        a.require_compatible(b);
        Series r(a.ctx_, a.ring_);
        const int K = a.order();
        for (int n = 2; n <= K; ++n) {
            C acc = C::zero(a.ctx_);
            for (int i = 1; i < n; ++i) {
                const C& x = a[i];
                const C& y = b[n - i];
                if (x.is_exact_zero() || y.is_exact_zero()) continue;
                acc = acc + x * y;
            }
            r.coeffs_[static_cast<std::size_t>(n - 1)] = std::move(acc);
        }
        return r;
    }

    friend Series operator*(const C& scalar, Series s) {
        for (auto& c : s.coeffs_) c = scalar * c;
        if (s.ring_ == Ring::integral) s.check_ring();
        return s;
    }

    /// Same coefficients under a different ring tag. integral -> float is
    /// always allowed; float -> integral requires integral coefficients.
    Series with_ring(Ring ring) const {
        Series r = *this;
        r.ring_ = ring;
        r.check_ring();
        return r;
    }

    void require_compatible(const Series& rhs) const {
        if (!(ctx_ == rhs.ctx_)) throw RingMismatch("series over different contexts");
        if (ring_ != rhs.ring_) throw RingMismatch("series over different rings: " + to_string(ring_) + " vs " + to_string(rhs.ring_));
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.ctx_ == b.ctx_ && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t index(int i) const {
        if (i < 1 || i > ctx_.K()) throw std::out_of_range("series index " + std::to_string(i) + " outside 1.." + std::to_string(ctx_.K()));
        return static_cast<std::size_t>(i - 1);
    }

    void check_ring() const {
        if constexpr (std::same_as<C, Residue>) {
            if (ring_ != Ring::residue) throw RingMismatch("F_p coefficients require the residue ring");
        } else {
            if (ring_ == Ring::residue) throw RingMismatch("p-adic coefficients cannot live in the residue ring");
            if (ring_ == Ring::integral) {
                for (const auto& c : coeffs_) {
                    if (!c.is_integral()) throw PreconditionError("integral series has a coefficient of negative valuation");
                }
            }
        }
    }

    PrimeContext ctx_;
    Ring ring_;
    std::vector<C> coeffs_;
};

using PadicSeries = Series<PadicNumber>;
using ResidueSeries = Series<Residue>;

/// Dense truncated series with a constant term, indices 0..len-1. Used for
/// unit series (Weierstrass preparation) and as Horner scratch space.
template <Coefficient C>
using DenseSeries = std::vector<C>;

namespace detail {

// (a * b) mod x^len for dense series.
template <Coefficient C>
DenseSeries<C> dense_mul(const DenseSeries<C>& a, const DenseSeries<C>& b, std::size_t len, const PrimeContext& ctx) {
    DenseSeries<C> r(len, C::zero(ctx));
    for (std::size_t i = 0; i < std::min(len, a.size()); ++i) {
        if (a[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j].is_exact_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    return r;
}

} // namespace detail

/// Product of an S_nc-shaped series with a dense series that may carry a
/// constant term, mod x^(K+1).
template <Coefficient C>
Series<C> mul_dense(const Series<C>& s, const DenseSeries<C>& d) {
    const PrimeContext& ctx = s.ctx();
    DenseSeries<C> a(static_cast<std::size_t>(ctx.K()) + 1, C::zero(ctx));
    for (int i = 1; i <= ctx.K(); ++i) a[static_cast<std::size_t>(i)] = s[i];
    auto prod = detail::dense_mul(a, d, a.size(), ctx);
    std::vector<C> coeffs(prod.begin() + 1, prod.end());
    return Series<C>(ctx, s.ring(), std::move(coeffs));
}

/// Multiplicative inverse of a dense series with unit constant term, mod x^len.
template <Coefficient C>
DenseSeries<C> dense_inverse(const DenseSeries<C>& d, std::size_t len, const PrimeContext& ctx) {
    if (d.empty() || !d[0].is_unit()) throw PreconditionError("series inverse needs a unit constant term");
    DenseSeries<C> inv(len, C::zero(ctx));
    const C c0inv = C::from_int(ctx, 1) / d[0];
    inv[0] = c0inv;
    for (std::size_t n = 1; n < len; ++n) {
        C acc = C::zero(ctx);
        for (std::size_t k = 1; k <= n && k < d.size(); ++k) {
            if (d[k].is_exact_zero() || inv[n - k].is_exact_zero()) continue;
            acc = acc + d[k] * inv[n - k];
        }
        inv[n] = -(acc * c0inv);
    }
    return inv;
}

/// outer(inner) mod x^(order+1), order <= K; coefficients above `order`
/// in the result are zero. Horner evaluation, truncating each partial sum to
/// the length it can still influence.
template <Coefficient C>
Series<C> compose_trunc(const Series<C>& outer, const Series<C>& inner, int order) {
    outer.require_compatible(inner);
    const PrimeContext& ctx = outer.ctx();
    order = std::min(order, ctx.K());
    Series<C> result(ctx, outer.ring());
    if (order < 1) return result;

    // acc_i = acc_{i+1} * inner + a_i, needed mod x^(order + 1 - i).
    DenseSeries<C> acc{outer[order]};
    for (int i = order - 1; i >= 1; --i) {
        const auto len = static_cast<std::size_t>(order + 1 - i);
        DenseSeries<C> next(len, C::zero(ctx));
        for (std::size_t n = 1; n < len; ++n) {
            C sum = C::zero(ctx);
            for (std::size_t j = 1; j <= n; ++j) {
                const std::size_t k = n - j;
                if (k >= acc.size()) continue;
                const C& in = inner[static_cast<int>(j)];
                if (in.is_exact_zero() || acc[k].is_exact_zero()) continue;
                sum = sum + in * acc[k];
            }
            next[n] = std::move(sum);
        }
        next[0] = outer[i];
        acc = std::move(next);
    }
    // result = acc_1 * inner
    for (int n = 1; n <= order; ++n) {
        C sum = C::zero(ctx);
        for (int j = 1; j <= n; ++j) {
            const auto k = static_cast<std::size_t>(n - j);
            if (k >= acc.size()) continue;
            const C& in = inner[j];
            if (in.is_exact_zero() || acc[k].is_exact_zero()) continue;
            sum = sum + in * acc[k];
        }
        result.set(n, std::move(sum));
    }
    return result;
}

template <Coefficient C>
Series<C> compose(const Series<C>& outer, const Series<C>& inner) {
    return compose_trunc(outer, inner, outer.order());
}

/// g^{o n}, by binary powering in the composition monoid; iterate(g, 0) = x.
template <Coefficient C>
Series<C> iterate(const Series<C>& g, std::uint64_t n) {
    Series<C> result = Series<C>::identity(g.ctx(), g.ring());
    Series<C> base = g;
    bool first = true;
    while (n > 0) {
        if (n & 1U) {
            result = first ? base : compose(base, result);
            first = false;
        }
        n >>= 1U;
        if (n > 0) base = compose(base, base);
    }
    return result;
}

/// Rows of coefficients of g^i mod x^(K+1): table[i][n] = [x^n] g^i for
/// 1 <= i <= K, 0 <= n <= K.
template <Coefficient C>
std::vector<DenseSeries<C>> power_table(const Series<C>& g) {
    const PrimeContext& ctx = g.ctx();
    const auto len = static_cast<std::size_t>(ctx.K()) + 1;
    std::vector<DenseSeries<C>> table(len);
    DenseSeries<C> base(len, C::zero(ctx));
    for (int i = 1; i <= ctx.K(); ++i) base[static_cast<std::size_t>(i)] = g[i];
    table[1] = base;
    for (std::size_t i = 2; i < len; ++i) {
        DenseSeries<C> row(len, C::zero(ctx));
        // g^i has valuation >= i; only degrees i..K are nonzero.
        for (std::size_t n = i; n < len; ++n) {
            C sum = C::zero(ctx);
            for (std::size_t j = 1; j + (i - 1) <= n; ++j) {
                const C& a = base[j];
                const C& b = table[i - 1][n - j];
                if (a.is_exact_zero() || b.is_exact_zero()) continue;
                sum = sum + a * b;
            }
            row[n] = std::move(sum);
        }
        table[i] = std::move(row);
    }
    return table;
}

/// Compositional inverse: h with g(h) = h(g) = x mod x^(K+1). Solves
/// h(g(x)) = x triangularly against the powers of g.
template <Coefficient C>
Series<C> comp_inverse(const Series<C>& g) {
    const PrimeContext& ctx = g.ctx();
    if (!g[1].is_unit()) throw PreconditionError("compositional inverse needs a unit linear coefficient");
    const auto powers = power_table(g);
    Series<C> h(ctx, g.ring() == Ring::residue ? Ring::residue : g.ring());
    const C one = C::from_int(ctx, 1);
    h.set(1, one / g[1]);
    for (int n = 2; n <= ctx.K(); ++n) {
        C sum = C::zero(ctx);
        for (int i = 1; i < n; ++i) {
            const C& hi = h[i];
            const C& gin = powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
            if (hi.is_exact_zero() || gin.is_exact_zero()) continue;
            sum = sum + hi * gin;
        }
        h.set(n, -(sum / powers[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)]));
    }
    return h;
}

/// Smallest absolute precision among the coefficients of a - b if they agree
/// to their tracked precision, nullopt if they differ. Agreement of two F_p
/// series reports infinite precision.
template <Coefficient C>
std::optional<std::int64_t> agreement_precision(const Series<C>& a, const Series<C>& b) {
    const Series<C> diff = a - b;
    std::int64_t prec = PadicNumber::kInfinitePrecision;
    for (const auto& c : diff.coeffs()) {
        if (!c.is_zero()) return std::nullopt;
        if constexpr (std::same_as<C, PadicNumber>) prec = std::min(prec, c.precision());
    }
    return prec;
}

/// Agreement to at least one p-adic digit in every coefficient.
template <Coefficient C>
bool equal_to_precision(const Series<C>& a, const Series<C>& b) {
    const auto prec = agreement_precision(a, b);
    return prec.has_value() && *prec >= 1;
}

/// Smallest absolute precision among the coefficients (infinite if all exact zeros).
std::int64_t min_precision(const PadicSeries& s);

/// Coefficientwise reduction to F_p.
ResidueSeries reduce_mod_p(const PadicSeries& g);

/// Teichmuller-free lift of an F_p series to the integral ring (digits 0..p-1).
PadicSeries lift(const ResidueSeries& g);

} // namespace padyn
