#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "padyn/context.hpp"

namespace padyn {

/// An element of Q_p in floating-point form: p^valuation * unit, known modulo
/// p^precision (absolute). Zero comes in two flavours: the exact zero, and a
/// value only known to lie in p^precision Z_p ("zero at precision").
///
/// Precision propagates pessimistically:
///  - sums keep the smaller absolute precision of the operands;
///  - products and quotients keep the smaller relative precision.
///
/// Nonzero values always carry a finite precision; only the exact zero has
/// infinite precision.
class PadicNumber {
public:
    static constexpr std::int64_t kInfinitePrecision = std::numeric_limits<std::int64_t>::max() / 4;

    PadicNumber() = default;

    static PadicNumber exact_zero(int p);
    static PadicNumber zero_at(int p, std::int64_t precision);
    /// The integer `value` known modulo p^precision.
    static PadicNumber from_integer(int p, const mpz_class& value, std::int64_t precision);
    /// p^valuation * unit, where `unit` is reduced modulo p^(precision - valuation).
    /// `unit` may be divisible by p; the result is renormalized.
    static PadicNumber from_parts(int p, std::int64_t valuation, const mpz_class& unit,
                                  std::int64_t precision);

    // Uniform constructors used by the generic series code.
    static PadicNumber zero(const PrimeContext& ctx) { return exact_zero(ctx.p()); }
    static PadicNumber from_int(const PrimeContext& ctx, long value) {
        return from_integer(ctx.p(), mpz_class(value), ctx.N());
    }

    int p() const noexcept { return p_; }
    bool is_zero() const noexcept { return zero_; }
    bool is_exact_zero() const noexcept { return zero_ && precision_ == kInfinitePrecision; }
    /// Nullopt for zero (exact or at precision).
    std::optional<std::int64_t> valuation() const;
    /// Valuation, or a lower bound on it (the precision) when the value is zero.
    std::int64_t valuation_bound() const noexcept { return zero_ ? precision_ : valuation_; }
    std::int64_t precision() const noexcept { return precision_; }
    std::int64_t relative_precision() const noexcept;
    const mpz_class& unit() const noexcept { return unit_; }

    /// Known to lie in Z_p.
    bool is_integral() const noexcept { return zero_ ? precision_ >= 0 : valuation_ >= 0; }
    /// Valuation exactly 0.
    bool is_unit() const noexcept { return !zero_ && valuation_ == 0; }

    /// Representative in [0, p^precision) of an integral value.
    mpz_class lift() const;
    /// Image in F_p. Throws for non-integral values or when the residue is unknown.
    unsigned residue() const;

    /// Forget digits beyond `precision` (never raises precision).
    PadicNumber with_precision(std::int64_t precision) const;

    PadicNumber operator-() const;
    PadicNumber& operator+=(const PadicNumber& rhs);
    PadicNumber& operator-=(const PadicNumber& rhs);
    PadicNumber& operator*=(const PadicNumber& rhs);
    PadicNumber& operator/=(const PadicNumber& rhs);
    friend PadicNumber operator+(PadicNumber a, const PadicNumber& b) { return a += b; }
    friend PadicNumber operator-(PadicNumber a, const PadicNumber& b) { return a -= b; }
    friend PadicNumber operator*(PadicNumber a, const PadicNumber& b) { return a *= b; }
    friend PadicNumber operator/(PadicNumber a, const PadicNumber& b) { return a /= b; }

    PadicNumber inverse() const;
    PadicNumber pow(std::uint64_t n) const;

    /// Structural equality: same normalized triple.
    friend bool operator==(const PadicNumber& a, const PadicNumber& b);

    std::string to_string() const;

private:
    int p_ = 2;
    bool zero_ = true;
    std::int64_t valuation_ = 0;
    std::int64_t precision_ = kInfinitePrecision;
    mpz_class unit_ = 0;
};

/// True when a and b agree modulo p^min(prec(a), prec(b)).
bool equal_to_precision(const PadicNumber& a, const PadicNumber& b);

/// Teichmuller lift of the residue class c: the (p-1)-st root of unity
/// congruent to c mod p, computed to precision N.
PadicNumber teichmuller(const PrimeContext& ctx, long c);

/// Smallest generator of (Z/p)^*.
int smallest_primitive_root(int p);

/// The primitive e-th root of unity used for torsion series: -1 when p = 2,
/// otherwise the Teichmuller lift of the smallest primitive root mod p.
PadicNumber zeta_e(const PrimeContext& ctx);

} // namespace padyn
