#pragma once

#include <cstdint>
#include <string>

#include "padyn/context.hpp"

namespace padyn {

/// An element of the residue field F_p.
class Residue {
public:
    Residue() = default;
    Residue(int p, long value);

    static Residue zero(const PrimeContext& ctx) { return {ctx.p(), 0}; }
    static Residue from_int(const PrimeContext& ctx, long value) { return {ctx.p(), value}; }

    int p() const noexcept { return static_cast<int>(p_); }
    std::uint32_t value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }
    bool is_exact_zero() const noexcept { return value_ == 0; }
    bool is_unit() const noexcept { return value_ != 0; }

    Residue operator-() const { return {p(), value_ == 0 ? 0L : static_cast<long>(p_ - value_)}; }
    Residue& operator+=(const Residue& rhs);
    Residue& operator-=(const Residue& rhs) { return *this += -rhs; }
    Residue& operator*=(const Residue& rhs);
    Residue& operator/=(const Residue& rhs) { return *this *= rhs.inverse(); }
    friend Residue operator+(Residue a, const Residue& b) { return a += b; }
    friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
    friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
    friend Residue operator/(Residue a, const Residue& b) { return a /= b; }

    Residue inverse() const;
    Residue pow(std::uint64_t n) const;

    friend bool operator==(const Residue&, const Residue&) = default;

    std::string to_string() const { return std::to_string(value_); }

private:
    std::uint32_t p_ = 2;
    std::uint32_t value_ = 0;
};

} // namespace padyn
