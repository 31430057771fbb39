#include "padyn/padic.hpp"

#include <algorithm>
#include <sstream>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
    if (a.p() != b.p()) throw PreconditionError("p-adic numbers over different primes");
}

mpz_class mod_pow(const mpz_class& x, std::int64_t digits, int p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), pow_p(p, digits).get_mpz_t());
    return r;
}

} // namespace

PadicNumber PadicNumber::exact_zero(int p) {
    PadicNumber z;
    z.p_ = p;
    return z;
}

PadicNumber PadicNumber::zero_at(int p, std::int64_t precision) {
    PadicNumber z;
    z.p_ = p;
    z.precision_ = precision;
    return z;
}

PadicNumber PadicNumber::from_parts(int p, std::int64_t valuation, const mpz_class& unit,
                                    std::int64_t precision) {
    if (valuation >= precision) return zero_at(p, precision);
    mpz_class u = mod_pow(unit, precision - valuation, p);
    if (u == 0) return zero_at(p, precision);
    mpz_class rest;
    mpz_class prime(p);
    auto k = static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), u.get_mpz_t(), prime.get_mpz_t()));
    PadicNumber r;
    r.p_ = p;
    r.zero_ = false;
    r.valuation_ = valuation + k;
    r.precision_ = precision;
    r.unit_ = std::move(rest);
    return r;
}

PadicNumber PadicNumber::from_integer(int p, const mpz_class& value, std::int64_t precision) {
    if (precision == kInfinitePrecision) {
        if (value != 0) throw std::invalid_argument("only zero may carry infinite precision");
        return exact_zero(p);
    }
    return from_parts(p, 0, value, precision);
}

std::optional<std::int64_t> PadicNumber::valuation() const {
    if (zero_) return std::nullopt;
    return valuation_;
}

std::int64_t PadicNumber::relative_precision() const noexcept {
    return zero_ ? 0 : precision_ - valuation_;
}

mpz_class PadicNumber::lift() const {
    if (!is_integral()) throw PreconditionError("lift of a non-integral p-adic number");
    if (zero_) return 0;
    return unit_ * pow_p(p_, valuation_);
}

unsigned PadicNumber::residue() const {
    if (zero_) {
        if (precision_ < 1) throw PrecisionError("residue of a value known only modulo p^" + std::to_string(precision_));
        return 0;
    }
    if (valuation_ < 0) throw PreconditionError("residue of a non-integral p-adic number");
    if (valuation_ > 0) return 0;
    return static_cast<unsigned>(mpz_class(unit_ % p_).get_ui());
}

PadicNumber PadicNumber::with_precision(std::int64_t precision) const {
    if (precision >= precision_) return *this;
    if (zero_) return zero_at(p_, precision);
    return from_parts(p_, valuation_, unit_, precision);
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    PadicNumber r = *this;
    r.unit_ = pow_p(p_, precision_ - valuation_) - unit_;
    return r;
}

PadicNumber& PadicNumber::operator+=(const PadicNumber& rhs) {
    require_same_prime(*this, rhs);
    if (rhs.is_exact_zero()) return *this;
    if (is_exact_zero()) return *this = rhs;
    const std::int64_t prec = std::min(precision_, rhs.precision_);
    if (zero_ && rhs.zero_) return *this = zero_at(p_, prec);

    std::int64_t vmin = kInfinitePrecision;
    if (!zero_) vmin = valuation_;
    if (!rhs.zero_) vmin = std::min(vmin, rhs.valuation_);
    if (vmin >= prec) return *this = zero_at(p_, prec);

    mpz_class sum = 0;
    if (!zero_ && valuation_ < prec) sum += unit_ * pow_p(p_, valuation_ - vmin);
    if (!rhs.zero_ && rhs.valuation_ < prec) sum += rhs.unit_ * pow_p(p_, rhs.valuation_ - vmin);
    return *this = from_parts(p_, vmin, sum, prec);
}

PadicNumber& PadicNumber::operator-=(const PadicNumber& rhs) { return *this += -rhs; }

PadicNumber& PadicNumber::operator*=(const PadicNumber& rhs) {
    require_same_prime(*this, rhs);
    if (is_exact_zero()) return *this;
    if (rhs.is_exact_zero()) return *this = rhs;
    if (zero_ && rhs.zero_) return *this = zero_at(p_, precision_ + rhs.precision_);
    if (zero_) return *this = zero_at(p_, precision_ + rhs.valuation_);
    if (rhs.zero_) return *this = zero_at(p_, rhs.precision_ + valuation_);

    const std::int64_t r = std::min(relative_precision(), rhs.relative_precision());
    const std::int64_t v = valuation_ + rhs.valuation_;
    mpz_class u = unit_ * rhs.unit_;
    unit_ = mod_pow(u, r, p_);
    valuation_ = v;
    precision_ = v + r;
    return *this;
}

PadicNumber& PadicNumber::operator/=(const PadicNumber& rhs) {
    require_same_prime(*this, rhs);
    if (rhs.is_exact_zero()) throw PreconditionError("division by exact zero");
    if (rhs.zero_) throw PrecisionError("division by a value indistinguishable from zero");
    if (is_exact_zero()) return *this;
    if (zero_) return *this = zero_at(p_, precision_ - rhs.valuation_);

    const std::int64_t r = std::min(relative_precision(), rhs.relative_precision());
    const mpz_class& modulus = pow_p(p_, r);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rhs.unit_.get_mpz_t(), modulus.get_mpz_t());
    mpz_class u = unit_ * inv;
    unit_ = mod_pow(u, r, p_);
    valuation_ -= rhs.valuation_;
    precision_ = valuation_ + r;
    return *this;
}

PadicNumber PadicNumber::inverse() const {
    return from_parts(p_, 0, 1, relative_precision()) / *this;
}

PadicNumber PadicNumber::pow(std::uint64_t n) const {
    if (n == 0) {
        if (zero_) throw PreconditionError("0^0 is undefined");
        return from_parts(p_, 0, 1, relative_precision());
    }
    PadicNumber result = *this;
    PadicNumber base = *this;
    --n;
    while (n > 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n > 0) base *= base;
    }
    return result;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.zero_ == b.zero_ && a.precision_ == b.precision_ &&
           (a.zero_ || (a.valuation_ == b.valuation_ && a.unit_ == b.unit_));
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (is_exact_zero()) return "0";
    if (zero_) {
        os << "O(" << p_ << "^" << precision_ << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (valuation_ != 0) os << "*" << p_ << "^" << valuation_;
    os << " + O(" << p_ << "^" << precision_ << ")";
    return os.str();
}

bool equal_to_precision(const PadicNumber& a, const PadicNumber& b) {
    return (a - b).is_zero();
}

PadicNumber teichmuller(const PrimeContext& ctx, long c) {
    const int p = ctx.p();
    const mpz_class& modulus = pow_p(p, ctx.N());
    mpz_class t = c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
    if (mpz_class(t % p) == 0) throw PreconditionError("Teichmuller lift of a class divisible by p");
    const mpz_class exponent(p);
    for (;;) {
        mpz_class next;
        mpz_powm(next.get_mpz_t(), t.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
        if (next == t) break;
        t = std::move(next);
    }
    return PadicNumber::from_integer(p, t, ctx.N());
}

int smallest_primitive_root(int p) {
    if (p == 2) return 1;
    const int order = p - 1;
    std::vector<int> factors;
    int rest = order;
    for (int q = 2; q * q <= rest; ++q) {
        if (rest % q == 0) {
            factors.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    }
    if (rest > 1) factors.push_back(rest);
    for (int g = 2; g < p; ++g) {
        bool primitive = true;
        for (int q : factors) {
            mpz_class r;
            mpz_class base(g);
            mpz_class modulus(p);
            mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(order / q), modulus.get_mpz_t());
            if (r == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    return 1;
}

PadicNumber zeta_e(const PrimeContext& ctx) {
    if (ctx.p() == 2) return PadicNumber::from_integer(2, -1, ctx.N());
    return teichmuller(ctx, smallest_primitive_root(ctx.p()));
}

} // namespace padyn
