#include "padyn/residue.hpp"

#include "padyn/errors.hpp"

namespace padyn {

Residue::Residue(int p, long value) : p_(static_cast<std::uint32_t>(p)) {
    long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint32_t>(r);
}

Residue& Residue::operator+=(const Residue& rhs) {
    if (p_ != rhs.p_) throw PreconditionError("residues over different primes");
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + rhs.value_) % p_);
    return *this;
}

Residue& Residue::operator*=(const Residue& rhs) {
    if (p_ != rhs.p_) throw PreconditionError("residues over different primes");
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * rhs.value_) % p_);
    return *this;
}

Residue Residue::pow(std::uint64_t n) const {
    Residue result(p(), 1);
    Residue base = *this;
    while (n > 0) {
        if (n & 1U) result *= base;
        base *= base;
        n >>= 1U;
    }
    return result;
}

Residue Residue::inverse() const {
    if (value_ == 0) throw PreconditionError("inverse of zero in F_p");
    return pow(p_ - 2);
}

} // namespace padyn
