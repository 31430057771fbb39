#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace padyn {

/// The base prime together with the two truncation orders every computation
/// runs under: coefficients are known to absolute precision `N` (p-adic
/// digits) and series are truncated mod x^(K+1).
class PrimeContext {
public:
    PrimeContext(int p, int N, int K);

    int p() const noexcept { return p_; }
    int N() const noexcept { return N_; }
    int K() const noexcept { return K_; }

    /// 1 for odd p, 2 for p = 2.
    int delta() const noexcept { return p_ == 2 ? 2 : 1; }
    /// Order of the torsion series: p - 1 for odd p, 2 for p = 2.
    int e() const noexcept { return p_ == 2 ? 2 : p_ - 1; }

    PrimeContext with_precision(int N) const { return {p_, N, K_}; }
    PrimeContext with_order(int K) const { return {p_, N_, K}; }

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

private:
    int p_;
    int N_;
    int K_;
};

bool is_prime(std::int64_t n) noexcept;

/// p^k as a big integer; cached per thread.
const mpz_class& pow_p(int p, std::int64_t k);

/// p-adic valuation of a nonzero integer.
std::int64_t valuation_of(const mpz_class& n, int p);

/// v_p(n!) by Legendre's formula.
std::int64_t factorial_valuation(std::int64_t n, int p);

} // namespace padyn
