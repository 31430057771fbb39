#include "padyn/context.hpp"

#include <string>
#include <unordered_map>
#include <vector>

#include "padyn/errors.hpp"

namespace padyn {

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeContext::PrimeContext(int p, int N, int K) : p_(p), N_(N), K_(K) {
    if (!is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not prime", "invalid_context");
    if (N < 1) throw PreconditionError("coefficient precision N must be at least 1", "invalid_context");
    if (K < 2) throw PreconditionError("truncation order K must be at least 2", "invalid_context");
}

const mpz_class& pow_p(int p, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("pow_p: negative exponent");
    thread_local std::unordered_map<int, std::vector<mpz_class>> cache;
    auto& powers = cache[p];
    if (powers.empty()) powers.emplace_back(1);
    while (static_cast<std::int64_t>(powers.size()) <= k) {
        powers.emplace_back(powers.back() * p);
    }
    return powers[static_cast<std::size_t>(k)];
}

std::int64_t valuation_of(const mpz_class& n, int p) {
    if (n == 0) throw std::invalid_argument("valuation_of: zero");
    mpz_class rest;
    mpz_class prime(p);
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

std::int64_t factorial_valuation(std::int64_t n, int p) {
    std::int64_t v = 0;
    for (std::int64_t q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break;
    }
    return v;
}

} // namespace padyn
