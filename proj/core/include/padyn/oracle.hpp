#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padyn/padic.hpp"
#include "padyn/series.hpp"

namespace padyn {

/// (1+x)^a - 1 for an exact integer a. Nonnegative a below K+1 gives a
/// polynomial with exact zeros above degree a.
PadicSeries gm_endomorphism(const PrimeContext& ctx, const mpz_class& a);

/// (1+x)^a - 1 for an integral p-adic a, via generalized binomial
/// coefficients computed with v_p(K!) guard digits. Throws std::logic_error
/// if a coefficient comes out non-integral.
PadicSeries gm_endomorphism(const PrimeContext& ctx, const PadicNumber& a);

/// [a]_f for a Lubin-Tate series f (f'(0) of valuation 1, f = x^p mod p).
/// Divisions are provably exact; a failed one throws std::logic_error.
PadicSeries lubin_tate_endo(const PadicSeries& f, const PadicNumber& a);

struct MinimalPairReport {
    std::optional<int> wideg_f;
    std::optional<std::int64_t> v_f_prime;
    std::optional<std::int64_t> v_u_shift; // v_p(u'(0) - 1)
    bool u_invertible = false;
    bool u_nontorsion = false;
    bool commutes = false;
    std::optional<std::int64_t> commute_precision; // p-adic digits of f(u) - u(f) = 0
    bool is_minimal = false;
    std::vector<std::string> failures;
};

MinimalPairReport validate_minimal_pair(const PadicSeries& f, const PadicSeries& u);

/// (h f h^{-1}, h u h^{-1}). Requires h'(0) = 1 mod p; throws PrecisionError
/// if the conjugated pair no longer validates as minimal.
std::pair<PadicSeries, PadicSeries> conjugate_pair(const PadicSeries& f, const PadicSeries& u, const PadicSeries& h);

enum class PairKind { gm, lt, conjugated };

std::string to_string(PairKind kind);

struct PairBundle {
    PadicSeries f;
    PadicSeries u;
    PairKind kind = PairKind::gm;
    std::optional<std::uint64_t> seed;
};

/// f = (1+x)^p - 1, u = (1+x)^(1+p^delta) - 1.
PairBundle gm_minimal_pair(const PrimeContext& ctx);
/// f = p x + x^p, u = [1+p^delta]_f.
PairBundle lt_minimal_pair(const PrimeContext& ctx);
/// The Gm pair conjugated by random_conjugator(ctx, seed).
PairBundle conjugated_pair(const PrimeContext& ctx, std::uint64_t seed);

/// h = x + c2 x^2 + c3 x^3 with c2, c3 uniform mod p^N.
PadicSeries random_conjugator(const PrimeContext& ctx, std::uint64_t seed);

/// u + p x^2 r(x) with r a random cubic whose constant term is a unit.
PadicSeries perturb(const PadicSeries& u, std::uint64_t seed);

/// Uniform integer in [0, p^digits) drawn from a seeded 64-bit stream.
mpz_class random_residue(std::uint64_t& state, int p, int digits);

} // namespace padyn
