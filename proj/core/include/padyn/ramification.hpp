#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padyn/rational.hpp"
#include "padyn/residue.hpp"
#include "padyn/series.hpp"

namespace padyn {

/// Lower ramification data of a Nottingham element over F_p.
struct RamificationProfile {
    bool identity = false;                       // omega = x: every i_n is infinite
    std::vector<std::optional<std::int64_t>> i;  // i_n for n = 0..n_max, nullopt past x^K
    std::vector<std::optional<bool>> sen;        // entry n-1 compares i_n with i_{n-1}
    std::vector<Rational> e_estimates;           // (p-1) i_n / p^(n+1), determined n only
    std::optional<std::int64_t> e;               // nullopt: divergent or undetermined
    int K = 0;
};

/// Requires omega'(0) = 1. Iterates omega^{o p^n} by repeated p-fold composition.
RamificationProfile lower_ramification(const ResidueSeries& omega, int n_max);

/// omega^{o a} for a in Z_p given by its residue mod p^m. Throws PrecisionError
/// unless omega^{o p^m} = x mod x^(K+1), which makes the result independent of
/// the unspecified digits.
ResidueSeries zp_iterate(const ResidueSeries& omega, const mpz_class& a, int m);

struct TorsionInvariant {
    std::optional<std::uint64_t> order; // p^d, "to x-precision K"; nullopt if not torsion within bounds
    std::optional<int> ell;             // omega = x + a x^ell + ...
    std::optional<Residue> a;
    int K = 0;
};

/// Smallest p^d <= p^d_max with omega^{o p^d} = x mod x^(K+1). Requires omega'(0) = 1.
TorsionInvariant nottingham_order(const ResidueSeries& omega, int d_max);

struct G0Order {
    std::optional<std::uint64_t> order; // m p^d, nullopt if not torsion within bounds
    std::uint64_t linear_order = 1;     // multiplicative order m of omega'(0)
    int K = 0;
};

/// Order in G_0(F_p): the order of omega'(0) times the Nottingham order of omega^{o m}.
G0Order g0_order(const ResidueSeries& omega, int d_max);

struct NormalizerWitness {
    std::optional<mpz_class> a;         // theta omega theta^{-1} = omega^{o a}, a mod p^m
    std::optional<int> failed_stage;    // digit index at which no candidate matched
    int m = 0;
    int K = 0;
};

/// Digit-by-digit search for a with theta omega theta^{-1} = omega^{o a} mod x^(K+1).
NormalizerWitness normalizer_witness(const ResidueSeries& theta, const ResidueSeries& omega, int m);

} // namespace padyn
