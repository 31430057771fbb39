#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/series.hpp"

namespace padyn {

/// Lubin's linearization: the unique L with L'(0) = 1 and L(f) = f'(0) L.
struct Linearization {
    PadicSeries series; // p-adic float ring
    /// Per-index valuation of the coefficients (a lower bound where the
    /// coefficient is only known to be O(p^q)); entry 0 is x^1.
    std::vector<std::int64_t> min_valuation_profile;
};

/// Requires f integral with 0 < v_p(f'(0)) < inf. Coefficients are solved
/// triangularly; any coefficient below valuation -N/2 is a budget failure.
Linearization linearize(const PadicSeries& f);

/// [a]_f: the unique series with linear coefficient a commuting with f,
/// solved coefficient by coefficient from
///   d_{k+1} (a_1^{k+1} - a_1) = [x^{k+1}] (f(z_k) - z_k(f)).
/// Runs in the p-adic float ring.
PadicSeries commutant(const PadicSeries& f, const PadicNumber& a);

/// [a]_f computed as L_f^{-1}(a L_f); an independent route for cross-checks.
PadicSeries commutant_via_linearization(const PadicSeries& f, const PadicNumber& a);

enum class TorsionOutcome { integral, non_integral, inconclusive };

std::string to_string(TorsionOutcome outcome);

struct TorsionWitness {
    int index = 0;                        // k + 1
    std::int64_t numerator_valuation = 0; // a lower bound when inconclusive
    std::int64_t divisor_valuation = 0;   // v_p(a_1^{k+1} - a_1)
};

struct TorsionCertificate {
    TorsionOutcome outcome = TorsionOutcome::inconclusive;
    std::optional<PadicSeries> series;    // z, when integral
    std::optional<TorsionWitness> witness; // where the recursion stopped otherwise
    bool verified_order = false;          // z^{o e} = x to precision
    std::optional<bool> commutes_with_u;  // z(u) = u(z) to precision, when u given
    std::optional<PadicNumber> d2;        // the p = 2 seed coefficient
    std::int64_t series_precision = 0;
    int N = 0;
    int K = 0;
};

struct TorsionOptions {
    /// Output precision the caller wants; the check insists N >= K + this.
    int output_precision = 8;
};

/// Builds z = [zeta_e]_f inside Z_p and certifies it: either every division
/// by a_1^{k+1} - a_1 was exact (integral), or some numerator has valuation
/// below the divisor's (non-integral witness), or precision ran out first.
/// Preconditions: wideg(f) = p, v_p(f'(0)) = 1 and, when u is given, (f, u)
/// is a minimal commuting pair.
TorsionCertificate torsion_check(const PadicSeries& f, const std::optional<PadicSeries>& u,
                                 TorsionOptions options = {});

} // namespace padyn
