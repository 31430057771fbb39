#include "padyn/ramification.hpp"

#include <string>

#include "padyn/errors.hpp"
#include "padyn/newton.hpp"

namespace padyn {

namespace {

void require_nottingham(const ResidueSeries& omega) {
    if (omega.ring() != Ring::residue) throw RingMismatch("expected a series over the residue field");
    if (!(omega[1] == Residue::from_int(omega.ctx(), 1))) {
        throw PreconditionError("series is not in the Nottingham group: omega'(0) = " + omega[1].to_string(),
                                "not_nottingham");
    }
}

ResidueSeries x_of(const ResidueSeries& s) { return ResidueSeries::identity(s.ctx(), Ring::residue); }

// i(w) = wideg(w - x) - 1, nullopt when w = x mod x^(K+1).
std::optional<std::int64_t> ram_number(const ResidueSeries& w) {
    const auto d = weierstrass_degree(w - x_of(w));
    if (!d) return std::nullopt;
    return *d - 1;
}

// w_j = omega^{o p^j} for j = 0..m.
std::vector<ResidueSeries> p_power_iterates(const ResidueSeries& omega, int m) {
    std::vector<ResidueSeries> w{omega};
    for (int j = 1; j <= m; ++j) w.push_back(iterate(w.back(), static_cast<std::uint64_t>(omega.ctx().p())));
    return w;
}

void require_certificate(const ResidueSeries& w_m, int m) {
    if (!(w_m == x_of(w_m))) {
        throw PrecisionError("no convergence certificate: omega^{o p^" + std::to_string(m) + "} != x mod x^" +
                                 std::to_string(w_m.ctx().K() + 1),
                             "no_certificate");
    }
}

bool agree_through(const ResidueSeries& a, const ResidueSeries& b, int degree) {
    for (int i = 1; i <= degree; ++i) {
        if (!(a[i] == b[i])) return false;
    }
    return true;
}

} // namespace

RamificationProfile lower_ramification(const ResidueSeries& omega, int n_max) {
    require_nottingham(omega);
    if (n_max < 0) throw PreconditionError("n_max must be nonnegative");
    const int p = omega.ctx().p();
    RamificationProfile prof;
    prof.K = omega.ctx().K();
    if (omega == x_of(omega)) {
        prof.identity = true;
        prof.i.assign(static_cast<std::size_t>(n_max) + 1, std::nullopt);
        prof.sen.assign(static_cast<std::size_t>(n_max), std::nullopt);
        return prof;
    }

    ResidueSeries w = omega;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0 && prof.i.back()) w = iterate(w, static_cast<std::uint64_t>(p));
        // once w = x mod x^(K+1), so is every further iterate
        prof.i.push_back(prof.i.empty() || prof.i.back() ? ram_number(w) : std::nullopt);
    }

    bool sen_all = true;
    for (int n = 1; n <= n_max; ++n) {
        const auto& prev = prof.i[static_cast<std::size_t>(n - 1)];
        const auto& cur = prof.i[static_cast<std::size_t>(n)];
        if (prev && cur) {
            const mpz_class diff = *cur - *prev;
            const bool ok = mpz_divisible_p(diff.get_mpz_t(), pow_p(p, n).get_mpz_t()) != 0;
            prof.sen.emplace_back(ok);
            sen_all = sen_all && ok;
        } else {
            prof.sen.emplace_back(std::nullopt);
        }
    }

    std::vector<std::int64_t> rounded;
    for (int n = 0; n <= n_max; ++n) {
        const auto& in = prof.i[static_cast<std::size_t>(n)];
        if (!in) break;
        const mpz_class den = pow_p(p, n + 1);
        if (!den.fits_slong_p()) break;
        prof.e_estimates.emplace_back(static_cast<std::int64_t>(p - 1) * *in, den.get_si());
        rounded.push_back(prof.e_estimates.back().round());
    }
    if (sen_all && rounded.size() >= 2 && rounded[rounded.size() - 1] == rounded[rounded.size() - 2]) {
        prof.e = rounded.back();
    }
    return prof;
}

ResidueSeries zp_iterate(const ResidueSeries& omega, const mpz_class& a, int m) {
    require_nottingham(omega);
    if (m < 0) throw PreconditionError("digit count must be nonnegative");
    const int p = omega.ctx().p();
    const auto w = p_power_iterates(omega, m);
    require_certificate(w.back(), m);

    mpz_class rest = a % pow_p(p, m);
    if (rest < 0) rest += pow_p(p, m);
    ResidueSeries result = x_of(omega);
    for (int j = 0; j < m && rest != 0; ++j) {
        const mpz_class digit = rest % p;
        rest /= p;
        if (digit != 0) result = compose(result, iterate(w[static_cast<std::size_t>(j)], digit.get_ui()));
    }
    return result;
}

TorsionInvariant nottingham_order(const ResidueSeries& omega, int d_max) {
    require_nottingham(omega);
    const int p = omega.ctx().p();
    TorsionInvariant inv;
    inv.K = omega.ctx().K();
    ResidueSeries w = omega;
    std::uint64_t order = 1;
    for (int d = 0; d <= d_max; ++d) {
        if (d > 0) {
            w = iterate(w, static_cast<std::uint64_t>(p));
            order *= static_cast<std::uint64_t>(p);
        }
        if (w == x_of(w)) {
            inv.order = order;
            break;
        }
    }
    if (inv.order && *inv.order > 1) {
        const auto ell = weierstrass_degree(omega - x_of(omega));
        inv.ell = *ell;
        inv.a = omega[*ell];
    }
    return inv;
}

G0Order g0_order(const ResidueSeries& omega, int d_max) {
    if (omega.ring() != Ring::residue) throw RingMismatch("expected a series over the residue field");
    if (omega[1].is_zero()) throw PreconditionError("series is not invertible");
    G0Order out;
    out.K = omega.ctx().K();
    const Residue one = Residue::from_int(omega.ctx(), 1);
    Residue power = omega[1];
    while (!(power == one)) {
        power = power * omega[1];
        ++out.linear_order;
    }
    const ResidueSeries w = iterate(omega, out.linear_order);
    const TorsionInvariant inv = nottingham_order(w, d_max);
    if (inv.order) out.order = out.linear_order * *inv.order;
    return out;
}

NormalizerWitness normalizer_witness(const ResidueSeries& theta, const ResidueSeries& omega, int m) {
    require_nottingham(omega);
    theta.require_compatible(omega);
    if (theta[1].is_zero()) throw PreconditionError("conjugator is not invertible");
    if (omega == x_of(omega)) throw PreconditionError("omega must not be the identity");
    if (m < 1) throw PreconditionError("at least one digit is required");
    const int p = omega.ctx().p();
    const int K = omega.ctx().K();
    const auto w = p_power_iterates(omega, m);
    require_certificate(w.back(), m);

    NormalizerWitness out;
    out.m = m;
    out.K = K;
    const ResidueSeries target = compose(compose(theta, omega), comp_inverse(theta));
    ResidueSeries prefix = x_of(omega);
    mpz_class a = 0;
    for (int j = 0; j < m; ++j) {
        // Later digits only move coefficients past x^{i_{j+1}}.
        const auto next = ram_number(w[static_cast<std::size_t>(j) + 1]);
        const int through = next ? static_cast<int>(std::min<std::int64_t>(*next, K)) : K;
        std::optional<int> found;
        ResidueSeries step = x_of(omega);
        for (int c = 0; c < p; ++c) {
            if (c > 0) step = compose(step, w[static_cast<std::size_t>(j)]);
            const ResidueSeries candidate = compose(prefix, step);
            if (agree_through(candidate, target, through)) {
                found = c;
                prefix = candidate;
                break;
            }
        }
        if (!found) {
            out.failed_stage = j;
            return out;
        }
        a += mpz_class(*found) * pow_p(p, j);
    }
    if (!(prefix == target)) {
        out.failed_stage = m;
        return out;
    }
    out.a = a;
    return out;
}

} // namespace padyn
