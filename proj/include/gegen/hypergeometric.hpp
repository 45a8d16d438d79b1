#pragma once

// Gauss hypergeometric series 2F1(a, b; c; u) with the two Pfaff
// transformations, summed in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "gegen/errors.hpp"
#include "gegen/numeric_core.hpp"

namespace gegen {

/// Result of any series evaluation.
struct SeriesOutcome {
    cplx value{0.0, 0.0};
    long terms_used = 0;
    bool converged = false;
    /// Last-term magnitude plus a roundoff bound eps * sum |terms|.
    double est_abs_error = 0.0;
    /// Representation that produced the value (e.g. "direct", "pfaff-a", "A", "B", "C", "recurrence").
    std::string route;
    /// True when a removable singularity was bridged by interpolation.
    bool degraded = false;
};

struct Hyp2f1Options {
    long max_terms = 200000;
    /// Relative size of the last term required for convergence.
    double tolerance = 1e-16;
};

namespace detail {

inline constexpr long double eps_ld = std::numeric_limits<long double>::epsilon();

struct Sum {
    cplx_ld value{0.0L, 0.0L};
    long double abs_error = std::numeric_limits<long double>::infinity();
    long terms = 0;
    bool converged = false;
};

/// Plain series sum_n (a)_n (b)_n / ((c)_n n!) u^n.
inline Sum series_2f1(cplx_ld a, cplx_ld b, cplx_ld c, cplx_ld u, const Hyp2f1Options& opt) {
    Sum out;
    cplx_ld term{1.0L, 0.0L};
    cplx_ld sum{1.0L, 0.0L};
    long double abs_sum = 1.0L;
    const long double amax = std::max(std::abs(a), std::abs(b));
    // Stop well below the reported tolerance: the sum is carried in long double.
    const long double stop = std::min<long double>(opt.tolerance, 1e-16L) * 1e-3L;
    long n = 0;
    for (; n < opt.max_terms; ++n) {
        const long double nn = static_cast<long double>(n);
        const cplx_ld ratio = (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0L)) * u;
        term *= ratio;
        sum += term;
        abs_sum += std::abs(term);
        if (term == cplx_ld{0.0L, 0.0L}) {
            out.converged = true;
            ++n;
            break;
        }
        if (std::abs(term) <= stop * std::abs(sum) && nn > amax + 2.0L && std::abs(ratio) < 1.0L) {
            out.converged = true;
            ++n;
            break;
        }
    }
    out.value = sum;
    out.terms = n + 1;
    out.abs_error = std::abs(term) + eps_ld * abs_sum;
    if (!out.converged) out.converged = std::abs(term) <= opt.tolerance * std::abs(sum);
    return out;
}

inline bool terminates(cplx_ld a, cplx_ld b) { return is_nonpositive_integer(a) || is_nonpositive_integer(b); }

/// 2F1 with the representation of smallest estimated error. The value on the
/// branch cut u in [1, inf) is not defined here.
inline Sum hyp2f1_ld(cplx_ld a, cplx_ld b, cplx_ld c, cplx_ld u, const Hyp2f1Options& opt, std::string* route = nullptr) {
    if (is_nonpositive_integer(c)) throw pole_error("2F1: c is a nonpositive integer");
    if (u == cplx_ld{0.0L, 0.0L}) {
        if (route) *route = "direct";
        Sum s;
        s.value = {1.0L, 0.0L};
        s.abs_error = 0.0L;
        s.terms = 1;
        s.converged = true;
        return s;
    }
    if (terminates(a, b)) {
        if (route) *route = "direct";
        return series_2f1(a, b, c, u, opt);
    }
    if (u.imag() == 0.0L && u.real() >= 1.0L)
        throw branch_error("2F1: argument on the branch cut [1, inf)");

    Sum best;
    std::string best_route;
    auto consider = [&](const Sum& s, const char* name) {
        if (!std::isfinite(static_cast<double>(std::abs(s.value)))) return;
        const long double rel = s.abs_error / std::max(std::abs(s.value), std::numeric_limits<long double>::min());
        const long double best_rel =
            best_route.empty() ? std::numeric_limits<long double>::infinity()
                               : best.abs_error / std::max(std::abs(best.value), std::numeric_limits<long double>::min());
        if ((s.converged && !best.converged) || (s.converged == best.converged && rel < best_rel) || best_route.empty()) {
            best = s;
            best_route = name;
        }
    };

    if (std::abs(u) < 1.0L) consider(series_2f1(a, b, c, u, opt), "direct");
    const cplx_ld w = u / (u - 1.0L);
    if (std::abs(w) < 1.0L) {
        const cplx_ld log1mu = std::log(1.0L - u);
        // (1-u)^{-a} 2F1(a, c-b; c; w)
        Sum s = series_2f1(a, c - b, c, w, opt);
        cplx_ld pre = std::exp(-a * log1mu);
        s.value *= pre;
        s.abs_error *= std::abs(pre);
        consider(s, "pfaff-a");
        // (1-u)^{-b} 2F1(c-a, b; c; w)
        Sum t = series_2f1(c - a, b, c, w, opt);
        pre = std::exp(-b * log1mu);
        t.value *= pre;
        t.abs_error *= std::abs(pre);
        consider(t, "pfaff-b");
    }
    if (best_route.empty()) {
        Sum fail;
        fail.value = {std::numeric_limits<long double>::quiet_NaN(), std::numeric_limits<long double>::quiet_NaN()};
        fail.converged = false;
        if (route) *route = "none";
        return fail;
    }
    if (route) *route = best_route;
    return best;
}

} // namespace detail

/// 2F1(a, b; c; u). Uses the direct series for |u| < 1 and the Pfaff forms
/// (1-u)^{-a} 2F1(a, c-b; c; u/(u-1)), (1-u)^{-b} 2F1(c-a, b; c; u/(u-1)) for
/// |u/(u-1)| < 1, keeping whichever has the smallest estimated error.
/// Terminating series are always summed directly. If no representation
/// converges the outcome carries converged = false and a NaN value.
inline SeriesOutcome hyp2f1(cplx a, cplx b, cplx c, cplx u, const Hyp2f1Options& opt = {}) {
    std::string route;
    const detail::Sum s =
        detail::hyp2f1_ld(detail::widen(a), detail::widen(b), detail::widen(c), detail::widen(u), opt, &route);
    SeriesOutcome out;
    out.value = detail::narrow(s.value);
    out.terms_used = s.terms;
    out.converged = s.converged;
    out.est_abs_error = static_cast<double>(s.abs_error);
    out.route = route;
    return out;
}

} // namespace gegen
