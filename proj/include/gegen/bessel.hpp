#pragma once

// Bessel functions J, Y, I, K of real order and complex argument.
//
// Evaluation paths (all summed in long double):
//   |w| <= 8                 ascending power series
//   8 < |w| < 20 + nu^2/2    power series at a high order nu + N, then the
//                            three-term recurrence run downward to nu
//   |w| >= 20 + nu^2/2       Hankel's large-argument sums P, Q
// Y and K are built from J and I; at integer order the sin(pi nu) = 0 pole is
// removed from samples at nu -/+ 1e-5 and nu -/+ 2e-5.

#include <algorithm>
#include <cmath>
#include <complex>

#include "gegen/errors.hpp"
#include "gegen/numeric_core.hpp"

namespace gegen {

/// Real Bessel order, |nu| <= 50.
struct BesselOrder {
    double nu;
    constexpr BesselOrder(double v) : nu(v) {} // NOLINT(google-explicit-constructor)
};

inline constexpr double bessel_max_order = 50.0;
inline constexpr double integer_order_delta = 1e-5;

/// |w| above which the Hankel sums replace the series.
inline double bessel_crossover(double nu) { return 20.0 + 0.5 * nu * nu; }

namespace detail {

// Real order and positive real argument give a real value; drop roundoff
// noise in the imaginary part.
inline cplx real_if_real_axis(cplx v, cplx w) {
    if (w.imag() == 0.0 && w.real() > 0.0) return {v.real(), 0.0};
    return v;
}

inline constexpr long double series_tol = 1e-19L;
inline constexpr int series_cap = 300;

inline void check_order(double nu) {
    if (!(std::fabs(nu) <= bessel_max_order))
        throw domain_error("Bessel order outside |nu| <= 50");
}

inline bool is_integer(double nu) { return std::floor(nu) == nu; }

// Map a signed-zero imaginary part to +0 so that arg w lies in (-pi, pi].
inline cplx_ld principal(cplx_ld w) {
    if (w.imag() == 0.0L) w = {w.real(), 0.0L};
    return w;
}

/// sum_k (s w^2/4)^k / (k! (mu+1)_k), s = -1 for J and +1 for I.
inline cplx_ld normalized_series(long double mu, cplx_ld w, int s, int cap = series_cap) {
    const cplx_ld q = static_cast<long double>(s) * w * w / 4.0L;
    cplx_ld term{1.0L, 0.0L};
    cplx_ld sum{1.0L, 0.0L};
    for (int k = 1; k <= cap; ++k) {
        term *= q / (static_cast<long double>(k) * (mu + k));
        sum += term;
        if (std::abs(term) <= series_tol * std::abs(sum) && std::abs(q) < k * std::fabs(mu + k))
            break;
    }
    return sum;
}

/// log of (w/2)^mu / Gamma(mu+1), principal branch.
inline cplx_ld log_prefactor(long double mu, cplx_ld w) {
    return mu * std::log(w / 2.0L) - lgamma_ld(cplx_ld{mu + 1.0L, 0.0L});
}

/// Ascending series; caller guarantees mu + 1 is not a nonpositive integer.
inline cplx_ld ascending(long double mu, cplx_ld w, int s) {
    return std::exp(log_prefactor(mu, w)) * normalized_series(mu, w, s, 4 * series_cap);
}

/// Series at order mu0 = nu + N followed by downward recurrence
/// f_{m-1} = (2m/w) f_m + s f_{m+1}. The start order is high enough that the
/// series at mu0 has no significant cancellation.
inline cplx_ld high_order_start(long double nu, cplx_ld w, int s) {
    const long double r = std::abs(w);
    const long double n1 = std::ceil(2.0L * r + std::fabs(nu)) + 20.0L;
    const long double n2 = std::ceil(r * r / 16.0L) + std::fabs(nu);
    const long long N = static_cast<long long>(std::max(n1, n2));
    const long double mu0 = nu + static_cast<long double>(N);

    cplx_ld f_hi = normalized_series(mu0, w, s, 4 * series_cap);
    cplx_ld f = (2.0L * mu0 / w) * normalized_series(mu0 - 1.0L, w, s, 4 * series_cap);
    long double log_scale = 0.0L;
    const long double big = 1e300L;
    for (long long j = 1; j < N; ++j) {
        const long double m = mu0 - static_cast<long double>(j);
        const cplx_ld next = (2.0L * m / w) * f + static_cast<long double>(s) * f_hi;
        f_hi = f;
        f = next;
        if (std::abs(f) > big) {
            f /= big;
            f_hi /= big;
            log_scale += std::log(big);
        }
    }
    return std::exp(log_prefactor(mu0, w) + log_scale) * f;
}

/// Hankel coefficient a_k(nu) = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k).
/// Calls visit(k, a_k / w^k) until the terms are negligible or start to grow.
template <class Visit>
void hankel_terms(long double nu, cplx_ld w, Visit visit) {
    const long double mu4 = 4.0L * nu * nu;
    cplx_ld term{1.0L, 0.0L};
    visit(0, term);
    long double prev = 1.0L;
    for (int k = 1; k <= 200; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        term *= (mu4 - odd * odd) / (8.0L * k * w);
        const long double mag = std::abs(term);
        if (mag == 0.0L) return;
        if (mag > prev && k > std::fabs(nu)) return;
        visit(k, term);
        if (mag < series_tol) return;
        prev = mag;
    }
}

/// J_nu(w) for Re w >= 0 from the full Hankel sums.
inline cplx_ld hankel_j_right(long double nu, cplx_ld w) {
    cplx_ld P{0.0L, 0.0L};
    cplx_ld Q{0.0L, 0.0L};
    hankel_terms(nu, w, [&](int k, cplx_ld t) {
        const long double sgn = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
        if (k % 2 == 0) P += sgn * t;
        else Q += sgn * t;
    });
    const cplx_ld chi = w - (nu / 2.0L + 0.25L) * pi_ld;
    return std::sqrt(2.0L / (pi_ld * w)) * (P * std::cos(chi) - Q * std::sin(chi));
}

/// J_nu(w) from the Hankel sums, any argument (reflected into Re w >= 0).
inline cplx_ld bessel_j_hankel_ld(long double nu, cplx_ld w) {
    w = principal(w);
    if (w.real() >= 0.0L) return hankel_j_right(nu, w);
    const long double sgn = w.imag() >= 0.0L ? 1.0L : -1.0L;
    return std::exp(cplx_ld{0.0L, sgn * pi_ld * nu}) * hankel_j_right(nu, -w);
}

inline cplx_ld bessel_k_hankel_ld(long double nu, cplx_ld w) {
    cplx_ld S{0.0L, 0.0L};
    hankel_terms(nu, w, [&](int, cplx_ld t) { S += t; });
    return std::sqrt(pi_ld / (2.0L * w)) * std::exp(-w) * S;
}

inline cplx_ld zero_argument(long double nu) {
    if (nu == 0.0L) return {1.0L, 0.0L};
    if (nu > 0.0L || std::floor(nu) == nu) return {0.0L, 0.0L};
    throw domain_error("Bessel function of negative non-integer order is singular at w = 0");
}

// Shared J / I driver; s = -1 for J, +1 for I.
inline cplx_ld bessel_ji_ld(long double nu, cplx_ld w, int s) {
    w = principal(w);
    if (nu < 0.0L && std::floor(nu) == nu) {
        const long long n = static_cast<long long>(-nu);
        const long double sign = (s < 0 && n % 2 == 1) ? -1.0L : 1.0L;
        return sign * bessel_ji_ld(-nu, w, s);
    }
    const long double r = std::abs(w);
    if (r == 0.0L) return zero_argument(nu);
    if (r <= 8.0L) return ascending(nu, w, s);
    if (r < bessel_crossover(static_cast<double>(nu))) return high_order_start(nu, w, s);
    if (s < 0) return bessel_j_hankel_ld(nu, w);
    // I_nu(w) = e^{-i pi nu/2} J_nu(iw) for arg w <= pi/2, else e^{i pi nu/2} J_nu(-iw).
    const cplx_ld iu{0.0L, 1.0L};
    if (std::arg(w) <= pi_ld / 2.0L)
        return std::exp(-iu * pi_ld * nu / 2.0L) * bessel_j_hankel_ld(nu, iu * w);
    return std::exp(iu * pi_ld * nu / 2.0L) * bessel_j_hankel_ld(nu, -iu * w);
}

inline cplx_ld bessel_j_ld(long double nu, cplx_ld w) { return bessel_ji_ld(nu, w, -1); }
inline cplx_ld bessel_i_ld(long double nu, cplx_ld w) { return bessel_ji_ld(nu, w, +1); }

// Evaluates f(nu) with an integer-order pole removed: within delta of an
// integer the value comes from samples at n +- delta, n +- 2 delta.
template <class F>
cplx_ld integer_order_limit(long double nu, F f) {
    const long double n = std::round(nu);
    const long double d = integer_order_delta;
    if (std::fabs(nu - n) >= d) return f(nu);
    auto g = [&](cplx_ld v) { return f(v.real()); };
    return removable_limit(cplx_ld{nu, 0.0L}, n, d, g);
}

inline cplx_ld bessel_y_ld(long double nu, cplx_ld w) {
    return integer_order_limit(nu, [&](long double v) {
        return (bessel_j_ld(v, w) * cospi(v) - bessel_j_ld(-v, w)) / sinpi(v);
    });
}

/// K_nu(w) = int_0^inf e^{-w cosh t} cosh(nu t) dt by the trapezoid rule with
/// step halving; requires Re w > 0. The factor e^{-w} is pulled out.
inline cplx_ld bessel_k_integral_ld(long double nu, cplx_ld w) {
    const long double a = std::fabs(nu);
    // Truncate where Re w (cosh t - 1) - a t exceeds 60.
    long double T = 1.0L;
    while (w.real() * (std::cosh(T) - 1.0L) - a * T < 60.0L) T += 0.25L;
    auto g = [&](long double t) { return std::exp(-w * (std::cosh(t) - 1.0L)) * std::cosh(nu * t); };
    long double h = T / 16.0L;
    cplx_ld sum = 0.5L * g(0.0L);
    for (long double t = h; t < T - 0.5L * h; t += h) sum += g(t);
    cplx_ld prev = sum * h;
    for (int level = 0; level < 16; ++level) {
        h /= 2.0L;
        for (long double t = h; t < T; t += 2.0L * h) sum += g(t);
        const cplx_ld cur = sum * h;
        if (std::abs(cur - prev) <= 1e-17L * std::abs(cur) && level >= 2) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return std::exp(-w) * prev;
}

inline cplx_ld bessel_k_ld(long double nu, cplx_ld w) {
    w = principal(w);
    nu = std::fabs(nu);
    const long double r = std::abs(w);
    if (r >= bessel_crossover(static_cast<double>(nu))) return bessel_k_hankel_ld(nu, w);
    if (w.real() >= 2.0L && std::fabs(std::arg(w)) <= 3.0L * pi_ld / 8.0L) return bessel_k_integral_ld(nu, w);
    return integer_order_limit(nu, [&](long double v) {
        return (pi_ld / 2.0L) * (bessel_i_ld(-v, w) - bessel_i_ld(v, w)) / sinpi(v);
    });
}

/// (w/2)^{-nu} J_nu(w) (s = -1) or (w/2)^{-nu} I_nu(w) (s = +1): an entire
/// function of w^2, equal to 1/Gamma(nu+1) at w = 0.
inline cplx_ld bessel_scaled_ld(long double nu, cplx_ld w, int s) {
    w = principal(w);
    const long double r = std::abs(w);
    if (r <= 8.0L) {
        const cplx_ld inv_gamma = rgamma_ld(cplx_ld{nu + 1.0L, 0.0L});
        if (nu < 0.0L && std::floor(nu) == nu) {
            // 1/Gamma(nu+1) vanishes; the series starts at k = -nu.
            if (r == 0.0L) return {0.0L, 0.0L};
            return std::exp(-nu * std::log(w / 2.0L)) * bessel_ji_ld(nu, w, s);
        }
        return inv_gamma * normalized_series(nu, w, s, 4 * series_cap);
    }
    return std::exp(-nu * std::log(w / 2.0L)) * bessel_ji_ld(nu, w, s);
}

// Unprocessed paths, exposed for cross-checks between evaluators.
inline cplx bessel_j_series(double nu, cplx w) {
    check_order(nu);
    const cplx_ld wl = principal(widen(w));
    if (std::abs(wl) == 0.0L) return narrow(zero_argument(nu));
    if (nu < 0.0 && is_integer(nu)) {
        const double sign = static_cast<long long>(-nu) % 2 ? -1.0 : 1.0;
        return sign * narrow(ascending(-nu, wl, -1));
    }
    return narrow(ascending(nu, wl, -1));
}

inline cplx bessel_j_hankel(double nu, cplx w) {
    check_order(nu);
    return narrow(bessel_j_hankel_ld(nu, widen(w)));
}

} // namespace detail

/// J_nu(w), principal branch -pi < arg w <= pi.
inline cplx bessel_j(BesselOrder order, cplx w) {
    detail::check_order(order.nu);
    return detail::real_if_real_axis(detail::narrow(detail::bessel_j_ld(order.nu, detail::widen(w))), w);
}

/// Y_nu(w) = [J_nu cos(nu pi) - J_{-nu}] / sin(nu pi); integer order via the
/// interpolated limit.
inline cplx bessel_y(BesselOrder order, cplx w) {
    detail::check_order(order.nu);
    if (w == cplx{0.0, 0.0}) throw domain_error("Y_nu is singular at w = 0");
    return detail::real_if_real_axis(detail::narrow(detail::bessel_y_ld(order.nu, detail::widen(w))), w);
}

/// I_nu(w), principal branch.
inline cplx bessel_i(BesselOrder order, cplx w) {
    detail::check_order(order.nu);
    return detail::real_if_real_axis(detail::narrow(detail::bessel_i_ld(order.nu, detail::widen(w))), w);
}

/// K_nu(w) (Macdonald function), principal branch.
inline cplx bessel_k(BesselOrder order, cplx w) {
    detail::check_order(order.nu);
    if (w == cplx{0.0, 0.0}) throw domain_error("K_nu is singular at w = 0");
    return detail::real_if_real_axis(detail::narrow(detail::bessel_k_ld(order.nu, detail::widen(w))), w);
}

/// K_nu(e^{+-i pi/2} x) = -+(i pi/2) e^{-+i pi nu/2} [J_nu(x) -+ i Y_nu(x)],
/// upper signs for sign = +1.
inline cplx k_rotation(BesselOrder order, double x, int sign) {
    if (!(x > 0.0)) throw domain_error("k_rotation requires x > 0");
    if (sign != 1 && sign != -1) throw domain_error("k_rotation sign must be +1 or -1");
    detail::check_order(order.nu);
    const long double nu = order.nu;
    const long double s = sign;
    const cplx_ld iu{0.0L, 1.0L};
    const cplx_ld xl{static_cast<long double>(x), 0.0L};
    const cplx_ld j = detail::bessel_j_ld(nu, xl);
    const cplx_ld y = detail::bessel_y_ld(nu, xl);
    const cplx_ld v = -s * (iu * pi_ld / 2.0L) * std::exp(-s * iu * pi_ld * nu / 2.0L) * (j - s * iu * y);
    return detail::narrow(v);
}

/// Two-term Hankel form
/// J_nu(w) ~ sqrt(2/(pi w)) [cos chi - sin chi (4nu^2 - 1)/(8w)],
/// chi = w - (nu + 1/2) pi/2. Only offered where its O(w^-2) error is small.
inline cplx hankel_j(BesselOrder order, cplx w) {
    detail::check_order(order.nu);
    const double nu = order.nu;
    if (std::abs(w) < 10.0 + 0.5 * nu * nu)
        throw accuracy_error("hankel_j: |w| below 10 + nu^2/2");
    const cplx chi = w - (nu + 0.5) * pi / 2.0;
    return std::sqrt(2.0 / (pi * w)) * (std::cos(chi) - std::sin(chi) * (4.0 * nu * nu - 1.0) / (8.0 * w));
}

} // namespace gegen
