#pragma once

// Complex helpers, log-gamma machinery and branch-correct evaluation of
// sqrt(z^2 - 1) and z_± = z ± sqrt(z^2 - 1).
//
// Branch conventions: arg(z ± 1) ∈ (−π, π]. A real argument lying on a cut
// is only meaningful together with a Side; Side::Above / Side::Below select
// the boundary values at x ± i0.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "gegen/errors.hpp"

namespace gegen {

using cplx = std::complex<double>;
using cplx_ld = std::complex<long double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr long double pi_ld = std::numbers::pi_v<long double>;
inline constexpr cplx I{0.0, 1.0};

/// Complex degree λ and order α.
struct Parameters {
    cplx lambda;
    cplx alpha;
};

enum class Side { Off, Above, Below };

/// A complex argument together with the side of the real axis it is
/// approached from (only meaningful when Im z = 0).
struct BranchedPoint {
    cplx z;
    Side side = Side::Off;

    static BranchedPoint off(cplx z) { return {z, Side::Off}; }
    static BranchedPoint above(double x) { return {cplx{x, 0.0}, Side::Above}; }
    static BranchedPoint below(double x) { return {cplx{x, 0.0}, Side::Below}; }
};

struct ZPair {
    cplx z_plus;
    cplx z_minus;
    bool degenerate = false; ///< |z ∓ 1| < 1e-12: saddles pinch, asymptotic forms break down.
};

inline const char* to_string(Side s) {
    switch (s) {
    case Side::Above: return "above";
    case Side::Below: return "below";
    default: return "off";
    }
}

inline constexpr double degenerate_radius = 1e-12;

namespace detail {

inline bool is_nonpositive_integer(cplx w) {
    return w.imag() == 0.0 && w.real() <= 0.0 && std::floor(w.real()) == w.real();
}

inline bool is_nonpositive_integer(cplx_ld w) {
    return w.imag() == 0.0L && w.real() <= 0.0L && std::floor(w.real()) == w.real();
}

inline cplx_ld widen(cplx w) { return {w.real(), w.imag()}; }
inline cplx narrow(cplx_ld w) {
    return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

/// sin(πx), cos(πx) for real x, exact at integers and half-integers.
template <class Real>
Real sinpi(Real x) {
    const Real n = std::round(2 * x);
    const Real d = x - n / 2;
    const Real s = std::sin(std::numbers::pi_v<Real> * d);
    const Real c = std::cos(std::numbers::pi_v<Real> * d);
    switch (((static_cast<long long>(n) % 4) + 4) % 4) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
    }
}

template <class Real>
Real cospi(Real x) {
    return sinpi<Real>(x + Real(0.5));
}

template <class Real>
std::complex<Real> sinpi(std::complex<Real> w) {
    const Real b = std::numbers::pi_v<Real> * w.imag();
    return {sinpi(w.real()) * std::cosh(b), cospi(w.real()) * std::sinh(b)};
}

template <class Real>
std::complex<Real> cospi(std::complex<Real> w) {
    const Real b = std::numbers::pi_v<Real> * w.imag();
    return {cospi(w.real()) * std::cosh(b), -sinpi(w.real()) * std::sinh(b)};
}

// Stirling coefficients B_{2k} / (2k (2k-1)), k = 1..10.
inline constexpr std::array<long double, 10> stirling_coefficients{
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

// Below this modulus the argument is shifted upward before applying Stirling.
inline constexpr long double stirling_radius = 16.0L;

/// Principal log Γ(w) for Re w ≥ 1/2: Stirling's series after shifting
/// |w| ≥ 16, the shift undone with a sum of principal logs (keeps the branch
/// continuous in the right half-plane). Truncation error < 1e-24.
inline cplx_ld lgamma_right(cplx_ld w) {
    cplx_ld shift_log{0.0L, 0.0L};
    while (std::abs(w) < stirling_radius) {
        shift_log += std::log(w);
        w += 1.0L;
    }
    const cplx_ld inv = 1.0L / w;
    const cplx_ld inv2 = inv * inv;
    cplx_ld series{0.0L, 0.0L};
    cplx_ld p = inv;
    for (long double c : stirling_coefficients) {
        series += c * p;
        p *= inv2;
    }
    const long double half_log_2pi = 0.918938533204672741780329736405617639861L;
    return (w - 0.5L) * std::log(w) - w + half_log_2pi + series - shift_log;
}

/// Value at x of a function f with a removable singularity at `center`,
/// for |x - center| < delta. f is sampled at center +- delta and
/// center +- 2 delta; the value at the centre is the Richardson combination
/// (4 m(delta) - m(2 delta))/3 of the symmetric means m, and points near the
/// centre use the quadratic through (center -+ delta) and the centre.
template <class T, class F>
T removable_limit(T x, long double center, long double delta, F f) {
    const T c{center};
    const T lo = f(T{center - delta});
    const T hi = f(T{center + delta});
    const T lo2 = f(T{center - 2 * delta});
    const T hi2 = f(T{center + 2 * delta});
    const T mid = (T{4} * (lo + hi) / T{2} - (lo2 + hi2) / T{2}) / T{3};
    const T t = (x - c) / T{delta};
    // Quadratic through t = -1, 0, 1.
    return mid + t * (hi - lo) / T{2} + t * t * ((hi + lo) / T{2} - mid);
}

} // namespace detail

/// log Γ(w) in extended precision. Branch-continuous for Re w ≥ 1/2; for
/// Re w < 1/2 the reflection formula is used, which fixes exp(lgamma) but
/// not the imaginary part modulo 2π.
inline cplx_ld lgamma_ld(cplx_ld w) {
    if (detail::is_nonpositive_integer(w))
        throw pole_error("log-gamma pole at nonpositive integer " + std::to_string(static_cast<double>(w.real())));
    if (w.real() >= 0.5L)
        return detail::lgamma_right(w);
    const long double log_pi = 1.144729885849400174143427351353058711647L;
    return log_pi - std::log(detail::sinpi(w)) - detail::lgamma_right(1.0L - w);
}

inline cplx lgamma_fn(cplx w) { return detail::narrow(lgamma_ld(detail::widen(w))); }

/// Γ(w) on the principal branch.
inline cplx gamma_fn(cplx w) {
    if (detail::is_nonpositive_integer(w))
        throw pole_error("gamma pole at nonpositive integer " + std::to_string(w.real()));
    if (w.imag() == 0.0 && w.real() > 0.0 && w.real() <= 170.0)
        return std::tgamma(static_cast<long double>(w.real()));
    return detail::narrow(std::exp(lgamma_ld(detail::widen(w))));
}

/// 1/Γ(w); zero at the poles of Γ.
inline cplx_ld rgamma_ld(cplx_ld w) {
    if (detail::is_nonpositive_integer(w))
        return {0.0L, 0.0L};
    return std::exp(-lgamma_ld(w));
}

inline cplx rgamma(cplx w) { return detail::narrow(rgamma_ld(detail::widen(w))); }

/// Γ(a)/Γ(b) = exp(log Γ(a) − log Γ(b)). When both arguments are poles the
/// limit (−1)^{m−k} k!/m! for a = −m, b = −k is returned.
inline cplx_ld gamma_ratio_ld(cplx_ld a, cplx_ld b) {
    const bool pa = detail::is_nonpositive_integer(a);
    const bool pb = detail::is_nonpositive_integer(b);
    if (pa && pb) {
        const long double m = -a.real();
        const long double k = -b.real();
        const long double mag = std::exp(std::lgamma(k + 1.0L) - std::lgamma(m + 1.0L));
        const bool odd = static_cast<long long>(std::fabs(m - k)) % 2 == 1;
        return {odd ? -mag : mag, 0.0L};
    }
    if (pa || pb)
        throw pole_error("gamma_ratio: exactly one argument is a pole of Γ");
    if (a == b)
        return {1.0L, 0.0L};
    // Integer offsets are cheap and exact as finite products.
    const cplx_ld diff = a - b;
    if (diff.imag() == 0.0L && std::floor(diff.real()) == diff.real() && std::fabs(diff.real()) <= 64.0L) {
        cplx_ld prod{1.0L, 0.0L};
        const int n = static_cast<int>(diff.real());
        if (n > 0)
            for (int j = 0; j < n; ++j) prod *= b + static_cast<long double>(j);
        else
            for (int j = 0; j < -n; ++j) prod /= a + static_cast<long double>(j);
        return prod;
    }
    return std::exp(lgamma_ld(a) - lgamma_ld(b));
}

inline cplx gamma_ratio(cplx a, cplx b) {
    return detail::narrow(gamma_ratio_ld(detail::widen(a), detail::widen(b)));
}

// ---------------------------------------------------------------------------
// Branch handling
// ---------------------------------------------------------------------------

namespace detail {

inline void check_side(const BranchedPoint& p) {
    if (p.side != Side::Off && p.z.imag() != 0.0)
        throw branch_error("side above/below requires a real argument");
}

/// sqrt(w) where a negative real w approached from the given side takes
/// the value ±i sqrt(|w|).
inline cplx side_sqrt(cplx w, Side side) {
    if (side != Side::Off && w.imag() == 0.0 && w.real() < 0.0) {
        const double r = std::sqrt(-w.real());
        return side == Side::Above ? cplx{0.0, r} : cplx{0.0, -r};
    }
    return std::sqrt(w);
}

/// log(w) with arg ∈ (−π, π]; a negative real w approached from below gets arg −π.
inline cplx_ld side_log(cplx_ld w, Side side) {
    if (w.imag() == 0.0L && w.real() < 0.0L) {
        const long double a = side == Side::Below ? -pi_ld : pi_ld;
        return {std::log(-w.real()), a};
    }
    return std::log(w);
}

/// exp(s * log(w)) using side_log.
inline cplx_ld side_pow(cplx_ld w, cplx_ld s, Side side) {
    return std::exp(s * side_log(w, side));
}

} // namespace detail

/// log(z − 1) with arg ∈ (−π, π], boundary values from p.side.
inline cplx_ld log_z_minus_1(const BranchedPoint& p) {
    detail::check_side(p);
    return detail::side_log(detail::widen(p.z) - 1.0L, p.side);
}

/// log(z + 1) with arg ∈ (−π, π], boundary values from p.side.
inline cplx_ld log_z_plus_1(const BranchedPoint& p) {
    detail::check_side(p);
    return detail::side_log(detail::widen(p.z) + 1.0L, p.side);
}

/// (z² − 1)^s ≡ (z − 1)^s (z + 1)^s, cut along (−∞, 1].
inline cplx_ld pow_zsq_minus_1(const BranchedPoint& p, cplx_ld s) {
    return std::exp(s * (log_z_minus_1(p) + log_z_plus_1(p)));
}

inline bool on_real_cut(const BranchedPoint& p, double right_end) {
    return p.z.imag() == 0.0 && p.z.real() < right_end;
}

/// sqrt(z² − 1) with the cut from 1 to −∞ and sqrt(z² − 1) → z as z → +∞.
/// Side::Above / Side::Below give the x ± i0 boundary values, e.g.
/// e^{±iπ/2} sin θ for x = cos θ ∈ (−1, 1).
inline cplx sqrt_zsq_minus_1(const BranchedPoint& p) {
    detail::check_side(p);
    if (p.side == Side::Off && on_real_cut(p, 1.0))
        throw branch_error("sqrt(z^2-1): real z < 1 lies on the cut; choose side above or below");
    if (std::abs(p.z - 1.0) < degenerate_radius || std::abs(p.z + 1.0) < degenerate_radius)
        return {0.0, 0.0};
    return detail::side_sqrt(p.z - 1.0, p.side) * detail::side_sqrt(p.z + 1.0, p.side);
}

/// z_± = z ± sqrt(z² − 1); z_− is formed as 1/z_+ so that z_+ z_− = 1 to roundoff.
inline ZPair z_plus_minus(const BranchedPoint& p) {
    const cplx root = sqrt_zsq_minus_1(p);
    ZPair out;
    out.degenerate = std::abs(p.z - 1.0) < degenerate_radius || std::abs(p.z + 1.0) < degenerate_radius;
    out.z_plus = p.z + root;
    out.z_minus = out.degenerate ? p.z - root : 1.0 / out.z_plus;
    return out;
}

/// log z_+ on the branch continuous in the plane cut along (−∞, 1]; when
/// z_+ is a negative real (z < −1 on the cut) the side picks arg = ±π.
inline cplx_ld log_z_plus(const BranchedPoint& p, const ZPair& zp) {
    const cplx_ld w = detail::widen(zp.z_plus);
    if (w.imag() == 0.0L && w.real() < 0.0L)
        return {std::log(-w.real()), p.side == Side::Below ? -pi_ld : pi_ld};
    return std::log(w);
}

} // namespace gegen
