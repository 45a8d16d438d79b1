#pragma once

// Reference evaluation of the Gegenbauer functions C and D and of the
// on-the-cut functions, from convergent hypergeometric series.
//
// C_l^a(z) = G(l+2a)/(G(l+1)G(2a)) 2F1(-l, l+2a; a+1/2; (1-z)/2)
//
// D_l^a(z), cut from +1 to -inf, has three representations:
//   A  e^{i pi a} (2(z-1))^{-l-2a} G(l+2a)/(G(l+a+1)G(a))
//        * 2F1(l+2a, l+a+1/2; 2l+2a+1; 2/(1-z))                  z large
//   B  (1/2) e^{i pi a}/cos(pi a) [C_l^a(z) - sqrt(pi)/(G(a)G(3/2-a))
//        * (z^2-1)^{1/2-a} 2F1(1-l-2a, l+1; 3/2-a; (1-z)/2)]     z near +1
//   C  e^{i pi a} 2^{-2a}/(sqrt(pi) G(a)) e^{-+i pi(l+2a)}
//        * [G(l+2a)G(1/2-a)/G(l+1) ((1-z)/2)^{1/2-a} 2F1(1/2-l-a, l+a+1/2; a+1/2; (1+z)/2)
//           + e^{+-i pi(a-1/2)} G(a-1/2) ((1+z)/2)^{1/2-a} 2F1(1/2-l-a, l+a+1/2; 3/2-a; (1+z)/2)]
//                                                                z near -1
// Route B is the two-C connection formula with its Gamma factors collapsed
// by the duplication formula, which keeps it finite at integer a.
//
// For large degree every series suffers cancellation, so values whose series
// error estimate is poor are produced instead by the three-term recurrence in
// the degree, seeded from series values at degree Re l0 in [1, 2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gegen/errors.hpp"
#include "gegen/hypergeometric.hpp"
#include "gegen/numeric_core.hpp"

namespace gegen {

enum class DRoute { A, B, C };

inline const char* to_string(DRoute r) {
    switch (r) {
    case DRoute::A: return "A";
    case DRoute::B: return "B";
    default: return "C";
    }
}

struct ExactOptions {
    Hyp2f1Options series{};
    /// Allow the degree recurrence when the series estimate is worse than recurrence_threshold.
    bool allow_recurrence = true;
    double recurrence_threshold = 1e-12;
    /// Evaluate D by this route only, ignoring the route map (still requires convergence).
    std::optional<DRoute> force_route{};
};

/// Route map for D: the region where each representation is offered.
struct DRouteMap {
    double a_radius = 0.8;     ///< A if |2/(1-z)| <= 0.8 or |2/(1+z)| <= 0.8
    double b_radius = 1.6;     ///< B if |1-z| <= 1.6 and |cos pi a| > b_cos_floor
    double b_cos_floor = 0.05;
    double c_radius = 1.6;     ///< C if |1+z| <= 1.6
};

inline constexpr double half_integer_delta = 1e-5;

namespace detail {

struct Eval {
    cplx_ld value{0.0L, 0.0L};
    long double abs_error = std::numeric_limits<long double>::infinity();
    long terms = 0;
    bool converged = false;
    std::string route;
    bool degraded = false;

    long double rel_error() const {
        const long double m = std::abs(value);
        if (!std::isfinite(static_cast<double>(m))) return std::numeric_limits<long double>::infinity();
        return abs_error / std::max(m, std::numeric_limits<long double>::min());
    }
};

inline SeriesOutcome to_outcome(const Eval& e) {
    SeriesOutcome out;
    out.value = narrow(e.value);
    out.terms_used = e.terms;
    out.converged = e.converged;
    out.est_abs_error = static_cast<double>(e.abs_error);
    out.route = e.route;
    out.degraded = e.degraded;
    return out;
}

inline const cplx_ld iu_ld{0.0L, 1.0L};

inline cplx_ld gamma_ld(cplx_ld w) { return std::exp(lgamma_ld(w)); }

inline bool is_real_axis(const BranchedPoint& p) { return p.z.imag() == 0.0; }

/// Bridges a removable singularity of f at the nearest half-integer h when
/// |a - h| < delta.
template <class F>
Eval half_integer_bridge(cplx_ld a, F f) {
    const long double h = std::round(a.real() - 0.5L) + 0.5L;
    const long double d = half_integer_delta;
    if (std::abs(a - cplx_ld{h, 0.0L}) >= d) return f(a);
    Eval out;
    out.converged = true;
    out.abs_error = 0.0L;
    auto g = [&](cplx_ld av) {
        const Eval e = f(av);
        out.abs_error = std::max(out.abs_error, e.abs_error);
        out.terms += e.terms;
        out.converged = out.converged && e.converged;
        out.route = e.route;
        return e.value;
    };
    out.value = removable_limit(a, h, d, g);
    // Samples near the pole carry the 1/cos amplification already; scale by
    // the Richardson weights.
    out.abs_error *= 3.0L;
    out.degraded = true;
    return out;
}

inline Eval c_series(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const Hyp2f1Options& opt) {
    const cplx_ld z = widen(p.z);
    const cplx_ld pre = gamma_ratio_ld(lam + 2.0L * a, lam + 1.0L) * rgamma_ld(2.0L * a);
    std::string r;
    const Sum s = hyp2f1_ld(-lam, lam + 2.0L * a, a + 0.5L, (1.0L - z) / 2.0L, opt, &r);
    Eval e;
    e.value = pre * s.value;
    e.abs_error = std::abs(pre) * s.abs_error;
    e.terms = s.terms;
    e.converged = s.converged;
    e.route = "series-" + r;
    return e;
}

inline Eval d_route_a(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const Hyp2f1Options& opt) {
    const cplx_ld z = widen(p.z);
    const long double ln2 = 0.693147180559945309417232121458176568L;
    const cplx_ld log_pre = iu_ld * pi_ld * a - (lam + 2.0L * a) * (ln2 + log_z_minus_1(p));
    const cplx_ld pre = std::exp(log_pre) * gamma_ratio_ld(lam + 2.0L * a, lam + a + 1.0L) * rgamma_ld(a);
    const Sum s = hyp2f1_ld(lam + 2.0L * a, lam + a + 0.5L, 2.0L * lam + 2.0L * a + 1.0L, 2.0L / (1.0L - z), opt);
    Eval e;
    e.value = pre * s.value;
    e.abs_error = std::abs(pre) * s.abs_error;
    e.terms = s.terms;
    e.converged = s.converged;
    e.route = "A";
    return e;
}

inline Eval d_route_b_raw(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const Hyp2f1Options& opt) {
    const cplx_ld z = widen(p.z);
    const cplx_ld u = (1.0L - z) / 2.0L;
    const Eval c = c_series(lam, a, p, opt);
    const long double sqrt_pi = 1.772453850905516027298167483341145183L;
    const cplx_ld k2 = sqrt_pi * rgamma_ld(a) * rgamma_ld(1.5L - a) * pow_zsq_minus_1(p, 0.5L - a);
    const Sum s = hyp2f1_ld(1.0L - lam - 2.0L * a, lam + 1.0L, 1.5L - a, u, opt);
    const cplx_ld outer = 0.5L * std::exp(iu_ld * pi_ld * a) / cospi(a);
    Eval e;
    e.value = outer * (c.value - k2 * s.value);
    e.abs_error = std::abs(outer) * (c.abs_error + std::abs(k2) * s.abs_error);
    e.terms = c.terms + s.terms;
    e.converged = c.converged && s.converged;
    e.route = "B";
    return e;
}

/// Upper signs in route C and in the near -1 forms.
inline bool upper_side(const BranchedPoint& p) {
    if (p.side == Side::Above) return true;
    if (p.side == Side::Below) return false;
    return p.z.imag() >= 0.0;
}

inline Eval d_route_c_raw(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const Hyp2f1Options& opt) {
    const cplx_ld z = widen(p.z);
    const cplx_ld w = (1.0L + z) / 2.0L;
    const long double s = upper_side(p) ? 1.0L : -1.0L;
    const Side w_side = p.side == Side::Off ? Side::Off : (s > 0 ? Side::Above : Side::Below);
    const Sum f1 = hyp2f1_ld(0.5L - lam - a, lam + a + 0.5L, a + 0.5L, w, opt);
    const Sum f2 = hyp2f1_ld(0.5L - lam - a, lam + a + 0.5L, 1.5L - a, w, opt);
    const cplx_ld k1 = gamma_ratio_ld(lam + 2.0L * a, lam + 1.0L) * gamma_ld(0.5L - a) *
                       std::exp((0.5L - a) * std::log((1.0L - z) / 2.0L));
    const cplx_ld k2 = std::exp(s * iu_ld * pi_ld * (a - 0.5L)) * gamma_ld(a - 0.5L) *
                       side_pow(w, 0.5L - a, w_side);
    const long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
    const long double ln2 = 0.693147180559945309417232121458176568L;
    const cplx_ld outer = inv_sqrt_pi * std::exp(iu_ld * pi_ld * a - 2.0L * a * ln2 - s * iu_ld * pi_ld * (lam + 2.0L * a)) *
                          rgamma_ld(a);
    Eval e;
    e.value = outer * (k1 * f1.value + k2 * f2.value);
    e.abs_error = std::abs(outer) * (std::abs(k1) * f1.abs_error + std::abs(k2) * f2.abs_error);
    e.terms = f1.terms + f2.terms;
    e.converged = f1.converged && f2.converged;
    e.route = "C";
    return e;
}

inline Eval d_route(DRoute r, cplx_ld lam, cplx_ld a, const BranchedPoint& p, const Hyp2f1Options& opt) {
    switch (r) {
    case DRoute::A: return d_route_a(lam, a, p, opt);
    case DRoute::B:
        return half_integer_bridge(a, [&](cplx_ld av) { return d_route_b_raw(lam, av, p, opt); });
    default:
        return half_integer_bridge(a, [&](cplx_ld av) { return d_route_c_raw(lam, av, p, opt); });
    }
}

inline std::vector<DRoute> eligible_routes(cplx a, cplx z, const DRouteMap& map) {
    std::vector<DRoute> out;
    const bool a_ok = std::abs(2.0 / (1.0 - z)) <= map.a_radius || std::abs(2.0 / (1.0 + z)) <= map.a_radius;
    const bool c_ok = std::abs(1.0 + z) <= map.c_radius;
    const bool b_region = std::abs(1.0 - z) <= map.b_radius;
    const bool b_regular = std::abs(cospi(widen(a))) > map.b_cos_floor;
    if (a_ok) out.push_back(DRoute::A);
    if (b_region && (b_regular || (!a_ok && !c_ok))) out.push_back(DRoute::B);
    if (c_ok) out.push_back(DRoute::C);
    return out;
}

inline void check_d_point(const BranchedPoint& p) {
    if (p.side != Side::Off && p.z.imag() != 0.0) throw branch_error("side above/below requires a real argument");
    if (std::abs(p.z - 1.0) < degenerate_radius || std::abs(p.z + 1.0) < degenerate_radius)
        throw domain_error("D is singular at z = +-1");
    if (p.side == Side::Off && on_real_cut(p, 1.0))
        throw branch_error("D: real z < 1 lies on the cut; choose side above or below");
}

inline bool is_nonnegative_integer(cplx_ld w) { return w.imag() == 0.0L && w.real() >= 0.0L && std::floor(w.real()) == w.real(); }

inline void check_c_point(const BranchedPoint& p, cplx_ld lam) {
    if (p.side != Side::Off && p.z.imag() != 0.0) throw branch_error("side above/below requires a real argument");
    // Integer degree: C is a polynomial and has no cut.
    if (is_real_axis(p) && p.z.real() <= -1.0 && !is_nonnegative_integer(lam)) {
        if (p.side == Side::Off) throw branch_error("C: real z <= -1 lies on the cut; choose side above or below");
        throw route_error("C on its cut z <= -1 is outside the series region");
    }
}

/// Best series value for D (no recurrence).
inline Eval d_series(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const ExactOptions& opt, const DRouteMap& map = {}) {
    std::vector<DRoute> routes;
    if (opt.force_route) routes.push_back(*opt.force_route);
    else routes = eligible_routes(narrow(a), p.z, map);
    if (routes.empty()) throw route_error("D: no series route covers this point");
    Eval best;
    bool have = false;
    std::string failures;
    for (DRoute r : routes) {
        try {
            Eval e = d_route(r, lam, a, p, opt.series);
            if (!std::isfinite(static_cast<double>(std::abs(e.value)))) continue;
            if (!have || (e.converged && !best.converged) ||
                (e.converged == best.converged && e.rel_error() < best.rel_error())) {
                best = e;
                have = true;
            }
        } catch (const pole_error& err) {
            failures += std::string(" ") + to_string(r) + ": " + err.what();
        }
    }
    if (!have) throw route_error("D: no route produced a finite value" + failures);
    return best;
}

inline Eval c_series_checked(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const ExactOptions& opt) {
    Eval e = c_series(lam, a, p, opt.series);
    if (!std::isfinite(static_cast<double>(std::abs(e.value))))
        throw route_error("C: no convergent series at this point");
    return e;
}

/// Degree recurrence (l+1) F_{l+1} = 2(l+a) z F_l - (l+2a-1) F_{l-1}.
inline Eval degree_recurrence(bool is_d, cplx_ld lam, cplx_ld a, const BranchedPoint& p,
                              const std::function<Eval(cplx_ld)>& seed) {
    const long long N = static_cast<long long>(std::floor(lam.real())) - 1;
    if (N < 1) throw route_error("degree recurrence needs Re lambda >= 2");
    const cplx_ld lam0 = lam - static_cast<long double>(N);
    const cplx_ld z = widen(p.z);

    bool backward = false;
    long long K = 0;
    if (is_d && !(is_real_axis(p) && p.z.real() > -1.0 && p.z.real() < 1.0)) {
        const ZPair zp = z_plus_minus(p);
        const long double g = std::log(std::abs(widen(zp.z_plus)));
        if (g * static_cast<long double>(N) > 3.0L) {
            backward = true;
            K = std::min<long long>(static_cast<long long>(std::ceil(40.0L / g)) + 20, 2000000);
        }
    }

    Eval out;
    out.route = backward ? "recurrence-backward" : "recurrence-forward";
    const long double big = 1e300L;
    if (!backward) {
        const Eval s0 = seed(lam0);
        const Eval s1 = seed(lam0 + 1.0L);
        cplx_ld f0 = s0.value;
        cplx_ld f1 = s1.value;
        for (long long j = 1; j < N; ++j) {
            const cplx_ld l = lam0 + static_cast<long double>(j);
            const cplx_ld f2 = (2.0L * (l + a) * z * f1 - (l + 2.0L * a - 1.0L) * f0) / (l + 1.0L);
            f0 = f1;
            f1 = f2;
        }
        out.value = f1;
        // A seed may vanish (e.g. odd degree at x = 0), so scale by the larger one.
        const long double seed_scale = std::max(std::abs(s0.value), std::abs(s1.value));
        const long double seed_rel = seed_scale > 0.0L ? (s0.abs_error + s1.abs_error) / seed_scale
                                                       : std::numeric_limits<long double>::infinity();
        out.abs_error = (seed_rel + 16.0L * eps_ld * static_cast<long double>(N)) * std::abs(out.value);
        out.terms = s0.terms + s1.terms + N;
        out.converged = s0.converged && s1.converged;
        out.degraded = s0.degraded || s1.degraded;
        return out;
    }

    // Miller: run downward from far above with arbitrary start values; the
    // minimal solution dominates and is normalised by the seed at lam0.
    const Eval s0 = seed(lam0);
    const long long top = N + K;
    cplx_ld f_up{0.0L, 0.0L};
    cplx_ld f{1.0L, 0.0L};
    cplx_ld f_target{0.0L, 0.0L};
    bool stored = false;
    for (long long j = top; j > 0; --j) {
        const cplx_ld l = lam0 + static_cast<long double>(j);
        const cplx_ld f_down = (2.0L * (l + a) * z * f - (l + 1.0L) * f_up) / (l + 2.0L * a - 1.0L);
        f_up = f;
        f = f_down;
        if (j - 1 == N) {
            f_target = f;
            stored = true;
        }
        if (std::abs(f) > big) {
            f /= big;
            f_up /= big;
            if (stored) f_target /= big;
        }
    }
    out.value = f_target / f * s0.value;
    out.abs_error = (s0.rel_error() + 16.0L * eps_ld * static_cast<long double>(N)) * std::abs(out.value);
    out.terms = s0.terms + top;
    out.converged = s0.converged;
    out.degraded = s0.degraded;
    return out;
}

inline bool recurrence_wanted(const Eval* series, cplx_ld lam, const ExactOptions& opt) {
    if (!opt.allow_recurrence || lam.real() < 3.0L) return false;
    return series == nullptr || !series->converged || series->rel_error() > opt.recurrence_threshold;
}

inline Eval pick(std::optional<Eval> series, std::optional<Eval> rec) {
    if (!series) return *rec;
    if (!rec) return *series;
    const bool rec_ok = std::isfinite(static_cast<double>(std::abs(rec->value)));
    if (!rec_ok) return *series;
    return rec->abs_error < series->abs_error || !series->converged ? *rec : *series;
}

inline Eval gegenbauer_c_ld(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const ExactOptions& opt) {
    check_c_point(p, lam);
    if (is_nonpositive_integer(a + 0.5L)) throw pole_error("C: alpha + 1/2 is a nonpositive integer");
    std::optional<Eval> series;
    std::string failure;
    try {
        series = c_series_checked(lam, a, p, opt);
    } catch (const route_error& e) {
        failure = e.what();
    }
    if (!recurrence_wanted(series ? &*series : nullptr, lam, opt)) {
        if (!series) throw route_error(failure);
        return *series;
    }
    std::optional<Eval> rec;
    try {
        rec = degree_recurrence(false, lam, a, p, [&](cplx_ld l) { return c_series_checked(l, a, p, opt); });
    } catch (const route_error&) {
        if (!series) throw;
    }
    return pick(series, rec);
}

inline Eval gegenbauer_d_ld(cplx_ld lam, cplx_ld a, const BranchedPoint& p, const ExactOptions& opt) {
    check_d_point(p);
    std::optional<Eval> series;
    std::string failure;
    try {
        series = d_series(lam, a, p, opt);
    } catch (const route_error& e) {
        failure = e.what();
    }
    if (!recurrence_wanted(series ? &*series : nullptr, lam, opt)) {
        if (!series) throw route_error(failure);
        return *series;
    }
    std::optional<Eval> rec;
    try {
        rec = degree_recurrence(true, lam, a, p, [&](cplx_ld l) { return d_series(l, a, p, opt); });
    } catch (const route_error&) {
        if (!series) throw;
    }
    return pick(series, rec);
}

} // namespace detail

/// C_lambda^alpha(z) from the 2F1 series (or the degree recurrence at large degree).
inline SeriesOutcome gegenbauer_c(const Parameters& params, const BranchedPoint& p, const ExactOptions& opt = {}) {
    return detail::to_outcome(detail::gegenbauer_c_ld(detail::widen(params.lambda), detail::widen(params.alpha), p, opt));
}

/// D_lambda^alpha(z), cut from +1 to -inf; real z < 1 needs a side.
inline SeriesOutcome gegenbauer_d(const Parameters& params, const BranchedPoint& p, const ExactOptions& opt = {}) {
    return detail::to_outcome(detail::gegenbauer_d_ld(detail::widen(params.lambda), detail::widen(params.alpha), p, opt));
}

namespace detail {

inline void check_cut_x(double x) {
    if (!(x > -1.0 && x < 1.0)) throw domain_error("on-cut functions need x in (-1, 1)");
}

struct CutPair {
    Eval above;
    Eval below;
};

inline CutPair boundary_values(const Parameters& params, double x, const ExactOptions& opt) {
    check_cut_x(x);
    const cplx_ld lam = widen(params.lambda);
    const cplx_ld a = widen(params.alpha);
    return {gegenbauer_d_ld(lam, a, BranchedPoint::above(x), opt), gegenbauer_d_ld(lam, a, BranchedPoint::below(x), opt)};
}

inline Eval combine_cut(const CutPair& d, cplx_ld a, cplx_ld c_plus, cplx_ld c_minus) {
    Eval out;
    const cplx_ld ep = std::exp(iu_ld * pi_ld * a);
    const cplx_ld em = std::exp(-iu_ld * pi_ld * a);
    out.value = c_plus * ep * d.above.value + c_minus * em * d.below.value;
    out.abs_error = std::abs(c_plus * ep) * d.above.abs_error + std::abs(c_minus * em) * d.below.abs_error;
    out.terms = d.above.terms + d.below.terms;
    out.converged = d.above.converged && d.below.converged;
    out.degraded = d.above.degraded || d.below.degraded;
    out.route = d.above.route;
    return out;
}

} // namespace detail

/// Ferrers-type D on the cut:
/// -i e^{-i pi a} (e^{i pi a} D(x+i0) - e^{-i pi a} D(x-i0)).
inline SeriesOutcome ferrers_d_cut_outcome(const Parameters& params, double x, const ExactOptions& opt = {}) {
    const auto d = detail::boundary_values(params, x, opt);
    const cplx_ld a = detail::widen(params.alpha);
    const cplx_ld k = -detail::iu_ld * std::exp(-detail::iu_ld * pi_ld * a);
    return detail::to_outcome(detail::combine_cut(d, a, k, -k));
}

/// Ferrers-type C on the cut:
/// e^{-i pi a} (e^{i pi a} D(x+i0) + e^{-i pi a} D(x-i0)) = C(x +- i0).
inline SeriesOutcome ferrers_c_cut_outcome(const Parameters& params, double x, const ExactOptions& opt = {}) {
    const auto d = detail::boundary_values(params, x, opt);
    const cplx_ld a = detail::widen(params.alpha);
    const cplx_ld k = std::exp(-detail::iu_ld * pi_ld * a);
    return detail::to_outcome(detail::combine_cut(d, a, k, k));
}

inline cplx ferrers_d_cut(const Parameters& params, double x, const ExactOptions& opt = {}) {
    return ferrers_d_cut_outcome(params, x, opt).value;
}

inline cplx ferrers_c_cut(const Parameters& params, double x, const ExactOptions& opt = {}) {
    return ferrers_c_cut_outcome(params, x, opt).value;
}

/// Gegenbauer polynomial by C_0 = 1, C_1 = 2 a x,
/// n C_n = 2x(n+a-1) C_{n-1} - (n+2a-2) C_{n-2}.
inline double gegenbauer_poly(int n, double alpha, double x) {
    if (n < 0 || n > 500) throw domain_error("gegenbauer_poly: n must be in [0, 500]");
    if (n == 0) return 1.0;
    long double c0 = 1.0L;
    long double c1 = 2.0L * alpha * x;
    for (int k = 2; k <= n; ++k) {
        const long double c2 = (2.0L * x * (k + alpha - 1.0L) * c1 - (k + 2.0L * alpha - 2.0L) * c0) / k;
        c0 = c1;
        c1 = c2;
    }
    return static_cast<double>(c1);
}

} // namespace gegen
