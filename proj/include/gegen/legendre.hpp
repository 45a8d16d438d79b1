#pragma once

// Associated Legendre functions of the first and second kind through the
// Gegenbauer functions, with lambda = nu - mu and alpha = mu + 1/2:
//
//   P_nu^{-mu}(z) = 2^mu/sqrt(pi) G(mu+1/2) G(nu-mu+1)/G(nu+mu+1) (z^2-1)^{mu/2} C(z)
//   Q_nu^{-mu}(z) = 2^mu sqrt(pi) e^{-2 pi i (mu+1/4)} (same gammas) (z^2-1)^{mu/2} D(z)

#include <cmath>
#include <complex>

#include "gegen/asymptotics.hpp"
#include "gegen/errors.hpp"
#include "gegen/exact.hpp"
#include "gegen/numeric_core.hpp"

namespace gegen {

struct LegendreIndices {
    cplx nu_deg;
    cplx mu_ord;
};

/// Evaluator behind the Gegenbauer function. Asymptotic picks the large-degree
/// form for the point: the on-cut trigonometric form for real x in (-1, 1),
/// the z_+ power form elsewhere.
enum class LegendreBackend { Exact, Asymptotic };

struct LegendreOptions {
    LegendreBackend backend = LegendreBackend::Exact;
    ExactOptions exact;
    AsymptoticOptions asymptotic;
};

inline Parameters gegenbauer_parameters(const LegendreIndices& idx) {
    return {idx.nu_deg - idx.mu_ord, idx.mu_ord + 0.5};
}

namespace detail {

/// 2^mu G(mu+1/2) G(nu-mu+1)/G(nu+mu+1), shared by P and Q.
inline cplx_ld legendre_common(const LegendreIndices& idx) {
    const cplx_ld mu = widen(idx.mu_ord);
    const cplx_ld nu = widen(idx.nu_deg);
    const long double ln2 = 0.693147180559945309417232121458176568L;
    return std::exp(mu * ln2) * gamma_ld(mu + 0.5L) * gamma_ratio_ld(nu - mu + 1.0L, nu + mu + 1.0L);
}

inline bool strictly_inside_cut(const BranchedPoint& p) {
    return p.z.imag() == 0.0 && p.z.real() > -1.0 && p.z.real() < 1.0;
}

inline cplx_ld legendre_c(const LegendreIndices& idx, const BranchedPoint& p, const LegendreOptions& opt) {
    const Parameters g = gegenbauer_parameters(idx);
    if (opt.backend == LegendreBackend::Exact) return widen(gegenbauer_c(g, p, opt.exact).value);
    if (strictly_inside_cut(p)) return widen(thm2_c(g, std::acos(p.z.real()), opt.asymptotic).value);
    return widen(thm1_c(g, p, opt.asymptotic).value);
}

inline cplx_ld legendre_d(const LegendreIndices& idx, const BranchedPoint& p, const LegendreOptions& opt) {
    const Parameters g = gegenbauer_parameters(idx);
    if (opt.backend == LegendreBackend::Exact) return widen(gegenbauer_d(g, p, opt.exact).value);
    if (strictly_inside_cut(p))
        throw domain_error("legendre_q: no asymptotic boundary value of D on the cut; use the exact backend");
    return widen(thm1_d(g, p, opt.asymptotic).value);
}

inline void check_mu_side(const LegendreIndices& idx, const BranchedPoint& p) {
    if (idx.mu_ord != cplx{0.0, 0.0} && p.side == Side::Off && p.z.imag() == 0.0 && p.z.real() < 1.0)
        throw branch_error("(z^2-1)^{mu/2} is ambiguous on the cut; choose side above or below");
}

} // namespace detail

/// Phase factor e^{-2 pi i (mu+1/4)} applied in legendre_q. It is used as
/// printed; q_phase_calibration() measures any residual constant phase.
inline cplx legendre_q_phase(cplx mu) {
    return std::exp(-2.0 * pi * I * (mu + 0.25));
}

/// P_nu^{-mu}(z).
inline cplx legendre_p(const LegendreIndices& idx, const BranchedPoint& p, const LegendreOptions& opt = {}) {
    detail::check_mu_side(idx, p);
    const long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
    const cplx_ld mu = detail::widen(idx.mu_ord);
    const cplx_ld pw = idx.mu_ord == cplx{0.0, 0.0} ? cplx_ld{1.0L, 0.0L} : pow_zsq_minus_1(p, mu / 2.0L);
    return detail::narrow(inv_sqrt_pi * detail::legendre_common(idx) * pw * detail::legendre_c(idx, p, opt));
}

/// Ferrers function P_nu^{-mu}(x) on (-1, 1), with (1-x^2)^{mu/2} in place of (z^2-1)^{mu/2}.
inline cplx ferrers_p(const LegendreIndices& idx, double x, const LegendreOptions& opt = {}) {
    if (!(x > -1.0 && x < 1.0)) throw domain_error("ferrers_p: x must lie in (-1, 1)");
    const long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
    const cplx_ld mu = detail::widen(idx.mu_ord);
    const long double xl = x;
    const cplx_ld pw = std::exp(mu / 2.0L * std::log((1.0L - xl) * (1.0L + xl)));
    return detail::narrow(inv_sqrt_pi * detail::legendre_common(idx) * pw *
                          detail::legendre_c(idx, BranchedPoint::off(x), opt));
}

/// Q_nu^{-mu}(z).
inline cplx legendre_q(const LegendreIndices& idx, const BranchedPoint& p, const LegendreOptions& opt = {}) {
    detail::check_mu_side(idx, p);
    const long double sqrt_pi = 1.772453850905516027298167483341145183L;
    const cplx_ld mu = detail::widen(idx.mu_ord);
    const cplx_ld pw = idx.mu_ord == cplx{0.0, 0.0} ? cplx_ld{1.0L, 0.0L} : pow_zsq_minus_1(p, mu / 2.0L);
    return detail::narrow(sqrt_pi * detail::widen(legendre_q_phase(idx.mu_ord)) * detail::legendre_common(idx) * pw *
                          detail::legendre_d(idx, p, opt));
}

/// Ratio of the classical Q_0(3) = ln(2)/2 to legendre_q at nu = mu = 0, z = 3.
/// Equal to 1 when the printed phase matches the classical normalization.
inline cplx q_phase_calibration() {
    const cplx q = legendre_q({0.0, 0.0}, BranchedPoint::off(3.0));
    return 0.5 * std::log(2.0) / q;
}

} // namespace gegen
