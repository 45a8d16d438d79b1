#pragma once

// Large-degree approximations of the Gegenbauer functions.
//
//   thm1_*   complex z away from +-1: powers of z_+
//   thm2_*   x = cos(theta) on the cut: trigonometric forms
//   thm3_*   z near +1: Bessel functions of Z = sqrt(2 (l+a)^2 (1-z))
//   thm4_*   z near -1: Bessel functions of Z'' = sqrt(2 (l+a)^2 (1+z))
//
// plus the saddle-point diagnostics behind the first two and the selector
// that decides which form applies at a given point.

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gegen/bessel.hpp"
#include "gegen/errors.hpp"
#include "gegen/exact.hpp"
#include "gegen/numeric_core.hpp"

namespace gegen {

enum class Regime { Exact, Thm1, Thm2, Thm3, Thm4 };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::Exact: return "Exact";
    case Regime::Thm1: return "Thm1";
    case Regime::Thm2: return "Thm2";
    case Regime::Thm3: return "Thm3";
    default: return "Thm4";
    }
}

enum class Kind { C, D };

struct AsymptoticOptions {
    /// M in every "much greater / much less" condition.
    double margin = 10.0;
    /// Smallest |lambda| for which an asymptotic form is offered.
    double lambda_floor = 30.0;
    /// c in the a priori error estimate c/|lambda| or c/|lambda|^{2/3}.
    double error_constant = 1.0;
    /// Correction order for thm3_c and hyp2f1_bessel_series (0 or 1).
    int order = 1;
    /// thm3_c: use the expansion in lambda(lambda+2a) with variable Y.
    bool bessel_rep2 = false;
    /// thm3_d: keep the (z+1)/2 factor and the I_nu term.
    bool d_bessel2 = false;
    /// Reject points outside the validity region.
    bool enforce_regime = true;
};

/// Derived quantities used by an evaluation.
struct Variables {
    std::optional<cplx> z_plus, z_minus;
    std::optional<double> theta;
    std::optional<cplx> Z, Z_prime, Z_dprime, X, X_dprime, Y;
};

struct AsymptoticResult {
    cplx value{0.0, 0.0};
    Regime regime = Regime::Thm1;
    double est_rel_error = 0.0;
    Variables variables;
    /// thm1_c: whether the subdominant term was dropped.
    bool dropped_subdominant = false;
    /// thm3_d with d_bessel2: coefficient of I_nu(Z') inside the braces.
    std::optional<cplx> i_coefficient;
};

struct SaddleInfo {
    cplx t_plus, t_minus;
    cplx alpha_prime;
    double separation = 0.0;
    /// sqrt|2 a z_+^2 / l^2| + sqrt|2 a z_-^2 / l^2|.
    double scale = 0.0;
    /// Stationarity residual of each point, relative to the size of the terms.
    double residual_plus = 0.0, residual_minus = 0.0;
    /// Steepest-descent angle arg l - arg z_+ - arg(a)/2.
    double vartheta_plus = 0.0;
    /// Phi(t) = -(l+1) ln t - a ln(t - z_+) - a ln(t - z_-), principal logs.
    cplx phi_plus, phi_minus;
    bool coalesced = false;
};

struct Threshold {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool passed = false;
};

struct RegimeReport {
    std::optional<Regime> chosen;
    std::vector<Threshold> thresholds;
    std::string reasons;
};

namespace detail {

inline double est_first_order(const Parameters& prm, const AsymptoticOptions& opt) {
    return opt.error_constant / std::abs(prm.lambda);
}

inline double est_two_thirds(const Parameters& prm, const AsymptoticOptions& opt) {
    return opt.error_constant / std::pow(std::abs(prm.lambda), 2.0 / 3.0);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw regime_error(what);
}

inline void check_floor(const Parameters& prm, const AsymptoticOptions& opt) {
    if (!opt.enforce_regime) return;
    std::ostringstream os;
    os << "|lambda| = " << std::abs(prm.lambda) << " is below the asymptotic floor " << opt.lambda_floor;
    require(std::abs(prm.lambda) >= opt.lambda_floor, os.str());
}

inline void check_thm12_domain(const Parameters& prm) {
    if (!(prm.lambda.real() >= 0.0)) throw domain_error("Thm 1/2 forms need Re lambda >= 0");
    if (!(prm.alpha.real() > 0.0)) throw domain_error("Thm 1/2 forms need Re alpha > 0");
}

inline void check_thm34_domain(const Parameters& prm) {
    if (prm.alpha.imag() != 0.0) throw domain_error("Bessel-function forms need real alpha");
    if (!(prm.alpha.real() >= -0.5)) throw domain_error("Bessel-function forms need Re alpha >= -1/2");
    if (!((prm.lambda + prm.alpha).real() >= 0.0)) throw domain_error("Bessel-function forms need Re(lambda+alpha) >= 0");
}

inline double z_condition(cplx b, cplx one_pm_z) { return std::abs(b) * std::pow(std::abs(one_pm_z / 2.0), 1.5); }

inline void check_z_condition(cplx b, cplx one_pm_z, const AsymptoticOptions& opt, const char* which) {
    if (!opt.enforce_regime) return;
    const double v = z_condition(b, one_pm_z);
    std::ostringstream os;
    os << which << ": |lambda+alpha| |(1" << (which[0] == '+' ? "-" : "+") << "z)/2|^{3/2} = " << v
       << " exceeds 1/M = " << 1.0 / opt.margin;
    require(v <= 1.0 / opt.margin, os.str());
}

inline void check_separation(const Parameters& prm, double sqrt_mod, const AsymptoticOptions& opt) {
    if (!opt.enforce_regime) return;
    const double lhs = std::abs(prm.lambda) * sqrt_mod;
    const double rhs = opt.margin * std::sqrt(std::abs(prm.alpha));
    std::ostringstream os;
    os << "|lambda| |sqrt(z^2-1)| = " << lhs << " is below M sqrt|alpha| = " << rhs;
    require(lhs >= rhs, os.str());
}

/// 2^{-a}/Gamma(a) lambda^{a-1}, the common Thm 1/2 prefactor.
inline cplx_ld thm12_prefactor(const Parameters& prm) {
    const cplx_ld lam = widen(prm.lambda);
    const cplx_ld a = widen(prm.alpha);
    const long double ln2 = 0.693147180559945309417232121458176568L;
    return std::exp(-a * ln2 + (a - 1.0L) * std::log(lam)) * rgamma_ld(a);
}

/// (w/2)^{-nu} J_nu(w) in long double.
inline cplx_ld js(long double nu, cplx_ld w) { return bessel_scaled_ld(nu, w, -1); }

inline cplx_ld sqrt_ld(cplx_ld w) { return std::sqrt(w); }

} // namespace detail

// ---------------------------------------------------------------------------
// Theorem 1: z off the cut segment, away from +-1
// ---------------------------------------------------------------------------

/// D ~ e^{i pi a} 2^{-a}/Gamma(a) l^{a-1} (z^2-1)^{-a/2} z_+^{-l-a}.
inline AsymptoticResult thm1_d(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    detail::check_thm12_domain(prm);
    const ZPair zp = z_plus_minus(p);
    if (zp.degenerate) throw regime_error("Thm 1: z = +-1 is degenerate (the saddle points pinch)");
    detail::check_floor(prm, opt);
    detail::check_separation(prm, std::abs(sqrt_zsq_minus_1(p)), opt);

    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld v = detail::thm12_prefactor(prm) * pow_zsq_minus_1(p, -a / 2.0L) *
                      std::exp(detail::iu_ld * pi_ld * a - (lam + a) * log_z_plus(p, zp));
    AsymptoticResult r;
    r.value = detail::narrow(v);
    r.regime = Regime::Thm1;
    r.est_rel_error = detail::est_first_order(prm, opt);
    r.variables.z_plus = zp.z_plus;
    r.variables.z_minus = zp.z_minus;
    return r;
}

/// C ~ 2^{-a}/Gamma(a) l^{a-1} (z^2-1)^{-a/2} (e^{+-i pi a} z_+^{-l-a} + z_+^{l+a}),
/// upper sign for Im z > 0 (or side above). A term smaller than est_rel_error
/// times the other is dropped.
inline AsymptoticResult thm1_c(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    detail::check_thm12_domain(prm);
    const ZPair zp = z_plus_minus(p);
    if (zp.degenerate) throw regime_error("Thm 1: z = +-1 is degenerate (the saddle points pinch)");
    detail::check_floor(prm, opt);
    detail::check_separation(prm, std::abs(sqrt_zsq_minus_1(p)), opt);

    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld lam = detail::widen(prm.lambda);
    const long double s = detail::upper_side(p) ? 1.0L : -1.0L;
    const cplx_ld lz = log_z_plus(p, zp);
    const cplx_ld t1 = std::exp(s * detail::iu_ld * pi_ld * a - (lam + a) * lz);
    const cplx_ld t2 = std::exp((lam + a) * lz);
    const cplx_ld pre = detail::thm12_prefactor(prm) * pow_zsq_minus_1(p, -a / 2.0L);

    AsymptoticResult r;
    r.regime = Regime::Thm1;
    r.est_rel_error = detail::est_first_order(prm, opt);
    const long double m1 = std::abs(t1);
    const long double m2 = std::abs(t2);
    cplx_ld sum = t1 + t2;
    if (m1 < r.est_rel_error * m2) {
        sum = t2;
        r.dropped_subdominant = true;
    } else if (m2 < r.est_rel_error * m1) {
        sum = t1;
        r.dropped_subdominant = true;
    }
    r.value = detail::narrow(pre * sum);
    r.variables.z_plus = zp.z_plus;
    r.variables.z_minus = zp.z_minus;
    return r;
}

// ---------------------------------------------------------------------------
// Theorem 2: on the cut, x = cos(theta)
// ---------------------------------------------------------------------------

namespace detail {

inline AsymptoticResult thm2(const Parameters& prm, double theta, Kind kind, const AsymptoticOptions& opt) {
    check_thm12_domain(prm);
    if (!(theta > 0.0 && theta < pi)) throw regime_error("Thm 2: theta must lie in (0, pi)");
    check_floor(prm, opt);
    const double st = std::sin(theta);
    check_separation(prm, st, opt);

    const cplx_ld a = widen(prm.alpha);
    const cplx_ld lam = widen(prm.lambda);
    const long double th = theta;
    const cplx_ld amp = 2.0L * thm12_prefactor(prm) * std::exp(-a * std::log(static_cast<long double>(st)));
    const cplx_ld phase = (lam + a) * th - pi_ld * a / 2.0L;
    const cplx_ld v = kind == Kind::C ? amp * std::cos(phase) : -amp * std::sin(phase);
    AsymptoticResult r;
    r.value = narrow(v);
    r.regime = Regime::Thm2;
    r.est_rel_error = est_first_order(prm, opt);
    r.variables.theta = theta;
    r.variables.z_plus = std::polar(1.0, theta);
    r.variables.z_minus = std::polar(1.0, -theta);
    return r;
}

} // namespace detail

/// On-cut D ~ -2^{1-a}/Gamma(a) l^{a-1} sin(theta)^{-a} sin((l+a) theta - pi a/2).
inline AsymptoticResult thm2_d(const Parameters& prm, double theta, const AsymptoticOptions& opt = {}) {
    return detail::thm2(prm, theta, Kind::D, opt);
}

/// On-cut C ~ 2^{1-a}/Gamma(a) l^{a-1} sin(theta)^{-a} cos((l+a) theta - pi a/2).
inline AsymptoticResult thm2_c(const Parameters& prm, double theta, const AsymptoticOptions& opt = {}) {
    return detail::thm2(prm, theta, Kind::C, opt);
}

/// Amplitude 2^{1-a}/Gamma(a) |l|^{a-1} sin(theta)^{-a} of the on-cut forms
/// (real parameters), used to normalise discrepancies near zeros.
inline double thm2_envelope(const Parameters& prm, double theta) {
    return std::abs(detail::narrow(2.0L * detail::thm12_prefactor(prm))) * std::pow(std::sin(theta), -prm.alpha.real());
}

// ---------------------------------------------------------------------------
// Bessel-function kernel
// ---------------------------------------------------------------------------

/// Asymptotic series for 2F1(b+1/2, -b+1/2; nu+1; u/2) at large b:
/// Gamma(nu+1) (U/2)^{-nu} {J_nu(U) + b^{-2} [(1/4)(U/2) J_{nu+1}(U)
///   - (U/2)^2 J_{nu+2}(U) + (1/3)(U/2)^3 J_{nu+3}(U)]},   U = sqrt(2 b^2 u),
/// the bracket kept when order = 1. Depends on U only through U^2.
inline cplx hyp2f1_bessel_series(cplx b, double nu, cplx u, int order = 1) {
    if (order != 0 && order != 1) throw domain_error("hyp2f1_bessel_series: order must be 0 or 1");
    const cplx_ld bl = detail::widen(b);
    const cplx_ld U = std::sqrt(2.0L * bl * bl * detail::widen(u));
    const cplx_ld q = U * U / 4.0L;
    cplx_ld v = detail::js(nu, U);
    if (order == 1) {
        const cplx_ld br = 0.25L * q * detail::js(nu + 1.0L, U) - q * q * detail::js(nu + 2.0L, U) +
                           q * q * q / 3.0L * detail::js(nu + 3.0L, U);
        v += br / (bl * bl);
    }
    return detail::narrow(detail::gamma_ld(cplx_ld{nu + 1.0L, 0.0L}) * v);
}

// ---------------------------------------------------------------------------
// Theorem 3: z near +1
// ---------------------------------------------------------------------------

/// C near z = 1. Default: G(l+2a)/(G(l+1)G(2a)) ((1+z)/2)^{-nu} times the
/// Bessel series for 2F1(b+1/2, 1/2-b; a+1/2; (1-z)/2), b = l+a, nu = a-1/2.
/// With bessel_rep2 the expansion in l(l+2a) with Y = sqrt(2 l(l+2a)(1-z)) is used.
inline AsymptoticResult thm3_c(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    detail::check_thm34_domain(prm);
    if (p.side != Side::Off && p.z.imag() != 0.0) throw branch_error("side above/below requires a real argument");
    const cplx b = prm.lambda + prm.alpha;
    detail::check_floor(prm, opt);
    detail::check_z_condition(b, 1.0 - p.z, opt, "+1 end");
    if (opt.order != 0 && opt.order != 1) throw domain_error("thm3_c: order must be 0 or 1");

    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld z = detail::widen(p.z);
    const long double nu = prm.alpha.real() - 0.5L;
    const cplx_ld ratio = gamma_ratio_ld(lam + 2.0L * a, lam + 1.0L);
    AsymptoticResult r;
    r.regime = Regime::Thm3;
    r.est_rel_error = detail::est_two_thirds(prm, opt);
    r.variables.Z = detail::narrow(std::sqrt(2.0L * detail::widen(b) * detail::widen(b) * (1.0L - z)));
    if (!opt.bessel_rep2) {
        const cplx series = hyp2f1_bessel_series(b, static_cast<double>(nu), 1.0 - p.z, opt.order);
        const cplx_ld v = ratio * rgamma_ld(2.0L * a) * std::exp(-nu * std::log((1.0L + z) / 2.0L)) * detail::widen(series);
        r.value = detail::narrow(v);
        return r;
    }
    const cplx_ld ll = lam * (lam + 2.0L * a);
    const cplx_ld Y = std::sqrt(2.0L * ll * (1.0L - z));
    const cplx_ld q = Y * Y / 4.0L;
    cplx_ld braces = detail::js(nu, Y);
    if (opt.order == 1)
        braces += (-(a + 0.5L) * q * q * detail::js(nu + 2.0L, Y) + q * q * q / 3.0L * detail::js(nu + 3.0L, Y)) / ll;
    const cplx_ld v = ratio * detail::gamma_ld(a + 0.5L) * rgamma_ld(2.0L * a) * braces;
    r.value = detail::narrow(v);
    r.variables.Y = detail::narrow(Y);
    return r;
}

/// D near z = 1 off the cut:
/// e^{i pi a}/(sqrt(pi) Gamma(a)) 2^{-nu} (l+a)^nu (z^2-1)^{-nu/2} K_nu(Z'),
/// Z' = sqrt(2 (l+a)^2 (z-1)). With d_bessel2 the factor ((z+1)/2)^{nu/2} and
/// the I_nu(Z') term with coefficient
/// (pi/2)/sin(pi nu) [1 - G(l+2a)/G(l+1) (l+a)^{1-2a} ((z+1)/2)^{-nu}] are kept.
inline AsymptoticResult thm3_d(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    detail::check_thm34_domain(prm);
    if (p.side != Side::Off && p.z.imag() != 0.0) throw branch_error("side above/below requires a real argument");
    if (p.z.imag() == 0.0 && p.z.real() < 1.0)
        throw branch_error("thm3_d: real z < 1 is on the cut; use thm3_cut");
    if (std::abs(p.z - 1.0) < degenerate_radius) throw domain_error("D is singular at z = 1");
    const cplx b = prm.lambda + prm.alpha;
    detail::check_floor(prm, opt);
    detail::check_z_condition(b, 1.0 - p.z, opt, "+1 end");

    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld bl = detail::widen(b);
    const cplx_ld z = detail::widen(p.z);
    const long double nu = prm.alpha.real() - 0.5L;
    const long double sqrt2 = 1.414213562373095048801688724209698079L;
    const cplx_ld Zp = sqrt2 * bl * detail::widen(detail::side_sqrt(p.z - 1.0, p.side));
    const long double ln2 = 0.693147180559945309417232121458176568L;
    const long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
    const cplx_ld pre = inv_sqrt_pi * std::exp(detail::iu_ld * pi_ld * a - nu * ln2 + nu * std::log(bl)) * rgamma_ld(a) *
                        pow_zsq_minus_1(p, -nu / 2.0L);
    const cplx_ld k = detail::bessel_k_ld(nu, Zp);
    AsymptoticResult r;
    r.regime = Regime::Thm3;
    r.est_rel_error = detail::est_two_thirds(prm, opt);
    r.variables.Z_prime = detail::narrow(Zp);
    r.variables.Z = detail::narrow(std::sqrt(2.0L * bl * bl * (1.0L - z)));
    if (!opt.d_bessel2) {
        r.value = detail::narrow(pre * k);
        return r;
    }
    if (std::fabs(static_cast<double>(detail::sinpi(nu))) < 1e-12)
        throw domain_error("thm3_d: the I_nu coefficient has a pole at half-integer alpha");
    const cplx_ld w = (z + 1.0L) / 2.0L;
    const cplx_ld coef = (pi_ld / 2.0L) / detail::sinpi(nu) *
                         (1.0L - gamma_ratio_ld(lam + 2.0L * a, lam + 1.0L) * std::exp((1.0L - 2.0L * a) * std::log(bl)) *
                                     std::exp(-nu * std::log(w)));
    const cplx_ld v = pre * std::exp(nu / 2.0L * std::log(w)) * (k + coef * detail::bessel_i_ld(nu, Zp));
    r.value = detail::narrow(v);
    r.i_coefficient = detail::narrow(coef);
    return r;
}

/// On-cut forms near x = 1, X = sqrt(2 (l+a)^2 (1-x)):
/// C ~ sqrt(pi)/Gamma(a) 2^{-nu} (l+a)^nu (1-x^2)^{-nu/2} J_nu(X), D the same with -Y_nu(X).
inline AsymptoticResult thm3_cut(const Parameters& prm, double x, Kind kind, const AsymptoticOptions& opt = {}) {
    detail::check_thm34_domain(prm);
    if (!(x > -1.0 && x < 1.0)) throw domain_error("thm3_cut: x must lie in (-1, 1)");
    const cplx b = prm.lambda + prm.alpha;
    detail::check_floor(prm, opt);
    detail::check_z_condition(b, 1.0 - x, opt, "+1 end");

    const cplx_ld bl = detail::widen(b);
    const long double nu = prm.alpha.real() - 0.5L;
    const long double xl = x;
    const cplx_ld X = std::sqrt(2.0L * bl * bl * (1.0L - xl));
    const long double ln2 = 0.693147180559945309417232121458176568L;
    const long double sqrt_pi = 1.772453850905516027298167483341145183L;
    const cplx_ld pre = sqrt_pi * rgamma_ld(detail::widen(prm.alpha)) *
                        std::exp(-nu * ln2 + nu * std::log(bl) - nu / 2.0L * std::log((1.0L - xl) * (1.0L + xl)));
    const cplx_ld f = kind == Kind::C ? detail::bessel_j_ld(nu, X) : -detail::bessel_y_ld(nu, X);
    AsymptoticResult r;
    r.value = detail::narrow(pre * f);
    r.regime = Regime::Thm3;
    r.est_rel_error = detail::est_two_thirds(prm, opt);
    r.variables.X = detail::narrow(X);
    r.variables.theta = std::acos(x);
    return r;
}

// ---------------------------------------------------------------------------
// Theorem 4: z near -1
// ---------------------------------------------------------------------------

/// D near z = -1, leading order with ((1-z)/2)^{1/2-a} replaced by 1:
/// sqrt(pi) e^{i pi a} 2^{-2a} / (Gamma(a) sin(pi nu)) e^{-+i pi (l+2a)}
///   { -(l+a)^{2nu} (Z''/2)^{-nu} J_nu(Z'') + e^{+-i pi nu} ((1+z)/2)^{-nu} (Z''/2)^{nu} J_{-nu}(Z'') },
/// upper signs above the cut. The removable pole at half-integer a is bridged.
inline AsymptoticResult thm4_d(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    detail::check_thm34_domain(prm);
    if (p.side != Side::Off && p.z.imag() != 0.0) throw branch_error("side above/below requires a real argument");
    if (p.side == Side::Off && p.z.imag() == 0.0 && p.z.real() < 1.0)
        throw branch_error("thm4_d: real z < 1 lies on the cut; choose side above or below");
    if (std::abs(p.z + 1.0) < degenerate_radius) throw domain_error("D is singular at z = -1");
    const cplx b = prm.lambda + prm.alpha;
    detail::check_floor(prm, opt);
    detail::check_z_condition(b, 1.0 + p.z, opt, "-1 end");

    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld bl = detail::widen(b);
    const cplx_ld z = detail::widen(p.z);
    const cplx_ld w = (1.0L + z) / 2.0L;
    const cplx_ld Zpp = std::sqrt(2.0L * bl * bl * (1.0L + z));
    const bool upper = detail::upper_side(p);
    const long double s = upper ? 1.0L : -1.0L;
    const Side w_side = p.side == Side::Off ? Side::Off : (upper ? Side::Above : Side::Below);
    const long double ln2 = 0.693147180559945309417232121458176568L;
    const long double sqrt_pi = 1.772453850905516027298167483341145183L;

    auto raw = [&](cplx_ld a) {
        const cplx_ld nu = a - 0.5L;
        const long double nur = nu.real();
        const cplx_ld outer = sqrt_pi * std::exp(detail::iu_ld * pi_ld * a - 2.0L * a * ln2 - s * detail::iu_ld * pi_ld * (lam + 2.0L * a)) *
                              rgamma_ld(a) / detail::sinpi(nu);
        const cplx_ld first = -std::exp(2.0L * nu * std::log(bl)) * detail::js(nur, Zpp);
        const cplx_ld second = std::exp(s * detail::iu_ld * pi_ld * nu) * detail::side_pow(w, -nu, w_side) * detail::js(-nur, Zpp);
        return outer * (first + second);
    };
    const cplx_ld a = detail::widen(prm.alpha);
    const long double h = std::round(a.real() - 0.5L) + 0.5L;
    cplx_ld v;
    if (std::abs(a - cplx_ld{h, 0.0L}) < half_integer_delta)
        v = detail::removable_limit(a, h, half_integer_delta, raw);
    else
        v = raw(a);
    AsymptoticResult r;
    r.value = detail::narrow(v);
    r.regime = Regime::Thm4;
    r.est_rel_error = detail::est_two_thirds(prm, opt);
    r.variables.Z_dprime = detail::narrow(Zpp);
    return r;
}

/// On-cut forms near x = -1, X'' = sqrt(2 (l+a)^2 (1+x)):
/// D ~ P [-sin(pi l) J_nu(X'') + cos(pi l) Y_nu(X'')],
/// C ~ P [ cos(pi l) J_nu(X'') + sin(pi l) Y_nu(X'')],
/// P = sqrt(pi)/Gamma(a) ((l+a)/2)^{a-1} (2(1+x))^{-a/2} (X''/2)^{1/2}.
inline AsymptoticResult thm4_cut(const Parameters& prm, double x, Kind kind, const AsymptoticOptions& opt = {}) {
    detail::check_thm34_domain(prm);
    if (!(x > -1.0 && x < 1.0)) throw domain_error("thm4_cut: x must lie in (-1, 1)");
    const cplx b = prm.lambda + prm.alpha;
    detail::check_floor(prm, opt);
    detail::check_z_condition(b, 1.0 + x, opt, "-1 end");

    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld bl = detail::widen(b);
    const long double nu = prm.alpha.real() - 0.5L;
    const long double xl = x;
    const cplx_ld X = std::sqrt(2.0L * bl * bl * (1.0L + xl));
    const long double sqrt_pi = 1.772453850905516027298167483341145183L;
    const cplx_ld P = sqrt_pi * rgamma_ld(a) * std::exp((a - 1.0L) * std::log(bl / 2.0L)) *
                      std::exp(-a / 2.0L * std::log(2.0L * (1.0L + xl))) * std::sqrt(X / 2.0L);
    const cplx_ld J = detail::bessel_j_ld(nu, X);
    const cplx_ld Y = detail::bessel_y_ld(nu, X);
    const cplx_ld sl = detail::sinpi(lam);
    const cplx_ld cl = detail::cospi(lam);
    const cplx_ld v = kind == Kind::C ? P * (cl * J + sl * Y) : P * (-sl * J + cl * Y);
    AsymptoticResult r;
    r.value = detail::narrow(v);
    r.regime = Regime::Thm4;
    r.est_rel_error = detail::est_two_thirds(prm, opt);
    r.variables.X_dprime = detail::narrow(X);
    r.variables.theta = std::acos(x);
    return r;
}

// ---------------------------------------------------------------------------
// Saddle points
// ---------------------------------------------------------------------------

namespace detail {

inline cplx_ld saddle_residual_terms(cplx_ld t, cplx_ld lam, cplx_ld a, cplx_ld zp, cplx_ld zm, long double* scale) {
    const cplx_ld t0 = (lam + 1.0L) / t;
    const cplx_ld t1 = a / (t - zp);
    const cplx_ld t2 = a / (t - zm);
    if (scale) *scale = std::abs(t0) + std::abs(t1) + std::abs(t2);
    return t0 + t1 + t2;
}

inline cplx_ld polish_saddle(cplx_ld t, cplx_ld lam, cplx_ld a, cplx_ld zp, cplx_ld zm) {
    for (int it = 0; it < 50; ++it) {
        const cplx_ld f = saddle_residual_terms(t, lam, a, zp, zm, nullptr);
        const cplx_ld df = -(lam + 1.0L) / (t * t) - a / ((t - zp) * (t - zp)) - a / ((t - zm) * (t - zm));
        const cplx_ld step = f / df;
        t -= step;
        if (std::abs(step) <= 1e-19L * std::abs(t)) break;
    }
    return t;
}

inline cplx_ld phi(cplx_ld t, cplx_ld lam, cplx_ld a, cplx_ld zp, cplx_ld zm) {
    return -(lam + 1.0L) * std::log(t) - a * std::log(t - zp) - a * std::log(t - zm);
}

} // namespace detail

/// Stationary points of Phi(t): the roots of (1+2a') t^2 - 2z(1+a') t + 1 = 0,
/// a' = a/(l+1), in the closed form
/// t_+- = (1+a')/(1+2a') [z +- sqrt(z^2 - 1 + (a'/(1+a'))^2)], each assigned to
/// the nearer of z_+-, then Newton-polished on the stationarity condition.
/// coalesced is set when |t_+ - t_-| < margin * scale.
inline SaddleInfo saddle_points(const Parameters& prm, const BranchedPoint& p, double margin = 10.0) {
    if (prm.lambda == cplx{-1.0, 0.0}) throw domain_error("saddle_points: lambda = -1");
    const ZPair zpair = z_plus_minus(p);
    if (zpair.degenerate) throw domain_error("saddle_points: z = +-1 is degenerate");
    const cplx_ld lam = detail::widen(prm.lambda);
    const cplx_ld a = detail::widen(prm.alpha);
    const cplx_ld z = detail::widen(p.z);
    const cplx_ld zp = detail::widen(zpair.z_plus);
    const cplx_ld zm = detail::widen(zpair.z_minus);
    const cplx_ld ap = a / (lam + 1.0L);
    const cplx_ld k = ap / (1.0L + ap);
    const cplx_ld root = std::sqrt(z * z - 1.0L + k * k);
    const cplx_ld f = (1.0L + ap) / (1.0L + 2.0L * ap);
    cplx_ld r1 = f * (z + root);
    cplx_ld r2 = f * (z - root);
    if (std::abs(r1 - zp) + std::abs(r2 - zm) > std::abs(r2 - zp) + std::abs(r1 - zm)) std::swap(r1, r2);
    SaddleInfo s;
    const cplx_ld tp = detail::polish_saddle(r1, lam, a, zp, zm);
    const cplx_ld tm = detail::polish_saddle(r2, lam, a, zp, zm);
    long double sc_p = 0.0L, sc_m = 0.0L;
    const cplx_ld res_p = detail::saddle_residual_terms(tp, lam, a, zp, zm, &sc_p);
    const cplx_ld res_m = detail::saddle_residual_terms(tm, lam, a, zp, zm, &sc_m);
    s.t_plus = detail::narrow(tp);
    s.t_minus = detail::narrow(tm);
    s.alpha_prime = detail::narrow(ap);
    s.residual_plus = static_cast<double>(std::abs(res_p) / sc_p);
    s.residual_minus = static_cast<double>(std::abs(res_m) / sc_m);
    s.separation = std::abs(s.t_plus - s.t_minus);
    const double l2 = std::norm(prm.lambda);
    s.scale = std::sqrt(std::abs(2.0 * prm.alpha * zpair.z_plus * zpair.z_plus) / l2) +
              std::sqrt(std::abs(2.0 * prm.alpha * zpair.z_minus * zpair.z_minus) / l2);
    s.vartheta_plus = std::arg(prm.lambda) - std::arg(zpair.z_plus) - 0.5 * std::arg(prm.alpha);
    s.phi_plus = detail::narrow(detail::phi(tp, lam, a, zp, zm));
    s.phi_minus = detail::narrow(detail::phi(tm, lam, a, zp, zm));
    s.coalesced = s.separation < margin * s.scale;
    return s;
}

// ---------------------------------------------------------------------------
// Regime selection
// ---------------------------------------------------------------------------

/// Evaluates every validity test at (params, z) without throwing.
inline RegimeReport assess_regime(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    RegimeReport rep;
    const double M = opt.margin;
    const cplx b = prm.lambda + prm.alpha;
    const double lam_abs = std::abs(prm.lambda);
    auto add = [&](const std::string& name, double lhs, double rhs, bool passed) {
        rep.thresholds.push_back({name, lhs, rhs, rhs != 0.0 ? lhs / rhs : 0.0, passed});
        return passed;
    };
    const bool floor_ok = add("lambda_floor", lam_abs, opt.lambda_floor, lam_abs >= opt.lambda_floor);
    const double zc_plus = detail::z_condition(b, 1.0 - p.z);
    const double zc_minus = detail::z_condition(b, 1.0 + p.z);
    const bool near_plus = add("z_condition_plus", zc_plus, 1.0 / M, zc_plus <= 1.0 / M);
    const bool near_minus = add("z_condition_minus", zc_minus, 1.0 / M, zc_minus <= 1.0 / M);
    const double sep = lam_abs * std::sqrt(std::abs(p.z * p.z - 1.0));
    const bool separated = add("lambda_limit", sep, M * std::sqrt(std::abs(prm.alpha)), sep >= M * std::sqrt(std::abs(prm.alpha)));
    const bool on_cut = p.z.imag() == 0.0 && p.z.real() > -1.0 && p.z.real() < 1.0;

    std::ostringstream why;
    if (!floor_ok) {
        rep.chosen = Regime::Exact;
        why << "|lambda| below floor " << opt.lambda_floor << ": exact series";
    } else if (near_plus) {
        rep.chosen = Regime::Thm3;
        why << "z near +1: |lambda+alpha||(1-z)/2|^{3/2} <= 1/M";
    } else if (near_minus) {
        rep.chosen = Regime::Thm4;
        why << "z near -1: |lambda+alpha||(1+z)/2|^{3/2} <= 1/M";
    } else if (separated) {
        rep.chosen = on_cut ? Regime::Thm2 : Regime::Thm1;
        why << "saddles separated: |lambda||sqrt(z^2-1)| >= M sqrt|alpha|" << (on_cut ? " (on the cut)" : "");
    } else {
        why << "no regime: not near +-1 and saddles not separated";
    }
    rep.reasons = why.str();
    return rep;
}

/// Picks Exact (|lambda| below the floor), Thm3, Thm4, then Thm2 on the cut or
/// Thm1 off it; throws regime_error carrying every threshold when none applies.
inline RegimeReport regime_select(const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt = {}) {
    RegimeReport rep = assess_regime(prm, p, opt);
    if (!rep.chosen) {
        std::ostringstream os;
        os << rep.reasons << ";";
        for (const auto& t : rep.thresholds) os << " " << t.name << ": " << t.lhs << " vs " << t.rhs << ";";
        throw regime_error(os.str());
    }
    return rep;
}

} // namespace gegen
