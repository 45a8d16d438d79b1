// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// diagnostics. Criteria are evaluated as written; the diagnostics show the
// measured numbers and, where a criterion fails, the quantity that does hold.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "gegen/gegen.hpp"
#include "json.hpp"

using namespace gegen;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;
};

std::string num(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

double rel(cplx a, cplx b) { return std::abs(a / b - 1.0); }

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(GEGEN_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config(const char* name) { return std::string(GEGEN_SOURCE_DIR) + "/configs/" + name; }

// ---------------------------------------------------------------------------

Verdict c1_integer_degree() {
    Verdict v;
    double worst = 0.0;
    for (int n = 0; n <= 30; ++n)
        for (double a : {0.5, 1.0, 1.5, 2.7})
            for (int k = 0; k <= 20; ++k) {
                const double x = -1.0 + 0.1 * k;
                const double poly = gegenbauer_poly(n, a, x);
                const cplx c = gegenbauer_c({static_cast<double>(n), a}, BranchedPoint::off(x)).value;
                worst = std::max(worst, std::abs(c - poly) / std::max(1.0, std::abs(poly)));
            }
    v.pass = worst <= 1e-11;
    v.summary = "max |C - poly| / max(1,|poly|) = " + num(worst) + " (limit 1e-11)";
    return v;
}

Verdict c2_endpoint() {
    Verdict v;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const cplx lam = std::polar(50.0 * U(rng), 2.0 * pi * U(rng));
        const cplx a{0.05 + 3.0 * U(rng), 2.0 * (U(rng) - 0.5)};
        // Stay off the poles of Gamma(lambda + 1).
        if (std::abs(lam + 1.0 - std::round((lam + 1.0).real())) < 1e-3 && (lam + 1.0).real() <= 0.5) {
            --k;
            continue;
        }
        const cplx want = gamma_fn(lam + 2.0 * a) / (gamma_fn(lam + 1.0) * gamma_fn(2.0 * a));
        worst = std::max(worst, rel(gegenbauer_c({lam, a}, BranchedPoint::off(1.0)).value, want));
    }
    v.pass = worst <= 1e-12;
    v.summary = "20 random (lambda, alpha), max relative error " + num(worst) + " (limit 1e-12)";
    return v;
}

Verdict c3_thm1_order() {
    Verdict v;
    const Parameters d100{100.0, 1.5}, d200{200.0, 1.5};
    const BranchedPoint z2 = BranchedPoint::off(2.0);
    const double ed100 = rel(thm1_d(d100, z2).value, gegenbauer_d(d100, z2).value);
    const double ed200 = rel(thm1_d(d200, z2).value, gegenbauer_d(d200, z2).value);
    const BranchedPoint zc = BranchedPoint::off({1.5, 0.1});
    const double ec100 = rel(thm1_c(d100, zc).value, gegenbauer_c(d100, zc).value);
    const double ec200 = rel(thm1_c(d200, zc).value, gegenbauer_c(d200, zc).value);
    auto ok = [](double e1, double e2) {
        const double r = e1 / e2;
        return e1 <= 5.0 / 100.0 && e2 <= 5.0 / 200.0 && r >= 1.3 && r <= 3.0;
    };
    v.pass = ok(ed100, ed200) && ok(ec100, ec200);
    v.summary = "D at z=2: e=" + num(ed100) + "," + num(ed200) + " ratio " + num(ed100 / ed200) +
                "; C at z=1.5+0.1i: e=" + num(ec100) + "," + num(ec200) + " ratio " + num(ec100 / ec200);
    return v;
}

struct Thm2Row {
    double alpha, theta;
    Kind kind;
    double e[3];
    // |exact| over the on-cut amplitude: small values sit near a zero.
    std::string size;
};

std::vector<Thm2Row> thm2_errors() {
    std::vector<Thm2Row> rows;
    const double lams[3] = {100.0, 200.0, 400.0};
    for (double a : {1.0, 1.5})
        for (double th : {0.8, 1.2, 2.0})
            for (Kind kind : {Kind::C, Kind::D}) {
                Thm2Row r{a, th, kind, {}};
                for (int k = 0; k < 3; ++k) {
                    const Parameters prm{lams[k], a};
                    const double x = std::cos(th);
                    const cplx asym = kind == Kind::C ? thm2_c(prm, th).value : thm2_d(prm, th).value;
                    const cplx ex = kind == Kind::C ? ferrers_c_cut(prm, x) : ferrers_d_cut(prm, x);
                    r.e[k] = rel(asym, ex);
                    r.size += (k ? "," : "") + num(std::abs(ex) / thm2_envelope(prm, th), 2);
                }
                rows.push_back(r);
            }
    return rows;
}

Verdict c4_thm2_order() {
    Verdict v;
    const double lams[3] = {100.0, 200.0, 400.0};
    int bad_budget = 0, bad_ratio = 0, total = 0;
    for (const auto& r : thm2_errors()) {
        ++total;
        bool row_ok = true;
        std::string why;
        for (int k = 0; k < 3; ++k)
            if (r.e[k] > 5.0 / lams[k]) {
                row_ok = false;
                ++bad_budget;
                why += " e(" + num(lams[k]) + ")=" + num(r.e[k]) + ">5/lambda";
            }
        for (int k = 0; k < 2; ++k) {
            const double ratio = r.e[k] / r.e[k + 1];
            if (!(ratio >= 1.3 && ratio <= 3.0)) {
                row_ok = false;
                ++bad_ratio;
                why += " ratio(" + num(lams[k]) + ")=" + num(ratio);
            }
        }
        if (!row_ok) {
            v.pass = false;
            v.notes.push_back(std::string(r.kind == Kind::C ? "C" : "D") + " alpha=" + num(r.alpha) +
                              " theta=" + num(r.theta) + ": e=" + num(r.e[0]) + "," + num(r.e[1]) + "," +
                              num(r.e[2]) + " ->" + why + "; |exact|/amplitude at 100,200,400: " + r.size);
        }
    }
    v.summary = std::to_string(total) + " (alpha, theta, kind) cases; " + std::to_string(bad_budget) +
                " budget violations, " + std::to_string(bad_ratio) + " doubling ratios outside [1.3, 3]";
    // Diagnostics: at alpha = 1 both forms are exact, so the ratios are
    // rounding noise; the combined C - iD error carries the 1/lambda order.
    for (double th : {0.8, 1.2, 2.0}) {
        double e[3];
        for (int k = 0; k < 3; ++k) {
            const Parameters prm{lams[k], 1.5};
            const double x = std::cos(th);
            e[k] = rel(thm2_c(prm, th).value - I * thm2_d(prm, th).value, ferrers_c_cut(prm, x) - I * ferrers_d_cut(prm, x));
        }
        v.notes.push_back("diagnostic C - iD at alpha=1.5 theta=" + num(th) + ": e=" + num(e[0]) + "," + num(e[1]) +
                          "," + num(e[2]) + " ratios " + num(e[0] / e[1]) + "," + num(e[1] / e[2]));
    }
    return v;
}

Verdict c5_thm3_fixed_z() {
    Verdict v;
    const double Z = 1.5;
    const double lams[3] = {50.0, 100.0, 200.0};
    AsymptoticOptions o0;
    o0.order = 0;
    AsymptoticOptions o1;
    o1.order = 1;
    std::string summary;
    for (double a : {1.0, 1.5}) {
        double e[3];
        for (int k = 0; k < 3; ++k) {
            const double b = lams[k] + a;
            const double x = 1.0 - Z * Z / (2.0 * b * b);
            const Parameters prm{lams[k], a};
            e[k] = rel(thm3_c(prm, BranchedPoint::off(x), o0).value, ferrers_c_cut(prm, x));
        }
        const double r1 = e[0] / e[1], r2 = e[1] / e[2];
        const bool ratios_ok = r1 >= 2.5 && r1 <= 6.5 && r2 >= 2.5 && r2 <= 6.5;
        const double b = 50.0 + a;
        const double x = 1.0 - Z * Z / (2.0 * b * b);
        const Parameters prm{50.0, a};
        const double e1 = rel(thm3_c(prm, BranchedPoint::off(x), o1).value, ferrers_c_cut(prm, x));
        const bool improves = e1 < e[0];
        v.pass = v.pass && ratios_ok && improves;
        summary += (summary.empty() ? "" : "; ") + std::string("alpha=") + num(a) + " ratios " + num(r1) + "," +
                   num(r2) + " order1/order0 at 50: " + num(e1) + "/" + num(e[0]);
    }
    v.summary = summary;
    v.notes.push_back("leading term (order 0) of the Bessel expansion; order 1 enters only in the improvement check");
    return v;
}

struct MatchResult {
    double rel_max[2] = {0, 0};
    double env_max[2] = {0, 0};
    double theta_at[2] = {0, 0};
    int failures = 0;
};

MatchResult match_sweep(double lambda, double alpha, bool plus) {
    // theta = 8/lambda needs |lambda + alpha| sin(theta) >= M; M = 5 admits it.
    AsymptoticOptions opt;
    opt.margin = 5.0;
    const Parameters prm{lambda, alpha};
    const double lo = 8.0 / lambda, hi = 0.5 * std::pow(lambda, -1.0 / 3.0);
    const int samples = 200;
    MatchResult m;
    for (int k = 0; k < samples; ++k) {
        const double phi = lo * std::pow(hi / lo, static_cast<double>(k) / (samples - 1));
        const double th = plus ? phi : pi - phi;
        const double x = std::cos(th);
        try {
            const double env = thm2_envelope(prm, th);
            for (int j = 0; j < 2; ++j) {
                const Kind kind = j == 0 ? Kind::C : Kind::D;
                const cplx a = (kind == Kind::C ? thm2_c(prm, th, opt) : thm2_d(prm, th, opt)).value;
                const cplx b = (plus ? thm3_cut(prm, x, kind, opt) : thm4_cut(prm, x, kind, opt)).value;
                const double r = std::abs(a - b) / std::abs(b);
                if (r > m.rel_max[j]) {
                    m.rel_max[j] = r;
                    m.theta_at[j] = th;
                }
                m.env_max[j] = std::max(m.env_max[j], std::abs(a - b) / env);
            }
        } catch (const gegen::error&) {
            ++m.failures;
        }
    }
    return m;
}

Verdict matching(bool plus) {
    Verdict v;
    const double lambda = 1000.0;
    const double budget = 10.0 * std::pow(lambda, -2.0 / 3.0);
    std::string summary;
    for (double a : {1.0, 1.5}) {
        const MatchResult m = match_sweep(lambda, a, plus);
        const bool ok = m.failures == 0 && m.rel_max[0] <= budget && m.rel_max[1] <= budget;
        v.pass = v.pass && ok;
        summary += (summary.empty() ? "" : "; ") + std::string("alpha=") + num(a) + " max rel C " + num(m.rel_max[0]) +
                   " D " + num(m.rel_max[1]);
        if (m.failures) v.notes.push_back("alpha=" + num(a) + ": " + std::to_string(m.failures) + " samples rejected");
        v.notes.push_back("alpha=" + num(a) + ": worst relative discrepancy at theta C " + num(m.theta_at[0]) + ", D " +
                          num(m.theta_at[1]) + " (near a zero of the end-point form)");
        v.notes.push_back("diagnostic alpha=" + num(a) + ": discrepancy / on-cut amplitude: C " + num(m.env_max[0]) +
                          ", D " + num(m.env_max[1]) + " (budget " + num(budget) + ")");
    }
    v.summary = summary + " (budget " + num(budget) + ")";
    return v;
}

Verdict c8_thm1_continuity() {
    Verdict v;
    const Parameters prm{200.0, 1.5};
    std::string summary;
    for (double eps : {1e-3, 1e-6}) {
        const cplx a = thm1_c(prm, BranchedPoint::off({2.0, eps})).value;
        const cplx b = thm1_c(prm, BranchedPoint::off({2.0, -eps})).value;
        const double jump = std::abs(a - b) / std::abs(a);
        v.pass = v.pass && jump <= 1e-8;
        summary += (summary.empty() ? "" : "; ") + std::string("eps=") + num(eps) + " jump " + num(jump);
        // The entire function C has the same O(eps) variation between the two points.
        const cplx ea = gegenbauer_c(prm, BranchedPoint::off({2.0, eps})).value;
        const cplx eb = gegenbauer_c(prm, BranchedPoint::off({2.0, -eps})).value;
        v.notes.push_back("eps=" + num(eps) + ": exact C varies by " + num(std::abs(ea - eb) / std::abs(ea)) +
                          " between the same points; 2 eps (lambda+alpha)/sqrt3 = " +
                          num(2.0 * eps * 201.5 / std::sqrt(3.0)));
    }
    const cplx above = thm1_c(prm, BranchedPoint::above(2.0)).value;
    const cplx below = thm1_c(prm, BranchedPoint::below(2.0)).value;
    v.notes.push_back("side limits at z=2: |above - below|/|above| = " + num(std::abs(above - below) / std::abs(above)));
    v.summary = summary + " (limit 1e-8)";
    return v;
}

Verdict c9_bessel() {
    Verdict v;
    double wr = 0.0;
    for (int k = 1; k <= 49; ++k) {
        const double nu = 0.1 * k;
        for (double w = 0.5; w <= 40.0; w += 0.25) {
            const cplx j = bessel_j(nu, w), y = bessel_y(nu, w);
            const cplx jp = bessel_j(nu - 1.0, w) - nu / w * j;
            const cplx yp = bessel_y(nu - 1.0, w) - nu / w * y;
            wr = std::max(wr, std::abs((j * yp - jp * y) / (2.0 / (pi * w)) - 1.0));
        }
    }
    double closed = 0.0;
    for (double x : {0.1, 0.7, 2.0, 9.0, 18.0, 33.0}) {
        const double s = std::sqrt(2.0 / (pi * x));
        closed = std::max(closed, rel(bessel_j(0.5, x), cplx(s * std::sin(x))));
        closed = std::max(closed, rel(bessel_i(0.5, x), cplx(s * std::sinh(x))));
        closed = std::max(closed, rel(bessel_k(0.5, x), cplx(std::sqrt(pi / (2.0 * x)) * std::exp(-x))));
    }
    double overlap = 0.0;
    for (double nu : {-2.5, -1.3, 0.0, 0.7, 2.0, 3.0, 4.5})
        for (double r = 15.0; r <= 25.0; r += 1.0)
            for (double ang = -3.0; ang <= 3.0; ang += 0.25) {
                const cplx w = std::polar(r, ang);
                const cplx a = detail::bessel_j_series(nu, w);
                const cplx b = detail::bessel_j_hankel(nu, w);
                const double envelope = std::sqrt(2.0 / (pi * r)) * std::exp(std::abs(w.imag()));
                overlap = std::max(overlap, std::abs(a - b) / std::max(std::abs(b), envelope));
            }
    v.pass = wr <= 1e-9 && closed <= 1e-10 && overlap <= 1e-6;
    v.summary = "Wronskian " + num(wr) + " (1e-9), half-order closed forms " + num(closed) + " (1e-10), overlap " +
                num(overlap) + " (1e-6)";
    v.notes.push_back("overlap difference scaled by max(|J|, sqrt(2/(pi|w|)) e^|Im w|)");
    return v;
}

Verdict c10_saddles() {
    Verdict v;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double res = 0.0;
    for (int k = 0; k < 100; ++k) {
        const cplx lam{30.0 + 500.0 * U(rng), 20.0 * (U(rng) - 0.5)};
        const cplx a{0.2 + 3.0 * U(rng), 0.5 * (U(rng) - 0.5)};
        cplx z{-3.0 + 6.0 * U(rng), 0.05 + 2.0 * U(rng)};
        if (k % 2) z = std::conj(z);
        const SaddleInfo s = saddle_points({lam, a}, BranchedPoint::off(z));
        res = std::max({res, s.residual_plus, s.residual_minus});
    }
    const BranchedPoint z2 = BranchedPoint::off(2.0);
    const ZPair zp = z_plus_minus(z2);
    const SaddleInfo tiny = saddle_points({100.0, 1e-13}, z2);
    const double lim = std::max(std::abs(tiny.t_plus - zp.z_plus), std::abs(tiny.t_minus - zp.z_minus));
    int fired = 0, probes = 0;
    const Parameters p{100.0, 1.0};
    for (int k = 0; k < 16; ++k) {
        const double ang = -pi + 2.0 * pi * (k + 0.5) / 16.0;
        for (double end : {1.0, -1.0}) {
            ++probes;
            fired += saddle_points(p, BranchedPoint::off(end + std::polar(1e-3, ang))).coalesced;
        }
    }
    for (BranchedPoint q : {BranchedPoint::above(0.999), BranchedPoint::below(0.999), BranchedPoint::above(-0.999),
                            BranchedPoint::below(-0.999), BranchedPoint::off(1.001), BranchedPoint::above(-1.001)}) {
        ++probes;
        fired += saddle_points(p, q).coalesced;
    }
    v.pass = res <= 1e-10 && lim <= 1e-12 && fired == probes;
    v.summary = "max residual " + num(res) + " (1e-10), alpha->0 limit " + num(lim) + " (1e-12), coalescence " +
                std::to_string(fired) + "/" + std::to_string(probes);
    return v;
}

Verdict c11_legendre() {
    Verdict v;
    const double p2 = std::abs(legendre_p({2.0, 0.0}, BranchedPoint::off(0.5)) - (-0.125));
    const double q0 = std::abs(legendre_q({0.0, 0.0}, BranchedPoint::off(3.0)) - 0.5 * std::log(2.0));
    // Q_1(z) = (z/2) ln((z+1)/(z-1)) - 1, so Q_1(2) = ln 3 - 1.
    const cplx q1v = legendre_q({1.0, 0.0}, BranchedPoint::off(2.0));
    const double q1 = std::abs(q1v - (std::log(3.0) - 1.0));
    v.pass = p2 <= 1e-10 && q0 <= 1e-10 && q1 <= 1e-10;
    v.summary = "P_2(0.5) err " + num(p2) + ", Q_0(3) err " + num(q0) + ", Q_1(2) err " + num(q1) + " (1e-10)";
    v.notes.push_back("Q_1(2) = " + num(q1v.real(), 17) + " = ln 3 - 1; the value ln sqrt3 - 1 = " +
                      num(std::log(std::sqrt(3.0)) - 1.0, 6) + " does not satisfy the closed form");
    v.notes.push_back("Q phase calibration factor " + num(std::abs(q_phase_calibration()), 17));
    return v;
}

// Compares a compare-report row set against the library numbers.
bool same(double a, double b) { return a == b || std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b)); }

Verdict c12_cli(bool c4, bool c5, bool c6, bool c7) {
    Verdict v;
    auto fail = [&](const std::string& why) {
        v.pass = false;
        v.notes.push_back(why);
    };

    const CliRun e1 = cli("eval --lambda 0 --alpha 1.5 --z 0.3 --method exact --json");
    const CliRun e2 = cli("eval --lambda 100 --alpha 1 --theta 1.5707963 --method thm2 --kind C --json");
    const CliRun e3 = cli("eval --lambda 5 --alpha 1 --z 2 --method thm1 --json");
    try {
        const double v1 = json::parse(e1.out)["value"]["re"].get<double>();
        const double v2 = json::parse(e2.out)["value"]["re"].get<double>();
        const json j3 = json::parse(e3.out);
        if (e1.code != 0 || std::abs(v1 - 1.0) > 1e-12) fail("eval C_0: exit " + std::to_string(e1.code) + " value " + num(v1, 17));
        if (e2.code != 0 || std::abs(v2 - 1.0) > 1e-8) fail("eval thm2: exit " + std::to_string(e2.code) + " value " + num(v2, 17));
        if (e3.code != 2 || !j3.contains("regime_report")) fail("eval below floor: exit " + std::to_string(e3.code));
    } catch (const json::exception& err) {
        fail(std::string("eval output: ") + err.what());
    }

    // Criterion 4 from the shipped configs.
    bool cli_c4 = true;
    for (const char* name : {"c4_thm2_C.cfg", "c4_thm2_D.cfg"}) {
        const CliRun r = cli("compare --config " + config(name));
        try {
            const json doc = json::parse(r.out);
            for (const auto& row : doc["rows"]) {
                const Parameters prm{row["lambda"].get<double>(), row["alpha"].get<double>()};
                const double th = row["theta"].get<double>();
                const bool is_c = row["kind"] == "C";
                const cplx lib = is_c ? thm2_c(prm, th).value : thm2_d(prm, th).value;
                const cplx ex = is_c ? ferrers_c_cut(prm, std::cos(th)) : ferrers_d_cut(prm, std::cos(th));
                if (!same(row["asym"]["re"], lib.real()) || !same(row["asym"]["im"], lib.imag()) ||
                    !same(row["exact"]["re"], ex.real()) || !same(row["exact"]["im"], ex.imag()))
                    fail(std::string(name) + ": row differs from library at lambda " + num(prm.lambda.real()));
            }
            const bool pass = doc["summary"]["verdict"] == "pass";
            if (pass != (r.code == 0)) fail(std::string(name) + ": exit code disagrees with verdict");
            cli_c4 = cli_c4 && pass;
        } catch (const json::exception& err) {
            fail(std::string(name) + ": " + err.what());
        }
    }
    if (cli_c4 != c4) fail("criterion 4 verdict: cli " + std::string(cli_c4 ? "pass" : "fail"));

    // Criterion 5: ratio verdict from order 0, improvement from order 1.
    try {
        const CliRun r0 = cli("compare --config " + config("c5_thm3_fixed_Z.cfg"));
        const CliRun r1 = cli("compare --config " + config("c5_thm3_order1.cfg"));
        const json d0 = json::parse(r0.out), d1 = json::parse(r1.out);
        bool ratios_ok = true;
        for (const auto& q : d0["summary"]["ratios"]) ratios_ok = ratios_ok && q["in_range"].get<bool>();
        bool improves = true;
        for (std::size_t k = 0; k < d0["rows"].size(); ++k) {
            const json& a = d0["rows"][k];
            const json& b = d1["rows"][k];
            if (a["lambda"] != 50.0) continue;
            improves = improves && b["rel_error"].get<double>() < a["rel_error"].get<double>();
            const Parameters prm{50.0, a["alpha"].get<double>()};
            const double x = a["z"]["re"].get<double>();
            AsymptoticOptions o0;
            o0.order = 0;
            if (!same(a["asym"]["re"], thm3_c(prm, BranchedPoint::off(x), o0).value.real()))
                fail("c5_thm3_fixed_Z.cfg: row differs from library");
        }
        const bool cli_c5 = ratios_ok && improves;
        if (cli_c5 != c5) fail("criterion 5 verdict: cli " + std::string(cli_c5 ? "pass" : "fail"));
    } catch (const json::exception& err) {
        fail(std::string("c5 configs: ") + err.what());
    }

    // Criteria 6 and 7.
    struct M {
        const char* file;
        double alpha;
        bool plus;
    };
    bool cli_c6 = true, cli_c7 = true;
    for (const M& m : {M{"c6_match_plus_alpha1.cfg", 1.0, true}, M{"c6_match_plus_alpha1.5.cfg", 1.5, true},
                       M{"c7_match_minus_alpha1.cfg", 1.0, false}, M{"c7_match_minus_alpha1.5.cfg", 1.5, false}}) {
        const CliRun r = cli("match --config " + config(m.file));
        try {
            const json doc = json::parse(r.out);
            const MatchResult lib = match_sweep(1000.0, m.alpha, m.plus);
            for (int j = 0; j < 2; ++j) {
                const double got = doc["kinds"][j == 0 ? "C" : "D"]["max_relative_discrepancy"].get<double>();
                if (!same(got, lib.rel_max[j]) && std::abs(got / lib.rel_max[j] - 1.0) > 1e-9)
                    fail(std::string(m.file) + ": max discrepancy " + num(got, 10) + " vs library " + num(lib.rel_max[j], 10));
            }
            const bool pass = doc["verdict"] == "pass";
            if (pass != (r.code == 0)) fail(std::string(m.file) + ": exit code disagrees with verdict");
            (m.plus ? cli_c6 : cli_c7) = (m.plus ? cli_c6 : cli_c7) && pass;
        } catch (const json::exception& err) {
            fail(std::string(m.file) + ": " + err.what());
        }
    }
    if (cli_c6 != c6) fail("criterion 6 verdict: cli " + std::string(cli_c6 ? "pass" : "fail"));
    if (cli_c7 != c7) fail("criterion 7 verdict: cli " + std::string(cli_c7 ? "pass" : "fail"));

    v.summary = v.pass ? "eval examples match; compare/match configs reproduce criteria 4-7 (numbers and verdicts)"
                       : "CLI output disagrees with the library";
    return v;
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, Verdict>> results;
    auto record = [&](const std::string& title, Verdict v) { results.emplace_back(title, std::move(v)); };

    record("oracle equivalence (integer degree)", c1_integer_degree());
    record("endpoint identity", c2_endpoint());
    record("Thm 1 order", c3_thm1_order());
    record("Thm 2 order", c4_thm2_order());
    record("Thm 3 fixed-Z order", c5_thm3_fixed_z());
    record("matching at +1 (Thm 2 vs Thm 3)", matching(true));
    record("matching at -1 (Thm 2 vs Thm 4)", matching(false));
    record("Thm 1 continuity", c8_thm1_continuity());
    record("Bessel suite", c9_bessel());
    record("saddle diagnostics", c10_saddles());
    record("Legendre bridge", c11_legendre());
    record("CLI black-box", c12_cli(results[3].second.pass, results[4].second.pass, results[5].second.pass,
                                    results[6].second.pass));

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int failed = 0;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const auto& [title, v] = results[k];
        failed += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << k + 1 << ". " << title << ": " << v.summary << "\n";
        for (const auto& n : v.notes) std::cout << "        " << n << "\n";
    }
    std::cout << "runtime " << num(seconds, 3) << " s (limit 300 s)\n";
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria pass\n";
    return failed == 0 && seconds < 300.0 ? 0 : 1;
}
