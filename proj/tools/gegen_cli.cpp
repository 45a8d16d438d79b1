// gegen: evaluate Gegenbauer functions and check the large-degree forms
// against the convergent series.
//
//   gegen eval     one point, any method
//   gegen compare  sweep of asymptotic vs exact values, CSV or JSON
//   gegen match    overlap of the on-cut form with the end-point Bessel forms
//   gegen regimes  regime map over x in (-1, 1)

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "gegen/gegen.hpp"

namespace {

using namespace gegen;
using gegen::cli::fmt;
using json = nlohmann::ordered_json;
namespace ec = gegen::cli;

enum class Method { Exact, Thm1, Thm2, Thm3, Thm4, Auto };

const std::map<std::string, Method> method_names{{"exact", Method::Exact}, {"thm1", Method::Thm1},
                                                 {"thm2", Method::Thm2},   {"thm3", Method::Thm3},
                                                 {"thm4", Method::Thm4},   {"auto", Method::Auto}};

Side parse_side(const std::string& s) {
    if (s == "above") return Side::Above;
    if (s == "below") return Side::Below;
    if (s == "off" || s.empty()) return Side::Off;
    throw ec::usage_error("side must be above, below or off");
}

// Shared by every subcommand.
struct CommonFlags {
    double margin = 10.0;
    double lambda_floor = 30.0;
    double error_constant = 1.0;
    int order = -1;
    bool bessel_rep2 = false;
    bool d_bessel2 = false;
    unsigned threads = 0;

    void add(CLI::App* app) {
        app->add_option("--margin", margin, "M in the validity conditions")->check(CLI::PositiveNumber);
        app->add_option("--lambda-floor", lambda_floor, "smallest |lambda| for asymptotic forms");
        app->add_option("--error-constant", error_constant, "c in the a priori error estimate");
        app->add_option("--order", order, "correction order for Thm 3 C (0 or 1)")->check(CLI::Range(0, 1));
        app->add_flag("--bessel-rep2", bessel_rep2, "Thm 3 C: expansion in lambda(lambda+2 alpha)");
        app->add_flag("--d-bessel2", d_bessel2, "Thm 3 D: keep the I_nu term");
        app->add_option("--threads", threads, "worker threads (0: hardware)");
    }

    AsymptoticOptions options() const {
        AsymptoticOptions o;
        o.margin = margin;
        o.lambda_floor = lambda_floor;
        o.error_constant = error_constant;
        if (order >= 0) o.order = order;
        o.bessel_rep2 = bessel_rep2;
        o.d_bessel2 = d_bessel2;
        return o;
    }

    unsigned workers() const {
        if (threads > 0) return threads;
        const unsigned h = std::thread::hardware_concurrency();
        return h == 0 ? 1 : h;
    }
};

// ---------------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------------

// Real x in (-1, 1) with no side: the on-cut (Ferrers-type) functions.
bool on_cut(const BranchedPoint& p) {
    return p.side == Side::Off && p.z.imag() == 0.0 && p.z.real() > -1.0 && p.z.real() < 1.0;
}

struct Evaluation {
    cplx value;
    std::optional<Regime> regime;
    double est_rel_error = 0.0;
    Variables variables;
    std::optional<SeriesOutcome> series;
    std::optional<cplx> i_coefficient;
    bool dropped_subdominant = false;
};

Evaluation from_series(const SeriesOutcome& s) {
    Evaluation e;
    e.value = s.value;
    e.regime = Regime::Exact;
    e.est_rel_error = s.est_abs_error / std::max(std::abs(s.value), 1e-300);
    e.series = s;
    return e;
}

Evaluation from_asymptotic(const AsymptoticResult& r) {
    Evaluation e;
    e.value = r.value;
    e.regime = r.regime;
    e.est_rel_error = r.est_rel_error;
    e.variables = r.variables;
    e.i_coefficient = r.i_coefficient;
    e.dropped_subdominant = r.dropped_subdominant;
    return e;
}

Evaluation evaluate_exact(Kind kind, const Parameters& prm, const BranchedPoint& p) {
    if (on_cut(p)) {
        const double x = p.z.real();
        return from_series(kind == Kind::C ? ferrers_c_cut_outcome(prm, x) : ferrers_d_cut_outcome(prm, x));
    }
    return from_series(kind == Kind::C ? gegenbauer_c(prm, p) : gegenbauer_d(prm, p));
}

Evaluation evaluate(Method method, Kind kind, const Parameters& prm, const BranchedPoint& p, const AsymptoticOptions& opt) {
    if (method == Method::Auto) {
        const RegimeReport rep = regime_select(prm, p, opt);
        switch (*rep.chosen) {
        case Regime::Exact: method = Method::Exact; break;
        case Regime::Thm1: method = Method::Thm1; break;
        case Regime::Thm2: method = Method::Thm2; break;
        case Regime::Thm3: method = Method::Thm3; break;
        case Regime::Thm4: method = Method::Thm4; break;
        }
        // A side request on the cut asks for a boundary value, which only the
        // exact series provide.
        if ((method == Method::Thm2 || method == Method::Thm1) && p.side != Side::Off && p.z.real() < 1.0)
            method = Method::Exact;
    }
    const bool cut = on_cut(p);
    switch (method) {
    case Method::Exact:
        return evaluate_exact(kind, prm, p);
    case Method::Thm1:
        if (cut) throw regime_error("Thm 1 applies off the cut; use thm2 for real x in (-1, 1)");
        return from_asymptotic(kind == Kind::C ? thm1_c(prm, p, opt) : thm1_d(prm, p, opt));
    case Method::Thm2: {
        if (!cut) throw regime_error("Thm 2 applies on the cut: real x in (-1, 1) with no side");
        const double theta = std::acos(p.z.real());
        return from_asymptotic(kind == Kind::C ? thm2_c(prm, theta, opt) : thm2_d(prm, theta, opt));
    }
    case Method::Thm3:
        if (kind == Kind::C) return from_asymptotic(thm3_c(prm, p, opt));
        if (cut) return from_asymptotic(thm3_cut(prm, p.z.real(), Kind::D, opt));
        return from_asymptotic(thm3_d(prm, p, opt));
    case Method::Thm4:
        if (cut) return from_asymptotic(thm4_cut(prm, p.z.real(), kind, opt));
        if (kind == Kind::C) throw regime_error("Thm 4 gives C only on the cut");
        return from_asymptotic(thm4_d(prm, p, opt));
    default:
        break;
    }
    throw ec::usage_error("unknown method");
}

json cjson(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json variables_json(const Variables& v) {
    json out = json::object();
    auto put = [&](const char* name, const std::optional<cplx>& x) {
        if (x) out[name] = cjson(*x);
    };
    put("z_plus", v.z_plus);
    put("z_minus", v.z_minus);
    if (v.theta) out["theta"] = *v.theta;
    put("Z", v.Z);
    put("Z_prime", v.Z_prime);
    put("Z_dprime", v.Z_dprime);
    put("X", v.X);
    put("X_dprime", v.X_dprime);
    put("Y", v.Y);
    return out;
}

json report_json(const RegimeReport& rep) {
    json t = json::array();
    for (const auto& th : rep.thresholds)
        t.push_back({{"name", th.name}, {"lhs", th.lhs}, {"rhs", th.rhs}, {"ratio", th.ratio}, {"passed", th.passed}});
    json out{{"chosen", rep.chosen ? json(to_string(*rep.chosen)) : json(nullptr)}, {"thresholds", t}, {"reasons", rep.reasons}};
    return out;
}

std::string complex_text(cplx v) { return fmt(v.real()) + " " + fmt(v.imag()); }

// Writes to the named file, or stdout for "" or "-".
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw ec::usage_error("cannot write " + path);
            os = &file;
        }
    }
};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalFlags {
    std::string lambda, alpha, z, side = "off", method = "auto", kind = "C";
    std::optional<double> theta;
    bool json_out = false;
    CommonFlags common;
};

int run_eval(const EvalFlags& f) {
    const auto lam = ec::parse_complex(f.lambda);
    const auto alpha = ec::parse_complex(f.alpha);
    if (!lam || !alpha) throw ec::usage_error("--lambda and --alpha must be numbers");
    if (f.z.empty() == !f.theta) throw ec::usage_error("give exactly one of --z and --theta");
    cplx z;
    if (f.theta) z = std::cos(*f.theta);
    else if (auto v = ec::parse_complex(f.z)) z = *v;
    else throw ec::usage_error("--z must be a number");
    const Side side = parse_side(f.side);
    if (f.kind != "C" && f.kind != "D") throw ec::usage_error("--kind must be C or D");
    const Kind kind = f.kind == "C" ? Kind::C : Kind::D;
    const Method method = method_names.at(f.method);
    const Parameters prm{*lam, *alpha};
    const BranchedPoint p{z, side};
    const AsymptoticOptions opt = f.common.options();

    json out{{"command", "eval"},
             {"lambda", cjson(prm.lambda)},
             {"alpha", cjson(prm.alpha)},
             {"z", cjson(z)},
             {"side", to_string(side)},
             {"kind", f.kind},
             {"method", f.method}};
    if (f.theta) out["theta"] = *f.theta;
    auto fail = [&](const char* status, const std::string& msg, int code) {
        out["status"] = status;
        out["message"] = msg;
        out["regime_report"] = report_json(assess_regime(prm, p, opt));
        if (f.json_out) std::cout << out.dump(2) << "\n";
        else {
            std::cerr << status << ": " << msg << "\n";
            for (const auto& t : assess_regime(prm, p, opt).thresholds)
                std::cerr << "  " << t.name << ": " << fmt(t.lhs) << " vs " << fmt(t.rhs) << (t.passed ? " (pass)" : " (fail)") << "\n";
        }
        return code;
    };
    Evaluation e;
    try {
        e = evaluate(method, kind, prm, p, opt);
    } catch (const regime_error& err) {
        return fail("regime_error", err.what(), ec::regime_fail);
    } catch (const gegen::error& err) {
        return fail("numeric_error", err.what(), ec::numeric_fail);
    }
    const bool finite = std::isfinite(e.value.real()) && std::isfinite(e.value.imag());
    const bool converged = !e.series || e.series->converged;
    out["status"] = finite && converged ? "ok" : "numeric_error";
    out["value"] = cjson(e.value);
    out["regime"] = e.regime ? json(to_string(*e.regime)) : json(nullptr);
    out["est_rel_error"] = e.est_rel_error;
    out["variables"] = variables_json(e.variables);
    if (e.series) {
        out["series"] = {{"terms_used", e.series->terms_used},
                         {"converged", e.series->converged},
                         {"est_abs_error", e.series->est_abs_error},
                         {"route", e.series->route},
                         {"degraded", e.series->degraded}};
    }
    if (e.i_coefficient) out["i_coefficient"] = cjson(*e.i_coefficient);
    if (e.dropped_subdominant) out["dropped_subdominant"] = true;

    if (f.json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "value " << complex_text(e.value) << "\n";
        std::cout << "regime " << (e.regime ? to_string(*e.regime) : "-") << "\n";
        std::cout << "est_rel_error " << fmt(e.est_rel_error) << "\n";
        for (const auto& [k, v] : out["variables"].items()) {
            if (v.is_object()) std::cout << k << " " << fmt(v["re"].get<double>()) << " " << fmt(v["im"].get<double>()) << "\n";
            else std::cout << k << " " << fmt(v.get<double>()) << "\n";
        }
        if (e.series)
            std::cout << "terms_used " << e.series->terms_used << "\nconverged " << (e.series->converged ? "true" : "false")
                      << "\nroute " << e.series->route << "\n";
    }
    return finite && converged ? ec::ok : ec::numeric_fail;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareFlags {
    std::string lambda, alpha = "1", z, theta, side = "off", method = "auto", kind = "C", format = "csv", output;
    std::optional<double> fixed_Z;
    std::string end = "plus";
    double budget_factor = 5.0;
    std::string order_range;
    CommonFlags common;
};

struct CompareRow {
    double lambda = 0, alpha = 0;
    std::size_t point = 0;
    cplx z;
    std::optional<double> theta;
    std::string kind;
    cplx asym, exact;
    double rel_error = std::nan("");
    double est_rel_error = 0.0;
    double budget = 0.0;
    bool regime_ok = false;
    bool within_budget = false;
    std::string status;
};

struct OrderRatio {
    double alpha;
    std::size_t point;
    std::string kind;
    double lambda_lo, lambda_hi, ratio;
    bool in_range;
};

int run_compare(const CompareFlags& f) {
    if (f.lambda.empty()) throw ec::usage_error("--lambda is required");
    const auto lambdas = ec::parse_real_grid(f.lambda);
    const auto alphas = ec::parse_real_grid(f.alpha);
    const int given = static_cast<int>(!f.z.empty()) + static_cast<int>(!f.theta.empty()) + static_cast<int>(f.fixed_Z.has_value());
    if (given != 1) throw ec::usage_error("give exactly one of --z, --theta, --fixed-Z");
    if (f.end != "plus" && f.end != "minus") throw ec::usage_error("--end must be plus or minus");
    if (f.format != "csv" && f.format != "json") throw ec::usage_error("--format must be csv or json");
    if (f.kind != "C" && f.kind != "D" && f.kind != "CD") throw ec::usage_error("--kind must be C, D or CD");
    const Method method = method_names.at(f.method);
    const Side side = parse_side(f.side);
    std::optional<std::pair<double, double>> order_range;
    if (!f.order_range.empty()) {
        const auto parts = ec::split(f.order_range, ':');
        const auto lo = parts.size() == 2 ? ec::parse_real(parts[0]) : std::nullopt;
        const auto hi = parts.size() == 2 ? ec::parse_real(parts[1]) : std::nullopt;
        if (!lo || !hi || !(*lo <= *hi)) throw ec::usage_error("--order-range must be lo:hi");
        order_range = {{*lo, *hi}};
    }

    // Points are either fixed (z or theta) or follow lambda (fixed Z).
    std::vector<cplx> zs;
    std::vector<double> thetas;
    std::size_t n_points = 1;
    if (!f.z.empty()) {
        zs = ec::parse_complex_grid(f.z);
        n_points = zs.size();
    } else if (!f.theta.empty()) {
        thetas = ec::parse_real_grid(f.theta);
        n_points = thetas.size();
    }
    std::vector<std::string> kinds = f.kind == "CD" ? std::vector<std::string>{"CD"} : std::vector<std::string>{f.kind};

    struct Task {
        double lambda, alpha;
        std::size_t point;
    };
    std::vector<Task> tasks;
    for (double a : alphas)
        for (std::size_t k = 0; k < n_points; ++k)
            for (double l : lambdas) tasks.push_back({l, a, k});

    const AsymptoticOptions opt = f.common.options();
    auto work = [&](std::size_t idx) {
        const Task& t = tasks[idx];
        CompareRow row;
        row.lambda = t.lambda;
        row.alpha = t.alpha;
        row.point = t.point;
        row.kind = f.kind;
        if (!zs.empty()) row.z = zs[t.point];
        else if (!thetas.empty()) {
            row.theta = thetas[t.point];
            row.z = std::cos(*row.theta);
        } else {
            const double b = t.lambda + t.alpha;
            const double d = *f.fixed_Z * *f.fixed_Z / (2.0 * b * b);
            row.z = f.end == "plus" ? 1.0 - d : -1.0 + d;
        }
        const Parameters prm{t.lambda, t.alpha};
        const BranchedPoint p{row.z, side};
        auto eval_kind = [&](Method m, Kind k) { return evaluate(m, k, prm, p, opt); };
        try {
            if (f.kind == "CD") {
                const Evaluation c = eval_kind(method, Kind::C);
                const Evaluation d = eval_kind(method, Kind::D);
                row.asym = c.value - I * d.value;
                row.est_rel_error = std::max(c.est_rel_error, d.est_rel_error);
            } else {
                const Evaluation e = eval_kind(method, f.kind == "C" ? Kind::C : Kind::D);
                row.asym = e.value;
                row.est_rel_error = e.est_rel_error;
            }
            row.regime_ok = true;
        } catch (const regime_error& err) {
            row.status = std::string("regime_error: ") + err.what();
            return row;
        } catch (const gegen::error& err) {
            row.status = std::string("numeric_error: ") + err.what();
            return row;
        }
        try {
            if (f.kind == "CD") {
                const Evaluation c = evaluate_exact(Kind::C, prm, p);
                const Evaluation d = evaluate_exact(Kind::D, prm, p);
                row.exact = c.value - I * d.value;
            } else {
                row.exact = evaluate_exact(f.kind == "C" ? Kind::C : Kind::D, prm, p).value;
            }
        } catch (const gegen::error& err) {
            row.status = std::string("exact_error: ") + err.what();
            return row;
        }
        row.rel_error = std::abs(row.asym / row.exact - 1.0);
        row.budget = f.budget_factor * row.est_rel_error;
        row.within_budget = row.rel_error <= row.budget;
        row.status = row.within_budget ? "ok" : "budget_fail";
        return row;
    };
    const auto rows = ec::parallel_map<CompareRow>(tasks.size(), f.common.workers(), work);

    // Error ratios between consecutive lambdas at the same (alpha, point).
    std::vector<OrderRatio> ratios;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        const CompareRow& a = rows[k];
        const CompareRow& b = rows[k + 1];
        if (a.alpha != b.alpha || a.point != b.point) continue;
        if (a.status != "ok" && a.status != "budget_fail") continue;
        if (b.status != "ok" && b.status != "budget_fail") continue;
        const double r = a.rel_error / b.rel_error;
        const bool in = !order_range || (r >= order_range->first && r <= order_range->second);
        ratios.push_back({a.alpha, a.point, a.kind, a.lambda, b.lambda, r, in});
    }

    std::vector<double> errs;
    bool all_ok = true;
    bool any_regime_ok = false;
    bool numeric = false;
    for (const auto& r : rows) {
        if (r.regime_ok && !std::isnan(r.rel_error)) errs.push_back(r.rel_error);
        if (r.regime_ok) {
            any_regime_ok = true;
            if (!r.within_budget) all_ok = false;
        }
        if (r.status.rfind("numeric_error", 0) == 0 || r.status.rfind("exact_error", 0) == 0) numeric = true;
    }
    for (const auto& r : ratios)
        if (!r.in_range) all_ok = false;
    const double max_err = errs.empty() ? std::nan("") : *std::max_element(errs.begin(), errs.end());
    const double med_err = ec::median(errs);

    Output out(f.output);
    if (f.format == "csv") {
        std::ostream& os = *out.os;
        os << "lambda,alpha,z_re,z_im,theta,method,kind,asym_value_re,asym_value_im,exact_re,exact_im,rel_error,"
              "est_rel_error,budget,regime_ok,status\n";
        for (const auto& r : rows) {
            os << fmt(r.lambda) << ',' << fmt(r.alpha) << ',' << fmt(r.z.real()) << ',' << fmt(r.z.imag()) << ','
               << (r.theta ? fmt(*r.theta) : "") << ',' << f.method << ',' << r.kind << ',' << fmt(r.asym.real()) << ','
               << fmt(r.asym.imag()) << ',' << fmt(r.exact.real()) << ',' << fmt(r.exact.imag()) << ','
               << fmt(r.rel_error) << ',' << fmt(r.est_rel_error) << ',' << fmt(r.budget) << ','
               << (r.regime_ok ? "true" : "false") << ',' << ec::csv_field(r.status) << '\n';
        }
        std::cerr << "summary rows=" << rows.size() << " max_rel_error=" << fmt(max_err)
                  << " median_rel_error=" << fmt(med_err);
        for (const auto& r : ratios)
            std::cerr << " ratio(alpha=" << fmt(r.alpha) << ",point=" << r.point << "," << fmt(r.lambda_lo) << "/"
                      << fmt(r.lambda_hi) << ")=" << fmt(r.ratio);
        std::cerr << " verdict=" << (all_ok ? "pass" : "fail") << "\n";
    } else {
        json jr = json::array();
        for (const auto& r : rows) {
            json row{{"lambda", r.lambda},
                     {"alpha", r.alpha},
                     {"point", r.point},
                     {"z", cjson(r.z)},
                     {"theta", r.theta ? json(*r.theta) : json(nullptr)},
                     {"method", f.method},
                     {"kind", r.kind},
                     {"asym", cjson(r.asym)},
                     {"exact", cjson(r.exact)},
                     {"rel_error", std::isnan(r.rel_error) ? json(nullptr) : json(r.rel_error)},
                     {"est_rel_error", r.est_rel_error},
                     {"budget", r.budget},
                     {"regime_ok", r.regime_ok},
                     {"status", r.status}};
            jr.push_back(row);
        }
        json jratios = json::array();
        for (const auto& r : ratios)
            jratios.push_back({{"alpha", r.alpha},
                               {"point", r.point},
                               {"kind", r.kind},
                               {"lambda_lo", r.lambda_lo},
                               {"lambda_hi", r.lambda_hi},
                               {"ratio", r.ratio},
                               {"in_range", r.in_range}});
        json summary{{"rows", rows.size()},
                     {"max_rel_error", std::isnan(max_err) ? json(nullptr) : json(max_err)},
                     {"median_rel_error", std::isnan(med_err) ? json(nullptr) : json(med_err)},
                     {"budget_factor", f.budget_factor},
                     {"order_range", order_range ? json{order_range->first, order_range->second} : json(nullptr)},
                     {"ratios", jratios},
                     {"verdict", all_ok ? "pass" : "fail"}};
        *out.os << json{{"command", "compare"}, {"rows", jr}, {"summary", summary}}.dump(2) << "\n";
    }
    if (!any_regime_ok) return numeric ? ec::numeric_fail : ec::regime_fail;
    return all_ok ? ec::ok : ec::budget_fail;
}

// ---------------------------------------------------------------------------
// match
// ---------------------------------------------------------------------------

struct MatchFlags {
    double lambda = 1000.0;
    double alpha = 1.0;
    std::string end = "plus", output;
    double c1 = 8.0, c2 = 0.5;
    int samples = 200;
    double budget_factor = 10.0;
    std::string metric = "relative";
    CommonFlags common;
};

int run_match(MatchFlags f) {
    if (f.end != "plus" && f.end != "minus") throw ec::usage_error("--end must be plus or minus");
    if (f.samples < 2) throw ec::usage_error("--samples must be at least 2");
    if (f.metric != "relative" && f.metric != "envelope") throw ec::usage_error("--metric must be relative or envelope");
    const bool envelope = f.metric == "envelope";
    const double theta_lo = f.c1 / f.lambda;
    const double theta_hi = f.c2 * std::pow(f.lambda, -1.0 / 3.0);
    const double budget = f.budget_factor * std::pow(f.lambda, -2.0 / 3.0);
    const Parameters prm{f.lambda, f.alpha};
    const AsymptoticOptions opt = f.common.options();
    const bool plus = f.end == "plus";

    struct Sample {
        double theta = 0, x = 0;
        cplx on_cut[2], end_form[2];
        double env_discrepancy[2] = {0, 0};
        double rel_discrepancy[2] = {0, 0};
        std::string status = "ok";
    };
    auto work = [&](std::size_t k) {
        Sample s;
        // Distance from the end point, log-spaced.
        const double t = static_cast<double>(k) / (f.samples - 1);
        const double phi = theta_lo * std::pow(theta_hi / theta_lo, t);
        s.theta = plus ? phi : pi - phi;
        s.x = std::cos(s.theta);
        try {
            const double env = thm2_envelope(prm, s.theta);
            for (int j = 0; j < 2; ++j) {
                const Kind kind = j == 0 ? Kind::C : Kind::D;
                s.on_cut[j] = (kind == Kind::C ? thm2_c(prm, s.theta, opt) : thm2_d(prm, s.theta, opt)).value;
                s.end_form[j] = (plus ? thm3_cut(prm, s.x, kind, opt) : thm4_cut(prm, s.x, kind, opt)).value;
                const double diff = std::abs(s.on_cut[j] - s.end_form[j]);
                s.env_discrepancy[j] = diff / env;
                s.rel_discrepancy[j] = diff / std::abs(s.end_form[j]);
            }
        } catch (const regime_error& e) {
            s.status = std::string("regime_error: ") + e.what();
        } catch (const gegen::error& e) {
            s.status = std::string("numeric_error: ") + e.what();
        }
        return s;
    };
    const auto samples = ec::parallel_map<Sample>(static_cast<std::size_t>(f.samples), f.common.workers(), work);

    json per_kind = json::object();
    double worst = 0.0;
    int ok_samples = 0;
    bool numeric = false;
    for (const auto& s : samples) {
        if (s.status == "ok") ++ok_samples;
        else if (s.status.rfind("numeric", 0) == 0) numeric = true;
    }
    for (int j = 0; j < 2; ++j) {
        double best = -1.0, at = 0.0, rel = 0.0, env = 0.0;
        for (const auto& s : samples) {
            if (s.status != "ok") continue;
            const double d = envelope ? s.env_discrepancy[j] : s.rel_discrepancy[j];
            if (d > best) {
                best = d;
                at = s.theta;
            }
            rel = std::max(rel, s.rel_discrepancy[j]);
            env = std::max(env, s.env_discrepancy[j]);
        }
        worst = std::max(worst, best);
        per_kind[j == 0 ? "C" : "D"] = {{"max_discrepancy", best < 0 ? json(nullptr) : json(best)},
                                        {"theta_at_max", at},
                                        {"max_relative_discrepancy", rel},
                                        {"max_envelope_discrepancy", env}};
    }
    const bool pass = ok_samples == f.samples && worst <= budget;
    json jsamples = json::array();
    for (const auto& s : samples)
        jsamples.push_back({{"theta", s.theta},
                            {"x", s.x},
                            {"thm2_C", cjson(s.on_cut[0])},
                            {"end_C", cjson(s.end_form[0])},
                            {"thm2_D", cjson(s.on_cut[1])},
                            {"end_D", cjson(s.end_form[1])},
                            {"relative_C", s.rel_discrepancy[0]},
                            {"relative_D", s.rel_discrepancy[1]},
                            {"envelope_C", s.env_discrepancy[0]},
                            {"envelope_D", s.env_discrepancy[1]},
                            {"status", s.status}});
    json report{{"command", "match"},
                {"lambda", f.lambda},
                {"alpha", f.alpha},
                {"end", f.end},
                {"end_form", plus ? "thm3_cut" : "thm4_cut"},
                {"c1", f.c1},
                {"c2", f.c2},
                {"margin", opt.margin},
                {"theta_min", theta_lo},
                {"theta_max", theta_hi},
                {"metric", f.metric},
                {"metric_definition", envelope ? "|thm2 - end form| / (2^{1-a}/Gamma(a) lambda^{a-1} sin(theta)^{-a})"
                                               : "|thm2 - end form| / |end form|"},
                {"budget", budget},
                {"kinds", per_kind},
                {"max_discrepancy", worst},
                {"samples_ok", ok_samples},
                {"samples", jsamples},
                {"verdict", pass ? "pass" : "fail"}};
    Output out(f.output);
    *out.os << report.dump(2) << "\n";
    if (ok_samples == 0) return numeric ? ec::numeric_fail : ec::regime_fail;
    return pass ? ec::ok : ec::budget_fail;
}

// ---------------------------------------------------------------------------
// regimes
// ---------------------------------------------------------------------------

struct RegimesFlags {
    std::string lambda = "5,30,100,1000";
    double alpha = 1.0;
    int x_count = 199;
    std::string format = "csv", output;
    CommonFlags common;
};

int run_regimes(const RegimesFlags& f) {
    if (f.x_count < 1) throw ec::usage_error("--x-count must be positive");
    if (f.format != "csv" && f.format != "json") throw ec::usage_error("--format must be csv or json");
    const auto lambdas = ec::parse_real_grid(f.lambda);
    const AsymptoticOptions opt = f.common.options();
    struct Cell {
        double x, lambda;
        RegimeReport rep;
    };
    const std::size_t nx = static_cast<std::size_t>(f.x_count);
    auto work = [&](std::size_t k) {
        const double lam = lambdas[k / nx];
        const double x = -1.0 + 2.0 * static_cast<double>(k % nx + 1) / static_cast<double>(nx + 1);
        return Cell{x, lam, assess_regime(Parameters{lam, f.alpha}, BranchedPoint::off(x), opt)};
    };
    const auto cells = ec::parallel_map<Cell>(lambdas.size() * nx, f.common.workers(), work);
    Output out(f.output);
    if (f.format == "csv") {
        std::ostream& os = *out.os;
        os << "x,lambda,alpha,chosen_regime";
        for (const auto& t : cells.front().rep.thresholds) os << ',' << t.name << "_lhs," << t.name << "_ratio";
        os << '\n';
        for (const auto& c : cells) {
            os << fmt(c.x) << ',' << fmt(c.lambda) << ',' << fmt(f.alpha) << ','
               << (c.rep.chosen ? to_string(*c.rep.chosen) : "none");
            for (const auto& t : c.rep.thresholds) os << ',' << fmt(t.lhs) << ',' << fmt(t.ratio);
            os << '\n';
        }
    } else {
        json cj = json::array();
        for (const auto& c : cells) {
            json r = report_json(c.rep);
            r["x"] = c.x;
            r["lambda"] = c.lambda;
            r["alpha"] = f.alpha;
            cj.push_back(r);
        }
        *out.os << json{{"command", "regimes"}, {"cells", cj}}.dump(2) << "\n";
    }
    return ec::ok;
}

// ---------------------------------------------------------------------------
// Config files: key=value lines spliced in as --key value before the command
// line, so that explicit flags win.
// ---------------------------------------------------------------------------

std::vector<std::string> expand_config(CLI::App& sub, const std::vector<std::string>& args) {
    std::string path;
    std::set<std::string> given;
    for (std::size_t k = 0; k < args.size(); ++k) {
        std::string a = args[k];
        if (a.rfind("--", 0) != 0) continue;
        const auto eq = a.find('=');
        const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        given.insert(name);
        if (name == "config") {
            if (eq != std::string::npos) path = a.substr(eq + 1);
            else if (k + 1 < args.size()) path = args[k + 1];
            else throw ec::usage_error("--config needs a path");
        }
    }
    std::vector<std::string> out;
    if (!path.empty()) {
        for (const auto& [key, value] : ec::read_config(path)) {
            if (given.count(key)) continue;
            const CLI::Option* opt = nullptr;
            try {
                opt = sub.get_option("--" + key);
            } catch (const CLI::OptionNotFound&) {
                throw ec::usage_error("unknown key in " + path + ": " + key);
            }
            if (opt->get_type_size() == 0) {
                if (value == "true" || value == "1" || value == "yes") out.push_back("--" + key);
                else if (value != "false" && value != "0" && value != "no")
                    throw ec::usage_error("flag " + key + " needs true or false");
            } else {
                out.push_back("--" + key);
                out.push_back(value);
            }
        }
    }
    out.insert(out.end(), args.begin(), args.end());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gegenbauer functions C and D: exact series and large-degree forms"};
    app.require_subcommand(1);
    const auto method_check = CLI::IsMember({"exact", "thm1", "thm2", "thm3", "thm4", "auto"});

    EvalFlags ef;
    auto* eval = app.add_subcommand("eval", "evaluate at one point");
    eval->add_option("--lambda", ef.lambda, "degree (a, a+bi)")->required();
    eval->add_option("--alpha", ef.alpha, "order")->required();
    eval->add_option("--z", ef.z, "argument");
    eval->add_option("--theta", ef.theta, "on-cut angle, x = cos(theta)");
    eval->add_option("--side", ef.side, "above, below or off")->check(CLI::IsMember({"above", "below", "off"}));
    eval->add_option("--method", ef.method)->check(method_check);
    eval->add_option("--kind", ef.kind, "C or D")->check(CLI::IsMember({"C", "D"}));
    eval->add_flag("--json", ef.json_out, "JSON output");
    ef.common.add(eval);

    CompareFlags cf;
    auto* compare = app.add_subcommand("compare", "asymptotic vs exact sweep");
    compare->add_option("--lambda", cf.lambda, "list or start:stop:count[:log]");
    compare->add_option("--alpha", cf.alpha, "list or range");
    compare->add_option("--z", cf.z, "list of complex points");
    compare->add_option("--theta", cf.theta, "list or range of on-cut angles");
    compare->add_option("--fixed-Z", cf.fixed_Z, "Z = sqrt(2 (lambda+alpha)^2 (1 -+ x)) held fixed");
    compare->add_option("--end", cf.end, "end point for --fixed-Z: plus or minus");
    compare->add_option("--side", cf.side)->check(CLI::IsMember({"above", "below", "off"}));
    compare->add_option("--method", cf.method)->check(method_check);
    compare->add_option("--kind", cf.kind, "C, D or CD (C - iD)")->check(CLI::IsMember({"C", "D", "CD"}));
    compare->add_option("--budget-factor", cf.budget_factor, "row budget = factor * est_rel_error");
    compare->add_option("--order-range", cf.order_range, "lo:hi bounds on e(lambda_k)/e(lambda_{k+1})");
    compare->add_option("--format", cf.format)->check(CLI::IsMember({"csv", "json"}));
    compare->add_option("--output", cf.output, "file (default stdout)");
    cf.common.add(compare);

    MatchFlags mf;
    auto* match = app.add_subcommand("match", "on-cut form vs end-point Bessel forms");
    match->add_option("--lambda", mf.lambda);
    match->add_option("--alpha", mf.alpha);
    match->add_option("--end", mf.end, "plus (x near 1) or minus (x near -1)")->check(CLI::IsMember({"plus", "minus"}));
    match->add_option("--c1", mf.c1, "lower angle c1/lambda");
    match->add_option("--c2", mf.c2, "upper angle c2 lambda^{-1/3}");
    match->add_option("--samples", mf.samples);
    match->add_option("--budget-factor", mf.budget_factor, "budget = factor * lambda^{-2/3}");
    match->add_option("--metric", mf.metric, "relative: |diff|/|end form|; envelope: |diff|/thm2 amplitude")
        ->check(CLI::IsMember({"relative", "envelope"}));
    match->add_option("--output", mf.output);
    mf.common.margin = 5.0;
    mf.common.add(match);

    RegimesFlags rf;
    auto* regimes = app.add_subcommand("regimes", "regime map over x in (-1, 1)");
    regimes->add_option("--lambda", rf.lambda, "list or range");
    regimes->add_option("--alpha", rf.alpha);
    regimes->add_option("--x-count", rf.x_count, "interior x points");
    regimes->add_option("--format", rf.format)->check(CLI::IsMember({"csv", "json"}));
    regimes->add_option("--output", rf.output);
    rf.common.add(regimes);

    std::string config_dummy;
    for (auto* sub : {eval, compare, match, regimes}) sub->add_option("--config", config_dummy, "key=value file; flags win");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        if (!args.empty()) {
            for (auto* sub : {eval, compare, match, regimes}) {
                if (args.front() != sub->get_name()) continue;
                std::vector<std::string> rest(args.begin() + 1, args.end());
                rest = expand_config(*sub, rest);
                args.assign(1, sub->get_name());
                args.insert(args.end(), rest.begin(), rest.end());
            }
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ec::usage;
    } catch (const ec::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return ec::usage;
    }

    try {
        if (eval->parsed()) return run_eval(ef);
        if (compare->parsed()) return run_compare(cf);
        if (match->parsed()) return run_match(mf);
        if (regimes->parsed()) return run_regimes(rf);
    } catch (const ec::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return ec::usage;
    } catch (const regime_error& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return ec::regime_fail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ec::numeric_fail;
    }
    return ec::usage;
}
