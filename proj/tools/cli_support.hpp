#pragma once

// Helpers for the command-line front end: argument parsing, config files,
// number formatting and a deterministic parallel map.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace gegen::cli {

enum ExitCode : int { ok = 0, budget_fail = 1, regime_fail = 2, numeric_fail = 3, usage = 64 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_real(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" (also with 'j').
inline std::optional<std::complex<double>> parse_complex(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) return std::nullopt;
    const char last = s.back();
    if (last != 'i' && last != 'j') {
        auto r = parse_real(s);
        if (!r) return std::nullopt;
        return std::complex<double>{*r, 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](const std::string& t) -> std::optional<double> {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string::npos) {
        auto im = imag_part(s);
        if (!im) return std::nullopt;
        return std::complex<double>{0.0, *im};
    }
    auto re = parse_real(s.substr(0, split));
    auto im = imag_part(s.substr(split));
    if (!re || !im) return std::nullopt;
    return std::complex<double>{*re, *im};
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto k = s.find(sep, start);
        out.push_back(trim(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start)));
        if (k == std::string_view::npos) break;
        start = k + 1;
    }
    return out;
}

/// "start:stop:count" (linear) or "start:stop:count:log" (geometric).
inline std::vector<double> parse_range(std::string_view s) {
    const auto parts = split(s, ':');
    if (parts.size() != 3 && parts.size() != 4) throw usage_error("range must be start:stop:count[:log]: " + std::string(s));
    const auto a = parse_real(parts[0]);
    const auto b = parse_real(parts[1]);
    const auto n = parse_real(parts[2]);
    if (!a || !b || !n || *n < 1 || std::floor(*n) != *n) throw usage_error("malformed range: " + std::string(s));
    const bool geometric = parts.size() == 4;
    if (geometric && parts[3] != "log") throw usage_error("range spacing must be 'log': " + std::string(s));
    if (geometric && !(*a > 0 && *b > 0)) throw usage_error("log range needs positive ends: " + std::string(s));
    if (!(*a <= *b)) throw usage_error("range must be ordered: " + std::string(s));
    const int count = static_cast<int>(*n);
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        out.push_back(geometric ? *a * std::pow(*b / *a, t) : *a + (*b - *a) * t);
    }
    return out;
}

/// Comma-separated values, or a single range.
inline std::vector<double> parse_real_grid(std::string_view s) {
    if (s.find(':') != std::string_view::npos) return parse_range(s);
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        auto v = parse_real(item);
        if (!v) throw usage_error("not a real number: " + item);
        out.push_back(*v);
    }
    if (out.empty()) throw usage_error("empty grid");
    return out;
}

inline std::vector<std::complex<double>> parse_complex_grid(std::string_view s) {
    if (s.find(':') != std::string_view::npos) {
        std::vector<std::complex<double>> out;
        for (double v : parse_range(s)) out.emplace_back(v, 0.0);
        return out;
    }
    std::vector<std::complex<double>> out;
    for (const auto& item : split(s, ',')) {
        auto v = parse_complex(item);
        if (!v) throw usage_error("not a complex number: " + item);
        out.push_back(*v);
    }
    if (out.empty()) throw usage_error("empty grid");
    return out;
}

/// Shortest form that reads back to the same double (17 significant digits).
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Flat key=value lines; '#' starts a comment; blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        out.emplace_back(std::move(key), std::move(val));
    }
    return out;
}

/// Runs f(0..n-1) on up to `threads` workers; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F f) {
    std::vector<T> out(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) out[k] = f(k);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) out[k] = f(k);
        });
    for (auto& t : pool) t.join();
    return out;
}

inline double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace gegen::cli
