#pragma once

/// \file
/// \brief Coefficient files, machine-readable reports and their JSON / CSV forms.
///
/// Coefficient files hold one complex number per line as "re im" (a lone "re"
/// means im = 0); blank lines and lines starting with '#' are skipped.
///
/// CSV reports use the fixed header
///
///     record,t,p,index,value,lower,upper,pass
///
/// where `record` names the row type and unused cells are left empty.
/// Assertions appear as records "check:<name>" with value = left side and
/// upper = right side.

#include "cesaro/errors.hpp"
#include "cesaro/series.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <ctime>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace cesaro {

inline constexpr std::string_view version = "0.1.0";

using json = nlohmann::ordered_json;

enum class Format { json, csv };

inline Format format_from_string(std::string_view s) {
    if (s == "json") {
        return Format::json;
    }
    if (s == "csv") {
        return Format::csv;
    }
    throw parse_error("unknown format '" + std::string(s) + "' (expected json or csv)", 0);
}

namespace detail {

inline double parse_double(std::string_view token, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw parse_error("not a number: '" + std::string(token) + "'", line);
    }
    return value;
}

}  // namespace detail

/// Parse a comma-separated list of reals ("0.3,0.5").
inline std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string_view token = text.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        if (token.empty()) {
            throw parse_error("empty entry in list '" + std::string(text) + "'", 0);
        }
        out.push_back(detail::parse_double(token, 0));
        start = end + 1;
    }
    return out;
}

/// Parse a comma-separated list of exponents; "inf" (any case) is allowed.
inline std::vector<Exponent> parse_exponent_list(std::string_view text) {
    std::vector<Exponent> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string token(text.substr(start, end - start));
        token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
        std::string lower = token;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower == "inf" || lower == "infinity") {
            out.push_back(Exponent::inf());
        } else {
            out.emplace_back(detail::parse_double(token, 0));
        }
        start = end + 1;
    }
    return out;
}

inline TaylorSeries read_coefficients(std::istream& in) {
    std::vector<complex> coeffs;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        std::istringstream fields(text);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) {
            tokens.push_back(tok);
        }
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() > 2) {
            throw parse_error("expected 're im', found " + std::to_string(tokens.size()) + " fields", line);
        }
        const double re = detail::parse_double(tokens[0], line);
        const double im = tokens.size() == 2 ? detail::parse_double(tokens[1], line) : 0.0;
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw parse_error("non-finite coefficient", line);
        }
        coeffs.emplace_back(re, im);
    }
    if (coeffs.empty()) {
        throw parse_error("coefficient file contains no coefficients", 0);
    }
    return TaylorSeries(std::move(coeffs));
}

inline void write_coefficients(std::ostream& out, const TaylorSeries& f) {
    char buf[64];
    for (const auto& c : f.coeffs()) {
        const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.real(), c.imag());
        out.write(buf, n);
    }
}

inline json coefficients_to_json(const TaylorSeries& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) {
        arr.push_back(json::array({c.real(), c.imag()}));
    }
    return arr;
}

inline TaylorSeries coefficients_from_json(const json& arr) {
    if (!arr.is_array() || arr.empty()) {
        throw parse_error("expected a nonempty array of [re, im] pairs", 0);
    }
    std::vector<complex> c;
    c.reserve(arr.size());
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw parse_error("expected [re, im] pair", 0);
        }
        c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return TaylorSeries(std::move(c));
}

/// An asserted relation with both sides and the tolerance it was checked at.
struct Assertion {
    std::string name;
    double lhs = 0.0;
    std::string relation;  ///< "<=", "<", "~=" (relative), "=="
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline Assertion check_le(std::string name, double lhs, double rhs, double tol = 0.0) {
    return {std::move(name), lhs, "<=", rhs, tol, lhs <= rhs + tol};
}

inline Assertion check_lt(std::string name, double lhs, double rhs) {
    return {std::move(name), lhs, "<", rhs, 0.0, lhs < rhs};
}

/// |lhs - rhs| <= rel_tol * |rhs|
inline Assertion check_close(std::string name, double lhs, double rhs, double rel_tol) {
    return {std::move(name), lhs, "~=", rhs, rel_tol, std::abs(lhs - rhs) <= rel_tol * std::abs(rhs)};
}

inline Assertion check_true(std::string name, bool value) {
    return {std::move(name), value ? 1.0 : 0.0, "==", 1.0, 0.0, value};
}

/// One table row; optional cells are emitted as null (JSON) or empty (CSV).
struct ReportRow {
    std::string record;
    std::optional<double> t;
    std::optional<Exponent> p;
    std::optional<std::size_t> index;
    std::optional<double> value;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<bool> pass;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Report {
    std::string command;
    json config = json::object();
    std::vector<ReportRow> rows;
    std::vector<Assertion> assertions;
    std::string generated_at = utc_timestamp();

    void add(Assertion a) { assertions.push_back(std::move(a)); }

    [[nodiscard]] std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.pass; }));
    }

    /// Everything except `generated_at` is a function of the configuration.
    [[nodiscard]] json to_json(bool with_timestamp = true) const {
        json j;
        j["tool"] = "cesaro_lab";
        j["version"] = version;
        j["command"] = command;
        if (with_timestamp) {
            j["generated_at"] = generated_at;
        }
        j["config"] = config;
        json rows_json = json::array();
        for (const auto& r : rows) {
            json row;
            row["record"] = r.record;
            row["t"] = r.t ? json(*r.t) : json(nullptr);
            row["p"] = r.p ? json(r.p->to_string()) : json(nullptr);
            row["index"] = r.index ? json(*r.index) : json(nullptr);
            row["value"] = r.value ? json(*r.value) : json(nullptr);
            row["lower"] = r.lower ? json(*r.lower) : json(nullptr);
            row["upper"] = r.upper ? json(*r.upper) : json(nullptr);
            row["pass"] = r.pass ? json(*r.pass) : json(nullptr);
            rows_json.push_back(std::move(row));
        }
        j["rows"] = std::move(rows_json);
        json checks = json::array();
        for (const auto& a : assertions) {
            checks.push_back({{"name", a.name},
                              {"lhs", a.lhs},
                              {"relation", a.relation},
                              {"rhs", a.rhs},
                              {"tolerance", a.tolerance},
                              {"pass", a.pass}});
        }
        j["assertions"] = std::move(checks);
        j["summary"] = {{"assertions", assertions.size()}, {"failed", failures()}};
        return j;
    }

    [[nodiscard]] std::string to_csv() const {
        std::ostringstream out;
        out << "record,t,p,index,value,lower,upper,pass\n";
        const auto num = [](const std::optional<double>& v) {
            if (!v) {
                return std::string();
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *v);
            return std::string(buf);
        };
        for (const auto& r : rows) {
            out << r.record << ',' << num(r.t) << ',' << (r.p ? r.p->to_string() : "") << ','
                << (r.index ? std::to_string(*r.index) : "") << ',' << num(r.value) << ',' << num(r.lower) << ','
                << num(r.upper) << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
        }
        for (const auto& a : assertions) {
            out << "check:" << a.name << ",,,," << num(a.lhs) << ",," << num(a.rhs) << ','
                << (a.pass ? "true" : "false") << '\n';
        }
        return out.str();
    }
};

}  // namespace cesaro
