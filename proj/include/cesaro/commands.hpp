#pragma once

/// \file
/// \brief The sweeps behind the `cesaro_lab` subcommands. Each command returns a
///        Report whose assertions decide the exit status.

#include "cesaro/analysis.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/random.hpp"
#include "cesaro/report.hpp"
#include "cesaro/series.hpp"
#include "cesaro/spectral.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

inline constexpr std::size_t default_max_degree = 8192;
inline constexpr std::size_t min_run_degree = 16;

struct RunConfig {
    std::string command;
    std::vector<double> t_values{0.0, 0.3, 0.5, 0.7, 0.95};
    std::vector<Exponent> p_values{Exponent(1.0), Exponent(2.0), Exponent(4.0), Exponent::inf()};
    std::size_t degree = default_degree;
    std::size_t section_degree = 512;  ///< dense sections for H^2 norms and powers
    std::string output_path;           ///< empty: standard output
    Format format = Format::json;
    std::uint64_t seed = default_seed;
    // apply only
    std::vector<std::string> kernels{"cesaro"};
    std::string input_path;
    std::string symbol_path;
    bool degree_capped = false;

    /// Checks the invariants and applies the degree cap.
    void validate(std::size_t max_degree = default_max_degree) {
        if (t_values.empty() || p_values.empty()) {
            throw domain_error("t and p lists must be nonempty");
        }
        for (double t : t_values) {
            require_cesaro_parameter(t);
        }
        if (degree < min_run_degree) {
            throw domain_error("degree must be at least " + std::to_string(min_run_degree));
        }
        if (degree > max_degree) {
            degree = max_degree;
            degree_capped = true;
        }
        if (section_degree < min_run_degree || section_degree > max_power_section_degree) {
            throw domain_error("section degree must lie in [" + std::to_string(min_run_degree) + ", " +
                               std::to_string(max_power_section_degree) + "]");
        }
        section_degree = std::min(section_degree, degree);
    }

    [[nodiscard]] json to_json() const {
        json j;
        j["t"] = t_values;
        json ps = json::array();
        for (const auto& p : p_values) {
            ps.push_back(p.to_string());
        }
        j["p"] = std::move(ps);
        j["degree"] = degree;
        j["degree_capped"] = degree_capped;
        j["section_degree"] = section_degree;
        j["seed"] = seed;
        j["format"] = format == Format::json ? "json" : "csv";
        if (command == "apply") {
            j["kernels"] = kernels;
            j["input"] = input_path;
            if (!symbol_path.empty()) {
                j["symbol"] = symbol_path;
            }
        }
        return j;
    }
};

/// Degree cap from CESARO_LAB_MAX_DEGREE (default 8192).
inline std::size_t max_degree_from_env() {
    const char* value = std::getenv("CESARO_LAB_MAX_DEGREE");
    if (value == nullptr || *value == '\0') {
        return default_max_degree;
    }
    const double cap = detail::parse_double(value, 0);
    if (!(cap >= static_cast<double>(min_run_degree)) || cap != static_cast<double>(static_cast<std::size_t>(cap))) {
        throw parse_error("CESARO_LAB_MAX_DEGREE must be an integer >= " + std::to_string(min_run_degree), 0);
    }
    return static_cast<std::size_t>(cap);
}

namespace detail {

inline std::string cell(double t, const Exponent& p) {
    std::ostringstream s;
    s << "[t=" << t << " p=" << p.to_string() << "]";
    return s.str();
}

inline std::string cell(double t) {
    std::ostringstream s;
    s << "[t=" << t << "]";
    return s.str();
}

inline TaylorSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open '" + path + "'", 0);
    }
    return read_coefficients(in);
}

/// Random polynomials of degree 16 normalized in the given norm.
inline std::vector<TaylorSeries> unit_test_set(Rng& rng, Exponent p, std::size_t count) {
    std::vector<TaylorSeries> out;
    for (std::size_t i = 0; i < count; ++i) {
        const TaylorSeries f = random_polynomial(rng, 16);
        out.push_back(complex{1.0 / hardy_norm(f, p, false).value, 0.0} * f);
    }
    return out;
}

}  // namespace detail

/// Result of `apply`: one transformed series per (kernel, t).
struct ApplyResult {
    std::string kernel;
    std::optional<double> t;
    TaylorSeries coeffs;
};

/// Applies every requested kernel to the input (zero-padded to the run degree).
/// Kernels taking t are applied once per t value.
inline std::vector<ApplyResult> run_apply(const RunConfig& config, const TaylorSeries& input,
                                          const std::optional<TaylorSeries>& symbol) {
    const TaylorSeries f = input.resized(std::max(config.degree, input.degree()));
    std::vector<ApplyResult> out;
    for (const auto& name : config.kernels) {
        const KernelKind kind = kernel_kind_from_string(name);
        const bool takes_t = kind == KernelKind::cesaro_t || kind == KernelKind::mult_ht ||
                             kind == KernelKind::shifted_cesaro;
        if (takes_t) {
            for (double t : config.t_values) {
                out.push_back({name, t, OperatorKernel::make(kind, t, std::nullopt).apply(f)});
            }
        } else {
            out.push_back({name, std::nullopt, OperatorKernel::make(kind, std::nullopt, symbol).apply(f)});
        }
    }
    return out;
}

inline json apply_to_json(const RunConfig& config, const std::vector<ApplyResult>& results,
                          bool with_timestamp = true) {
    json j;
    j["tool"] = "cesaro_lab";
    j["version"] = version;
    j["command"] = "apply";
    if (with_timestamp) {
        j["generated_at"] = utc_timestamp();
    }
    j["config"] = config.to_json();
    json arr = json::array();
    for (const auto& r : results) {
        arr.push_back({{"kernel", r.kernel},
                       {"t", r.t ? json(*r.t) : json(nullptr)},
                       {"degree", r.coeffs.degree()},
                       {"truncated", r.coeffs.truncated()},
                       {"coeffs", coefficients_to_json(r.coeffs)}});
    }
    j["results"] = std::move(arr);
    return j;
}

inline std::string apply_to_csv(const std::vector<ApplyResult>& results) {
    std::ostringstream out;
    out << "kernel,t,n,re,im\n";
    char buf[96];
    for (const auto& r : results) {
        std::string t;
        if (r.t) {
            std::snprintf(buf, sizeof buf, "%.17g", *r.t);
            t = buf;
        }
        for (std::size_t n = 0; n < r.coeffs.size(); ++n) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.coeffs[n].real(), r.coeffs[n].imag());
            out << r.kernel << ',' << t << ',' << n << ',' << buf << '\n';
        }
    }
    return out.str();
}

/// apply: read the input file (and the symbol file for tg / vg) and transform it.
inline std::string cmd_apply(const RunConfig& config) {
    const TaylorSeries input = detail::load_series(config.input_path);
    std::optional<TaylorSeries> symbol;
    if (!config.symbol_path.empty()) {
        symbol = detail::load_series(config.symbol_path);
    }
    const auto results = run_apply(config, input, symbol);
    return config.format == Format::json ? apply_to_json(config, results).dump(2) + "\n" : apply_to_csv(results);
}

/// norms: operator-norm sandwiches, attained disc-algebra norms, H^2 section
/// norms and the refined-vs-coarse bound comparison on the (t, p) grid.
inline Report cmd_norms(const RunConfig& config) {
    Report report;
    report.command = "norms";
    report.config = config.to_json();
    Rng rng(config.seed);

    for (double t : config.t_values) {
        for (const auto& p : config.p_values) {
            const auto testset = detail::unit_test_set(rng, p, 20);
            const CtNormBound bound = upper_bound_ct(t, p);
            const double lower = opnorm_lower(t, p, testset, config.degree);
            const bool ok = lower <= bound.value + 1e-9;
            report.rows.push_back({"opnorm", t, p, std::nullopt, bound.coarse, lower, bound.value, ok});
            report.add(check_le("opnorm_sandwich" + detail::cell(t, p), lower, bound.value, 1e-9));
            report.add(check_le("opnorm_at_least_one" + detail::cell(t, p), 1.0, lower, 1e-12));
            if (p.is_inf()) {
                report.add(check_close("adisc_norm_attained" + detail::cell(t, p), lower, bound.value, 1e-6));
            }
            if (t > 0.0 && !p.is_inf()) {
                const double tt[] = {t};
                const double pp[] = {p.value()};
                const BoundRow row = bound_comparison(tt, pp).rows.front();
                report.rows.push_back({"bound_comparison", t, p, std::nullopt, row.gamma, row.lower, row.upper,
                                       row.pass});
                report.add(check_lt("refined_below_coarse" + detail::cell(t, p), row.lower, row.upper));
                if (row.gamma) {
                    report.add(check_lt("gamma_negative" + detail::cell(t, p), *row.gamma, 0.0));
                }
            }
        }
        const double h2 = h2_opnorm(finite_section(OperatorKernel::cesaro(t), config.section_degree));
        const double h2_upper = upper_bound_ct(t, Exponent(2.0)).value;
        report.rows.push_back({"h2_section_norm", t, Exponent(2.0), config.section_degree, h2, 1.0, h2_upper,
                               h2 >= 1.0 - 1e-8 && h2 <= h2_upper + 1e-8});
        report.add(check_le("h2_section_lower" + detail::cell(t), 1.0, h2, 1e-8));
        report.add(check_le("h2_section_upper" + detail::cell(t), h2, h2_upper, 1e-8));
    }
    return report;
}

/// spectrum: diagonal eigenvalues, eigenvector residuals, the S_t radius decay,
/// nilpotency of the S_t section, compactness tails and the ergodic certificate.
inline Report cmd_spectrum(const RunConfig& config) {
    Report report;
    report.command = "spectrum";
    report.config = config.to_json();

    SpectralOptions opt;
    opt.degree = config.degree;
    opt.section_degree = config.section_degree;
    opt.power_nmax = 0;
    opt.ergodic_nmax = 0;
    opt.seed = config.seed;

    const auto expected = diagonal_spectrum(config.degree);
    for (double t : config.t_values) {
        const SpectralReport s = spectral_report(t, opt);
        for (std::size_t m = 0; m < s.eigenvalues.size(); ++m) {
            report.rows.push_back({"eigenvalue", t, std::nullopt, m, s.eigenvalues[m], std::nullopt, std::nullopt,
                                   s.eigenvalues[m] == expected.eigenvalues[m]});
        }
        const auto diag = triangular_eigenvalues(finite_section(OperatorKernel::cesaro(t), config.section_degree));
        bool diag_ok = true;
        for (std::size_t m = 0; m < diag.size(); ++m) {
            diag_ok = diag_ok && diag[m] == complex{expected.eigenvalues[m], 0.0};
        }
        report.add(check_true("section_diagonal_is_spectrum" + detail::cell(t), diag_ok));

        for (const auto& r : s.eigen_residuals) {
            report.rows.push_back({"eigen_residual", t, Exponent(2.0), r.m, r.residual, std::nullopt, 1e-10,
                                   r.residual <= 1e-10});
            report.add(check_le("eigen_residual" + detail::cell(t) + "[m=" + std::to_string(r.m) + "]", r.residual,
                                1e-10));
        }

        const auto st = power_norms(OperatorKernel::shifted_cesaro(t), 64, config.section_degree);
        for (const auto& pn : st) {
            report.rows.push_back({"st_power", t, Exponent(2.0), pn.n, pn.norm, std::nullopt, pn.root(), std::nullopt});
        }
        const auto root_at = [&](std::size_t n) {
            return std::find_if(st.begin(), st.end(), [n](const PowerNorm& x) { return x.n == n; })->root();
        };
        report.add(check_lt("st_root_decay" + detail::cell(t), root_at(64), root_at(8)));

        const Matrix st_section = finite_section(OperatorKernel::shifted_cesaro(t), config.section_degree).entries;
        const bool nilpotent = matrix_power(st_section, config.section_degree + 2).isZero(0.0);
        report.add(check_true("st_section_nilpotent" + detail::cell(t), nilpotent));

        double previous_tail = 2.0;
        bool tails_decrease = true;
        for (std::size_t n_small = 8; n_small < config.section_degree; n_small *= 2) {
            const double tail = compact_tail(t, n_small, config.section_degree);
            report.rows.push_back({"compact_tail", t, Exponent(2.0), n_small, tail, std::nullopt, std::nullopt,
                                   std::nullopt});
            tails_decrease = tails_decrease && tail < previous_tail;
            previous_tail = tail;
        }
        report.add(check_true("compact_tail_decreasing" + detail::cell(t), tails_decrease));

        const auto& cert = s.certificate;
        report.rows.push_back({"certificate", t, Exponent(2.0), std::nullopt, cert.delta, std::nullopt, 0.5,
                               cert.all()});
        report.add(check_true("certificate_spectrum_in_disc" + detail::cell(t), cert.spectrum_in_disc));
        report.add(check_true("certificate_one_on_circle" + detail::cell(t), cert.one_on_circle));
        report.add(check_true("certificate_ker_im_trivial" + detail::cell(t), cert.ker_im_trivial));

        const TaylorSeries one = TaylorSeries::monomial(0, std::min<std::size_t>(config.degree, 256));
        report.add(check_true("st_orbit_in_h0" + detail::cell(t), orbit_containment_st(t, one, 64)));
    }
    return report;
}

/// ergodic: power norms of C_t, C_0 and S_t sections and the decay of the
/// Cesàro means of C_t toward the projection f(0) h_t.
inline Report cmd_ergodic(const RunConfig& config) {
    Report report;
    report.command = "ergodic";
    report.config = config.to_json();

    const auto c0 = power_norms(OperatorKernel::hardy(), 256, config.section_degree);
    double c0_dev = 0.0;
    for (const auto& pn : c0) {
        report.rows.push_back({"c0_power", 0.0, Exponent(2.0), pn.n, pn.norm, std::nullopt, std::nullopt, std::nullopt});
        c0_dev = std::max(c0_dev, std::abs(pn.norm - 1.0));
    }
    report.add(check_le("c0_powers_unit", c0_dev, 0.0, 1e-12));

    for (double t : config.t_values) {
        const auto ct = power_norms(OperatorKernel::cesaro(t), 256, config.section_degree);
        double max_all = 0.0;
        double max_early = 0.0;
        for (const auto& pn : ct) {
            report.rows.push_back({"ct_power", t, Exponent(2.0), pn.n, pn.norm, std::nullopt, std::nullopt, std::nullopt});
            max_all = std::max(max_all, pn.norm);
            if (pn.n <= 32) {
                max_early = std::max(max_early, pn.norm);
            }
        }
        report.add(check_le("ct_power_bounded" + detail::cell(t), max_all, 1.05 * max_early));

        const auto st = power_norms(OperatorKernel::shifted_cesaro(t), 64, config.section_degree);
        for (const auto& pn : st) {
            report.rows.push_back({"st_power", t, Exponent(2.0), pn.n, pn.norm, std::nullopt, pn.root(), std::nullopt});
        }
        report.add(check_lt("st_power_decay" + detail::cell(t), st.back().norm, st[3].norm));

        const TaylorSeries one = TaylorSeries::monomial(0, config.degree);
        std::vector<ErgodicError> errors;
        for (std::size_t n = 1; n <= 256; n *= 2) {
            errors.push_back({n, ergodic_limit_error(t, one, n, Exponent(2.0), config.degree)});
            report.rows.push_back({"ergodic_error", t, Exponent(2.0), n, errors.back().error, std::nullopt,
                                   std::nullopt, std::nullopt});
        }
        for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
            if (errors[i].n >= 8) {
                report.add(check_le("ergodic_error_nonincreasing" + detail::cell(t) + "[n=" +
                                        std::to_string(errors[i].n) + "]",
                                    errors[i + 1].error, errors[i].error, 1e-15));
            }
        }
    }
    return report;
}

inline Report cmd_all(const RunConfig& config) {
    Report report;
    report.command = "all";
    report.config = config.to_json();
    for (Report part : {cmd_norms(config), cmd_spectrum(config), cmd_ergodic(config)}) {
        for (auto& row : part.rows) {
            row.record = part.command + "." + row.record;
            report.rows.push_back(std::move(row));
        }
        for (auto& a : part.assertions) {
            a.name = part.command + "." + a.name;
            report.assertions.push_back(std::move(a));
        }
    }
    return report;
}

}  // namespace cesaro
