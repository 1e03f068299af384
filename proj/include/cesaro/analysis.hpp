#pragma once

/// \file
/// \brief Integral means M_p(r, f) on circles, Hardy and sup norms of truncated
///        series, closed-form bounds for the norm of C_t, and H^2 operator norms
///        of finite sections.

#include "cesaro/operators.hpp"
#include "cesaro/series.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cesaro {

/// Quadrature node count used when none is given: max(4096, 4(N+1)) rounded up to a power of two.
inline std::size_t default_nodes(std::size_t degree) {
    return std::bit_ceil(std::max<std::size_t>(4096, 4 * (degree + 1)));
}

namespace detail {

// the FFTW planner is not reentrant
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct fftw_buffer_deleter {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

}  // namespace detail

/// Values f(r e^{2 pi i j / K}), j = 0..K-1, computed as one inverse DFT of the
/// coefficients r^n f_n folded modulo K. Exact for any degree (no aliasing error
/// beyond rounding), O(K log K + N).
inline std::vector<complex> circle_samples(const TaylorSeries& f, double r, std::size_t nodes) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw domain_error("radius must lie in [0,1] (got " + std::to_string(r) + ")");
    }
    if (nodes == 0 || !std::has_single_bit(nodes)) {
        throw domain_error("quadrature node count must be a power of two");
    }
    std::unique_ptr<fftw_complex[], detail::fftw_buffer_deleter> buf(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nodes)));
    std::fill_n(&buf[0][0], 2 * nodes, 0.0);

    double rn = 1.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        const complex c = rn * f[n];
        buf[n % nodes][0] += c.real();
        buf[n % nodes][1] += c.imag();
        rn *= r;
    }

    fftw_plan plan;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(nodes), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<complex> out(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        out[j] = complex{buf[j][0], buf[j][1]};
    }
    return out;
}

struct NormReport {
    double value = 0.0;
    Exponent p;
    double r = 1.0;
    std::size_t quadrature_nodes = 0;
    /// |f_N| r^N: size of the last kept coefficient, a proxy for how much of the
    /// represented function was cut off by the truncation.
    double tail_bound = 0.0;
    /// |M(K) - M(2K)|; zero when the rule is exact (p = 2 with K > N).
    double refinement_error = 0.0;
    /// Result of the r -> 1 monotonicity check (always true when not requested).
    bool monotone_in_r = true;
};

namespace detail {

inline double discrete_mean(std::span<const complex> samples, Exponent p) {
    if (p.is_inf()) {
        double m = 0.0;
        for (const auto& z : samples) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }
    const double q = p.value();
    double acc = 0.0;
    for (const auto& z : samples) {
        const double a = std::abs(z);
        acc += q == 2.0 ? a * a : std::pow(a, q);
    }
    acc /= static_cast<double>(samples.size());
    return q == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / q);
}

}  // namespace detail

/// M_p(r, f) by the K-point uniform rule on |z| = r (max over the nodes for p = INF).
/// `nodes == 0` selects `default_nodes(f.degree())`.
inline NormReport mp_mean(const TaylorSeries& f, double r, Exponent p, std::size_t nodes = 0) {
    if (nodes == 0) {
        nodes = default_nodes(f.degree());
    }
    NormReport report;
    report.p = p;
    report.r = r;
    report.quadrature_nodes = nodes;
    report.value = detail::discrete_mean(circle_samples(f, r, nodes), p);
    report.tail_bound = std::abs(f[f.degree()]) * std::pow(r, static_cast<double>(f.degree()));

    const bool exact = !p.is_inf() && p.value() == 2.0 && nodes > f.degree();
    if (!exact) {
        const double refined = detail::discrete_mean(circle_samples(f, r, 2 * nodes), p);
        report.refinement_error = std::abs(refined - report.value);
    }
    return report;
}

/// Radii 1 - 2^{-j}, j = 0..12, on which monotonicity of M_p(r, f) is checked.
inline std::vector<double> radius_schedule() {
    std::vector<double> r(13);
    for (std::size_t j = 0; j < r.size(); ++j) {
        r[j] = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    }
    return r;
}

/// ||f||_p. For a polynomial M_p(r, f) increases to its value at r = 1, so the
/// norm is M_p(1, f); with `check_monotone` the increase is verified on
/// `radius_schedule()`.
inline NormReport hardy_norm(const TaylorSeries& f, Exponent p, bool check_monotone = true, std::size_t nodes = 0) {
    NormReport report = mp_mean(f, 1.0, p, nodes);
    if (check_monotone) {
        const double tol = 1e-12 * std::max(report.value, 1e-300);
        double previous = 0.0;
        for (double r : radius_schedule()) {
            const double m = mp_mean(f, r, p, report.quadrature_nodes).value;
            if (m + tol < previous) {
                report.monotone_in_r = false;
            }
            previous = m;
        }
        if (report.value + tol < previous) {
            report.monotone_in_r = false;
        }
    }
    return report;
}

/// ||f||_inf, attained on the boundary circle by the maximum-modulus principle.
inline NormReport sup_norm(const TaylorSeries& f, bool check_monotone = true, std::size_t nodes = 0) {
    return hardy_norm(f, Exponent::inf(), check_monotone, nodes);
}

/// Closed-form upper bounds for ||C_t|| on H^p (p = INF: the exact norm on the disc algebra).
struct CtNormBound {
    double value = 1.0;   ///< refined bound
    double coarse = 1.0;  ///< 1/(1-t)
    std::string formula;  ///< "unit" (t = 0), "log" (p = 1 or INF), "power" (1 < p < INF)
};

inline CtNormBound upper_bound_ct(double t, Exponent p) {
    require_cesaro_parameter(t);
    CtNormBound b;
    b.coarse = 1.0 / (1.0 - t);
    if (t == 0.0) {
        b.value = 1.0;
        b.formula = "unit";
    } else if (p.is_inf() || p.value() == 1.0) {
        b.value = -std::log1p(-t) / t;
        b.formula = "log";
    } else {
        const double q = p.value();
        // ((1-t)^{1-p} - 1) / (t (p-1)), written to keep precision for small t
        const double inner = std::expm1((1.0 - q) * std::log1p(-t)) / (t * (q - 1.0));
        b.value = std::pow(inner, 1.0 / q);
        b.formula = "power";
    }
    return b;
}

/// max over the test set of ||C_t f||_p / ||f||_p; h_t and 1 are always included.
/// Every function is zero-padded to at least `degree` before C_t is applied.
inline double opnorm_lower(double t, Exponent p, std::span<const TaylorSeries> testset,
                           std::size_t degree = default_degree) {
    require_cesaro_parameter(t);
    if (testset.empty()) {
        throw empty_test_set();
    }
    std::vector<TaylorSeries> candidates;
    candidates.reserve(testset.size() + 2);
    candidates.push_back(geometric_kernel(t, degree));
    candidates.push_back(TaylorSeries::monomial(0, degree));
    for (const auto& f : testset) {
        candidates.push_back(f.resized(std::max(degree, f.degree())));
    }

    double best = 0.0;
    for (const auto& f : candidates) {
        const double denom = hardy_norm(f, p, false).value;
        if (denom == 0.0) {
            throw domain_error("operator-norm test set contains the zero function");
        }
        best = std::max(best, hardy_norm(apply_ct(t, f), p, false).value / denom);
    }
    return best;
}

/// Largest singular value of a dense matrix by power iteration on A^H A, seeded
/// with the all-ones vector. Stops when the estimate changes by less than
/// `tol` (relative). The largest column and row norms are also lower bounds for
/// the spectral norm; the result is the maximum of the three, which makes
/// diagonal and isometric sections exact.
inline double h2_opnorm(const Matrix& a, double tol = 1e-10, std::size_t max_iter = 100000) {
    if (a.size() == 0) {
        return 0.0;
    }
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0.0;
    }
    const Matrix b = a / scale;
    const double line_bound = std::max(b.colwise().norm().maxCoeff(), b.rowwise().norm().maxCoeff());
    Vector v = Vector::Ones(b.cols()) / std::sqrt(static_cast<double>(b.cols()));
    double sigma = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        const Vector w = b * v;
        const double next = w.norm();
        if (next == 0.0) {
            // the seed lies in the kernel: restart from the largest column
            Eigen::Index k = 0;
            b.colwise().norm().maxCoeff(&k);
            v = Vector::Unit(b.cols(), k);
            sigma = 0.0;
            continue;
        }
        const Vector u = b.adjoint() * w;
        v = u / u.norm();
        if (std::abs(next - sigma) <= tol * next) {
            return std::max(next, line_bound) * scale;
        }
        sigma = next;
    }
    throw no_convergence("power iteration did not reach tolerance " + std::to_string(tol) + " in " +
                         std::to_string(max_iter) + " iterations");
}

/// Exact H^2 norm of the section (||f||_2^2 = sum |f_n|^2 makes it the spectral norm).
inline double h2_opnorm(const FiniteSection& section, double tol = 1e-10, std::size_t max_iter = 100000) {
    return h2_opnorm(section.entries, tol, max_iter);
}

struct JensenResult {
    double lhs = 0.0;  ///< |mean(h)|^p
    double rhs = 0.0;  ///< mean(|h|^p)
    bool holds = true;
};

/// Discrete form of |int_0^1 h|^p <= int_0^1 |h|^p on a uniform grid.
inline JensenResult jensen_check(std::span<const complex> samples, double p) {
    if (!(p >= 1.0)) {
        throw domain_error("Jensen check needs p >= 1");
    }
    if (samples.empty()) {
        throw domain_error("Jensen check needs at least one sample");
    }
    complex mean{0.0, 0.0};
    double pmean = 0.0;
    for (const auto& h : samples) {
        mean += h;
        pmean += std::pow(std::abs(h), p);
    }
    const auto count = static_cast<double>(samples.size());
    JensenResult out;
    out.lhs = std::pow(std::abs(mean / count), p);
    out.rhs = pmean / count;
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

/// gamma(t) = [1 - (1-t)^alpha](1-t) - alpha t; negative on (0,1) for alpha > 0.
inline double bound_gamma(double t, double alpha) {
    return (1.0 - std::pow(1.0 - t, alpha)) * (1.0 - t) - alpha * t;
}

struct BoundRow {
    double t = 0.0;
    Exponent p;
    double lower = 0.0;
    double upper = 0.0;
    std::string formula_id;
    /// gamma(t) with alpha = p - 1 (comparison rows only).
    std::optional<double> gamma;
    bool pass = true;
};

struct BoundTable {
    std::vector<BoundRow> rows;

    /// lower <= upper (1e-12 slack) on every row.
    [[nodiscard]] bool consistent() const {
        return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.lower <= r.upper + 1e-12; });
    }
    [[nodiscard]] bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.pass; });
    }
};

/// Refined bound vs. 1/(1-t) on a (t, p) grid. Each row has lower = refined
/// bound, upper = 1/(1-t), and passes when lower < upper strictly and, for
/// p > 1, gamma(t) < 0 with alpha = p - 1. At p = 1 (alpha = 0) gamma vanishes
/// identically, so only the direct comparison applies there.
inline BoundTable bound_comparison(std::span<const double> t_grid, std::span<const double> p_grid) {
    BoundTable table;
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) {
            throw domain_error("bound comparison needs t in (0,1)");
        }
        for (double q : p_grid) {
            const Exponent p(q);
            if (p.is_inf()) {
                throw domain_error("bound comparison needs a finite p");
            }
            const CtNormBound b = upper_bound_ct(t, p);
            BoundRow row;
            row.t = t;
            row.p = p;
            row.lower = b.value;
            row.upper = b.coarse;
            row.formula_id = b.formula + "<coarse";
            row.pass = b.value < b.coarse;
            if (q > 1.0) {
                row.gamma = bound_gamma(t, q - 1.0);
                row.pass = row.pass && *row.gamma < 0.0;
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace cesaro
