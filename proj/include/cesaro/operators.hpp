#pragma once

/// \file
/// \brief Coefficient-space actions of the generalized Cesàro operators and the
///        shift / multiplication / Volterra operators built from them, plus their
///        dense finite sections.
///
/// Every `apply_*` works directly on Taylor coefficients in O(N) (O(N * N_g) for
/// the Volterra kinds). Operators that are lower triangular in the monomial basis
/// keep the input degree, so applying them to a degree-N series gives exactly the
/// degree-N finite section applied to it. Pad the input with `resized()` to see
/// more of the output of, say, C_t applied to a polynomial.

#include "cesaro/series.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cesaro {

/// C_t: y_n = (t^n f_0 + t^{n-1} f_1 + ... + f_n)/(n+1), by the prefix recursion
/// s_n = t s_{n-1} + f_n, y_n = s_n/(n+1).
inline TaylorSeries apply_ct(double t, const TaylorSeries& f) {
    require_cesaro_parameter(t);
    std::vector<complex> y(f.size());
    complex s{0.0, 0.0};
    for (std::size_t n = 0; n < y.size(); ++n) {
        s = t * s + f[n];
        y[n] = s / static_cast<double>(n + 1);
    }
    return TaylorSeries(std::move(y), f.truncated());
}

/// Hardy operator C_0 (diagonal 1/(n+1)).
inline TaylorSeries apply_c0(const TaylorSeries& f) {
    std::vector<complex> y(f.size());
    for (std::size_t n = 0; n < y.size(); ++n) {
        y[n] = f[n] / static_cast<double>(n + 1);
    }
    return TaylorSeries(std::move(y), f.truncated());
}

/// Classical Cesàro average C_1. Only meaningful coefficient-wise; it does not act on H^inf.
inline TaylorSeries apply_c1(const TaylorSeries& f) {
    std::vector<complex> y(f.size());
    complex s{0.0, 0.0};
    for (std::size_t n = 0; n < y.size(); ++n) {
        s += f[n];
        y[n] = s / static_cast<double>(n + 1);
    }
    return TaylorSeries(std::move(y), f.truncated());
}

/// Forward shift (Sf)(z) = z f(z). The degree grows by one unless it would exceed `cap`.
inline TaylorSeries apply_shift(const TaylorSeries& f, std::size_t cap = default_degree_cap) {
    const bool cut = f.degree() + 1 > cap;
    std::vector<complex> y(cut ? f.size() : f.size() + 1, complex{0.0, 0.0});
    for (std::size_t n = 0; n + 1 < y.size(); ++n) {
        y[n + 1] = f[n];
    }
    return TaylorSeries(std::move(y), f.truncated() || cut);
}

/// Backward shift (Bf)(z) = (f(z) - f(0))/z.
inline TaylorSeries apply_backshift(const TaylorSeries& f) {
    if (f.degree() == 0) {
        return TaylorSeries(0);
    }
    std::vector<complex> y(f.degree());
    for (std::size_t n = 0; n < y.size(); ++n) {
        y[n] = f[n + 1];
    }
    return TaylorSeries(std::move(y), f.truncated());
}

/// Multiplication by h_t: y_n = sum_{k<=n} t^{n-k} f_k.
inline TaylorSeries apply_mult_ht(double t, const TaylorSeries& f) {
    require_cesaro_parameter(t);
    std::vector<complex> y(f.size());
    complex s{0.0, 0.0};
    for (std::size_t n = 0; n < y.size(); ++n) {
        s = t * s + f[n];
        y[n] = s;
    }
    return TaylorSeries(std::move(y), f.truncated());
}

namespace detail {

// coefficients of f * g', the integrand of both Volterra operators
inline TaylorSeries volterra_integrand(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap) {
    return cauchy_product(f, derivative(g), cap);
}

}  // namespace detail

/// (T_g f)(z) = int_0^z f(w) g'(w) dw. Output degree deg(f) + deg(g), capped.
inline TaylorSeries apply_tg(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap = default_degree_cap) {
    const TaylorSeries c = detail::volterra_integrand(g, f, cap == 0 ? 0 : cap - 1);
    std::vector<complex> y(c.size() + 1, complex{0.0, 0.0});
    for (std::size_t n = 1; n < y.size(); ++n) {
        y[n] = c[n - 1] / static_cast<double>(n);
    }
    return TaylorSeries(std::move(y), c.truncated());
}

/// (V_g f)(z) = (1/z) int_0^z f(w) g'(w) dw. At z = 0 this takes the continuous
/// value f(0) g'(0), which equals f(0) whenever g'(0) = 1 (as for g_t).
inline TaylorSeries apply_vg(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap = default_degree_cap) {
    const TaylorSeries c = detail::volterra_integrand(g, f, cap);
    std::vector<complex> y(c.size());
    for (std::size_t n = 0; n < y.size(); ++n) {
        y[n] = c[n] / static_cast<double>(n + 1);
    }
    return TaylorSeries(std::move(y), c.truncated());
}

/// S_t = S o C_t (= T_{g_t}).
inline TaylorSeries apply_st(double t, const TaylorSeries& f, std::size_t cap = default_degree_cap) {
    return apply_shift(apply_ct(t, f), cap);
}

enum class KernelKind {
    cesaro_t,
    hardy_c0,
    cesaro_c1,
    fwd_shift,
    back_shift,
    mult_ht,
    volterra_tg,
    volterra_vg,
    shifted_cesaro,
};

inline std::string_view to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::cesaro_t: return "cesaro";
        case KernelKind::hardy_c0: return "c0";
        case KernelKind::cesaro_c1: return "c1";
        case KernelKind::fwd_shift: return "shift";
        case KernelKind::back_shift: return "backshift";
        case KernelKind::mult_ht: return "mult";
        case KernelKind::volterra_tg: return "tg";
        case KernelKind::volterra_vg: return "vg";
        case KernelKind::shifted_cesaro: return "st";
    }
    return "unknown";
}

inline KernelKind kernel_kind_from_string(std::string_view name) {
    for (auto kind : {KernelKind::cesaro_t, KernelKind::hardy_c0, KernelKind::cesaro_c1, KernelKind::fwd_shift,
                      KernelKind::back_shift, KernelKind::mult_ht, KernelKind::volterra_tg, KernelKind::volterra_vg,
                      KernelKind::shifted_cesaro}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw unsupported_kernel("unknown kernel '" + std::string(name) + "'");
}

/// A named, parameterized coefficient transform.
class OperatorKernel {
  public:
    static OperatorKernel cesaro(double t) { return {KernelKind::cesaro_t, checked(t), std::nullopt}; }
    static OperatorKernel hardy() { return {KernelKind::hardy_c0, std::nullopt, std::nullopt}; }
    static OperatorKernel cesaro_one() { return {KernelKind::cesaro_c1, std::nullopt, std::nullopt}; }
    static OperatorKernel shift() { return {KernelKind::fwd_shift, std::nullopt, std::nullopt}; }
    static OperatorKernel backshift() { return {KernelKind::back_shift, std::nullopt, std::nullopt}; }
    static OperatorKernel mult(double t) { return {KernelKind::mult_ht, checked(t), std::nullopt}; }
    static OperatorKernel shifted_cesaro(double t) { return {KernelKind::shifted_cesaro, checked(t), std::nullopt}; }
    static OperatorKernel volterra_t(TaylorSeries g) { return {KernelKind::volterra_tg, std::nullopt, std::move(g)}; }
    static OperatorKernel volterra_v(TaylorSeries g) { return {KernelKind::volterra_vg, std::nullopt, std::move(g)}; }

    /// Build from a kind plus whichever parameter it needs.
    static OperatorKernel make(KernelKind kind, std::optional<double> t, std::optional<TaylorSeries> g) {
        const auto need_t = [&] {
            if (!t) {
                throw domain_error(std::string(to_string(kind)) + " kernel needs a parameter t");
            }
            return *t;
        };
        const auto need_g = [&] {
            if (!g) {
                throw domain_error(std::string(to_string(kind)) + " kernel needs a symbol g");
            }
            return std::move(*g);
        };
        switch (kind) {
            case KernelKind::cesaro_t: return cesaro(need_t());
            case KernelKind::hardy_c0: return hardy();
            case KernelKind::cesaro_c1: return cesaro_one();
            case KernelKind::fwd_shift: return shift();
            case KernelKind::back_shift: return backshift();
            case KernelKind::mult_ht: return mult(need_t());
            case KernelKind::shifted_cesaro: return shifted_cesaro(need_t());
            case KernelKind::volterra_tg: return volterra_t(need_g());
            case KernelKind::volterra_vg: return volterra_v(need_g());
        }
        throw unsupported_kernel("unknown kernel kind");
    }

    [[nodiscard]] KernelKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::optional<double>& t() const noexcept { return t_; }
    [[nodiscard]] const std::optional<TaylorSeries>& symbol() const noexcept { return g_; }

    /// Full action; the degree may grow for shift-like kinds.
    [[nodiscard]] TaylorSeries apply(const TaylorSeries& f, std::size_t cap = default_degree_cap) const {
        switch (kind_) {
            case KernelKind::cesaro_t: return apply_ct(*t_, f);
            case KernelKind::hardy_c0: return apply_c0(f);
            case KernelKind::cesaro_c1: return apply_c1(f);
            case KernelKind::fwd_shift: return apply_shift(f, cap);
            case KernelKind::back_shift: return apply_backshift(f);
            case KernelKind::mult_ht: return apply_mult_ht(*t_, f);
            case KernelKind::volterra_tg: return apply_tg(*g_, f, cap);
            case KernelKind::volterra_vg: return apply_vg(*g_, f, cap);
            case KernelKind::shifted_cesaro: return apply_st(*t_, f, cap);
        }
        throw unsupported_kernel("unknown kernel kind");
    }

    /// Action compressed to the degree of the input, i.e. the finite section
    /// of matching size applied to f.
    [[nodiscard]] TaylorSeries apply_truncated(const TaylorSeries& f) const {
        const TaylorSeries y = apply(f, f.degree() + 1);
        // dropping the tail here is the compression itself, not a loss to flag
        std::vector<complex> c(f.size());
        for (std::size_t n = 0; n < c.size(); ++n) {
            c[n] = y[n];
        }
        return TaylorSeries(std::move(c), f.truncated());
    }

  private:
    OperatorKernel(KernelKind kind, std::optional<double> t, std::optional<TaylorSeries> g)
        : kind_(kind), t_(t), g_(std::move(g)) {}

    static double checked(double t) {
        require_cesaro_parameter(t);
        return t;
    }

    KernelKind kind_;
    std::optional<double> t_;
    std::optional<TaylorSeries> g_;
};

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Vector to_vector(const TaylorSeries& f, std::size_t degree) {
    Vector v(static_cast<Eigen::Index>(degree + 1));
    for (std::size_t n = 0; n <= degree; ++n) {
        v(static_cast<Eigen::Index>(n)) = f[n];
    }
    return v;
}

inline TaylorSeries to_series(const Vector& v) {
    return TaylorSeries(std::vector<complex>(v.data(), v.data() + v.size()));
}

/// Leading (N+1) x (N+1) block of an operator's coefficient matrix:
/// entries(n, k) is coefficient n of op(z^k).
struct FiniteSection {
    Matrix entries;
    OperatorKernel op;
    std::size_t degree;

    /// The section applied to f, with f zero-padded or cut to the section degree.
    [[nodiscard]] TaylorSeries apply(const TaylorSeries& f) const { return to_series(entries * to_vector(f, degree)); }
};

inline FiniteSection finite_section(const OperatorKernel& op, std::size_t degree) {
    const auto size = static_cast<Eigen::Index>(degree + 1);
    Matrix a = Matrix::Zero(size, size);
    const double t = op.t().value_or(0.0);

    // t^j for j = 0..N (with 0^0 = 1)
    std::vector<double> powers(degree + 1);
    powers[0] = 1.0;
    for (std::size_t j = 1; j <= degree; ++j) {
        powers[j] = powers[j - 1] * t;
    }

    switch (op.kind()) {
        case KernelKind::cesaro_t:
        case KernelKind::mult_ht:
        case KernelKind::cesaro_c1: {
            const bool average = op.kind() != KernelKind::mult_ht;
            const bool flat = op.kind() == KernelKind::cesaro_c1;
            for (Eigen::Index n = 0; n < size; ++n) {
                const double scale = average ? 1.0 / static_cast<double>(n + 1) : 1.0;
                for (Eigen::Index k = 0; k <= n; ++k) {
                    a(n, k) = (flat ? 1.0 : powers[static_cast<std::size_t>(n - k)]) * scale;
                }
            }
            break;
        }
        case KernelKind::hardy_c0:
            for (Eigen::Index n = 0; n < size; ++n) {
                a(n, n) = 1.0 / static_cast<double>(n + 1);
            }
            break;
        case KernelKind::fwd_shift:
            for (Eigen::Index n = 1; n < size; ++n) {
                a(n, n - 1) = 1.0;
            }
            break;
        case KernelKind::back_shift:
            for (Eigen::Index n = 0; n + 1 < size; ++n) {
                a(n, n + 1) = 1.0;
            }
            break;
        case KernelKind::shifted_cesaro:
            for (Eigen::Index n = 1; n < size; ++n) {
                for (Eigen::Index k = 0; k < n; ++k) {
                    a(n, k) = powers[static_cast<std::size_t>(n - 1 - k)] / static_cast<double>(n);
                }
            }
            break;
        case KernelKind::volterra_tg:
        case KernelKind::volterra_vg:
            // no closed form for a general symbol: one column per basis monomial
            for (Eigen::Index k = 0; k < size; ++k) {
                const TaylorSeries column = op.apply_truncated(TaylorSeries::monomial(static_cast<std::size_t>(k), degree));
                for (Eigen::Index n = 0; n < size; ++n) {
                    a(n, k) = column[static_cast<std::size_t>(n)];
                }
            }
            break;
    }
    return FiniteSection{std::move(a), op, degree};
}

}  // namespace cesaro
