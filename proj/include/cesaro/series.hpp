#pragma once

/// \file
/// \brief Truncated Taylor series on the unit disc and the two special kernels
///        h_t(z) = 1/(1 - tz) and g_t(z) = -log(1 - tz)/t.

#include "cesaro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

using complex = std::complex<double>;

/// Library default truncation degree.
inline constexpr std::size_t default_degree = 4096;
/// Default cap on the degree of products and shifted series.
inline constexpr std::size_t default_degree_cap = 2 * default_degree;

/// Hardy exponent: a real p >= 1 or the symbol INF.
class Exponent {
  public:
    constexpr Exponent() = default;

    explicit Exponent(double p) : value_(p) {
        if (!(p >= 1.0)) {
            throw domain_error("Hardy exponent must satisfy p >= 1 (got " + std::to_string(p) + ")");
        }
    }

    static Exponent inf() { return Exponent(std::numeric_limits<double>::infinity()); }

    [[nodiscard]] bool is_inf() const noexcept { return std::isinf(value_); }
    [[nodiscard]] double value() const noexcept { return value_; }

    [[nodiscard]] std::string to_string() const {
        if (is_inf()) {
            return "inf";
        }
        std::string s = std::to_string(value_);
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') {
            s.pop_back();
        }
        return s;
    }

    friend bool operator==(const Exponent&, const Exponent&) = default;
    friend auto operator<=>(const Exponent&, const Exponent&) = default;

  private:
    double value_ = 1.0;
};

/// Throws unless t is an admissible Cesàro parameter, i.e. t in [0,1).
inline void require_cesaro_parameter(double t, const char* what = "t") {
    if (!(t >= 0.0 && t < 1.0)) {
        throw domain_error(std::string(what) + " must lie in [0,1) (got " + std::to_string(t) + ")");
    }
}

/// f(z) = sum_{n=0}^{N} coeffs[n] z^n.
///
/// Values are immutable once built. `truncated()` records that some operation
/// dropped coefficients beyond its degree cap while producing this series.
class TaylorSeries {
  public:
    /// The zero series of degree `degree`.
    explicit TaylorSeries(std::size_t degree = 0) : coeffs_(degree + 1, complex{0.0, 0.0}) {}

    explicit TaylorSeries(std::vector<complex> coeffs, bool truncated = false)
        : coeffs_(std::move(coeffs)), truncated_(truncated) {
        if (coeffs_.empty()) {
            throw domain_error("a Taylor series needs at least one coefficient");
        }
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            if (!std::isfinite(coeffs_[n].real()) || !std::isfinite(coeffs_[n].imag())) {
                throw non_finite_coefficient(n);
            }
        }
    }

    TaylorSeries(std::initializer_list<complex> coeffs) : TaylorSeries(std::vector<complex>(coeffs)) {}

    /// z^n as a series of degree max(n, degree).
    static TaylorSeries monomial(std::size_t n, std::size_t degree = 0) {
        std::vector<complex> c(std::max(n, degree) + 1, complex{0.0, 0.0});
        c[n] = 1.0;
        return TaylorSeries(std::move(c));
    }

    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool truncated() const noexcept { return truncated_; }
    [[nodiscard]] std::span<const complex> coeffs() const noexcept { return coeffs_; }

    /// Coefficient n, or 0 beyond the truncation degree.
    [[nodiscard]] complex operator[](std::size_t n) const noexcept {
        return n < coeffs_.size() ? coeffs_[n] : complex{0.0, 0.0};
    }

    /// Same function with the coefficient vector zero-padded (or cut) to `degree`.
    [[nodiscard]] TaylorSeries resized(std::size_t degree) const {
        std::vector<complex> c(coeffs_.begin(), coeffs_.begin() + std::min(coeffs_.size(), degree + 1));
        c.resize(degree + 1, complex{0.0, 0.0});
        return TaylorSeries(std::move(c), truncated_ || degree + 1 < coeffs_.size());
    }

    friend TaylorSeries operator+(const TaylorSeries& f, const TaylorSeries& g) {
        std::vector<complex> c(std::max(f.size(), g.size()));
        for (std::size_t n = 0; n < c.size(); ++n) {
            c[n] = f[n] + g[n];
        }
        return TaylorSeries(std::move(c), f.truncated_ || g.truncated_);
    }

    friend TaylorSeries operator-(const TaylorSeries& f, const TaylorSeries& g) {
        std::vector<complex> c(std::max(f.size(), g.size()));
        for (std::size_t n = 0; n < c.size(); ++n) {
            c[n] = f[n] - g[n];
        }
        return TaylorSeries(std::move(c), f.truncated_ || g.truncated_);
    }

    friend TaylorSeries operator*(complex a, const TaylorSeries& f) {
        std::vector<complex> c(f.coeffs_);
        for (auto& x : c) {
            x *= a;
        }
        return TaylorSeries(std::move(c), f.truncated_);
    }

    friend bool operator==(const TaylorSeries& f, const TaylorSeries& g) { return f.coeffs_ == g.coeffs_; }

  private:
    std::vector<complex> coeffs_;
    bool truncated_ = false;
};

inline TaylorSeries make_series(std::span<const complex> coeffs) {
    return TaylorSeries(std::vector<complex>(coeffs.begin(), coeffs.end()));
}

/// Horner evaluation of the truncated polynomial at |z| <= 1.
inline complex evaluate(const TaylorSeries& f, complex z) {
    // a few ulps of slack so that r*exp(i theta) with r = 1 is accepted
    if (std::abs(z) > 1.0 + 8 * std::numeric_limits<double>::epsilon()) {
        throw domain_error("evaluation point outside the closed unit disc");
    }
    const auto c = f.coeffs();
    complex value{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        value = value * z + *it;
    }
    return value;
}

/// Coefficients of f*g up to degree min(N_f + N_g, cap); `truncated()` is set
/// when the cap cut the exact product.
inline TaylorSeries cauchy_product(const TaylorSeries& f, const TaylorSeries& g,
                                   std::size_t cap = default_degree_cap) {
    const std::size_t full = f.degree() + g.degree();
    const std::size_t degree = std::min(full, cap);
    std::vector<complex> c(degree + 1, complex{0.0, 0.0});
    const auto a = f.coeffs();
    const auto b = g.coeffs();
    for (std::size_t k = 0; k < a.size() && k <= degree; ++k) {
        if (a[k] == complex{0.0, 0.0}) {
            continue;
        }
        const std::size_t jmax = std::min(b.size() - 1, degree - k);
        for (std::size_t j = 0; j <= jmax; ++j) {
            c[k + j] += a[k] * b[j];
        }
    }
    return TaylorSeries(std::move(c), f.truncated() || g.truncated() || full > cap);
}

/// f' truncated at degree max(N - 1, 0).
inline TaylorSeries derivative(const TaylorSeries& f) {
    if (f.degree() == 0) {
        return TaylorSeries(0);
    }
    std::vector<complex> c(f.degree());
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] = static_cast<double>(n + 1) * f[n + 1];
    }
    return TaylorSeries(std::move(c), f.truncated());
}

/// h_t(z) = 1/(1 - tz): coefficients t^n, n = 0..N.
inline TaylorSeries geometric_kernel(double t, std::size_t degree = default_degree) {
    require_cesaro_parameter(t);
    std::vector<complex> c(degree + 1);
    double power = 1.0;
    for (auto& x : c) {
        x = power;
        power *= t;
    }
    return TaylorSeries(std::move(c));
}

/// g_t(z) = -log(1 - tz)/t = sum_{n>=0} t^n z^{n+1}/(n+1), so that g_t' = h_t and
/// g_t(z)/z = C_t 1. Requires t in (0,1).
inline TaylorSeries log_kernel(double t, std::size_t degree = default_degree) {
    if (!(t > 0.0 && t < 1.0)) {
        throw domain_error("log kernel needs t in (0,1) (got " + std::to_string(t) + ")");
    }
    std::vector<complex> c(degree + 1, complex{0.0, 0.0});
    double power = 1.0;
    for (std::size_t n = 1; n <= degree; ++n) {
        c[n] = power / static_cast<double>(n);
        power *= t;
    }
    return TaylorSeries(std::move(c));
}

}  // namespace cesaro
