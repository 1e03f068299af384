#pragma once

/// \file
/// \brief Eigenvectors and spectra of C_t and S_t, Cesàro means and the
///        mean-ergodic projection, power norms of finite sections, compactness
///        tails and the spectral certificate for uniform mean ergodicity.

#include "cesaro/analysis.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/random.hpp"
#include "cesaro/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

/// Largest finite-section degree accepted by the dense power studies.
inline constexpr std::size_t max_power_section_degree = 2048;

/// Eigenvector of C_t for the eigenvalue 1/(m+1): the series of z^m (1 - tz)^{-(m+1)},
/// built from (n - m) x_n = t n x_{n-1}, x_m = 1.
inline TaylorSeries eigenvector(double t, std::size_t m, std::size_t degree = default_degree) {
    require_cesaro_parameter(t);
    if (m > degree) {
        throw domain_error("eigenvector index m = " + std::to_string(m) + " exceeds degree " + std::to_string(degree));
    }
    std::vector<complex> x(degree + 1, complex{0.0, 0.0});
    x[m] = 1.0;
    for (std::size_t n = m + 1; n <= degree; ++n) {
        x[n] = x[n - 1] * (t * static_cast<double>(n) / static_cast<double>(n - m));
    }
    return TaylorSeries(std::move(x));
}

/// ||C_t g_m - g_m/(m+1)||_p / ||g_m||_p, ignoring the last `buffer` coefficients of the difference.
inline double eigen_residual(double t, std::size_t m, Exponent p, std::size_t degree = default_degree,
                             std::size_t buffer = 64) {
    const TaylorSeries g = eigenvector(t, m, degree);
    const TaylorSeries diff = apply_ct(t, g) - complex{1.0 / static_cast<double>(m + 1), 0.0} * g;
    std::vector<complex> c(diff.coeffs().begin(), diff.coeffs().end());
    const std::size_t keep = degree + 1 > buffer ? degree + 1 - buffer : 0;
    std::fill(c.begin() + static_cast<std::ptrdiff_t>(keep), c.end(), complex{0.0, 0.0});
    return hardy_norm(TaylorSeries(std::move(c)), p, false).value / hardy_norm(g, p, false).value;
}

struct DiagonalSpectrum {
    std::vector<double> eigenvalues;  ///< 1, 1/2, ..., 1/(N+1)
    bool accumulates_at_zero = true;  ///< 0 belongs to the spectrum as the limit point
};

/// {1/(m+1) : m = 0..N}: the diagonal of every triangular C_t section, whatever t.
inline DiagonalSpectrum diagonal_spectrum(std::size_t degree) {
    DiagonalSpectrum s;
    s.eigenvalues.resize(degree + 1);
    for (std::size_t m = 0; m <= degree; ++m) {
        s.eigenvalues[m] = 1.0 / static_cast<double>(m + 1);
    }
    return s;
}

/// Eigenvalues of a lower-triangular section read off its diagonal.
inline std::vector<complex> triangular_eigenvalues(const FiniteSection& section) {
    const Matrix& a = section.entries;
    for (Eigen::Index n = 0; n < a.rows(); ++n) {
        for (Eigen::Index k = n + 1; k < a.cols(); ++k) {
            if (a(n, k) != complex{0.0, 0.0}) {
                throw unsupported_kernel(std::string(to_string(section.op.kind())) +
                                         " section is not lower triangular");
            }
        }
    }
    std::vector<complex> d(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index n = 0; n < a.rows(); ++n) {
        d[static_cast<std::size_t>(n)] = a(n, n);
    }
    return d;
}

/// T_[n] f = (1/n) sum_{k=1}^n op^k f, with op compressed to the degree of f.
inline TaylorSeries cesaro_means(const OperatorKernel& op, const TaylorSeries& f, std::size_t n) {
    if (n == 0) {
        throw domain_error("Cesàro means need n >= 1");
    }
    TaylorSeries iterate = f;
    TaylorSeries mean(f.degree());
    for (std::size_t k = 1; k <= n; ++k) {
        iterate = op.apply_truncated(iterate);
        // running mean: mean_k = mean_{k-1} + (iterate - mean_{k-1}) / k
        mean = mean + complex{1.0 / static_cast<double>(k), 0.0} * (iterate - mean);
    }
    return mean;
}

/// Mean-ergodic projection of C_t: P f = f(0) h_t.
inline TaylorSeries ergodic_projection(double t, const TaylorSeries& f) {
    return f[0] * geometric_kernel(t, f.degree());
}

/// ||T_[n] f - P f||_p for T = C_t, with f zero-padded to at least `degree`.
inline double ergodic_limit_error(double t, const TaylorSeries& f, std::size_t n, Exponent p,
                                  std::size_t degree = default_degree) {
    const TaylorSeries padded = f.resized(std::max(degree, f.degree()));
    const TaylorSeries mean = cesaro_means(OperatorKernel::cesaro(t), padded, n);
    return hardy_norm(mean - ergodic_projection(t, padded), p, false).value;
}

/// a^n by repeated squaring.
inline Matrix matrix_power(const Matrix& a, std::size_t n) {
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (n > 0) {
        if ((n & 1U) != 0) {
            result = result * base;
        }
        n >>= 1U;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

struct PowerNorm {
    std::size_t n = 0;
    double norm = 0.0;  ///< ||op^n|| on the H^2 section

    /// ||op^n||^{1/n}, whose limit is the spectral radius.
    [[nodiscard]] double root() const { return std::pow(norm, 1.0 / static_cast<double>(n)); }
};

/// ||op^n||_{H^2} of the degree-N section for n = 1, 2, 4, ... <= nmax.
inline std::vector<PowerNorm> power_norms(const OperatorKernel& op, std::size_t nmax, std::size_t degree) {
    if (nmax == 0) {
        throw domain_error("power norms need nmax >= 1");
    }
    if (degree > max_power_section_degree) {
        throw domain_error("power studies are limited to degree " + std::to_string(max_power_section_degree));
    }
    std::vector<PowerNorm> out;
    Matrix power = finite_section(op, degree).entries;
    for (std::size_t n = 1; n <= nmax; n *= 2) {
        out.push_back({n, h2_opnorm(power)});
        if (2 * n <= nmax) {
            power = power * power;
        }
    }
    return out;
}

/// H^2 norm of the degree-N_large C_t section with its leading
/// (N_small+1) x (N_small+1) block removed: how far C_t is from that finite-rank piece.
inline double compact_tail(double t, std::size_t n_small, std::size_t n_large) {
    if (n_small > n_large) {
        throw domain_error("compact_tail needs N_small <= N_large");
    }
    Matrix a = finite_section(OperatorKernel::cesaro(t), n_large).entries;
    const auto head = static_cast<Eigen::Index>(n_small + 1);
    a.topLeftCorner(head, head).setZero();
    return h2_opnorm(a);
}

/// Hypotheses of the compact-operator mean ergodic theorem, checked for C_t.
struct ErgodicCertificate {
    bool spectrum_in_disc = false;  ///< triangular section, diagonal inside [0,1]
    bool one_on_circle = false;     ///< 1 is the only diagonal value of modulus 1; the rest lie in |z| <= delta
    bool ker_im_trivial = false;    ///< h_t spans Ker(I - C_t), h_t(0) = 1, and Im(I - C_t) vanishes at 0
    double delta = 0.0;             ///< largest modulus of the remaining eigenvalues
    double kernel_residual = 0.0;   ///< ||(I - C_t) h_t||_p / ||h_t||_p
    double image_at_zero = 0.0;     ///< max |((I - C_t) f)(0)| over the random sample

    [[nodiscard]] bool all() const { return spectrum_in_disc && one_on_circle && ker_im_trivial; }
};

inline ErgodicCertificate ergodic_certificate(double t, Exponent p, std::size_t degree, std::uint64_t seed = default_seed,
                                              std::size_t samples = 100) {
    require_cesaro_parameter(t);
    ErgodicCertificate cert;

    // the dense section is only needed for its diagonal and triangularity
    const std::size_t section_degree = std::min<std::size_t>(degree, 512);
    const auto eig = triangular_eigenvalues(finite_section(OperatorKernel::cesaro(t), section_degree));
    cert.spectrum_in_disc = std::all_of(eig.begin(), eig.end(), [](complex l) {
        return l.imag() == 0.0 && l.real() >= 0.0 && l.real() <= 1.0;
    });
    for (std::size_t m = 1; m < eig.size(); ++m) {
        cert.delta = std::max(cert.delta, std::abs(eig[m]));
    }
    cert.one_on_circle = eig[0] == complex{1.0, 0.0} && cert.delta <= 0.5;

    const TaylorSeries h = geometric_kernel(t, degree);
    cert.kernel_residual = hardy_norm(h - apply_ct(t, h), p, false).value / hardy_norm(h, p, false).value;

    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const TaylorSeries f = random_polynomial(rng, 32).resized(degree);
        const TaylorSeries image = f - apply_ct(t, f);
        cert.image_at_zero = std::max(cert.image_at_zero, std::abs(evaluate(image, 0.0)));
    }
    cert.ker_im_trivial = evaluate(h, 0.0) == complex{1.0, 0.0} && cert.kernel_residual <= 1e-12 &&
                          cert.image_at_zero == 0.0;
    return cert;
}

/// (S_t^n f)(0) = 0 for n = 1..nmax: the orbit of f leaves span{f} only into H^p_0.
inline bool orbit_containment_st(double t, const TaylorSeries& f, std::size_t nmax) {
    const OperatorKernel st = OperatorKernel::shifted_cesaro(t);
    TaylorSeries x = f;
    for (std::size_t n = 1; n <= nmax; ++n) {
        x = st.apply_truncated(x);
        if (evaluate(x, 0.0) != complex{0.0, 0.0}) {
            return false;
        }
    }
    return true;
}

struct EigenResidual {
    std::size_t m = 0;
    double residual = 0.0;
};

struct ErgodicError {
    std::size_t n = 0;
    double error = 0.0;
};

struct SpectralReport {
    double t = 0.0;
    std::vector<double> eigenvalues;
    std::vector<EigenResidual> eigen_residuals;
    std::vector<PowerNorm> power_norms;
    std::vector<ErgodicError> ergodic_errors;
    ErgodicCertificate certificate;
};

struct SpectralOptions {
    Exponent p{2.0};
    std::size_t degree = default_degree;   ///< series degree for residuals, means and the certificate
    std::size_t section_degree = 512;      ///< dense section degree for power norms
    std::size_t max_m = 10;
    std::size_t power_nmax = 256;
    std::size_t ergodic_nmax = 256;
    std::size_t listed_eigenvalues = 16;
    std::uint64_t seed = default_seed;
};

/// Everything the spectral study reports for C_t at one parameter value.
/// Ergodic errors are for f = 1 at n = 1, 2, 4, ..., ergodic_nmax.
inline SpectralReport spectral_report(double t, const SpectralOptions& opt = {}) {
    SpectralReport r;
    r.t = t;
    const auto spectrum = diagonal_spectrum(opt.degree);
    r.eigenvalues.assign(spectrum.eigenvalues.begin(),
                         spectrum.eigenvalues.begin() +
                             static_cast<std::ptrdiff_t>(std::min(opt.listed_eigenvalues, spectrum.eigenvalues.size())));
    for (std::size_t m = 0; m <= std::min(opt.max_m, opt.degree); ++m) {
        r.eigen_residuals.push_back({m, eigen_residual(t, m, opt.p, opt.degree)});
    }
    if (opt.power_nmax > 0) {
        r.power_norms = power_norms(OperatorKernel::cesaro(t), opt.power_nmax, opt.section_degree);
    }
    const TaylorSeries one = TaylorSeries::monomial(0, opt.degree);
    for (std::size_t n = 1; n <= opt.ergodic_nmax; n *= 2) {
        r.ergodic_errors.push_back({n, ergodic_limit_error(t, one, n, opt.p, opt.degree)});
    }
    r.certificate = ergodic_certificate(t, opt.p, opt.degree, opt.seed);
    return r;
}

}  // namespace cesaro
