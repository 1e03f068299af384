#include "cesaro/random.hpp"
#include "cesaro/series.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using cesaro::complex;
using cesaro::TaylorSeries;

namespace {

double max_abs_diff(const TaylorSeries& a, const TaylorSeries& b) {
    double d = 0.0;
    for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) {
        d = std::max(d, std::abs(a[n] - b[n]));
    }
    return d;
}

}  // namespace

TEST(MakeSeries, degree_from_length) {
    const std::vector<complex> one{1.0};
    EXPECT_EQ(cesaro::make_series(one).degree(), 0U);
    const std::vector<complex> z{0.0, 1.0};
    const auto f = cesaro::make_series(z);
    EXPECT_EQ(f.degree(), 1U);
    EXPECT_EQ(f[1], complex(1.0, 0.0));
    EXPECT_EQ(f[7], complex(0.0, 0.0));
}

TEST(MakeSeries, rejects_non_finite) {
    const std::vector<complex> bad{1.0, {std::numeric_limits<double>::quiet_NaN(), 0.0}};
    EXPECT_THROW(cesaro::make_series(bad), cesaro::non_finite_coefficient);
    const std::vector<complex> inf{{0.0, std::numeric_limits<double>::infinity()}};
    try {
        cesaro::make_series(inf);
        FAIL();
    } catch (const cesaro::non_finite_coefficient& e) {
        EXPECT_EQ(e.index(), 0U);
    }
    EXPECT_THROW(cesaro::make_series(std::vector<complex>{}), cesaro::domain_error);
}

TEST(MakeSeries, geometric_coefficients_match_power_evaluation) {
    const double t = 0.7;
    std::vector<complex> c;
    double power = 1.0;
    for (int n = 0; n <= 40; ++n) {
        c.emplace_back(power);
        power *= t;
    }
    const auto f = cesaro::make_series(c);
    for (double x : {0.0, 0.3, -0.8, 1.0}) {
        const complex z{x, 0.1 * x};
        if (std::abs(z) > 1.0) {
            continue;
        }
        EXPECT_NEAR(std::abs(cesaro::evaluate(f, z) - oracle::power_sum(f, z)), 0.0, 1e-13);
    }
}

TEST(Evaluate, simple_values) {
    EXPECT_EQ(cesaro::evaluate(TaylorSeries{1.0}, 0.5), complex(1.0, 0.0));
    EXPECT_EQ(cesaro::evaluate(TaylorSeries{0.0, 1.0}, complex(0.0, 1.0)), complex(0.0, 1.0));
    // h_t at z = 1 with t = 0.5, N = 200: tail 0.5^201 / 0.5 is far below 1e-12
    EXPECT_NEAR(cesaro::evaluate(cesaro::geometric_kernel(0.5, 200), 1.0).real(), 2.0, 1e-12);
}

TEST(Evaluate, rejects_points_outside_disc) {
    EXPECT_THROW(cesaro::evaluate(TaylorSeries{1.0}, 1.01), cesaro::domain_error);
    EXPECT_NO_THROW(cesaro::evaluate(TaylorSeries{1.0}, std::polar(1.0, 0.3)));
}

TEST(Evaluate, linear_on_random_inputs) {
    cesaro::Rng rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 30);
        const auto g = cesaro::random_polynomial(rng, 45);
        const complex a{u(rng), u(rng)};
        const complex b{u(rng), u(rng)};
        const complex z = std::polar(std::abs(u(rng)), 6.0 * u(rng));
        const complex lhs = cesaro::evaluate(a * f + b * g, z);
        const complex rhs = a * cesaro::evaluate(f, z) + b * cesaro::evaluate(g, z);
        EXPECT_LE(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(CauchyProduct, identity_and_shift) {
    cesaro::Rng rng(1);
    const auto f = cesaro::random_polynomial(rng, 10);
    const auto one_f = cesaro::cauchy_product(TaylorSeries{1.0}, f);
    EXPECT_EQ(one_f, f);
    const auto zf = cesaro::cauchy_product(TaylorSeries{0.0, 1.0}, f);
    ASSERT_EQ(zf.degree(), 11U);
    EXPECT_EQ(zf[0], complex(0.0, 0.0));
    for (std::size_t n = 0; n <= 10; ++n) {
        EXPECT_EQ(zf[n + 1], f[n]);
    }
}

TEST(CauchyProduct, geometric_telescopes) {
    const double t = 0.6;
    const std::size_t degree = 50;
    const auto prod = cesaro::cauchy_product(cesaro::geometric_kernel(t, degree), TaylorSeries{1.0, -t});
    ASSERT_EQ(prod.degree(), degree + 1);
    EXPECT_NEAR(std::abs(prod[0] - 1.0), 0.0, 1e-15);
    for (std::size_t n = 1; n <= degree; ++n) {
        EXPECT_NEAR(std::abs(prod[n]), 0.0, 1e-15) << n;
    }
    EXPECT_NEAR(prod[degree + 1].real(), -std::pow(t, degree + 1), 1e-15);
}

TEST(CauchyProduct, commutative_and_associative) {
    cesaro::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 12);
        const auto g = cesaro::random_polynomial(rng, 20);
        const auto h = cesaro::random_polynomial(rng, 7);
        EXPECT_LE(max_abs_diff(cesaro::cauchy_product(f, g), cesaro::cauchy_product(g, f)), 1e-13);
        const auto left = cesaro::cauchy_product(cesaro::cauchy_product(f, g), h);
        const auto right = cesaro::cauchy_product(f, cesaro::cauchy_product(g, h));
        EXPECT_LE(max_abs_diff(left, right), 1e-13 * 40);
    }
}

TEST(CauchyProduct, cap_truncates_and_flags) {
    const auto f = cesaro::geometric_kernel(0.5, 10);
    const auto capped = cesaro::cauchy_product(f, f, 12);
    EXPECT_EQ(capped.degree(), 12U);
    EXPECT_TRUE(capped.truncated());
    const auto exact = cesaro::cauchy_product(f, f, 20);
    EXPECT_FALSE(exact.truncated());
    EXPECT_EQ(exact.degree(), 20U);
    for (std::size_t n = 0; n <= 12; ++n) {
        EXPECT_EQ(capped[n], exact[n]);
    }
}

TEST(GeometricKernel, coefficients) {
    const auto h0 = cesaro::geometric_kernel(0.0, 8);
    EXPECT_EQ(h0[0], complex(1.0, 0.0));
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_EQ(h0[n], complex(0.0, 0.0));
    }
    EXPECT_DOUBLE_EQ(cesaro::geometric_kernel(0.5, 8)[3].real(), 0.125);
    for (double t : {0.0, 0.2, 0.9}) {
        EXPECT_EQ(cesaro::evaluate(cesaro::geometric_kernel(t, 30), 0.0), complex(1.0, 0.0));
    }
    EXPECT_THROW(cesaro::geometric_kernel(1.0, 4), cesaro::domain_error);
    EXPECT_THROW(cesaro::geometric_kernel(-0.1, 4), cesaro::domain_error);
}

TEST(LogKernel, coefficients_and_value) {
    const auto g = cesaro::log_kernel(0.5, 10000);
    // coefficient of z^{n+1} is t^n/(n+1)
    EXPECT_EQ(g[0], complex(0.0, 0.0));
    EXPECT_DOUBLE_EQ(g[1].real(), 1.0);
    EXPECT_DOUBLE_EQ(g[2].real(), 0.25);
    EXPECT_DOUBLE_EQ(g[4].real(), 0.125 / 4.0);
    // -log(1 - t)/t at t = 0.5
    EXPECT_NEAR(cesaro::evaluate(g, 1.0).real(), 2.0 * std::numbers::ln2, 1e-6);
    EXPECT_NEAR(cesaro::evaluate(g, 1.0).real(), 1.3862943611, 1e-6);
    EXPECT_THROW(cesaro::log_kernel(0.0, 4), cesaro::domain_error);
    EXPECT_THROW(cesaro::log_kernel(1.0, 4), cesaro::domain_error);
}

TEST(LogKernel, derivative_is_geometric_kernel) {
    for (double t : {0.1, 0.5, 0.95}) {
        const auto dg = cesaro::derivative(cesaro::log_kernel(t, 200));
        const auto h = cesaro::geometric_kernel(t, 199);
        ASSERT_EQ(dg.degree(), h.degree());
        for (std::size_t n = 0; n <= h.degree(); ++n) {
            EXPECT_NEAR(std::abs(dg[n] - h[n]), 0.0, 1e-15 * std::max(1.0, std::abs(h[n])));
        }
    }
}

TEST(Exponent, validation_and_names) {
    EXPECT_THROW(cesaro::Exponent(0.5), cesaro::domain_error);
    EXPECT_EQ(cesaro::Exponent(2.0).to_string(), "2");
    EXPECT_EQ(cesaro::Exponent(1.5).to_string(), "1.5");
    EXPECT_EQ(cesaro::Exponent::inf().to_string(), "inf");
    EXPECT_TRUE(cesaro::Exponent::inf().is_inf());
    EXPECT_LT(cesaro::Exponent(4.0), cesaro::Exponent::inf());
}
