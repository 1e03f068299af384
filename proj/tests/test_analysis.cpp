#include "cesaro/analysis.hpp"
#include "cesaro/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using cesaro::complex;
using cesaro::Exponent;
using cesaro::OperatorKernel;
using cesaro::TaylorSeries;

namespace {

const Exponent inf = Exponent::inf();

}  // namespace

TEST(CircleSamples, match_direct_evaluation) {
    cesaro::Rng rng(21);
    for (std::size_t degree : {5U, 40U, 100U}) {
        const auto f = cesaro::random_polynomial(rng, degree);
        // 64 nodes: aliased folding for degree 100, plain zero padding otherwise
        const auto samples = cesaro::circle_samples(f, 0.9, 64);
        for (std::size_t j = 0; j < 64; ++j) {
            const complex z = std::polar(0.9, 2.0 * std::numbers::pi * static_cast<double>(j) / 64.0);
            EXPECT_NEAR(std::abs(samples[j] - oracle::power_sum(f, z)), 0.0, 1e-12) << degree << " " << j;
        }
    }
}

TEST(CircleSamples, rejects_bad_arguments) {
    EXPECT_THROW(cesaro::circle_samples(TaylorSeries{1.0}, 1.5, 16), cesaro::domain_error);
    EXPECT_THROW(cesaro::circle_samples(TaylorSeries{1.0}, 0.5, 24), cesaro::domain_error);
}

TEST(MpMean, constant_and_monomials) {
    for (double r : {0.0, 0.4, 1.0}) {
        for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(3.5), inf}) {
            EXPECT_NEAR(cesaro::mp_mean(TaylorSeries{1.0}, r, p).value, 1.0, 1e-14);
            EXPECT_NEAR(cesaro::mp_mean(TaylorSeries::monomial(7), r, p).value, std::pow(r, 7), 1e-14);
        }
    }
    EXPECT_THROW(cesaro::mp_mean(TaylorSeries{1.0}, -0.1, inf), cesaro::domain_error);
}

TEST(MpMean, parseval_for_geometric_kernel) {
    const auto h = cesaro::geometric_kernel(0.5, 200);
    const auto report = cesaro::mp_mean(h, 1.0, Exponent(2.0));
    EXPECT_NEAR(report.value, 1.0 / std::sqrt(1.0 - 0.25), 1e-13);
    EXPECT_NEAR(report.value, 1.1547005383792515, 1e-13);
    EXPECT_EQ(report.refinement_error, 0.0);
    EXPECT_EQ(report.quadrature_nodes, 4096U);
}

TEST(MpMean, agrees_with_brute_force_quadrature) {
    cesaro::Rng rng(22);
    const auto f = cesaro::random_polynomial(rng, 12);
    for (double p : {1.0, 2.0, 3.0}) {
        EXPECT_NEAR(cesaro::mp_mean(f, 0.8, Exponent(p), 128).value, oracle::mean_direct(f, 0.8, p, 128), 1e-12);
    }
    EXPECT_NEAR(cesaro::mp_mean(f, 1.0, inf, 128).value, oracle::mean_direct(f, 1.0, 0.0, 128), 1e-12);
}

TEST(MpMean, report_fields) {
    cesaro::Rng rng(23);
    const auto f = cesaro::random_polynomial(rng, 30);
    const auto report = cesaro::mp_mean(f, 1.0, Exponent(3.0));
    EXPECT_GE(report.value, 0.0);
    EXPECT_TRUE(std::has_single_bit(report.quadrature_nodes));
    EXPECT_TRUE(std::isfinite(report.tail_bound));
    EXPECT_NEAR(report.tail_bound, std::abs(f[30]), 1e-15);
    EXPECT_LT(report.refinement_error, 1e-10);
}

TEST(HardyNorm, known_values) {
    for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(4.0), inf}) {
        EXPECT_NEAR(cesaro::hardy_norm(TaylorSeries{1.0}, p).value, 1.0, 1e-14);
    }
    EXPECT_NEAR(cesaro::hardy_norm(cesaro::geometric_kernel(0.7, 400), Exponent(2.0)).value,
                1.0 / std::sqrt(1.0 - 0.49), 1e-12);
}

TEST(SupNorm, known_values) {
    EXPECT_NEAR(cesaro::sup_norm(cesaro::geometric_kernel(0.6, 300)).value, 1.0 / 0.4, 1e-12);
    EXPECT_NEAR(cesaro::sup_norm(TaylorSeries::monomial(9)).value, 1.0, 1e-15);
    EXPECT_NEAR(cesaro::sup_norm(cesaro::log_kernel(0.5, 200)).value, -std::log(0.5) / 0.5, 1e-12);
}

TEST(HardyNorm, monotone_in_radius_for_random_polynomials) {
    cesaro::Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 1 + static_cast<std::size_t>(trial % 24));
        for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(4.0), inf}) {
            EXPECT_TRUE(cesaro::hardy_norm(f, p, true, 256).monotone_in_r) << trial << " " << p.to_string();
        }
    }
}

TEST(HardyNorm, increasing_in_p) {
    cesaro::Rng rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 20);
        double previous = 0.0;
        for (Exponent p : {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0), Exponent(4.0), inf}) {
            const double v = cesaro::hardy_norm(f, p, false).value;
            EXPECT_LE(previous, v + 1e-10);
            previous = v;
        }
    }
}

TEST(HardyNorm, hardy_operator_contracts) {
    cesaro::Rng rng(26);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 30);
        for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(4.0), inf}) {
            EXPECT_LE(cesaro::hardy_norm(cesaro::apply_c0(f), p, false).value,
                      cesaro::hardy_norm(f, p, false).value + 1e-10);
        }
    }
}

TEST(HardyNorm, shift_facts) {
    cesaro::Rng rng(27);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = cesaro::random_polynomial(rng, 25);
        auto g = cesaro::apply_shift(f);  // g(0) = 0
        for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(3.0), inf}) {
            const double nf = cesaro::hardy_norm(f, p, false).value;
            EXPECT_LE(cesaro::hardy_norm(g, p, false).value, nf + 1e-10);
            EXPECT_LE(cesaro::hardy_norm(cesaro::apply_backshift(g), p, false).value,
                      cesaro::hardy_norm(g, p, false).value + 1e-10);
        }
    }
    EXPECT_NEAR(cesaro::h2_opnorm(cesaro::finite_section(OperatorKernel::shift(), 100)), 1.0, 1e-12);
}

TEST(UpperBound, closed_forms) {
    EXPECT_NEAR(cesaro::upper_bound_ct(0.5, inf).value, 2.0 * std::numbers::ln2, 1e-15);
    EXPECT_NEAR(cesaro::upper_bound_ct(0.5, inf).value, 1.386294, 1e-6);
    EXPECT_NEAR(cesaro::upper_bound_ct(0.5, Exponent(2.0)).value, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(cesaro::upper_bound_ct(0.5, Exponent(1.0)).value, 2.0 * std::numbers::ln2, 1e-15);
    EXPECT_DOUBLE_EQ(cesaro::upper_bound_ct(0.5, Exponent(2.0)).coarse, 2.0);
    for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(7.0), inf}) {
        EXPECT_EQ(cesaro::upper_bound_ct(0.0, p).value, 1.0);
    }
    // p = 3, t = 0.5: [((1/2)^{-2} - 1)/(0.5 * 2)]^{1/3} = 3^{1/3}
    EXPECT_NEAR(cesaro::upper_bound_ct(0.5, Exponent(3.0)).value, std::cbrt(3.0), 1e-14);
    // the power form tends to the log form as p -> 1
    EXPECT_NEAR(cesaro::upper_bound_ct(0.6, Exponent(1.0 + 1e-7)).value, cesaro::upper_bound_ct(0.6, Exponent(1.0)).value,
                1e-6);
    EXPECT_THROW(cesaro::upper_bound_ct(1.0, inf), cesaro::domain_error);
}

TEST(OpnormLower, witnesses) {
    const std::vector<TaylorSeries> only_h{cesaro::geometric_kernel(0.4, 512)};
    // the implicit h_t and 1 already give 1 for finite p
    EXPECT_NEAR(cesaro::opnorm_lower(0.0, Exponent(2.0), only_h, 512), 1.0, 1e-12);
    const std::vector<TaylorSeries> only_one{TaylorSeries{1.0}};
    EXPECT_NEAR(cesaro::opnorm_lower(0.5, inf, only_one, 512), 2.0 * std::numbers::ln2, 1e-12);
    EXPECT_THROW(cesaro::opnorm_lower(0.5, inf, std::vector<TaylorSeries>{}), cesaro::empty_test_set);
    EXPECT_THROW(cesaro::opnorm_lower(0.5, inf, std::vector<TaylorSeries>{TaylorSeries(3)}), cesaro::domain_error);
}

TEST(OpnormLower, sandwiched_by_closed_forms) {
    cesaro::Rng rng(28);
    std::vector<TaylorSeries> testset;
    for (int i = 0; i < 10; ++i) {
        testset.push_back(cesaro::random_polynomial(rng, 8));
    }
    for (double t : {0.2, 0.5, 0.8}) {
        for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(3.0), inf}) {
            const double lower = cesaro::opnorm_lower(t, p, testset, 512);
            EXPECT_GE(lower, 1.0 - 1e-12);
            EXPECT_LE(lower, cesaro::upper_bound_ct(t, p).value + 1e-9);
        }
    }
}

TEST(H2Opnorm, diagonal_and_sandwich) {
    EXPECT_NEAR(cesaro::h2_opnorm(cesaro::finite_section(OperatorKernel::hardy(), 300)), 1.0, 1e-10);
    const double v = cesaro::h2_opnorm(cesaro::finite_section(OperatorKernel::cesaro(0.5), 600));
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, std::sqrt(2.0));
    EXPECT_EQ(cesaro::h2_opnorm(cesaro::Matrix::Zero(4, 4)), 0.0);
    cesaro::Matrix kernel_seed(2, 2);
    kernel_seed << 1.0, -1.0, 2.0, -2.0;  // ones vector in the kernel
    EXPECT_NEAR(cesaro::h2_opnorm(kernel_seed), std::sqrt(10.0), 1e-10);
}

TEST(H2Opnorm, matches_singular_value_decomposition) {
    const auto section = cesaro::finite_section(OperatorKernel::cesaro(0.7), 150);
    Eigen::JacobiSVD<cesaro::Matrix> svd(section.entries);
    EXPECT_NEAR(cesaro::h2_opnorm(section), svd.singularValues()(0), 1e-9);
}

TEST(H2Opnorm, no_convergence_is_reported) {
    EXPECT_THROW(cesaro::h2_opnorm(cesaro::finite_section(OperatorKernel::cesaro(0.5), 50).entries, 1e-16, 2),
                 cesaro::no_convergence);
}

TEST(Jensen, cases) {
    const std::vector<complex> constant(10, complex{0.3, -0.2});
    const auto c = cesaro::jensen_check(constant, 2.5);
    EXPECT_NEAR(c.lhs, c.rhs, 1e-15);
    EXPECT_TRUE(c.holds);

    std::vector<complex> circle;
    for (int j = 0; j < 1000; ++j) {
        circle.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / 1000.0));
    }
    const auto u = cesaro::jensen_check(circle, 2.0);
    EXPECT_NEAR(u.lhs, 0.0, 1e-20);
    EXPECT_NEAR(u.rhs, 1.0, 1e-12);

    cesaro::Rng rng(29);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<complex> h(64);
        for (auto& x : h) {
            const double re = dist(rng);
            x = complex{re, dist(rng)};
        }
        for (double p : {1.0, 2.0, 3.5}) {
            const auto r = cesaro::jensen_check(h, p);
            EXPECT_TRUE(r.holds);
            EXPECT_LE(r.lhs, r.rhs + 1e-12);
        }
    }
    EXPECT_THROW(cesaro::jensen_check(circle, 0.5), cesaro::domain_error);
}

TEST(BoundComparison, grid) {
    std::vector<double> ts;
    for (int i = 1; i <= 9; ++i) {
        ts.push_back(0.1 * i);
    }
    const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0};
    const auto table = cesaro::bound_comparison(ts, ps);
    ASSERT_EQ(table.rows.size(), ts.size() * ps.size());
    EXPECT_TRUE(table.all_pass());
    EXPECT_TRUE(table.consistent());
    for (const auto& row : table.rows) {
        EXPECT_LT(row.lower, row.upper);
        EXPECT_EQ(row.gamma.has_value(), row.p.value() > 1.0);
    }
    EXPECT_EQ(cesaro::bound_gamma(0.0, 1.0), 0.0);
    EXPECT_EQ(cesaro::bound_gamma(0.0, 2.5), 0.0);
    EXPECT_NEAR(cesaro::bound_gamma(1.0, 2.0), -2.0, 1e-15);
    const double tt[] = {1.0};
    const double pp[] = {2.0};
    EXPECT_THROW(cesaro::bound_comparison(tt, pp), cesaro::domain_error);
}

TEST(Divergence, c1_of_one_grows_toward_boundary) {
    const auto y = cesaro::apply_c1(TaylorSeries{1.0}.resized(1 << 18));
    double previous = 0.0;
    for (int j = 0; j <= 16; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        const double m = cesaro::mp_mean(y, r, inf).value;
        EXPECT_GT(m, previous);
        previous = m;
    }
    EXPECT_GT(previous, 5.0);
}
