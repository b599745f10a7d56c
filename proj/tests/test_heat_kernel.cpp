#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicfk/heat_kernel.hpp"
#include "padicfk/norm_profile.hpp"
#include "padicfk/quaternion.hpp"

#include <cmath>
#include <numeric>

using namespace padicfk;

namespace {

HeatKernelParams make(uint32_t p, int n, int delta, double b, double t) {
    HeatKernelParams prm;
    prm.p = p;
    prm.n = n;
    prm.delta = delta;
    prm.b = b;
    prm.t = t;
    return prm;
}

} // namespace

TEST_CASE("radial law is a strictly positive probability law peaking at zero") {
    for (uint32_t p : {2u, 3u})
        for (int n : {1, 2})
            for (int delta : {0, 1})
                for (double b : {0.5, 2.0})
                    for (double t : {0.1, 1.0, 10.0}) {
                        CAPTURE(p); CAPTURE(n); CAPTURE(delta); CAPTURE(b); CAPTURE(t);
                        RadialDensity law = radial_law(make(p, n, delta, b, t));
                        REQUIRE(law.size() > 0);
                        CHECK(law.f0 > 0.0);
                        double sum = 0.0;
                        for (int i = 0; i < law.size(); ++i) {
                            CHECK(law.pmf[static_cast<size_t>(i)] > 0.0);
                            CHECK(law.shell_density[static_cast<size_t>(i)] <=
                                  law.f0 * (1.0 + 1e-9));
                            sum += law.pmf[static_cast<size_t>(i)];
                        }
                        CHECK(std::abs(sum - 1.0) < 1e-10);
                        CHECK(law.head_bound >= 0.0);
                        CHECK(law.head_bound < 1e-11);
                        CHECK(law.tail_bound < 1e-11);
                    }
}

TEST_CASE("pmf agrees with increments of the independently summed cdf") {
    RadialDensity law = radial_law(make(3, 2, 1, 1.5, 0.7));
    for (int m = law.m_lo + 1; m <= law.m_hi; ++m) {
        double inc = law.cdf_at(m) - law.cdf_at(m - 1);
        CHECK(law.pmf_at(m) == doctest::Approx(inc).epsilon(1e-8));
    }
    CHECK(law.cdf_at(law.m_hi) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(law.index(law.m_hi + 1), std::out_of_range);
}

TEST_CASE("conductor shift rescales the density by p^(-n/2) per step") {
    for (uint32_t p : {2u, 5u})
        for (int n : {1, 2})
            for (double b : {1.0, 2.0}) {
                HeatKernelParams d0 = make(p, n, 0, b, 0.8);
                HeatKernelParams d1 = make(p, n, 1, b, 0.8);
                double scale = std::pow(static_cast<double>(p), -0.5 * n);
                for (int m : {-3, 0, 2}) {
                    CAPTURE(p); CAPTURE(n); CAPTURE(b); CAPTURE(m);
                    CHECK(density_value(d1, m) ==
                          doctest::Approx(scale * density_value(d0, m - 1)).epsilon(1e-9));
                }
                CHECK(density_at_zero(d1) ==
                      doctest::Approx(scale * density_at_zero(d0)).epsilon(1e-9));
            }
}

TEST_CASE("time rescaling t -> p^b t contracts space by one shell") {
    for (int delta : {0, 1}) {
        HeatKernelParams base = make(3, 2, delta, 1.5, 0.4);
        HeatKernelParams scaled = base;
        scaled.t = base.t * std::pow(3.0, base.b);
        double pn = std::pow(3.0, -2.0);
        for (int m : {-2, 0, 3}) {
            CAPTURE(delta); CAPTURE(m);
            CHECK(density_value(scaled, m) ==
                  doctest::Approx(pn * density_value(base, m - 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("radial law tabulates the same values as the pointwise routines") {
    HeatKernelParams prm = make(2, 1, 0, 1.0, 1.0);
    RadialDensity law = radial_law(prm);
    for (int m : {law.m_lo, -1, 0, 1, law.m_hi}) {
        int i = law.index(m);
        CHECK(law.shell_density[static_cast<size_t>(i)] ==
              doctest::Approx(density_value(prm, m)).epsilon(1e-10));
    }
}

TEST_CASE("moments scale exactly under the space-time self-similarity") {
    for (uint32_t p : {2u, 3u})
        for (double b : {1.0, 2.0})
            for (double frac : {0.25, 0.5, 0.75}) {
                double k = frac * b;
                HeatKernelParams base = make(p, 1, 0, b, 0.7);
                HeatKernelParams scaled = base;
                scaled.t = base.t * std::pow(static_cast<double>(p), b);
                double lhs = radial_moment(scaled, k);
                double rhs = std::pow(static_cast<double>(p), k) * radial_moment(base, k);
                CAPTURE(p); CAPTURE(b); CAPTURE(k);
                CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
            }
}

TEST_CASE("moment outside the finite range is rejected") {
    HeatKernelParams prm = make(2, 1, 0, 1.0, 1.0);
    CHECK_THROWS_AS(radial_moment(prm, 1.0), std::domain_error);
    CHECK_THROWS_AS(radial_moment(prm, 1.5), std::domain_error);
    CHECK_THROWS_AS(radial_moment(prm, -0.1), std::domain_error);
    CHECK(radial_moment(prm, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("semigroup property holds on symbols and on the finite model") {
    HeatKernelParams prm = make(2, 1, 0, 1.0, 1.0);
    SemigroupCheckResult res = semigroup_check(prm, 0.5, 0.5, 5, 5);
    CHECK(res.symbol_dev < 1e-12);
    CHECK(res.model_dev < 1e-8);
    CHECK_THROWS_AS(semigroup_check(make(2, 2, 0, 1.0, 1.0), 0.5, 0.5, 3, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(semigroup_check(prm, 0.0, 0.5, 3, 3), std::domain_error);
}

TEST_CASE("windowed form is flat on the zero cell and within its certified gap") {
    HeatKernelParams prm = make(2, 1, 0, 1.0, 1.0);
    const int N = 6, M = 6;
    double gap = windowed_density_gap_bound(prm, N, M);
    CHECK(gap > 0.0);
    CHECK(gap < 1e-2);
    for (int m = 1 - M; m <= N - 2; ++m) {
        double w = density_value_windowed(prm, N, M, m);
        CHECK(std::abs(w - density_value(prm, m)) <= gap);
    }
    CHECK(density_value_windowed(prm, N, M, -M) ==
          density_value_windowed(prm, N, M, -M - 3));
    CHECK_THROWS_AS(density_value_windowed(make(2, 2, 0, 1.0, 1.0), N, M, 0),
                    std::invalid_argument);
}

TEST_CASE("geometric profile offset recovery") {
    NormProfile prof = standard_profile(3, 2, {1, 2}, -2, 3);
    CHECK(geometric_coeff_exp_sum(prof) == 3);
    NormProfile plain = standard_profile(5, 1, {0}, 0, 4);
    CHECK(geometric_coeff_exp_sum(plain) == 0);
    NormProfile ramified = trace_zero_profile(default_quaternion_params(5), -2, 2);
    CHECK_THROWS_AS(geometric_coeff_exp_sum(ramified), std::domain_error);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(density_value(make(1, 1, 0, 1.0, 1.0), 0), std::domain_error);
    CHECK_THROWS_AS(density_value(make(2, 0, 0, 1.0, 1.0), 0), std::domain_error);
    CHECK_THROWS_AS(density_value(make(2, 1, 0, 0.0, 1.0), 0), std::domain_error);
    CHECK_THROWS_AS(density_value(make(2, 1, 0, 1.0, 0.0), 0), std::domain_error);
    CHECK_THROWS_AS(density_value(make(2, 1, 0, 1.0, -2.0), 0), std::domain_error);
}
