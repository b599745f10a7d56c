#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicfk/feynman_kac.hpp"
#include "padicfk/process.hpp"
#include "padicfk/stats.hpp"

#include <cmath>
#include <vector>

using namespace padicfk;

namespace {

HeatKernelParams make(uint32_t p, int n, double b, double t) {
    HeatKernelParams prm;
    prm.p = p;
    prm.n = n;
    prm.b = b;
    prm.t = t;
    return prm;
}

PadicVec unit_shell_point(uint32_t p, int n, int m) {
    // (p^-m, 0, ..., 0): norm p^m
    PadicVec v = PadicVec::zero(p, n);
    v.coords[0] = PadicNumber::from_parts(p, -m, std::vector<uint32_t>{1});
    return v;
}

} // namespace

TEST_CASE("vector norm is the coordinate maximum") {
    PadicVec z = PadicVec::zero(3, 2);
    CHECK(z.is_zero());
    CHECK(z.norm_exp() == PadicVec::kZeroNorm);
    CHECK(z.norm() == 0.0);

    PadicVec v = PadicVec::zero(3, 2);
    v.coords[0] = PadicNumber::from_integer(3, 9);   // |.| = 1/9
    v.coords[1] = PadicNumber::from_integer(3, 6);   // |.| = 1/3
    CHECK_FALSE(v.is_zero());
    CHECK(v.norm_exp() == -1);
    CHECK(v.norm() == doctest::Approx(1.0 / 3.0));

    PadicVec w = unit_shell_point(3, 2, 2);
    CHECK(w.norm_exp() == 2);
    CHECK(vec_sub(w, w).is_zero());
    CHECK(vec_add(v, z).norm_exp() == -1);

    PadicVec other_dim = PadicVec::zero(3, 1);
    CHECK_THROWS_AS(vec_add(v, other_dim), std::invalid_argument);
    PadicVec other_p = PadicVec::zero(5, 2);
    CHECK_THROWS_AS(vec_add(v, other_p), std::invalid_argument);
}

TEST_CASE("increments reproduce the radial law shell by shell") {
    for (int n : {1, 2}) {
        CAPTURE(n);
        IncrementSampler inc(make(2, n, 1.0, 1.0), 0.5);
        const RadialDensity& law = inc.law();
        const int draws = 20000;
        CounterRng rng(501, static_cast<uint64_t>(n));
        std::vector<double> observed(static_cast<size_t>(law.size()), 0.0);
        std::vector<double> expected(static_cast<size_t>(law.size()), 0.0);
        for (int i = 0; i < law.size(); ++i)
            expected[static_cast<size_t>(i)] = law.pmf[static_cast<size_t>(i)] * draws;
        for (int i = 0; i < draws; ++i) {
            PadicVec x = inc.draw(rng);
            REQUIRE_FALSE(x.is_zero());
            int m = x.norm_exp();
            REQUIRE(m >= law.m_lo);
            REQUIRE(m <= law.m_hi);
            observed[static_cast<size_t>(law.index(m))] += 1.0;
        }
        ChiSquareResult res = chi_square_gof(observed, expected);
        CHECK(res.p_value > 1e-6);
    }
}

TEST_CASE("increment coordinates fill the full digit window") {
    IncrementSampler inc(make(5, 1, 1.0, 1.0), 1.0, 8);
    CounterRng rng(11, 0);
    for (int i = 0; i < 50; ++i) {
        PadicVec x = inc.draw(rng);
        CHECK(x.coords[0].window_length() == 8);
        CHECK(x.coords[0].digits()[0] != 0);
    }
}

TEST_CASE("paths replay exactly and separate by stream") {
    IncrementSampler inc(make(2, 1, 1.0, 1.0), 0.25);
    TimeGrid grid{1.0, 4};
    PadicVec start = unit_shell_point(2, 1, 1);

    PathSample a = sample_path(start, grid, inc, 99, 3);
    PathSample b = sample_path(start, grid, inc, 99, 3);
    PathSample c = sample_path(start, grid, inc, 99, 4);
    REQUIRE(a.nodes.size() == 5);
    CHECK(a.nodes[0].norm_exp() == 1);
    bool all_equal = true, any_diff = false;
    for (size_t j = 0; j < a.nodes.size(); ++j) {
        if (!vec_sub(a.nodes[j], b.nodes[j]).is_zero()) all_equal = false;
        if (!vec_sub(a.nodes[j], c.nodes[j]).is_zero()) any_diff = true;
    }
    CHECK(all_equal);
    CHECK(any_diff);

    IncrementSampler wrong_dt(make(2, 1, 1.0, 1.0), 0.5);
    CHECK_THROWS_AS(sample_path(start, grid, wrong_dt, 99, 3), std::invalid_argument);
    IncrementSampler dim2(make(2, 2, 1.0, 1.0), 0.25);
    CHECK_THROWS_AS(sample_path(start, grid, dim2, 99, 3), std::invalid_argument);
}

TEST_CASE("potential integral uses left endpoints") {
    TimeGrid grid{2.0, 4};  // dt = 0.5
    PathSample path;
    path.grid = grid;
    path.nodes.push_back(PadicVec::zero(2, 1));        // |x| = 0
    path.nodes.push_back(unit_shell_point(2, 1, 2));   // |x| = 4
    path.nodes.push_back(unit_shell_point(2, 1, 0));   // |x| = 1
    path.nodes.push_back(PadicVec::zero(2, 1));        // |x| = 0
    path.nodes.push_back(unit_shell_point(2, 1, 3));   // |x| = 8, final node: excluded

    Potential c = Potential::constant(2.0);
    CHECK(potential_integral(path, c) == doctest::Approx(2.0 * 2.0));

    Potential ball = Potential::step(0, 1.0);  // 1 on |x| <= 1, else 0
    CHECK(potential_integral(path, ball) == doctest::Approx(0.5 * 3.0));

    path.nodes.pop_back();
    CHECK_THROWS_AS(potential_integral(path, c), std::invalid_argument);
}

TEST_CASE("product moments factorize over disjoint increments") {
    HeatKernelParams prm = make(2, 1, 1.0, 1.0);
    double k = 0.25;
    ProductMomentResult res =
        product_moment_check(prm, k, 0.3, 0.7, 1.2, 20000, 424242, 1);
    CHECK(res.samples == 20000);
    CHECK(res.exact > 0.0);
    CHECK(res.mc_std_error > 0.0);
    CHECK(std::abs(res.z) < 4.0);

    // the scale-free ratio is invariant under (t_i) -> p^b (t_i), exactly
    ProductMomentResult scaled =
        product_moment_check(prm, k, 0.6, 1.4, 2.4, 2, 1, 1);
    CHECK(std::abs(scaled.bound_ratio - res.bound_ratio) < 1e-9 * res.bound_ratio);

    CHECK_THROWS_AS(product_moment_check(prm, k, 0.7, 0.3, 1.2, 100, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(product_moment_check(prm, k, 0.3, 0.7, 1.2, 1, 1, 1),
                    std::invalid_argument);
}
