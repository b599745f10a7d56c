#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicfk/feynman_kac.hpp"
#include "padicfk/heat_kernel.hpp"
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

// (p^-m, 0, ..., 0) carrying a full digit window, so differences against
// sampled nodes stay resolved.
PadicVec axis_point(uint32_t p, int n, int m) {
    PadicVec v = PadicVec::zero(p, n);
    std::vector<uint32_t> digits(PadicNumber::kDefaultDigits, 0);
    digits[0] = 1;
    v.coords[0] = PadicNumber::from_parts(p, -m, digits);
    return v;
}

KernelQuery base_query(uint32_t p, int n) {
    KernelQuery q;
    q.prm = make(p, n, 1.0, 1.0);
    q.x = PadicVec::zero(p, n);
    q.y = axis_point(p, n, 0);
    q.paths = 20000;
    q.steps = 4;
    q.seed = 7321;
    q.threads = 1;
    return q;
}

} // namespace

TEST_CASE("free evolution is estimated without bias") {
    for (int n : {1, 2}) {
        CAPTURE(n);
        KernelQuery q = base_query(2, n);
        KernelEstimate est = estimate_kernel(q);
        CHECK(est.paths == q.paths);
        CHECK(est.std_error > 0.0);
        double ref = density_value(q.prm, 0);  // |y - x| = 1
        double z = z_score(est.estimate, ref, est.std_error);
        CHECK(std::abs(z) < 4.0);
    }
}

TEST_CASE("constant potential rescales every path weight by exp(-ct)") {
    KernelQuery q = base_query(3, 1);
    q.y = axis_point(3, 1, 1);
    const double c = 0.9;
    auto [free_est, shifted] = estimate_kernel_pair(q, Potential::zero(), Potential::constant(c));
    double factor = std::exp(-c * q.prm.t);
    CHECK(shifted.estimate == doctest::Approx(factor * free_est.estimate).epsilon(1e-12));
    CHECK(shifted.std_error == doctest::Approx(factor * free_est.std_error).epsilon(1e-10));

    double ref = std::exp(-c * q.prm.t) * density_value(q.prm, 1);
    double z = z_score(shifted.estimate, ref, shifted.std_error);
    CHECK(std::abs(z) < 4.0);
}

TEST_CASE("shared-path estimates are ordered when the potentials are") {
    KernelQuery q = base_query(2, 1);
    q.paths = 5000;
    Potential small = Potential::step(0, 0.5);
    Potential large = Potential::step(0, 1.0);
    auto [lo, hi] = estimate_kernel_pair(q, small, large);
    CHECK(lo.estimate >= hi.estimate);  // pathwise monotone, not just in mean

    // the pair shares draws with the single-query entry point
    q.V = small;
    KernelEstimate single = estimate_kernel(q);
    CHECK(single.estimate == lo.estimate);
    CHECK(single.std_error == lo.std_error);
}

TEST_CASE("estimates are invariant in the requested thread count") {
    KernelQuery q = base_query(2, 1);
    q.paths = 4000;
    q.V = Potential::step(0, 1.0);
    q.threads = 1;
    KernelEstimate one = estimate_kernel(q);
    q.threads = 2;
    KernelEstimate two = estimate_kernel(q);
    q.threads = 8;
    KernelEstimate eight = estimate_kernel(q);
    CHECK(one.estimate == two.estimate);  // bitwise, not approximate
    CHECK(one.std_error == two.std_error);
    CHECK(one.estimate == eight.estimate);
    CHECK(one.std_error == eight.std_error);
}

TEST_CASE("stream base decorrelates and replays draws") {
    KernelQuery q = base_query(2, 1);
    q.paths = 2000;
    KernelEstimate a = estimate_kernel(q);
    KernelEstimate b = estimate_kernel(q);
    CHECK(a.estimate == b.estimate);  // same seed, same streams

    q.stream_base = 1000000;
    KernelEstimate c = estimate_kernel(q);
    CHECK(c.estimate != a.estimate);
    double z = z_score(c.estimate, a.estimate,
                       std::sqrt(a.std_error * a.std_error + c.std_error * c.std_error));
    CHECK(std::abs(z) < 5.0);  // different draws, same law
}

TEST_CASE("malformed queries are rejected") {
    KernelQuery q = base_query(2, 1);
    q.prm.t = 0.0;
    CHECK_THROWS_AS(estimate_kernel(q), std::invalid_argument);
    q = base_query(2, 1);
    q.steps = 0;
    CHECK_THROWS_AS(estimate_kernel(q), std::invalid_argument);
    q = base_query(2, 1);
    q.paths = 1;
    CHECK_THROWS_AS(estimate_kernel(q), std::invalid_argument);
    q = base_query(2, 1);
    q.y = PadicVec::zero(2, 2);
    CHECK_THROWS_AS(estimate_kernel(q), std::invalid_argument);
    q = base_query(2, 1);
    q.y = axis_point(3, 1, 0);
    CHECK_THROWS_AS(estimate_kernel(q), std::invalid_argument);
}
