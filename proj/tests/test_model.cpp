#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicfk/finite_model.hpp"
#include "padicfk/heat_kernel.hpp"
#include "padicfk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

using namespace padicfk;

TEST_CASE("cell and frequency norms follow the valuations") {
    FiniteModel m = build_model(2, 2, 2);
    REQUIRE(m.size == 16);
    CHECK(m.cell_measure() == doctest::Approx(0.25));
    CHECK(m.norm_exp(0) == FiniteModel::kZeroCell);
    CHECK(m.norm_exp(1) == 2);   // x = 1/4
    CHECK(m.norm_exp(2) == 1);
    CHECK(m.norm_exp(4) == 0);
    CHECK(m.norm_exp(8) == -1);
    CHECK(m.norm_exp(12) == 0);  // 12 = 4 * 3
    CHECK(m.dual_norm_exp(0) == FiniteModel::kZeroCell);
    CHECK(m.dual_norm_exp(1) == 2);
    CHECK(m.dual_norm_exp(8) == -1);
    CHECK(m.negate(3) == 13);
    CHECK(m.negate(0) == 0);

    // dual norm multiset: one zero frequency, then p^e with multiplicities
    std::map<double, int> counts;
    double sum_abs = 0.0;
    for (long long l = 0; l < m.size; ++l) {
        double v = l == 0 ? 0.0 : std::pow(2.0, m.dual_norm_exp(l));
        counts[v] += 1;
        sum_abs += v;
    }
    CHECK(counts[0.0] == 1);
    CHECK(counts[0.5] == 1);
    CHECK(counts[1.0] == 2);
    CHECK(counts[2.0] == 4);
    CHECK(counts[4.0] == 8);
    CHECK(sum_abs == doctest::Approx(42.5));

    CHECK(m.symbol(0, 1.5) == 0.0);
    CHECK(m.symbol(1, 2.0) == doctest::Approx(16.0));
    CHECK(m.symbol(6, 1.0) == doctest::Approx(2.0));

    CHECK_THROWS_AS(build_model(2, 10, 10, 1 << 16), std::range_error);
    CHECK_THROWS_AS(build_model(4, 1, 1), std::invalid_argument);
}

TEST_CASE("cosine and divisor routes produce the same transition row") {
    struct Case { uint32_t p; int N, M; double b, t; };
    for (const Case& c : {Case{2, 3, 3, 1.0, 1.0}, Case{2, 2, 4, 0.5, 0.1},
                          Case{3, 2, 2, 2.0, 0.7}, Case{5, 1, 2, 1.0, 3.0}}) {
        CAPTURE(c.p); CAPTURE(c.N); CAPTURE(c.M);
        FiniteModel m = build_model(c.p, c.N, c.M);
        std::vector<double> slow = transition_row(m, c.b, c.t);
        std::vector<double> fast = transition_row_fast(m, c.b, c.t);
        REQUIRE(slow.size() == static_cast<size_t>(m.size));
        REQUIRE(fast.size() == slow.size());
        double dev = 0.0, sum = 0.0;
        for (size_t i = 0; i < slow.size(); ++i) {
            dev = std::max(dev, std::abs(slow[i] - fast[i]));
            sum += fast[i];
            CHECK(fast[i] >= 0.0);
        }
        CHECK(dev < 1e-14);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("generator rows sum to zero and reproduce the free propagator") {
    FiniteModel m = build_model(2, 2, 3);
    Eigen::MatrixXd D = generator_matrix(m, 1.0);
    REQUIRE(D.rows() == m.size);
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(D.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    // circulant: entry (j, k) depends only on j - k mod S
    CHECK(D(3, 1) == doctest::Approx(D(7, 5)).epsilon(1e-12));

    double t = 0.8;
    Eigen::MatrixXd K = propagator_kernel(m, 1.0, t, nullptr);
    std::vector<double> row = transition_row(m, 1.0, t);
    for (long long j = 0; j < m.size; ++j) {
        long long d = (m.size + j - 2) % m.size;
        CHECK(K(j, 2) == doctest::Approx(row[static_cast<size_t>(d)] / m.cell_measure())
                              .epsilon(1e-10));
    }
}

TEST_CASE("spectrum is the symbol multiset, shifted exactly by a constant potential") {
    FiniteModel m = build_model(3, 2, 1);
    Eigen::VectorXd free = spectrum(m, 1.5, nullptr);
    std::vector<double> symbols;
    for (long long l = 0; l < m.size; ++l) symbols.push_back(m.symbol(l, 1.5));
    std::sort(symbols.begin(), symbols.end());
    for (long long i = 0; i < m.size; ++i)
        CHECK(free(i) == doctest::Approx(symbols[static_cast<size_t>(i)]).epsilon(1e-12));

    Potential c = Potential::constant(2.5);
    Eigen::VectorXd shifted = spectrum(m, 1.5, &c);
    for (long long i = 0; i < m.size; ++i)
        CHECK(shifted(i) == doctest::Approx(free(i) + 2.5).epsilon(1e-10));
}

TEST_CASE("propagator with a potential is symmetric and semigroup-consistent") {
    FiniteModel m = build_model(2, 2, 2);
    Potential V = Potential::step(0, 1.0);
    double t = 0.6;
    Eigen::MatrixXd K = propagator_kernel(m, 1.0, t, &V);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    // exp(-t H) exp(-t H) = exp(-2t H), as kernels: compose with cell measure
    Eigen::MatrixXd K2 = propagator_kernel(m, 1.0, 2.0 * t, &V);
    Eigen::MatrixXd composed = K * K * m.cell_measure();
    CHECK((composed - K2).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("potential on cells evaluates by cell norm with the zero cell inside") {
    FiniteModel m = build_model(2, 1, 2);
    Potential V = Potential::step(0, 3.0, 0.5);
    Eigen::VectorXd diag = potential_on_cells(m, V);
    REQUIRE(diag.size() == m.size);
    CHECK(diag(0) == doctest::Approx(3.0));  // zero cell uses the inner value
    CHECK(diag(1) == doctest::Approx(0.5));  // |x| = 2 outside the ball
    CHECK(diag(2) == doctest::Approx(3.0));  // |x| = 1
    CHECK(diag(4) == doctest::Approx(3.0));  // |x| = 1/2
}

TEST_CASE("windowed closed form matches the model transition row") {
    HeatKernelParams prm;
    prm.p = 2; prm.n = 1; prm.delta = 0; prm.b = 1.0; prm.t = 1.0;
    const int N = 5, M = 5;
    FiniteModel m = build_model(2, N, M);
    std::vector<double> row = transition_row(m, prm.b, prm.t);
    double scale = 1.0 / m.cell_measure();  // density = probability / cell measure
    for (int shell = 1 - M; shell <= N; ++shell) {
        long long j = 1;
        for (int e = 0; e < N - shell; ++e) j *= 2;  // j = p^(N - shell): norm p^shell
        double model_density = row[static_cast<size_t>(j)] * scale;
        double closed = density_value_windowed(prm, N, M, shell);
        CHECK(model_density == doctest::Approx(closed).epsilon(1e-11));
    }
    double zero_cell = row[0] * scale;
    CHECK(zero_cell == doctest::Approx(density_value_windowed(prm, N, M, -M)).epsilon(1e-11));
}

TEST_CASE("bridge sampler draws from the exact conditional law") {
    FiniteModel m = build_model(2, 1, 2);  // S = 8
    const double b = 1.0, T = 1.0;
    BridgeSampler bridge(m, b, T, 2);
    CHECK(bridge.dt() == doctest::Approx(0.5));

    std::vector<double> row_half = transition_row_fast(m, b, 0.5);
    std::vector<double> row_full = transition_row_fast(m, b, T);
    const long long x = 1, y = 6;
    CHECK(bridge.endpoint_probability(x, y) ==
          doctest::Approx(row_full[static_cast<size_t>((y - x + m.size) % m.size)])
              .epsilon(1e-12));

    // exact one-intermediate conditional
    std::vector<double> cond(static_cast<size_t>(m.size), 0.0);
    double total = 0.0;
    for (long long u = 0; u < m.size; ++u) {
        double q = row_half[static_cast<size_t>((u - x + m.size) % m.size)] *
                   row_half[static_cast<size_t>((y - u + m.size) % m.size)];
        cond[static_cast<size_t>(u)] = q;
        total += q;
    }
    for (double& q : cond) q /= total;

    const int draws = 20000;
    CounterRng rng(31337, 0);
    std::vector<double> observed(static_cast<size_t>(m.size), 0.0);
    std::vector<double> expected(static_cast<size_t>(m.size), 0.0);
    for (long long u = 0; u < m.size; ++u)
        expected[static_cast<size_t>(u)] = cond[static_cast<size_t>(u)] * draws;
    for (int i = 0; i < draws; ++i) {
        std::vector<long long> path = bridge.sample(x, y, rng);
        REQUIRE(path.size() == 3);
        CHECK(path.front() == x);
        CHECK(path.back() == y);
        observed[static_cast<size_t>(path[1])] += 1.0;
    }
    ChiSquareResult res = chi_square_gof(observed, expected);
    CHECK(res.p_value > 1e-6);

    BridgeSampler one(m, b, T, 1);
    std::vector<long long> direct = one.sample(2, 5, rng);
    REQUIRE(direct.size() == 2);
    CHECK(direct[0] == 2);
    CHECK(direct[1] == 5);
}
