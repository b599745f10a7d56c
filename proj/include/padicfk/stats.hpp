#pragma once

#include <vector>

namespace padicfk {

// Streaming mean / variance with long double accumulation.
class Accumulator {
public:
    void add(double x);
    long long count() const { return n_; }
    double mean() const;
    double variance() const;       // unbiased sample variance
    double std_error() const;      // sqrt(variance / n)

private:
    long long n_ = 0;
    long double sum_ = 0.0L;
    long double sum_sq_ = 0.0L;
};

// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a);
// series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double statistic, int dof);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int bins_used = 0;
};

// Pearson goodness-of-fit against expected counts. Adjacent bins are merged
// left-to-right until each merged bin has expected count >= min_expected
// (remainder folded into the last bin); dof = bins - 1.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected,
                               double min_expected = 5.0);

// (estimate - reference) / std_error, with std_error floored to avoid 0/0 when
// the sampler is exactly deterministic.
double z_score(double estimate, double reference, double std_error);

} // namespace padicfk
