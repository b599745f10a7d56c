#include "padicfk/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace padicfk {

void Accumulator::add(double x) {
    n_ += 1;
    sum_ += x;
    sum_sq_ += static_cast<long double>(x) * x;
}

double Accumulator::mean() const {
    if (n_ == 0) throw std::domain_error("Accumulator: empty");
    return static_cast<double>(sum_ / n_);
}

double Accumulator::variance() const {
    if (n_ < 2) return 0.0;
    long double m = sum_ / n_;
    long double v = (sum_sq_ - static_cast<long double>(n_) * m * m) / (n_ - 1);
    return v > 0 ? static_cast<double>(v) : 0.0;
}

double Accumulator::std_error() const {
    if (n_ == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(n_));
}

namespace {

// Lower regularized incomplete gamma by series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    if (x <= 0) return 0.0;
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by modified Lentz continued fraction;
// valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0) throw std::domain_error("regularized_gamma_q: a must be positive");
    if (x < 0) throw std::domain_error("regularized_gamma_q: x must be nonnegative");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_sf(double statistic, int dof) {
    if (dof <= 0) throw std::domain_error("chi_square_sf: dof must be positive");
    if (statistic <= 0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    if (observed.empty()) throw std::invalid_argument("chi_square_gof: empty input");

    std::vector<double> obs_m, exp_m;
    double o_acc = 0.0, e_acc = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= min_expected) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0 || o_acc > 0) {
        if (!exp_m.empty()) {
            obs_m.back() += o_acc;
            exp_m.back() += e_acc;
        } else {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
        }
    }

    ChiSquareResult res;
    res.bins_used = static_cast<int>(exp_m.size());
    if (res.bins_used < 2) {
        // Nothing to compare: a single merged bin always matches its total.
        res.dof = 0;
        res.p_value = 1.0;
        return res;
    }
    for (size_t i = 0; i < exp_m.size(); ++i) {
        double d = obs_m[i] - exp_m[i];
        res.statistic += d * d / exp_m[i];
    }
    res.dof = res.bins_used - 1;
    res.p_value = chi_square_sf(res.statistic, res.dof);
    return res;
}

double z_score(double estimate, double reference, double std_error) {
    double floor_se = std::max(std_error, 1e-300);
    return (estimate - reference) / floor_se;
}

} // namespace padicfk
