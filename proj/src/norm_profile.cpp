#include "padicfk/norm_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace padicfk {

namespace {

void require_supported_den(int exp_den) {
    if (exp_den != 1 && exp_den != 2)
        throw std::domain_error("NormProfile: exp_den must be 1 or 2");
}

} // namespace

double NormProfile::value(int r) const {
    return std::pow(static_cast<double>(p),
                    static_cast<double>(exp_num.at(static_cast<size_t>(r - r_lo))) / exp_den);
}

ScaledPower NormProfile::value_exact(int r) const {
    require_supported_den(exp_den);
    int e = exp_num.at(static_cast<size_t>(r - r_lo));
    return ScaledPower{p, BigRational(1), exp_den == 1 ? 2 * e : e};
}

const BigRational& NormProfile::measure(int r) const {
    return measures.at(static_cast<size_t>(r - r_lo));
}

bool NormProfile::check_spacing() const {
    for (size_t i = 0; i + 1 < exp_num.size(); ++i) {
        int d = exp_num[i + 1] - exp_num[i];
        // p^(1/ram) <= p^(d/exp_den) <= p
        if (ram * d < exp_den) return false;
        if (d > exp_den) return false;
    }
    return true;
}

bool scaled_less(const ScaledPower& a, const ScaledPower& b) {
    if (a.p != b.p) throw std::invalid_argument("scaled_less: prime mismatch");
    if (a.coef < 0 || b.coef < 0)
        throw std::domain_error("scaled_less: defined for nonnegative values");
    int shift = -std::min(a.half_exp, b.half_exp);
    BigRational lhs = a.coef * a.coef * pow_rational(a.p, a.half_exp + shift);
    BigRational rhs = b.coef * b.coef * pow_rational(b.p, b.half_exp + shift);
    return lhs < rhs;
}

ScaledPower NormProfile::band_constant_exact() const {
    require_supported_den(exp_den);
    ScaledPower best{p, BigRational(1), 0};
    for (size_t i = 0; i < exp_num.size(); ++i) {
        int half = (exp_den == 1 ? 2 : 1) * dim * exp_num[i];
        const BigRational& meas = measures[i];
        if (meas <= 0) throw std::domain_error("band_constant: nonpositive measure");
        ScaledPower up{p, BigRational(1) / meas, half};    // a^dim / meas
        ScaledPower down{p, meas, -half};                  // meas / a^dim
        if (scaled_less(best, up)) best = up;
        if (scaled_less(best, down)) best = down;
    }
    return best;
}

double NormProfile::band_constant() const {
    return band_constant_exact().value();
}

NormProfile standard_profile(uint32_t p, int n, const std::vector<int>& coeff_exps,
                             int r_lo, int r_hi) {
    if (static_cast<int>(coeff_exps.size()) != n)
        throw std::invalid_argument("standard_profile: one coefficient exponent per coordinate");
    if (r_hi < r_lo) throw std::invalid_argument("standard_profile: empty window");
    int gsum = 0;
    for (int g : coeff_exps) gsum += g;

    NormProfile prof;
    prof.p = p;
    prof.dim = n;
    prof.ram = 1;
    prof.exp_den = 1;
    prof.r_lo = r_lo;
    for (int r = r_lo; r <= r_hi; ++r) {
        prof.exp_num.push_back(r);
        prof.measures.push_back(pow_rational(p, r * n - gsum));
    }
    return prof;
}

} // namespace padicfk
