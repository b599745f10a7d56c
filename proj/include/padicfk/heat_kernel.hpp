#pragma once

#include "padicfk/norm_profile.hpp"

#include <cstdint>
#include <vector>

namespace padicfk {

// Parameters of the radial heat evolution on Q_p^n driven by the symbol
// |xi|^b: densities of exp(-t D^b) relative to self-dual Haar measure for the
// conductor-delta character. coeff_exp_sum generalizes to max norms with
// power-of-p coordinate weights c_i = p^(g_i); it is the sum of the g_i and
// shifts primal and dual ball measures in opposite directions.
struct HeatKernelParams {
    uint32_t p = 2;
    int n = 1;
    int delta = 0;
    double b = 1.0;
    double t = 1.0;
    double eps = 1e-12;   // certified absolute error target, scaled by max(1, |value|)
    int coeff_exp_sum = 0;
};

// Validates that a profile is a geometric standard shape (integer exponent
// steps of 1, measures in exact ratio p^n) and extracts its measure offset.
int geometric_coeff_exp_sum(const NormProfile& prof);

// Density on the shell |x| = p^m. All series are summed with certified
// geometric/exponential tail majorants; a result is returned only once the
// truncation error is below eps * max(1, value).
double density_value(const HeatKernelParams& prm, int m);
double density_at_zero(const HeatKernelParams& prm);

// Radial law of the evolution at time t: pmf over shells p^m plus certified
// head/tail bounds for the mass outside the tabulated window.
struct RadialDensity {
    HeatKernelParams prm;
    int m_lo = 0;
    int m_hi = -1;
    std::vector<double> pmf;            // P(|X_t| = p^m)
    std::vector<double> cdf;            // P(|X_t| <= p^m)
    std::vector<double> shell_density;  // density on the shell
    double head_bound = 0.0;            // >= P(|X_t| < p^m_lo)
    double tail_bound = 0.0;            // >= P(|X_t| > p^m_hi)
    double f0 = 0.0;                    // density at the origin

    int size() const { return m_hi - m_lo + 1; }
    int index(int m) const;
    double pmf_at(int m) const { return pmf.at(static_cast<size_t>(index(m))); }
    double cdf_at(int m) const { return cdf.at(static_cast<size_t>(index(m))); }
};

RadialDensity radial_law(const HeatKernelParams& prm);

// E |X_t|^k for 0 <= k < b (the moment diverges at k >= b: domain_error).
double radial_moment(const HeatKernelParams& prm, double k);

// Two-route check of exp(-t1 D) exp(-t2 D) = exp(-(t1+t2) D): multiplicativity
// of the symbol over a window of dual shells, and literal convolution of
// transition rows on the finite group model of resolution (N, M).
struct SemigroupCheckResult {
    double symbol_dev = 0.0;
    double model_dev = 0.0;
};

SemigroupCheckResult semigroup_check(const HeatKernelParams& prm, double t1, double t2,
                                     int model_N, int model_M);

// One-dimensional windowed closed form matching the finite group model of
// resolution (N, M) at delta = 0: the symbol is zeroed on |xi| <= p^(-N) and
// cut at |xi| = p^M, and the remaining shell integrals are exact character
// sums. Evaluated at |x| = p^m (m >= 1 - N); this is the analytic route the
// model's transition kernel must reproduce to rounding.
double density_value_windowed(const HeatKernelParams& prm, int model_N, int model_M, int m);

// Certified bound on |density_value - density_value_windowed| at any point of
// the model's domain: the head mass of the zeroed symbol cone plus the cut
// tail above p^M.
double windowed_density_gap_bound(const HeatKernelParams& prm, int model_N, int model_M);

} // namespace padicfk
