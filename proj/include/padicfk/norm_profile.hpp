#pragma once

#include "padicfk/rational.hpp"

#include <cstdint>
#include <vector>

namespace padicfk {

// Tabulated window of an ultrametric norm's value set together with the Haar
// measures of the closed balls at those values. Values are carried exactly as
// a_r = p^(exp_num[i] / exp_den); exp_den is 1 (unramified value set) or 2
// (half-integer exponents, as on the trace-zero slice of a quaternion algebra).
struct NormProfile {
    uint32_t p = 2;
    int dim = 1;   // dimension of the underlying vector space
    int ram = 1;   // spacing guarantee divisor: p^(1/ram) <= a_{r+1}/a_r <= p
    int exp_den = 1;
    int r_lo = 0;  // index of exp_num.front()
    std::vector<int> exp_num;          // strictly increasing
    std::vector<BigRational> measures; // measure of {|x| <= a_r}, same indexing

    int size() const { return static_cast<int>(exp_num.size()); }
    int r_hi() const { return r_lo + size() - 1; }

    double value(int r) const;
    ScaledPower value_exact(int r) const;
    const BigRational& measure(int r) const;

    // Successive ratios satisfy p^(1/ram) <= a_{r+1}/a_r <= p (exact exponent check).
    bool check_spacing() const;

    // Smallest A with (1/A) a_r^dim <= measure(r) <= A a_r^dim over the window.
    ScaledPower band_constant_exact() const;
    double band_constant() const;
};

// Exact comparison of ScaledPower values (both nonnegative, same prime).
bool scaled_less(const ScaledPower& a, const ScaledPower& b);

// Max norm |x| = max_i c_i |x_i| with c_i = p^(coeff_exps[i]); value set is the
// integer powers of p, measure of {|x| <= p^r} is p^(r*n - sum coeff_exps).
NormProfile standard_profile(uint32_t p, int n, const std::vector<int>& coeff_exps,
                             int r_lo, int r_hi);

} // namespace padicfk
