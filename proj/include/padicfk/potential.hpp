#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padicfk {

// Radial potential V(x) = V(|x|). Piecewise constant in the norm: value(e) on
// p^(e-1) < |x| <= p^e between breakpoints, far_value outside the last one;
// the innermost step value extends down to x = 0. An optional unbounded
// Coulomb-type tail -coupling / |x| (cut off below p^cutoff_exp) is carried as
// an explicitly experimental mode: estimators accept it but make no
// convergence claim, and bounded() reports false.
class Potential {
public:
    static Potential zero();
    static Potential constant(double c);
    // V = value on |x| <= p^radius_exp, far_value outside
    static Potential step(int radius_exp, double value, double far_value = 0.0);
    // breakpoints as (radius_exp, value) sorted increasing in radius_exp
    static Potential piecewise(std::vector<std::pair<int, double>> steps, double far_value);
    // V = -coupling / |x|, with |x| floored at p^cutoff_exp
    static Potential coulomb(double coupling, int cutoff_exp, uint32_t p);

    // evaluate at |x| = p^norm_exp; zero cells / x = 0 use the innermost value
    double at_norm_exp(int norm_exp) const;
    double at_zero() const;

    bool bounded() const { return !coulomb_; }
    bool is_zero() const;
    double sup_abs(int probe_lo = -64, int probe_hi = 64) const;
    std::string describe() const;

private:
    std::vector<std::pair<int, double>> steps_;  // sorted by radius_exp
    double far_value_ = 0.0;
    bool coulomb_ = false;
    double coupling_ = 0.0;
    int cutoff_exp_ = 0;
    uint32_t coulomb_p_ = 2;
};

} // namespace padicfk
