#pragma once

#include "padicfk/heat_kernel.hpp"
#include "padicfk/padic.hpp"
#include "padicfk/rng.hpp"

#include <cstdint>
#include <vector>

namespace padicfk {

// Uniform grid 0 = t_0 < ... < t_steps = horizon.
struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    double dt() const { return horizon / steps; }
    double node(int j) const { return horizon * j / steps; }
};

// Point of Q_p^n as truncated coordinates.
struct PadicVec {
    std::vector<PadicNumber> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    static PadicVec zero(uint32_t p, int n);
    bool is_zero() const;
    // max over coordinates; kZeroNorm for the zero vector
    static constexpr int kZeroNorm = INT32_MIN;
    int norm_exp() const;
    double norm() const;
};

PadicVec vec_add(const PadicVec& a, const PadicVec& b);
PadicVec vec_sub(const PadicVec& a, const PadicVec& b);

// Draws increments with the radial law of the evolution over one time step.
// The radius comes from inverse-CDF sampling of the exact shell pmf (window
// mass outside the certified table, below eps, is folded onto the boundary
// shells); the direction is digit-uniform on the shell. Coordinates carry
// `digits` significant digits.
class IncrementSampler {
public:
    IncrementSampler(const HeatKernelParams& prm, double dt, int digits = PadicNumber::kDefaultDigits);

    PadicVec draw(CounterRng& rng) const;
    const RadialDensity& law() const { return law_; }

private:
    HeatKernelParams step_prm_;
    RadialDensity law_;
    int digits_;
};

// Path skeleton on the time grid: nodes[0] = start, nodes[j] the state at t_j.
struct PathSample {
    TimeGrid grid;
    std::vector<PadicVec> nodes;
    uint64_t seed = 0;
    uint64_t stream = 0;
};

PathSample sample_path(const PadicVec& start, const TimeGrid& grid, const IncrementSampler& inc,
                       uint64_t seed, uint64_t stream);

// Left-endpoint Riemann sum of V along the path: dt * sum_{j < steps} V(nodes[j]).
double potential_integral(const PathSample& path, const class Potential& V);

// Monte Carlo check of the factorized product moment
// E[ |X_{t2} - X_{t1}|^k |X_{t3} - X_{t2}|^k ] over independent increments,
// against the exact product of single-increment moments, plus the scale-free
// ratio exact / (t3 - t1)^(2k/b) used to compare grids.
struct ProductMomentResult {
    double mc_estimate = 0.0;
    double mc_std_error = 0.0;
    double exact = 0.0;
    double bound_ratio = 0.0;
    double z = 0.0;
    long long samples = 0;
};

ProductMomentResult product_moment_check(const HeatKernelParams& prm, double k, double t1,
                                         double t2, double t3, long long samples, uint64_t seed,
                                         int threads = 1);

} // namespace padicfk
