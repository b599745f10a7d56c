#pragma once

#include "padicfk/potential.hpp"
#include "padicfk/process.hpp"

#include <cstdint>
#include <string>

namespace padicfk {

// Monte Carlo estimate of the kernel of exp(-t (D^b + V)) at (x, y): paths
// start at x, take `steps` increments of the free evolution, and each path
// contributes exp(-dt * sum_{j<steps} V(node_j)) * f_dt(y - node_{steps-1}),
// the last factor being the free one-step density pinning the endpoint. The
// estimator is unbiased for the Lie product (exp(-dt V) exp(-dt D^b))^steps
// kernel; in t it carries the usual first-order splitting bias except for
// V = 0 or constant V, where it is exact for every step count.
struct KernelEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long long paths = 0;
    int steps = 0;
    uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

struct KernelQuery {
    HeatKernelParams prm;  // prm.t = total horizon
    PadicVec x;
    PadicVec y;
    Potential V = Potential::zero();
    long long paths = 100000;
    int steps = 16;
    uint64_t seed = 1;
    int threads = 1;
    // Streams are partitioned as stream = stream_base + path index, so
    // different queries can share or decorrelate their draws explicitly.
    uint64_t stream_base = 0;
};

KernelEstimate estimate_kernel(const KernelQuery& query);

// Variance-coupled pair of estimates for two potentials with shared paths
// (identical seed/stream layout): their difference inherits the pathwise
// monotonicity of the weights, so V1 <= V2 gives first >= second pathwise.
std::pair<KernelEstimate, KernelEstimate> estimate_kernel_pair(const KernelQuery& query,
                                                               const Potential& V1,
                                                               const Potential& V2);

} // namespace padicfk
