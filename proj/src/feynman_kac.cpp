#include "padicfk/feynman_kac.hpp"

#include "padicfk/parallel.hpp"
#include "padicfk/stats.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace padicfk {

namespace {

double potential_at(const Potential& V, const PadicVec& v) {
    return v.is_zero() ? V.at_zero() : V.at_norm_exp(v.norm_exp());
}

// Shell-indexed cache of the one-step free density, wide enough that endpoint
// differences almost never miss; misses fall through to a direct evaluation.
struct DensityTable {
    HeatKernelParams prm;
    int m_lo = 0;
    std::vector<double> values;
    double at_zero = 0.0;

    double operator()(const PadicVec& z) const {
        if (z.is_zero()) return at_zero;
        int m = z.norm_exp();
        int i = m - m_lo;
        if (i >= 0 && i < static_cast<int>(values.size())) return values[static_cast<size_t>(i)];
        return density_value(prm, m);
    }
};

DensityTable build_density_table(const HeatKernelParams& step_prm, const RadialDensity& law) {
    DensityTable table;
    table.prm = step_prm;
    table.m_lo = law.m_lo - 64;
    int m_hi = law.m_hi + 8;
    table.values.reserve(static_cast<size_t>(m_hi - table.m_lo + 1));
    for (int m = table.m_lo; m <= m_hi; ++m) {
        if (m >= law.m_lo && m <= law.m_hi)
            table.values.push_back(law.shell_density[static_cast<size_t>(m - law.m_lo)]);
        else
            table.values.push_back(density_value(step_prm, m));
    }
    table.at_zero = law.f0;
    return table;
}

void check_query(const KernelQuery& query) {
    if (!(query.prm.t > 0.0)) throw std::invalid_argument("estimate_kernel: horizon must be positive");
    if (query.steps < 1) throw std::invalid_argument("estimate_kernel: steps must be >= 1");
    if (query.paths < 2) throw std::invalid_argument("estimate_kernel: need at least 2 paths");
    if (query.x.dim() != query.prm.n || query.y.dim() != query.prm.n)
        throw std::invalid_argument("estimate_kernel: endpoint dimension does not match");
    for (const auto& c : query.x.coords)
        if (c.prime() != query.prm.p) throw std::invalid_argument("estimate_kernel: x prime mismatch");
    for (const auto& c : query.y.coords)
        if (c.prime() != query.prm.p) throw std::invalid_argument("estimate_kernel: y prime mismatch");
}

// Shared engine: one pass over the paths, one weight per potential. Draw
// consumption is independent of the potentials, so every entry sees the same
// path ensemble for a given (seed, stream_base).
std::vector<KernelEstimate> run_paths(const KernelQuery& query,
                                      const std::vector<const Potential*>& pots) {
    check_query(query);
    auto t_start = std::chrono::steady_clock::now();

    const double dt = query.prm.t / query.steps;
    IncrementSampler inc(query.prm, dt);
    HeatKernelParams step_prm = query.prm;
    step_prm.t = dt;
    DensityTable f_dt = build_density_table(step_prm, inc.law());

    const size_t npots = pots.size();
    std::vector<std::vector<double>> vals(npots);
    for (auto& v : vals) v.assign(static_cast<size_t>(query.paths), 0.0);

    int nthreads = resolve_threads(query.threads);
    parallel_for(query.paths, nthreads, [&](long long i) {
        CounterRng rng(query.seed, query.stream_base + static_cast<uint64_t>(i));
        PadicVec cur = query.x;
        std::vector<double> vsum(npots);
        for (size_t k = 0; k < npots; ++k) vsum[k] = potential_at(*pots[k], cur);
        for (int j = 1; j < query.steps; ++j) {
            cur = vec_add(cur, inc.draw(rng));
            for (size_t k = 0; k < npots; ++k) vsum[k] += potential_at(*pots[k], cur);
        }
        double pin = f_dt(vec_sub(query.y, cur));
        for (size_t k = 0; k < npots; ++k)
            vals[k][static_cast<size_t>(i)] = std::exp(-dt * vsum[k]) * pin;
    });

    auto t_end = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(t_end - t_start).count();

    std::vector<KernelEstimate> out(npots);
    for (size_t k = 0; k < npots; ++k) {
        Accumulator accu;
        for (long long i = 0; i < query.paths; ++i) accu.add(vals[k][static_cast<size_t>(i)]);
        out[k].estimate = accu.mean();
        out[k].std_error = accu.std_error();
        out[k].paths = query.paths;
        out[k].steps = query.steps;
        out[k].seed = query.seed;
        out[k].elapsed_seconds = elapsed;
    }
    return out;
}

} // namespace

KernelEstimate estimate_kernel(const KernelQuery& query) {
    return run_paths(query, {&query.V}).front();
}

std::pair<KernelEstimate, KernelEstimate> estimate_kernel_pair(const KernelQuery& query,
                                                               const Potential& V1,
                                                               const Potential& V2) {
    std::vector<KernelEstimate> both = run_paths(query, {&V1, &V2});
    return {both[0], both[1]};
}

} // namespace padicfk
