#include "padicfk/process.hpp"

#include "padicfk/parallel.hpp"
#include "padicfk/potential.hpp"
#include "padicfk/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace padicfk {

PadicVec PadicVec::zero(uint32_t p, int n) {
    if (n < 1) throw std::invalid_argument("PadicVec: dimension must be >= 1");
    PadicVec v;
    v.coords.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v.coords.push_back(PadicNumber::zero(p));
    return v;
}

bool PadicVec::is_zero() const {
    for (const auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

int PadicVec::norm_exp() const {
    int best = kZeroNorm;
    for (const auto& c : coords) {
        if (c.is_zero()) continue;
        int e = c.norm_exponent();
        if (best == kZeroNorm || e > best) best = e;
    }
    return best;
}

double PadicVec::norm() const {
    int e = norm_exp();
    if (e == kZeroNorm) return 0.0;
    if (coords.empty()) return 0.0;
    return std::pow(static_cast<double>(coords.front().prime()), static_cast<double>(e));
}

namespace {

void check_compatible(const PadicVec& a, const PadicVec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("PadicVec: dimension mismatch");
    for (int i = 0; i < a.dim(); ++i) {
        if (a.coords[static_cast<size_t>(i)].prime() != b.coords[static_cast<size_t>(i)].prime())
            throw std::invalid_argument("PadicVec: prime mismatch");
    }
}

} // namespace

PadicVec vec_add(const PadicVec& a, const PadicVec& b) {
    check_compatible(a, b);
    PadicVec out;
    out.coords.reserve(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i) out.coords.push_back(a.coords[i] + b.coords[i]);
    return out;
}

PadicVec vec_sub(const PadicVec& a, const PadicVec& b) {
    check_compatible(a, b);
    PadicVec out;
    out.coords.reserve(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i) out.coords.push_back(a.coords[i] - b.coords[i]);
    return out;
}

IncrementSampler::IncrementSampler(const HeatKernelParams& prm, double dt, int digits)
    : step_prm_(prm), digits_(digits) {
    if (!(dt > 0.0)) throw std::invalid_argument("IncrementSampler: dt must be positive");
    if (digits_ < 1) throw std::invalid_argument("IncrementSampler: digits must be >= 1");
    step_prm_.t = dt;
    law_ = radial_law(step_prm_);
}

PadicVec IncrementSampler::draw(CounterRng& rng) const {
    const uint32_t p = step_prm_.p;
    const int n = step_prm_.n;

    // Radius: inverse CDF over the tabulated shells. Mass below the window
    // (head_bound) rides on the lowest shell, the residual above it on the
    // highest; both are below the law's eps so the fold is invisible at
    // Monte Carlo resolution.
    double u = rng.next_double();
    double acc = law_.head_bound;
    int m = law_.m_hi;
    for (int i = 0; i < law_.size(); ++i) {
        acc += law_.pmf[static_cast<size_t>(i)];
        if (u < acc) {
            m = law_.m_lo + i;
            break;
        }
    }

    PadicVec out;
    out.coords.reserve(static_cast<size_t>(n));

    if (n == 1) {
        // Shell-uniform in one coordinate: leading digit uniform on [1, p),
        // the rest uniform on [0, p).
        std::vector<uint32_t> digs(static_cast<size_t>(digits_));
        digs[0] = rng.next_unit_digit(p);
        for (int i = 1; i < digits_; ++i) digs[static_cast<size_t>(i)] = rng.next_digit(p);
        out.coords.push_back(PadicNumber::from_parts(p, -m, std::move(digs)));
        return out;
    }

    // Shell-uniform under the max norm: every coordinate uniform on the ball
    // |x_i| <= p^m, conditioned on some leading digit being nonzero. Rejection
    // accepts with probability 1 - p^(-n) per round.
    std::vector<std::vector<uint32_t>> raw(static_cast<size_t>(n));
    while (true) {
        bool on_shell = false;
        for (int c = 0; c < n; ++c) {
            auto& digs = raw[static_cast<size_t>(c)];
            digs.assign(static_cast<size_t>(digits_), 0);
            for (int i = 0; i < digits_; ++i) digs[static_cast<size_t>(i)] = rng.next_digit(p);
            if (digs[0] != 0) on_shell = true;
        }
        if (on_shell) break;
    }
    for (int c = 0; c < n; ++c) {
        const auto& digs = raw[static_cast<size_t>(c)];
        size_t lead = 0;
        while (lead < digs.size() && digs[lead] == 0) ++lead;
        if (lead == digs.size()) {
            // All window digits zero: the coordinate is zero to working
            // precision, an event of probability p^(-digits).
            out.coords.push_back(PadicNumber::zero(p));
            continue;
        }
        std::vector<uint32_t> trimmed(digs.begin() + static_cast<long>(lead), digs.end());
        out.coords.push_back(
            PadicNumber::from_parts(p, -m + static_cast<int>(lead), std::move(trimmed)));
    }
    return out;
}

PathSample sample_path(const PadicVec& start, const TimeGrid& grid, const IncrementSampler& inc,
                       uint64_t seed, uint64_t stream) {
    if (grid.steps < 1) throw std::invalid_argument("sample_path: grid needs at least one step");
    if (!(grid.horizon > 0.0)) throw std::invalid_argument("sample_path: horizon must be positive");
    if (start.dim() != inc.law().prm.n)
        throw std::invalid_argument("sample_path: start dimension does not match the sampler");
    double step_t = inc.law().prm.t;
    if (std::abs(step_t - grid.dt()) > 1e-12 * grid.dt())
        throw std::invalid_argument("sample_path: sampler step time does not match the grid");

    PathSample path;
    path.grid = grid;
    path.seed = seed;
    path.stream = stream;
    path.nodes.reserve(static_cast<size_t>(grid.steps) + 1);
    path.nodes.push_back(start);

    CounterRng rng(seed, stream);
    for (int j = 0; j < grid.steps; ++j) path.nodes.push_back(vec_add(path.nodes.back(), inc.draw(rng)));
    return path;
}

double potential_integral(const PathSample& path, const Potential& V) {
    if (path.nodes.size() != static_cast<size_t>(path.grid.steps) + 1)
        throw std::invalid_argument("potential_integral: node count does not match the grid");
    double acc = 0.0;
    for (int j = 0; j < path.grid.steps; ++j) {
        const PadicVec& x = path.nodes[static_cast<size_t>(j)];
        acc += x.is_zero() ? V.at_zero() : V.at_norm_exp(x.norm_exp());
    }
    return path.grid.dt() * acc;
}

ProductMomentResult product_moment_check(const HeatKernelParams& prm, double k, double t1,
                                         double t2, double t3, long long samples, uint64_t seed,
                                         int threads) {
    if (!(0.0 < t1 && t1 < t2 && t2 < t3))
        throw std::invalid_argument("product_moment_check: need 0 < t1 < t2 < t3");
    if (samples < 2) throw std::invalid_argument("product_moment_check: need at least 2 samples");

    HeatKernelParams prm12 = prm;
    prm12.t = t2 - t1;
    HeatKernelParams prm23 = prm;
    prm23.t = t3 - t2;

    // Independent increments factorize the expectation.
    double exact = radial_moment(prm12, k) * radial_moment(prm23, k);

    IncrementSampler inc12(prm, t2 - t1);
    IncrementSampler inc23(prm, t3 - t2);
    const double lp = std::log(static_cast<double>(prm.p));

    std::vector<double> vals(static_cast<size_t>(samples), 0.0);
    int nthreads = resolve_threads(threads);
    parallel_for(samples, nthreads, [&](long long i) {
        CounterRng rng(seed, static_cast<uint64_t>(i));
        PadicVec d12 = inc12.draw(rng);
        PadicVec d23 = inc23.draw(rng);
        double e12 = d12.is_zero() ? -std::numeric_limits<double>::infinity()
                                   : static_cast<double>(d12.norm_exp());
        double e23 = d23.is_zero() ? -std::numeric_limits<double>::infinity()
                                   : static_cast<double>(d23.norm_exp());
        vals[static_cast<size_t>(i)] = std::exp(k * (e12 + e23) * lp);
    });

    Accumulator accu;
    for (long long i = 0; i < samples; ++i) accu.add(vals[static_cast<size_t>(i)]);

    ProductMomentResult res;
    res.samples = samples;
    res.mc_estimate = accu.mean();
    res.mc_std_error = accu.std_error();
    res.exact = exact;
    res.z = z_score(res.mc_estimate, exact, res.mc_std_error);
    res.bound_ratio = exact / std::pow(t3 - t1, 2.0 * k / prm.b);
    return res;
}

} // namespace padicfk
