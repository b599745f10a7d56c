#include "padicfk/heat_kernel.hpp"

#include "padicfk/finite_model.hpp"

#include <cmath>
#include <stdexcept>

namespace padicfk {

namespace {

constexpr int kMaxSeriesIter = 200000;
// Below this scale a remainder is not representable against any value we
// report; series whose terms all underflow return 0.
constexpr double kAbsFloor = 1e-290;

struct KahanSum {
    long double s = 0.0L;
    long double c = 0.0L;
    void add(long double x) {
        long double y = x - c;
        long double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return static_cast<double>(s); }
};

void check_params(const HeatKernelParams& prm) {
    if (prm.p < 2) throw std::domain_error("heat kernel: p must be >= 2");
    if (prm.n < 1) throw std::domain_error("heat kernel: n must be >= 1");
    if (!(prm.b > 0)) throw std::domain_error("heat kernel: b must be positive");
    if (!(prm.t > 0)) throw std::domain_error("heat kernel: t must be positive");
    if (!(prm.eps > 0) || prm.eps >= 1) throw std::domain_error("heat kernel: eps in (0,1)");
}

double ppow(uint32_t p, double e) { return std::pow(static_cast<double>(p), e); }

// Measures of the unit primal / dual balls; mu0 * mu0d = p^(-n delta) keeps
// the total mass at 1 for any coordinate weights.
double mu0_primal(const HeatKernelParams& prm) {
    return ppow(prm.p, -prm.coeff_exp_sum - 0.5 * prm.n * prm.delta);
}
double mu0_dual(const HeatKernelParams& prm) {
    return ppow(prm.p, prm.coeff_exp_sum - 0.5 * prm.n * prm.delta);
}

// exp(-t p^(r b)); underflows cleanly to 0 for large r.
double decay(const HeatKernelParams& prm, long long r) {
    return std::exp(-prm.t * ppow(prm.p, static_cast<double>(r) * prm.b));
}

// E_r - E_{r+1} without cancellation.
double decay_diff(const HeatKernelParams& prm, long long r) {
    double er = decay(prm, r);
    if (er == 0.0) return 0.0;
    double x = prm.t * ppow(prm.p, static_cast<double>(r) * prm.b) *
               (ppow(prm.p, prm.b) - 1.0);
    return er * (-std::expm1(-x));
}

// Exponent r near which t p^(r b) = 1: the active region of every series.
long long series_center(const HeatKernelParams& prm) {
    return static_cast<long long>(std::floor(std::log(1.0 / prm.t) /
                                             (prm.b * std::log(static_cast<double>(prm.p)))));
}

// Offset above the center past which exp(-t p^(r b)) underflows to exactly 0.
long long cliff_offset(const HeatKernelParams& prm) {
    return 4 + static_cast<long long>(
                   std::ceil(std::log(800.0) / (prm.b * std::log(static_cast<double>(prm.p)))));
}

// sum_{r <= R} p^(r n) (E_r - E_{r+1}) <= t (p^b - 1) p^(R (n+b)) / (1 - p^-(n+b))
double shell_series_rest(const HeatKernelParams& prm, long long below_r) {
    double step = ppow(prm.p, static_cast<double>(below_r) * (prm.n + prm.b));
    return prm.t * (ppow(prm.p, prm.b) - 1.0) * step / (1.0 - ppow(prm.p, -(prm.n + prm.b)));
}

// S_shell(R) = sum_{r <= R} p^(r n) (E_r - E_{r+1}) to relative accuracy rel_eps.
double shell_series(const HeatKernelParams& prm, long long R, double rel_eps) {
    long long start = std::min(R, series_center(prm) + cliff_offset(prm));
    KahanSum acc;
    for (long long r = start; r > start - kMaxSeriesIter; --r) {
        acc.add(static_cast<long double>(ppow(prm.p, static_cast<double>(r) * prm.n)) *
                decay_diff(prm, r));
        double rest = shell_series_rest(prm, r - 1);
        if (rest <= std::max(rel_eps * acc.value(), kAbsFloor)) return acc.value();
    }
    throw std::range_error("shell_series: truncation not certified within iteration budget");
}

// S_mass(R) = sum_{r <= R} (1 - p^-n) p^(r n) E_r to relative accuracy rel_eps.
// Rest below R is bounded by p^(R n) (every E_r <= 1).
double mass_series(const HeatKernelParams& prm, long long R, double rel_eps) {
    long long start = std::min(R, series_center(prm) + cliff_offset(prm));
    double lead = 1.0 - ppow(prm.p, -prm.n);
    KahanSum acc;
    for (long long r = start; r > start - kMaxSeriesIter; --r) {
        acc.add(static_cast<long double>(lead) * ppow(prm.p, static_cast<double>(r) * prm.n) *
                decay(prm, r));
        double rest = ppow(prm.p, static_cast<double>(r - 1) * prm.n);
        if (rest <= std::max(rel_eps * acc.value(), kAbsFloor)) return acc.value();
    }
    throw std::range_error("mass_series: truncation not certified within iteration budget");
}

// Envelope pmf(m) <= C p^(-m b) (from 1 - e^-x <= x applied shell by shell).
double pmf_envelope_constant(const HeatKernelParams& prm) {
    return prm.t * (1.0 - ppow(prm.p, -prm.n)) * (ppow(prm.p, prm.b) - 1.0) *
           ppow(prm.p, prm.delta * prm.b) / (1.0 - ppow(prm.p, -(prm.n + prm.b)));
}

double shell_measure(const HeatKernelParams& prm, long long m) {
    return mu0_primal(prm) * ppow(prm.p, static_cast<double>(m) * prm.n) *
           (1.0 - ppow(prm.p, -prm.n));
}

} // namespace

int geometric_coeff_exp_sum(const NormProfile& prof) {
    if (prof.exp_den != 1 || prof.ram != 1)
        throw std::domain_error("geometric_coeff_exp_sum: value set must be the integer powers");
    if (prof.size() < 2)
        throw std::domain_error("geometric_coeff_exp_sum: window too small");
    BigRational ratio = pow_rational(prof.p, prof.dim);
    for (size_t i = 0; i + 1 < prof.measures.size(); ++i) {
        if (prof.exp_num[i + 1] - prof.exp_num[i] != 1)
            throw std::domain_error("geometric_coeff_exp_sum: value set must step by p");
        if (prof.measures[i + 1] != prof.measures[i] * ratio)
            throw std::domain_error("geometric_coeff_exp_sum: measures are not geometric");
    }
    // measure(r) = p^(r n - g): recover g from the first entry.
    BigRational scaled = prof.measures.front() /
                         pow_rational(prof.p, prof.exp_num.front() * prof.dim);  // = p^(-g)
    int g = 0;
    BigRational probe = scaled;
    const BigRational one(1);
    while (probe < one) {
        probe *= prof.p;
        ++g;
    }
    while (probe > one) {
        probe /= prof.p;
        --g;
    }
    if (probe != one)
        throw std::domain_error("geometric_coeff_exp_sum: measure offset is not a power of p");
    return g;
}

double density_value(const HeatKernelParams& prm, int m) {
    check_params(prm);
    return mu0_dual(prm) *
           shell_series(prm, static_cast<long long>(prm.delta) - m, 0.5 * prm.eps);
}

double density_at_zero(const HeatKernelParams& prm) {
    check_params(prm);
    long long rc = series_center(prm);
    double down = mass_series(prm, rc, 0.25 * prm.eps);
    // Terms (1 - p^-n) p^(r n) E_r above the center decay super-geometrically
    // once t p^(r b) (p^b - 1) >= ln(2 p^n), so the first small term bounds
    // the whole remainder by a factor 2.
    double lead = 1.0 - ppow(prm.p, -prm.n);
    double ratio_threshold = std::log(2.0) + prm.n * std::log(static_cast<double>(prm.p));
    KahanSum up;
    bool certified = false;
    for (long long r = rc + 1; r < rc + kMaxSeriesIter; ++r) {
        up.add(static_cast<long double>(lead) * ppow(prm.p, static_cast<double>(r) * prm.n) *
               decay(prm, r));
        double x = prm.t * ppow(prm.p, static_cast<double>(r) * prm.b) *
                   (ppow(prm.p, prm.b) - 1.0);
        if (x >= ratio_threshold) {
            double next =
                lead * ppow(prm.p, static_cast<double>(r + 1) * prm.n) * decay(prm, r + 1);
            if (2.0 * next <= 0.25 * prm.eps * (down + up.value())) {
                certified = true;
                break;
            }
        }
    }
    if (!certified) throw std::range_error("density_at_zero: upper truncation not certified");
    return mu0_dual(prm) * (down + up.value());
}

int RadialDensity::index(int m) const {
    if (m < m_lo || m > m_hi) throw std::out_of_range("RadialDensity: shell outside the window");
    return m - m_lo;
}

RadialDensity radial_law(const HeatKernelParams& prm) {
    check_params(prm);
    RadialDensity law;
    law.prm = prm;
    law.f0 = density_at_zero(prm);

    const double C = pmf_envelope_constant(prm);
    // Upper edge: sum_{m > M} pmf <= C p^(-(M+1) b) / (1 - p^-b) <= eps/2.
    long long M = prm.delta - series_center(prm) + 1;
    for (int iter = 0;; ++iter) {
        double bound = C * ppow(prm.p, -static_cast<double>(M + 1) * prm.b) /
                       (1.0 - ppow(prm.p, -prm.b));
        if (bound <= 0.5 * prm.eps) {
            law.tail_bound = bound;
            break;
        }
        ++M;
        if (iter > kMaxSeriesIter) throw std::range_error("radial_law: no upper edge");
    }
    // Lower edge: P(|X| < p^L) = cdf(L-1) <= mu0 p^((L-1) n) f0 <= eps/2.
    long long L = M;
    for (int iter = 0;; ++iter) {
        double bound =
            mu0_primal(prm) * ppow(prm.p, static_cast<double>(L - 1) * prm.n) * law.f0;
        if (bound <= 0.5 * prm.eps) {
            law.head_bound = bound;
            break;
        }
        --L;
        if (iter > kMaxSeriesIter) throw std::range_error("radial_law: no lower edge");
    }

    law.m_lo = static_cast<int>(L);
    law.m_hi = static_cast<int>(M);
    law.pmf.reserve(static_cast<size_t>(law.size()));
    law.cdf.reserve(static_cast<size_t>(law.size()));
    law.shell_density.reserve(static_cast<size_t>(law.size()));
    double rel = 0.5 * prm.eps / std::max(1, law.size());
    for (int m = law.m_lo; m <= law.m_hi; ++m) {
        long long R = static_cast<long long>(prm.delta) - m;
        double f = mu0_dual(prm) * shell_series(prm, R, rel);
        law.shell_density.push_back(f);
        law.pmf.push_back(shell_measure(prm, m) * f);
        law.cdf.push_back(mu0_primal(prm) * ppow(prm.p, static_cast<double>(m) * prm.n) *
                          mu0_dual(prm) * mass_series(prm, R, rel));
    }
    return law;
}

double radial_moment(const HeatKernelParams& prm, double k) {
    check_params(prm);
    if (k < 0 || k >= prm.b)
        throw std::domain_error("radial_moment: k must lie in [0, b)");
    const double C = pmf_envelope_constant(prm);
    const double f0 = density_at_zero(prm);
    const long long center = prm.delta - series_center(prm);
    const double rel = 0.125 * prm.eps;

    KahanSum acc;
    // Upward: remaining weight above M is at most C p^((M+1)(k-b)) / (1 - p^(k-b)).
    long long M = center;
    for (int iter = 0;; ++iter) {
        double f = mu0_dual(prm) * shell_series(prm, prm.delta - M, rel);
        acc.add(ppow(prm.p, static_cast<double>(M) * k) * shell_measure(prm, M) * f);
        double rest = C * ppow(prm.p, static_cast<double>(M + 1) * (k - prm.b)) /
                      (1.0 - ppow(prm.p, k - prm.b));
        if (rest <= 0.25 * prm.eps * std::max(1e-300, acc.value())) break;
        ++M;
        if (iter > kMaxSeriesIter) throw std::range_error("radial_moment: no upper edge");
    }
    // Downward: remaining weight below L is at most p^(L k) min(1, mu0 p^(L n) f0).
    long long L = center - 1;
    for (int iter = 0;; ++iter) {
        double f = mu0_dual(prm) * shell_series(prm, prm.delta - L, rel);
        acc.add(ppow(prm.p, static_cast<double>(L) * k) * shell_measure(prm, L) * f);
        double cdf_bound = std::min(
            1.0, mu0_primal(prm) * ppow(prm.p, static_cast<double>(L - 1) * prm.n) * f0);
        double rest = ppow(prm.p, static_cast<double>(L - 1) * k) * cdf_bound;
        if (rest <= 0.25 * prm.eps * std::max(1e-300, acc.value())) break;
        --L;
        if (iter > kMaxSeriesIter) throw std::range_error("radial_moment: no lower edge");
    }
    return acc.value();
}

SemigroupCheckResult semigroup_check(const HeatKernelParams& prm, double t1, double t2,
                                     int model_N, int model_M) {
    check_params(prm);
    if (!(t1 > 0) || !(t2 > 0))
        throw std::domain_error("semigroup_check: times must be positive");
    if (prm.n != 1)
        throw std::invalid_argument("semigroup_check: the model route is one-dimensional");
    SemigroupCheckResult res;

    HeatKernelParams total = prm;
    total.t = t1 + t2;
    long long rc = series_center(total);
    for (long long r = rc - 40; r <= rc + 40; ++r) {
        double lam = ppow(prm.p, static_cast<double>(r) * prm.b);
        double split = std::exp(-t1 * lam) * std::exp(-t2 * lam);
        double direct = std::exp(-(t1 + t2) * lam);
        res.symbol_dev = std::max(res.symbol_dev, std::fabs(split - direct));
    }

    FiniteModel model = build_model(prm.p, model_N, model_M);
    std::vector<double> r1 = transition_row(model, prm.b, t1);
    std::vector<double> r2 = transition_row(model, prm.b, t2);
    std::vector<double> r12 = transition_row(model, prm.b, t1 + t2);
    const long long S = model.size;
    for (long long d = 0; d < S; ++d) {
        KahanSum conv;
        for (long long e = 0; e < S; ++e) {
            long long rest = d - e;
            if (rest < 0) rest += S;
            conv.add(static_cast<long double>(r1[static_cast<size_t>(e)]) *
                     r2[static_cast<size_t>(rest)]);
        }
        res.model_dev =
            std::max(res.model_dev, std::fabs(conv.value() - r12[static_cast<size_t>(d)]));
    }
    return res;
}

double density_value_windowed(const HeatKernelParams& prm, int model_N, int model_M, int m) {
    check_params(prm);
    if (prm.n != 1 || prm.delta != 0 || prm.coeff_exp_sum != 0)
        throw std::invalid_argument(
            "density_value_windowed: defined for the plain one-dimensional model");
    // Nonzero cells carry m in [1-M, N]; the zero cell is any m <= -M, where
    // the truncated form is constant.
    KahanSum acc;
    acc.add(ppow(prm.p, -model_N));  // zeroed symbol cone |xi| <= p^-N
    for (int s = -model_N + 1; s <= model_M; ++s) {
        double e = decay(prm, s);
        double w = 0.0;
        if (m <= -s) w += ppow(prm.p, s) * (1.0 - 1.0 / prm.p);
        if (m == -s + 1) w -= ppow(prm.p, s - 1);
        if (w != 0.0) acc.add(e * w);
    }
    return acc.value();
}

double windowed_density_gap_bound(const HeatKernelParams& prm, int model_N, int model_M) {
    check_params(prm);
    if (prm.n != 1 || prm.delta != 0 || prm.coeff_exp_sum != 0)
        throw std::invalid_argument(
            "windowed_density_gap_bound: defined for the plain one-dimensional model");
    // Head: shells s <= -N contribute (1 - E_s) * (character shell sum),
    // |shell sum| <= 2 p^s and 1 - E_s <= t p^(s b).
    double head = 2.0 * prm.t * ppow(prm.p, -model_N * (1.0 + prm.b)) /
                  (1.0 - ppow(prm.p, -(1.0 + prm.b)));
    // Tail: shells s > M survive with weight E_s; once consecutive terms drop
    // by at least half, twice the current term bounds the remainder.
    double tail = 0.0;
    double ratio_threshold = std::log(2.0 * prm.p);
    for (int s = model_M + 1; s < model_M + kMaxSeriesIter; ++s) {
        double term = 2.0 * ppow(prm.p, s) * decay(prm, s);
        double x = prm.t * ppow(prm.p, static_cast<double>(s) * prm.b) *
                   (ppow(prm.p, prm.b) - 1.0);
        if (x >= ratio_threshold) {
            tail += 2.0 * term;
            break;
        }
        tail += term;
    }
    return head + tail;
}

} // namespace padicfk
