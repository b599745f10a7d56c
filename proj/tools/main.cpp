// Command line front end: density tables, Monte Carlo kernel estimates, path
// dumps, the validation suite, norm profiles, and finite-model spectra.
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 numeric domain error, 4 oracle disagreement.

#include "padicfk/config.hpp"
#include "padicfk/feynman_kac.hpp"
#include "padicfk/finite_model.hpp"
#include "padicfk/heat_kernel.hpp"
#include "padicfk/io_util.hpp"
#include "padicfk/parallel.hpp"
#include "padicfk/process.hpp"
#include "padicfk/quaternion.hpp"
#include "padicfk/stats.hpp"
#include "padicfk/validate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

using namespace padicfk;

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 1;
    int threads = 0;  // 0 = resolve via environment, else 1
    bool show_config = false;

    CLI::Option* out_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

// Precedence per field: explicit command line flag, then config file value,
// then built-in default. Records every resolved value for --show-config.
struct Merger {
    const Config& cfg;
    std::vector<std::pair<std::string, std::string>> resolved;

    long long i(const CLI::Option* opt, long long cli_val, const std::string& key, long long lo,
                long long hi) {
        long long v = (opt && opt->count() > 0) ? cli_val : cfg.get_int(key, cli_val, lo, hi);
        resolved.emplace_back(key, std::to_string(v));
        return v;
    }
    uint64_t u(const CLI::Option* opt, uint64_t cli_val, const std::string& key) {
        uint64_t v = (opt && opt->count() > 0) ? cli_val : cfg.get_u64(key, cli_val);
        resolved.emplace_back(key, std::to_string(v));
        return v;
    }
    double d(const CLI::Option* opt, double cli_val, const std::string& key, double lo,
             double hi) {
        double v = (opt && opt->count() > 0) ? cli_val : cfg.get_double(key, cli_val, lo, hi);
        resolved.emplace_back(key, format_double(v));
        return v;
    }
    std::string s(const CLI::Option* opt, const std::string& cli_val, const std::string& key) {
        std::string v = (opt && opt->count() > 0) ? cli_val : cfg.get_string(key, cli_val);
        resolved.emplace_back(key, v);
        return v;
    }
};

struct Resolved {
    std::string out_dir;
    uint64_t seed = 1;
    int threads = 0;
};

Resolved resolve_globals(const GlobalArgs& g, Merger& merge) {
    Resolved r;
    r.out_dir = merge.s(g.out_opt, g.out_dir, "out");
    r.seed = merge.u(g.seed_opt, g.seed, "seed");
    r.threads = static_cast<int>(merge.i(g.threads_opt, g.threads, "threads", 0, 1024));
    return r;
}

int emit_show_config(const Merger& merge) {
    for (const auto& [k, v] : merge.resolved) std::printf("%s=%s\n", k.c_str(), v.c_str());
    return 0;
}

void write_output(const Resolved& globals, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(globals.out_dir);
    write_text_file(globals.out_dir + "/" + name, content);
}

// Vector (p^(-exp), 0, ..., 0) carried with a full digit window so that later
// cancellations still resolve the norm. exp = nullopt gives the origin.
PadicVec axis_point(uint32_t p, int n, std::optional<int> norm_exp_opt) {
    PadicVec v = PadicVec::zero(p, n);
    if (norm_exp_opt) {
        std::vector<uint32_t> digits(PadicNumber::kDefaultDigits, 0);
        digits[0] = 1;
        v.coords[0] = PadicNumber::from_parts(p, -*norm_exp_opt, std::move(digits));
    }
    return v;
}

struct PotentialArgs {
    std::string kind = "zero";
    double v0 = 1.0;
    double far = 0.0;
    int radius_exp = 0;
    double coupling = 1.0;
    int cutoff_exp = -8;

    CLI::Option* kind_opt = nullptr;
    CLI::Option* v0_opt = nullptr;
    CLI::Option* far_opt = nullptr;
    CLI::Option* radius_opt = nullptr;
    CLI::Option* coupling_opt = nullptr;
    CLI::Option* cutoff_opt = nullptr;

    void add_options(CLI::App* cmd) {
        kind_opt = cmd->add_option("--potential", kind, "zero | constant | step | coulomb")
                       ->check(CLI::IsMember({"zero", "constant", "step", "coulomb"}));
        v0_opt = cmd->add_option("--v0", v0, "potential value (constant / step inside)");
        far_opt = cmd->add_option("--far", far, "step potential value outside the ball");
        radius_opt = cmd->add_option("--radius-exp", radius_exp, "step ball radius exponent");
        coupling_opt = cmd->add_option("--coupling", coupling, "coulomb coupling strength");
        cutoff_opt = cmd->add_option("--cutoff-exp", cutoff_exp, "coulomb cutoff norm exponent");
    }

    Potential build(Merger& merge, uint32_t p) const {
        std::string k = merge.s(kind_opt, kind, "potential");
        if (k == "zero") return Potential::zero();
        if (k == "constant") return Potential::constant(merge.d(v0_opt, v0, "v0", -1e12, 1e12));
        if (k == "step")
            return Potential::step(
                static_cast<int>(merge.i(radius_opt, radius_exp, "radius_exp", -64, 64)),
                merge.d(v0_opt, v0, "v0", -1e12, 1e12), merge.d(far_opt, far, "far", -1e12, 1e12));
        return Potential::coulomb(merge.d(coupling_opt, coupling, "coupling", -1e12, 1e12),
                                  static_cast<int>(merge.i(cutoff_opt, cutoff_exp, "cutoff_exp",
                                                           -64, 64)),
                                  p);
    }
};

const std::vector<std::string> kPotentialKeys = {"potential", "v0",       "far",
                                                 "radius_exp", "coupling", "cutoff_exp"};
const std::vector<std::string> kGlobalKeys = {"out", "seed", "threads"};

std::vector<std::string> with_globals(std::vector<std::string> keys) {
    keys.insert(keys.end(), kGlobalKeys.begin(), kGlobalKeys.end());
    return keys;
}

Config load_config(const GlobalArgs& g, const std::vector<std::string>& allowed) {
    if (g.config_path.empty()) return Config::empty();
    return Config::from_file(g.config_path, allowed);
}

Json params_json(const HeatKernelParams& prm) {
    Json j;
    j["p"] = static_cast<long long>(prm.p);
    j["n"] = prm.n;
    j["delta"] = prm.delta;
    j["b"] = prm.b;
    j["t"] = prm.t;
    j["eps"] = prm.eps;
    return j;
}

// ---------------------------------------------------------------- density --

struct DensityArgs {
    long long p = 2;
    int n = 1;
    int delta = 0;
    double b = 1.0;
    double t = 1.0;
    double eps = 1e-12;
    bool check_model = false;

    CLI::Option* p_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
};

int run_density(const GlobalArgs& g, const DensityArgs& a) {
    Config cfg = load_config(g, with_globals({"p", "n", "delta", "b", "t", "eps"}));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    HeatKernelParams prm;
    prm.p = static_cast<uint32_t>(merge.i(a.p_opt, a.p, "p", 2, 97));
    prm.n = static_cast<int>(merge.i(a.n_opt, a.n, "n", 1, 8));
    prm.delta = static_cast<int>(merge.i(a.delta_opt, a.delta, "delta", -16, 16));
    prm.b = merge.d(a.b_opt, a.b, "b", 1e-3, 64.0);
    prm.t = merge.d(a.t_opt, a.t, "t", 1e-9, 1e9);
    prm.eps = merge.d(a.eps_opt, a.eps, "eps", 1e-15, 1e-3);
    if (g.show_config) return emit_show_config(merge);

    RadialDensity law = radial_law(prm);

    CsvBuilder csv({"m", "norm", "shell_density", "pmf", "cdf"});
    for (int i = 0; i < law.size(); ++i) {
        int m = law.m_lo + i;
        csv.begin_row();
        csv.add(static_cast<long long>(m));
        csv.add(std::pow(static_cast<double>(prm.p), m));
        csv.add(law.shell_density[static_cast<size_t>(i)]);
        csv.add(law.pmf[static_cast<size_t>(i)]);
        csv.add(law.cdf[static_cast<size_t>(i)]);
    }
    write_output(globals, "density.csv", csv.str());

    Json j;
    j["schema_version"] = 1;
    j["params"] = params_json(prm);
    j["m_lo"] = law.m_lo;
    j["m_hi"] = law.m_hi;
    j["f0"] = law.f0;
    j["head_bound"] = law.head_bound;
    j["tail_bound"] = law.tail_bound;
    write_output(globals, "density.json", dump_json_pinned(j));

    if (a.check_model) {
        if (prm.n != 1 || prm.delta != 0)
            throw std::domain_error("density --validate needs n = 1, delta = 0");
        int NM = prm.p == 2 ? 6 : 4;
        FiniteModel model = build_model(prm.p, NM, NM, 1 << 16);
        std::vector<double> row = transition_row(model, prm.b, prm.t);
        double scale = 1.0 / model.cell_measure();
        double gap = windowed_density_gap_bound(prm, NM, NM);
        for (int m = 1 - NM; m <= NM; ++m) {
            long long jcell = 1;
            for (int i = 0; i < NM - m; ++i) jcell *= model.p;
            double model_value = row[static_cast<size_t>(jcell)] * scale;
            double continuum = density_value(prm, m);
            double dev = std::abs(continuum - model_value);
            double allowed = gap + 1e-9 * std::max(1.0, std::abs(continuum));
            if (dev > allowed)
                throw OracleError("density vs model kernel at shell " + std::to_string(m) +
                                  ": deviation " + format_double(dev) + " exceeds " +
                                  format_double(allowed));
        }
        std::printf("model cross-check passed within certified bound %s\n",
                    format_double(gap).c_str());
    }

    std::printf("density table with %d shells written to %s\n", law.size(),
                globals.out_dir.c_str());
    return 0;
}

// ----------------------------------------------------------------- kernel --

struct KernelArgs {
    long long p = 2;
    int n = 1;
    int delta = 0;
    double b = 1.0;
    double t = 1.0;
    long long paths = 100000;
    int steps = 16;
    int x_exp = 0;
    int y_exp = 0;
    bool check_exact = false;
    PotentialArgs pot;

    CLI::Option* p_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* paths_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
    CLI::Option* x_opt = nullptr;
    CLI::Option* y_opt = nullptr;
};

int run_kernel(const GlobalArgs& g, const KernelArgs& a) {
    std::vector<std::string> keys = {"p", "n", "delta", "b", "t", "paths", "steps", "x_exp",
                                     "y_exp"};
    keys.insert(keys.end(), kPotentialKeys.begin(), kPotentialKeys.end());
    Config cfg = load_config(g, with_globals(keys));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    KernelQuery query;
    query.prm.p = static_cast<uint32_t>(merge.i(a.p_opt, a.p, "p", 2, 97));
    query.prm.n = static_cast<int>(merge.i(a.n_opt, a.n, "n", 1, 8));
    query.prm.delta = static_cast<int>(merge.i(a.delta_opt, a.delta, "delta", -16, 16));
    query.prm.b = merge.d(a.b_opt, a.b, "b", 1e-3, 64.0);
    query.prm.t = merge.d(a.t_opt, a.t, "t", 1e-9, 1e9);
    query.paths = merge.i(a.paths_opt, a.paths, "paths", 2, 100000000);
    query.steps = static_cast<int>(merge.i(a.steps_opt, a.steps, "steps", 1, 100000));
    bool x_origin = (!a.x_opt || a.x_opt->count() == 0) && !cfg.has("x_exp");
    int x_exp = static_cast<int>(merge.i(a.x_opt, a.x_exp, "x_exp", -64, 64));
    int y_exp = static_cast<int>(merge.i(a.y_opt, a.y_exp, "y_exp", -64, 64));
    Potential V = a.pot.build(merge, query.prm.p);
    if (g.show_config) return emit_show_config(merge);

    query.x = axis_point(query.prm.p, query.prm.n,
                         x_origin ? std::nullopt : std::optional<int>(x_exp));
    query.y = axis_point(query.prm.p, query.prm.n, y_exp);
    query.V = V;
    query.seed = globals.seed;
    query.threads = globals.threads;

    KernelEstimate est = estimate_kernel(query);

    Json j;
    j["schema_version"] = 1;
    j["params"] = params_json(query.prm);
    j["x_exp"] = x_origin ? Json(nullptr) : Json(x_exp);
    j["y_exp"] = y_exp;
    j["potential"] = V.describe();
    j["paths"] = est.paths;
    j["steps"] = est.steps;
    j["seed"] = static_cast<long long>(est.seed);
    j["estimate"] = est.estimate;
    j["std_error"] = est.std_error;
    write_output(globals, "kernel.json", dump_json_pinned(j));
    std::printf("kernel estimate %s (std error %s) in %.2f s\n",
                format_double(est.estimate).c_str(), format_double(est.std_error).c_str(),
                est.elapsed_seconds);

    if (a.check_exact) {
        if (!V.is_zero() && V.describe().rfind("constant", 0) != 0)
            throw std::domain_error("kernel --check-exact needs a zero or constant potential");
        PadicVec diff = vec_sub(query.y, query.x);
        double free_density = diff.is_zero() ? density_at_zero(query.prm)
                                             : density_value(query.prm, diff.norm_exp());
        double reference = std::exp(-query.prm.t * V.at_zero()) * free_density;
        double z = z_score(est.estimate, reference, est.std_error);
        std::printf("exact reference %s, z = %.3f\n", format_double(reference).c_str(), z);
        if (std::abs(z) > 5.0)
            throw OracleError("kernel estimate disagrees with the exact reference: z = " +
                              format_double(z));
    }
    return 0;
}

// ------------------------------------------------------------------ paths --

struct PathsArgs {
    long long p = 2;
    int n = 1;
    int delta = 0;
    double b = 1.0;
    double t = 1.0;
    long long count = 8;
    int steps = 16;

    CLI::Option* p_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* count_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
};

int run_paths(const GlobalArgs& g, const PathsArgs& a) {
    Config cfg = load_config(g, with_globals({"p", "n", "delta", "b", "t", "paths", "steps"}));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    HeatKernelParams prm;
    prm.p = static_cast<uint32_t>(merge.i(a.p_opt, a.p, "p", 2, 97));
    prm.n = static_cast<int>(merge.i(a.n_opt, a.n, "n", 1, 8));
    prm.delta = static_cast<int>(merge.i(a.delta_opt, a.delta, "delta", -16, 16));
    prm.b = merge.d(a.b_opt, a.b, "b", 1e-3, 64.0);
    prm.t = merge.d(a.t_opt, a.t, "t", 1e-9, 1e9);
    long long count = merge.i(a.count_opt, a.count, "paths", 1, 1000000);
    int steps = static_cast<int>(merge.i(a.steps_opt, a.steps, "steps", 1, 100000));
    if (g.show_config) return emit_show_config(merge);

    TimeGrid grid{prm.t, steps};
    IncrementSampler inc(prm, grid.dt());
    PadicVec origin = PadicVec::zero(prm.p, prm.n);

    CsvBuilder csv({"path", "step", "time", "norm"});
    Accumulator final_norm;
    for (long long i = 0; i < count; ++i) {
        PathSample path = sample_path(origin, grid, inc, globals.seed, static_cast<uint64_t>(i));
        for (int j = 0; j <= steps; ++j) {
            csv.begin_row();
            csv.add(i);
            csv.add(static_cast<long long>(j));
            csv.add(grid.node(j));
            csv.add(path.nodes[static_cast<size_t>(j)].norm());
        }
        final_norm.add(path.nodes.back().norm());
    }
    write_output(globals, "paths.csv", csv.str());

    Json j;
    j["schema_version"] = 1;
    j["params"] = params_json(prm);
    j["paths"] = count;
    j["steps"] = steps;
    j["seed"] = static_cast<long long>(globals.seed);
    j["mean_final_norm"] = final_norm.mean();
    write_output(globals, "paths.json", dump_json_pinned(j));
    std::printf("%lld paths of %d steps written to %s\n", count, steps, globals.out_dir.c_str());
    return 0;
}

// --------------------------------------------------------------- validate --

struct ValidateArgs {
    long long samples = 20000;
    std::vector<std::string> overrides;

    CLI::Option* samples_opt = nullptr;
};

int run_validate(const GlobalArgs& g, const ValidateArgs& a) {
    Config cfg = load_config(g, with_globals({"samples"}));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    ValidationOptions opts;
    opts.seed = globals.seed;
    opts.threads = globals.threads;
    opts.mc_samples = merge.i(a.samples_opt, a.samples, "samples", 100, 10000000);
    for (const std::string& ov : a.overrides) {
        size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override", "expected id=bound, got '" + ov + "'");
        std::string id = ov.substr(0, eq);
        char* end = nullptr;
        double bound = std::strtod(ov.c_str() + eq + 1, &end);
        if (end != ov.c_str() + ov.size())
            throw ConfigError("override", "bad bound in '" + ov + "'");
        opts.bound_overrides[id] = bound;
    }
    if (g.show_config) return emit_show_config(merge);

    std::vector<CheckResult> results = run_validation_suite(opts);
    int failures = 0;
    for (const CheckResult& res : results) {
        std::printf("%s  %-28s observed %-13s bound %-13s %s\n", res.passed ? "PASS" : "FAIL",
                    res.id.c_str(), format_double(res.observed).c_str(),
                    format_double(res.bound).c_str(), res.detail.c_str());
        if (!res.passed) ++failures;
    }
    write_output(globals, "validation.json", dump_json_pinned(validation_report(results)));
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- profile --

struct ProfileArgs {
    std::string kind = "standard";
    long long p = 2;
    int n = 1;
    int r_lo = -6;
    int r_hi = 6;

    CLI::Option* kind_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* rlo_opt = nullptr;
    CLI::Option* rhi_opt = nullptr;
};

int run_profile(const GlobalArgs& g, const ProfileArgs& a) {
    Config cfg = load_config(g, with_globals({"kind", "p", "n", "r_lo", "r_hi"}));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    std::string kind = merge.s(a.kind_opt, a.kind, "kind");
    uint32_t p = static_cast<uint32_t>(merge.i(a.p_opt, a.p, "p", 2, 97));
    int n = static_cast<int>(merge.i(a.n_opt, a.n, "n", 1, 8));
    int r_lo = static_cast<int>(merge.i(a.rlo_opt, a.r_lo, "r_lo", -64, 64));
    int r_hi = static_cast<int>(merge.i(a.rhi_opt, a.r_hi, "r_hi", -64, 64));
    if (g.show_config) return emit_show_config(merge);
    if (r_hi < r_lo) throw std::domain_error("profile: r_hi < r_lo");

    NormProfile prof;
    if (kind == "standard") {
        prof = standard_profile(p, n, std::vector<int>(static_cast<size_t>(n), 0), r_lo, r_hi);
    } else if (kind == "quaternion") {
        QuaternionParams qprm = default_quaternion_params(p);
        prof = trace_zero_profile(qprm, r_lo, r_hi);
    } else {
        throw std::domain_error("profile: kind must be standard or quaternion");
    }

    CsvBuilder csv({"r", "exp_num", "value", "measure"});
    for (int r = prof.r_lo; r <= prof.r_hi(); ++r) {
        csv.begin_row();
        csv.add(static_cast<long long>(r));
        csv.add(static_cast<long long>(prof.exp_num[static_cast<size_t>(r - prof.r_lo)]));
        csv.add(prof.value(r));
        csv.add(to_double(prof.measure(r)));
    }
    write_output(globals, "profile.csv", csv.str());

    Json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    j["p"] = static_cast<long long>(p);
    j["dim"] = prof.dim;
    j["ram"] = prof.ram;
    j["exp_den"] = prof.exp_den;
    j["r_lo"] = prof.r_lo;
    j["r_hi"] = prof.r_hi();
    j["spacing_ok"] = prof.check_spacing();
    j["band_constant"] = prof.band_constant();
    write_output(globals, "profile.json", dump_json_pinned(j));
    std::printf("profile with %d radii written to %s (band constant %s)\n", prof.size(),
                globals.out_dir.c_str(), format_double(prof.band_constant()).c_str());
    return 0;
}

// ------------------------------------------------------------------ model --

struct ModelArgs {
    long long p = 2;
    int N = 4;
    int M = 4;
    double b = 1.0;
    double t = 1.0;
    std::string emit = "both";
    PotentialArgs pot;

    CLI::Option* p_opt = nullptr;
    CLI::Option* N_opt = nullptr;
    CLI::Option* M_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* emit_opt = nullptr;
};

int run_model(const GlobalArgs& g, const ModelArgs& a) {
    std::vector<std::string> keys = {"p", "model_n", "model_m", "b", "t", "emit"};
    keys.insert(keys.end(), kPotentialKeys.begin(), kPotentialKeys.end());
    Config cfg = load_config(g, with_globals(keys));
    Merger merge{cfg, {}};
    Resolved globals = resolve_globals(g, merge);

    uint32_t p = static_cast<uint32_t>(merge.i(a.p_opt, a.p, "p", 2, 97));
    int N = static_cast<int>(merge.i(a.N_opt, a.N, "model_n", 0, 20));
    int M = static_cast<int>(merge.i(a.M_opt, a.M, "model_m", 0, 20));
    double b = merge.d(a.b_opt, a.b, "b", 1e-3, 64.0);
    double t = merge.d(a.t_opt, a.t, "t", 1e-9, 1e9);
    std::string emit = merge.s(a.emit_opt, a.emit, "emit");
    Potential V = a.pot.build(merge, p);
    if (g.show_config) return emit_show_config(merge);

    FiniteModel model = build_model(p, N, M);

    if (emit == "row" || emit == "both") {
        std::vector<double> row = transition_row(model, b, t);
        CsvBuilder csv({"d", "probability"});
        for (long long d = 0; d < model.size; ++d) {
            csv.begin_row();
            csv.add(d);
            csv.add(row[static_cast<size_t>(d)]);
        }
        write_output(globals, "model_row.csv", csv.str());
    }
    if (emit == "spectrum" || emit == "both") {
        Eigen::VectorXd evs = spectrum(model, b, V.is_zero() ? nullptr : &V);
        CsvBuilder csv({"index", "eigenvalue"});
        for (long long i = 0; i < evs.size(); ++i) {
            csv.begin_row();
            csv.add(i);
            csv.add(evs(i));
        }
        write_output(globals, "model_spectrum.csv", csv.str());
    }

    Json j;
    j["schema_version"] = 1;
    j["p"] = static_cast<long long>(p);
    j["model_n"] = N;
    j["model_m"] = M;
    j["b"] = b;
    j["t"] = t;
    j["cells"] = model.size;
    j["cell_measure"] = model.cell_measure();
    j["potential"] = V.describe();
    write_output(globals, "model.json", dump_json_pinned(j));
    std::printf("model with %lld cells written to %s\n", model.size, globals.out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic heat semigroup and Feynman-Kac toolkit"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "key=value config file (schema_version=1)");
    g.out_opt = app.add_option("--out", g.out_dir, "output directory");
    g.seed_opt = app.add_option("--seed", g.seed, "random seed");
    g.threads_opt =
        app.add_option("--threads", g.threads, "worker threads (0 = PADIC_FK_THREADS or 1)")
            ->check(CLI::Range(0, 1024));
    app.add_flag("--show-config", g.show_config, "print the resolved configuration and exit");

    // Global options (--seed, --threads, --out, --config) may follow the
    // subcommand name: let unmatched subcommand arguments bubble up.
    auto add_subcommand = [&app](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->fallthrough();
        return cmd;
    };

    DensityArgs da;
    CLI::App* density = add_subcommand("density", "tabulate the radial heat density");
    da.p_opt = density->add_option("--p", da.p, "prime")->check(CLI::Range(2, 97));
    da.n_opt = density->add_option("--n", da.n, "dimension")->check(CLI::Range(1, 8));
    da.delta_opt = density->add_option("--delta", da.delta, "character conductor");
    da.b_opt = density->add_option("--b", da.b, "symbol exponent");
    da.t_opt = density->add_option("--t", da.t, "time");
    da.eps_opt = density->add_option("--eps", da.eps, "certified error target");
    density->add_flag("--validate", da.check_model,
                      "cross-check against the finite model (exit 4 on disagreement)");

    KernelArgs ka;
    CLI::App* kernel = add_subcommand("kernel", "Monte Carlo propagator estimate");
    ka.p_opt = kernel->add_option("--p", ka.p, "prime")->check(CLI::Range(2, 97));
    ka.n_opt = kernel->add_option("--n", ka.n, "dimension")->check(CLI::Range(1, 8));
    ka.delta_opt = kernel->add_option("--delta", ka.delta, "character conductor");
    ka.b_opt = kernel->add_option("--b", ka.b, "symbol exponent");
    ka.t_opt = kernel->add_option("--t", ka.t, "horizon");
    ka.paths_opt = kernel->add_option("--paths", ka.paths, "Monte Carlo paths");
    ka.steps_opt = kernel->add_option("--steps", ka.steps, "time steps");
    ka.x_opt = kernel->add_option("--x-exp", ka.x_exp, "|x| exponent (omit for the origin)");
    ka.y_opt = kernel->add_option("--y-exp", ka.y_exp, "|y| exponent");
    kernel->add_flag("--check-exact", ka.check_exact,
                     "compare with the exact kernel for zero/constant V (exit 4 on z > 5)");
    ka.pot.add_options(kernel);

    PathsArgs pa;
    CLI::App* paths = add_subcommand("paths", "sample path skeletons");
    pa.p_opt = paths->add_option("--p", pa.p, "prime")->check(CLI::Range(2, 97));
    pa.n_opt = paths->add_option("--n", pa.n, "dimension")->check(CLI::Range(1, 8));
    pa.delta_opt = paths->add_option("--delta", pa.delta, "character conductor");
    pa.b_opt = paths->add_option("--b", pa.b, "symbol exponent");
    pa.t_opt = paths->add_option("--t", pa.t, "horizon");
    pa.count_opt = paths->add_option("--paths", pa.count, "number of paths");
    pa.steps_opt = paths->add_option("--steps", pa.steps, "time steps");

    ValidateArgs va;
    CLI::App* validate = add_subcommand("validate", "run the validation suite");
    va.samples_opt = validate->add_option("--samples", va.samples, "Monte Carlo sample count");
    validate->add_option("--override", va.overrides,
                         "override a check bound as id=bound (repeatable)");

    ProfileArgs pra;
    CLI::App* profile = add_subcommand("profile", "tabulate a norm profile");
    pra.kind_opt = profile->add_option("--kind", pra.kind, "standard | quaternion")
                       ->check(CLI::IsMember({"standard", "quaternion"}));
    pra.p_opt = profile->add_option("--p", pra.p, "prime")->check(CLI::Range(2, 97));
    pra.n_opt = profile->add_option("--n", pra.n, "dimension (standard kind)");
    pra.rlo_opt = profile->add_option("--r-lo", pra.r_lo, "lowest radius index");
    pra.rhi_opt = profile->add_option("--r-hi", pra.r_hi, "highest radius index");

    ModelArgs ma;
    CLI::App* model = add_subcommand("model", "finite group model tables");
    ma.p_opt = model->add_option("--p", ma.p, "prime")->check(CLI::Range(2, 97));
    ma.N_opt = model->add_option("--N", ma.N, "outer resolution exponent");
    ma.M_opt = model->add_option("--M", ma.M, "inner resolution exponent");
    ma.b_opt = model->add_option("--b", ma.b, "symbol exponent");
    ma.t_opt = model->add_option("--t", ma.t, "time");
    ma.emit_opt = model->add_option("--emit", ma.emit, "row | spectrum | both")
                      ->check(CLI::IsMember({"row", "spectrum", "both"}));
    ma.pot.add_options(model);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (density->parsed()) return run_density(g, da);
        if (kernel->parsed()) return run_kernel(g, ka);
        if (paths->parsed()) return run_paths(g, pa);
        if (validate->parsed()) return run_validate(g, va);
        if (profile->parsed()) return run_profile(g, pra);
        if (model->parsed()) return run_model(g, ma);
        std::fprintf(stderr, "no subcommand selected\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const OracleError& e) {
        std::fprintf(stderr, "oracle disagreement: %s\n", e.what());
        return 4;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const std::range_error& e) {
        std::fprintf(stderr, "range error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 3;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "out of range: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
