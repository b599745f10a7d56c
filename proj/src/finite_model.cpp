#include "padicfk/finite_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace padicfk {

namespace {

constexpr long long kDenseCap = 4096;

bool small_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int padic_valuation(long long j, uint32_t p) {
    int v = 0;
    while (j % p == 0) {
        j /= p;
        ++v;
    }
    return v;
}

void check_cell(const FiniteModel& model, long long j, const char* what) {
    if (j < 0 || j >= model.size) throw std::out_of_range(std::string(what) + ": cell index out of range");
}

void check_dense(const FiniteModel& model, const char* what) {
    if (model.size > kDenseCap)
        throw std::range_error(std::string(what) + ": model too large for a dense matrix (cap " +
                               std::to_string(kDenseCap) + " cells)");
}

std::vector<double> symbol_table(const FiniteModel& model, double b) {
    std::vector<double> sym(static_cast<size_t>(model.size), 0.0);
    for (long long l = 1; l < model.size; ++l)
        sym[static_cast<size_t>(l)] = model.symbol(l, b);
    return sym;
}

// weights[l] applied to the character at frequency l, folded over the row of
// index differences: out[d] = (1/S) sum_l weights[l] cos(2 pi d l / S).
std::vector<double> character_fold(const FiniteModel& model, const std::vector<double>& weights) {
    const long long S = model.size;
    std::vector<double> cos_table(static_cast<size_t>(S));
    for (long long k = 0; k < S; ++k)
        cos_table[static_cast<size_t>(k)] =
            std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(S));
    std::vector<double> out(static_cast<size_t>(S));
    for (long long d = 0; d < S; ++d) {
        long double acc = 0.0L;
        for (long long l = 0; l < S; ++l)
            acc += static_cast<long double>(weights[static_cast<size_t>(l)]) *
                   static_cast<long double>(cos_table[static_cast<size_t>((d * l) % S)]);
        out[static_cast<size_t>(d)] = static_cast<double>(acc / static_cast<long double>(S));
    }
    return out;
}

Eigen::MatrixXd circulant_from_row(const FiniteModel& model, const std::vector<double>& row) {
    const long long S = model.size;
    Eigen::MatrixXd A(S, S);
    for (long long j = 0; j < S; ++j)
        for (long long k = 0; k < S; ++k) A(j, k) = row[static_cast<size_t>((j - k + S) % S)];
    return A;
}

} // namespace

double FiniteModel::cell_measure() const {
    return std::pow(static_cast<double>(p), -static_cast<double>(M));
}

int FiniteModel::norm_exp(long long j) const {
    check_cell(*this, j, "FiniteModel::norm_exp");
    if (j == 0) return kZeroCell;
    return N - padic_valuation(j, p);
}

int FiniteModel::dual_norm_exp(long long l) const {
    check_cell(*this, l, "FiniteModel::dual_norm_exp");
    if (l == 0) return kZeroCell;
    return M - padic_valuation(l, p);
}

double FiniteModel::symbol(long long l, double b) const {
    check_cell(*this, l, "FiniteModel::symbol");
    if (l == 0) return 0.0;
    return std::pow(static_cast<double>(p), b * static_cast<double>(dual_norm_exp(l)));
}

FiniteModel build_model(uint32_t p, int N, int M, long long size_cap) {
    if (!small_prime(p)) throw std::invalid_argument("build_model: p must be prime");
    if (N < 0 || M < 0 || N + M < 1)
        throw std::invalid_argument("build_model: need N, M >= 0 and N + M >= 1");
    if (size_cap < 2) throw std::invalid_argument("build_model: size_cap too small");
    long long size = 1;
    for (int i = 0; i < N + M; ++i) {
        if (size > size_cap / static_cast<long long>(p))
            throw std::range_error("build_model: p^(N+M) exceeds the size cap");
        size *= static_cast<long long>(p);
    }
    FiniteModel model;
    model.p = p;
    model.N = N;
    model.M = M;
    model.size = size;
    return model;
}

Eigen::MatrixXd generator_matrix(const FiniteModel& model, double b) {
    check_dense(model, "generator_matrix");
    return circulant_from_row(model, character_fold(model, symbol_table(model, b)));
}

std::vector<double> transition_row(const FiniteModel& model, double b, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("transition_row: t must be positive");
    std::vector<double> weights = symbol_table(model, b);
    for (auto& w : weights) w = std::exp(-t * w);
    return character_fold(model, weights);
}

std::vector<double> transition_row_fast(const FiniteModel& model, double b, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("transition_row_fast: t must be positive");
    const long long S = model.size;
    const uint32_t p = model.p;
    std::vector<double> row(static_cast<size_t>(S), 1.0);
    long long q1 = S;  // S / p^v
    for (int v = 0; v < model.N + model.M; ++v) {
        const double E = std::exp(
            -t * std::pow(static_cast<double>(p), b * static_cast<double>(model.M - v)));
        const long long q2 = q1 / static_cast<long long>(p);
        if (E > 0.0) {
            const double add = E * static_cast<double>(q1);
            for (long long d = 0; d < S; d += q1) row[static_cast<size_t>(d)] += add;
            const double sub = E * static_cast<double>(q2);
            for (long long d = 0; d < S; d += q2) row[static_cast<size_t>(d)] -= sub;
        }
        q1 = q2;
    }
    const double inv_s = 1.0 / static_cast<double>(S);
    for (auto& x : row) x *= inv_s;
    return row;
}

Eigen::MatrixXd propagator_kernel(const FiniteModel& model, double b, double t,
                                  const Potential* V) {
    if (!(t > 0.0)) throw std::invalid_argument("propagator_kernel: t must be positive");
    check_dense(model, "propagator_kernel");
    const double cell = model.cell_measure();
    if (V == nullptr || V->is_zero())
        return circulant_from_row(model, transition_row(model, b, t)) / cell;

    Eigen::MatrixXd H = generator_matrix(model, b);
    H += potential_on_cells(model, *V).asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("propagator_kernel: eigensolve failed");
    Eigen::VectorXd decay = (-t * es.eigenvalues().array()).exp();
    return (es.eigenvectors() * decay.asDiagonal() * es.eigenvectors().transpose()) / cell;
}

Eigen::VectorXd spectrum(const FiniteModel& model, double b, const Potential* V) {
    if (V == nullptr || V->is_zero()) {
        std::vector<double> sym = symbol_table(model, b);
        std::sort(sym.begin(), sym.end());
        return Eigen::Map<const Eigen::VectorXd>(sym.data(), static_cast<long>(sym.size()));
    }
    check_dense(model, "spectrum");
    Eigen::MatrixXd H = generator_matrix(model, b);
    H += potential_on_cells(model, *V).asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolve failed");
    return es.eigenvalues();
}

Eigen::VectorXd potential_on_cells(const FiniteModel& model, const Potential& V) {
    Eigen::VectorXd out(model.size);
    out(0) = V.at_zero();
    for (long long j = 1; j < model.size; ++j) out(j) = V.at_norm_exp(model.norm_exp(j));
    return out;
}

BridgeSampler::BridgeSampler(const FiniteModel& model, double b, double T, int steps)
    : model_(model), dt_(T / steps), steps_(steps) {
    if (steps < 1) throw std::invalid_argument("BridgeSampler: steps must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("BridgeSampler: T must be positive");
    step_row_ = transition_row_fast(model_, b, dt_);
    rest_rows_.reserve(static_cast<size_t>(std::max(0, steps_ - 1)));
    for (int j = 1; j < steps_; ++j)
        rest_rows_.push_back(transition_row_fast(model_, b, (steps_ - j) * dt_));
    full_row_ = transition_row_fast(model_, b, T);
}

std::vector<long long> BridgeSampler::sample(long long x_index, long long y_index,
                                             CounterRng& rng) const {
    check_cell(model_, x_index, "BridgeSampler::sample");
    check_cell(model_, y_index, "BridgeSampler::sample");
    const long long S = model_.size;
    std::vector<long long> path(static_cast<size_t>(steps_) + 1);
    path.front() = x_index;
    path.back() = y_index;

    std::vector<double> q(static_cast<size_t>(S));
    long long w = x_index;
    for (int j = 1; j < steps_; ++j) {
        const std::vector<double>& rest = rest_rows_[static_cast<size_t>(j - 1)];
        double total = 0.0;
        for (long long u = 0; u < S; ++u) {
            double a = step_row_[static_cast<size_t>((u - w + S) % S)];
            double r = rest[static_cast<size_t>((y_index - u + S) % S)];
            double val = (a > 0.0 && r > 0.0) ? a * r : 0.0;
            q[static_cast<size_t>(u)] = val;
            total += val;
        }
        if (!(total > 0.0))
            throw std::runtime_error("BridgeSampler::sample: conditional mass underflowed");
        double target = rng.next_double() * total;
        double acc = 0.0;
        long long chosen = S - 1;
        for (long long u = 0; u < S; ++u) {
            acc += q[static_cast<size_t>(u)];
            if (target < acc) {
                chosen = u;
                break;
            }
        }
        path[static_cast<size_t>(j)] = chosen;
        w = chosen;
    }
    return path;
}

double BridgeSampler::endpoint_probability(long long x_index, long long y_index) const {
    check_cell(model_, x_index, "BridgeSampler::endpoint_probability");
    check_cell(model_, y_index, "BridgeSampler::endpoint_probability");
    const long long S = model_.size;
    return full_row_[static_cast<size_t>((y_index - x_index + S) % S)];
}

} // namespace padicfk
