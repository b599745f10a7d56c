#pragma once

#include "padicfk/potential.hpp"
#include "padicfk/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace padicfk {

// Finite quotient G = p^(-N) Z_p / p^M Z_p: S = p^(N+M) cells x_j = j p^(-N)
// with cell measure p^(-M) (unit normalization, delta = 0). The dual group is
// indexed the same way via xi_l = l p^(-M); |xi_l| = p^(M - v_p(l)) and the
// symbol at the trivial coset l = 0 is 0.
struct FiniteModel {
    uint32_t p = 2;
    int N = 0;
    int M = 0;
    long long size = 1;  // p^(N+M)

    double cell_measure() const;
    // exponent e with |x_j| = p^e; j = 0 is the zero cell (norm <= p^(-M): returns kZeroCell)
    static constexpr int kZeroCell = INT32_MIN;
    int norm_exp(long long j) const;
    int dual_norm_exp(long long l) const;  // |xi_l|, l = 0 -> kZeroCell
    // index of -x_j
    long long negate(long long j) const { return j == 0 ? 0 : size - j; }
    // eigenvalue of the generator at frequency l: |xi_l|^b (0 at l = 0)
    double symbol(long long l, double b) const;
};

FiniteModel build_model(uint32_t p, int N, int M, long long size_cap = 1 << 16);

// Dense generator matrix: D = U* diag(symbol) U / S with U the character
// table; real symmetric, rows sum to 0 (the l = 0 symbol vanishes), circulant
// in the cyclic index difference.
Eigen::MatrixXd generator_matrix(const FiniteModel& model, double b);

// Transition row of exp(-t D) as probabilities over the index difference
// d = (j - k) mod S: row[d] = (1/S) sum_l exp(-t symbol_l) cos(2 pi d l / S).
// Exact eigendecomposition in the character basis; no dense solve involved.
std::vector<double> transition_row(const FiniteModel& model, double b, double t);

// Same row through the radial structure of the symbol: frequencies group by
// v_p(l), and the character sum over each group is a difference of divisor
// indicators, so row[d] = (1/S)(1 + sum_v E_v ((S/p^v) 1[(S/p^v) | d]
// - (S/p^(v+1)) 1[(S/p^(v+1)) | d])) with E_v = exp(-t p^((M - v) b)).
// O(S (N + M)) and free of trigonometry; used by samplers, while the cosine
// route above stays as the independent cross-check.
std::vector<double> transition_row_fast(const FiniteModel& model, double b, double t);

// Kernel of exp(-t H), H = D + V, relative to cell measure (entries =
// transition probability / cell_measure). V = nullptr gives the circulant
// fast path through transition_row; otherwise a dense symmetric eigensolve.
Eigen::MatrixXd propagator_kernel(const FiniteModel& model, double b, double t,
                                  const Potential* V = nullptr);

// Spectrum of H = D + V (ascending eigenvalues).
Eigen::VectorXd spectrum(const FiniteModel& model, double b, const Potential* V = nullptr);

// Potential evaluated at the cell representatives, as a diagonal vector.
Eigen::VectorXd potential_on_cells(const FiniteModel& model, const Potential& V);

// Endpoint-pinned random walk on the model: X_0 = x fixed, X_T = y fixed,
// intermediate nodes drawn from the exact bridge conditionals built out of
// transition rows at the grid spacing. steps = number of increments; the
// returned path holds steps+1 cell indices.
class BridgeSampler {
public:
    BridgeSampler(const FiniteModel& model, double b, double T, int steps);

    std::vector<long long> sample(long long x_index, long long y_index, CounterRng& rng) const;
    // P(X_T = y | X_0 = x) under the unconditioned walk
    double endpoint_probability(long long x_index, long long y_index) const;
    const FiniteModel& model() const { return model_; }
    int steps() const { return steps_; }
    double dt() const { return dt_; }

private:
    FiniteModel model_;
    double dt_;
    int steps_;
    std::vector<double> step_row_;               // transition row at dt
    std::vector<std::vector<double>> rest_rows_; // rows at (steps - j) dt, j = 1..steps-1
    std::vector<double> full_row_;               // row at T, for endpoint probabilities
};

} // namespace padicfk
