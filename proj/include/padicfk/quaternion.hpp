#pragma once

#include "padicfk/norm_profile.hpp"
#include "padicfk/padic.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace padicfk {

// Quaternion algebra (a, b) over Q_p: basis 1, i, j, k with i^2 = a, j^2 = b,
// ij = -ji = k. Coefficients are truncated p-adic numbers.
struct QuaternionParams {
    uint32_t p = 2;
    long long a = -1;
    long long b = -1;
};

// a = smallest quadratic non-residue unit mod p, b = p. Defined for odd p only;
// p = 2 is rejected (the residue-based construction below needs odd p).
QuaternionParams default_quaternion_params(uint32_t p);

struct Quaternion {
    PadicNumber c0, c1, c2, c3;  // c0 + c1 i + c2 j + c3 k
};

Quaternion quaternion_from_integers(const QuaternionParams& prm, long long x0, long long x1,
                                    long long x2, long long x3);
Quaternion quaternion_add(const Quaternion& u, const Quaternion& v);
Quaternion quaternion_multiply(const QuaternionParams& prm, const Quaternion& u,
                               const Quaternion& v);
Quaternion quaternion_conjugate(const Quaternion& u);

// det(x) = x0^2 - a x1^2 - b x2^2 + ab x3^2 (= x * conj(x)); trace = 2 x0.
PadicNumber reduced_norm(const QuaternionParams& prm, const Quaternion& u);
PadicNumber reduced_trace(const Quaternion& u);

// Decides whether (a, b) is a division algebra by exhaustive residue counting:
// counts solutions of det(x) == 0 mod p^k over (Z/p^k)^4 and subtracts the
// non-primitive ones (all coordinates divisible by p, in bijection with
// solutions mod p^(k-2) times a p^4 lifting factor). The algebra is division
// iff no primitive solution exists. k >= 2 required. When primitive solutions
// exist the smallest one in lexicographic order is returned as a witness.
struct DivisionCheckResult {
    long long solutions = 0;        // det == 0 mod p^k, all residues
    long long primitive = 0;        // solutions with some coordinate a unit
    bool is_division = false;
    std::optional<std::array<long long, 4>> witness;
};

DivisionCheckResult division_algebra_check(const QuaternionParams& prm, int k);

// Norm profile of the trace-zero slice {x0 = 0} under |x| = |det x|^(1/2),
// tabulated for a_r = p^(r/2), r in [r_lo, r_hi]. Measures come from exact
// residue counting of {v_p(det) >= -r} inside the bounding coordinate box
// (no closed form assumed); requires the anisotropic default-style parameters
// (unit non-residue a, b = p) so that valuations never cancel and the ball is
// contained in the box.
NormProfile trace_zero_profile(const QuaternionParams& prm, int r_lo, int r_hi);

} // namespace padicfk
