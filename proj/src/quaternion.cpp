#include "padicfk/quaternion.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace padicfk {

namespace {

long long pow_ll(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

bool is_quadratic_residue(long long a, uint32_t p) {
    // Euler criterion; p odd prime, a a unit mod p.
    long long e = (p - 1) / 2, base = ((a % p) + p) % p, r = 1;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1;
}

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

PadicNumber pconst(uint32_t p, long long v) { return PadicNumber::from_integer(p, v); }

// Histogram of s^2 - a t^2 mod M over all residue pairs.
std::vector<long long> binary_form_counts(long long a, long long M) {
    std::vector<long long> sq(static_cast<size_t>(M));
    for (long long s = 0; s < M; ++s) sq[static_cast<size_t>(s)] = s * s % M;
    std::vector<long long> counts(static_cast<size_t>(M), 0);
    long long am = ((a % M) + M) % M;
    for (long long s = 0; s < M; ++s) {
        long long s2 = sq[static_cast<size_t>(s)];
        for (long long t = 0; t < M; ++t) {
            long long v = (s2 - am * sq[static_cast<size_t>(t)]) % M;
            if (v < 0) v += M;
            counts[static_cast<size_t>(v)] += 1;
        }
    }
    return counts;
}

} // namespace

QuaternionParams default_quaternion_params(uint32_t p) {
    if (p == 2)
        throw std::domain_error(
            "default_quaternion_params: p = 2 is not supported; the non-residue "
            "construction of the parameters requires an odd prime");
    long long a = 2;
    while (is_quadratic_residue(a, p)) ++a;
    return QuaternionParams{p, a, static_cast<long long>(p)};
}

Quaternion quaternion_from_integers(const QuaternionParams& prm, long long x0, long long x1,
                                    long long x2, long long x3) {
    return Quaternion{pconst(prm.p, x0), pconst(prm.p, x1), pconst(prm.p, x2), pconst(prm.p, x3)};
}

Quaternion quaternion_add(const Quaternion& u, const Quaternion& v) {
    return Quaternion{u.c0 + v.c0, u.c1 + v.c1, u.c2 + v.c2, u.c3 + v.c3};
}

Quaternion quaternion_multiply(const QuaternionParams& prm, const Quaternion& u,
                               const Quaternion& v) {
    const PadicNumber A = pconst(prm.p, prm.a);
    const PadicNumber B = pconst(prm.p, prm.b);
    const PadicNumber AB = A * B;
    Quaternion w{
        u.c0 * v.c0 + A * (u.c1 * v.c1) + B * (u.c2 * v.c2) - AB * (u.c3 * v.c3),
        u.c0 * v.c1 + u.c1 * v.c0 - B * (u.c2 * v.c3) + B * (u.c3 * v.c2),
        u.c0 * v.c2 + u.c2 * v.c0 + A * (u.c1 * v.c3) - A * (u.c3 * v.c1),
        u.c0 * v.c3 + u.c3 * v.c0 + u.c1 * v.c2 - u.c2 * v.c1,
    };
    return w;
}

Quaternion quaternion_conjugate(const Quaternion& u) {
    return Quaternion{u.c0, -u.c1, -u.c2, -u.c3};
}

PadicNumber reduced_norm(const QuaternionParams& prm, const Quaternion& u) {
    const PadicNumber A = pconst(prm.p, prm.a);
    const PadicNumber B = pconst(prm.p, prm.b);
    return u.c0 * u.c0 - A * (u.c1 * u.c1) - B * (u.c2 * u.c2) + A * B * (u.c3 * u.c3);
}

PadicNumber reduced_trace(const Quaternion& u) {
    return u.c0 + u.c0;
}

DivisionCheckResult division_algebra_check(const QuaternionParams& prm, int k) {
    if (k < 2) throw std::invalid_argument("division_algebra_check: k >= 2 required");
    const long long p = prm.p;
    const long long M = pow_ll(p, k);
    if (M > (1 << 20)) throw std::invalid_argument("division_algebra_check: modulus too large");

    // det factors as (x0^2 - a x1^2) - b (x2^2 - a x3^2); both halves share the
    // same value histogram, so solutions of det == 0 mod M pair values s, w
    // with s == b w.
    auto count_at = [&](long long mod) -> long long {
        if (mod == 1) return 1;  // the empty residue system
        std::vector<long long> counts = binary_form_counts(prm.a, mod);
        long long bm = ((prm.b % mod) + mod) % mod;
        long long total = 0;
        for (long long w = 0; w < mod; ++w)
            total += counts[static_cast<size_t>(bm * w % mod)] * counts[static_cast<size_t>(w)];
        return total;
    };

    DivisionCheckResult res;
    res.solutions = count_at(M);
    long long lower = count_at(pow_ll(p, k - 2));
    // Non-primitive solutions x = p y correspond to det(y) == 0 mod p^(k-2)
    // with y free mod p^(k-1): a p^4 lift factor per lower-level solution.
    res.primitive = res.solutions - pow_ll(p, 4) * lower;
    res.is_division = res.primitive == 0;

    if (!res.is_division) {
        // Witnesses of isotropy are plentiful; a bounded lexicographic scan
        // over small residues finds one without touching the full p^(4k) grid.
        long long cap = std::min<long long>(M, pow_ll(p, (k + 1) / 2 + 1));
        for (long long x0 = 0; x0 < cap && !res.witness; ++x0)
            for (long long x1 = 0; x1 < cap && !res.witness; ++x1)
                for (long long x2 = 0; x2 < cap && !res.witness; ++x2)
                    for (long long x3 = 0; x3 < cap; ++x3) {
                        if (x0 % p == 0 && x1 % p == 0 && x2 % p == 0 && x3 % p == 0) continue;
                        long long d = ((x0 * x0 - prm.a * x1 * x1 - prm.b * x2 * x2 +
                                        prm.a * prm.b * x3 * x3) %
                                       M + M) % M;
                        if (d == 0) {
                            res.witness = std::array<long long, 4>{x0, x1, x2, x3};
                            break;
                        }
                    }
    }
    return res;
}

NormProfile trace_zero_profile(const QuaternionParams& prm, int r_lo, int r_hi) {
    if (r_hi < r_lo) throw std::invalid_argument("trace_zero_profile: empty window");
    const long long p = prm.p;
    if (prm.a % p == 0 || is_quadratic_residue(prm.a, prm.p))
        throw std::domain_error("trace_zero_profile: a must be a unit non-residue");
    if (prm.b % p != 0 || (prm.b / p) % p == 0)
        throw std::domain_error("trace_zero_profile: b must have valuation exactly 1");

    NormProfile prof;
    prof.p = prm.p;
    prof.dim = 3;
    prof.ram = 2;
    prof.exp_den = 2;
    prof.r_lo = r_lo;

    for (int r = r_lo; r <= r_hi; ++r) {
        // Ball {|det|^(1/2) <= p^(r/2)} sits inside the coordinate box
        // |x1| <= p^S1, |x2|,|x3| <= p^S23 because the three valuation tracks
        // 2 v1, 1 + 2 v2, 1 + 2 v3 never cancel for these parameters.
        int S1 = floor_div(r, 2);
        int S23 = floor_div(r + 1, 2);
        int T = 2 * S23 - r;  // depth at which v(det) >= -r becomes a residue condition
        long long modT = pow_ll(p, T);
        long long count = 1;
        if (T > 0) {
            count = 0;
            long long lead = pow_ll(p, 2 * (S23 - S1)) % modT;
            for (long long u1 = 0; u1 < modT; ++u1)
                for (long long u2 = 0; u2 < modT; ++u2)
                    for (long long u3 = 0; u3 < modT; ++u3) {
                        long long f = ((-prm.a * lead % modT) * (u1 * u1 % modT) -
                                       prm.b % modT * (u2 * u2 % modT) +
                                       (prm.a * prm.b % modT) * (u3 * u3 % modT)) %
                                      modT;
                        if (((f % modT) + modT) % modT == 0) ++count;
                    }
        }
        BigRational box = pow_rational(prm.p, S1 + 2 * S23);
        BigRational meas = box * BigRational(count, pow_int(prm.p, 3 * T));
        prof.exp_num.push_back(r);
        prof.measures.push_back(meas);
    }
    return prof;
}

} // namespace padicfk
