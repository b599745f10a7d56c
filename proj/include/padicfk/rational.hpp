#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace padicfk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// p^e for e >= 0.
inline BigInt pow_int(uint32_t p, int e) {
    if (e < 0) throw std::domain_error("pow_int: negative exponent");
    BigInt r = 1, base = p;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// p^e as an exact rational, any sign of e.
inline BigRational pow_rational(uint32_t p, int e) {
    if (e >= 0) return BigRational(pow_int(p, e));
    return BigRational(1, pow_int(p, -e));
}

inline double to_double(const BigRational& r) {
    return r.convert_to<double>();
}

// Exponent of p dividing v; v must be nonzero.
inline int valuation_of(BigInt v, uint32_t p) {
    if (v == 0) throw std::domain_error("valuation_of: zero has no finite valuation");
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

// Modular inverse of a modulo m (gcd(a, m) = 1 required).
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    BigInt s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        BigInt s2 = s0 - q * s1;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: arguments not coprime");
    if (s0 < 0) s0 += m;
    return s0;
}

// Value coef * p^(half_exp / 2): exact carrier for quantities that live on the
// square-root-of-p scale (ramified norm values, self-dual measures).
struct ScaledPower {
    uint32_t p = 2;
    BigRational coef = 0;
    int half_exp = 0;

    double value() const {
        double v = to_double(coef);
        if (half_exp == 0) return v;
        double root = std::sqrt(static_cast<double>(p));
        int e = half_exp;
        double scale = 1.0;
        double base = e > 0 ? root : 1.0 / root;
        for (int i = 0; i < (e > 0 ? e : -e); ++i) scale *= base;
        return v * scale;
    }

    bool is_exact_rational() const { return half_exp % 2 == 0; }

    BigRational rational() const {
        if (!is_exact_rational())
            throw std::domain_error("ScaledPower: value carries an odd half-power of p");
        return coef * pow_rational(p, half_exp / 2);
    }

    ScaledPower times(const ScaledPower& o) const {
        if (p != o.p) throw std::invalid_argument("ScaledPower: prime mismatch");
        return ScaledPower{p, coef * o.coef, half_exp + o.half_exp};
    }
};

} // namespace padicfk
