#pragma once

#include "padicfk/rational.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace padicfk {

// Truncated p-adic number: value = sum_i digits[i] * p^(valuation + i),
// digits[0] != 0 unless the number is exactly zero. The digit window models
// absolute precision: a window [v, v + L) knows the value modulo p^(v + L).
class PadicNumber {
public:
    static constexpr int kDefaultDigits = 32;

    static PadicNumber zero(uint32_t p);
    static PadicNumber from_integer(uint32_t p, long long v, int window = kDefaultDigits);
    static PadicNumber from_rational(uint32_t p, long long num, long long den,
                                     int window = kDefaultDigits);
    // digits[0] must be nonzero; digit values must lie in [0, p).
    static PadicNumber from_parts(uint32_t p, int valuation, std::vector<uint32_t> digits);
    static PadicNumber from_bigint_unit(uint32_t p, int valuation, BigInt unit, int window);

    uint32_t prime() const { return p_; }
    bool is_zero() const { return digits_.empty(); }
    // Defined only for nonzero values.
    int valuation() const;
    const std::vector<uint32_t>& digits() const { return digits_; }
    int window_length() const { return static_cast<int>(digits_.size()); }
    // First exponent beyond the known window (v + L); the value is known mod p^window_end().
    int window_end() const;

    // |x| = p^(-valuation); zero maps to 0.
    double norm() const;
    BigRational norm_exact() const;
    // Exponent e with |x| = p^e (= -valuation); nonzero values only.
    int norm_exponent() const { return -valuation(); }

    // {x}_p: the digits at negative exponents, as an exact rational in [0, 1).
    BigRational fractional_part() const;

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber inverse() const;

    // True when the two windows agree on their common absolute precision.
    bool agrees_with(const PadicNumber& o) const;

    // Digits rendered least-significant first, e.g. "...210.1" styles are avoided;
    // format: p-adic expansion "d0 d1 d2 ... * p^v".
    std::string to_string() const;

private:
    PadicNumber(uint32_t p, int valuation, std::vector<uint32_t> digits)
        : p_(p), valuation_(valuation), digits_(std::move(digits)) {}

    void normalize();

    uint32_t p_ = 2;
    int valuation_ = 0;             // meaningless when digits_ empty (zero)
    std::vector<uint32_t> digits_;  // empty <=> zero
};

// Additive character twisted to conductor delta: chi(x) = exp(2 pi i {p^delta x}_p).
// Trivial exactly on |x| <= p^delta, nontrivial on the next shell.
struct Character {
    uint32_t p = 2;
    int delta = 0;

    // {p^delta x}_p as an exact rational in [0, 1).
    BigRational phase(const PadicNumber& x) const;
    std::complex<double> eval(const PadicNumber& x) const;
    std::complex<double> eval_phase(const BigRational& phase) const;
};

enum class HaarNormalization {
    unit_ball,  // measure of the maximal compact ball per coordinate is 1
    self_dual,  // scaled by p^(-n*delta/2) so the Fourier pairing is isometric
};

// Closed ball {|x| <= p^radius_exp} in dimension dim (max norm, unit constants).
struct BallSpec {
    uint32_t p = 2;
    int radius_exp = 0;
    int dim = 1;
};

// Exact Haar measure of the ball. unit_ball: p^(m*n). self_dual: times p^(-n*delta/2),
// which is a half power of p when n*delta is odd; ScaledPower carries it exactly.
ScaledPower ball_measure(const BallSpec& ball, HaarNormalization norm, int delta);

// Integral of chi over {|x| <= p^m} in unit-ball normalization, one coordinate:
// equals p^m when m <= delta and 0 when m >= delta + 1.
BigRational character_ball_integral(const Character& chi, int m);

// Independent route used to cross-check character_ball_integral: enumerate the
// cosets x = j * p^(-K') for j in [0, p^(m+K')), each of measure p^(-K'), with
// K' chosen so chi is constant on each coset, and sum chi exactly.
// Returns (real, imag) accumulated as exact rationals via symmetry reduction is
// not attempted; the sum collapses because full digit orbits cancel, so exact
// doubles suffice at these sizes. The tolerance argument guards the collapse.
std::complex<double> character_ball_integral_bruteforce(const Character& chi, int m);

// Dual description of a ball lattice L = {|x| <= p^m}^n with respect to the
// delta-twisted pairing: L* = {xi : chi(<x, xi>) = 1 for all x in L}.
// For unit constants the dual is exactly {|xi| <= p^(delta - m)} per coordinate.
struct DualLatticeBounds {
    int inner_exp;  // largest e with {|xi| <= p^e} contained in L*
    int outer_exp;  // smallest e with L* contained in {|xi| <= p^e}
};

DualLatticeBounds dual_lattice(const BallSpec& ball, int delta);

// Exhaustive residue-level verification of the dual description over a band
// of xi shells. With s_top = outer_exp + 1, every xi coset in the band
// |xi| <= p^s_top down to band_shells below the inner bound is encoded as
// xi = c * p^(-s_top), c in [0, p^(band_shells+2))^n. For x = a * p^(-m) the
// pairing gives chi(<x, xi>) = 1 iff <a, c> == 0 mod p^(m + s_top - delta),
// and enumerating a over [0, p^(m + s_top - delta))^n decides continuum
// membership exactly (dropped digit tails of x and xi land where chi is
// trivial; cosets of xi deeper than the band are trivially inside the inner
// bound). Membership of each xi coset is discovered by looping over all x
// cosets and compared against the inner/outer bounds from dual_lattice.
struct DualLatticeCheckResult {
    long long violations = 0;
    long long cosets_checked = 0;
    long long members_found = 0;
};

DualLatticeCheckResult dual_lattice_check(const BallSpec& ball, int delta, int band_shells);

} // namespace padicfk
