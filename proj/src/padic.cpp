#include "padicfk/padic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>

namespace padicfk {

namespace {

void require_prime_match(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime() != b.prime())
        throw std::invalid_argument("PadicNumber: mixed primes");
}

std::vector<uint32_t> digits_of_bigint(uint32_t p, BigInt u, int count) {
    std::vector<uint32_t> d(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        d[static_cast<size_t>(i)] = static_cast<uint32_t>(u % p);
        u /= p;
    }
    return d;
}

BigInt bigint_of_digits(uint32_t p, const std::vector<uint32_t>& d) {
    BigInt u = 0;
    for (size_t i = d.size(); i-- > 0;) {
        u *= p;
        u += d[i];
    }
    return u;
}

} // namespace

void PadicNumber::normalize() {
    size_t lead = 0;
    while (lead < digits_.size() && digits_[lead] == 0) ++lead;
    if (lead == digits_.size()) {
        digits_.clear();
        valuation_ = 0;
        return;
    }
    if (lead > 0) {
        digits_.erase(digits_.begin(), digits_.begin() + static_cast<long>(lead));
        valuation_ += static_cast<int>(lead);
    }
}

PadicNumber PadicNumber::zero(uint32_t p) {
    return PadicNumber(p, 0, {});
}

PadicNumber PadicNumber::from_integer(uint32_t p, long long v, int window) {
    if (v == 0) return zero(p);
    BigInt val = v;
    int vp = valuation_of(val, p);
    BigInt unit = val / pow_int(p, vp);
    return from_bigint_unit(p, vp, std::move(unit), window);
}

PadicNumber PadicNumber::from_rational(uint32_t p, long long num, long long den, int window) {
    if (den == 0) throw std::domain_error("from_rational: zero denominator");
    if (num == 0) return zero(p);
    BigInt bn = num, bd = den;
    int vn = valuation_of(bn, p);
    int vd = valuation_of(bd, p);
    BigInt un = bn / pow_int(p, vn);
    BigInt ud = bd / pow_int(p, vd);
    BigInt mod = pow_int(p, window);
    BigInt u = (un % mod) * mod_inverse((ud % mod + mod) % mod, mod) % mod;
    return from_bigint_unit(p, vn - vd, std::move(u), window);
}

PadicNumber PadicNumber::from_parts(uint32_t p, int valuation, std::vector<uint32_t> digits) {
    if (digits.empty()) throw std::invalid_argument("from_parts: empty digit window");
    if (digits[0] == 0) throw std::invalid_argument("from_parts: leading digit must be a unit");
    for (uint32_t d : digits)
        if (d >= p) throw std::invalid_argument("from_parts: digit out of range");
    return PadicNumber(p, valuation, std::move(digits));
}

PadicNumber PadicNumber::from_bigint_unit(uint32_t p, int valuation, BigInt unit, int window) {
    if (window < 1) throw std::invalid_argument("from_bigint_unit: window must be positive");
    BigInt mod = pow_int(p, window);
    unit %= mod;
    if (unit < 0) unit += mod;
    if (unit % p == 0)
        throw std::invalid_argument("from_bigint_unit: unit part divisible by p");
    return PadicNumber(p, valuation, digits_of_bigint(p, unit, window));
}

int PadicNumber::valuation() const {
    if (is_zero()) throw std::domain_error("valuation: zero has no finite valuation");
    return valuation_;
}

int PadicNumber::window_end() const {
    if (is_zero()) throw std::domain_error("window_end: zero window is unbounded");
    return valuation_ + static_cast<int>(digits_.size());
}

double PadicNumber::norm() const {
    if (is_zero()) return 0.0;
    return std::pow(static_cast<double>(p_), -valuation_);
}

BigRational PadicNumber::norm_exact() const {
    if (is_zero()) return BigRational(0);
    return pow_rational(p_, -valuation_);
}

BigRational PadicNumber::fractional_part() const {
    if (is_zero()) return BigRational(0);
    if (valuation_ >= 0) return BigRational(0);
    if (window_end() < 0)
        throw std::domain_error("fractional_part: digit window does not reach exponent 0");
    int count = -valuation_;
    BigInt num = 0;
    for (int i = count - 1; i >= 0; --i) {
        num *= p_;
        if (i < static_cast<int>(digits_.size())) num += digits_[static_cast<size_t>(i)];
    }
    return BigRational(num, pow_int(p_, count));
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    std::vector<uint32_t> d(digits_.size());
    d[0] = p_ - digits_[0];
    for (size_t i = 1; i < digits_.size(); ++i) d[i] = p_ - 1 - digits_[i];
    return PadicNumber(p_, valuation_, std::move(d));
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    require_prime_match(*this, o);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int v = std::min(valuation_, o.valuation_);
    int end = std::min(window_end(), o.window_end());
    int len = end - v;  // >= 1: each window end strictly exceeds its own valuation
    std::vector<uint32_t> d(static_cast<size_t>(len), 0);
    uint32_t carry = 0;
    for (int i = 0; i < len; ++i) {
        int e = v + i;
        uint32_t s = carry;
        int ia = e - valuation_;
        if (ia >= 0 && ia < static_cast<int>(digits_.size())) s += digits_[static_cast<size_t>(ia)];
        int ib = e - o.valuation_;
        if (ib >= 0 && ib < static_cast<int>(o.digits_.size())) s += o.digits_[static_cast<size_t>(ib)];
        d[static_cast<size_t>(i)] = s % p_;
        carry = s / p_;
    }
    PadicNumber r(p_, v, std::move(d));
    r.normalize();  // cancellation below the window collapses to exact zero
    return r;
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const {
    return *this + (-o);
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    require_prime_match(*this, o);
    if (is_zero() || o.is_zero()) return zero(p_);
    int len = std::min(window_length(), o.window_length());
    BigInt u = bigint_of_digits(p_, digits_) * bigint_of_digits(p_, o.digits_);
    u %= pow_int(p_, len);
    return PadicNumber(p_, valuation_ + o.valuation_, digits_of_bigint(p_, u, len));
}

PadicNumber PadicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse: zero is not invertible");
    BigInt mod = pow_int(p_, window_length());
    BigInt u = mod_inverse(bigint_of_digits(p_, digits_), mod);
    return PadicNumber(p_, -valuation_, digits_of_bigint(p_, u, window_length()));
}

bool PadicNumber::agrees_with(const PadicNumber& o) const {
    if (p_ != o.p_) return false;
    if (is_zero() && o.is_zero()) return true;
    if (is_zero() != o.is_zero()) return false;
    if (valuation_ != o.valuation_) return false;
    int len = std::min(window_length(), o.window_length());
    return std::equal(digits_.begin(), digits_.begin() + len, o.digits_.begin());
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "0 (p=" << p_ << ")";
        return os.str();
    }
    os << "(";
    for (size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << " ";
        os << digits_[i];
    }
    os << ") * " << p_ << "^" << valuation_;
    return os.str();
}

BigRational Character::phase(const PadicNumber& x) const {
    if (x.is_zero()) return BigRational(0);
    int v = x.valuation() + delta;
    if (v >= 0) return BigRational(0);
    if (x.window_end() + delta < 0)
        throw std::domain_error("Character::phase: digit window too short for the twist");
    int count = -v;  // digits of p^delta x below exponent 0
    BigInt num = 0;
    const auto& d = x.digits();
    for (int i = count - 1; i >= 0; --i) {
        num *= p;
        if (i < static_cast<int>(d.size())) num += d[static_cast<size_t>(i)];
    }
    return BigRational(num, pow_int(p, count));
}

std::complex<double> Character::eval_phase(const BigRational& ph) const {
    double t = 2.0 * std::numbers::pi * to_double(ph);
    return {std::cos(t), std::sin(t)};
}

std::complex<double> Character::eval(const PadicNumber& x) const {
    return eval_phase(phase(x));
}

ScaledPower ball_measure(const BallSpec& ball, HaarNormalization norm, int delta) {
    ScaledPower m;
    m.p = ball.p;
    m.coef = pow_rational(ball.p, ball.radius_exp * ball.dim);
    m.half_exp = (norm == HaarNormalization::self_dual) ? -ball.dim * delta : 0;
    return m;
}

BigRational character_ball_integral(const Character& chi, int m) {
    if (m <= chi.delta) return pow_rational(chi.p, m);
    return BigRational(0);
}

std::complex<double> character_ball_integral_bruteforce(const Character& chi, int m) {
    const uint32_t p = chi.p;
    // chi is constant on cosets of p^(-delta) Z_p, so depth m - delta decides
    // every value; at least one digit keeps the loop honest when m <= delta.
    int depth = std::max(1, m - chi.delta);
    long long cosets = 1;
    for (int i = 0; i < depth; ++i) cosets *= p;

    // Coset reps a * p^(-m), a in [0, p^depth): phase = a / p^(m - delta) mod 1.
    long double re = 0.0L, im = 0.0L;
    if (m <= chi.delta) {
        re = static_cast<long double>(cosets);
    } else {
        // Pair a with cosets - a: imaginary parts cancel exactly, real parts double.
        re = 1.0L;  // a = 0
        long long half = cosets / 2;
        for (long long a = 1; a <= half; ++a) {
            long double t = 2.0L * std::numbers::pi_v<long double> *
                            (static_cast<long double>(a) / static_cast<long double>(cosets));
            long double c = std::cos(t);
            re += (2 * a == cosets) ? c : 2.0L * c;
        }
    }
    // Each coset carries measure p^m / p^depth in unit-ball normalization.
    long double scale = std::pow(static_cast<long double>(p), static_cast<long double>(m - depth));
    return {static_cast<double>(re * scale), static_cast<double>(im * scale)};
}

DualLatticeBounds dual_lattice(const BallSpec& ball, int delta) {
    return DualLatticeBounds{delta - ball.radius_exp, delta - ball.radius_exp};
}

DualLatticeCheckResult dual_lattice_check(const BallSpec& ball, int delta, int band_shells) {
    if (band_shells < 0) throw std::invalid_argument("dual_lattice_check: negative band");
    const uint32_t p = ball.p;
    const int n = ball.dim;
    const int m = ball.radius_exp;
    const DualLatticeBounds bounds = dual_lattice(ball, delta);
    const int s_top = bounds.outer_exp + 1;
    const int xdepth = m + s_top - delta;  // = 1 by construction of s_top
    const int cdepth = band_shells + 2;    // xi digits: shells s_top .. s_top - cdepth + 1

    long long xi_mod = 1;
    for (int i = 0; i < cdepth; ++i) xi_mod *= p;
    long long x_mod = 1;
    for (int i = 0; i < xdepth; ++i) x_mod *= p;

    auto val_below = [&](long long c) {
        // v_p(c) capped at cdepth (c == 0 treated by the caller)
        int v = 0;
        while (v < cdepth && c % p == 0) {
            c /= p;
            ++v;
        }
        return v;
    };

    DualLatticeCheckResult res;
    std::vector<long long> c(static_cast<size_t>(n), 0);
    std::vector<long long> a(static_cast<size_t>(n), 0);
    const long long cond_mod = x_mod;  // chi trivial iff <a, c> == 0 mod p^(m + s_top - delta)

    bool more = true;
    while (more) {
        // Norm of this xi coset: p^(s_top - min v(c_i)); all-zero c sits at or
        // below shell s_top - cdepth, inside the inner bound by construction.
        int minv = cdepth;
        for (int i = 0; i < n; ++i)
            if (c[static_cast<size_t>(i)] != 0)
                minv = std::min(minv, val_below(c[static_cast<size_t>(i)]));
        int shell = s_top - minv;
        bool predicted_member = shell <= bounds.inner_exp || minv == cdepth;

        // Empirical membership: chi(<x, xi>) trivial for every ball coset.
        bool member = true;
        std::fill(a.begin(), a.end(), 0);
        bool xmore = true;
        while (xmore && member) {
            long long dot = 0;
            for (int i = 0; i < n; ++i)
                dot += (a[static_cast<size_t>(i)] % cond_mod) * (c[static_cast<size_t>(i)] % cond_mod);
            if (dot % cond_mod != 0) member = false;
            int i = 0;
            for (; i < n; ++i) {
                if (++a[static_cast<size_t>(i)] < x_mod) break;
                a[static_cast<size_t>(i)] = 0;
            }
            xmore = i < n;
        }

        res.cosets_checked += 1;
        if (member) res.members_found += 1;
        // Sandwich: everything inside inner_exp must be a member; every member
        // must lie within outer_exp.
        if (predicted_member != member) res.violations += 1;
        if (member && shell > bounds.outer_exp && minv < cdepth) res.violations += 1;

        int i = 0;
        for (; i < n; ++i) {
            if (++c[static_cast<size_t>(i)] < xi_mod) break;
            c[static_cast<size_t>(i)] = 0;
        }
        more = i < n;
    }
    return res;
}

} // namespace padicfk
