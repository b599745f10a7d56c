#include "padicfk/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace padicfk {

Potential Potential::zero() { return Potential{}; }

Potential Potential::constant(double c) {
    Potential v;
    v.far_value_ = c;
    return v;
}

Potential Potential::step(int radius_exp, double value, double far_value) {
    Potential v;
    v.steps_ = {{radius_exp, value}};
    v.far_value_ = far_value;
    return v;
}

Potential Potential::piecewise(std::vector<std::pair<int, double>> steps, double far_value) {
    for (size_t i = 0; i + 1 < steps.size(); ++i)
        if (steps[i].first >= steps[i + 1].first)
            throw std::invalid_argument("Potential: breakpoints must increase");
    Potential v;
    v.steps_ = std::move(steps);
    v.far_value_ = far_value;
    return v;
}

Potential Potential::coulomb(double coupling, int cutoff_exp, uint32_t p) {
    Potential v;
    v.coulomb_ = true;
    v.coupling_ = coupling;
    v.cutoff_exp_ = cutoff_exp;
    v.coulomb_p_ = p;
    return v;
}

double Potential::at_norm_exp(int norm_exp) const {
    if (coulomb_) {
        int e = std::max(norm_exp, cutoff_exp_);
        return -coupling_ * std::pow(static_cast<double>(coulomb_p_), -static_cast<double>(e));
    }
    for (const auto& [edge, value] : steps_)
        if (norm_exp <= edge) return value;
    return far_value_;
}

double Potential::at_zero() const {
    if (coulomb_) return at_norm_exp(cutoff_exp_);
    if (!steps_.empty()) return steps_.front().second;
    return far_value_;
}

bool Potential::is_zero() const {
    if (coulomb_) return coupling_ == 0.0;
    if (far_value_ != 0.0) return false;
    for (const auto& [edge, value] : steps_) {
        (void)edge;
        if (value != 0.0) return false;
    }
    return true;
}

double Potential::sup_abs(int probe_lo, int probe_hi) const {
    double s = std::fabs(at_zero());
    for (int e = probe_lo; e <= probe_hi; ++e) s = std::max(s, std::fabs(at_norm_exp(e)));
    return s;
}

std::string Potential::describe() const {
    std::ostringstream os;
    if (coulomb_) {
        os << "coulomb(coupling=" << coupling_ << ",cutoff_exp=" << cutoff_exp_ << ")";
        return os.str();
    }
    if (steps_.empty()) {
        if (far_value_ == 0.0) return "zero";
        os << "constant(" << far_value_ << ")";
        return os.str();
    }
    os << "step(";
    for (size_t i = 0; i < steps_.size(); ++i) {
        if (i) os << ",";
        os << "|x|<=p^" << steps_[i].first << ":" << steps_[i].second;
    }
    os << ",far:" << far_value_ << ")";
    return os.str();
}

} // namespace padicfk
