#include "sagnac/sweep_profile.hpp"

#include <cmath>
#include <numbers>

namespace sagnac {

namespace {

constexpr double kClosureTol = 1e-9;

}  // namespace

SweepProfile SweepProfile::constant(double rate, double duration) {
    if (!(duration > 0)) throw Error("InvalidProfile", "sweep duration must be positive");
    const double closure = rate * duration;
    if (std::abs(closure - std::numbers::pi) > kClosureTol) {
        throw Error("InvalidProfile",
                    "constant sweep violates closure: rate*tau = " + std::to_string(closure) +
                        ", expected pi");
    }
    SweepProfile p;
    p.constant_ = true;
    p.rate_ = rate;
    p.tau_ = duration;
    return p;
}

SweepProfile SweepProfile::sampled(std::vector<Knot> knots) {
    if (knots.size() < 2) throw Error("InvalidProfile", "sampled sweep needs at least two knots");
    if (knots.front().t != 0.0)
        throw Error("InvalidProfile", "sampled sweep must start at t = 0");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].t > knots[i - 1].t))
            throw Error("InvalidProfile", "sampled sweep knots must be strictly increasing in time");
    }
    const double tau = knots.back().t;
    if (!(tau > 0)) throw Error("InvalidProfile", "sweep duration must be positive");

    // trapezoid rule is exact for the linear interpolant
    double closure = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        closure += 0.5 * (knots[i].rate + knots[i - 1].rate) * (knots[i].t - knots[i - 1].t);
    }
    if (std::abs(closure - std::numbers::pi) > kClosureTol) {
        throw Error("InvalidProfile",
                    "sampled sweep violates closure: integral = " + std::to_string(closure) +
                        ", expected pi");
    }

    SweepProfile p;
    p.constant_ = false;
    p.tau_ = tau;
    p.knots_ = std::move(knots);
    return p;
}

double SweepProfile::rate(double t) const {
    if (t < -1e-12 || t > tau_ * (1 + 1e-12))
        throw Error("InvalidArgument", "rate(t): t outside [0, tau]");
    if (constant_) return rate_;
    if (t <= knots_.front().t) return knots_.front().rate;
    if (t >= knots_.back().t) return knots_.back().rate;
    // linear scan; profiles are short tables and this is not a hot path
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (t <= knots_[i].t) {
            const auto& a = knots_[i - 1];
            const auto& b = knots_[i];
            const double w = (t - a.t) / (b.t - a.t);
            return a.rate + w * (b.rate - a.rate);
        }
    }
    return knots_.back().rate;
}

double SweepProfile::constant_rate() const {
    if (!constant_) throw Error("InvalidArgument", "constant_rate() on a sampled profile");
    return rate_;
}

}  // namespace sagnac
