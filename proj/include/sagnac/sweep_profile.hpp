#pragma once

#include <vector>

#include "sagnac/errors.hpp"

namespace sagnac {

// Relative rotation schedule omega_p(t) of the two counter-propagating wells,
// either constant or tabulated (linear interpolation between knots).
// Every profile must close the loop: int_0^tau omega_p(t) dt = pi.
class SweepProfile {
public:
    struct Knot {
        double t;
        double rate;
    };

    static SweepProfile constant(double rate, double duration);
    static SweepProfile sampled(std::vector<Knot> knots);

    bool is_constant() const noexcept { return constant_; }
    double duration() const noexcept { return tau_; }

    // omega_p(t); throws outside [0, tau]
    double rate(double t) const;

    // only valid for constant profiles
    double constant_rate() const;

    const std::vector<Knot>& knots() const noexcept { return knots_; }

private:
    SweepProfile() = default;

    bool constant_ = true;
    double rate_ = 0.0;
    double tau_ = 0.0;
    std::vector<Knot> knots_;
};

struct QuadratureConfig {
    enum class Scheme { GaussLegendre, Simpson };

    Scheme scheme = Scheme::GaussLegendre;
    int panels = 32;       // initial panel count, >= 8
    double abs_tol = 1e-11;

    void validate() const {
        if (panels < 8) throw Error("InvalidArgument", "QuadratureConfig: panels must be >= 8");
        if (!(abs_tol > 0)) throw Error("InvalidArgument", "QuadratureConfig: abs_tol must be > 0");
    }
};

}  // namespace sagnac
