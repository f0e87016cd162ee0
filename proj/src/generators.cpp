#include "sagnac/generators.hpp"

#include <cmath>
#include <numbers>

namespace sagnac {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

void check_common(int kappa_min, int kappa, double omega0, double Omega0, double mu) {
    if (kappa < kappa_min) throw Error("InvalidArgument", "preset kappa below allowed range");
    if (!(omega0 > 0)) throw Error("InvalidArgument", "preset omega0 must be positive");
    if (!(mu > 0)) throw Error("InvalidArgument", "preset mu must be positive");
    (void)Omega0;  // Omega0 = 0 is allowed (rotation-free limit)
}

}  // namespace

ConditionPreset ConditionPreset::condition1(int kappa, double omega0, double Omega0, double mu) {
    check_common(1, kappa, omega0, Omega0, mu);
    return ConditionPreset{Kind::I, kappa, omega0, Omega0, mu};
}

ConditionPreset ConditionPreset::condition2(int kappa, double omega0, double Omega0, double mu) {
    check_common(0, kappa, omega0, Omega0, mu);
    return ConditionPreset{Kind::II, kappa, omega0, Omega0, mu};
}

double ConditionPreset::tau() const {
    return which == Kind::I ? 2.0 * kPi * kappa / omega0 : kPi * kappa0() / omega0;
}

double ConditionPreset::omega_p() const {
    return which == Kind::I ? omega0 / (2.0 * kappa) : omega0 / kappa0();
}

SweepProfile ConditionPreset::profile() const {
    return SweepProfile::constant(omega_p(), tau());
}

GeneratorCoeffs coeffs_general(const SweepProfile& profile, double omega0, double Omega0,
                               double mu, const QuadratureConfig& cfg) {
    if (!(omega0 > 0)) throw Error("InvalidArgument", "coeffs_general: omega0 must be positive");
    if (!(mu > 0)) throw Error("InvalidArgument", "coeffs_general: mu must be positive");
    const double tau = profile.duration();
    const double rt = mu * std::sqrt(omega0);

    const cplx qc = std::conj(eval_q(omega0, tau));
    const cplx dqc = std::conj(eval_dq_domega(omega0, tau));
    const cplx pc = std::conj(eval_p(profile, omega0, cfg));
    const cplx dpc = std::conj(eval_dp_domega(profile, omega0, cfg));

    GeneratorCoeffs c;
    c.K1 = rt * Omega0 * ((tau - kI / (2.0 * omega0)) * qc - kI * dqc);
    c.K2 = rt * ((kI / (2.0 * omega0) - tau) * pc + kI * dpc);
    c.lambda = eval_lambda(profile, omega0, Omega0, mu, cfg);
    c.tau_n = tau;
    c.delta1 = -kI * rt * qc;
    c.delta2 = 2.0 * kPi * mu * mu * (1.0 - eval_wp_cos(profile, omega0, cfg) / kPi);
    return c;
}

GeneratorCoeffs coeffs_condition1(const ConditionPreset& p) {
    if (p.which != ConditionPreset::Kind::I)
        throw Error("InvalidArgument", "coeffs_condition1: preset is not Condition I");
    const double mu = p.mu, w0 = p.omega0, W0 = p.Omega0;
    GeneratorCoeffs c;
    c.K1 = -kI * (2.0 * mu * kPi * p.kappa * W0 / std::pow(w0, 1.5));
    c.K2 = kI * mu * kPi / std::sqrt(w0);
    c.lambda = -2.0 * mu * mu * kPi * W0 / w0;
    c.tau_n = p.tau();
    c.delta1 = cplx{0.0, 0.0};
    c.delta2 = 2.0 * mu * mu * kPi;
    return c;
}

GeneratorCoeffs coeffs_condition2(const ConditionPreset& p) {
    if (p.which != ConditionPreset::Kind::II)
        throw Error("InvalidArgument", "coeffs_condition2: preset is not Condition II");
    const double mu = p.mu, w0 = p.omega0, W0 = p.Omega0;
    const double k0 = p.kappa0();
    GeneratorCoeffs c;
    c.K1 = W0 * mu / std::pow(w0, 1.5) * cplx{1.0, -k0 * kPi};
    c.K2 = mu / std::sqrt(w0) * cplx{-1.0 / k0, kPi};
    c.lambda = -2.0 * mu * mu * kPi * W0 / w0;
    c.tau_n = p.tau();
    c.delta1 = cplx{-2.0 * mu / std::sqrt(w0), 0.0};
    c.delta2 = 2.0 * mu * mu * kPi;
    return c;
}

cplx commutator_expectation(const GeneratorCoeffs& c, double sz_mean, cplx a_mean) {
    if (std::abs(sz_mean) > 1.0 + 1e-12)
        throw Error("InvalidArgument", "commutator_expectation: |<sigma_z>| must be <= 1");
    const cplx t1 = c.K1 * std::conj(c.delta1) - std::conj(c.K1) * c.delta1;
    const cplx t2 = (c.delta1 * std::conj(c.K2) - std::conj(c.delta1) * c.K2) * sz_mean;
    const cplx t3 = c.tau_n * (c.delta1 * a_mean - std::conj(c.delta1) * std::conj(a_mean));
    return t1 + t2 + t3;
}

std::vector<std::pair<int, double>> solve_condition1_times(double omega0, int kappa_max) {
    if (!(omega0 > 0)) throw Error("InvalidArgument", "solve_condition1_times: omega0 > 0");
    if (kappa_max < 1) throw Error("InvalidArgument", "solve_condition1_times: kappa_max >= 1");
    std::vector<std::pair<int, double>> out;
    out.reserve(kappa_max);
    for (int k = 1; k <= kappa_max; ++k) out.emplace_back(k, 2.0 * kPi * k / omega0);
    return out;
}

bool check_condition2(double omega0, double Omega0, double tau, cplx a_mean, double mu) {
    if (!(omega0 > 0) || !(mu > 0))
        throw Error("InvalidArgument", "check_condition2: omega0 and mu must be positive");
    const double half = 0.5 * omega0 * tau;
    const double lhs = mu * Omega0 / std::sqrt(omega0) * std::sin(half);
    const double rhs = a_mean.real() * std::cos(half) + a_mean.imag() * std::sin(half);
    constexpr double tol = 1e-9;
    return std::abs(lhs - rhs) <= tol && std::abs(lhs) > tol && std::abs(rhs) > tol;
}

}  // namespace sagnac
