#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "sagnac/sweep_profile.hpp"
#include "sagnac/time_integrals.hpp"

namespace sagnac {

// Coefficient form of the single-particle generators (hbar = 1):
//   H_trap     = (K1 a + K1* a+) - (K2 a + K2* a+) sigma_z + lambda sigma_z - tau_n a+a
//   H_rotation = (delta1 a + delta1* a+) + delta2 sigma_z
// The minus sign on the K2 block is part of this contract, not folded into K2.
// State-independent constants of the exact generators are dropped; they shift
// both spin branches equally and cancel in every variance and covariance.
struct GeneratorCoeffs {
    cplx K1{0.0, 0.0};
    cplx K2{0.0, 0.0};
    double lambda = 0.0;
    double tau_n = 0.0;  // weight of -a+a in H_trap; the evolution time
    cplx delta1{0.0, 0.0};
    double delta2 = 0.0;
};

// Which generator a moment refers to: the trap frequency omega or the
// platform rotation rate Omega.
enum class Param { Trap, Rotation };

// The two saturability families of evolution times with a constant sweep:
//   I : tau = 2 pi kappa / omega0, omega_p = omega0 / (2 kappa),   kappa >= 1
//   II: tau = pi (2 kappa + 1) / omega0, omega_p = omega0/(2 kappa+1), kappa >= 0
struct ConditionPreset {
    enum class Kind { I, II };

    Kind which = Kind::I;
    int kappa = 1;
    double omega0 = 1.0;
    double Omega0 = 1.0;
    double mu = 1.0;

    static ConditionPreset condition1(int kappa, double omega0, double Omega0, double mu);
    static ConditionPreset condition2(int kappa, double omega0, double Omega0, double mu);

    int kappa0() const noexcept { return 2 * kappa + 1; }  // Condition II odd index
    double tau() const;
    double omega_p() const;
    SweepProfile profile() const;
};

// All five coefficients evaluated through the time integrals (any profile).
GeneratorCoeffs coeffs_general(const SweepProfile& profile, double omega0, double Omega0,
                               double mu, const QuadratureConfig& cfg = {});

// Closed-form coefficient sets at the two presets (no quadrature).
GeneratorCoeffs coeffs_condition1(const ConditionPreset& preset);
GeneratorCoeffs coeffs_condition2(const ConditionPreset& preset);

// <[H_trap, H_rotation]> on a state with given <sigma_z> and <a>;
// purely imaginary by construction.
cplx commutator_expectation(const GeneratorCoeffs& c, double sz_mean, cplx a_mean);

// Evolution times tau_kappa = 2 pi kappa / omega0 that zero delta1 (Condition I).
std::vector<std::pair<int, double>> solve_condition1_times(double omega0, int kappa_max);

// Condition II test: mu Omega0 / sqrt(omega0) * sin(omega0 tau / 2)
//                      == Re(e^{-i omega0 tau / 2} <a>)  and both sides nonzero.
bool check_condition2(double omega0, double Omega0, double tau, cplx a_mean, double mu);

}  // namespace sagnac
