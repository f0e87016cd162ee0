#pragma once

#include <utility>

#include "sagnac/states.hpp"

namespace sagnac {

// 2x2 quantum Fisher information matrix for (omega, Omega), F = 4 Cov(H_i, H_j).
struct Qfim {
    double f_omega_omega = 0.0;
    double f_Omega_Omega = 0.0;
    double f_omega_Omega = 0.0;
    int N = 1;

    double det() const { return f_omega_omega * f_Omega_Omega - f_omega_Omega * f_omega_Omega; }
};

// N-scaling coefficients of the generator variances and of the determinant
// combination (hbar = 1):
//   Var(H_trap)(N)     = A N + B N^2
//   Var(H_rot)(N)      = C N + D N^2
//   Var Var - Cov^2    = E N^2 + F N^3
// Extracted exactly from the single-particle / pair decomposition, never fitted.
struct Prefactors {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;
    // N-linear and N-quadratic parts of Cov(H_trap, H_rot); B D = h^2 identically.
    double g = 0.0, h = 0.0;
};

enum class Scaling { HL, SQL, Other };

// Relative-variance Cramer-Rao limits; var_*_rel = delta^2 theta / theta0^2.
struct PrecisionBounds {
    double var_omega_rel = 0.0;
    double var_Omega_rel = 0.0;
    bool saturable = false;
    Scaling scaling_omega = Scaling::Other;
    Scaling scaling_Omega = Scaling::Other;
};

Qfim assemble_qfim(const InputEnsemble& ens, const GeneratorCoeffs& c);

Prefactors prefactors(const InputEnsemble& ens, const GeneratorCoeffs& c);

// Inverts the QFIM per the Cramer-Rao bound. nu is the experiment-repetition
// multiplier (bounds scale as 1/nu); the analysis elsewhere fixes nu = 1.
// Throws SingularQfim when det(F) <= 1e-12 * ||F||^2 (unidentifiable pair).
PrecisionBounds crb_bounds(const Qfim& q, double omega0, double Omega0, bool saturable,
                           double nu = 1.0);

// Left minus right of the B = 0 condition
//   2 Re(K1 <a sigma_z> - K2 <a>) + lambda = tau <a+a sigma_z>;
// the pair prefactor obeys B = residual^2.
double check_B_zero(const InputEnsemble& ens, const GeneratorCoeffs& c);

// Residual of delta2/2 + Re(delta1 <a sigma_z>) = 0; D = (2 residual)^2.
double check_D_zero(const InputEnsemble& ens, const GeneratorCoeffs& c);

// True when the generators' commutator expectation vanishes on the ensemble
// (|.| < 1e-9), i.e. both Cramer-Rao bounds are simultaneously attainable.
bool saturability(const InputEnsemble& ens, const GeneratorCoeffs& c);

// Large-N scaling classification from the prefactors. An N^2 prefactor counts
// as zero below 1e-9 times its N^1 partner. (HL, HL) is never returned: B and
// D both zero forces F = 0.
std::pair<Scaling, Scaling> classify_scaling(const Prefactors& p, int N_ref);

// Full chain: QFIM + CRB + saturability + scaling tags.
PrecisionBounds evaluate_bounds(const InputEnsemble& ens, const GeneratorCoeffs& c,
                                double omega0, double Omega0, double nu = 1.0);

}  // namespace sagnac
