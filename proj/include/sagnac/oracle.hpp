#pragma once

#include <Eigen/Dense>

#include "sagnac/qfim.hpp"

namespace sagnac {
namespace oracle {

// Truncated Fock x spin space used for brute-force validation. Single-particle
// dimension is 2*cutoff (spin-major blocks: levels 0..d-1 spin up, then down).
struct TruncatedBasis {
    int cutoff = 48;
    int particles = 1;

    TruncatedBasis(int d, int n) : cutoff(d), particles(n) {
        if (d < 8) throw Error("InvalidArgument", "oracle cutoff must be >= 8");
        if (n != 1 && n != 2) throw Error("InvalidArgument", "oracle supports 1 or 2 particles");
    }
    int dim1() const noexcept { return 2 * cutoff; }
};

struct PropagatorResult {
    Eigen::MatrixXcd U;   // single-particle (2d) x (2d); two-particle action is U (x) U
    double leakage = 0.0; // population above level d-2 of the evolved vacuum, per branch max
    int steps = 0;
};

// Time-ordered product of midpoint-rule exponentials of H(t) over [0, tau].
// For constant profiles H is time independent and the product collapses to a
// single exact exponential. Checks unitarity and step-halving convergence.
PropagatorResult propagate(const TruncatedBasis& basis, const SweepProfile& profile,
                           double omega, double Omega, double mu, int steps = 4096);

// Per spin branch e^{-i omega n tau} e^{i Phi} D[eta] with eta, Phi from the
// time integrals; displacement built as an exact matrix exponential.
Eigen::MatrixXcd analytic_unitary(const TruncatedBasis& basis, const SweepProfile& profile,
                                  double omega, double Omega, double mu,
                                  const QuadratureConfig& cfg = {});

// Finite-difference QFIM straight from the state-derivative definition.
// tau and the sweep schedule are held fixed while differentiating. Runs at h
// and h/2 and keeps the finer result (Richardson consistency gate at 1e-4).
Qfim qfim_fd(const TruncatedBasis& basis, const InputEnsemble& ens, const SweepProfile& profile,
             double omega0, double Omega0, double mu, double h_omega = 1e-5,
             double h_Omega = 1e-5, int steps = 4096);

// i (dU+/dtheta) U by central differences of the analytic unitary.
Eigen::MatrixXcd generator_numeric(const TruncatedBasis& basis, const SweepProfile& profile,
                                   double omega0, double Omega0, double mu, Param which,
                                   double h = 1e-6);

// Dense matrix of the coefficient-form generator on the single-particle space.
Eigen::MatrixXcd coeff_generator_matrix(const TruncatedBasis& basis, const GeneratorCoeffs& c,
                                        Param which);

// exp(eta a+ - eta* a) on the truncated number basis.
Eigen::MatrixXcd displacement_matrix(int cutoff, cplx eta);

}  // namespace oracle
}  // namespace sagnac
