#pragma once

#include <complex>

#include "sagnac/sweep_profile.hpp"

namespace sagnac {

using cplx = std::complex<double>;

// Oscillatory time integrals the generator coefficients are built from.
// Constant profiles always use closed forms; sampled profiles are integrated
// with adaptive panel-doubling quadrature at the configured absolute tolerance.

// q(omega, tau) = int_0^tau e^{i omega t} dt
cplx eval_q(double omega, double tau);

// d q / d omega at fixed tau
cplx eval_dq_domega(double omega, double tau);

// p(omega, tau) = int_0^tau omega_p(t) e^{i omega t} dt
cplx eval_p(const SweepProfile& profile, double omega, const QuadratureConfig& cfg = {});

// d p / d omega at fixed tau and fixed schedule
cplx eval_dp_domega(const SweepProfile& profile, double omega, const QuadratureConfig& cfg = {});

// eta = -int_0^tau f(t) e^{i omega t} dt with f = mu sqrt(omega) (Omega + spin * omega_p(t))
cplx eval_eta(const SweepProfile& profile, double omega, double Omega, int spin, double mu,
              const QuadratureConfig& cfg = {});

// Phi = int_0^tau int_0^t1 f(t1) f(t2) sin(omega (t1 - t2)) dt2 dt1
double eval_Phi(const SweepProfile& profile, double omega, double Omega, int spin, double mu,
                const QuadratureConfig& cfg = {});

// lambda = mu^2 Omega { (1/omega) int omega_p(t) [cos(omega(t-tau)) - cos(omega t)] dt
//                       + 2 int omega_p(t) (t - tau) sin(omega t) dt }
double eval_lambda(const SweepProfile& profile, double omega, double Omega, double mu,
                   const QuadratureConfig& cfg = {});

// int_0^tau omega_p(t) cos(omega (tau - t)) dt   (enters the sigma_z weight of H_Omega)
double eval_wp_cos(const SweepProfile& profile, double omega, const QuadratureConfig& cfg = {});

}  // namespace sagnac
