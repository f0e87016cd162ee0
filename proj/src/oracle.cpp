#include "sagnac/oracle.hpp"

#include <cmath>

#include "sagnac/time_integrals.hpp"

namespace sagnac {
namespace oracle {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr cplx kI{0.0, 1.0};

MatrixXcd annihilation(int d) {
    MatrixXcd a = MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

// exp(-i H t) for hermitian H via eigendecomposition (exactly unitary on the
// truncated space)
MatrixXcd exp_herm(const MatrixXcd& H, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
    const VectorXd& w = es.eigenvalues();
    const MatrixXcd& V = es.eigenvectors();
    VectorXcd ph(w.size());
    for (int i = 0; i < w.size(); ++i) ph(i) = std::exp(-kI * w(i) * t);
    return V * ph.asDiagonal() * V.adjoint();
}

MatrixXcd branch_hamiltonian(int d, double omega, double Omega, double mu, int s, double wp) {
    const MatrixXcd a = annihilation(d);
    const MatrixXcd quad = a - a.adjoint();  // a - a+
    MatrixXcd H = MatrixXcd::Zero(d, d);
    MatrixXcd n = MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = k;
    H = omega * n + kI * mu * std::sqrt(omega) * (Omega + s * wp) * quad;
    return H;
}

// one spin branch of the stepped propagator
MatrixXcd branch_propagator(int d, const SweepProfile& profile, double omega, double Omega,
                            double mu, int s, int steps) {
    const double tau = profile.duration();
    if (profile.is_constant()) {
        return exp_herm(branch_hamiltonian(d, omega, Omega, mu, s, profile.constant_rate()), tau);
    }
    MatrixXcd U = MatrixXcd::Identity(d, d);
    const double dt = tau / steps;
    for (int k = 0; k < steps; ++k) {
        const double tm = (k + 0.5) * dt;
        U = exp_herm(branch_hamiltonian(d, omega, Omega, mu, s, profile.rate(tm)), dt) * U;
    }
    return U;
}

MatrixXcd assemble_blocks(const MatrixXcd& up, const MatrixXcd& dn) {
    const int d = static_cast<int>(up.rows());
    MatrixXcd U = MatrixXcd::Zero(2 * d, 2 * d);
    U.topLeftCorner(d, d) = up;
    U.bottomRightCorner(d, d) = dn;
    return U;
}

double top_population(const VectorXcd& v, int d) {
    // population in the top two levels of either spin block
    double p = 0.0;
    p += std::norm(v(d - 1)) + std::norm(v(d - 2));
    p += std::norm(v(2 * d - 1)) + std::norm(v(2 * d - 2));
    return p;
}

VectorXcd to_vec(const std::vector<cplx>& v) {
    VectorXcd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

// |psi0> on the full tensor space: N=1 gives a 2d vector, N=2 a (2d)^2 vector.
VectorXcd ghz_vector(const TruncatedBasis& basis, const InputEnsemble& ens) {
    const int d = basis.cutoff;
    const VectorXcd up = to_vec(ens.psi_up.expand(d));
    const VectorXcd dn = to_vec(ens.psi_down.expand(d));
    VectorXcd b1 = VectorXcd::Zero(2 * d), b2 = VectorXcd::Zero(2 * d);
    b1.head(d) = up;
    b2.tail(d) = dn;
    if (basis.particles == 1) return (b1 + b2) / std::sqrt(2.0);
    const int D = 2 * d;
    VectorXcd v = VectorXcd::Zero(D * D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) v(i * D + j) = (b1(i) * b1(j) + b2(i) * b2(j)) / std::sqrt(2.0);
    return v;
}

// (U (x) U) v without materializing the two-particle matrix: reshape to D x D,
// then U M U^T.
VectorXcd apply_two_particle(const MatrixXcd& U, const VectorXcd& v) {
    const int D = static_cast<int>(U.rows());
    Eigen::Map<const MatrixXcd> M(v.data(), D, D);  // column-major: M(j, i) = v(i*D + j)
    const MatrixXcd R = U * M.transpose() * U.transpose();
    VectorXcd out(D * D);
    Eigen::Map<MatrixXcd>(out.data(), D, D) = R.transpose();
    return out;
}

VectorXcd evolve_state(const TruncatedBasis& basis, const SweepProfile& profile, double omega,
                       double Omega, double mu, const VectorXcd& psi0, int steps) {
    const int d = basis.cutoff;
    const MatrixXcd U = assemble_blocks(
        branch_propagator(d, profile, omega, Omega, mu, +1, steps),
        branch_propagator(d, profile, omega, Omega, mu, -1, steps));
    VectorXcd out;
    if (basis.particles == 1) {
        out = U * psi0;
        if (top_population(out, d) > 1e-8)
            throw Error("TruncationLeak", "evolved state leaks into the top Fock levels");
    } else {
        out = apply_two_particle(U, psi0);
        const int D = 2 * d;
        double leak = 0.0;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                if (i % d >= d - 2 || j % d >= d - 2) leak += std::norm(out(i * D + j));
        if (leak > 1e-8)
            throw Error("TruncationLeak", "evolved state leaks into the top Fock levels");
    }
    return out;
}

Qfim qfim_fd_once(const TruncatedBasis& basis, const InputEnsemble& ens,
                  const SweepProfile& profile, double omega0, double Omega0, double mu,
                  double hw, double hW, int steps) {
    const VectorXcd psi0 = ghz_vector(basis, ens);
    const auto state = [&](double w, double W) {
        return evolve_state(basis, profile, w, W, mu, psi0, steps);
    };
    const VectorXcd p0 = state(omega0, Omega0);
    const VectorXcd dw = (state(omega0 + hw, Omega0) - state(omega0 - hw, Omega0)) / (2.0 * hw);
    const VectorXcd dW = (state(omega0, Omega0 + hW) - state(omega0, Omega0 - hW)) / (2.0 * hW);

    const auto elem = [&](const VectorXcd& x, const VectorXcd& y) {
        const cplx direct = x.dot(y);              // <x|y>
        const cplx proj = x.dot(p0) * p0.dot(y);   // <x|psi><psi|y>
        return 4.0 * (direct - proj).real();
    };
    Qfim q;
    q.N = ens.N;
    q.f_omega_omega = elem(dw, dw);
    q.f_Omega_Omega = elem(dW, dW);
    q.f_omega_Omega = elem(dw, dW);
    return q;
}

}  // namespace

PropagatorResult propagate(const TruncatedBasis& basis, const SweepProfile& profile,
                           double omega, double Omega, double mu, int steps) {
    if (steps < 2) throw Error("InvalidArgument", "propagate: steps >= 2");
    const int d = basis.cutoff;

    const auto build = [&](int n) {
        return assemble_blocks(branch_propagator(d, profile, omega, Omega, mu, +1, n),
                               branch_propagator(d, profile, omega, Omega, mu, -1, n));
    };
    const MatrixXcd U = build(steps);
    if (!profile.is_constant()) {
        const MatrixXcd Uh = build(steps / 2);
        if ((U - Uh).cwiseAbs().maxCoeff() > 1e-8)
            throw Error("StepNonConvergence",
                        "propagate: halving the step changes U by more than 1e-8");
    }
    const double unit_defect =
        (U.adjoint() * U - MatrixXcd::Identity(2 * d, 2 * d)).cwiseAbs().maxCoeff();
    if (unit_defect > 1e-8)
        throw Error("StepNonConvergence", "propagate: unitarity defect above 1e-8");

    PropagatorResult r;
    r.U = U;
    r.steps = steps;
    VectorXcd vac = VectorXcd::Zero(2 * d);
    vac(0) = 1.0 / std::sqrt(2.0);
    vac(d) = 1.0 / std::sqrt(2.0);
    r.leakage = top_population(U * vac, d);
    return r;
}

Eigen::MatrixXcd analytic_unitary(const TruncatedBasis& basis, const SweepProfile& profile,
                                  double omega, double Omega, double mu,
                                  const QuadratureConfig& cfg) {
    const int d = basis.cutoff;
    const double tau = profile.duration();
    MatrixXcd blocks[2];
    for (int bi = 0; bi < 2; ++bi) {
        const int s = bi == 0 ? +1 : -1;
        const cplx eta = eval_eta(profile, omega, Omega, s, mu, cfg);
        const double Phi = eval_Phi(profile, omega, Omega, s, mu, cfg);
        MatrixXcd rot = MatrixXcd::Zero(d, d);
        for (int n = 0; n < d; ++n) rot(n, n) = std::exp(-kI * omega * double(n) * tau);
        blocks[bi] = rot * (std::exp(kI * Phi) * displacement_matrix(d, eta));
    }
    return assemble_blocks(blocks[0], blocks[1]);
}

Qfim qfim_fd(const TruncatedBasis& basis, const InputEnsemble& ens, const SweepProfile& profile,
             double omega0, double Omega0, double mu, double h_omega, double h_Omega, int steps) {
    if (ens.N != basis.particles)
        throw Error("InvalidArgument", "qfim_fd: ensemble N must match basis particle count");
    const Qfim coarse =
        qfim_fd_once(basis, ens, profile, omega0, Omega0, mu, h_omega, h_Omega, steps);
    const Qfim fine = qfim_fd_once(basis, ens, profile, omega0, Omega0, mu, 0.5 * h_omega,
                                   0.5 * h_Omega, steps);
    const double scale = std::max({std::abs(fine.f_omega_omega), std::abs(fine.f_Omega_Omega),
                                   std::abs(fine.f_omega_Omega)});
    const double diff = std::max({std::abs(fine.f_omega_omega - coarse.f_omega_omega),
                                  std::abs(fine.f_Omega_Omega - coarse.f_Omega_Omega),
                                  std::abs(fine.f_omega_Omega - coarse.f_omega_Omega)});
    if (diff > 1e-4 * scale)
        throw Error("StepNonConvergence", "qfim_fd: h and h/2 differ beyond 1e-4 relative");
    return fine;
}

Eigen::MatrixXcd generator_numeric(const TruncatedBasis& basis, const SweepProfile& profile,
                                   double omega0, double Omega0, double mu, Param which,
                                   double h) {
    const auto U = [&](double w, double W) {
        return analytic_unitary(basis, profile, w, W, mu);
    };
    const MatrixXcd U0 = U(omega0, Omega0);
    MatrixXcd Up, Um;
    if (which == Param::Trap) {
        Up = U(omega0 + h, Omega0);
        Um = U(omega0 - h, Omega0);
    } else {
        Up = U(omega0, Omega0 + h);
        Um = U(omega0, Omega0 - h);
    }
    return kI * ((Up - Um) / (2.0 * h)).adjoint() * U0;
}

Eigen::MatrixXcd coeff_generator_matrix(const TruncatedBasis& basis, const GeneratorCoeffs& c,
                                        Param which) {
    const int d = basis.cutoff;
    const MatrixXcd a = annihilation(d);
    const MatrixXcd ad = a.adjoint();
    MatrixXcd n = MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = k;
    const MatrixXcd id = MatrixXcd::Identity(d, d);

    MatrixXcd up, dn;
    if (which == Param::Trap) {
        const MatrixXcd quad1 = c.K1 * a + std::conj(c.K1) * ad;
        const MatrixXcd quad2 = c.K2 * a + std::conj(c.K2) * ad;
        up = quad1 - quad2 + c.lambda * id - c.tau_n * n;
        dn = quad1 + quad2 - c.lambda * id - c.tau_n * n;
    } else {
        const MatrixXcd quad = c.delta1 * a + std::conj(c.delta1) * ad;
        up = quad + c.delta2 * id;
        dn = quad - c.delta2 * id;
    }
    return assemble_blocks(up, dn);
}

Eigen::MatrixXcd displacement_matrix(int cutoff, cplx eta) {
    const MatrixXcd a = annihilation(cutoff);
    const MatrixXcd K = -kI * (eta * a.adjoint() - std::conj(eta) * a);  // hermitian
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(K);
    VectorXcd ph(cutoff);
    for (int i = 0; i < cutoff; ++i) ph(i) = std::exp(kI * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace oracle
}  // namespace sagnac
