#pragma once

#include <complex>
#include <vector>

#include "sagnac/generators.hpp"

namespace sagnac {

// Motional state of one spin branch: a number state, a coherent state, or an
// arbitrary normalized vector in the truncated number basis.
class MotionalState {
public:
    enum class Kind { Fock, Coherent, Vector };

    static MotionalState fock(int n);
    static MotionalState coherent(cplx alpha);
    static MotionalState vector(std::vector<cplx> amplitudes);

    Kind kind() const noexcept { return kind_; }
    int fock_n() const;
    cplx alpha() const;
    const std::vector<cplx>& amplitudes() const;

    // Dense expansion in the number basis 0..cutoff-1 (exact for Fock,
    // normalized coherent expansion otherwise). Throws TruncationLeak when the
    // state does not fit the cutoff.
    std::vector<cplx> expand(int cutoff) const;

private:
    MotionalState() = default;

    Kind kind_ = Kind::Fock;
    int n_ = 0;
    cplx alpha_{0.0, 0.0};
    std::vector<cplx> amps_;
};

// <a>, <a^2>, <a+a>, <(a+a)^2>, <a a+a> on one branch.
struct BranchMoments {
    cplx m_a{0.0, 0.0};
    cplx m_aa{0.0, 0.0};
    cplx m_an{0.0, 0.0};
    double m_n = 0.0;
    double m_nn = 0.0;
};

BranchMoments moments(const MotionalState& state);

// GHZ-type input: equal superposition of "all N spins up with motional state
// psi_up" and "all N spins down with psi_down".
struct InputEnsemble {
    MotionalState psi_up;
    MotionalState psi_down;
    int N = 1;

    InputEnsemble(MotionalState up, MotionalState down, int n);
};

// <O_k> for one particle's generator (branch-eigenvalue reduction).
double ghz_single_expectation(const InputEnsemble& ens, const GeneratorCoeffs& c, Param which);

// Var(O_k) on the ensemble.
double ghz_single_variance(const InputEnsemble& ens, const GeneratorCoeffs& c, Param which);

// Symmetrized same-particle covariance Cov(O_k, P_k).
double ghz_single_covariance(const InputEnsemble& ens, const GeneratorCoeffs& c1, Param which1,
                             const GeneratorCoeffs& c2, Param which2);

// Cross-particle covariance Cov(O_k1, P_k2), k1 != k2; equals
// (o_up - o_down)(p_up - p_down)/4.
double ghz_pair_covariance(const InputEnsemble& ens, const GeneratorCoeffs& c1, Param which1,
                           const GeneratorCoeffs& c2, Param which2);

// omega0 * <a+a sigma_z> = omega0 (n_up - n_down)/2, the per-particle mean
// trapping-energy difference between the spin branches (hbar = 1).
double mean_energy_gap(const InputEnsemble& ens, double omega0);

// GHZ first moments entering the saturability test.
cplx ghz_a_mean(const InputEnsemble& ens);
cplx ghz_a_sz_mean(const InputEnsemble& ens);
double ghz_n_sz_mean(const InputEnsemble& ens);

}  // namespace sagnac
