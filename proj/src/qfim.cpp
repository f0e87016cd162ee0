#include "sagnac/qfim.hpp"

#include <cmath>

namespace sagnac {

namespace {

constexpr double kSaturabilityTol = 1e-9;
constexpr double kZeroPrefactorRel = 1e-9;
constexpr double kIdentityRel = 1e-6;

}  // namespace

Qfim assemble_qfim(const InputEnsemble& ens, const GeneratorCoeffs& c) {
    const double N = ens.N;
    const double pair_n = N * N - N;

    const double var_w = ghz_single_variance(ens, c, Param::Trap);
    const double var_W = ghz_single_variance(ens, c, Param::Rotation);
    const double cov_1 = ghz_single_covariance(ens, c, Param::Trap, c, Param::Rotation);
    const double pw = ghz_pair_covariance(ens, c, Param::Trap, c, Param::Trap);
    const double pW = ghz_pair_covariance(ens, c, Param::Rotation, c, Param::Rotation);
    const double pc = ghz_pair_covariance(ens, c, Param::Trap, c, Param::Rotation);

    Qfim q;
    q.N = ens.N;
    q.f_omega_omega = 4.0 * (N * var_w + pair_n * pw);
    q.f_Omega_Omega = 4.0 * (N * var_W + pair_n * pW);
    q.f_omega_Omega = 4.0 * (N * cov_1 + pair_n * pc);
    return q;
}

Prefactors prefactors(const InputEnsemble& ens, const GeneratorCoeffs& c) {
    Prefactors p;
    const double var_w = ghz_single_variance(ens, c, Param::Trap);
    const double var_W = ghz_single_variance(ens, c, Param::Rotation);
    const double cov_1 = ghz_single_covariance(ens, c, Param::Trap, c, Param::Rotation);
    p.B = ghz_pair_covariance(ens, c, Param::Trap, c, Param::Trap);
    p.D = ghz_pair_covariance(ens, c, Param::Rotation, c, Param::Rotation);
    p.h = ghz_pair_covariance(ens, c, Param::Trap, c, Param::Rotation);
    p.A = var_w - p.B;
    p.C = var_W - p.D;
    p.g = cov_1 - p.h;
    p.E = p.A * p.C - p.g * p.g;
    p.F = p.A * p.D + p.B * p.C - 2.0 * p.g * p.h;
    return p;
}

PrecisionBounds crb_bounds(const Qfim& q, double omega0, double Omega0, bool saturable,
                           double nu) {
    if (!(omega0 > 0) || Omega0 == 0.0)
        throw Error("InvalidArgument", "crb_bounds: omega0 > 0 and Omega0 != 0 required");
    if (!(nu > 0)) throw Error("InvalidArgument", "crb_bounds: nu must be positive");
    const double det = q.det();
    const double scale = q.f_omega_omega * q.f_omega_omega +
                         q.f_Omega_Omega * q.f_Omega_Omega +
                         2.0 * q.f_omega_Omega * q.f_omega_Omega;
    if (!(det > 1e-12 * scale))
        throw Error("SingularQfim", "QFIM is not full rank; bound unavailable");

    PrecisionBounds b;
    b.saturable = saturable;
    b.var_omega_rel = q.f_Omega_Omega / det / (omega0 * omega0) / nu;
    b.var_Omega_rel = q.f_omega_omega / det / (Omega0 * Omega0) / nu;
    return b;
}

double check_B_zero(const InputEnsemble& ens, const GeneratorCoeffs& c) {
    const cplx asz = ghz_a_sz_mean(ens);
    const cplx am = ghz_a_mean(ens);
    const double lhs = 2.0 * (c.K1 * asz - c.K2 * am).real() + c.lambda;
    const double rhs = c.tau_n * ghz_n_sz_mean(ens);
    return lhs - rhs;
}

double check_D_zero(const InputEnsemble& ens, const GeneratorCoeffs& c) {
    return 0.5 * c.delta2 + (c.delta1 * ghz_a_sz_mean(ens)).real();
}

bool saturability(const InputEnsemble& ens, const GeneratorCoeffs& c) {
    return std::abs(commutator_expectation(c, 0.0, ghz_a_mean(ens))) < kSaturabilityTol;
}

std::pair<Scaling, Scaling> classify_scaling(const Prefactors& p, int N_ref) {
    if (N_ref < 1) throw Error("InvalidArgument", "classify_scaling: N_ref >= 1");
    const bool bz = p.B <= kZeroPrefactorRel * std::max(p.A, 0.0);
    const bool dz = p.D <= kZeroPrefactorRel * std::max(p.C, 0.0);
    const auto close = [](double x, double y) {
        return std::abs(x - y) <= kIdentityRel * std::max(std::abs(x), std::abs(y));
    };

    if (!bz && dz) {
        // trap frequency at the Heisenberg limit; BC = F must hold
        if (!(p.C > 0) || !close(p.B * p.C, p.F)) return {Scaling::Other, Scaling::Other};
        return {Scaling::HL, Scaling::SQL};
    }
    if (bz && !dz) {
        if (!(p.A > 0) || !close(p.A * p.D, p.F)) return {Scaling::Other, Scaling::Other};
        return {Scaling::SQL, Scaling::HL};
    }
    if (!bz && !dz) {
        // both variances grow as N^2; the determinant's N^3 term caps both at 1/N
        if (p.F > 0) return {Scaling::SQL, Scaling::SQL};
        return {Scaling::Other, Scaling::Other};
    }
    // B and D both vanish, hence F = 0; the determinant is E N^2 only
    if (p.E > 0) return {Scaling::SQL, Scaling::SQL};
    return {Scaling::Other, Scaling::Other};
}

PrecisionBounds evaluate_bounds(const InputEnsemble& ens, const GeneratorCoeffs& c,
                                double omega0, double Omega0, double nu) {
    const Qfim q = assemble_qfim(ens, c);
    PrecisionBounds b = crb_bounds(q, omega0, Omega0, saturability(ens, c), nu);
    const auto tags = classify_scaling(prefactors(ens, c), ens.N);
    b.scaling_omega = tags.first;
    b.scaling_Omega = tags.second;
    return b;
}

}  // namespace sagnac
