#include "sagnac/states.hpp"

#include <cmath>

namespace sagnac {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kLeakTol = 1e-8;

// One spin branch of a generator with sigma_z replaced by its eigenvalue s:
//   O_s = u a + u* a+ + w a+a + o0
struct BranchOperator {
    cplx u{0.0, 0.0};
    double w = 0.0;
    double o0 = 0.0;
};

BranchOperator lower(const GeneratorCoeffs& c, Param which, int s) {
    const double sd = static_cast<double>(s);
    if (which == Param::Trap) return {c.K1 - sd * c.K2, -c.tau_n, sd * c.lambda};
    return {c.delta1, 0.0, sd * c.delta2};
}

double branch_expectation(const BranchMoments& m, const BranchOperator& op) {
    return 2.0 * (op.u * m.m_a).real() + op.w * m.m_n + op.o0;
}

// <(O P + P O)/2> on one branch, expanded through the moment set
// (operator ordering handled via a a+ = a+a + 1).
double branch_sym_moment(const BranchMoments& m, const BranchOperator& o,
                         const BranchOperator& p) {
    double r = 2.0 * (o.u * p.u * m.m_aa).real();
    r += (o.u * std::conj(p.u)).real() * (2.0 * m.m_n + 1.0);
    const cplx an = 2.0 * m.m_an - m.m_a;
    r += p.w * (o.u * an).real() + o.w * (p.u * an).real();
    r += o.w * p.w * m.m_nn;
    r += o.o0 * (2.0 * (p.u * m.m_a).real() + p.w * m.m_n);
    r += p.o0 * (2.0 * (o.u * m.m_a).real() + o.w * m.m_n);
    r += o.o0 * p.o0;
    return r;
}

}  // namespace

MotionalState MotionalState::fock(int n) {
    if (n < 0) throw Error("InvalidState", "Fock index must be non-negative");
    MotionalState s;
    s.kind_ = Kind::Fock;
    s.n_ = n;
    return s;
}

MotionalState MotionalState::coherent(cplx alpha) {
    MotionalState s;
    s.kind_ = Kind::Coherent;
    s.alpha_ = alpha;
    return s;
}

MotionalState MotionalState::vector(std::vector<cplx> amplitudes) {
    if (amplitudes.empty()) throw Error("InvalidState", "Vector state needs amplitudes");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTol)
        throw Error("InvalidState", "Vector state not normalized (|norm^2 - 1| = " +
                                        std::to_string(std::abs(norm2 - 1.0)) + ")");
    if (std::norm(amplitudes.back()) > kLeakTol)
        throw Error("TruncationLeak", "Vector state has top-level population above 1e-8");
    MotionalState s;
    s.kind_ = Kind::Vector;
    s.amps_ = std::move(amplitudes);
    return s;
}

int MotionalState::fock_n() const {
    if (kind_ != Kind::Fock) throw Error("InvalidArgument", "not a Fock state");
    return n_;
}

cplx MotionalState::alpha() const {
    if (kind_ != Kind::Coherent) throw Error("InvalidArgument", "not a coherent state");
    return alpha_;
}

const std::vector<cplx>& MotionalState::amplitudes() const {
    if (kind_ != Kind::Vector) throw Error("InvalidArgument", "not a vector state");
    return amps_;
}

std::vector<cplx> MotionalState::expand(int cutoff) const {
    if (cutoff < 2) throw Error("InvalidArgument", "cutoff must be >= 2");
    std::vector<cplx> v(cutoff, cplx{0.0, 0.0});
    switch (kind_) {
        case Kind::Fock:
            if (n_ >= cutoff)
                throw Error("TruncationLeak", "Fock state above cutoff");
            v[n_] = 1.0;
            break;
        case Kind::Coherent: {
            v[0] = std::exp(-0.5 * std::norm(alpha_));
            for (int n = 1; n < cutoff; ++n) v[n] = v[n - 1] * alpha_ / std::sqrt(double(n));
            double norm2 = 0.0;
            for (const auto& c : v) norm2 += std::norm(c);
            if (std::norm(v[cutoff - 1]) + std::norm(v[cutoff - 2]) > kLeakTol ||
                1.0 - norm2 > kLeakTol)
                throw Error("TruncationLeak", "coherent state does not fit the cutoff");
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& c : v) c *= inv;
            break;
        }
        case Kind::Vector: {
            if (static_cast<int>(amps_.size()) > cutoff)
                throw Error("TruncationLeak", "vector state longer than cutoff");
            for (std::size_t n = 0; n < amps_.size(); ++n) v[n] = amps_[n];
            break;
        }
    }
    return v;
}

BranchMoments moments(const MotionalState& state) {
    BranchMoments m;
    switch (state.kind()) {
        case MotionalState::Kind::Fock: {
            const double n = state.fock_n();
            m.m_n = n;
            m.m_nn = n * n;
            break;
        }
        case MotionalState::Kind::Coherent: {
            const cplx a = state.alpha();
            const double n = std::norm(a);
            m.m_a = a;
            m.m_aa = a * a;
            m.m_n = n;
            m.m_nn = n * n + n;
            m.m_an = a * (n + 1.0);
            break;
        }
        case MotionalState::Kind::Vector: {
            const auto& c = state.amplitudes();
            const int d = static_cast<int>(c.size());
            for (int n = 0; n < d; ++n) {
                const double pop = std::norm(c[n]);
                m.m_n += pop * n;
                m.m_nn += pop * double(n) * double(n);
                if (n >= 1) {
                    const cplx hop = std::conj(c[n - 1]) * c[n] * std::sqrt(double(n));
                    m.m_a += hop;
                    m.m_an += hop * double(n);
                }
                if (n >= 2)
                    m.m_aa += std::conj(c[n - 2]) * c[n] * std::sqrt(double(n) * double(n - 1));
            }
            break;
        }
    }
    return m;
}

InputEnsemble::InputEnsemble(MotionalState up, MotionalState down, int n)
    : psi_up(std::move(up)), psi_down(std::move(down)), N(n) {
    if (n < 1) throw Error("InvalidArgument", "ensemble needs N >= 1");
}

// Every GHZ moment below reduces to the two spin branches: both generators are
// diagonal in every sigma_z^(j), so each cross term <up..up|O_k|down..down>
// carries a factor <up|down> = 0 from an untouched spin (N >= 2) or from the
// k-th spin itself, whose operator is a multiple of 1 or sigma_z (N = 1).
double ghz_single_expectation(const InputEnsemble& ens, const GeneratorCoeffs& c, Param which) {
    const auto mu_ = moments(ens.psi_up);
    const auto md = moments(ens.psi_down);
    return 0.5 * (branch_expectation(mu_, lower(c, which, +1)) +
                  branch_expectation(md, lower(c, which, -1)));
}

double ghz_single_covariance(const InputEnsemble& ens, const GeneratorCoeffs& c1, Param which1,
                             const GeneratorCoeffs& c2, Param which2) {
    const auto mu_ = moments(ens.psi_up);
    const auto md = moments(ens.psi_down);
    const auto o_up = lower(c1, which1, +1), o_dn = lower(c1, which1, -1);
    const auto p_up = lower(c2, which2, +1), p_dn = lower(c2, which2, -1);
    const double sym = 0.5 * (branch_sym_moment(mu_, o_up, p_up) + branch_sym_moment(md, o_dn, p_dn));
    const double om = 0.5 * (branch_expectation(mu_, o_up) + branch_expectation(md, o_dn));
    const double pm = 0.5 * (branch_expectation(mu_, p_up) + branch_expectation(md, p_dn));
    return sym - om * pm;
}

double ghz_single_variance(const InputEnsemble& ens, const GeneratorCoeffs& c, Param which) {
    return ghz_single_covariance(ens, c, which, c, which);
}

double ghz_pair_covariance(const InputEnsemble& ens, const GeneratorCoeffs& c1, Param which1,
                           const GeneratorCoeffs& c2, Param which2) {
    const auto mu_ = moments(ens.psi_up);
    const auto md = moments(ens.psi_down);
    const double od = branch_expectation(mu_, lower(c1, which1, +1)) -
                      branch_expectation(md, lower(c1, which1, -1));
    const double pd = branch_expectation(mu_, lower(c2, which2, +1)) -
                      branch_expectation(md, lower(c2, which2, -1));
    return 0.25 * od * pd;
}

double mean_energy_gap(const InputEnsemble& ens, double omega0) {
    return omega0 * ghz_n_sz_mean(ens);
}

cplx ghz_a_mean(const InputEnsemble& ens) {
    return 0.5 * (moments(ens.psi_up).m_a + moments(ens.psi_down).m_a);
}

cplx ghz_a_sz_mean(const InputEnsemble& ens) {
    return 0.5 * (moments(ens.psi_up).m_a - moments(ens.psi_down).m_a);
}

double ghz_n_sz_mean(const InputEnsemble& ens) {
    return 0.5 * (moments(ens.psi_up).m_n - moments(ens.psi_down).m_n);
}

}  // namespace sagnac
