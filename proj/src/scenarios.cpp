#include "sagnac/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sagnac {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

std::pair<double, double> asym_sql_hl(const ClosedPrefactors& p, double omega0, double Omega0,
                                      int N) {
    // B = 0 shape: omega at the SQL, Omega at the HL
    return {1.0 / (4.0 * sq(omega0) * p.A * N), 1.0 / (4.0 * sq(Omega0) * p.D * N * N)};
}

std::pair<double, double> asym_hl_sql(const ClosedPrefactors& p, double omega0, double Omega0,
                                      int N) {
    // D = 0 shape: omega at the HL, Omega at the SQL
    return {1.0 / (4.0 * sq(omega0) * p.B * N * N), 1.0 / (4.0 * sq(Omega0) * p.C * N)};
}

ScenarioResult finish(InputEnsemble ens, GeneratorCoeffs c, ClosedPrefactors cp,
                      double omega0, double Omega0, std::string branch,
                      std::pair<double, double> asym) {
    ScenarioResult r{std::move(ens), c, {}, {}, cp, 0.0, 0.0, 0.0, 0.0, std::move(branch)};
    r.bounds = evaluate_bounds(r.state, c, omega0, Omega0);
    r.pre = prefactors(r.state, c);
    const auto cb = closed_bounds(cp, omega0, Omega0, r.state.N);
    r.closed_var_omega_rel = cb.first;
    r.closed_var_Omega_rel = cb.second;
    r.asym_var_omega_rel = asym.first;
    r.asym_var_Omega_rel = asym.second;
    return r;
}

}  // namespace

ClosedPrefactors closed_coherent_prefactors(const GeneratorCoeffs& c, cplx a1, cplx a2) {
    ClosedPrefactors p;
    const double tau = c.tau_n;
    p.A = 0.5 * (std::norm(a1 * tau + std::conj(c.K2) - std::conj(c.K1)) +
                 std::norm(a2 * tau - std::conj(c.K1) - std::conj(c.K2)));
    const double brB = c.lambda + (c.K1 * (a1 - a2)).real() - (c.K2 * (a1 + a2)).real() -
                       0.5 * tau * (std::norm(a1) - std::norm(a2));
    p.B = brB * brB;
    p.C = std::norm(c.delta1);
    const double brD = c.delta2 + (c.delta1 * (a1 - a2)).real();
    p.D = brD * brD;
    p.g = 0.5 * ((2.0 * c.K1 - tau * std::conj(a1 + a2)) * std::conj(c.delta1)).real();
    p.h = brB * brD;
    p.E = p.A * p.C - p.g * p.g;
    p.F = p.A * p.D + p.B * p.C - 2.0 * p.g * p.h;
    return p;
}

ClosedPrefactors closed_fock_cond1_prefactors(const GeneratorCoeffs& c, int n1, int n2) {
    ClosedPrefactors p;
    p.A = 0.5 * (std::norm(c.K1 - c.K2) * (2.0 * n1 + 1.0) +
                 std::norm(c.K1 + c.K2) * (2.0 * n2 + 1.0));
    const double brB = c.lambda - 0.5 * c.tau_n * (n1 - n2);
    p.B = brB * brB;
    p.C = 0.0;
    p.D = sq(c.delta2);
    p.g = 0.0;
    p.h = brB * c.delta2;
    p.E = 0.0;
    p.F = p.A * p.D;
    return p;
}

std::pair<double, double> closed_bounds(const ClosedPrefactors& p, double omega0, double Omega0,
                                        int N) {
    const double n = N;
    const double det = p.E * n * n + p.F * n * n * n;
    if (!(det > 0)) throw Error("SingularQfim", "closed bounds: determinant combination <= 0");
    const double d2w = 0.25 * (p.C * n + p.D * n * n) / det;
    const double d2W = 0.25 * (p.A * n + p.B * n * n) / det;
    return {d2w / sq(omega0), d2W / sq(Omega0)};
}

ScenarioResult cond1_fock(const ConditionPreset& preset, int n1, int n2, int N,
                          bool allow_nearest) {
    if (preset.which != ConditionPreset::Kind::I)
        throw Error("InvalidArgument", "cond1_fock needs a Condition I preset");
    if (n1 < 0 || n2 < 0) throw Error("InvalidArgument", "Fock levels must be non-negative");

    const double gap = 2.0 * preset.Omega0 * sq(preset.mu) / preset.kappa;
    const double rounded = std::round(gap);
    const bool realizable = std::abs(gap - rounded) <= 1e-9 && rounded >= 0.0;
    const bool matches = realizable && static_cast<double>(n2 - n1) == rounded;
    if (!allow_nearest && !matches) {
        std::ostringstream msg;
        msg << "B = 0 needs n2 - n1 = 2 Omega0 mu^2 / kappa = " << gap;
        if (!realizable) msg << ", which is not a non-negative integer";
        else msg << ", got " << (n2 - n1);
        throw Error("NonIntegerGap", msg.str());
    }

    const GeneratorCoeffs c = coeffs_condition1(preset);
    InputEnsemble ens(MotionalState::fock(n1), MotionalState::fock(n2), N);
    const ClosedPrefactors cp = closed_fock_cond1_prefactors(c, n1, n2);
    std::ostringstream branch;
    branch << (matches ? "gap-exact" : "nearest-integer-relaxation")
           << " residual_B=" << check_B_zero(ens, c);
    return finish(std::move(ens), c, cp, preset.omega0, preset.Omega0, branch.str(),
                  asym_sql_hl(cp, preset.omega0, preset.Omega0, N));
}

ScenarioResult cond1_coherent_r1(const ConditionPreset& preset, double r1, int N) {
    if (preset.which != ConditionPreset::Kind::I)
        throw Error("InvalidArgument", "cond1_coherent needs a Condition I preset");
    const double mu = preset.mu, w0 = preset.omega0, W0 = preset.Omega0;
    const double boundary = 2.0 * preset.kappa * W0;
    if (std::abs(w0 - boundary) <= 1e-9 * std::max(w0, boundary))
        throw Error("BranchBoundary",
                    "omega0 = 2 kappa Omega0: neither coherent branch is defined");

    const bool branch1 = w0 > boundary;
    const double shift = branch1 ? 2.0 * mu * W0 / std::sqrt(w0) : mu * std::sqrt(w0) / preset.kappa;
    const double r2 = r1 + shift;
    // theta1 = -pi/2 always; theta2 = +pi/2 (branch 1) or -pi/2 (branch 2)
    const cplx a1{0.0, -r1};
    const cplx a2 = branch1 ? cplx{0.0, r2} : cplx{0.0, -r2};

    const GeneratorCoeffs c = coeffs_condition1(preset);
    InputEnsemble ens(MotionalState::coherent(a1), MotionalState::coherent(a2), N);
    const ClosedPrefactors cp = closed_coherent_prefactors(c, a1, a2);

    // the printed minimum: A = pi^2 [2 kappa r1 + mu (sqrt(w0) + 2 kappa W0/sqrt(w0))]^2 / w0^2
    const double brA = 2.0 * preset.kappa * r1 + mu * (std::sqrt(w0) + boundary / std::sqrt(w0));
    const double A_printed = sq(kPi * brA) / sq(w0);
    std::ostringstream branch;
    branch << (branch1 ? "omega0>2kOmega0" : "omega0<2kOmega0") << " r1=" << r1
           << " A_printed=" << A_printed;
    auto asym = asym_sql_hl(cp, w0, W0, N);
    asym.first = 1.0 / (4.0 * sq(w0) * A_printed * N);
    return finish(std::move(ens), c, cp, w0, W0, branch.str(), asym);
}

ScenarioResult cond1_coherent(const ConditionPreset& preset, double budget, int N) {
    const double mu = preset.mu, w0 = preset.omega0, W0 = preset.Omega0;
    const double boundary = 2.0 * preset.kappa * W0;
    if (std::abs(w0 - boundary) <= 1e-9 * std::max(w0, boundary))
        throw Error("BranchBoundary",
                    "omega0 = 2 kappa Omega0: neither coherent branch is defined");
    const bool branch1 = w0 > boundary;
    const double shift = branch1 ? 2.0 * mu * W0 / std::sqrt(w0) : mu * std::sqrt(w0) / preset.kappa;
    const double floor = 0.5 * sq(shift);  // n >= shift^2/2, reached at r1 = -shift/2
    if (budget < floor - 1e-12)
        throw Error("InsufficientEnergy", "coherent budget below the branch lower bound");
    const double r1 = std::sqrt(std::max(0.0, (budget - floor) / 2.0)) - 0.5 * shift;
    return cond1_coherent_r1(preset, r1, N);
}

ScenarioResult cond2_bzero(const ConditionPreset& preset, double x1, double y1, int N) {
    if (preset.which != ConditionPreset::Kind::II)
        throw Error("InvalidArgument", "cond2_bzero needs a Condition II preset");
    const double mu = preset.mu, w0 = preset.omega0, W0 = preset.Omega0;
    const GeneratorCoeffs c = coeffs_condition2(preset);

    const double y2 = 2.0 * mu * W0 / std::sqrt(w0) - y1;
    const double tau = c.tau_n;
    const double P = (c.K1.real() + c.K2.real()) / tau;
    const double Q = (c.K1.real() - c.K2.real()) / tau;
    const double disc = P * P - 2.0 * Q * x1 + x1 * x1;
    if (disc < 0)
        throw Error("NegativeDiscriminant", "no real x2 satisfies B = 0 for these inputs");
    const double x2 = P + std::sqrt(disc);

    const cplx a1{x1, y1}, a2{x2, y2};
    InputEnsemble ens(MotionalState::coherent(a1), MotionalState::coherent(a2), N);
    const ClosedPrefactors cp = closed_coherent_prefactors(c, a1, a2);
    std::ostringstream branch;
    branch << "+root x2=" << x2 << " residual_B=" << check_B_zero(ens, c);
    return finish(std::move(ens), c, cp, w0, W0, branch.str(), asym_sql_hl(cp, w0, W0, N));
}

ScenarioResult cond2_dzero(const ConditionPreset& preset, double budget_r2, int N) {
    if (preset.which != ConditionPreset::Kind::II)
        throw Error("InvalidArgument", "cond2_dzero needs a Condition II preset");
    const double mu = preset.mu, w0 = preset.omega0, W0 = preset.Omega0;
    const double floor = 0.5 * sq(mu * kPi) * w0 + 2.0 * sq(mu * W0) / w0;
    if (budget_r2 < floor - 1e-12)
        throw Error("InsufficientEnergy", "trapping energy below the D = 0 floor");

    const double r0 = std::sqrt(std::max(0.0, (budget_r2 - floor) / 2.0));
    const double x0 = -r0;  // negative x0 maximizes B at fixed energy
    const double x1 = x0 + 0.5 * mu * kPi * std::sqrt(w0);
    const double x2 = x1 - mu * kPi * std::sqrt(w0);
    const double y = mu * W0 / std::sqrt(w0);

    const GeneratorCoeffs c = coeffs_condition2(preset);
    const cplx a1{x1, y}, a2{x2, y};
    InputEnsemble ens(MotionalState::coherent(a1), MotionalState::coherent(a2), N);
    const ClosedPrefactors cp = closed_coherent_prefactors(c, a1, a2);

    // printed forms of the leading prefactors
    const double k0 = preset.kappa0();
    const double brB = mu * kPi * W0 + std::sqrt(w0) * r0 * (kPi * kPi * k0 - 2.0 / k0);
    const double B_printed = sq(mu / w0) * sq(brB);
    const double C_printed = 4.0 * sq(mu) / w0;
    std::ostringstream branch;
    branch << "r0=" << r0 << " residual_D=" << check_D_zero(ens, c)
           << " B_printed=" << B_printed << " C_printed=" << C_printed;
    ClosedPrefactors printed = cp;
    printed.B = B_printed;
    printed.C = C_printed;
    return finish(std::move(ens), c, cp, w0, W0, branch.str(),
                  asym_hl_sql(printed, w0, W0, N));
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
    switch (spec.family) {
        case Family::Cond1Fock:
            return cond1_fock(spec.preset, spec.n1, spec.n2, spec.N, spec.allow_nearest);
        case Family::Cond1Coherent:
            return cond1_coherent(spec.preset, spec.budget, spec.N);
        case Family::Cond2Bzero:
            return cond2_bzero(spec.preset, spec.x1, spec.y1, spec.N);
        case Family::Cond2Dzero:
            return cond2_dzero(spec.preset, spec.budget, spec.N);
    }
    throw Error("InvalidArgument", "unknown scenario family");
}

DzeroOptimum cond2_dzero_optimum(double mu, double budget_r2, int kappa0, int N) {
    if (kappa0 < 1 || kappa0 % 2 == 0)
        throw Error("InvalidArgument", "kappa0 must be a positive odd integer");
    if (!(budget_r2 > 0) || !(mu > 0))
        throw Error("InvalidArgument", "budget and mu must be positive");

    DzeroOptimum out;
    const double k0 = kappa0;
    const double poly = std::pow(kPi, 4) * std::pow(k0, 4) - 3.0 * sq(kPi) * sq(k0) + 4.0;
    out.omega0_closed = budget_r2 / (sq(mu) * sq(kPi));
    out.Omega0_closed = budget_r2 * k0 / (2.0 * sq(mu) * std::sqrt(poly));
    out.bound_closed = sq(kPi) * sq(k0) / (sq(double(N)) * sq(budget_r2) * poly);

    // independent numeric minimization of the printed bound over (omega0, Omega0)
    const double c1 = sq(kPi) * k0 - 2.0 / k0;
    const auto gain = [&](double w0, double W0) {
        const double floor = 0.5 * sq(mu * kPi) * w0 + 2.0 * sq(mu * W0) / w0;
        if (w0 <= 0 || W0 <= 0 || budget_r2 <= floor) return -1.0;
        const double r0 = std::sqrt((budget_r2 - floor) / 2.0);
        return c1 * std::sqrt(w0) * r0 + mu * kPi * W0;
    };

    const double w_max = 2.0 * budget_r2 / sq(mu * kPi);
    double best_g = -1.0, best_w = 0.0, best_W = 0.0;
    const int nw = 400, nW = 400;
    for (int i = 1; i < nw; ++i) {
        const double w0 = w_max * i / nw;
        const double W_max = std::sqrt(std::max(0.0, (budget_r2 - 0.5 * sq(mu * kPi) * w0) * w0 /
                                                         (2.0 * sq(mu))));
        for (int j = 1; j < nW; ++j) {
            const double W0 = W_max * j / nW;
            const double g = gain(w0, W0);
            if (g > best_g) { best_g = g; best_w = w0; best_W = W0; }
        }
    }
    // coordinate refinement
    double step_w = w_max / nw, step_W = best_W / nW + 1e-12;
    for (int it = 0; it < 200; ++it) {
        bool moved = false;
        for (const auto& [dw, dW] : {std::pair{step_w, 0.0}, {-step_w, 0.0},
                                     {0.0, step_W}, {0.0, -step_W}}) {
            const double g = gain(best_w + dw, best_W + dW);
            if (g > best_g) {
                best_g = g; best_w += dw; best_W += dW; moved = true;
            }
        }
        if (!moved) { step_w *= 0.5; step_W *= 0.5; }
        if (step_w < 1e-12 * w_max) break;
    }
    out.omega0_numeric = best_w;
    out.Omega0_numeric = best_W;
    out.bound_numeric = 1.0 / (sq(double(N)) * 4.0 * sq(mu) * sq(best_g));
    return out;
}

std::vector<Fig2Cell> fig2_grid(double Omega0, double budget, const std::vector<double>& omega0s,
                                int kappa_min, int kappa_max, double mu) {
    if (kappa_min < 1 || kappa_max < kappa_min)
        throw Error("InvalidArgument", "fig2_grid: bad kappa range");
    std::vector<Fig2Cell> cells;
    cells.reserve(omega0s.size() * (kappa_max - kappa_min + 1));
    for (const double w0 : omega0s) {
        for (int kappa = kappa_min; kappa <= kappa_max; ++kappa) {
            Fig2Cell cell;
            cell.omega0 = w0;
            cell.kappa = kappa;
            try {
                const auto preset = ConditionPreset::condition1(kappa, w0, Omega0, mu);
                const double gap = 2.0 * Omega0 * sq(mu) / kappa;
                const double g = std::round(gap);
                if (std::abs(gap - g) > 1e-9)
                    throw Error("NonIntegerGap", "Fock gap is not an integer");
                const double n1d = 0.5 * (budget - g);
                if (n1d < -1e-9 || std::abs(n1d - std::round(n1d)) > 1e-9)
                    throw Error("NonIntegerGap", "budget and gap have no Fock realization");
                const int n1 = static_cast<int>(std::round(n1d));
                const int n2 = n1 + static_cast<int>(g);
                const auto fock = cond1_fock(preset, n1, n2, 1);
                const auto coh = cond1_coherent(preset, budget, 1);
                cell.log10_ratio =
                    std::log10(coh.closed_var_omega_rel / fock.closed_var_omega_rel);
                cell.valid = true;
            } catch (const Error& e) {
                cell.valid = false;
                cell.reason = e.code();
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<Fig3Point> fig3_curves(Fig3Sweep sweep, const std::vector<double>& sweep_values,
                                   const std::vector<double>& x1s, double y1, int kappa,
                                   double fixed_other, double mu) {
    std::vector<Fig3Point> points;
    points.reserve(sweep_values.size() * x1s.size());
    for (const double v : sweep_values) {
        const double w0 = sweep == Fig3Sweep::omega0 ? v : fixed_other;
        const double W0 = sweep == Fig3Sweep::Omega0 ? v : fixed_other;
        for (const double x1 : x1s) {
            Fig3Point pt;
            pt.sweep_value = v;
            pt.x1 = x1;
            try {
                const auto p2 = ConditionPreset::condition2(kappa, w0, W0, mu);
                const auto sc2 = cond2_bzero(p2, x1, y1, 1);
                const double D1 = sq(2.0 * sq(mu) * kPi);  // Condition I D = delta2^2
                pt.ratio_Omega = D1 / sc2.closed_pre.D;
                pt.valid_Omega = true;
                const double budget = std::norm(sc2.state.psi_up.alpha()) +
                                      std::norm(sc2.state.psi_down.alpha());
                const auto p1 = ConditionPreset::condition1(kappa, w0, W0, mu);
                const auto sc1 = cond1_coherent(p1, budget, 1);
                pt.ratio_omega = sc1.closed_pre.A / sc2.closed_pre.A;
                pt.valid_omega = true;
            } catch (const Error&) {
                // leave the failed ratio flagged invalid
            }
            points.push_back(pt);
        }
    }
    return points;
}

}  // namespace sagnac
