// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Every tolerance is pinned in code next to the check it gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sagnac/oracle.hpp"
#include "sagnac/scenarios.hpp"

using namespace sagnac;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 rng(987654321);

double uni(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}
int unii(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

double sq(double x) { return x * x; }

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
    if (!pass) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// ---- randomized scenario draws ------------------------------------------

ScenarioResult draw_cond1_fock(int N) {
    for (;;) {
        const int gap = unii(1, 4), kappa = unii(1, 4);
        const double mu = uni(0.7, 1.3);
        const double Omega0 = gap * kappa / (2.0 * mu * mu);
        if (Omega0 > 3.5) continue;
        const double omega0 = uni(0.5, 2.5);
        const auto preset = ConditionPreset::condition1(kappa, omega0, Omega0, mu);
        const int n1 = unii(0, 6);
        return cond1_fock(preset, n1, n1 + gap, N);
    }
}

ScenarioResult draw_cond1_coherent(int N) {
    for (;;) {
        const int kappa = unii(1, 5);
        const double mu = uni(0.7, 1.3), omega0 = uni(0.5, 2.5), Omega0 = uni(0.05, 1.5);
        if (std::abs(omega0 - 2.0 * kappa * Omega0) < 0.05) continue;
        const auto preset = ConditionPreset::condition1(kappa, omega0, Omega0, mu);
        const bool branch1 = omega0 > 2.0 * kappa * Omega0;
        const double shift = branch1 ? 2.0 * mu * Omega0 / std::sqrt(omega0)
                                     : mu * std::sqrt(omega0) / kappa;
        const double budget = 0.5 * sq(shift) * (1.0 + uni(0.1, 3.0));
        return cond1_coherent(preset, budget, N);
    }
}

ScenarioResult draw_cond2_bzero(int N) {
    for (;;) {
        const auto preset = ConditionPreset::condition2(unii(0, 4), uni(0.5, 2.0),
                                                        uni(0.1, 1.2), uni(0.7, 1.3));
        try {
            return cond2_bzero(preset, uni(-2.5, 0.3), uni(-2.0, 4.0), N);
        } catch (const Error&) {
        }
    }
}

ScenarioResult draw_cond2_dzero(int N) {
    const auto preset = ConditionPreset::condition2(unii(0, 4), uni(0.5, 2.0), uni(0.1, 1.0),
                                                    uni(0.7, 1.3));
    const double floor = 0.5 * sq(preset.mu * kPi) * preset.omega0 +
                         2.0 * sq(preset.mu * preset.Omega0) / preset.omega0;
    return cond2_dzero(preset, floor * (1.0 + uni(0.05, 3.0)), N);
}

ScenarioResult draw_any(int family, int N) {
    switch (family % 4) {
        case 0: return draw_cond1_fock(N);
        case 1: return draw_cond1_coherent(N);
        case 2: return draw_cond2_bzero(N);
        default: return draw_cond2_dzero(N);
    }
}

MotionalState random_vector_state(int levels) {
    std::vector<cplx> amp(levels + 4, cplx{0.0, 0.0});
    double norm2 = 0.0;
    for (int k = 0; k < levels; ++k) {
        amp[k] = {uni(-1.0, 1.0), uni(-1.0, 1.0)};
        norm2 += std::norm(amp[k]);
    }
    for (auto& x : amp) x /= std::sqrt(norm2);
    return MotionalState::vector(amp);
}

MotionalState random_motional(int pick) {
    if (pick % 3 == 0) return MotionalState::fock(unii(0, 5));
    if (pick % 3 == 1) return MotionalState::coherent({uni(-1.3, 1.3), uni(-1.3, 1.3)});
    return random_vector_state(10);
}

// ---- criteria -------------------------------------------------------------

void criterion1() {
    Timer timer;
    double worst = 0.0;
    int count = 0;
    for (int i = 0; i < 220; ++i) {
        const auto sc = draw_any(i, 1 + i % 4);
        const double ew = std::abs(sc.closed_var_omega_rel - sc.bounds.var_omega_rel) /
                          sc.bounds.var_omega_rel;
        const double eW = std::abs(sc.closed_var_Omega_rel - sc.bounds.var_Omega_rel) /
                          sc.bounds.var_Omega_rel;
        worst = std::max({worst, ew, eW});
        ++count;
    }
    const double secs = timer.seconds();
    const bool pass = count >= 200 && worst <= 1e-9 && secs < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "closed forms vs pipeline, %d scenarios, worst rel %.2e, %.2f s", count, worst,
                  secs);
    report(1, pass, buf);
}

void criterion2() {
    Timer timer;
    double worst = 0.0;
    int n1count = 0, n2count = 0;
    const auto compare = [&](const ScenarioResult& sc, const ConditionPreset& preset, int N) {
        const oracle::TruncatedBasis basis(48, N);
        const auto fd = oracle::qfim_fd(basis, sc.state, preset.profile(), preset.omega0,
                                        preset.Omega0, preset.mu);
        const auto q = assemble_qfim(sc.state, sc.coeffs);
        const double scale = std::max(std::abs(q.f_omega_omega), std::abs(q.f_Omega_Omega));
        worst = std::max(worst, std::abs(fd.f_omega_omega - q.f_omega_omega) / scale);
        worst = std::max(worst, std::abs(fd.f_Omega_Omega - q.f_Omega_Omega) / scale);
        worst = std::max(worst, std::abs(fd.f_omega_Omega - q.f_omega_Omega) / scale);
    };

    for (int i = 0; i < 22; ++i) {  // N = 1
        for (;;) {
            // keep the transient phase-space excursion (~2 c / omega) inside
            // the mandated cutoff of 48
            const int gap = unii(1, 2), kappa = unii(1, 2);
            const double mu = uni(0.8, 1.2);
            const double Omega0 = gap * kappa / (2.0 * mu * mu);
            const double omega0 = uni(0.9, 1.8);
            if (Omega0 > 1.1) continue;
            const auto preset = ConditionPreset::condition1(kappa, omega0, Omega0, mu);
            if (i % 2 == 0) {
                const int n1 = unii(0, 3);
                compare(cond1_fock(preset, n1, n1 + gap, 1), preset, 1);
            } else {
                // keep |alpha| and the transient displacement well inside d = 48
                const auto p2 = ConditionPreset::condition2(unii(1, 2), uni(0.9, 1.4),
                                                            uni(0.15, 0.4), uni(0.8, 1.05));
                const double Y = 2.0 * p2.mu * p2.Omega0 / std::sqrt(p2.omega0);
                try {
                    compare(cond2_bzero(p2, uni(-0.8, 0.0), 0.5 * Y + uni(-0.3, 0.3), 1), p2,
                            1);
                } catch (const Error&) {
                    continue;
                }
            }
            ++n1count;
            break;
        }
    }
    for (int i = 0; i < 6; ++i) {  // N = 2
        const double mu = uni(0.8, 1.05), omega0 = uni(0.9, 1.4);
        if (i % 2 == 0) {
            const auto p2 = ConditionPreset::condition2(unii(1, 2), omega0, uni(0.15, 0.4), mu);
            const double Y = 2.0 * p2.mu * p2.Omega0 / std::sqrt(p2.omega0);
            try {
                compare(cond2_bzero(p2, uni(-0.8, 0.0), 0.5 * Y + uni(-0.3, 0.3), 2), p2, 2);
            } catch (const Error&) {
                --i;
                continue;
            }
        } else {
            const int gap = 1, kappa = 1;
            const double Omega0 = gap * kappa / (2.0 * mu * mu);
            const auto preset = ConditionPreset::condition1(kappa, omega0, Omega0, mu);
            const int n1 = unii(0, 2);
            compare(cond1_fock(preset, n1, n1 + gap, 2), preset, 2);
        }
        ++n2count;
    }
    const double secs = timer.seconds();
    const bool pass = n1count >= 20 && n2count >= 5 && worst <= 1e-3 && secs < 300.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "finite-difference QFIM vs assembly, %d @N=1 + %d @N=2, worst rel %.2e, %.1f s",
                  n1count, n2count, worst, secs);
    report(2, pass, buf);
}

void criterion3() {
    double worst_poly = 0.0, worst_ad = 0.0, worst_bc = 0.0, worst_f = 0.0;
    int n_poly = 0, n_b = 0, n_d = 0, n_bd = 0;

    for (int i = 0; i < 120; ++i) {  // polynomial exactness on mixed scenarios
        const auto sc = draw_any(i, 1);
        const auto& p = sc.pre;
        for (int N = 1; N <= 10; ++N) {
            InputEnsemble ens(sc.state.psi_up, sc.state.psi_down, N);
            const auto q = assemble_qfim(ens, sc.coeffs);
            const double n = N;
            const double ew = std::abs(q.f_omega_omega - 4.0 * (p.A * n + p.B * n * n)) /
                              std::max(1.0, std::abs(q.f_omega_omega));
            const double eW = std::abs(q.f_Omega_Omega - 4.0 * (p.C * n + p.D * n * n)) /
                              std::max(1.0, std::abs(q.f_Omega_Omega));
            worst_poly = std::max({worst_poly, ew, eW});
        }
        ++n_poly;
    }
    for (int i = 0; i < 110; ++i) {  // B = 0 families
        const auto sc = i % 2 ? draw_cond2_bzero(1) : draw_cond1_fock(1);
        worst_ad = std::max(worst_ad,
                            std::abs(sc.pre.A * sc.pre.D - sc.pre.F) / std::abs(sc.pre.F));
        ++n_b;
    }
    for (int i = 0; i < 110; ++i) {  // D = 0 family
        const auto sc = draw_cond2_dzero(1);
        worst_bc = std::max(worst_bc,
                            std::abs(sc.pre.B * sc.pre.C - sc.pre.F) / std::abs(sc.pre.F));
        ++n_d;
    }
    for (int i = 0; i < 110; ++i) {  // B = 0 and D = 0 together force F = 0
        const auto preset = ConditionPreset::condition2(unii(0, 3), uni(0.5, 2.0),
                                                        uni(0.1, 1.0), uni(0.7, 1.3));
        const auto c = coeffs_condition2(preset);
        const double mu = preset.mu, w0 = preset.omega0, W0 = preset.Omega0;
        const double k0 = preset.kappa0();
        const double x0 = mu * kPi * W0 / (std::sqrt(w0) * (kPi * kPi * k0 - 2.0 / k0));
        const double x1 = x0 + 0.5 * mu * kPi * std::sqrt(w0);
        const double y = mu * W0 / std::sqrt(w0);
        InputEnsemble ens(MotionalState::coherent({x1, y}),
                          MotionalState::coherent({x1 - mu * kPi * std::sqrt(w0), y}), 1);
        worst_f = std::max(worst_f, std::abs(prefactors(ens, c).F));
        ++n_bd;
    }
    const bool pass = worst_poly <= 1e-12 && worst_ad <= 1e-10 && worst_bc <= 1e-10 &&
                      worst_f <= 1e-10 && n_poly >= 100 && n_b >= 100 && n_d >= 100 &&
                      n_bd >= 100;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "N-scaling identities: poly %.1e, |AD-F|/F %.1e, |BC-F|/F %.1e, |F| %.1e "
                  "(%d/%d/%d/%d scenarios)",
                  worst_poly, worst_ad, worst_bc, worst_f, n_poly, n_b, n_d, n_bd);
    report(3, pass, buf);
}

// random Vector pair with B = 0 enforced by displacing one branch along the
// real axis (the branch expectation is quadratic in the displacement, so a
// real root always exists on one side)
InputEnsemble vector_pair_b_zero(const ConditionPreset& preset, int N) {
    const auto c = coeffs_condition1(preset);
    for (;;) {
        const MotionalState up0 = random_vector_state(9);
        const MotionalState dn0 = random_vector_state(9);
        const auto mup = moments(up0);
        const auto mdn = moments(dn0);
        const double tau = c.tau_n;
        const double o_up = 2.0 * ((c.K1 - c.K2) * mup.m_a).real() + c.lambda - tau * mup.m_n;
        const double o_dn = 2.0 * ((c.K1 + c.K2) * mdn.m_a).real() - c.lambda - tau * mdn.m_n;
        const double delta0 = o_dn - o_up;
        // displaced branch solves tau b^2 - L b - delta = 0
        const bool move_dn = delta0 >= 0.0;
        const auto& mm = move_dn ? mdn : mup;
        const cplx u = move_dn ? (c.K1 + c.K2) : (c.K1 - c.K2);
        const double L = 2.0 * (u.real() - tau * mm.m_a.real());
        const double delta = move_dn ? delta0 : -delta0;
        const double disc = L * L + 4.0 * tau * delta;
        if (disc < 0) continue;
        const double beta = (L + std::sqrt(disc)) / (2.0 * tau);
        const int d = 64;
        const auto D = oracle::displacement_matrix(d, {beta, 0.0});
        const auto base = (move_dn ? dn0 : up0).expand(d);
        Eigen::VectorXcd v(d);
        for (int n = 0; n < d; ++n) v(n) = base[n];
        const Eigen::VectorXcd w = D * v;
        std::vector<cplx> amp(d);
        for (int n = 0; n < d; ++n) amp[n] = w(n);
        const MotionalState moved = MotionalState::vector(amp);
        InputEnsemble ens(move_dn ? up0 : moved, move_dn ? moved : dn0, N);
        if (std::abs(check_B_zero(ens, c)) > 1e-9) continue;
        return ens;
    }
}

void criterion4() {
    double worst = 0.0;
    int count = 0;
    for (int i = 0; i < 51; ++i) {
        const int N = 1 + i % 5;
        ConditionPreset preset = ConditionPreset::condition1(1, 1.0, 1.0, 1.0);
        PrecisionBounds bounds;
        if (i % 3 == 0) {  // Fock with the exact B = 0 gap
            for (;;) {
                const int gap = unii(1, 4), kappa = unii(1, 4);
                const double mu = uni(0.7, 1.3);
                const double Omega0 = gap * kappa / (2.0 * mu * mu);
                if (Omega0 > 3.5) continue;
                preset = ConditionPreset::condition1(kappa, uni(0.5, 2.5), Omega0, mu);
                const int n1 = unii(0, 6);
                bounds = cond1_fock(preset, n1, n1 + gap, N).bounds;
                break;
            }
        } else if (i % 3 == 1) {  // optimal coherent pair (B = 0 for every r1)
            for (;;) {
                const int kappa = unii(1, 5);
                const double mu = uni(0.7, 1.3), w0 = uni(0.5, 2.5), W0 = uni(0.05, 1.5);
                if (std::abs(w0 - 2.0 * kappa * W0) < 0.05) continue;
                preset = ConditionPreset::condition1(kappa, w0, W0, mu);
                bounds = cond1_coherent_r1(preset, uni(-0.3, 2.0), N).bounds;
                break;
            }
        } else {  // random truncated vectors, B = 0 enforced by displacement
            preset = ConditionPreset::condition1(unii(1, 4), uni(0.5, 2.0), uni(0.1, 1.5),
                                                 uni(0.7, 1.3));
            const auto ens = vector_pair_b_zero(preset, N);
            bounds = evaluate_bounds(ens, coeffs_condition1(preset), preset.omega0,
                                     preset.Omega0);
        }
        const double expect = 1.0 / (16.0 * kPi * kPi * std::pow(preset.mu, 4) *
                                     sq(preset.Omega0) * sq(double(N)));
        worst = std::max(worst, std::abs(bounds.var_Omega_rel / expect - 1.0));
        ++count;
    }
    const bool pass = count >= 50 && worst <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Condition I rotation bound state-independence, %d states, worst rel %.2e",
                  count, worst);
    report(4, pass, buf);
}

void criterion5() {
    int count = 0;
    int both_hl = 0;
    double worst_n4 = 0.0;
    for (int i = 0; i < 1100; ++i) {
        GeneratorCoeffs c;
        InputEnsemble ens(random_motional(i), random_motional(i + 1), 1 + i % 4);
        if (i % 3 == 0) {
            c = coeffs_condition1(ConditionPreset::condition1(unii(1, 5), uni(0.4, 2.5),
                                                              uni(0.05, 1.5), uni(0.6, 1.4)));
        } else if (i % 3 == 1) {
            c = coeffs_condition2(ConditionPreset::condition2(unii(0, 4), uni(0.4, 2.5),
                                                              uni(0.05, 1.5), uni(0.6, 1.4)));
        } else {
            const double tau = uni(1.0, 9.0);
            c = coeffs_general(SweepProfile::constant(kPi / tau, tau), uni(0.4, 2.5),
                               uni(0.05, 1.5), uni(0.6, 1.4));
        }
        const auto p = prefactors(ens, c);
        const auto tags = classify_scaling(p, ens.N);
        if (tags.first == Scaling::HL && tags.second == Scaling::HL) ++both_hl;
        const double scale = std::max({std::abs(p.B * p.D), p.h * p.h, 1.0});
        worst_n4 = std::max(worst_n4, std::abs(p.B * p.D - p.h * p.h) / scale);
        ++count;
    }
    const bool pass = count >= 1000 && both_hl == 0 && worst_n4 <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "HL exclusion: %d scenarios, both-HL %d, worst N^4 residual %.1e", count,
                  both_hl, worst_n4);
    report(5, pass, buf);
}

void criterion6() {
    double worst_ok = 0.0;
    int n_ok = 0, n_violated = 0, violated_nonzero = 0;
    for (int i = 0; i < 60; ++i) {
        if (i % 2 == 0) {
            const auto c = coeffs_condition1(ConditionPreset::condition1(
                unii(1, 5), uni(0.4, 2.5), uni(0.05, 1.5), uni(0.6, 1.4)));
            InputEnsemble ens(random_motional(i), random_motional(i + 2), 1);
            worst_ok = std::max(worst_ok,
                                std::abs(commutator_expectation(c, 0.0, ghz_a_mean(ens))));
        } else {
            const auto preset = ConditionPreset::condition2(unii(0, 4), uni(0.4, 2.5),
                                                            uni(0.05, 1.5), uni(0.6, 1.4));
            const auto c = coeffs_condition2(preset);
            const double Y = 2.0 * preset.mu * preset.Omega0 / std::sqrt(preset.omega0);
            const double y1 = uni(-2.0, 4.0);
            InputEnsemble ens(MotionalState::coherent({uni(-2.0, 2.0), y1}),
                              MotionalState::coherent({uni(-2.0, 2.0), Y - y1}), 1);
            worst_ok = std::max(worst_ok,
                                std::abs(commutator_expectation(c, 0.0, ghz_a_mean(ens))));
        }
        ++n_ok;
    }
    for (int i = 0; i < 55; ++i) {  // deliberately violated controls
        const auto preset = ConditionPreset::condition2(unii(0, 4), uni(0.4, 2.5),
                                                        uni(0.1, 1.5), uni(0.6, 1.4));
        const auto c = coeffs_condition2(preset);
        const double Y = 2.0 * preset.mu * preset.Omega0 / std::sqrt(preset.omega0);
        const double y1 = uni(-2.0, 4.0);
        const double off = (uni(0.0, 1.0) > 0.5 ? 1.0 : -1.0) * uni(0.05, 0.5);
        InputEnsemble ens(MotionalState::coherent({uni(-2.0, 2.0), y1}),
                          MotionalState::coherent({uni(-2.0, 2.0), Y - y1 + off}), 1);
        if (std::abs(commutator_expectation(c, 0.0, ghz_a_mean(ens))) > 1e-9)
            ++violated_nonzero;
        ++n_violated;
    }
    const bool pass = worst_ok < 1e-9 && n_violated >= 50 && violated_nonzero == n_violated;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "saturability: worst satisfied |comm| %.1e over %d, %d/%d controls nonzero",
                  worst_ok, n_ok, violated_nonzero, n_violated);
    report(6, pass, buf);
}

void criterion7() {
    Timer timer;
    std::vector<double> omega0s;
    for (int i = 0; i < 40; ++i) omega0s.push_back(0.5 + i * 0.5);
    const auto cells = fig2_grid(10.0, 100.0, omega0s, 1, 20);
    int valid = 0, positive = 0;
    for (const auto& c : cells) {
        if (c.valid) {
            ++valid;
            if (c.log10_ratio > 0.0) ++positive;
        }
    }

    std::vector<double> sweep;
    for (int i = 1; i <= 40; ++i) sweep.push_back(0.01 + (1.0 - 0.01) * i / 40.0);
    const auto pts = fig3_curves(Fig3Sweep::Omega0, sweep, {-1.0, -3.0, -5.0}, 10.0, 10, 1.0);
    bool all_below_one = true, ordered = true;
    for (std::size_t k = 0; k < pts.size(); k += 3) {
        for (int j = 0; j < 3; ++j) {
            if (!pts[k + j].valid_Omega || pts[k + j].ratio_Omega >= 1.0)
                all_below_one = false;
        }
        if (!(pts[k + 1].ratio_Omega < pts[k].ratio_Omega &&
              pts[k + 2].ratio_Omega < pts[k + 1].ratio_Omega))
            ordered = false;
    }
    const double secs = timer.seconds();
    const bool pass =
        valid > 0 && positive == valid && all_below_one && ordered && secs < 60.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "figure properties: fig2 %d/%d valid cells positive; fig3 below-one %s, "
                  "x1-ordered %s; %.2f s",
                  positive, valid, all_below_one ? "yes" : "no", ordered ? "yes" : "no", secs);
    report(7, pass, buf);
}

void criterion8() {
    double worst = 0.0;
    for (const double r : {5.0, 10.0, 20.0}) {
        for (const int k0 : {1, 3, 11}) {
            const auto opt = cond2_dzero_optimum(1.0, r * r, k0, 1);
            worst = std::max(worst, std::abs(opt.omega0_numeric / opt.omega0_closed - 1.0));
            worst = std::max(worst, std::abs(opt.Omega0_numeric / opt.Omega0_closed - 1.0));
            worst = std::max(worst, std::abs(opt.bound_numeric / opt.bound_closed - 1.0));
        }
    }
    const bool pass = worst <= 0.05;
    char buf[120];
    std::snprintf(buf, sizeof buf, "optimum consistency over 9 cases, worst rel dev %.2e",
                  worst);
    report(8, pass, buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
