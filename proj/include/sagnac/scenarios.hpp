#pragma once

#include <string>
#include <vector>

#include "sagnac/qfim.hpp"

namespace sagnac {

enum class Family { Cond1Fock, Cond1Coherent, Cond2Bzero, Cond2Dzero };

// Closed-form prefactor set for a scenario, written directly in terms of the
// preset coefficients and the state parameters; independent of the moment
// pipeline. h obeys h = bracket_B * bracket_D (so B D = h^2).
struct ClosedPrefactors {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double g = 0.0, h = 0.0, E = 0.0, F = 0.0;
};

ClosedPrefactors closed_coherent_prefactors(const GeneratorCoeffs& c, cplx alpha1, cplx alpha2);
ClosedPrefactors closed_fock_cond1_prefactors(const GeneratorCoeffs& c, int n1, int n2);

// Exact relative-variance bounds at particle number N from closed prefactors.
std::pair<double, double> closed_bounds(const ClosedPrefactors& p, double omega0, double Omega0,
                                        int N);

struct ScenarioResult {
    InputEnsemble state;
    GeneratorCoeffs coeffs;
    PrecisionBounds bounds;  // generic pipeline, exact at the given N
    Prefactors pre;          // pipeline prefactors
    ClosedPrefactors closed_pre;
    double closed_var_omega_rel = 0.0;  // closed-form route, exact at the given N
    double closed_var_Omega_rel = 0.0;
    double asym_var_omega_rel = 0.0;  // leading large-N laws
    double asym_var_Omega_rel = 0.0;
    std::string branch;
};

// Condition I with Fock inputs |n1>, |n2>; requires the B = 0 level gap
// n2 - n1 = 2 Omega0 mu^2 / kappa. With allow_nearest the given (n1, n2) are
// accepted as-is and the nonzero B residual is reported honestly.
ScenarioResult cond1_fock(const ConditionPreset& preset, int n1, int n2, int N,
                          bool allow_nearest = false);

// Condition I with the optimal coherent pair at a total budget |a1|^2 + |a2|^2.
ScenarioResult cond1_coherent(const ConditionPreset& preset, double budget, int N);
ScenarioResult cond1_coherent_r1(const ConditionPreset& preset, double r1, int N);

// Condition II, B = 0 branch: x2 from the closed-form root, y2 from the
// saturability constraint y1 + y2 = 2 mu Omega0 / sqrt(omega0).
ScenarioResult cond2_bzero(const ConditionPreset& preset, double x1, double y1, int N);

// Condition II, D = 0 branch at trapping-energy budget r^2 = |a1|^2 + |a2|^2.
ScenarioResult cond2_dzero(const ConditionPreset& preset, double budget_r2, int N);

// One scenario request: the preset, the family, and the family's free state
// parameters (n1/n2 for Fock, budget for the coherent families, x1/y1 for the
// Condition II B = 0 branch).
struct ScenarioSpec {
    Family family = Family::Cond1Fock;
    ConditionPreset preset;
    int N = 1;
    int n1 = 0, n2 = 0;
    double budget = 0.0;
    double x1 = 0.0, y1 = 0.0;
    bool allow_nearest = false;
};

ScenarioResult run_scenario(const ScenarioSpec& spec);

struct DzeroOptimum {
    double omega0_closed = 0.0, Omega0_closed = 0.0, bound_closed = 0.0;
    double omega0_numeric = 0.0, Omega0_numeric = 0.0, bound_numeric = 0.0;
};

// True values (omega0*, Omega0*) minimizing the D = 0 trap-frequency bound at
// fixed budget, closed forms plus an independent numeric 2-D minimizer.
DzeroOptimum cond2_dzero_optimum(double mu, double budget_r2, int kappa0, int N);

struct Fig2Cell {
    double omega0 = 0.0;
    int kappa = 0;
    double log10_ratio = 0.0;  // log10( coherent / Fock ), positive = Fock better
    bool valid = false;
    std::string reason;
};

std::vector<Fig2Cell> fig2_grid(double Omega0, double budget, const std::vector<double>& omega0s,
                                int kappa_min, int kappa_max, double mu = 1.0);

enum class Fig3Sweep { Omega0, omega0 };

struct Fig3Point {
    double sweep_value = 0.0;
    double x1 = 0.0;
    double ratio_omega = 0.0;  // Condition II / Condition I at equal trapping energy
    double ratio_Omega = 0.0;
    bool valid_omega = false;
    bool valid_Omega = false;
};

std::vector<Fig3Point> fig3_curves(Fig3Sweep sweep, const std::vector<double>& sweep_values,
                                   const std::vector<double>& x1s, double y1, int kappa,
                                   double fixed_other, double mu = 1.0);

}  // namespace sagnac
