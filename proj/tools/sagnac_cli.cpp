// Command-line front end: scenario bounds, figure-data sweeps, and the
// oracle-vs-closed-form validation suite. All numeric output is serialized
// with 17 significant digits; frequencies are in units of mu^-2 (hbar = 1).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "sagnac/oracle.hpp"
#include "sagnac/scenarios.hpp"

using namespace sagnac;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string scaling_name(Scaling s) {
    switch (s) {
        case Scaling::HL: return "HL";
        case Scaling::SQL: return "SQL";
        default: return "other";
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("InvalidArgument", "cannot open output file " + path);
    out << text;
}

// deterministic index-ordered parallel map
template <typename Fn>
void parallel_for_index(std::size_t n, const Fn& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct BoundsOptions {
    std::string family = "cond1-fock";
    double mu = 1.0, omega0 = 1.0, Omega0 = 0.5;
    int kappa = 1, N = 1;
    int n1 = 0, n2 = 1;
    double budget = 4.0;
    double x1 = -1.0, y1 = 10.0;
    double nu = 1.0;
    bool allow_nearest = false;
};

ScenarioResult dispatch_scenario(const BoundsOptions& o) {
    ScenarioSpec spec;
    spec.N = o.N;
    spec.n1 = o.n1;
    spec.n2 = o.n2;
    spec.budget = o.budget;
    spec.x1 = o.x1;
    spec.y1 = o.y1;
    spec.allow_nearest = o.allow_nearest;
    if (o.family == "cond1-fock" || o.family == "cond1-coherent") {
        spec.preset = ConditionPreset::condition1(o.kappa, o.omega0, o.Omega0, o.mu);
        spec.family = o.family == "cond1-fock" ? Family::Cond1Fock : Family::Cond1Coherent;
    } else if (o.family == "cond2-bzero" || o.family == "cond2-dzero") {
        spec.preset = ConditionPreset::condition2(o.kappa, o.omega0, o.Omega0, o.mu);
        spec.family = o.family == "cond2-bzero" ? Family::Cond2Bzero : Family::Cond2Dzero;
    } else {
        throw Error("InvalidArgument", "unknown family " + o.family);
    }
    return run_scenario(spec);
}

json config_json(const BoundsOptions& o) {
    return json{{"family", o.family}, {"mu", o.mu},         {"omega0", o.omega0},
                {"Omega0", o.Omega0}, {"kappa", o.kappa},   {"N", o.N},
                {"n1", o.n1},         {"n2", o.n2},         {"budget", o.budget},
                {"x1", o.x1},         {"y1", o.y1},         {"nu", o.nu},
                {"allow_nearest", o.allow_nearest}};
}

std::string config_comment(const json& cfg) {
    std::ostringstream out;
    out << "# units: frequencies in mu^-2, hbar = 1\n";
    for (const auto& [key, value] : cfg.items()) out << "# " << key << " = " << value << "\n";
    return out.str();
}

int cmd_bounds(const BoundsOptions& o, const std::string& format, const std::string& out_path) {
    const auto sc = dispatch_scenario(o);
    PrecisionBounds b = sc.bounds;
    b.var_omega_rel /= o.nu;
    b.var_Omega_rel /= o.nu;

    const json cfg = config_json(o);
    if (format == "json") {
        json j{{"config", cfg},
               {"var_omega_rel", b.var_omega_rel},
               {"var_Omega_rel", b.var_Omega_rel},
               {"saturable", b.saturable},
               {"scaling_omega", scaling_name(b.scaling_omega)},
               {"scaling_Omega", scaling_name(b.scaling_Omega)},
               {"prefactors",
                {{"A", sc.pre.A},
                 {"B", sc.pre.B},
                 {"C", sc.pre.C},
                 {"D", sc.pre.D},
                 {"E", sc.pre.E},
                 {"F", sc.pre.F}}},
               {"closed_var_omega_rel", sc.closed_var_omega_rel / o.nu},
               {"closed_var_Omega_rel", sc.closed_var_Omega_rel / o.nu},
               {"asym_var_omega_rel", sc.asym_var_omega_rel / o.nu},
               {"asym_var_Omega_rel", sc.asym_var_Omega_rel / o.nu},
               {"branch", sc.branch}};
        write_text(out_path, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << config_comment(cfg);
    csv << "var_omega_rel,var_Omega_rel,saturable,scaling_omega,scaling_Omega,"
           "A,B,C,D,E,F,closed_var_omega_rel,closed_var_Omega_rel,"
           "asym_var_omega_rel,asym_var_Omega_rel\n";
    csv << fmt17(b.var_omega_rel) << ',' << fmt17(b.var_Omega_rel) << ','
        << (b.saturable ? 1 : 0) << ',' << scaling_name(b.scaling_omega) << ','
        << scaling_name(b.scaling_Omega) << ',' << fmt17(sc.pre.A) << ',' << fmt17(sc.pre.B)
        << ',' << fmt17(sc.pre.C) << ',' << fmt17(sc.pre.D) << ',' << fmt17(sc.pre.E) << ','
        << fmt17(sc.pre.F) << ',' << fmt17(sc.closed_var_omega_rel / o.nu) << ','
        << fmt17(sc.closed_var_Omega_rel / o.nu) << ',' << fmt17(sc.asym_var_omega_rel / o.nu)
        << ',' << fmt17(sc.asym_var_Omega_rel / o.nu) << "\n";
    write_text(out_path, csv.str());
    return 0;
}

struct Fig2Options {
    double Omega0 = 10.0;
    double budget = 100.0;
    double mu = 1.0;
    double omega0_min = 0.5, omega0_max = 20.0;
    int omega0_points = 40;
    int kappa_min = 1, kappa_max = 20;
};

int cmd_fig2(const Fig2Options& o, const std::string& format, const std::string& out_path) {
    std::vector<double> omega0s;
    for (int i = 0; i < o.omega0_points; ++i)
        omega0s.push_back(o.omega0_min +
                          (o.omega0_max - o.omega0_min) * i /
                              std::max(1, o.omega0_points - 1));

    // grid cells are independent; evaluate on a worker pool, assemble by index
    const int nk = o.kappa_max - o.kappa_min + 1;
    std::vector<Fig2Cell> cells(omega0s.size() * nk);
    parallel_for_index(cells.size(), [&](std::size_t idx) {
        const double w0 = omega0s[idx / nk];
        const int kappa = o.kappa_min + static_cast<int>(idx % nk);
        const auto one = fig2_grid(o.Omega0, o.budget, {w0}, kappa, kappa, o.mu);
        cells[idx] = one[0];
    });

    const json cfg{{"Omega0", o.Omega0},          {"budget", o.budget},
                   {"mu", o.mu},                  {"omega0_min", o.omega0_min},
                   {"omega0_max", o.omega0_max},  {"omega0_points", o.omega0_points},
                   {"kappa_min", o.kappa_min},    {"kappa_max", o.kappa_max}};
    if (format == "json") {
        json rows = json::array();
        for (const auto& c : cells)
            rows.push_back({{"omega0", c.omega0},
                            {"kappa", c.kappa},
                            {"log10_ratio", c.valid ? json(c.log10_ratio) : json()},
                            {"valid", c.valid},
                            {"reason", c.reason}});
        write_text(out_path, json{{"config", cfg}, {"cells", rows}}.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << config_comment(cfg);
    csv << "omega0,kappa,log10_ratio,valid_flag\n";
    for (const auto& c : cells)
        csv << fmt17(c.omega0) << ',' << c.kappa << ','
            << fmt17(c.valid ? c.log10_ratio : std::nan("")) << ',' << (c.valid ? 1 : 0)
            << "\n";
    write_text(out_path, csv.str());
    return 0;
}

struct Fig3Options {
    std::string sweep = "Omega0";
    double fixed = 1.0;     // the non-swept true value
    double min = 0.01, max = 1.0;
    int points = 40;
    std::vector<double> x1s = {-1.0, -3.0, -5.0};
    double y1 = 10.0;
    int kappa = 10;
    double mu = 1.0;
};

int cmd_fig3(const Fig3Options& o, const std::string& format, const std::string& out_path) {
    std::vector<double> sweep;
    for (int i = 0; i < o.points; ++i)
        sweep.push_back(o.min + (o.max - o.min) * i / std::max(1, o.points - 1));
    const auto mode = o.sweep == "omega0" ? Fig3Sweep::omega0 : Fig3Sweep::Omega0;
    const auto pts = fig3_curves(mode, sweep, o.x1s, o.y1, o.kappa, o.fixed, o.mu);

    const json cfg{{"sweep", o.sweep},   {"fixed", o.fixed}, {"min", o.min},
                   {"max", o.max},       {"points", o.points}, {"x1", o.x1s},
                   {"y1", o.y1},         {"kappa", o.kappa},   {"mu", o.mu}};
    if (format == "json") {
        json rows = json::array();
        for (const auto& p : pts)
            rows.push_back({{"sweep_value", p.sweep_value},
                            {"x1", p.x1},
                            {"ratio_omega", p.valid_omega ? json(p.ratio_omega) : json()},
                            {"ratio_Omega", p.valid_Omega ? json(p.ratio_Omega) : json()}});
        write_text(out_path, json{{"config", cfg}, {"points", rows}}.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << config_comment(cfg);
    csv << "sweep_value,x1,ratio_omega,ratio_Omega\n";
    for (const auto& p : pts)
        csv << fmt17(p.sweep_value) << ',' << fmt17(p.x1) << ','
            << fmt17(p.valid_omega ? p.ratio_omega : std::nan("")) << ','
            << fmt17(p.valid_Omega ? p.ratio_Omega : std::nan("")) << "\n";
    write_text(out_path, csv.str());
    return 0;
}

struct ValidateOptions {
    int cutoff = 48;
    int steps = 4096;
    std::uint64_t seed = 1;
    int scenarios = 60;
    int oracle_n1 = 6;
    int oracle_n2 = 2;
};

int cmd_validate(const ValidateOptions& o, const std::string& out_path) {
    std::mt19937_64 rng(o.seed);
    const auto uni = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    };
    const auto unii = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

    std::ostringstream out;
    out << "# units: frequencies in mu^-2, hbar = 1\n";
    out << "# rng = mt19937_64\n# seed = " << o.seed << "\n# cutoff = " << o.cutoff
        << "\n# steps = " << o.steps << "\n";
    int failures = 0;
    const auto check = [&](const std::string& name, bool ok, double residual,
                           const std::string& note = "") {
        out << (ok ? "PASS" : "FAIL") << ' ' << name << " residual=" << fmt17(residual);
        if (!note.empty()) out << " (" << note << ")";
        out << "\n";
        if (!ok) ++failures;
    };

    // 1. closed forms vs generic pipeline across the four families
    {
        double worst = 0.0;
        for (int i = 0; i < o.scenarios; ++i) {
            ScenarioResult sc = [&]() -> ScenarioResult {
                switch (i % 4) {
                    case 0: {
                        const int gap = unii(1, 3), kappa = unii(1, 3);
                        const double mu = uni(0.7, 1.3);
                        const double W0 = gap * kappa / (2.0 * mu * mu);
                        const auto preset =
                            ConditionPreset::condition1(kappa, uni(0.5, 2.5), W0, mu);
                        const int n1 = unii(0, 5);
                        return cond1_fock(preset, n1, n1 + gap, 1 + i % 3);
                    }
                    case 1:
                        for (;;) {
                            const int kappa = unii(1, 4);
                            const double mu = uni(0.7, 1.3), w0 = uni(0.5, 2.5),
                                         W0 = uni(0.05, 1.2);
                            if (std::abs(w0 - 2.0 * kappa * W0) < 0.05) continue;
                            const auto preset =
                                ConditionPreset::condition1(kappa, w0, W0, mu);
                            return cond1_coherent_r1(preset, uni(-0.2, 2.0), 1 + i % 3);
                        }
                    case 2:
                        for (;;) {
                            const auto preset = ConditionPreset::condition2(
                                unii(0, 3), uni(0.5, 2.0), uni(0.1, 1.0), uni(0.7, 1.3));
                            try {
                                return cond2_bzero(preset, uni(-2.0, 0.2), uni(-1.0, 3.0),
                                                   1 + i % 3);
                            } catch (const Error&) {
                            }
                        }
                    default: {
                        const auto preset = ConditionPreset::condition2(
                            unii(0, 3), uni(0.5, 2.0), uni(0.1, 1.0), uni(0.7, 1.3));
                        const double floor =
                            0.5 * std::pow(preset.mu * kPi, 2) * preset.omega0 +
                            2.0 * std::pow(preset.mu * preset.Omega0, 2) / preset.omega0;
                        return cond2_dzero(preset, floor * (1.0 + uni(0.1, 2.0)), 1 + i % 3);
                    }
                }
            }();
            worst = std::max(worst, std::abs(sc.closed_var_omega_rel / sc.bounds.var_omega_rel - 1.0));
            worst = std::max(worst, std::abs(sc.closed_var_Omega_rel / sc.bounds.var_Omega_rel - 1.0));
        }
        check("closed-form-vs-pipeline", worst <= 1e-9, worst,
              std::to_string(o.scenarios) + " scenarios");
    }

    // 2. identity chain
    {
        double worst = 0.0;
        for (int i = 0; i < 40; ++i) {
            const auto preset = ConditionPreset::condition2(unii(0, 3), uni(0.5, 2.0),
                                                            uni(0.1, 1.0), uni(0.7, 1.3));
            try {
                const auto sb = cond2_bzero(preset, uni(-2.0, 0.2), uni(-1.0, 3.0), 1);
                worst = std::max(worst, std::abs(sb.pre.A * sb.pre.D / sb.pre.F - 1.0));
            } catch (const Error&) {
            }
            const double floor = 0.5 * std::pow(preset.mu * kPi, 2) * preset.omega0 +
                                 2.0 * std::pow(preset.mu * preset.Omega0, 2) / preset.omega0;
            const auto sd = cond2_dzero(preset, floor * (1.0 + uni(0.1, 2.0)), 1);
            worst = std::max(worst, std::abs(sd.pre.B * sd.pre.C / sd.pre.F - 1.0));
        }
        check("identity-chain-AD-BC-F", worst <= 1e-10, worst);
    }

    // 3. oracle equivalence at the configured cutoff / steps
    {
        double worst = 0.0;
        std::string note;
        bool ok = true;
        try {
            for (int i = 0; i < o.oracle_n1 + o.oracle_n2; ++i) {
                const int N = i < o.oracle_n1 ? 1 : 2;
                const int gap = 1, kappa = 1;
                const double mu = uni(0.8, 1.2);
                const double W0 = gap * kappa / (2.0 * mu * mu);
                const auto preset =
                    ConditionPreset::condition1(kappa, uni(0.9, 1.8), W0, mu);
                const int n1 = unii(0, 3);
                const auto sc = cond1_fock(preset, n1, n1 + gap, N);
                const auto q = assemble_qfim(sc.state, sc.coeffs);
                const auto fd =
                    oracle::qfim_fd(oracle::TruncatedBasis(o.cutoff, N), sc.state,
                                    preset.profile(), preset.omega0, preset.Omega0, preset.mu,
                                    1e-5, 1e-5, o.steps);
                const double scale =
                    std::max(std::abs(q.f_omega_omega), std::abs(q.f_Omega_Omega));
                worst = std::max(worst,
                                 std::abs(fd.f_omega_omega - q.f_omega_omega) / scale);
                worst = std::max(worst,
                                 std::abs(fd.f_Omega_Omega - q.f_Omega_Omega) / scale);
            }
        } catch (const Error& e) {
            ok = false;
            note = e.code() + ": " + e.what();
        }
        check("oracle-fd-qfim", ok && worst <= 1e-3, worst, note);
    }

    // 4. saturability on the two condition families
    {
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            const auto c1 = coeffs_condition1(ConditionPreset::condition1(
                unii(1, 4), uni(0.5, 2.5), uni(0.05, 1.5), uni(0.7, 1.3)));
            InputEnsemble e1(MotionalState::coherent({uni(-1.0, 1.0), uni(-1.0, 1.0)}),
                             MotionalState::fock(unii(0, 4)), 1);
            worst = std::max(worst,
                             std::abs(commutator_expectation(c1, 0.0, ghz_a_mean(e1))));
            const auto p2 = ConditionPreset::condition2(unii(0, 3), uni(0.5, 2.5),
                                                        uni(0.05, 1.5), uni(0.7, 1.3));
            const auto c2 = coeffs_condition2(p2);
            const double Y = 2.0 * p2.mu * p2.Omega0 / std::sqrt(p2.omega0);
            const double y1 = uni(-1.0, 2.0);
            InputEnsemble e2(MotionalState::coherent({uni(-1.0, 1.0), y1}),
                             MotionalState::coherent({uni(-1.0, 1.0), Y - y1}), 1);
            worst = std::max(worst,
                             std::abs(commutator_expectation(c2, 0.0, ghz_a_mean(e2))));
        }
        check("saturability-commutator", worst < 1e-9, worst);
    }

    out << (failures == 0 ? "all checks passed\n"
                          : std::to_string(failures) + " check(s) failed\n");
    write_text(out_path, out.str());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiparameter estimation bounds for a Sagnac interferometer"};
    app.set_config("--config", "", "flat key=value config file; sections per subcommand");
    app.require_subcommand(1);
    app.fallthrough();  // --format/--out may follow the subcommand name

    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "output path (default stdout)");

    BoundsOptions bo;
    auto* bounds = app.add_subcommand("bounds", "precision bounds for one scenario");
    bounds->add_option("--family", bo.family, "scenario family")
        ->check(CLI::IsMember({"cond1-fock", "cond1-coherent", "cond2-bzero", "cond2-dzero"}))
        ->capture_default_str();
    bounds->add_option("--mu", bo.mu)->capture_default_str();
    bounds->add_option("--omega0", bo.omega0)->capture_default_str();
    bounds->add_option("--Omega0", bo.Omega0)->capture_default_str();
    bounds->add_option("--kappa", bo.kappa)->capture_default_str();
    bounds->add_option("--N", bo.N)->capture_default_str();
    bounds->add_option("--n1", bo.n1)->capture_default_str();
    bounds->add_option("--n2", bo.n2)->capture_default_str();
    bounds->add_option("--budget", bo.budget)->capture_default_str();
    bounds->add_option("--x1", bo.x1)->capture_default_str();
    bounds->add_option("--y1", bo.y1)->capture_default_str();
    bounds->add_option("--nu", bo.nu, "experiment repetitions (1/nu multiplier)")
        ->capture_default_str();
    bounds->add_flag("--allow-nearest", bo.allow_nearest,
                     "accept a non-matching Fock gap and report the B residual");

    Fig2Options f2;
    auto* fig2 = app.add_subcommand("fig2", "Fock-vs-coherent log ratio grid");
    fig2->add_option("--Omega0", f2.Omega0)->required();
    fig2->add_option("--budget", f2.budget)->capture_default_str();
    fig2->add_option("--mu", f2.mu)->capture_default_str();
    fig2->add_option("--omega0-min", f2.omega0_min)->capture_default_str();
    fig2->add_option("--omega0-max", f2.omega0_max)->capture_default_str();
    fig2->add_option("--omega0-points", f2.omega0_points)->capture_default_str();
    fig2->add_option("--kappa-min", f2.kappa_min)->capture_default_str();
    fig2->add_option("--kappa-max", f2.kappa_max)->capture_default_str();

    Fig3Options f3;
    auto* fig3 = app.add_subcommand("fig3", "Condition II / Condition I ratio curves");
    fig3->add_option("--sweep", f3.sweep)->check(CLI::IsMember({"Omega0", "omega0"}))
        ->capture_default_str();
    fig3->add_option("--fixed", f3.fixed, "value of the non-swept parameter")
        ->capture_default_str();
    fig3->add_option("--min", f3.min)->capture_default_str();
    fig3->add_option("--max", f3.max)->capture_default_str();
    fig3->add_option("--points", f3.points)->capture_default_str();
    fig3->add_option("--x1", f3.x1s, "list of x1 values")->capture_default_str();
    fig3->add_option("--y1", f3.y1)->capture_default_str();
    fig3->add_option("--kappa", f3.kappa)->capture_default_str();
    fig3->add_option("--mu", f3.mu)->capture_default_str();

    ValidateOptions vo;
    auto* validate = app.add_subcommand("validate", "oracle-vs-closed-form suite");
    validate->add_option("--cutoff", vo.cutoff)->capture_default_str();
    validate->add_option("--steps", vo.steps)->capture_default_str();
    validate->add_option("--seed", vo.seed)->capture_default_str();
    validate->add_option("--scenarios", vo.scenarios)->capture_default_str();
    validate->add_option("--oracle-n1", vo.oracle_n1)->capture_default_str();
    validate->add_option("--oracle-n2", vo.oracle_n2)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) return cmd_bounds(bo, format, out_path);
        if (fig2->parsed()) return cmd_fig2(f2, format, out_path);
        if (fig3->parsed()) return cmd_fig3(f3, format, out_path);
        if (validate->parsed()) return cmd_validate(vo, out_path);
    } catch (const Error& e) {
        const json record{{"error", e.code()}, {"message", e.what()}};
        std::cout << record.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        const json record{{"error", "Unexpected"}, {"message", e.what()}};
        std::cout << record.dump() << "\n";
        return 3;
    }
    return 0;
}
