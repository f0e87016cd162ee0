#include "sagnac/time_integrals.hpp"

#include <cmath>
#include <vector>

namespace sagnac {

namespace {

constexpr cplx kI{0.0, 1.0};

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric)
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
cplx gl16(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGlNode[i];
        acc += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return half * acc;
}

template <typename F>
cplx composite(const F& f, double a, double b, int panels, QuadratureConfig::Scheme scheme) {
    cplx acc{0.0, 0.0};
    if (scheme == QuadratureConfig::Scheme::GaussLegendre) {
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) acc += gl16(f, a + k * h, a + (k + 1) * h);
    } else {
        const int n = 2 * panels;  // Simpson subintervals, always even
        const double hs = (b - a) / n;
        acc = f(a) + f(b);
        for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * hs);
        acc *= hs / 3.0;
    }
    return acc;
}

// Integrate a smooth complex integrand on [a, b], doubling panels to cfg.abs_tol.
template <typename F>
cplx integrate_smooth(const F& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    int panels = cfg.panels;
    cplx prev = composite(f, a, b, panels, cfg.scheme);
    constexpr int kMaxPanels = 1 << 18;
    while (panels <= kMaxPanels) {
        panels *= 2;
        const cplx cur = composite(f, a, b, panels, cfg.scheme);
        if (std::abs(cur - prev) < cfg.abs_tol) return cur;
        prev = cur;
    }
    throw Error("QuadratureNonConvergence",
                "quadrature did not reach abs_tol within the panel-doubling cap");
}

// Piecewise integration aligned to the profile's knots, so each segment
// integrand stays smooth.
template <typename F>
cplx integrate_profile(const SweepProfile& profile, const F& integrand,
                       const QuadratureConfig& cfg) {
    if (profile.is_constant()) return integrate_smooth(integrand, 0.0, profile.duration(), cfg);
    cplx acc{0.0, 0.0};
    const auto& ks = profile.knots();
    for (std::size_t i = 1; i < ks.size(); ++i)
        acc += integrate_smooth(integrand, ks[i - 1].t, ks[i].t, cfg);
    return acc;
}

double spin_check(int spin) {
    if (spin != 1 && spin != -1) throw Error("InvalidArgument", "spin must be +1 or -1");
    return static_cast<double>(spin);
}

// (x - sin x)/x^3 with the small-x series continuation
double x_minus_sin_over_x3(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return (1.0 / 6.0) - x2 / 120.0 + x2 * x2 / 5040.0;
    }
    return (x - std::sin(x)) / (x * x * x);
}

}  // namespace

cplx eval_q(double omega, double tau) {
    if (!(tau > 0)) throw Error("InvalidArgument", "eval_q: tau must be positive");
    const double x = omega * tau;
    if (std::abs(x) < 1e-4) {
        // q = tau * sum_k (i x)^k / (k+1)!
        cplx term{1.0, 0.0}, acc{1.0, 0.0};
        for (int k = 1; k <= 8; ++k) {
            term *= kI * x / static_cast<double>(k);
            acc += term / static_cast<double>(k + 1);
        }
        return tau * acc;
    }
    return (std::exp(kI * x) - 1.0) / (kI * omega);
}

cplx eval_dq_domega(double omega, double tau) {
    if (!(tau > 0)) throw Error("InvalidArgument", "eval_dq_domega: tau must be positive");
    const double x = omega * tau;
    if (std::abs(x) < 1e-3) {
        // dq/domega = i tau^2 sum_{k>=1} k (i x)^{k-1} / (k+1)!
        cplx pw{1.0, 0.0}, acc{0.0, 0.0};
        double fact = 2.0;  // (k+1)! running
        for (int k = 1; k <= 9; ++k) {
            acc += static_cast<double>(k) * pw / fact;
            pw *= kI * x;
            fact *= static_cast<double>(k + 2);
        }
        return kI * tau * tau * acc;
    }
    const cplx e = std::exp(kI * x);
    return tau * e / omega + kI * (e - 1.0) / (omega * omega);
}

cplx eval_p(const SweepProfile& profile, double omega, const QuadratureConfig& cfg) {
    if (profile.is_constant()) return profile.constant_rate() * eval_q(omega, profile.duration());
    return integrate_profile(
        profile, [&](double t) { return profile.rate(t) * std::exp(kI * omega * t); }, cfg);
}

cplx eval_dp_domega(const SweepProfile& profile, double omega, const QuadratureConfig& cfg) {
    if (profile.is_constant())
        return profile.constant_rate() * eval_dq_domega(omega, profile.duration());
    return integrate_profile(
        profile, [&](double t) { return profile.rate(t) * kI * t * std::exp(kI * omega * t); },
        cfg);
}

cplx eval_eta(const SweepProfile& profile, double omega, double Omega, int spin, double mu,
              const QuadratureConfig& cfg) {
    if (!(omega > 0)) throw Error("InvalidArgument", "eval_eta: omega must be positive");
    const double s = spin_check(spin);
    return -mu * std::sqrt(omega) *
           (Omega * eval_q(omega, profile.duration()) + s * eval_p(profile, omega, cfg));
}

double eval_Phi(const SweepProfile& profile, double omega, double Omega, int spin, double mu,
                const QuadratureConfig& cfg) {
    if (!(omega > 0)) throw Error("InvalidArgument", "eval_Phi: omega must be positive");
    const double s = spin_check(spin);
    const double tau = profile.duration();

    if (profile.is_constant()) {
        const double c = mu * std::sqrt(omega) * (Omega + s * profile.constant_rate());
        const double x = omega * tau;
        // tau/omega - sin(omega tau)/omega^2 = (x - sin x)/omega^2 = omega tau^3 (x - sin x)/x^3
        return c * c * omega * tau * tau * tau * x_minus_sin_over_x3(x);
    }

    // Single-pass nested quadrature: Phi = int f(t1) [sin(w t1) C(t1) - cos(w t1) S(t1)] dt1
    // with C(t) = int_0^t f cos(w u) du, S(t) = int_0^t f sin(w u) du accumulated
    // on the same panel grid.
    cfg.validate();
    const auto f = [&](double t) { return mu * std::sqrt(omega) * (Omega + s * profile.rate(t)); };
    const auto fcos = [&](double t) -> cplx { return f(t) * std::cos(omega * t); };
    const auto fsin = [&](double t) -> cplx { return f(t) * std::sin(omega * t); };

    const auto& ks = profile.knots();
    const auto pass = [&](int panels_per_seg) -> double {
        // panel edges aligned to knots
        std::vector<double> edges;
        edges.push_back(0.0);
        for (std::size_t i = 1; i < ks.size(); ++i) {
            const double a = ks[i - 1].t, b = ks[i].t;
            for (int k = 1; k <= panels_per_seg; ++k)
                edges.push_back(a + (b - a) * k / panels_per_seg);
        }
        // cumulative antiderivatives at panel edges
        std::vector<double> Ccum(edges.size(), 0.0), Scum(edges.size(), 0.0);
        for (std::size_t i = 1; i < edges.size(); ++i) {
            Ccum[i] = Ccum[i - 1] + gl16(fcos, edges[i - 1], edges[i]).real();
            Scum[i] = Scum[i - 1] + gl16(fsin, edges[i - 1], edges[i]).real();
        }
        double acc = 0.0;
        for (std::size_t i = 1; i < edges.size(); ++i) {
            const double a = edges[i - 1], b = edges[i];
            const auto outer = [&](double t1) -> cplx {
                const double C = Ccum[i - 1] + gl16(fcos, a, t1).real();
                const double S = Scum[i - 1] + gl16(fsin, a, t1).real();
                return f(t1) * (std::sin(omega * t1) * C - std::cos(omega * t1) * S);
            };
            acc += gl16(outer, a, b).real();
        }
        return acc;
    };

    int m = cfg.panels;
    double prev = pass(m);
    constexpr int kMaxPanels = 1 << 12;
    while (m <= kMaxPanels) {
        m *= 2;
        const double cur = pass(m);
        if (std::abs(cur - prev) < cfg.abs_tol) return cur;
        prev = cur;
    }
    throw Error("QuadratureNonConvergence", "eval_Phi: nested quadrature did not converge");
}

double eval_lambda(const SweepProfile& profile, double omega, double Omega, double mu,
                   const QuadratureConfig& cfg) {
    if (!(omega > 0)) throw Error("InvalidArgument", "eval_lambda: omega must be positive");
    const double tau = profile.duration();
    if (Omega == 0.0) return 0.0;

    if (profile.is_constant()) {
        // first integral vanishes for constant omega_p at any tau;
        // second reduces to 2 omega_p (sin(omega tau)/omega^2 - tau/omega)
        const double x = omega * tau;
        const double second =
            -2.0 * profile.constant_rate() * omega * tau * tau * tau * x_minus_sin_over_x3(x);
        return mu * mu * Omega * second;
    }

    const auto i1 = [&](double t) -> cplx {
        return profile.rate(t) * (std::cos(omega * (t - tau)) - std::cos(omega * t));
    };
    const auto i2 = [&](double t) -> cplx {
        return profile.rate(t) * (t - tau) * std::sin(omega * t);
    };
    const double first = integrate_profile(profile, i1, cfg).real() / omega;
    const double second = 2.0 * integrate_profile(profile, i2, cfg).real();
    return mu * mu * Omega * (first + second);
}

double eval_wp_cos(const SweepProfile& profile, double omega, const QuadratureConfig& cfg) {
    const double tau = profile.duration();
    if (profile.is_constant()) {
        const double x = omega * tau;
        if (std::abs(x) < 1e-4)
            return profile.constant_rate() * tau * (1.0 - x * x / 6.0);
        return profile.constant_rate() * std::sin(x) / omega;
    }
    return integrate_profile(
               profile, [&](double t) -> cplx { return profile.rate(t) * std::cos(omega * (tau - t)); },
               cfg)
        .real();
}

}  // namespace sagnac
