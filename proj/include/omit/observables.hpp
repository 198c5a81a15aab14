#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sidebands.hpp"

namespace omit {

struct Efficiencies {
    double eta1 = 0;
    std::optional<double> eta2; // not defined for the non-Markovian bath
    Regime regime = Regime::Plain;
};

struct OutputSpectrum {
    cd C1;    // control, omega_l
    cd C2;    // probe / anti-Stokes, omega_p
    cd stokes; // 2 omega_l - omega_p
    cd up2;   // 2 omega_p - omega_l
    cd low2;  // 3 omega_l - 2 omega_p
};

struct GroupDelay {
    double tau1 = 0;        // s
    double step = 0;        // rad/s
    double phase_slope = 0; // d arg / d Delta_p, equal to 2 tau1
    double tau1_coarse = 0; // same stencil at twice the step
    double richardson = 0;  // |tau1 - tau1_coarse| / |tau1|
};

// Complex transmission factor of the second-order upper sideband, -sqrt(kex) A2+ / eps_p,
// including the memory filter of the non-Markovian output.
inline cd upper_sideband_ratio(const SidebandSolution& sol, const Model& M)
{
    const double eps = M.probe_amplitude(sol.Delta_p);
    if (!(eps > 0.0)) throw undefined_efficiency();
    cd out = -std::sqrt(M.der.kappa_ex) * sol.A2_plus;
    if (sol.regime == Regime::NonMarkovian) {
        const auto& b = M.phys.bath;
        out *= b.lambda1 / cd(b.lambda1, b.mu - 2.0 * sol.Delta_p);
    }
    return out / eps;
}

inline Efficiencies efficiencies(const SidebandSolution& sol, const Model& M)
{
    Efficiencies e;
    e.regime = sol.regime;
    e.eta1 = std::abs(upper_sideband_ratio(sol, M));
    if (sol.regime != Regime::NonMarkovian)
        e.eta2 = std::abs(std::sqrt(M.der.kappa_ex) * sol.A2_minus) / M.probe_amplitude(sol.Delta_p);
    return e;
}

inline OutputSpectrum output_spectrum(const SidebandSolution& sol, const SteadyState& s, const Model& M)
{
    if (sol.regime == Regime::NonMarkovian)
        throw invalid_regime("output spectrum is defined for Markovian regimes only");
    const double r = std::sqrt(M.der.kappa_ex);
    OutputSpectrum o;
    o.C1 = M.der.eps_l - r * s.a_s;
    o.C2 = M.probe_amplitude(sol.Delta_p) - r * sol.A1_plus;
    o.stokes = -r * sol.A1_minus;
    o.up2 = -r * sol.A2_plus;
    o.low2 = -r * sol.A2_minus;
    return o;
}

inline double omit_linewidth(const SteadyState& s, const Model& M)
{
    const double g = M.der.xi * M.der.x_zpf;
    return M.phys.Gamma_m + g * g * s.photons() / M.der.kappa;
}

struct DelayOptions {
    double step_wm = 1e-6;     // initial step in units of omega_m
    double floor_wm = 1e-12;   // smallest step before giving up
    double max_jump = constants::pi / 2; // largest accepted phase change between stencil points
    std::optional<double> at;  // evaluation detuning, omega_m when unset
};

inline GroupDelay group_delay(const SteadyState& s, const Model& M, const DelayOptions& opt = {})
{
    const double w = M.phys.omega_m;
    const double x0 = opt.at.value_or(w);
    auto phase = [&](double Dp) { return std::arg(upper_sideband_ratio(solve_sidebands(s, Dp, M), M)); };
    auto wrap = [](double a) { return std::remainder(a, 2.0 * constants::pi); };

    const double p0 = phase(x0);
    auto slope = [&](double h, double& worst) {
        const double d1 = wrap(p0 - phase(x0 - h));
        const double d2 = wrap(phase(x0 + h) - p0);
        worst = std::max(std::abs(d1), std::abs(d2));
        return (d1 + d2) / (2.0 * h);
    };

    double h = opt.step_wm * w;
    for (;;) {
        double j1 = 0, j2 = 0;
        const double s1 = slope(h, j1);
        const double s2 = slope(2.0 * h, j2);
        if (j1 <= opt.max_jump && j2 <= 2.0 * opt.max_jump) {
            GroupDelay g;
            g.step = h;
            g.phase_slope = s1;
            g.tau1 = s1 / 2.0;
            g.tau1_coarse = s2 / 2.0;
            g.richardson = g.tau1 != 0.0 ? std::abs(g.tau1 - g.tau1_coarse) / std::abs(g.tau1) : 0.0;
            return g;
        }
        if (h / 2.0 < opt.floor_wm * w) throw phase_wrap(std::max(j1, j2));
        h /= 2.0;
    }
}

inline GroupDelay group_delay(const Model& M, const DelayOptions& opt = {})
{
    return group_delay(solve_steady(M), M, opt);
}

// Full width at half depth of |C2/eps_p|^2 around the transparency peak nearest omega_m.
// grid holds Delta_p values in rad/s; quadratic interpolation places the crossings.
struct WindowWidth {
    double fwhm = 0;
    double peak_at = 0;
    double peak = 0;
    double floor = 0;
};

inline WindowWidth transparency_window(const SteadyState& s, const Model& M, const std::vector<double>& grid)
{
    std::vector<double> T(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto sol = solve_sidebands(s, grid[i], M);
        T[i] = std::norm(output_spectrum(sol, s, M).C2 / M.probe_amplitude(grid[i]));
    }
    const double w = M.phys.omega_m;
    std::size_t ip = 0;
    double best = -1.0;
    for (std::size_t i = 1; i + 1 < T.size(); ++i) {
        if (T[i] >= T[i - 1] && T[i] >= T[i + 1]) {
            if (best < 0.0 || std::abs(grid[i] - w) < std::abs(grid[ip] - w)) {
                ip = i;
                best = T[i];
            }
        }
    }
    if (best < 0.0) throw error("NoWindow", "no transparency peak on the grid");
    WindowWidth r;
    r.peak_at = grid[ip];
    r.peak = T[ip];
    r.floor = *std::min_element(T.begin(), T.end());
    const double half = 0.5 * (r.peak + r.floor);

    // Root of the quadratic through three samples bracketing the half level.
    auto cross = [&](std::size_t i, std::size_t j) {
        std::size_t k = (j > i) ? (j + 1 < T.size() ? j + 1 : i - 1) : (i + 1 < T.size() ? i + 1 : j - 1);
        if (k == i || k == j) return grid[i] + (half - T[i]) * (grid[j] - grid[i]) / (T[j] - T[i]);
        const double x[3] = {grid[i], grid[j], grid[k]}, y[3] = {T[i], T[j], T[k]};
        auto L = [&](double t) {
            double v = 0.0;
            for (int a = 0; a < 3; ++a) {
                double l = 1.0;
                for (int b = 0; b < 3; ++b)
                    if (a != b) l *= (t - x[b]) / (x[a] - x[b]);
                v += y[a] * l;
            }
            return v - half;
        };
        double lo = grid[i], hi = grid[j];
        if (lo > hi) std::swap(lo, hi);
        double flo = L(lo);
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi), fm = L(mid);
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::size_t l = ip, rr = ip;
    while (l > 0 && T[l] > half) --l;
    while (rr + 1 < T.size() && T[rr] > half) ++rr;
    if (T[l] > half || T[rr] > half) throw error("NoWindow", "window wider than the grid");
    r.fwhm = cross(rr - 1, rr) - cross(l + 1, l);
    return r;
}

} // namespace omit
