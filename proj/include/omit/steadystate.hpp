#pragma once

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

#include "model.hpp"

namespace omit {

enum class Regime { Plain, DoubleControlOPA, NonMarkovian };

inline const char* to_string(Regime r)
{
    switch (r) {
    case Regime::Plain: return "plain";
    case Regime::DoubleControlOPA: return "double-control";
    case Regime::NonMarkovian: return "non-markovian";
    }
    return "?";
}

inline Regime regime_of(const PhysParams& p)
{
    if (!p.bath.markovian) {
        if (p.pump_mode == PumpMode::DoubleControl)
            throw invalid_regime("non-Markovian bath is only defined for the sum-frequency pump");
        return Regime::NonMarkovian;
    }
    return p.pump_mode == PumpMode::SumFreq ? Regime::Plain : Regime::DoubleControlOPA;
}

struct SteadyState {
    cd a_s{};             // intracavity amplitude (sqrt photons)
    double x_s = 0;       // mean displacement (m)
    double Delta_eff = 0; // Delta_0 + Delta_s - xi x_s (rad/s)
    Regime regime = Regime::Plain;
    double residual = 0;  // |Delta_out - Delta_in| / omega_m
    int iterations = 0;

    double photons() const { return std::norm(a_s); }
};

struct SteadyOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    bool check_unique = true;
};

namespace detail {

// Intracavity amplitude at a trial detuning, for each regime.
class SteadyAmplitude {
public:
    SteadyAmplitude(const Model& M, Regime r) : M_(M), r_(r)
    {
        const auto& d = M.der;
        const auto& p = M.phys;
        s_ = std::sqrt(d.kappa_ex) * d.eps_l;
        if (r == Regime::NonMarkovian && p.variants.memory == MemoryForm::Consistent) {
            const cd memory = d.kappa_ex * p.bath.lambda1 / (2.0 * cd(p.bath.lambda1, p.bath.mu));
            loss_ = d.kappa / 2.0 + memory;
        } else {
            loss_ = d.kappa;
        }
    }

    cd operator()(double D) const
    {
        const auto& p = M_.phys;
        if (r_ != Regime::DoubleControlOPA) return s_ / (loss_ + cd(0.0, D));
        const double k = M_.der.kappa;
        const double den = k * k + D * D - 4.0 * p.G * p.G;
        if (den <= 0.0)
            throw above_threshold("4G^2 >= kappa^2 + Delta^2 at Delta = " + std::to_string(D));
        const cd pump = 2.0 * p.G * std::polar(1.0, p.theta);
        const cd num = cd(k, -D) + pump;
        if (p.variants.opa_steady == OpaSteady::Printed) return num / den;
        return s_ * num / den;
    }

    // Largest |a|^2 over all detunings (infinite when a threshold band exists).
    double photon_bound() const
    {
        const auto& p = M_.phys;
        if (r_ != Regime::DoubleControlOPA) return s_ * s_ / (loss_.real() * loss_.real());
        const double k = M_.der.kappa;
        if (2.0 * p.G >= k) return std::numeric_limits<double>::infinity();
        double best = 0.0;
        const int N = 4001;
        for (int i = 0; i < N; ++i) {
            const double D = -20.0 * k + 40.0 * k * i / (N - 1);
            best = std::max(best, std::norm((*this)(D)));
        }
        return 1.05 * best;
    }

    // Half-width of the detuning band where the parametric gain exceeds threshold.
    double threshold_band() const
    {
        const auto& p = M_.phys;
        const double k = M_.der.kappa;
        if (r_ != Regime::DoubleControlOPA || 2.0 * p.G < k) return -1.0;
        return std::sqrt(4.0 * p.G * p.G - k * k);
    }

private:
    const Model& M_;
    Regime r_;
    double s_ = 0;
    cd loss_;
};

} // namespace detail

inline SteadyState solve_steady(const Model& M, Regime regime, const SteadyOptions& opt = {})
{
    const auto& p = M.phys;
    const auto& d = M.der;
    const detail::SteadyAmplitude amp(M, regime);
    const double hi = M.bare_detuning();
    const double c = constants::hbar * d.xi * d.xi / (p.m * p.omega_m * p.omega_m);
    auto F = [&](double D) { return hi - c * std::norm(amp(D)); };
    auto resid = [&](double D) { return F(D) - D; };

    auto finish = [&](double D, int iters) {
        SteadyState s;
        s.regime = regime;
        s.a_s = amp(D);
        s.x_s = constants::hbar * d.xi * s.photons() / (p.m * p.omega_m * p.omega_m) + d.x_rot;
        s.Delta_eff = F(D);
        s.residual = std::abs(s.Delta_eff - D) / p.omega_m;
        s.iterations = iters;
        return s;
    };

    // Damped fixed-point iteration; the damping halves whenever the update stops shrinking.
    double D = hi;
    double beta = 1.0;
    double last = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
    for (; iters < opt.max_iter; ++iters) {
        const double r = resid(D);
        if (std::abs(r) / p.omega_m <= opt.tol) {
            converged = true;
            break;
        }
        if (std::abs(r) >= last) beta *= 0.5;
        if (beta < 1e-9) break;
        last = std::abs(r);
        D += beta * r;
    }

    if (!converged && !opt.check_unique) throw no_convergence(std::abs(resid(D)) / p.omega_m, iters);
    if (c == 0.0 || d.eps_l == 0.0) return finish(D, iters);

    // Scan the interval that must contain every root for sign changes of the residual.
    double lo, top = hi;
    const double band = amp.threshold_band();
    if (band < 0.0) {
        lo = hi - c * amp.photon_bound();
    } else if (hi > band) {
        lo = band * (1.0 + 1e-6);
    } else if (hi < -band) {
        lo = hi - 1.5 * c * std::norm(amp(hi)) - d.kappa;
    } else {
        throw above_threshold("bare detuning lies inside the parametric instability band");
    }
    if (!(lo < top)) return finish(D, iters);
    const double dx = d.kappa / 64.0;
    const auto N = static_cast<std::int64_t>(std::clamp(std::ceil((top - lo) / dx), 256.0, 200000.0));
    std::vector<std::pair<double, double>> brackets;
    double x0 = lo, r0 = resid(lo);
    for (std::int64_t i = 1; i <= N; ++i) {
        const double x1 = lo + (top - lo) * static_cast<double>(i) / static_cast<double>(N);
        const double r1 = resid(x1);
        if (r0 == 0.0 || (r0 > 0.0) != (r1 > 0.0)) brackets.emplace_back(x0, x1);
        x0 = x1;
        r0 = r1;
    }
    if (!brackets.empty() && resid(top) == 0.0 && brackets.back().second != top) brackets.emplace_back(top, top);

    auto refine = [&](std::pair<double, double> b, int& count) {
        if (b.first == b.second) return b.first;
        std::uintmax_t it = 200;
        auto tol = [&](double a, double bb) { return std::abs(a - bb) <= 1e-3 * opt.tol * p.omega_m; };
        auto r = boost::math::tools::toms748_solve(resid, b.first, b.second, tol, it);
        count += static_cast<int>(it);
        return 0.5 * (r.first + r.second);
    };

    if (brackets.size() > 1) {
        std::vector<double> roots;
        int dummy = 0;
        for (const auto& b : brackets) roots.push_back(refine(b, dummy));
        throw multiple_roots(roots);
    }
    if (converged) return finish(D, iters);
    if (brackets.empty()) throw no_convergence(std::abs(resid(D)) / p.omega_m, iters);
    D = refine(brackets.front(), iters);
    SteadyState s = finish(D, iters);
    if (s.residual > opt.tol) throw no_convergence(s.residual, iters);
    return s;
}

inline SteadyState solve_steady_plain(const Model& M, const SteadyOptions& opt = {})
{
    if (regime_of(M.phys) != Regime::Plain) throw invalid_regime("plain steady state needs a Markovian sum-frequency setup");
    return solve_steady(M, Regime::Plain, opt);
}

inline SteadyState solve_steady_2wl(const Model& M, const SteadyOptions& opt = {})
{
    if (regime_of(M.phys) != Regime::DoubleControlOPA) throw invalid_regime("2wl steady state needs the double-control pump");
    return solve_steady(M, Regime::DoubleControlOPA, opt);
}

inline SteadyState solve_steady_nonmarkov(const Model& M, const SteadyOptions& opt = {})
{
    if (regime_of(M.phys) != Regime::NonMarkovian) throw invalid_regime("non-Markovian steady state needs a non-Markovian bath");
    return solve_steady(M, Regime::NonMarkovian, opt);
}

inline SteadyState solve_steady(const Model& M, const SteadyOptions& opt = {})
{
    return solve_steady(M, regime_of(M.phys), opt);
}

} // namespace omit
