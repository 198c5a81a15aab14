#pragma once

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <vector>

#include "observables.hpp"

namespace omit::oracle {

// Direct integration of the mean-field equations of motion
//   da/dt = -(kappa + i(Delta_0 + Delta_s - xi x)) a + sqrt(kex)(eps_l + eps_p e^{-i Dp t}) + 2G e^{i theta} a* E(t)
//   d2x/dt2 = -Gamma_m dx/dt - omega_m^2 (x - x_v) + hbar xi |a|^2 / m
// with E(t) = e^{-i Dp t} for the sum-frequency pump and 1 for the double-control pump.
// Internally a = A u, x = x_v + Y z / xi and tau = omega_m t, with A the steady amplitude
// and Y = hbar xi^2 A^2 / (m omega_m^2), so every state component is of order one.

using State = std::array<double, 4>; // Re u, Im u, z, dz/dtau

struct Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    double settle = 50.0;          // settling time in units of 1/Gamma_m
    int periods = 32;              // beat periods per recorded window
    int samples = 128;             // samples per beat period
    double drift_tol = 1e-6;       // window-to-window coefficient drift
    int max_windows = 400;
    double blowup = 1e3;           // |a|^2 bound relative to the steady photon number
    double residual_flag = 1e-4;   // residual power fraction that flags a non-perturbative orbit
};

struct Trajectory {
    double Delta_p = 0;
    std::vector<double> t; // s
    std::vector<cd> a;
    std::vector<double> x; // m
};

struct HarmonicExtract {
    std::array<cd, 5> a{};  // coefficients of e^{-i k Dp t}, k = -2..2
    std::array<cd, 5> x{};
    double residual = 0;    // power outside the five lines / total power
    bool flagged = false;
    double drift = 0;
    int windows = 0;
    double t_end = 0;

    cd at(int k) const { return a[static_cast<std::size_t>(k + 2)]; }
    cd x_at(int k) const { return x[static_cast<std::size_t>(k + 2)]; }
};

class Integrator {
public:
    Integrator(const Model& M, double Delta_p, const Options& opt = {})
        : M_(M), opt_(opt), Dp_(Delta_p)
    {
        if (!M.phys.bath.markovian) throw invalid_regime("the oracle integrates Markovian regimes only");
        const auto& p = M.phys;
        const auto& d = M.der;
        double n_ref = 0.0;
        try {
            n_ref = solve_steady(M).photons();
        } catch (const above_threshold&) {
        } catch (const multiple_roots&) {
        }
        const double drive = std::sqrt(d.kappa_ex) * (d.eps_l + M.probe_amplitude(Delta_p)) / d.kappa;
        if (!(n_ref > 0.0)) n_ref = drive * drive;
        A_ = n_ref > 0.0 ? std::sqrt(n_ref) : 1.0;
        n_ref_ = n_ref > 0.0 ? n_ref : 1.0;
        Y_ = constants::hbar * d.xi * d.xi * A_ * A_ / (p.m * p.omega_m * p.omega_m);
        if (!(Y_ > 0.0)) Y_ = 1.0;
        w_ = p.omega_m;
        k_ = d.kappa / w_;
        hi_ = M.bare_detuning() / w_;
        y_ = Y_ / w_;
        drv_ = cd(std::sqrt(d.kappa_ex) * d.eps_l / (A_ * w_), 0.0);
        prb_ = std::sqrt(d.kappa_ex) * M.probe_amplitude(Delta_p) / (A_ * w_);
        g_ = 2.0 * p.G / w_ * std::polar(1.0, p.theta);
        sum_ = p.pump_mode == PumpMode::SumFreq;
        gam_ = p.Gamma_m / w_;
        nu_ = Delta_p / w_;
        x_.fill(0.0);
    }

    void operator()(const State& s, State& ds, double tau) const
    {
        const cd u(s[0], s[1]);
        const cd e = std::polar(1.0, -nu_ * tau);
        const cd opa = g_ * std::conj(u) * (sum_ ? e : cd(1.0));
        const cd du = -cd(k_, hi_ - y_ * s[2]) * u + drv_ + prb_ * e + opa;
        ds[0] = du.real();
        ds[1] = du.imag();
        ds[2] = s[3];
        ds[3] = -gam_ * s[3] - s[2] + std::norm(u);
    }

    double time() const { return tau_ / w_; }
    double photons() const { return A_ * A_ * (x_[0] * x_[0] + x_[1] * x_[1]); }
    cd amplitude() const { return A_ * cd(x_[0], x_[1]); }
    double displacement() const { return M_.der.x_rot + Y_ * x_[2] / M_.der.xi; }

    // Adaptive integration up to time t (s).
    void advance_to(double t)
    {
        namespace ode = boost::numeric::odeint;
        auto stepper = ode::make_controlled(opt_.atol, opt_.rtol, ode::runge_kutta_fehlberg78<State>());
        const double t1 = t * w_;
        while (tau_ < t1) {
            const double to = std::min(t1, tau_ + 64.0);
            double dt = std::min(dt_, to - tau_);
            int fails = 0;
            while (tau_ < to) {
                if (to - tau_ < dt) dt = to - tau_;
                const double before = tau_;
                auto res = stepper.try_step(std::cref(*this), x_, tau_, dt);
                if (res == ode::success) {
                    fails = 0;
                    check(before);
                    if (tau_ < to) dt_ = dt;
                } else if (++fails > 200 || dt < 1e-14) {
                    throw step_underflow(tau_ / w_);
                }
            }
        }
    }

    // Fixed-step recording aligned to the sample grid; steps are subdivided until the
    // embedded error estimate meets the tolerance.
    Trajectory record(int periods, int samples)
    {
        namespace ode = boost::numeric::odeint;
        ode::runge_kutta_fehlberg78<State> rk;
        const double T = 2.0 * constants::pi / nu_;
        const double h = T / samples;
        const int total = periods * samples;
        for (;;) {
            State x = x_;
            double tau = tau_;
            Trajectory tr;
            tr.Delta_p = Dp_;
            tr.t.reserve(total);
            tr.a.reserve(total);
            tr.x.reserve(total);
            bool ok = true;
            const double hs = h / sub_;
            State err;
            for (int j = 0; j < total && ok; ++j) {
                tr.t.push_back(tau / w_);
                tr.a.push_back(A_ * cd(x[0], x[1]));
                tr.x.push_back(M_.der.x_rot + Y_ * x[2] / M_.der.xi);
                const double t0 = tau_ + j * h;
                for (int q = 0; q < sub_; ++q) {
                    rk.do_step(std::cref(*this), x, t0 + q * hs, hs, err);
                    for (int c = 0; c < 4; ++c) {
                        const double scale = opt_.atol + opt_.rtol * std::abs(x[c]);
                        if (std::abs(err[c]) > scale) ok = false;
                    }
                }
                tau = tau_ + (j + 1) * h;
            }
            if (!ok) {
                if (sub_ >= 1024) throw step_underflow(tau_ / w_);
                sub_ *= 2;
                continue;
            }
            x_ = x;
            tau_ = tau;
            for (const auto& a : tr.a)
                if (!std::isfinite(a.real()) || std::norm(a) > opt_.blowup * n_ref_) throw blow_up(tau_ / w_);
            return tr;
        }
    }

private:
    void check(double) const
    {
        const double n = photons();
        if (!std::isfinite(n) || !std::isfinite(x_[2]) || n > opt_.blowup * n_ref_) throw blow_up(tau_ / w_);
    }

    const Model& M_;
    Options opt_;
    double Dp_;
    double A_ = 1, Y_ = 1, n_ref_ = 1, w_ = 1;
    double k_ = 0, hi_ = 0, y_ = 0, gam_ = 0, nu_ = 0;
    cd drv_, g_;
    double prb_ = 0;
    bool sum_ = true;
    State x_{};
    double tau_ = 0.0;
    double dt_ = 1e-2;
    int sub_ = 1;
};

inline Trajectory integrate(const Model& M, double Delta_p, double t_end, const Options& opt = {})
{
    Integrator I(M, Delta_p, opt);
    I.advance_to(t_end);
    return I.record(opt.periods, opt.samples);
}

// Projection onto e^{-i k Dp t}, k = -2..2, over the samples of a trajectory that spans an
// integer number of beat periods.
inline HarmonicExtract extract_harmonics(const Trajectory& tr, double Delta_p)
{
    HarmonicExtract h;
    const std::size_t N = tr.a.size();
    if (N == 0) return h;
    double total = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        total += std::norm(tr.a[j]);
        for (int k = -2; k <= 2; ++k) {
            const cd e = std::polar(1.0, k * Delta_p * tr.t[j]);
            h.a[static_cast<std::size_t>(k + 2)] += tr.a[j] * e;
            if (!tr.x.empty()) h.x[static_cast<std::size_t>(k + 2)] += tr.x[j] * e;
        }
    }
    for (auto& c : h.a) c /= static_cast<double>(N);
    for (auto& c : h.x) c /= static_cast<double>(N);
    double rest = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        cd v = tr.a[j];
        for (int k = -2; k <= 2; ++k) v -= h.at(k) * std::polar(1.0, -k * Delta_p * tr.t[j]);
        rest += std::norm(v);
    }
    h.residual = total > 0.0 ? rest / total : 0.0;
    return h;
}

// Relative change per coefficient. Lines weaker than floor * the strongest line sit at the
// integrator's noise level and are measured against that level instead.
inline double coefficient_drift(const HarmonicExtract& a, const HarmonicExtract& b, double floor = 1e-9)
{
    double scale = 0.0;
    for (int k = -2; k <= 2; ++k) scale = std::max(scale, std::abs(b.at(k)));
    double drift = 0.0;
    for (int k = -2; k <= 2; ++k) {
        const double mag = std::max(std::abs(b.at(k)), floor * scale);
        if (mag > 0.0) drift = std::max(drift, std::abs(b.at(k) - a.at(k)) / mag);
    }
    return drift;
}

// Integrate to the periodic attractor and return its harmonic content.
inline HarmonicExtract settle(const Model& M, double Delta_p, const Options& opt = {})
{
    Integrator I(M, Delta_p, opt);
    const double g = M.phys.Gamma_m > 0.0 ? M.phys.Gamma_m : 1e-3 * M.phys.omega_m;
    I.advance_to(opt.settle / g);
    HarmonicExtract prev = extract_harmonics(I.record(opt.periods, opt.samples), Delta_p);
    for (int w = 2; w <= opt.max_windows; ++w) {
        HarmonicExtract cur = extract_harmonics(I.record(opt.periods, opt.samples), Delta_p);
        cur.drift = coefficient_drift(prev, cur, 1e3 * std::max(opt.rtol, opt.atol));
        cur.windows = w;
        cur.t_end = I.time();
        if (cur.drift < opt.drift_tol) {
            cur.flagged = cur.residual > opt.residual_flag;
            return cur;
        }
        prev = cur;
    }
    throw non_periodic(prev.drift);
}

// Upper second-order efficiency from the extracted e^{-2i Dp t} coefficient.
inline double eta1(const HarmonicExtract& h, const Model& M, double Delta_p)
{
    return std::sqrt(M.der.kappa_ex) * std::abs(h.at(2)) / M.probe_amplitude(Delta_p);
}

} // namespace omit::oracle
