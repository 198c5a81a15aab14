#include <gtest/gtest.h>

#include "common.hpp"
#include "omit/observables.hpp"

using namespace omit;
using testing_support::params;
using testing_support::rel;

namespace {

std::vector<double> grid(const Model& M, int n = 2001, double lo = 0.98, double hi = 1.02)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back((lo + (hi - lo) * i / (n - 1)) * M.phys.omega_m);
    return g;
}

std::vector<double> eta1_curve(const Model& M, const std::vector<double>& g)
{
    const auto s = solve_steady(M);
    std::vector<double> out;
    for (double Dp : g) out.push_back(efficiencies(solve_sidebands(s, Dp, M), M).eta1);
    return out;
}

std::size_t argmax(const std::vector<double>& v)
{
    return std::size_t(std::max_element(v.begin(), v.end()) - v.begin());
}

} // namespace

TEST(Efficiency, PeriodicInOpaPhase)
{
    for (auto mode : {PumpMode::SumFreq, PumpMode::DoubleControl}) {
        for (double th : {0.0, 0.37, 1.9}) {
            const Model A(params(2e4, 0.3, th, mode)), B(params(2e4, 0.3, th + 2.0 * constants::pi, mode));
            const auto sa = solve_steady(A), sb = solve_steady(B);
            for (double x : {0.99, 0.997, 1.0, 1.003}) {
                const double Dp = x * A.phys.omega_m;
                const auto a = efficiencies(solve_sidebands(sa, Dp, A), A);
                const auto b = efficiencies(solve_sidebands(sb, Dp, B), B);
                EXPECT_LT(rel(a.eta1, b.eta1), 1e-9);
                EXPECT_LT(rel(*a.eta2, *b.eta2), 1e-9);
            }
        }
    }
}

TEST(Efficiency, UndefinedWithoutProbe)
{
    PhysParams p = params();
    p.probe_ratio = 0.0;
    const Model M(p);
    const auto s = solve_steady(M);
    EXPECT_THROW(efficiencies(solve_sidebands(s, p.omega_m, M), M), undefined_efficiency);
}

TEST(Efficiency, NonMarkovianHasNoLowerSideband)
{
    PhysParams p = params();
    p.bath = Bath::nonmarkov(2e8, 0.0);
    const Model M(p);
    const auto e = efficiencies(solve_sidebands(solve_steady(M), p.omega_m, M), M);
    EXPECT_FALSE(e.eta2.has_value());
    EXPECT_GT(e.eta1, 0.0);
}

TEST(Efficiency, NonreciprocalBetweenDrivingDirections)
{
    const Model L(params(2e4)), R(params(-2e4));
    const auto g = grid(L);
    const auto a = eta1_curve(L, g), b = eta1_curve(R, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    EXPECT_GT(worst, 0.01);
}

TEST(Efficiency, PeakLocationStableUnderGain)
{
    for (double Om : {-2e4, 2e4}) {
        const Model M0(params(Om));
        const auto g = grid(M0);
        const double step = g[1] - g[0];
        const double ref = g[argmax(eta1_curve(M0, g))];
        for (double G : {0.1, 0.2, 0.4, 0.6}) {
            const Model M(params(Om, G, 0.0));
            EXPECT_LE(std::abs(g[argmax(eta1_curve(M, g))] - ref), step) << "Omega=" << Om << " G=" << G;
        }
    }
}

TEST(Efficiency, MatchesFrozenReference)
{
    for (const auto& c : testing_support::reference()["cases"]) {
        const Model M(params(c));
        const auto s = solve_steady(M);
        EXPECT_LT(std::abs(std::abs(s.a_s) - c["a_s_abs"].get<double>()), 1e-8 * c["a_s_abs"].get<double>()) << c["name"];
        EXPECT_LT(std::abs(s.Delta_eff / M.phys.omega_m - c["Delta_eff_wm"].get<double>()), 1e-10) << c["name"];
    }
}

TEST(Spectrum, OutputFieldIdentities)
{
    const Model M(params(2e4, 0.2, 0.5, PumpMode::DoubleControl));
    const auto s = solve_steady(M);
    const double Dp = 1.002 * M.phys.omega_m;
    const auto sol = solve_sidebands(s, Dp, M);
    const auto o = output_spectrum(sol, s, M);
    const double eps = M.probe_amplitude(Dp);
    const auto e = efficiencies(sol, M);
    EXPECT_LT(rel(std::abs(o.up2) / eps, e.eta1), 1e-12);
    EXPECT_LT(rel(std::abs(o.low2) / eps, *e.eta2), 1e-12);
    EXPECT_LT(rel(o.C2, eps - std::sqrt(M.der.kappa_ex) * sol.A1_plus), 1e-12);
    EXPECT_LT(rel(o.C1, M.der.eps_l - std::sqrt(M.der.kappa_ex) * s.a_s), 1e-12);
}

TEST(Spectrum, NonMarkovianRejected)
{
    PhysParams p = params();
    p.bath = Bath::nonmarkov(2e8, 0.0);
    const Model M(p);
    const auto s = solve_steady(M);
    EXPECT_THROW(output_spectrum(solve_sidebands(s, p.omega_m, M), s, M), invalid_regime);
}

TEST(Delay, PhaseSlopeIsTwiceTau)
{
    for (double Om : {-2e4, 0.0, 2e4}) {
        const auto d = group_delay(Model(params(Om)));
        EXPECT_LT(rel(d.phase_slope, 2.0 * d.tau1), 1e-12);
    }
}

TEST(Delay, StepHalvingConverges)
{
    for (double Om : {-2e4, 0.0, 2e4}) {
        const auto d = group_delay(Model(params(Om)));
        EXPECT_LT(d.richardson, 1e-3) << "Omega=" << Om;
    }
}

TEST(Delay, FiniteAcrossControlPower)
{
    PhysParams p = params();
    for (double P : {1e-4, 1e-3, 5e-3, 1e-2}) {
        p.P_l = P;
        const auto d = group_delay(Model(p));
        EXPECT_TRUE(std::isfinite(d.tau1)) << "P_l=" << P;
    }
}

TEST(Delay, MatchesFrozenReference)
{
    for (const auto& c : testing_support::reference()["cases"]) {
        const Model M(params(c));
        DelayOptions o;
        o.step_wm = 1e-6;
        const auto d = group_delay(M, o);
        EXPECT_LT(rel(d.tau1, c["tau1"].get<double>()), 1e-5) << c["name"];
    }
}

TEST(Linewidth, ExceedsMechanicalWidthWithControl)
{
    const Model M(params());
    EXPECT_GT(omit_linewidth(solve_steady(M), M), M.phys.Gamma_m);
    PhysParams p = params();
    p.P_l = 0.0;
    const Model N(p);
    EXPECT_DOUBLE_EQ(omit_linewidth(solve_steady(N), N), p.Gamma_m);
}

TEST(Linewidth, TransparencyWindowMatchesEffectiveWidth)
{
    const Model M(params());
    const auto s = solve_steady(M);
    const auto w = transparency_window(s, M, grid(M, 4001, 0.99, 1.01));
    const double G = omit_linewidth(s, M);
    EXPECT_LT(std::abs(w.fwhm - G) / G, 0.20) << "fwhm=" << w.fwhm << " Gamma_OMIT=" << G;
}
