#include <gtest/gtest.h>

#include "common.hpp"
#include "omit/oracle.hpp"
#include "omit/steadystate.hpp"

using namespace omit;
using testing_support::params;
using testing_support::rel;

namespace {

double displacement_from_photons(const SteadyState& s, const Model& M)
{
    const auto& p = M.phys;
    const double rot = p.R * (p.Omega / p.omega_m) * (p.Omega / p.omega_m);
    return constants::hbar * M.der.xi * s.photons() / (p.m * p.omega_m * p.omega_m) + (p.centrifugal ? rot : 0.0);
}

} // namespace

TEST(Steady, DefaultsConverge)
{
    const Model M(paper_default());
    const auto s = solve_steady(M);
    EXPECT_EQ(s.regime, Regime::Plain);
    EXPECT_LE(s.residual, 1e-12);
    EXPECT_GT(s.photons(), 0.0);
    EXPECT_LT(s.Delta_eff, M.phys.omega_m);
    EXPECT_LT(rel(s.a_s, std::sqrt(M.der.kappa_ex) * M.der.eps_l / cd(M.der.kappa, s.Delta_eff)), 1e-12);
}

TEST(Steady, MatchesFrozenReference)
{
    for (const auto& c : testing_support::reference()["cases"]) {
        const Model M(params(c));
        const auto s = solve_steady(M);
        EXPECT_LT(rel(std::abs(s.a_s), c["a_s_abs"].get<double>()), 1e-9) << c["name"];
        EXPECT_LT(rel(s.Delta_eff / M.phys.omega_m, c["Delta_eff_wm"].get<double>()), 1e-11) << c["name"];
    }
}

TEST(Steady, DisplacementInvariantAllRegimes)
{
    for (bool centrifugal : {false, true}) {
        for (auto p : {params(2e4), params(-2e4, 0.2, 0.3, PumpMode::DoubleControl), params(2e4)}) {
            p.centrifugal = centrifugal;
            const Model M(p);
            const auto s = solve_steady(M);
            EXPECT_LT(rel(s.x_s, displacement_from_photons(s, M)), 1e-12);
            EXPECT_LE(s.residual, 1e-12);
            const double expect_D = M.der.Delta_0 + M.der.Delta_s - M.der.xi * s.x_s;
            EXPECT_LT(std::abs(s.Delta_eff - expect_D) / p.omega_m, 1e-12);
        }
    }
    PhysParams p = params(0.0);
    p.bath = Bath::nonmarkov(2e8, 0.0);
    const Model M(p);
    const auto s = solve_steady(M);
    EXPECT_EQ(s.regime, Regime::NonMarkovian);
    EXPECT_LT(rel(s.x_s, displacement_from_photons(s, M)), 1e-12);
}

TEST(Steady, UndrivenCavity)
{
    for (bool centrifugal : {false, true}) {
        PhysParams p = params(2e4);
        p.P_l = 0.0;
        p.centrifugal = centrifugal;
        const Model M(p);
        const double rot = centrifugal ? p.R * (2e4 / p.omega_m) * (2e4 / p.omega_m) : 0.0;
        for (auto r : {Regime::Plain, Regime::DoubleControlOPA, Regime::NonMarkovian}) {
            const auto s = solve_steady(M, r);
            EXPECT_EQ(s.a_s, cd(0.0));
            EXPECT_DOUBLE_EQ(s.x_s, rot);
            EXPECT_DOUBLE_EQ(s.Delta_eff, M.der.Delta_0 + M.der.Delta_s - M.der.xi * rot);
        }
    }
}

TEST(Steady, DoubleControlWithoutGainEqualsPlain)
{
    for (double Om : {-2e4, 0.0, 2e4}) {
        for (double P : {1e-4, 1e-3, 3e-3}) {
            PhysParams p = params(Om);
            p.P_l = P;
            const Model A(p);
            p.pump_mode = PumpMode::DoubleControl;
            const Model B(p);
            const auto a = solve_steady_plain(A), b = solve_steady_2wl(B);
            EXPECT_LE(rel(b.a_s.real(), a.a_s.real()), 1e-12);
            EXPECT_LE(rel(b.a_s.imag(), a.a_s.imag()), 1e-12);
            EXPECT_LE(rel(b.x_s, a.x_s), 1e-12);
            EXPECT_LE(rel(b.Delta_eff, a.Delta_eff), 1e-12);
        }
    }
}

TEST(Steady, WidebandBathMatchesPlain)
{
    PhysParams p = params(2e4);
    const auto a = solve_steady(Model(p));
    p.bath = Bath::nonmarkov(200 * p.omega_m, 0.0);
    const auto b = solve_steady(Model(p));
    EXPECT_LE(rel(std::abs(b.a_s), std::abs(a.a_s)), 1e-3);
}

TEST(Steady, ConsistentMemoryShiftsSteadyStateOnlyWithDecay)
{
    PhysParams p = params();
    p.bath = Bath::nonmarkov(2e8, 0.0);
    p.variants.memory = MemoryForm::Consistent;
    const auto plain = solve_steady(Model(params()));
    EXPECT_LE(rel(std::abs(solve_steady(Model(p)).a_s), std::abs(plain.a_s)), 1e-12);
    p.bath.mu = 5e8;
    EXPECT_GT(rel(std::abs(solve_steady(Model(p)).a_s), std::abs(plain.a_s)), 1e-4);
}

TEST(Steady, NonreciprocalPhotonNumber)
{
    const auto l = solve_steady(Model(params(2e4)));
    const auto r = solve_steady(Model(params(-2e4)));
    EXPECT_GT(std::abs(l.photons() - r.photons()) / r.photons(), 1e-3);
    // The rotation term of the displacement is even in Omega.
    PhysParams a = params(2e4), b = params(-2e4);
    a.centrifugal = b.centrifugal = true;
    EXPECT_DOUBLE_EQ(derive(a).x_rot, derive(b).x_rot);
}

TEST(Steady, PhaseSensitiveUnderDoubleControlPump)
{
    double lo = 1e300, hi = 0;
    for (double th : {0.0, 0.5, 1.0, 1.5}) {
        const double n = solve_steady(Model(params(0.0, 0.2, th * constants::pi, PumpMode::DoubleControl))).photons();
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    EXPECT_GT(hi / lo, 1.1);
}

TEST(Steady, ContinuousUnderSmallPerturbation)
{
    const auto base = solve_steady(Model(params(2e4, 0.2, 0.0, PumpMode::DoubleControl)));
    auto nudged = [](PhysParams p, int which) {
        switch (which) {
        case 0: p.P_l *= 1.01; break;
        case 1: p.Omega *= 1.01; break;
        case 2: p.G *= 1.01; break;
        case 3: p.Q *= 1.01; break;
        case 4: p.m *= 1.01; break;
        case 5: p.omega_m *= 1.01; break;
        default: p.theta += 0.01; break;
        }
        return p;
    };
    for (int k = 0; k < 7; ++k) {
        const auto s = solve_steady(Model(nudged(params(2e4, 0.2, 0.0, PumpMode::DoubleControl), k)));
        EXPECT_LT(rel(s.photons(), base.photons()), 0.05) << k;
        EXPECT_LT(std::abs(s.Delta_eff - base.Delta_eff) / base.Delta_eff, 0.02) << k;
    }
}

TEST(Steady, BistabilityIsReported)
{
    PhysParams p = paper_default();
    p.P_l = 0.05;
    try {
        solve_steady(Model(p));
        FAIL() << "expected MultipleRoots";
    } catch (const multiple_roots& e) {
        EXPECT_EQ(e.roots().size(), 3u);
        EXPECT_TRUE(std::is_sorted(e.roots().begin(), e.roots().end()));
    }
}

TEST(Steady, AboveParametricThreshold)
{
    EXPECT_THROW(solve_steady(Model(params(0.0, 3.0, 0.0, PumpMode::DoubleControl))), above_threshold);
}

TEST(Steady, NonMarkovianDoubleControlIsRejected)
{
    PhysParams p = params(0.0, 0.2, 0.0, PumpMode::DoubleControl);
    p.bath = Bath::nonmarkov(2e8, 0.0);
    EXPECT_THROW(solve_steady(Model(p)), invalid_regime);
}

// The probe-free time-domain attractor is the analytic fixed point.
TEST(Steady, AgreesWithTimeDomainAttractor)
{
    for (auto p : {params(), params(2e4), params(0.0, 0.2, 0.0, PumpMode::DoubleControl)}) {
        p.probe_ratio = 0.0;
        const Model M(p);
        const auto s = solve_steady(M);
        oracle::Integrator I(M, p.omega_m);
        I.advance_to(60.0 / p.Gamma_m);
        EXPECT_LT(rel(I.amplitude().real(), s.a_s.real()), 1e-6);
        EXPECT_LT(rel(I.amplitude().imag(), s.a_s.imag()), 1e-6);
        EXPECT_LT(rel(I.displacement(), s.x_s), 1e-6);
    }
}
