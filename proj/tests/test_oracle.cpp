#include <gtest/gtest.h>

#include "common.hpp"
#include "omit/observables.hpp"
#include "omit/oracle.hpp"

using namespace omit;
using testing_support::params;
using testing_support::rel;

TEST(Projection, RecoversSyntheticHarmonics)
{
    const double Dp = 1e8;
    oracle::Trajectory tr;
    tr.Delta_p = Dp;
    const int N = 32 * 128;
    const double T = 32 * 2.0 * constants::pi / Dp;
    for (int j = 0; j < N; ++j) {
        const double t = 1e-3 + T * j / N;
        tr.t.push_back(t);
        tr.a.push_back(1.0 + 0.1 * std::polar(1.0, -Dp * t));
    }
    const auto h = oracle::extract_harmonics(tr, Dp);
    EXPECT_LT(std::abs(h.at(0) - 1.0), 1e-12);
    EXPECT_LT(std::abs(h.at(1) - 0.1), 1e-12);
    EXPECT_LT(std::abs(h.at(2)), 1e-12);
    EXPECT_LT(std::abs(h.at(-1)), 1e-12);
    EXPECT_LT(h.residual, 1e-20);
}

TEST(Attractor, ProbeFreeOrbitIsTheSteadyState)
{
    for (auto p : {params(2e4), params(-2e4, 0.2, 0.5, PumpMode::DoubleControl)}) {
        p.probe_ratio = 0.0;
        const Model M(p);
        const auto s = solve_steady(M);
        const auto h = oracle::settle(M, p.omega_m);
        EXPECT_LT(rel(h.at(0), s.a_s), 1e-6);
        EXPECT_LT(std::abs(h.at(2)), 1e-6 * std::abs(s.a_s));
    }
}

namespace {

double upper_gap(PhysParams p, double Dp_wm)
{
    const Model M(p);
    const double Dp = Dp_wm * p.omega_m;
    const auto pert = solve_sidebands(solve_steady(M), Dp, M);
    const auto h = oracle::settle(M, Dp);
    return std::max(rel(h.at(2), pert.A2_plus), rel(h.at(1), pert.A1_plus));
}

} // namespace

TEST(Perturbative, GapShrinksWithProbe)
{
    PhysParams p = params(2e4);
    double prev = 1e300;
    for (double f : {1.0, 0.25, 0.0625}) {
        PhysParams q = p;
        q.probe_ratio = *p.probe_ratio * f;
        const double gap = upper_gap(q, 1.0);
        EXPECT_LT(gap, prev) << "probe factor " << f;
        prev = gap;
    }
}

TEST(Perturbative, UpperSecondOrderWithinTwoPercentAtDefaultProbe)
{
    const Model M(params(2e4));
    const double Dp = M.phys.omega_m;
    const auto pert = solve_sidebands(solve_steady(M), Dp, M);
    EXPECT_LT(rel(oracle::settle(M, Dp).at(2), pert.A2_plus), 0.02);
}

TEST(Integrator, ToleranceHalvingIsStable)
{
    const Model M(params(2e4));
    const double Dp = 1.003 * M.phys.omega_m;
    oracle::Options a, b;
    b.rtol = a.rtol / 2;
    b.atol = a.atol / 2;
    const auto ha = oracle::settle(M, Dp, a), hb = oracle::settle(M, Dp, b);
    EXPECT_LT(rel(ha.at(2), hb.at(2)), 1e-4);
    EXPECT_LT(rel(ha.at(1), hb.at(1)), 1e-4);
}

TEST(Integrator, DivergesAboveThreshold)
{
    const Model M(params(0.0, 3.0, 0.0, PumpMode::DoubleControl));
    EXPECT_THROW(oracle::settle(M, M.phys.omega_m), blow_up);
}

TEST(Integrator, RejectsNonMarkovianBath)
{
    PhysParams p = params();
    p.bath = Bath::nonmarkov(2e8, 0.0);
    EXPECT_THROW(oracle::Integrator(Model(p), p.omega_m), invalid_regime);
}

TEST(Integrator, EfficiencyFromHarmonics)
{
    const Model M(params(-2e4));
    const double Dp = 1.003 * M.phys.omega_m;
    const auto h = oracle::settle(M, Dp);
    const auto e = efficiencies(solve_sidebands(solve_steady(M), Dp, M), M);
    EXPECT_FALSE(h.flagged);
    EXPECT_LT(rel(oracle::eta1(h, M, Dp), e.eta1), 0.10);
}
