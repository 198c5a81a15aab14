#include <gtest/gtest.h>

#include "common.hpp"
#include "omit/config.hpp"

using namespace omit;
using testing_support::rel;

TEST(Sagnac, OddInSpinRate)
{
    const double w0 = derive(paper_default()).omega_0;
    for (double Om : {1.0, 2e4, -7.7e3, 1.5e5})
        EXPECT_DOUBLE_EQ(sagnac_shift(1.44, 0.25e-3, Om, w0, 1550e-9, 0.0), -sagnac_shift(1.44, 0.25e-3, -Om, w0, 1550e-9, 0.0));
}

TEST(Sagnac, LinearInSpinRate)
{
    PhysParams p = paper_default();
    p.Omega = 1e4;
    const double a = derive(p).Delta_s;
    p.Omega = 3e4;
    EXPECT_LT(rel(derive(p).Delta_s, 3.0 * a), 1e-14);
    p.Omega = 0.0;
    EXPECT_EQ(derive(p).Delta_s, 0.0);
}

TEST(Sagnac, PositiveForLeftDrive)
{
    PhysParams p = paper_default();
    p.Omega = 2e4;
    EXPECT_GT(derive(p).Delta_s, 0.0);
    // n R Omega omega_0 / c (1 - 1/n^2) without dispersion.
    const double w0 = 2.0 * constants::pi * constants::c / 1550e-9;
    EXPECT_LT(rel(derive(p).Delta_s, 1.44 * 0.25e-3 * 2e4 * w0 / constants::c * (1.0 - 1.0 / (1.44 * 1.44))), 1e-14);
}

TEST(Derive, PureFunction)
{
    const PhysParams p = paper_default();
    const auto a = derive(p), b = derive(p);
    EXPECT_EQ(a.kappa, b.kappa);
    EXPECT_EQ(a.eps_l, b.eps_l);
    EXPECT_EQ(a.Delta_s, b.Delta_s);
    EXPECT_EQ(a.xi, b.xi);
}

TEST(Derive, KappaIdentity)
{
    PhysParams p = paper_default();
    auto d = derive(p);
    EXPECT_DOUBLE_EQ(d.kappa, 0.5 * (d.kappa_a + d.kappa_ex));
    EXPECT_DOUBLE_EQ(d.kappa_a, d.omega_0 / p.Q);
    p.kappa_a = 1e7;
    p.kappa_ex = 3e7;
    d = derive(p);
    EXPECT_DOUBLE_EQ(d.kappa, 2e7);
}

TEST(Derive, ProbeFollowsControlPower)
{
    PhysParams p = paper_default();
    p.P_l = 4e-3;
    EXPECT_DOUBLE_EQ(derive(p).P_p, 0.05 * 4e-3);
    p.probe_ratio.reset();
    p.P_p = 1e-6;
    EXPECT_DOUBLE_EQ(derive(p).P_p, 1e-6);
}

TEST(Derive, CentrifugalDisplacementOnlyWhenEnabled)
{
    PhysParams p = paper_default();
    p.Omega = 2e4;
    EXPECT_EQ(derive(p).x_rot, 0.0);
    p.centrifugal = true;
    EXPECT_DOUBLE_EQ(derive(p).x_rot, p.R * 4e-8);
}

TEST(Derive, RejectsBadFields)
{
    auto field_of = [](PhysParams p) {
        try {
            derive(p);
        } catch (const invalid_params& e) {
            return e.field();
        }
        return std::string();
    };
    PhysParams p = paper_default();
    p.m = -1.0;
    EXPECT_EQ(field_of(p), "m");
    p = paper_default();
    p.Q = 0.0;
    EXPECT_EQ(field_of(p), "Q");
    p = paper_default();
    p.G = -1.0;
    EXPECT_EQ(field_of(p), "G");
    p = paper_default();
    p.bath = Bath::nonmarkov(0.0, 0.0);
    EXPECT_EQ(field_of(p), "lambda1");
    p = paper_default();
    p.n = std::nan("");
    EXPECT_EQ(field_of(p), "n");
}

TEST(Quantity, Suffixes)
{
    auto q = parse_quantity("1.003wm");
    EXPECT_EQ(q.unit, Quantity::Unit::OmegaM);
    EXPECT_DOUBLE_EQ(q.value, 1.003);
    q = parse_quantity("0.2kappa");
    EXPECT_EQ(q.unit, Quantity::Unit::Kappa);
    q = parse_quantity("1.5pi");
    EXPECT_EQ(q.unit, Quantity::Unit::Pi);
    q = parse_quantity("-2e4");
    EXPECT_EQ(q.unit, Quantity::Unit::SI);
    EXPECT_DOUBLE_EQ(q.value, -2e4);
    EXPECT_THROW(parse_quantity("abc"), config_error);
    EXPECT_THROW(parse_quantity("1.0 wmx"), config_error);
}

TEST(Config, RelativeUnitsResolveAgainstFinalBase)
{
    PhysParams p = paper_default();
    apply_settings(p, {make_setting("Delta_0", "1.001wm"), make_setting("omega_m", "2e8")});
    EXPECT_DOUBLE_EQ(*p.Delta_0, 1.001 * 2e8);
    p = paper_default();
    apply_settings(p, {make_setting("G", "0.2kappa"), make_setting("theta", "0.5pi")});
    EXPECT_DOUBLE_EQ(p.G, 0.2 * derive(paper_default()).kappa);
    EXPECT_DOUBLE_EQ(p.theta, 0.5 * constants::pi);
}

TEST(Config, FileOverridesDefaultsAndLaterSettingsWin)
{
    const auto j = nlohmann::json::parse(R"({
        "profile": "paper-default",
        "rotation": {"Omega": -20000},
        "opa": {"G": "0.2kappa", "pump_mode": "double"},
        "bath": {"type": "non-markovian", "lambda1": "2wm", "mu": 0},
        "mechanics": {"centrifugal": true}
    })");
    auto s = settings_from_json(j);
    PhysParams p = paper_default();
    apply_settings(p, s);
    EXPECT_EQ(p.Omega, -2e4);
    EXPECT_EQ(p.pump_mode, PumpMode::DoubleControl);
    EXPECT_FALSE(p.bath.markovian);
    EXPECT_DOUBLE_EQ(p.bath.lambda1, 2e8);
    EXPECT_TRUE(p.centrifugal);
    // Command-line settings are applied after the file.
    apply_settings(p, {make_setting("Omega", "3e4"), make_setting("bath", "markovian")});
    EXPECT_EQ(p.Omega, 3e4);
    EXPECT_TRUE(p.bath.markovian);
}

TEST(Config, RejectsUnknownKeys)
{
    EXPECT_THROW(settings_from_json(nlohmann::json::parse(R"({"rotation": {"speed": 1}})")), config_error);
    EXPECT_THROW(settings_from_json(nlohmann::json::parse(R"({"spin": {}})")), config_error);
    EXPECT_THROW(settings_from_json(nlohmann::json::parse(R"({"profile": "other"})")), config_error);
    EXPECT_THROW(make_setting("colour", "1"), config_error);
    EXPECT_THROW(load_config("/nonexistent/omit.json"), config_error);
}

TEST(Config, BathFlag)
{
    PhysParams p = paper_default();
    apply_settings(p, parse_bath("lambda1=2wm,mu=0.5wm"));
    EXPECT_FALSE(p.bath.markovian);
    EXPECT_DOUBLE_EQ(p.bath.lambda1, 2e8);
    EXPECT_DOUBLE_EQ(p.bath.mu, 0.5e8);
    apply_settings(p, parse_bath("markovian"));
    EXPECT_TRUE(p.bath.markovian);
    EXPECT_THROW(parse_bath("lambda=2"), config_error);
}
