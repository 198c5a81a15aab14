#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "omit/model.hpp"

namespace testing_support {

inline nlohmann::json reference()
{
    std::ifstream in(std::string(OMIT_TEST_DATA) + "/reference.json");
    return nlohmann::json::parse(in);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

inline omit::PhysParams params(double Omega = 0.0, double G_kappa = 0.0, double theta = 0.0,
                               omit::PumpMode mode = omit::PumpMode::SumFreq)
{
    omit::PhysParams p = omit::paper_default();
    p.Omega = Omega;
    p.pump_mode = mode;
    p.G = G_kappa * omit::derive(omit::paper_default()).kappa;
    p.theta = theta;
    return p;
}

// Parameters for one case of the frozen reference file.
inline omit::PhysParams params(const nlohmann::json& c)
{
    using namespace omit;
    PhysParams p = params(c["Omega"].get<double>(), c["G_kappa"].get<double>(),
                          c["theta_pi"].get<double>() * constants::pi,
                          c["pump"] == "double" ? PumpMode::DoubleControl : PumpMode::SumFreq);
    if (!c["bath"].is_null()) {
        const auto& b = c["bath"];
        p.bath = Bath::nonmarkov(b["lambda1_wm"].get<double>() * p.omega_m, b["mu_wm"].get<double>() * p.omega_m);
        p.variants.memory = b["memory"] == "consistent" ? MemoryForm::Consistent : MemoryForm::Printed;
    }
    return p;
}

} // namespace testing_support
