#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace omit {

namespace detail {

using U = Quantity::Unit;

inline Axis detuning_axis(int count = 2001) { return {"Delta_p", 0.98, 1.02, count, U::OmegaM}; }
inline Setting num(const std::string& name, double v, U u = U::SI) { return {name, {v, u}, {}}; }
inline Setting txt(const std::string& name, const std::string& v) { return {name, {}, v}; }

inline SweepSpec spec(std::string name, std::string desc, std::vector<Axis> axes, std::vector<Setting> fixed,
                      std::set<Observable> obs)
{
    SweepSpec s;
    s.name = std::move(name);
    s.description = std::move(desc);
    s.axes = std::move(axes);
    s.fixed = std::move(fixed);
    s.observables = std::move(obs);
    return s;
}

inline std::vector<Setting> opa(double g_kappa, double theta_pi, const char* pump = "sum")
{
    return {num("G", g_kappa, U::Kappa), num("theta", theta_pi, U::Pi), txt("pump_mode", pump)};
}

inline std::vector<Setting> join(std::vector<Setting> a, const std::vector<Setting>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

struct PresetEntry {
    std::string description;
    std::function<SweepSpec()> make;
};

inline const std::map<std::string, PresetEntry>& preset_table()
{
    static const std::map<std::string, PresetEntry> table = [] {
        std::map<std::string, PresetEntry> t;
        const std::set<Observable> E1{Observable::Eta1}, E2{Observable::Eta2}, T1{Observable::Tau1};
        const Axis spin3{"Omega", -2e4, 2e4, 3, U::SI};
        const Axis spin_map{"Omega", -6e4, 6e4, 121, U::SI};
        const Axis dp_map = detuning_axis(401);
        const Axis gain4{"G", 0.0, 0.6, 4, U::Kappa};
        const Axis gain_map{"G", 0.0, 0.6, 61, U::Kappa};
        const Axis phase4{"theta", 0.0, 1.5, 4, U::Pi};
        const Axis phase_map{"theta", 0.0, 2.0, 73, U::Pi};
        const Axis power{"P_l", 0.0, 1e-2, 201, U::SI};
        const Axis power_map{"P_l", 0.0, 1e-2, 101, U::SI};

        auto add = [&](const std::string& name, const std::string& desc, std::function<SweepSpec()> f) {
            t[name] = {desc, [name, desc, f] {
                           SweepSpec s = f();
                           s.name = name;
                           s.description = desc;
                           return s;
                       }};
        };

        // Upper and lower second-order sidebands versus spin direction (Figs. 2 and 4).
        const std::pair<const char*, std::vector<Setting>> cases[3] = {
            {"G = 0, theta = 0", opa(0.0, 0.0)},
            {"G = 0.2 kappa, theta = 0", opa(0.2, 0.0)},
            {"G = 0.2 kappa, theta = 3pi/2", opa(0.2, 1.5)},
        };
        const char* lines[3] = {"a", "b", "c"};
        const char* maps[3] = {"d", "e", "f"};
        for (int fig = 2; fig <= 4; fig += 2) {
            const auto obs = fig == 2 ? E1 : E2;
            const std::string what = fig == 2 ? "eta1" : "eta2";
            for (int i = 0; i < 3; ++i) {
                const auto fixed = cases[i].second;
                add("fig" + std::to_string(fig) + lines[i], what + " vs Delta_p for Omega = -20, 0, 20 kHz; " + cases[i].first,
                    [=] { return spec("", "", {spin3, detuning_axis()}, fixed, obs); });
                add("fig" + std::to_string(fig) + maps[i], what + " over Delta_p and Omega; " + cases[i].first,
                    [=] { return spec("", "", {spin_map, dp_map}, fixed, obs); });
            }
        }

        // Right-side drive at Omega = -20 kHz, gain and phase dependence.
        const auto right = std::vector<Setting>{num("Omega", -2e4)};
        add("fig3a", "eta1 vs Delta_p for G = 0..0.6 kappa, theta = 0, Omega = -20 kHz",
            [=] { return spec("", "", {gain4, detuning_axis()}, join(right, {num("theta", 0.0)}), E1); });
        add("fig3b", "eta1 over Delta_p and G, theta = 0, Omega = -20 kHz",
            [=] { return spec("", "", {gain_map, dp_map}, join(right, {num("theta", 0.0)}), E1); });
        add("fig3c", "eta1 vs Delta_p for theta = 0..3pi/2, G = 0.2 kappa, Omega = -20 kHz",
            [=] { return spec("", "", {phase4, detuning_axis()}, join(right, {num("G", 0.2, U::Kappa)}), E1); });
        add("fig3d", "eta1 over Delta_p and theta, G = 0.2 kappa, Omega = -20 kHz",
            [=] { return spec("", "", {phase_map, dp_map}, join(right, {num("G", 0.2, U::Kappa)}), E1); });

        add("fig5", "eta1 vs G in [0, 0.6 kappa] at fixed Delta_p, theta = 0, Omega = 0", [=] {
            return spec("", "", {{"Delta_p", 0.996, 1.004, 5, U::OmegaM}, {"G", 0.0, 0.6, 121, U::Kappa}},
                        {num("Omega", 0.0), num("theta", 0.0)}, E1);
        });

        add("fig6a", "tau1 vs P_l for Omega = -20, 0, 20 kHz without OPA",
            [=] { return spec("", "", {spin3, power}, opa(0.0, 0.0), T1); });
        add("fig6b", "tau1 vs P_l for Omega = -20, 0, 20 kHz at G = 0.4 kappa, theta = 0",
            [=] { return spec("", "", {spin3, power}, opa(0.4, 0.0), T1); });
        add("fig6c", "tau1 vs P_l for G = 0..0.6 kappa, theta = 0, Omega = 0",
            [=] { return spec("", "", {gain4, power}, {num("theta", 0.0), num("Omega", 0.0)}, T1); });
        add("fig6d", "tau1 vs P_l for theta = 0..3pi/2, G = 0.4 kappa, Omega = 0",
            [=] { return spec("", "", {phase4, power}, {num("G", 0.4, U::Kappa), num("Omega", 0.0)}, T1); });

        add("fig7", "tau1 vs Omega for both drive directions, G = 0.4 kappa, theta = 0, P_l = 1 mW", [=] {
            return spec("", "", {{"Omega", -1.5e5, 1.5e5, 301, U::SI}}, join(opa(0.4, 0.0), {num("P_l", 1e-3)}), T1);
        });
        add("fig8a", "tau1 over P_l and Omega, G = 0",
            [=] { return spec("", "", {spin_map, power_map}, opa(0.0, 0.0), T1); });
        add("fig8b", "tau1 over P_l and theta, G = 0.4 kappa, Omega = 0",
            [=] { return spec("", "", {phase_map, power_map}, {num("G", 0.4, U::Kappa), num("Omega", 0.0)}, T1); });

        // Double-control pump.
        const auto dc = std::vector<Setting>{txt("pump_mode", "double")};
        const Axis dc_gain{"G", 0.0, 0.8, 5, U::Kappa};
        const Axis dc_gain_map{"G", 0.0, 0.8, 81, U::Kappa};
        for (int k = 1; k <= 2; ++k) {
            const auto obs = k == 1 ? E1 : E2;
            const std::string what = k == 1 ? "eta1" : "eta2";
            const std::string pre = "2wl-" + what;
            add(pre + "-gain", "double-control " + what + " vs Delta_p for G = 0..0.8 kappa, theta = 0, Omega = 0",
                [=] { return spec("", "", {dc_gain, detuning_axis()}, join(dc, {num("theta", 0.0), num("Omega", 0.0)}), obs); });
            add(pre + "-gain-map", "double-control " + what + " over Delta_p and G, theta = 0, Omega = 0",
                [=] { return spec("", "", {dc_gain_map, dp_map}, join(dc, {num("theta", 0.0), num("Omega", 0.0)}), obs); });
            add(pre + "-phase", "double-control " + what + " vs Delta_p for theta = 0..3pi/2, G = 0.2 kappa, Omega = 0",
                [=] { return spec("", "", {phase4, detuning_axis()}, join(dc, {num("G", 0.2, U::Kappa), num("Omega", 0.0)}), obs); });
            add(pre + "-phase-map", "double-control " + what + " over Delta_p and theta, G = 0.2 kappa, Omega = 0",
                [=] { return spec("", "", {phase_map, dp_map}, join(dc, {num("G", 0.2, U::Kappa), num("Omega", 0.0)}), obs); });
        }
        for (double om : {2e4, -2e4}) {
            const std::string side = om > 0 ? "left" : "right";
            add("2wl-spin-gain-" + side, "double-control eta1 vs Delta_p for G = 0..0.8 kappa, theta = 0, Omega = " +
                                             std::string(om > 0 ? "20" : "-20") + " kHz",
                [=] { return spec("", "", {dc_gain, detuning_axis()}, join(dc, {num("theta", 0.0), num("Omega", om)}), E1); });
            add("2wl-spin-phase-" + side, "double-control eta1 vs Delta_p for theta = 0..3pi/2, G = 0.2 kappa, Omega = " +
                                              std::string(om > 0 ? "20" : "-20") + " kHz",
                [=] { return spec("", "", {phase4, detuning_axis()}, join(dc, {num("G", 0.2, U::Kappa), num("Omega", om)}), E1); });
        }
        for (int i = 0; i < 3; ++i) {
            const auto fixed = join(cases[i].second, dc);
            add(std::string("2wl-spin-") + lines[i], std::string("double-control eta1 vs Delta_p for Omega = -20, 0, 20 kHz; ") + cases[i].first,
                [=] { return spec("", "", {spin3, detuning_axis()}, fixed, E1); });
            add(std::string("2wl-spin-") + maps[i], std::string("double-control eta1 over Delta_p and Omega; ") + cases[i].first,
                [=] { return spec("", "", {spin_map, dp_map}, fixed, E1); });
        }
        for (double th : {0.5, 1.5}) {
            const std::string tag = th == 0.5 ? "half-pi" : "three-half-pi";
            add("2wl-theta-" + tag, "double-control eta1 vs Delta_p for Omega = -20, 0, 20 kHz, G = 0.4 kappa, theta = " + tag,
                [=] { return spec("", "", {spin3, detuning_axis()}, opa(0.4, th, "double"), E1); });
            add("2wl-theta-" + tag + "-map", "double-control eta1 over Delta_p and Omega, G = 0.4 kappa, theta = " + tag,
                [=] { return spec("", "", {spin_map, dp_map}, opa(0.4, th, "double"), E1); });
        }

        // Non-Markovian bath.
        const auto nm = [](double l1, double mu) {
            return std::vector<Setting>{txt("bath", "non-markovian"), num("lambda1", l1, U::OmegaM), num("mu", mu, U::OmegaM)};
        };
        const Axis width{"lambda1", 2.0, 10.0, 5, U::OmegaM};
        const Axis width_map{"lambda1", 0.5, 10.0, 96, U::OmegaM};
        add("fig10", "eta1' vs Delta_p for lambda1 = 2..10 omega_m, mu = 0, G = 0, Omega = 0",
            [=] { return spec("", "", {width, detuning_axis()}, join(nm(2.0, 0.0), join(opa(0.0, 0.0), {num("Omega", 0.0)})), E1); });
        add("fig10b", "eta1' vs Delta_p for lambda1 = 2..10 omega_m, mu = 0, G = 0, Omega = -7.7 kHz",
            [=] { return spec("", "", {width, detuning_axis()}, join(nm(2.0, 0.0), join(opa(0.0, 0.0), {num("Omega", -7.7e3)})), E1); });
        add("fig10c", "eta1' over Delta_p and lambda1, mu = 0, Omega = 0",
            [=] { return spec("", "", {width_map, dp_map}, join(nm(2.0, 0.0), join(opa(0.0, 0.0), {num("Omega", 0.0)})), E1); });
        add("fig10d", "eta1' over Delta_p and lambda1, mu = 0, Omega = -7.7 kHz",
            [=] { return spec("", "", {width_map, dp_map}, join(nm(2.0, 0.0), join(opa(0.0, 0.0), {num("Omega", -7.7e3)})), E1); });
        add("fig10e", "eta1' over Delta_p and lambda1, mu = 5 omega_m, Omega = 0",
            [=] { return spec("", "", {width_map, dp_map}, join(nm(2.0, 5.0), join(opa(0.0, 0.0), {num("Omega", 0.0)})), E1); });

        auto comparison = [=] {
            SweepSpec s = spec("", "", {spin3, detuning_axis()}, opa(0.0, 0.0), E1);
            s.series = {{"markovian", {txt("bath", "markovian")}},
                        {"lambda1=200wm", nm(200.0, 0.0)}};
            return s;
        };
        add("fig12", "Markovian eta1 against eta1' at lambda1 = 200 omega_m, mu = 0, Omega = -20, 0, 20 kHz, G = 0", comparison);
        add("fig14", "same grid as fig12", comparison);

        for (double l1 : {0.5, 2.0}) {
            const std::string tag = l1 == 0.5 ? "narrow" : "wide";
            add("nm-spin-" + tag, "eta1' vs Delta_p for Omega = -20, 0, 20 kHz, lambda1 = " + detail::fmt(l1) + " omega_m, mu = 0",
                [=] { return spec("", "", {spin3, detuning_axis()}, join(nm(l1, 0.0), opa(0.0, 0.0)), E1); });
            add("nm-spin-" + tag + "-map", "eta1' over Delta_p and Omega, lambda1 = " + detail::fmt(l1) + " omega_m, mu = 0",
                [=] { return spec("", "", {spin_map, dp_map}, join(nm(l1, 0.0), opa(0.0, 0.0)), E1); });
            add("nm-spin-" + tag + "-map-decay", "eta1' over Delta_p and Omega, lambda1 = " + detail::fmt(l1) + " omega_m, mu = 5 omega_m",
                [=] { return spec("", "", {spin_map, dp_map}, join(nm(l1, 5.0), opa(0.0, 0.0)), E1); });
        }
        for (double l1 : {0.5, 2.0, 5.0, 30.0}) {
            add("nm-gain-" + detail::fmt(l1), "eta1' vs Delta_p for G = 0..0.6 kappa, theta = 0, Omega = 0, lambda1 = " + detail::fmt(l1) + " omega_m",
                [=] { return spec("", "", {gain4, detuning_axis()}, join(nm(l1, 0.0), {num("theta", 0.0), num("Omega", 0.0)}), E1); });
        }
        return t;
    }();
    return table;
}

} // namespace detail

inline SweepSpec figure_preset(const std::string& name)
{
    const auto& t = detail::preset_table();
    auto it = t.find(name);
    if (it == t.end()) throw unknown_preset(name);
    return it->second.make();
}

inline std::vector<std::pair<std::string, std::string>> preset_list()
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : detail::preset_table()) out.emplace_back(k, v.description);
    return out;
}

} // namespace omit
