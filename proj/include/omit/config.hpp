#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "model.hpp"

namespace omit {

// A number with an optional relative unit: "2e4", "1.003wm", "0.2kappa", "1.5pi".
struct Quantity {
    enum class Unit { SI, OmegaM, Kappa, Pi };
    double value = 0;
    Unit unit = Unit::SI;
};

inline Quantity parse_quantity(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    Quantity q;
    auto strip = [&](const std::string& suffix, Quantity::Unit u) {
        if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            s.resize(s.size() - suffix.size());
            q.unit = u;
            return true;
        }
        return false;
    };
    strip("wm", Quantity::Unit::OmegaM) || strip("kappa", Quantity::Unit::Kappa) || strip("pi", Quantity::Unit::Pi);
    if (s.empty() && q.unit != Quantity::Unit::SI) s = "1";
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, q.value);
    if (ec != std::errc() || ptr != e) throw config_error("not a number: '" + text + "'");
    return q;
}

inline Quantity to_quantity(const nlohmann::json& j, const std::string& key)
{
    if (j.is_number()) return {j.get<double>(), Quantity::Unit::SI};
    if (j.is_string()) return parse_quantity(j.get<std::string>());
    throw config_error(key + ": expected a number or a string such as \"1.0wm\"");
}

// One named assignment to PhysParams. Numeric values may carry a unit; the enum and
// boolean fields take their text form.
struct Setting {
    std::string name;
    Quantity q;
    std::string text; // for enum and boolean fields
};

inline const std::vector<std::string>& numeric_fields()
{
    static const std::vector<std::string> names = {
        "n", "R", "m", "lambda", "dn_dlambda", "omega_m", "Gamma_m", "Q", "kappa_a", "kappa_ex",
        "P_l", "P_p", "probe_ratio", "Delta_0", "Omega", "G", "theta", "lambda1", "mu"};
    return names;
}

inline const std::vector<std::string>& text_fields()
{
    static const std::vector<std::string> names = {"pump_mode", "bath", "centrifugal", "chi", "opa_steady", "memory"};
    return names;
}

inline bool is_numeric_field(const std::string& n)
{
    for (const auto& f : numeric_fields())
        if (f == n) return true;
    return false;
}

inline bool is_text_field(const std::string& n)
{
    for (const auto& f : text_fields())
        if (f == n) return true;
    return false;
}

inline double resolve(const Quantity& q, const PhysParams& p)
{
    switch (q.unit) {
    case Quantity::Unit::SI: return q.value;
    case Quantity::Unit::OmegaM: return q.value * p.omega_m;
    case Quantity::Unit::Pi: return q.value * constants::pi;
    case Quantity::Unit::Kappa: {
        PhysParams base = p;
        base.G = 0.0;
        base.bath = Bath::markov();
        return q.value * derive(base).kappa;
    }
    }
    return q.value;
}

inline void set_numeric(PhysParams& p, const std::string& name, double v)
{
    if (name == "n") p.n = v;
    else if (name == "R") p.R = v;
    else if (name == "m") p.m = v;
    else if (name == "lambda") p.lambda_vac = v;
    else if (name == "dn_dlambda") p.dn_dlambda = v;
    else if (name == "omega_m") p.omega_m = v;
    else if (name == "Gamma_m") p.Gamma_m = v;
    else if (name == "Q") p.Q = v;
    else if (name == "kappa_a") p.kappa_a = v;
    else if (name == "kappa_ex") p.kappa_ex = v;
    else if (name == "P_l") p.P_l = v;
    else if (name == "P_p") {
        p.P_p = v;
        p.probe_ratio.reset();
    } else if (name == "probe_ratio") p.probe_ratio = v;
    else if (name == "Delta_0") p.Delta_0 = v;
    else if (name == "Omega") p.Omega = v;
    else if (name == "G") p.G = v;
    else if (name == "theta") p.theta = v;
    else if (name == "lambda1") p.bath.lambda1 = v;
    else if (name == "mu") p.bath.mu = v;
    else throw config_error("unknown parameter '" + name + "'");
}

inline void set_text(PhysParams& p, const std::string& name, const std::string& v)
{
    auto bad = [&] { return config_error(name + ": unsupported value '" + v + "'"); };
    if (name == "pump_mode") {
        if (v == "sum" || v == "sumfreq" || v == "SumFreq") p.pump_mode = PumpMode::SumFreq;
        else if (v == "double" || v == "2wl" || v == "DoubleControl") p.pump_mode = PumpMode::DoubleControl;
        else throw bad();
    } else if (name == "bath") {
        if (v == "markovian") p.bath.markovian = true;
        else if (v == "non-markovian") p.bath.markovian = false;
        else throw bad();
    } else if (name == "centrifugal") {
        if (v == "true" || v == "on") p.centrifugal = true;
        else if (v == "false" || v == "off") p.centrifugal = false;
        else throw bad();
    } else if (name == "chi") {
        if (v == "response") p.variants.chi = ChiArgument::Response;
        else if (v == "printed") p.variants.chi = ChiArgument::Printed;
        else throw bad();
    } else if (name == "opa_steady") {
        if (v == "corrected") p.variants.opa_steady = OpaSteady::Corrected;
        else if (v == "printed") p.variants.opa_steady = OpaSteady::Printed;
        else throw bad();
    } else if (name == "memory") {
        if (v == "printed") p.variants.memory = MemoryForm::Printed;
        else if (v == "consistent") p.variants.memory = MemoryForm::Consistent;
        else throw bad();
    } else {
        throw config_error("unknown parameter '" + name + "'");
    }
}

inline Setting make_setting(const std::string& name, const std::string& value)
{
    if (is_text_field(name)) return {name, {}, value};
    if (!is_numeric_field(name)) throw config_error("unknown parameter '" + name + "'");
    return {name, parse_quantity(value), {}};
}

// Apply settings in dependency order: text fields, absolute numbers, then omega_m- and
// kappa-relative numbers so that relative values see the final base parameters.
inline void apply_settings(PhysParams& p, const std::vector<Setting>& settings)
{
    for (const auto& s : settings)
        if (is_text_field(s.name)) set_text(p, s.name, s.text);
    for (int pass = 0; pass < 3; ++pass) {
        for (const auto& s : settings) {
            if (is_text_field(s.name)) continue;
            const bool abs = s.q.unit == Quantity::Unit::SI || s.q.unit == Quantity::Unit::Pi;
            const int want = abs ? 0 : (s.q.unit == Quantity::Unit::OmegaM ? 1 : 2);
            if (want == pass) set_numeric(p, s.name, resolve(s.q, p));
        }
    }
}

// Config files are JSON with the sections below; every key is optional.
//   resonator: n, R, m, lambda, dn_dlambda, Q, kappa_a, kappa_ex
//   mechanics: omega_m, Gamma_m, centrifugal
//   drive:     P_l, P_p, probe_ratio, Delta_0
//   rotation:  Omega
//   opa:       G, theta, pump_mode
//   bath:      type ("markovian" | "non-markovian"), lambda1, mu
//   variants:  chi, opa_steady, memory
inline std::vector<Setting> settings_from_json(const nlohmann::json& j)
{
    static const std::map<std::string, std::vector<std::string>> sections = {
        {"resonator", {"n", "R", "m", "lambda", "dn_dlambda", "Q", "kappa_a", "kappa_ex"}},
        {"mechanics", {"omega_m", "Gamma_m", "centrifugal"}},
        {"drive", {"P_l", "P_p", "probe_ratio", "Delta_0"}},
        {"rotation", {"Omega"}},
        {"opa", {"G", "theta", "pump_mode"}},
        {"bath", {"type", "lambda1", "mu"}},
        {"variants", {"chi", "opa_steady", "memory"}},
    };
    if (!j.is_object()) throw config_error("config root must be an object");
    std::vector<Setting> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "profile") {
            if (it.value() != "paper-default") throw config_error("unknown profile " + it.value().dump());
            continue;
        }
        auto sec = sections.find(it.key());
        if (sec == sections.end()) throw config_error("unknown section '" + it.key() + "'");
        if (!it.value().is_object()) throw config_error(it.key() + " must be an object");
        for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
            const auto& allowed = sec->second;
            if (std::find(allowed.begin(), allowed.end(), kv.key()) == allowed.end())
                throw config_error("unknown key '" + it.key() + "." + kv.key() + "'");
            const std::string name = kv.key() == "type" ? "bath" : kv.key();
            if (is_text_field(name)) {
                const auto& v = kv.value();
                if (v.is_boolean()) out.push_back({name, {}, v.get<bool>() ? "true" : "false"});
                else if (v.is_string()) out.push_back({name, {}, v.get<std::string>()});
                else throw config_error(it.key() + "." + kv.key() + ": expected a string");
            } else {
                out.push_back({name, to_quantity(kv.value(), it.key() + "." + kv.key()), {}});
            }
        }
    }
    return out;
}

inline std::vector<Setting> load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return settings_from_json(j);
}

// "lambda1=2wm,mu=0" or "markovian".
inline std::vector<Setting> parse_bath(const std::string& text)
{
    if (text == "markovian") return {{"bath", {}, "markovian"}};
    std::vector<Setting> out{{"bath", {}, "non-markovian"}};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw config_error("--bath expects key=value pairs, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        if (key != "lambda1" && key != "mu") throw config_error("--bath accepts lambda1 and mu, got '" + key + "'");
        out.push_back({key, parse_quantity(item.substr(eq + 1)), {}});
        pos = end + 1;
    }
    return out;
}

} // namespace omit
