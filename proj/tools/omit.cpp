// omit: spectra, parameter sweeps, group delay, time-domain cross-checks and the
// acceptance report for the spinning OPA optomechanical resonator model.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "omit/acceptance.hpp"
#include "omit/presets.hpp"

namespace {

using namespace omit;

struct Common {
    std::string config;
    std::string omega_spin, opa_gain, opa_phase, pump_mode, bath;
    std::vector<std::string> set;
    std::string format = "csv";
    std::string output;
    std::vector<std::string> observables;
    int workers = 0;
};

void add_common(CLI::App* app, Common& c, bool observables = true)
{
    app->add_option("--config", c.config, "JSON config file (overrides the built-in defaults)");
    app->add_option("--omega-spin", c.omega_spin, "spin rate Omega, e.g. 2e4 or -20000");
    app->add_option("--opa-gain", c.opa_gain, "OPA gain G, e.g. 0.2kappa");
    app->add_option("--opa-phase", c.opa_phase, "OPA phase theta, e.g. 1.5pi");
    app->add_option("--pump-mode", c.pump_mode, "sum | double")->check(CLI::IsMember({"sum", "double"}));
    app->add_option("--bath", c.bath, "markovian | lambda1=<q>,mu=<q>");
    app->add_option("--set", c.set, "key=value parameter override (repeatable)");
    app->add_option("--format", c.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    app->add_option("--output,-o", c.output, "output file (default stdout)");
    if (observables)
        app->add_option("--observables", c.observables, "eta1, eta2, tau1, output_spectrum, steady")->delimiter(',');
    app->add_option("--workers", c.workers, "worker threads (default OMIT_WORKERS or all cores)");
}

// Flag settings in command-line precedence order.
std::vector<Setting> flag_settings(const Common& c)
{
    std::vector<Setting> s;
    if (!c.pump_mode.empty()) s.push_back(make_setting("pump_mode", c.pump_mode));
    if (!c.bath.empty())
        for (auto& b : parse_bath(c.bath)) s.push_back(b);
    if (!c.omega_spin.empty()) s.push_back(make_setting("Omega", c.omega_spin));
    if (!c.opa_gain.empty()) s.push_back(make_setting("G", c.opa_gain));
    if (!c.opa_phase.empty()) s.push_back(make_setting("theta", c.opa_phase));
    for (const auto& kv : c.set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw config_error("--set expects key=value, got '" + kv + "'");
        s.push_back(make_setting(kv.substr(0, eq), kv.substr(eq + 1)));
    }
    return s;
}

// Built-in defaults overlaid with the config file.
PhysParams base_params(const Common& c)
{
    PhysParams p = paper_default();
    if (!c.config.empty()) apply_settings(p, load_config(c.config));
    return p;
}

PhysParams resolved_params(const Common& c)
{
    PhysParams p = base_params(c);
    apply_settings(p, flag_settings(c));
    derive(p);
    return p;
}

Format format_of(const Common& c) { return c.format == "jsonl" ? Format::JSONL : Format::CSV; }

std::set<Observable> observables_of(const Common& c, std::set<Observable> fallback)
{
    if (c.observables.empty()) return fallback;
    std::set<Observable> o;
    for (const auto& s : c.observables) o.insert(parse_observable(s));
    return o;
}

// NAME:MIN:MAX:COUNT, with unit suffixes on MIN and MAX ("G:0kappa:0.6kappa:61").
Axis parse_axis(const std::string& text)
{
    std::vector<std::string> part;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) part.push_back(item);
    if (part.size() != 4) throw config_error("--axis expects NAME:MIN:MAX:COUNT, got '" + text + "'");
    const Quantity lo = parse_quantity(part[1]), hi = parse_quantity(part[2]);
    if (lo.unit != hi.unit) throw config_error("--axis bounds must use the same unit: '" + text + "'");
    int count = 0;
    try {
        std::size_t used = 0;
        count = std::stoi(part[3], &used);
        if (used != part[3].size()) throw std::invalid_argument(part[3]);
    } catch (const std::exception&) {
        throw config_error("--axis count is not an integer: '" + part[3] + "'");
    }
    return {part[0], lo.value, hi.value, count, lo.unit};
}

class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw config_error("cannot open output '" + path + "'");
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int emit_sweep(SweepSpec spec, const Common& c)
{
    const PhysParams base = base_params(c);
    const auto flags = flag_settings(c);
    spec.fixed.insert(spec.fixed.end(), flags.begin(), flags.end());
    {
        PhysParams check = base;
        apply_settings(check, spec.fixed);
        derive(check);
    }
    Sink out(c.output);
    write_records(out.os(), run_sweep(spec, base, c.workers), format_of(c));
    return 0;
}

nlohmann::json complex_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

nlohmann::json oracle_report(const PhysParams& p, double from, double to, int count, bool arbitrate,
                             const oracle::Options& opt, int workers)
{
    const Model M(p);
    const SteadyState s = solve_steady(M);
    std::vector<nlohmann::json> rows(static_cast<std::size_t>(count));
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        const double wm = count == 1 ? from : from + (to - from) * static_cast<double>(i) / (count - 1);
        const double Dp = wm * p.omega_m;
        const auto sol = solve_sidebands(s, Dp, M);
        nlohmann::json r = {{"Delta_p_wm", wm}};
        r["perturbative"] = {{"A1_plus", complex_json(sol.A1_plus)}, {"A1_minus", complex_json(sol.A1_minus)},
                             {"A2_plus", complex_json(sol.A2_plus)}, {"A2_minus", complex_json(sol.A2_minus)},
                             {"eta1", efficiencies(sol, M).eta1}};
        try {
            const auto h = oracle::settle(M, Dp, opt);
            const double e1 = oracle::eta1(h, M, Dp);
            r["oracle"] = {{"a_s", complex_json(h.at(0))}, {"A1_plus", complex_json(h.at(1))},
                           {"A1_minus", complex_json(h.at(-1))}, {"A2_plus", complex_json(h.at(2))},
                           {"A2_minus", complex_json(h.at(-2))}, {"eta1", e1}, {"residual", h.residual},
                           {"flagged", h.flagged}, {"drift", h.drift}, {"windows", h.windows}, {"t_end", h.t_end}};
            auto rel = [](cd a, cd b) { return std::abs(a - b) / std::abs(b); };
            r["relative_error"] = {{"A1_plus", rel(h.at(1), sol.A1_plus)}, {"A1_minus", rel(h.at(-1), sol.A1_minus)},
                                   {"A2_plus", rel(h.at(2), sol.A2_plus)}, {"A2_minus", rel(h.at(-2), sol.A2_minus)},
                                   {"eta1", std::abs(e1 - efficiencies(sol, M).eta1) / efficiencies(sol, M).eta1}};
        } catch (const error& e) {
            r["error"] = e.kind() + ": " + e.what();
        }
        rows[i] = std::move(r);
    });
    nlohmann::json out = {{"regime", to_string(s.regime)}, {"pump_mode", to_string(p.pump_mode)}, {"Omega", p.Omega},
                          {"G", p.G}, {"theta", p.theta}, {"P_l", p.P_l}, {"P_p", M.der.P_p},
                          {"steady", {{"a_s", complex_json(s.a_s)}, {"x_s", s.x_s}, {"Delta_eff_wm", s.Delta_eff / p.omega_m}}},
                          {"points", rows}};
    if (arbitrate) {
        const auto c = acceptance::variant_arbitration(workers);
        out["arbitration"] = acceptance::to_json(acceptance::Report{{c}})["criteria"][0];
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Second-order sideband and OMIT calculator for a spinning resonator with an OPA"};
    app.require_subcommand(1);

    Common c;

    auto* spectrum = app.add_subcommand("spectrum", "eta1/eta2 (or other observables) versus probe detuning");
    double from = 0.98, to = 1.02;
    int count = 2001;
    add_common(spectrum, c);
    spectrum->add_option("--from", from, "first Delta_p in units of omega_m")->capture_default_str();
    spectrum->add_option("--to", to, "last Delta_p in units of omega_m")->capture_default_str();
    spectrum->add_option("--count", count, "grid points")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "general one- or two-axis sweep");
    std::string preset;
    std::vector<std::string> axes;
    double at = 1.0;
    add_common(sweep, c);
    sweep->add_option("--preset", preset, "figure preset (see `preset list`)");
    sweep->add_option("--axis", axes, "NAME:MIN:MAX:COUNT, outer axis first (repeatable, at most 2)");
    sweep->add_option("--at", at, "Delta_p in units of omega_m when it is not an axis")->capture_default_str();

    auto* delay = app.add_subcommand("delay", "group delay tau1 versus a chosen axis");
    std::string delay_axis = "P_l:0:0.01:201";
    add_common(delay, c, false);
    delay->add_option("--axis", delay_axis, "NAME:MIN:MAX:COUNT")->capture_default_str();
    delay->add_option("--at", at, "Delta_p in units of omega_m")->capture_default_str();

    auto* orc = app.add_subcommand("oracle", "time-domain cross-check, JSON report");
    int ocount = 21;
    double ofrom = 0.98, oto = 1.02;
    bool no_arbitration = false;
    oracle::Options oopt;
    add_common(orc, c, false);
    orc->add_option("--from", ofrom, "first Delta_p in units of omega_m")->capture_default_str();
    orc->add_option("--to", oto, "last Delta_p in units of omega_m")->capture_default_str();
    orc->add_option("--count", ocount, "grid points")->capture_default_str();
    orc->add_option("--rtol", oopt.rtol, "integrator relative tolerance")->capture_default_str();
    orc->add_option("--atol", oopt.atol, "integrator absolute tolerance (scaled units)")->capture_default_str();
    orc->add_flag("--no-arbitration", no_arbitration, "skip the formula-variant arbitration block");

    auto* validate_cmd = app.add_subcommand("validate", "run the acceptance suite, JSON report; exit 2 on failure");
    std::string vout;
    bool no_oracle = false;
    int vworkers = 0;
    validate_cmd->add_option("--output,-o", vout, "report file (default stdout)");
    validate_cmd->add_flag("--no-oracle", no_oracle, "skip the time-domain blocks");
    validate_cmd->add_option("--workers", vworkers, "worker threads");

    auto* preset_cmd = app.add_subcommand("preset", "figure presets");
    preset_cmd->require_subcommand(1);
    auto* preset_list_cmd = preset_cmd->add_subcommand("list", "list preset names");
    std::string show;
    auto* preset_show = preset_cmd->add_subcommand("show", "print a preset's sweep definition");
    preset_show->add_option("name", show)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*spectrum) {
            SweepSpec s;
            s.name = "spectrum";
            s.axes = {{"Delta_p", from, to, count, Quantity::Unit::OmegaM}};
            s.observables = observables_of(c, {Observable::Eta1, Observable::Eta2});
            return emit_sweep(s, c);
        }
        if (*sweep) {
            SweepSpec s;
            if (!preset.empty()) {
                if (!axes.empty()) throw config_error("--preset and --axis are exclusive");
                s = figure_preset(preset);
            } else {
                if (axes.empty()) throw config_error("sweep needs --preset or --axis");
                for (const auto& a : axes) s.axes.push_back(parse_axis(a));
            }
            if (!c.observables.empty()) s.observables = observables_of(c, {});
            if (sweep->count("--at")) s.Delta_p_wm = at;
            return emit_sweep(s, c);
        }
        if (*delay) {
            SweepSpec s;
            s.name = "delay";
            s.axes = {parse_axis(delay_axis)};
            s.observables = {Observable::Tau1};
            s.Delta_p_wm = at;
            return emit_sweep(s, c);
        }
        if (*orc) {
            const PhysParams p = resolved_params(c);
            if (ocount < 1) throw config_error("--count must be >= 1");
            Sink out(c.output);
            out.os() << oracle_report(p, ofrom, oto, ocount, !no_arbitration, oopt, c.workers).dump(2) << '\n';
            return 0;
        }
        if (*validate_cmd) {
            acceptance::Options o;
            o.oracle = !no_oracle;
            o.workers = vworkers;
            const auto r = acceptance::run(o);
            acceptance::print(std::cerr, r);
            Sink out(vout);
            out.os() << acceptance::to_json(r).dump(2) << '\n';
            return r.passed() ? 0 : 2;
        }
        if (*preset_list_cmd) {
            for (const auto& [name, desc] : preset_list()) std::cout << name << "\t" << desc << '\n';
            return 0;
        }
        if (*preset_show) {
            const auto s = figure_preset(show);
            nlohmann::json j = {{"name", s.name}, {"description", s.description}, {"Delta_p_wm", s.Delta_p_wm}};
            auto unit = [](Quantity::Unit u) {
                switch (u) {
                case Quantity::Unit::OmegaM: return "wm";
                case Quantity::Unit::Kappa: return "kappa";
                case Quantity::Unit::Pi: return "pi";
                default: return "";
                }
            };
            auto setting = [&](const Setting& x) {
                return x.text.empty() ? nlohmann::json{{"name", x.name}, {"value", x.q.value}, {"unit", unit(x.q.unit)}}
                                      : nlohmann::json{{"name", x.name}, {"value", x.text}};
            };
            for (const auto& a : s.axes)
                j["axes"].push_back({{"param", a.param}, {"min", a.min}, {"max", a.max}, {"count", a.count}, {"unit", unit(a.unit)}});
            for (const auto& f : s.fixed) j["fixed"].push_back(setting(f));
            for (const auto& se : s.series) {
                nlohmann::json js = {{"label", se.label}};
                for (const auto& f : se.settings) js["settings"].push_back(setting(f));
                j["series"].push_back(js);
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
